//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::Command;
use std::time::Instant;

use annihil::annihilator_ideals::{
    comaximality_witness, generators, lemma_32_check, lemma_32_check_generators,
    ql_sufficient_check, theorem_equivalence_check, IdealKind, ScaledMonomial,
};
use annihil::pfister_algebra::{
    eval_at_generator_sum, eval_at_shifted_generator_sum, expansion_coefficients,
    shifted_expansion_coefficients,
};
use annihil::stirling::{
    falling_factorial_identity_check, scan_bound, stirling2_alt_sum, stirling2_compositions,
    StirlingTable,
};
use annihil::witt_models::{verify_annihilation, Family, FieldModel};
use annihil::IntPolynomial;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn example_table() -> Outcome {
    let expected = [
        "2X, X^2",
        "4X, 2X^2, X^4",
        "8X, 4X^2, X^4",
        "16X, 8X^2, 2X^4, X^6",
        "32X, 16X^2, 4X^4, 2X^6, X^8",
        "64X, 32X^2, 8X^4, 4X^6, X^8",
    ];
    for (i, want) in expected.iter().enumerate() {
        let r = i as u32 + 1;
        let out = annihil::cli::run_with(["annihil", "generators", "--ideal", "jprime-e", "--r", &r.to_string()]);
        if out.code != 0 || out.stdout.trim_end() != *want {
            return Err(format!("r={r}: got {:?}, want {want:?}", out.stdout.trim_end()));
        }
    }
    Ok("r = 1..6 match".into())
}

fn bound_scan() -> Outcome {
    let report = scan_bound(400).map_err(|e| e.to_string())?;
    match report.first_violation() {
        Some(v) => Err(format!("violation at n={} k={} margin={}", v.n, v.k, v.margin)),
        None => Ok(format!("{} pairs, {} tight, 0 violations", report.rows.len(), report.tight_rows)),
    }
}

fn stirling_agreement() -> Outcome {
    let table = StirlingTable::new(200);
    for n in 0..=200u64 {
        for k in 0..=n {
            let alt = stirling2_alt_sum(n, k).map_err(|e| e.to_string())?;
            if &alt != table.get(n as usize, k as usize) {
                return Err(format!("alternating sum differs at S({n},{k})"));
            }
            if n <= 20 {
                let comp = stirling2_compositions(n, k).map_err(|e| e.to_string())?;
                if &comp != table.get(n as usize, k as usize) {
                    return Err(format!("composition sum differs at S({n},{k})"));
                }
            }
        }
    }
    if let Some(n) = (0..=64).find(|&n| !falling_factorial_identity_check(n)) {
        return Err(format!("falling-factorial identity fails at n={n}"));
    }
    Ok("recurrence = alt sum (n<=200) = compositions (n<=20); identity n<=64".into())
}

fn closed_form_vs_direct() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let bound = 1i64 << 16;
    let mut cases = 0;
    for n in 0..=6u32 {
        for _ in 0..200 {
            let deg = rng.gen_range(0..=10usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
            let f = IntPolynomial::from_i64s(&coeffs);
            let err = |e: annihil::Error| e.to_string();
            let closed = expansion_coefficients(&f, n).map_err(err)?;
            let direct = eval_at_generator_sum(&f, n).map_err(err)?.symmetric_coefficients();
            if direct.as_ref() != Some(&closed) {
                return Err(format!("unshifted mismatch: f = {f}, n = {n}"));
            }
            let closed = shifted_expansion_coefficients(&f, n).map_err(err)?;
            let direct = eval_at_shifted_generator_sum(&f, n).map_err(err)?.symmetric_coefficients();
            if direct.as_ref() != Some(&closed) {
                return Err(format!("shifted mismatch: f = {f}, n = {n}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} polynomials, shifted and unshifted"))
}

fn lemma_instance() -> Outcome {
    let mut cases = 0;
    for r in 1..=6 {
        let report = lemma_32_check(r, 12).map_err(|e| e.to_string())?;
        if !report.passed {
            return Err(format!("r={r}: {}", report.to_json()));
        }
        cases += report.cases;
    }
    // Drop one factor of 2 from 2X^4 in the r = 4 list.
    let mutated = [
        ScaledMonomial::new(4, 1, 0),
        ScaledMonomial::new(3, 2, 0),
        ScaledMonomial::new(0, 4, 0),
        ScaledMonomial::new(0, 6, 0),
    ];
    let report = lemma_32_check_generators(4, &mutated, 12).map_err(|e| e.to_string())?;
    match report.counterexample {
        Some(c) if !report.passed => Ok(format!("{cases} cases; mutation caught at {} (n={})", c.polynomial, c.n)),
        _ => Err("mutated generator list was not rejected".into()),
    }
}

fn theorem_biconditional() -> Outcome {
    let mut cases = 0;
    for r in 1..=6 {
        let report = theorem_equivalence_check(r, 500, u64::from(r)).map_err(|e| e.to_string())?;
        if !report.passed {
            return Err(format!("r={r}: {}", report.to_json()));
        }
        cases += report.cases;
    }
    Ok(format!("{cases} cases agree"))
}

fn verify_generators(kind: IdealKind, r: u32, model: FieldModel, family: Family) -> Result<usize, String> {
    let spec = generators(kind, r).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for g in spec.polynomials() {
        let report = verify_annihilation(&g, model, family, 4).map_err(|e| e.to_string())?;
        if !report.pass {
            return Err(format!(
                "{g} on W({}) [{}]: {}",
                model.name(),
                family.name(),
                report.counterexample.unwrap_or_default()
            ));
        }
        checked += report.classes_checked;
    }
    Ok(checked)
}

fn concrete_instances() -> Outcome {
    let f = |q| FieldModel::finite(q).map_err(|e| e.to_string());
    let mut checked = 0;
    for (model, r) in [(f(3)?, 2), (f(7)?, 2), (f(5)?, 1), (f(9)?, 1), (FieldModel::ComplexLike, 1)] {
        checked += verify_generators(IdealKind::Jfull, r, model, Family::All)?;
        checked += verify_generators(IdealKind::JE, r, model, Family::Even)?;
        checked += verify_generators(IdealKind::JO, r, model, Family::Odd)?;
        checked += verify_generators(IdealKind::JprimeE, r, model, Family::Even)?;
    }
    for r in 1..=3 {
        checked += verify_generators(IdealKind::JprimeE, r, FieldModel::RealLike, Family::Torsion)?;
    }
    Ok(format!("{checked} generator evaluations vanish"))
}

fn lewis_instances() -> Outcome {
    let mut forms = 0;
    for q in [3, 5, 7] {
        let model = FieldModel::finite(q).map_err(|e| e.to_string())?;
        for n in 1..=5u64 {
            let p = IntPolynomial::lewis(n).map_err(|e| e.to_string())?;
            let report = verify_annihilation(&p, model, Family::Dim(n as usize), 0).map_err(|e| e.to_string())?;
            if !report.pass {
                return Err(format!("p_{n} over F_{q}: {}", report.counterexample.unwrap_or_default()));
            }
            forms += report.classes_checked;
        }
    }
    Ok(format!("{forms} forms annihilated"))
}

fn comaximality() -> Outcome {
    for k in 1..=6u32 {
        let (u, v) = comaximality_witness(k).map_err(|e| e.to_string())?;
        let e = 2 * k;
        let total = &(&u * &IntPolynomial::x().pow(e)) + &(&v * &IntPolynomial::linear_root(1).pow(e));
        if total != IntPolynomial::constant(BigInt::from(1)) {
            return Err(format!("k={k}: identity expands to {total}"));
        }
    }
    Ok("k = 1..6 expand to 1".into())
}

fn ql_criterion() -> Outcome {
    for l in 1..=5 {
        let report = ql_sufficient_check(l, 12).map_err(|e| e.to_string())?;
        if !report.passed {
            return Err(format!("l={l}: {}", report.to_json()));
        }
    }
    Ok("l = 1..5".into())
}

fn determinism() -> Outcome {
    let invocations: &[&[&str]] = &[
        &["stirling", "--n", "30", "--k", "7"],
        &["scan-bound", "--max-n", "40", "--format", "csv"],
        &["scan-bound", "--max-n", "40", "--format", "json"],
        &["k-of-r", "--r", "9"],
        &["generators", "--ideal", "j", "--r", "5", "--format", "json"],
        &["member", "--ideal", "jprime-e", "--r", "3", "--poly", "8X + 4X^2 + X^4"],
        &["expand", "--poly", "X^3 - 2X", "--shift-dim", "4", "--format", "csv"],
        &["annihilate-check", "--poly", "4X + 2X^2 + X^4", "--r", "2", "--max-n", "8"],
        &["lemma32-check", "--r", "3", "--format", "json"],
        &["theorem-check", "--r", "2", "--trials", "40", "--seed", "11", "--format", "json"],
        &["ql-check", "--l", "3", "--max-n", "8"],
        &["lewis", "--n", "4", "--format", "json"],
        &["ql", "--l", "4"],
        &["witt-verify", "--field", "f7", "--family", "all", "--poly", "X^3 - X", "--format", "csv"],
        &["comax-witness", "--k", "3"],
    ];
    let bin = env!("CARGO_BIN_EXE_annihil");
    for args in invocations {
        let runs: Vec<_> = (0..2)
            .map(|_| Command::new(bin).args(*args).output().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        if runs[0].stdout != runs[1].stdout || runs[0].status != runs[1].status {
            return Err(format!("output differs for {args:?}"));
        }
        let mut argv = vec!["annihil"];
        argv.extend_from_slice(args);
        let inproc = annihil::cli::run_with(argv.iter().copied());
        if inproc.stdout.as_bytes() != runs[0].stdout.as_slice() {
            return Err(format!("in-process output differs for {args:?}"));
        }
    }
    Ok(format!("{} invocations byte-identical", invocations.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("example table", example_table),
        ("stirling valuation bound, n <= 400", bound_scan),
        ("stirling formula agreement", stirling_agreement),
        ("closed form vs direct evaluation", closed_form_vs_direct),
        ("generator lemma + mutation", lemma_instance),
        ("theorem biconditional", theorem_biconditional),
        ("concrete witt rings", concrete_instances),
        ("lewis polynomials", lewis_instances),
        ("comaximality certificates", comaximality),
        ("q_l sufficient criterion", ql_criterion),
        ("cli determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("[{:>2}] PASS {name}: {msg} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[{:>2}] FAIL {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
