fn main() { annihil::cli::run() }
