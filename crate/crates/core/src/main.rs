fn main() {
    std::process::exit(matroid_divisors::cli::run(std::env::args_os()));
}
