fn main() {
    std::process::exit(squarecheck_cli::run());
}
