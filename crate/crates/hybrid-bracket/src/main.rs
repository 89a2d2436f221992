fn main() {
    std::process::exit(hybrid_bracket::cli::run_from_args());
}
