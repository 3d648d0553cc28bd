fn main() {
    let config = match pqovs_cli::parse_args(std::env::args_os().skip(1)) {
        Ok(c) => c,
        // Usage errors exit with 2; --help and --version with 0.
        Err(e) => e.exit(),
    };
    std::process::exit(pqovs_cli::run(&config));
}
