fn main() {
    std::process::exit(sumdist::cli::run_cli(std::env::args_os()));
}
