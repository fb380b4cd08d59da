fn main() {
    std::process::exit(curvelift::cli::run_cli(std::env::args()));
}
