fn main() {
    std::process::exit(tribridge::cli::run_cli(std::env::args_os()));
}
