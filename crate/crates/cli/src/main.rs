fn main() {
    std::process::exit(cohomcat_cli::run(std::env::args_os()));
}
