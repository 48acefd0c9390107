fn main() {
    std::process::exit(qzero_cli::run(std::env::args_os()));
}
