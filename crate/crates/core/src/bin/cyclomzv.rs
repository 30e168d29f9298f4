fn main() {
    std::process::exit(cyclomzv::cli::run(std::env::args_os()));
}
