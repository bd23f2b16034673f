fn main() {
    std::process::exit(maxsplines::cli::run(std::env::args_os()));
}
