fn main() {
    std::process::exit(bellvar::cli::run(std::env::args_os()));
}
