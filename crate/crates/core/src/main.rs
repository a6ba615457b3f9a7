fn main() {
    std::process::exit(chanorder::cli::run(std::env::args_os()));
}
