fn main() {
    std::process::exit(trackbench::cli::run(std::env::args_os()));
}
