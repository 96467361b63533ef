fn main() {
    std::process::exit(maxid::cli::run(std::env::args_os()));
}
