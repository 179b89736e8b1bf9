fn main() {
    std::process::exit(propus::cli::run(std::env::args_os()));
}
