fn main() {
    std::process::exit(voltconv::cli::run(std::env::args_os()));
}
