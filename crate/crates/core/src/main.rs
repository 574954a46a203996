fn main() {
    std::process::exit(rigspace::cli::run(std::env::args_os()));
}
