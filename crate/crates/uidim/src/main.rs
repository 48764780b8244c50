fn main() {
    std::process::exit(uidim::cli::run(std::env::args_os()));
}
