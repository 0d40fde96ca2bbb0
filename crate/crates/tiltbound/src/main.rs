fn main() {
    std::process::exit(tiltbound::cli::run(std::env::args_os()));
}
