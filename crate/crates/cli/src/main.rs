fn main() {
    std::process::exit(tourlab_cli::run(std::env::args_os()));
}
