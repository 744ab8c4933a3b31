fn main() {
    std::process::exit(ymlab_cli::run(std::env::args_os()));
}
