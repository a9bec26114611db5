fn main() {
    std::process::exit(ybe_forge::cli::main_with_args(std::env::args_os()));
}
