fn main() {
    std::process::exit(kropina::cli::main_with_args(std::env::args_os()));
}
