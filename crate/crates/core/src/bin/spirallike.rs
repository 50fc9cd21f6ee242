fn main() {
    std::process::exit(spirallike::cli::main_with_args(std::env::args_os()));
}
