fn main() {
    std::process::exit(weylalg::cli::main_with_args(std::env::args_os()));
}
