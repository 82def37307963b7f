fn main() {
    std::process::exit(qes_dwp::cli::main_with_args(std::env::args_os()));
}
