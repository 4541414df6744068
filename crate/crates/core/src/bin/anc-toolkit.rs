fn main() {
    std::process::exit(anc_toolkit::cli::main_with_args(std::env::args_os()));
}
