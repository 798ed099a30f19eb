fn main() {
    std::process::exit(leech_core::cli::main_with_args(std::env::args_os()));
}
