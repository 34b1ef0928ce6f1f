fn main() {
    std::process::exit(fuzzy_minimax::cli::main_with_args(std::env::args_os()));
}
