fn main() {
    std::process::exit(chemhull::cli::main_with_args(std::env::args_os()));
}
