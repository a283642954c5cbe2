fn main() {
    std::process::exit(sparse_mimo::cli::main_with_args(std::env::args_os()));
}
