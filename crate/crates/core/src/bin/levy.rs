fn main() {
    std::process::exit(levy_search::cli::main_with_args(std::env::args_os()));
}
