fn main() {
    std::process::exit(pillai::cli::main_with_args(std::env::args_os()));
}
