fn main() {
    std::process::exit(mild_eigen::cli::main_with_args(std::env::args_os()));
}
