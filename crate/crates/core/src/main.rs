fn main() {
    std::process::exit(multilru::cli::main_with_args(std::env::args_os()));
}
