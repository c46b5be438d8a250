fn main() {
    std::process::exit(silting_core::cli::main_with_args(std::env::args_os()));
}
