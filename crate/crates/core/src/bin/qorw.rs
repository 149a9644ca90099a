fn main() {
    std::process::exit(qorw::cli::main_with_args(std::env::args_os()));
}
