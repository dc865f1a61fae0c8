fn main() {
    std::process::exit(csplab::cli::main_with(std::env::args_os()));
}
