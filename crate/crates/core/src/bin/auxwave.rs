fn main() {
    std::process::exit(auxwave::cli::main_with(std::env::args_os()));
}
