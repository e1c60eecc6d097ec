fn main() {
    std::process::exit(anick::cli::main_with_args(std::env::args()));
}
