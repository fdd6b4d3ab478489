fn main() {
    std::process::exit(birkhoff::cli::main_from_env());
}
