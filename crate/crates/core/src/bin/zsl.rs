fn main() {
    std::process::exit(zerosum::cli::main_from_env());
}
