fn main() {
    std::process::exit(lmgen::cli::main_with_env());
}
