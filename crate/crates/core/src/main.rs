fn main() {
    std::process::exit(dual_toeplitz::cli::main());
}
