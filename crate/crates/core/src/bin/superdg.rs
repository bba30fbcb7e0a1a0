fn main() {
    std::process::exit(superdg::cli::main());
}
