fn main() {
    std::process::exit(even_christoffel::cli::main());
}
