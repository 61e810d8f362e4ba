fn main() {
    std::process::exit(dfield::cli::main());
}
