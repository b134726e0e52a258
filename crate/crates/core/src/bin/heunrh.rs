fn main() {
    std::process::exit(heunrh::cli::main());
}
