fn main() {
    std::process::exit(fatpoint::cli::main());
}
