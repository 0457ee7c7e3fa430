fn main() {
    std::process::exit(compacton_lab::cli::main());
}
