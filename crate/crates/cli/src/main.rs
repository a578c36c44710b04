fn main() {
    std::process::exit(ziggurat_cli::run());
}
