fn main() {
    std::process::exit(consentric::cli::run());
}
