fn main() {
    std::process::exit(specgap::cli::run());
}
