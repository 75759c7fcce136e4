fn main() {
    std::process::exit(partial_hasse::cli::run());
}
