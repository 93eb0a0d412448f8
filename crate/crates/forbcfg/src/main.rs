fn main() {
    std::process::exit(forbcfg::cli::run());
}
