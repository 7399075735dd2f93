fn main() {
    std::process::exit(cml::cli::run());
}
