fn main() {
    std::process::exit(crosscap::cli::run());
}
