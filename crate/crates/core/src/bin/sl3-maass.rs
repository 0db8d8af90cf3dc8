fn main() {
    std::process::exit(sl3_maass::cli::run());
}
