fn main() {
    std::process::exit(gstower::cli::run());
}
