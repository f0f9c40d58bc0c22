fn main() {
    std::process::exit(bgold::cli::run());
}
