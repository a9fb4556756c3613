fn main() {
    std::process::exit(curlspec::cli::run());
}
