fn main() {
    std::process::exit(linkcheck::cli::execute(std::env::args_os()));
}
