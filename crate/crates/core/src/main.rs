fn main() {
    std::process::exit(wold::cli::run(std::env::args_os()));
}
