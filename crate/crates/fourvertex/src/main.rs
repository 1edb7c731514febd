fn main() {
    std::process::exit(fourvertex::cli::run(std::env::args_os()));
}
