fn main() {
    std::process::exit(hapslink::cli::run(std::env::args_os()));
}
