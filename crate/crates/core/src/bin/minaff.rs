fn main() {
    std::process::exit(minaff::cli::run(std::env::args_os()));
}
