fn main() {
    std::process::exit(charstack::cli::run(std::env::args_os()));
}
