fn main() {
    std::process::exit(pointed_posets::cli::run(std::env::args_os()));
}
