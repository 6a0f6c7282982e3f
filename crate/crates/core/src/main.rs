fn main() {
    std::process::exit(monocrystal::cli::run(std::env::args_os()));
}
