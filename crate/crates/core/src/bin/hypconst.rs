fn main() {
    std::process::exit(hypconst::cli::run(std::env::args_os()));
}
