fn main() {
    std::process::exit(dilate_core::cli::run(std::env::args_os()));
}
