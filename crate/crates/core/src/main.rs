fn main() {
    std::process::exit(affine_leibniz::cli::run_from(std::env::args_os()));
}
