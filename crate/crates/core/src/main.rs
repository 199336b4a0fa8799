fn main() {
    std::process::exit(darboux_deform::cli::run(std::env::args_os()));
}
