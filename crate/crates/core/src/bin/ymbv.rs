fn main() {
    std::process::exit(ymbv_core::cli::run(std::env::args_os()));
}
