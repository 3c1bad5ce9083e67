fn main() {
    std::process::exit(triplerank::cli::run(std::env::args_os()));
}
