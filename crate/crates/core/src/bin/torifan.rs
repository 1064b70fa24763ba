fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(torifan::cli::main_with_args(&args));
}
