fn main() {
    let code = weighted_algebroids::cli::run(std::env::args_os(), &mut std::io::stdout());
    std::process::exit(code);
}
