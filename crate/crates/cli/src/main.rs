fn main() {
    let (code, out) = detpoly_cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
