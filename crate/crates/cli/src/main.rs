fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(resolvent_cli::run(&argv));
}
