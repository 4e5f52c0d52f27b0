fn main() {
    std::process::exit(auxr_cli::run(std::env::args().skip(1)));
}
