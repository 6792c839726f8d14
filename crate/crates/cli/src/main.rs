fn main() {
    std::process::exit(isoparam_cli::run(std::env::args_os()));
}
