fn main() {
    std::process::exit(iqconc_cli::run(std::env::args_os()));
}
