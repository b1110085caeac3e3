fn main() {
    std::process::exit(localclust_cli::run_cli(std::env::args_os()));
}
