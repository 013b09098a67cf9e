fn main() {
    std::process::exit(topo_cli::run_cli(std::env::args_os()));
}
