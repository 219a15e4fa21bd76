fn main() {
    std::process::exit(falconer_cli::main_with(std::env::args_os().collect()));
}
