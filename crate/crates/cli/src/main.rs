fn main() {
    std::process::exit(cycmon_cli::main_with_env());
}
