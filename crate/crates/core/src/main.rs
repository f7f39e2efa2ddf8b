fn main() {
    std::process::exit(theta_agm::cli::run(std::env::args_os()));
}
