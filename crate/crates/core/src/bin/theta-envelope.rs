fn main() {
    std::process::exit(theta_envelope::cli::run());
}
