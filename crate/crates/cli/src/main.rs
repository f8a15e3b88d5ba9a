fn main() {
    std::process::exit(sigma_arm_cli::run());
}
