fn main() {
    std::process::exit(radar_fusion::cli::run(std::env::args_os()));
}
