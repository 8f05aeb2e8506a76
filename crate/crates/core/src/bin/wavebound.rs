fn main() {
    std::process::exit(wavebound::cli::run(std::env::args_os()));
}
