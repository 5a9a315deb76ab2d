fn main() {
    std::process::exit(ds_harmonic::cli::run(std::env::args_os()));
}
