fn main() {
    std::process::exit(primegap::cli::dispatch(std::env::args_os()));
}
