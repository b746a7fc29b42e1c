fn main() {
    std::process::exit(nglab::cli::run(std::env::args()));
}
