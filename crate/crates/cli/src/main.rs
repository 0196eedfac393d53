fn main() {
    std::process::exit(ellnc::run(std::env::args()));
}
