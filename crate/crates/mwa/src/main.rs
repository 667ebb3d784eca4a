fn main() {
    std::process::exit(mwa::run(std::env::args_os()));
}
