fn main() {
    std::process::exit(qtopo::run(std::env::args_os()));
}
