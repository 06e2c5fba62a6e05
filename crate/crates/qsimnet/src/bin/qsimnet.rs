fn main() {
    std::process::exit(qsimnet::cli::execute(std::env::args_os()));
}
