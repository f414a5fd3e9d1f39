fn main() {
    std::process::exit(bogoamp::cli::run(std::env::args_os()));
}
