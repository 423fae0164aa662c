fn main() {
    std::process::exit(rankone::cli::run(std::env::args_os()));
}
