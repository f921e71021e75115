fn main() {
    std::process::exit(curation_game::cli::run(std::env::args_os()));
}
