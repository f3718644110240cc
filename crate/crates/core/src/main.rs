use clap::Parser;

fn main() {
    let job = hfsurg::cli::JobSpec::parse();
    if let Err(e) = hfsurg::cli::run(job) {
        eprintln!("error: {e}");
        std::process::exit(hfsurg::cli::exit_code(&e));
    }
}
