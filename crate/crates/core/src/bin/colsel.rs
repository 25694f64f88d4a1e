use clap::Parser;
use colorful_selection::cli::{exit_code, run_args, Args};

fn main() {
    let args = Args::parse();
    match run_args(&args) {
        Ok(text) => print!("{}", if text.ends_with('\n') { text } else { text + "\n" }),
        Err(e) => {
            eprintln!("colsel: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
