use std::io::Write;

fn main() {
    let outcome = agcurve_cli::run(std::env::args());
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
