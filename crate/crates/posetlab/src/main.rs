use std::io::Write;

fn main() {
    let outcome = posetlab::cli::run(std::env::args());
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
