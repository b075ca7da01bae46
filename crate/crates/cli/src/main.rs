use std::io::Write;

fn main() {
    let out = hlts_cli::commands::main_outcome();
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
