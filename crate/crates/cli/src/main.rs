use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use seqscore_cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut input = io::stdin().lock();
    let mut out = io::BufWriter::new(io::stdout().lock());
    let code = run(cli, &mut input, &mut out, &mut io::stderr());
    if out.flush().is_err() {
        return ExitCode::from(EXIT_INPUT);
    }
    ExitCode::from(code)
}
