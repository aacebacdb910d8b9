use std::io::Write;

use anyhow::Context;

fn main() -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = hhlab_cli::run(std::env::args_os(), &mut out, &mut std::io::stderr());
    out.flush().context("writing the report")?;
    std::process::exit(code)
}
