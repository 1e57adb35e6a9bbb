use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use workbench::{run, Exit, RunConfig};

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) if e.use_stderr() => {
            // usage errors are input errors, not clap's default status 2
            let _ = e.print();
            return ExitCode::from(Exit::InputError.code() as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let rep = run(&cfg);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(rep.render(cfg.format).as_bytes());
    ExitCode::from(rep.exit.code() as u8)
}
