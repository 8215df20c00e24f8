use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let run = medcons_cli::run(&args, Path::new("."));
    if let Some(json) = run.json() {
        // a closed pipe is not an error of the run
        let _ = writeln!(std::io::stdout(), "{json}");
    }
    let _ = writeln!(std::io::stderr(), "{}", run.summary.trim_end());
    ExitCode::from(run.code as u8)
}
