//! Runs all eight acceptance criteria at full size, one line each.

use std::process::ExitCode;

use steinerpow::sweep::{run, Recognizers, Scale};

fn main() -> ExitCode {
    let results = run(&Recognizers::default(), Scale::Full, &[]);
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("acceptance: {}/{} passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
