//! Runs the seven acceptance criteria at full size and prints one line per
//! criterion. Exits non-zero if any criterion fails.

use std::process::ExitCode;

use sfchoice::suite::{run_criterion, Profile, SuiteOptions, CRITERIA};

fn main() -> ExitCode {
    let opts = SuiteOptions { profile: Profile::Full, ..Default::default() };
    let mut failed = 0;
    for id in CRITERIA {
        let out = run_criterion(id, &opts);
        println!("{out}");
        if !out.passed {
            failed += 1;
        }
    }
    println!("acceptance: {}/{} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
