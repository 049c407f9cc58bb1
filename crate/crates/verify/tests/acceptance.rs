//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use fiberlab_verify::suite::{run_criterion, CRITERIA, TITLES};

fn main() -> ExitCode {
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for id in 1..=CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let started = Instant::now();
        let (ok, detail) = match run_criterion(id) {
            Ok(run) => {
                let bad: Vec<String> = run
                    .reports
                    .iter()
                    .filter(|r| !r.passed())
                    .map(|r| r.to_json(false).to_string())
                    .collect();
                (run.passed(), format!("{} reports", run.reports.len()) + &bad.iter().map(|b| format!("\n    {b}")).collect::<String>())
            }
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {id:>2} {} {} [{:.1?}] {}",
            if ok { "PASS" } else { "FAIL" },
            TITLES[id as usize - 1],
            started.elapsed(),
            detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
