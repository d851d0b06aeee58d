//! Acceptance battery: one pass/fail line per criterion. Runs without the test
//! harness so the lines are always printed.

use std::process::ExitCode;

use qhc::par::Exec;
use qhc::selftest::Selftest;

fn main() -> ExitCode {
    let st = Selftest::new(2024, Exec::Parallel);
    let mut failed = Vec::new();
    for id in 1..=12 {
        let r = st.run(id);
        println!(
            "criterion {:>2} {:<36} {} ({:.1}s) {}",
            r.id,
            r.title,
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds,
            r.detail
        );
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
