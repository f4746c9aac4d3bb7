//! Runs the golden-value suite and prints one line per case.

use antibch::verify::{run_suite, Suite};
use antibch::Budget;

pub fn main() -> antibch::Result<()> {
    let report = run_suite(Suite::PaperExamples, 0, &Budget::default())?;
    for c in &report.cases {
        println!("{:<20} {:<16} {}", c.status.to_string(), c.group, c.name);
    }
    println!("{} cases, {} failed", report.cases.len(), report.failures);
    if !report.passed() {
        std::process::exit(1);
    }
    Ok(())
}
