//! Prints census counts for each size up to the first argument (default 8).

use std::time::Instant;

use taquin::enumeration::{census, survey_entries};
use taquin::exec::Exec;

fn main() -> taquin::Result<()> {
    let n_max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let verbose = std::env::args().any(|a| a == "-v");
    for n in 1..=n_max {
        let start = Instant::now();
        let entries = census(n, Exec::Parallel)?;
        let enumerated = start.elapsed();
        let survey = survey_entries(&entries, Exec::Parallel)?;
        println!(
            "n={n} {} enumerate={:.2?} survey={:.2?}",
            survey.summary.headline(),
            enumerated,
            start.elapsed() - enumerated
        );
        if verbose {
            println!("  {:?}", survey.summary);
        }
    }
    Ok(())
}
