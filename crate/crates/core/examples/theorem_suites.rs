//! Randomised verification suites, one per theorem id.

use birkhoff::symmetry::{verify_theorem, Outcome, SuiteConfig, THEOREM_IDS};

fn main() -> birkhoff::Result<()> {
    let cfg = SuiteConfig {
        trials: 3,
        ..SuiteConfig::default()
    };
    for id in THEOREM_IDS {
        let r = verify_theorem(id, &cfg)?;
        println!(
            "{id:<10} {:?}: {} pass, {} inconclusive, {} fail",
            r.status,
            r.count(Outcome::Pass),
            r.count(Outcome::Inconclusive),
            r.count(Outcome::Fail)
        );
    }
    Ok(())
}
