//! Numeric verification of the whole catalogue, plus a false statement to
//! show what a failure looks like.
//!
//!     cargo run --release --example verify_registry

use gini_refine::numverify::{verify, verify_all, Verdict, VerifyConfig};
use gini_refine::registry::{self, linear_form, Claim, Level, Statement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = VerifyConfig::default();
    let reports = verify_all(&cfg);
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("{passed} of {} statements pass", reports.len());

    for level in [Level::Kernel, Level::Distribution] {
        let n = reports.iter().filter(|r| registry::get(&r.statement_id).is_some_and(|s| s.level == level)).count();
        println!("  {level:?} level: {n}");
    }

    let wrong = Statement {
        id: "demo.reversed".into(),
        claim: Claim::Nonneg(linear_form("S - P6")?),
        level: Level::Kernel,
        source: "P6 <= S, which is false".into(),
    };
    match verify(&wrong, &cfg)?.verdict {
        Verdict::Fail { witness_x, value } => println!("{}: fails at x = {witness_x:.3e}, gap {value:.3e}", wrong.id),
        Verdict::Pass => println!("{}: unexpectedly passed", wrong.id),
    }
    Ok(())
}
