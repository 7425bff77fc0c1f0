//! Acceptance suite: runs every verification criterion at its stated
//! scope and prints one pass/fail line per criterion.

use singular_leaves::verify::{self, Check, VerifyOpts};
use std::time::Instant;

#[test]
fn acceptance() {
    let opts = VerifyOpts::default();
    let stages: Vec<(&str, Box<dyn Fn(&VerifyOpts) -> Check>)> = vec![
        ("1", Box::new(|_| verify::check_paper_counts())),
        ("2", Box::new(verify::check_deodhar_oracle)),
        ("3", Box::new(verify::check_census)),
        ("4", Box::new(|o| verify::check_triangularity(o, false))),
        ("5", Box::new(|_| verify::check_grassmannian())),
        ("6", Box::new(|_| verify::check_switchback_idempotent())),
        ("7", Box::new(|o| verify::check_relations(o, &["A1", "A2", "A3", "B2", "G2", "D4"]))),
        ("8", Box::new(|_| verify::check_frobenius())),
        ("9", Box::new(verify::check_degrees)),
        ("10", Box::new(|o| verify::check_triangularity(o, true))),
    ];
    let mut all_ok = true;
    for (_, stage) in &stages {
        let t0 = Instant::now();
        let c = stage(&opts);
        println!(
            "{} criterion {} — {} [{:.1}s]",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.details,
            t0.elapsed().as_secs_f64()
        );
        all_ok &= c.passed;
    }
    assert!(all_ok, "acceptance criteria failed");
}
