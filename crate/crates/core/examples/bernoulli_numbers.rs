//! Bernoulli numbers by two routes, higher-order Bernoulli numbers and a
//! Stirling row.
//!
//! cargo run --example bernoulli_numbers

use mbsum::bernoulli::{bernoulli, bernoulli_explicit, higher_bernoulli, stirling2};
use mbsum::format_rational;

fn main() {
    println!("k   B_k (recurrence)   B_k (double sum)");
    for k in 0..=12 {
        println!(
            "{k:<3} {:<18} {}",
            format_rational(&bernoulli(k)),
            format_rational(&bernoulli_explicit(k))
        );
    }

    println!("\nB_j^(m), coefficients of (t/(e^t - 1))^m times j!");
    for m in 1..=4 {
        let row: Vec<String> = (0..=6).map(|j| format_rational(&higher_bernoulli(j, m))).collect();
        println!("m={m}: {}", row.join("  "));
    }

    let row: Vec<String> = (0..=8).map(|m| stirling2(8, m).to_string()).collect();
    println!("\nS(8, m): {}", row.join(" "));
}
