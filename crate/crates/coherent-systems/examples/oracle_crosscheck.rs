//! Brute-force oracles against the main implementations: goodness by
//! exhaustive defect enumeration vs the exact LP, critical values by naive
//! scan vs the windowed enumeration, and the randomized identity suite.
//!
//! ```bash
//! cargo run -p coherent-systems --example oracle_crosscheck
//! ```

use coherent_systems::bounds::{enumerate_critical_values, SystemType};
use coherent_systems::goodness::is_good;
use coherent_systems::oracle::{critical_values_bruteforce, goodness_bruteforce, identity_suite};
use coherent_systems::rational::{rat, Rational};
use coherent_systems::{NodalCurve, Polarization};

fn main() {
    let curve = NodalCurve::new(vec![2, 2], vec![(0, 1)]).expect("valid curve");
    let polarizations = [
        Polarization::from_ratios(&[(1, 2), (1, 2)]).unwrap(),
        Polarization::from_ratios(&[(1, 4), (3, 4)]).unwrap(),
        Polarization::from_ratios(&[(2, 5), (3, 5)]).unwrap(),
    ];

    println!("goodness: LP vs exhaustive defect minimization (r_max = 6)");
    for pol in &polarizations {
        let lp = is_good(&curve, pol).unwrap();
        let brute = goodness_bruteforce(&curve, pol, 6).unwrap();
        let weights: Vec<String> = pol.weights().iter().map(|w| w.to_string()).collect();
        println!(
            "  ({}): lp {:?} / brute {:?} (min {} at {:?}) -> {}",
            weights.join(", "),
            lp.verdict,
            brute.verdict,
            brute.minimum,
            brute.witness_multirank,
            if lp.verdict == brute.verdict {
                "agree"
            } else {
                "DISAGREE"
            }
        );
    }

    println!("\ncritical values: windowed enumeration vs naive scan");
    let pol = &polarizations[0];
    for (r, d, k, m) in [
        (2i64, 1i64, 1u32, 1i64),
        (2, 2, 1, 2),
        (3, 3, 1, 2),
        (4, 5, 2, 3),
    ] {
        let ty = SystemType::from_ints(r, d, k).unwrap();
        let window = rat(m);
        let main: Vec<Rational> = enumerate_critical_values(&curve, pol, &ty, &window)
            .unwrap()
            .into_iter()
            .map(|cv| cv.alpha)
            .collect();
        let brute = critical_values_bruteforce(&curve, pol, &ty, &window).unwrap();
        let rendered: Vec<String> = main.iter().map(|a| a.to_string()).collect();
        println!(
            "  type ({r},{d},{k}) in (0,{m}): {{{}}} -> {}",
            rendered.join(", "),
            if main == brute { "agree" } else { "DISAGREE" }
        );
    }

    println!("\nrandomized identity suite");
    let report = identity_suite(7, 5000).unwrap();
    println!(
        "  {} trials: {}",
        report.trials,
        if report.passed() {
            "all identities hold"
        } else {
            "counterexample found"
        }
    );
}
