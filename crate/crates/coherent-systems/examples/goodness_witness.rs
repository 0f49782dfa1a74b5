//! Goodness of polarizations, with witnesses when the test fails, and the
//! structure-sheaf slope test it implies.
//!
//! ```bash
//! cargo run -p coherent-systems --example goodness_witness
//! ```

use coherent_systems::goodness::{
    is_good, lambda_w, objective_coefficients, structure_sheaf_stability,
};
use coherent_systems::{NodalCurve, Polarization};

fn inspect(curve: &NodalCurve, weights: &[(i64, i64)]) {
    let pol = Polarization::from_ratios(weights).expect("valid polarization");
    let coefficients = objective_coefficients(curve, &pol).expect("lengths match");
    let report = is_good(curve, &pol).expect("lengths match");
    let lambda = lambda_w(curve, &pol).expect("lengths match");
    let (verdict, records) = structure_sheaf_stability(curve, &pol).expect("lengths match");

    let weight_text: Vec<String> = pol.weights().iter().map(|w| w.to_string()).collect();
    println!("weights ({}):", weight_text.join(", "));
    let coefficient_text: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
    println!("  defect coefficients: [{}]", coefficient_text.join(", "));
    let witness: Vec<String> = report.witness.iter().map(|w| w.to_string()).collect();
    println!(
        "  verdict: {:?}, minimum {}, witness ray [{}], lambda_w = {}",
        report.verdict,
        report.minimum,
        witness.join(", "),
        lambda
    );
    println!("  structure sheaf: {verdict:?}");
    for record in records {
        println!(
            "    kernel over subcurve {:?}: w-slope {}",
            record.subcurve, record.kernel_w_slope
        );
    }
}

fn main() {
    let curve = NodalCurve::new(vec![2, 2], vec![(0, 1)]).expect("valid curve");
    println!("two genus-2 components, one node\n");
    inspect(&curve, &[(1, 2), (1, 2)]);
    println!();
    inspect(&curve, &[(1, 4), (3, 4)]);

    println!("\ntwo components of genera (3, 3), two parallel nodes\n");
    let parallel = NodalCurve::new(vec![3, 3], vec![(0, 1), (0, 1)]).expect("valid curve");
    // boundary case: the defect minimum is 0 but not only at the uniform ray
    inspect(&parallel, &[(1, 3), (2, 3)]);
}
