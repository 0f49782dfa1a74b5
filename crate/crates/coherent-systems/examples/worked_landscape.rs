//! Full stability landscape of one polarized curve: invariants, goodness,
//! thresholds, walls, terminal window and census.
//!
//! ```bash
//! cargo run -p coherent-systems --example worked_landscape
//! ```

use coherent_systems::bounds::{
    alpha_bgn_threshold, alpha_injectivity_threshold, alpha_torsion_threshold,
    enumerate_critical_values, slope_gap_q, terminal_window, SystemType,
};
use coherent_systems::census::census;
use coherent_systems::goodness::{is_good, lambda_w};
use coherent_systems::{NodalCurve, Polarization};

fn main() {
    // Two smooth genus-2 components glued at one node, balanced weights.
    let curve = NodalCurve::new(vec![2, 2], vec![(0, 1)]).expect("valid curve");
    let pol = Polarization::from_ratios(&[(1, 2), (1, 2)]).expect("valid polarization");

    println!(
        "curve: genera {:?}, {} node(s)",
        curve.genera(),
        curve.delta()
    );
    println!(
        "  p_a = {}, chi(O_C) = {}, compact type: {}",
        curve.arithmetic_genus(),
        curve.chi_structure_sheaf(),
        curve.is_compact_type()
    );

    let goodness = is_good(&curve, &pol).expect("lengths match");
    println!(
        "polarization (1/2, 1/2): {:?}, lambda_w = {}",
        goodness.verdict,
        lambda_w(&curve, &pol).expect("lengths match")
    );

    for (r, d, k) in [(2i64, 1i64, 1u32), (2, 2, 1), (3, 3, 1)] {
        let ty = SystemType::from_ints(r, d, k).expect("valid type");
        println!("\ntype ({r}, {d}, {k}):");
        let alpha_i = alpha_injectivity_threshold(&curve, &pol, &ty).unwrap();
        let alpha_t = alpha_torsion_threshold(&curve, &pol, &ty).unwrap();
        let q = slope_gap_q(&curve, &pol, &ty).unwrap();
        let alpha_s = alpha_bgn_threshold(&curve, &pol, &ty).unwrap();
        println!("  alpha_I = {alpha_i}, alpha_T = {alpha_t}, q = {q}, alpha_S = {alpha_s}");

        let (lower, upper) = terminal_window(&curve, &pol, &ty).unwrap();
        let walls = enumerate_critical_values(&curve, &pol, &ty, &upper).unwrap();
        let alphas: Vec<String> = walls.iter().map(|cv| cv.alpha.to_string()).collect();
        println!("  walls in (0, {upper}): [{}]", alphas.join(", "));
        println!("  terminal window: ({lower}, {upper})");

        let report = census(&curve, r, d, k as i64).unwrap();
        if report.nonempty {
            println!(
                "  census: nonempty, N = {}, beta = {}, fiber dim = {}, components = {}",
                report.extension_dim,
                report.beta,
                report.fiber_dim.unwrap(),
                report.component_count
            );
        } else {
            println!("  census: empty (k > N = {})", report.extension_dim);
        }
    }
}
