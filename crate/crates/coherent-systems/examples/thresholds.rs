//! The threshold chain alpha_I <= alpha_T <= alpha_S below the right end
//! d/(r-k) of the stability range, across a sweep of types.
//!
//! ```bash
//! cargo run -p coherent-systems --example thresholds
//! ```

use coherent_systems::bounds::{
    alpha_bgn_threshold, alpha_injectivity_threshold, alpha_range_bound, alpha_torsion_threshold,
    alpha_torsion_tilde, slope_gap_q, BoundsError, SystemType,
};
use coherent_systems::{NodalCurve, Polarization};

fn main() {
    let curve = NodalCurve::new(vec![2, 2], vec![(0, 1)]).expect("valid curve");
    let pol = Polarization::from_ratios(&[(1, 2), (1, 2)]).expect("valid polarization");

    println!(
        "{:<12} {:>8} {:>8} {:>8} {:>8} {:>8} {:>10}",
        "type", "a_I", "a_T~", "a_T", "q", "a_S", "d/(r-k)"
    );
    for r in 2..=4i64 {
        for k in 1..r as u32 {
            for d in [1i64, 2, 3, 6] {
                let ty = SystemType::from_ints(r, d, k).expect("valid type");
                let alpha_i = alpha_injectivity_threshold(&curve, &pol, &ty).unwrap();
                let alpha_t = alpha_torsion_threshold(&curve, &pol, &ty).unwrap();
                let q = match slope_gap_q(&curve, &pol, &ty) {
                    Ok(q) => q.to_string(),
                    Err(BoundsError::EmptySubsheafRange { .. }) => "-".to_string(),
                    Err(e) => panic!("unexpected error: {e}"),
                };
                let alpha_s = alpha_bgn_threshold(&curve, &pol, &ty).unwrap();
                let bound = alpha_range_bound(&curve, &pol, &ty).unwrap();
                println!(
                    "{:<12} {:>8} {:>8} {:>8} {:>8} {:>8} {:>10}",
                    format!("({r},{d},{k})"),
                    alpha_i.to_string(),
                    alpha_torsion_tilde(&ty).to_string(),
                    alpha_t.to_string(),
                    q,
                    alpha_s.to_string(),
                    bound.to_string()
                );
            }
        }
    }
}
