//! Wall enumeration: every critical value in a window, with the numerical
//! subsystems that witness it.
//!
//! ```bash
//! cargo run -p coherent-systems --example critical_values
//! ```

use coherent_systems::bounds::{enumerate_critical_values, SystemType};
use coherent_systems::rational::rat;
use coherent_systems::{NodalCurve, Polarization};

fn main() {
    let curve = NodalCurve::new(vec![2, 2], vec![(0, 1)]).expect("valid curve");
    let pol = Polarization::from_ratios(&[(1, 2), (1, 2)]).expect("valid polarization");

    for (r, d, k, window) in [(2i64, 1i64, 1u32, 1i64), (2, 2, 1, 2), (3, 3, 1, 4)] {
        let ty = SystemType::from_ints(r, d, k).expect("valid type");
        let window = rat(window);
        let walls = enumerate_critical_values(&curve, &pol, &ty, &window).unwrap();
        println!("type ({r}, {d}, {k}), window (0, {window}):");
        if walls.is_empty() {
            println!("  no critical values");
        }
        for wall in &walls {
            println!("  alpha = {}", wall.alpha);
            for witness in &wall.witnesses {
                println!(
                    "    k' = {}, multirank {:?}, chi' = {}",
                    witness.k_prime, witness.multirank, witness.chi_prime
                );
            }
        }
        println!();
    }
}
