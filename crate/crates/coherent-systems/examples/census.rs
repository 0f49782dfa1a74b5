//! Census of the terminal moduli space for uniform multirank: emptiness,
//! dimensions, component count and degree labels with restriction flags.
//!
//! ```bash
//! cargo run -p coherent-systems --example census
//! ```

use coherent_systems::census::census;
use coherent_systems::NodalCurve;

fn table(curve: &NodalCurve, name: &str) {
    println!(
        "{name}: genera {:?}, {} node(s), p_a = {}, spanning trees = {}",
        curve.genera(),
        curve.delta(),
        curve.arithmetic_genus(),
        curve.spanning_tree_count()
    );
    for (r, d, k) in [
        (2i64, 1i64, 1i64),
        (2, 2, 1),
        (3, 2, 1),
        (3, 4, 2),
        (10, 1, 9),
    ] {
        let report = census(curve, r, d, k).expect("valid census type");
        if !report.nonempty {
            println!("  ({r},{d},{k}): empty (k > N = {})", report.extension_dim);
            continue;
        }
        println!(
            "  ({r},{d},{k}): N = {}, beta = {}, fiber {}, component dim {}, U dim {}, count {}",
            report.extension_dim,
            report.beta,
            report.fiber_dim.unwrap(),
            report.component_dim.unwrap(),
            report.u_component_dim,
            report.component_count,
        );
        for label in &report.labels {
            println!(
                "      label {:?} -> restriction flags {:?}",
                label.degrees, label.restriction_flags
            );
        }
    }
    println!();
}

fn main() {
    let one_node = NodalCurve::new(vec![2, 2], vec![(0, 1)]).expect("valid curve");
    table(&one_node, "one-node curve");

    let three_nodes =
        NodalCurve::new(vec![2, 3], vec![(0, 1), (0, 1), (0, 1)]).expect("valid curve");
    table(&three_nodes, "three-node curve");
}
