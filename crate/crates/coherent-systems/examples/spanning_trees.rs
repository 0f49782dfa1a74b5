//! Spanning-tree counts of dual multigraphs by exact integer determinants,
//! checked against exhaustive edge-subset enumeration.
//!
//! ```bash
//! cargo run -p coherent-systems --example spanning_trees
//! ```

use coherent_systems::oracle::spanning_trees_bruteforce;
use coherent_systems::NodalCurve;

fn main() {
    let gallery: Vec<(&str, NodalCurve)> = vec![
        (
            "one node",
            NodalCurve::new(vec![2, 2], vec![(0, 1)]).unwrap(),
        ),
        (
            "three parallel nodes",
            NodalCurve::new(vec![2, 2], vec![(0, 1); 3]).unwrap(),
        ),
        (
            "triangle",
            NodalCurve::new(vec![2, 2, 2], vec![(0, 1), (1, 2), (0, 2)]).unwrap(),
        ),
        (
            "doubled triangle",
            NodalCurve::new(
                vec![2, 2, 2],
                vec![(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)],
            )
            .unwrap(),
        ),
        (
            "complete graph on four components",
            NodalCurve::new(
                vec![2, 2, 2, 2],
                vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            )
            .unwrap(),
        ),
        (
            "path of four components",
            NodalCurve::new(vec![2, 3, 4, 5], vec![(0, 1), (1, 2), (2, 3)]).unwrap(),
        ),
    ];

    for (name, curve) in gallery {
        let count = curve.spanning_tree_count();
        let check = spanning_trees_bruteforce(&curve);
        println!(
            "{name}: gamma = {}, delta = {}, compact type = {}",
            curve.gamma(),
            curve.delta(),
            curve.is_compact_type()
        );
        println!(
            "  spanning trees: {count} (enumeration agrees: {})",
            count == check
        );
    }
}
