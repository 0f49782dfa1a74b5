//! The file interface: parse a curve document, build the validated model,
//! and emit a structured report that round-trips byte for byte.
//!
//! ```bash
//! cargo run -p coherent-systems --example curve_document
//! ```

use coherent_systems::bounds::SystemType;
use coherent_systems::document::{CurveDocument, SheafDocument};
use coherent_systems::report::{full_report, to_json, FullReport};
use coherent_systems::sheaf::DepthOneNumerics;

fn main() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/two_component.json"
    );
    let text = std::fs::read_to_string(path).expect("example data file exists");
    let document = CurveDocument::from_json(&text).expect("well-formed document");
    let (curve, pol) = document.build().expect("valid curve and polarization");
    println!(
        "loaded curve: genera {:?}, {} node(s), weights {:?}",
        curve.genera(),
        curve.delta(),
        document.weights
    );

    // Sheaf numerics travel in the same format.
    let structure = DepthOneNumerics::structure_sheaf(&curve);
    let sheaf_doc = SheafDocument::from_numerics(&structure);
    println!("structure sheaf document:\n{}\n", sheaf_doc.to_json());

    let ty = SystemType::from_ints(2, 2, 1).expect("valid type");
    let report = full_report(&curve, &pol, &ty).expect("report for the worked type");
    let emitted = to_json(&report);
    let reparsed: FullReport = serde_json::from_str(&emitted).expect("report re-parses");
    assert_eq!(to_json(&reparsed), emitted, "round trip is byte-identical");
    println!(
        "full report ({} bytes) round-trips byte-identically",
        emitted.len()
    );
}
