//! Exact stability landscape of coherent systems on polarized nodal
//! reducible curves.
//!
//! Everything is computed in exact rational arithmetic: polarization
//! goodness, critical values of the stability parameter, the thresholds and
//! terminal window, and the census of the terminal moduli space. Brute-force
//! oracles cross-check the main implementations at desk scale.
//!
//! ```
//! use coherent_systems::bounds::{terminal_window, SystemType};
//! use coherent_systems::census::census;
//! use coherent_systems::goodness::is_good;
//! use coherent_systems::rational::{rat, ratio};
//! use coherent_systems::{NodalCurve, Polarization};
//!
//! // two genus-2 components glued at one node, balanced weights
//! let curve = NodalCurve::new(vec![2, 2], vec![(0, 1)])?;
//! let pol = Polarization::from_ratios(&[(1, 2), (1, 2)])?;
//! assert!(is_good(&curve, &pol)?.is_good());
//!
//! let ty = SystemType::from_ints(2, 2, 1)?;
//! assert_eq!(terminal_window(&curve, &pol, &ty)?, (ratio(4, 3), rat(2)));
//!
//! let report = census(&curve, 3, 2, 1)?;
//! assert!(report.nonempty);
//! assert_eq!(report.beta, 20);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

// error payloads carry exact rationals; errors are rare and terminal
#![allow(clippy::result_large_err)]

pub mod bounds;
pub mod census;
pub mod curve;
pub mod document;
pub mod goodness;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod sheaf;
pub mod simplex;

pub use curve::{validate, NodalCurve, Polarization, ValidationError};
pub use goodness::{
    is_good, lambda_w, structure_sheaf_stability, GoodnessReport, GoodnessVerdict, StabilityVerdict,
};
pub use rational::{parse_rational, Rational};
pub use sheaf::{DepthOneNumerics, SheafError};
