//! Harmonic chain barcodes of simplex-wise filtrations.
//!
//! A harmonic chain is a cycle that is also a cocycle; it is the unique
//! least-norm chain in its (co)homology class. Along a filtration the
//! harmonic chain groups grow and shrink by inclusions, and the resulting
//! zigzag of spaces decomposes into bars. This crate computes that barcode
//! together with one canonical harmonic representative per bar, which stays
//! harmonic over exactly the bar's lifetime.
//!
//! The main entry points:
//!
//! * [`Filtration::parse`] / [`lower_star_filtration`] — build inputs;
//! * [`compute_harmonic_barcode`] — the incremental engine (cubic total);
//! * [`compute_ordinary_barcode`] — standard persistence for comparison;
//! * [`certify_barcode`] / [`harmonic_space`] — brute-force verification;
//! * [`bottleneck_distance`] / [`stability_experiment`] — metric checks on
//!   the closed-open barcodes of sublevel-set filtrations.
//!
//! All arithmetic is exact over ℚ.

pub mod barcode;
pub mod bottleneck;
pub mod complex;
pub mod engine;
pub mod error;
pub mod filtration;
pub mod matrix;
pub mod oracle;
pub mod ordinary;
pub mod random;
pub mod rational;
pub mod simplex;
pub mod stability;
pub mod vector;

pub use barcode::{to_closed_open, Bar, BarRecord, Barcode, BarcodeFile, DeathKind, OrdinaryBar, RealInterval};
pub use bottleneck::{bottleneck_distance, Diagram};
pub use complex::ComplexIndex;
pub use engine::{check_state_invariants, compute_harmonic_barcode, HarmonicEngine, StepEvent};
pub use error::{HcbError, Result};
pub use filtration::{
    lower_star_filtration, parse_complex, parse_vertex_values, Filtration, FiltrationStep,
    TimestampMap,
};
pub use matrix::{rank_and_kernel, ColumnMatrix, Reduction};
pub use oracle::{betti_number, certify_barcode, harmonic_space, minimal_norm_check, CertReport};
pub use ordinary::{compute_ordinary_barcode, ordinary_endpoints};
pub use random::{random_filtration, random_vertex_values, RandomComplexParams};
pub use rational::{format_rational, parse_rational, Rational};
pub use simplex::Simplex;
pub use stability::{stability_experiment, StabilityReport};
pub use vector::SparseVector;
