//! Empirical check of the sublevel-set stability bound: the bottleneck
//! distance between the closed-open harmonic barcodes of two vertex
//! functions on one complex is at most the sup-norm of their difference.
//! The comparison is an exact rational inequality.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use serde::Serialize;

use crate::barcode::to_closed_open;
use crate::bottleneck::{bottleneck_distance, Diagram};
use crate::engine::compute_harmonic_barcode;
use crate::error::{HcbError, Result};
use crate::filtration::lower_star_filtration;
use crate::rational::{format_rational, Rational};
use crate::simplex::Simplex;

#[derive(Clone, Debug, Serialize)]
pub struct DegreeDistance {
    pub degree: usize,
    /// `None` encodes +∞.
    pub distance: Option<String>,
    pub within_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub sup_diff: String,
    pub per_degree: Vec<DegreeDistance>,
    pub max_distance: Option<String>,
    pub bound_holds: bool,
}

/// Builds both lower-star filtrations, computes the harmonic barcodes, maps
/// them to closed-open intervals and compares per-degree bottleneck
/// distances against ‖f − g‖∞.
pub fn stability_experiment(
    maximal: &[Simplex],
    f_values: &BTreeMap<u32, Rational>,
    g_values: &BTreeMap<u32, Rational>,
) -> Result<StabilityReport> {
    if f_values.keys().ne(g_values.keys()) {
        return Err(HcbError::Invalid(
            "the two vertex functions cover different vertex sets".into(),
        ));
    }
    let mut sup_diff = Rational::zero();
    for (v, fv) in f_values {
        let d = (fv - &g_values[v]).abs();
        if d > sup_diff {
            sup_diff = d;
        }
    }

    let ff = lower_star_filtration(maximal, f_values)?;
    let fg = lower_star_filtration(maximal, g_values)?;
    let bf = compute_harmonic_barcode(&ff)?;
    let bg = compute_harmonic_barcode(&fg)?;
    let intervals_f = to_closed_open(&bf, &ff.timestamps());
    let intervals_g = to_closed_open(&bg, &fg.timestamps());

    let max_degree = intervals_f
        .iter()
        .chain(&intervals_g)
        .map(|it| it.degree)
        .max();
    let mut per_degree = Vec::new();
    let mut max_distance: Option<Rational> = Some(Rational::zero());
    let mut bound_holds = true;
    if let Some(top) = max_degree {
        for degree in 0..=top {
            let da = Diagram::from_intervals(&intervals_f, degree);
            let db = Diagram::from_intervals(&intervals_g, degree);
            if da.is_empty() && db.is_empty() {
                continue;
            }
            let dist = bottleneck_distance(&da, &db);
            let within = match &dist {
                Some(d) => *d <= sup_diff,
                None => false,
            };
            bound_holds &= within;
            max_distance = match (max_distance, &dist) {
                (None, _) | (_, None) => None,
                (Some(mx), Some(d)) => Some(if *d > mx { d.clone() } else { mx }),
            };
            per_degree.push(DegreeDistance {
                degree,
                distance: dist.as_ref().map(format_rational),
                within_bound: within,
            });
        }
    }

    Ok(StabilityReport {
        sup_diff: format_rational(&sup_diff),
        per_degree,
        max_distance: max_distance.as_ref().map(format_rational),
        bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn two_triangles() -> Vec<Simplex> {
        vec![
            Simplex::new(vec![0, 1, 2]).unwrap(),
            Simplex::new(vec![1, 2, 3]).unwrap(),
        ]
    }

    #[test]
    fn identical_functions_give_zero_distance() {
        let f: BTreeMap<u32, Rational> = (0..4).map(|v| (v, rat_int(v as i64))).collect();
        let report = stability_experiment(&two_triangles(), &f, &f).unwrap();
        assert_eq!(report.sup_diff, "0");
        assert!(report.bound_holds);
        assert_eq!(report.max_distance.as_deref(), Some("0"));
    }

    #[test]
    fn constant_shift_respects_bound() {
        let f: BTreeMap<u32, Rational> = (0..4).map(|v| (v, rat_int(v as i64))).collect();
        let g: BTreeMap<u32, Rational> = f.iter().map(|(v, x)| (*v, x + rat(3, 2))).collect();
        let report = stability_experiment(&two_triangles(), &f, &g).unwrap();
        assert_eq!(report.sup_diff, "3/2");
        assert!(report.bound_holds);
    }

    #[test]
    fn mismatched_vertex_sets_error() {
        let f: BTreeMap<u32, Rational> = (0..4).map(|v| (v, rat_int(0))).collect();
        let g: BTreeMap<u32, Rational> = (0..3).map(|v| (v, rat_int(0))).collect();
        assert!(stability_experiment(&two_triangles(), &f, &g).is_err());
    }
}
