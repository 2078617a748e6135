//! Ordinary persistence by standard column reduction, over the same exact
//! rational substrate as the harmonic engine so the two barcodes share one
//! sign convention and their endpoint multisets are directly comparable.
//! Bars use the closed integer interval convention: a class killed by the
//! insertion of `σ_i` has death index `i`, and the pairing follows the elder
//! rule (the *youngest* positive face is paired — the mirror image of the
//! harmonic engine's oldest-pairing).

use crate::barcode::{DeathKind, OrdinaryBar};
use crate::error::Result;
use crate::filtration::Filtration;
use crate::matrix::ColumnMatrix;

/// Computes the ordinary persistence barcode of `f`.
pub fn compute_ordinary_barcode(f: &Filtration) -> Result<Vec<OrdinaryBar>> {
    let complex = f.complex();
    let m = f.len();
    let mut reduced: Vec<ColumnMatrix> = Vec::new();
    // unpaired[p] holds birth indices of still-open degree-p bars.
    let mut unpaired: Vec<Vec<usize>> = Vec::new();
    let mut bars = Vec::new();

    for i in 0..m {
        let p = complex.dim_of(i);
        if unpaired.len() <= p {
            unpaired.resize_with(p + 1, Vec::new);
        }
        if p >= 1 && reduced.len() < p {
            reduced.resize_with(p, ColumnMatrix::new);
        }
        if p == 0 {
            unpaired[0].push(i + 1);
            continue;
        }
        let boundary = complex.boundary_of_simplex(i)?;
        let red = reduced[p - 1].reduce(&boundary);
        match red.residual.pivot() {
            None => unpaired[p].push(i + 1),
            Some(k) => {
                // The pivot simplex σ_k was positive; its bar [k+1, i] dies.
                bars.push(OrdinaryBar {
                    degree: p - 1,
                    birth: k + 1,
                    death: i,
                    death_kind: DeathKind::Paired,
                });
                let pos = unpaired[p - 1]
                    .iter()
                    .position(|&b| b == k + 1)
                    .expect("pivot of a reduced column marks an unpaired birth");
                unpaired[p - 1].remove(pos);
                reduced[p - 1].push(red.residual);
            }
        }
    }

    for (p, births) in unpaired.into_iter().enumerate() {
        for b in births {
            bars.push(OrdinaryBar {
                degree: p,
                birth: b,
                death: m,
                death_kind: DeathKind::EndOfFiltration,
            });
        }
    }
    bars.sort_by_key(|b| (b.degree, b.birth, b.death));
    Ok(bars)
}

/// Sorted (birth, death) endpoint multisets of degree `p`, paired deaths only.
pub fn ordinary_endpoints(bars: &[OrdinaryBar], p: usize) -> (Vec<usize>, Vec<usize>) {
    let mut births: Vec<usize> = bars.iter().filter(|b| b.degree == p).map(|b| b.birth).collect();
    let mut deaths: Vec<usize> = bars
        .iter()
        .filter(|b| b.degree == p && b.death_kind == DeathKind::Paired)
        .map(|b| b.death)
        .collect();
    births.sort_unstable();
    deaths.sort_unstable();
    (births, deaths)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "0 0\n0 1\n0 2\n1 0 1\n1 1 2\n1 0 2\n2 0 1 2\n";

    #[test]
    fn triangle_fixture_elder_rule() {
        let f = Filtration::parse(TRIANGLE).unwrap();
        let bars = compute_ordinary_barcode(&f).unwrap();
        let d0: Vec<(usize, usize)> = bars
            .iter()
            .filter(|b| b.degree == 0)
            .map(|b| (b.birth, b.death))
            .collect();
        assert_eq!(d0, vec![(1, 7), (2, 3), (3, 4)]);
        let d1: Vec<(usize, usize)> = bars
            .iter()
            .filter(|b| b.degree == 1)
            .map(|b| (b.birth, b.death))
            .collect();
        assert_eq!(d1, vec![(6, 6)]);
    }

    #[test]
    fn single_vertex_matches_harmonic() {
        let f = Filtration::parse("0 0\n").unwrap();
        let bars = compute_ordinary_barcode(&f).unwrap();
        assert_eq!(bars.len(), 1);
        assert_eq!((bars[0].birth, bars[0].death), (1, 1));
    }

    #[test]
    fn betti_curve_from_bars() {
        let f = Filtration::parse(TRIANGLE).unwrap();
        let bars = compute_ordinary_barcode(&f).unwrap();
        // #bars containing i in degree 0 = β_0(K_i).
        let count = |p: usize, i: usize| {
            bars.iter()
                .filter(|b| b.degree == p && b.birth <= i && i <= b.death)
                .count()
        };
        let expected_b0 = [0, 1, 2, 3, 2, 1, 1, 1];
        for (i, want) in expected_b0.iter().enumerate() {
            assert_eq!(count(0, i), *want, "β_0(K_{i})");
        }
        let expected_b1 = [0, 0, 0, 0, 0, 0, 1, 0];
        for (i, want) in expected_b1.iter().enumerate() {
            assert_eq!(count(1, i), *want, "β_1(K_{i})");
        }
    }
}
