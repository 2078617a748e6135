use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{HcbError, Result};
use crate::rational::{rat_int, Rational};
use crate::simplex::Simplex;
use crate::vector::SparseVector;

/// Global index of the simplices of a filtration.
///
/// Simplices are numbered in insertion order, so every face of an indexed
/// simplex carries a smaller id. A prefix length `i` selects the subcomplex
/// built from the first `i` insertions; boundary and coboundary queries are
/// answered against a given prefix and never mutate the index.
#[derive(Clone, Debug)]
pub struct ComplexIndex {
    simplices: Vec<Simplex>,
    ids: HashMap<Simplex, usize>,
    by_dim: Vec<Vec<usize>>,
}

impl ComplexIndex {
    /// Indexes `simplices` in order, checking that faces precede cofaces.
    pub fn from_simplices(simplices: Vec<Simplex>) -> Result<Self> {
        let mut idx = ComplexIndex {
            simplices: Vec::with_capacity(simplices.len()),
            ids: HashMap::with_capacity(simplices.len()),
            by_dim: Vec::new(),
        };
        for s in simplices {
            idx.push(s)?;
        }
        Ok(idx)
    }

    pub(crate) fn push(&mut self, s: Simplex) -> Result<usize> {
        if self.ids.contains_key(&s) {
            return Err(HcbError::Invalid(format!("duplicate simplex {s}")));
        }
        for (_, face) in s.facets() {
            if !self.ids.contains_key(&face) {
                return Err(HcbError::MissingFace {
                    simplex: s.to_string(),
                    face: face.to_string(),
                });
            }
        }
        let id = self.simplices.len();
        let d = s.dim();
        if self.by_dim.len() <= d {
            self.by_dim.resize(d + 1, Vec::new());
        }
        self.by_dim[d].push(id);
        self.ids.insert(s.clone(), id);
        self.simplices.push(s);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, id: usize) -> &Simplex {
        &self.simplices[id]
    }

    pub fn dim_of(&self, id: usize) -> usize {
        self.simplices[id].dim()
    }

    pub fn id_of(&self, s: &Simplex) -> Option<usize> {
        self.ids.get(s).copied()
    }

    /// Largest simplex dimension present anywhere in the index.
    pub fn max_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    /// Ids of `dim`-simplices among the first `prefix` insertions, ascending.
    pub fn ids_in_prefix(&self, dim: usize, prefix: usize) -> &[usize] {
        match self.by_dim.get(dim) {
            None => &[],
            Some(ids) => {
                let cut = ids.partition_point(|&id| id < prefix);
                &ids[..cut]
            }
        }
    }

    /// Number of `dim`-simplices among the first `prefix` insertions.
    pub fn count_in_prefix(&self, dim: usize, prefix: usize) -> usize {
        self.ids_in_prefix(dim, prefix).len()
    }

    /// Boundary chain of a single simplex: alternating-sign sum of its
    /// codimension-one faces. Empty for vertices.
    pub fn boundary_of_simplex(&self, id: usize) -> Result<SparseVector> {
        let s = &self.simplices[id];
        let mut entries = Vec::with_capacity(s.vertices().len());
        for (q, face) in s.facets() {
            let fid = self.ids.get(&face).ok_or_else(|| HcbError::MissingFace {
                simplex: s.to_string(),
                face: face.to_string(),
            })?;
            let sign = if q % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            entries.push((*fid, sign));
        }
        Ok(SparseVector::from_entries(entries))
    }

    /// Linear extension of the boundary operator to degree-`p` vectors.
    pub fn apply_boundary(&self, v: &SparseVector, p: usize) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (id, c) in v.iter() {
            let d = self.dim_of(id);
            if d != p {
                return Err(HcbError::DegreeMismatch {
                    expected: p,
                    found: d,
                });
            }
            if p == 0 {
                continue;
            }
            out.axpy(c, &self.boundary_of_simplex(id)?);
        }
        Ok(out)
    }

    /// Coboundary of a degree-`p` vector against the prefix complex:
    /// `w(τ) = v(∂τ)` for every (p+1)-simplex τ with id below `prefix`.
    ///
    /// Computed on demand because the answer changes with every insertion.
    pub fn apply_coboundary(&self, v: &SparseVector, p: usize, prefix: usize) -> SparseVector {
        let mut entries = Vec::new();
        for &tau in self.ids_in_prefix(p + 1, prefix) {
            let s = &self.simplices[tau];
            let mut val = Rational::zero();
            for (q, face) in s.facets() {
                let fid = self.ids[&face];
                if let Some(c) = v.get(fid) {
                    if q % 2 == 0 {
                        val += c;
                    } else {
                        val -= c;
                    }
                }
            }
            if !val.is_zero() {
                entries.push((tau, val));
            }
        }
        SparseVector::from_entries(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn simplex(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    /// a, b, c, ab, bc, ac, abc with ids 0..7.
    fn triangle_index() -> ComplexIndex {
        ComplexIndex::from_simplices(vec![
            simplex(&[0]),
            simplex(&[1]),
            simplex(&[2]),
            simplex(&[0, 1]),
            simplex(&[1, 2]),
            simplex(&[0, 2]),
            simplex(&[0, 1, 2]),
        ])
        .unwrap()
    }

    #[test]
    fn vertex_boundary_is_empty() {
        let idx = triangle_index();
        assert!(idx.boundary_of_simplex(0).unwrap().is_zero());
    }

    #[test]
    fn edge_boundary_signs() {
        let idx = triangle_index();
        let b = idx.boundary_of_simplex(3).unwrap();
        assert_eq!(b.coeff(1), rat_int(1));
        assert_eq!(b.coeff(0), rat_int(-1));
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn triangle_boundary_alternates() {
        let idx = triangle_index();
        let b = idx.boundary_of_simplex(6).unwrap();
        // ∂(abc) = bc − ac + ab
        assert_eq!(b.coeff(4), rat_int(1));
        assert_eq!(b.coeff(5), rat_int(-1));
        assert_eq!(b.coeff(3), rat_int(1));
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let idx = triangle_index();
        let b = idx.boundary_of_simplex(6).unwrap();
        let bb = idx.apply_boundary(&b, 1).unwrap();
        assert!(bb.is_zero());
    }

    #[test]
    fn cycle_of_triangle_has_zero_boundary() {
        let idx = triangle_index();
        let z = SparseVector::from_entries([
            (3, rat_int(1)),
            (4, rat_int(1)),
            (5, rat_int(-1)),
        ]);
        assert!(idx.apply_boundary(&z, 1).unwrap().is_zero());
    }

    #[test]
    fn coboundary_of_vertex_dual() {
        // In the complex {a, b, ab}: δ(â) = −âb.
        let idx = ComplexIndex::from_simplices(vec![
            simplex(&[0]),
            simplex(&[1]),
            simplex(&[0, 1]),
        ])
        .unwrap();
        let d = idx.apply_coboundary(&SparseVector::unit(0), 0, 3);
        assert_eq!(d.coeff(2), rat_int(-1));
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn coboundary_without_cofaces_is_zero() {
        let idx = triangle_index();
        // Prefix of length 3 has no edges: every 0-cochain is a cocycle.
        let d = idx.apply_coboundary(&SparseVector::unit(0), 0, 3);
        assert!(d.is_zero());
    }

    #[test]
    fn triangle_cycle_stops_being_cocycle_when_filled() {
        let idx = triangle_index();
        let z = SparseVector::from_entries([
            (3, rat_int(1)),
            (4, rat_int(1)),
            (5, rat_int(-1)),
        ]);
        // Without the 2-cell every 1-chain is a cocycle; with abc present,
        // z(∂abc) = 1 + 1 + 1 = 3: the cycle is no longer harmonic.
        assert!(idx.apply_coboundary(&z, 1, 6).is_zero());
        let d = idx.apply_coboundary(&z, 1, 7);
        assert_eq!(d.coeff(6), rat_int(3));
    }

    #[test]
    fn adjointness_of_boundary_and_coboundary() {
        let idx = triangle_index();
        let v = SparseVector::from_entries([(0, rat_int(2)), (1, rat_int(-3))]);
        let dv = idx.apply_coboundary(&v, 0, 7);
        for tau in [3usize, 4, 5] {
            let btau = idx.boundary_of_simplex(tau).unwrap();
            assert_eq!(dv.coeff(tau), v.dot(&btau));
        }
    }

    #[test]
    fn missing_face_is_reported() {
        let r = ComplexIndex::from_simplices(vec![simplex(&[0]), simplex(&[0, 1])]);
        assert!(matches!(r, Err(HcbError::MissingFace { .. })));
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let idx = triangle_index();
        let r = idx.apply_boundary(&SparseVector::unit(3), 2);
        assert!(matches!(r, Err(HcbError::DegreeMismatch { .. })));
    }
}
