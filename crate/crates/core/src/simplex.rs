use std::fmt;

use crate::error::{HcbError, Result};

/// An oriented simplex, stored as its strictly increasing vertex list.
///
/// The increasing order is the canonical orientation: every sign in the
/// boundary formula is taken relative to it, so signs are deterministic and
/// independent of how the input happened to list vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex {
    vertices: Vec<u32>,
}

impl Simplex {
    /// Builds a simplex from a strictly ascending vertex list.
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(HcbError::Invalid("simplex needs at least one vertex".into()));
        }
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(HcbError::Invalid(format!(
                "vertices must be strictly ascending, got {vertices:?}"
            )));
        }
        Ok(Simplex { vertices })
    }

    /// Builds a simplex from vertices in any order, rejecting repeats.
    pub fn from_unsorted(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        Simplex::new(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Dimension, i.e. vertex count minus one.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The codimension-one face omitting the vertex at position `q`.
    pub fn facet(&self, q: usize) -> Simplex {
        debug_assert!(self.dim() >= 1 && q < self.vertices.len());
        let mut v = self.vertices.clone();
        v.remove(q);
        Simplex { vertices: v }
    }

    /// All codimension-one faces, paired with the position of the dropped
    /// vertex (which carries the alternating sign). Empty for vertices.
    pub fn facets(&self) -> impl Iterator<Item = (usize, Simplex)> + '_ {
        let n = if self.dim() == 0 {
            0
        } else {
            self.vertices.len()
        };
        (0..n).map(move |q| (q, self.facet(q)))
    }

    /// Every nonempty face of `self`, including itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity((1 << n) - 1);
        for mask in 1u32..(1 << n) {
            let v: Vec<u32> = (0..n)
                .filter(|q| mask & (1 << q) != 0)
                .map(|q| self.vertices[q])
                .collect();
            out.push(Simplex { vertices: v });
        }
        out
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted_and_duplicate_vertices() {
        assert!(Simplex::new(vec![2, 1]).is_err());
        assert!(Simplex::new(vec![1, 1]).is_err());
        assert!(Simplex::new(vec![]).is_err());
        assert!(Simplex::from_unsorted(vec![3, 1, 2]).is_ok());
        assert!(Simplex::from_unsorted(vec![3, 1, 3]).is_err());
    }

    #[test]
    fn facets_of_triangle() {
        let t = Simplex::new(vec![0, 1, 2]).unwrap();
        let faces: Vec<_> = t.facets().collect();
        assert_eq!(faces.len(), 3);
        assert_eq!(faces[0].1.vertices(), &[1, 2]);
        assert_eq!(faces[1].1.vertices(), &[0, 2]);
        assert_eq!(faces[2].1.vertices(), &[0, 1]);
    }

    #[test]
    fn vertex_has_no_facets() {
        let v = Simplex::new(vec![7]).unwrap();
        assert_eq!(v.facets().count(), 0);
        assert_eq!(v.dim(), 0);
    }

    #[test]
    fn all_faces_counts() {
        let t = Simplex::new(vec![0, 1, 2]).unwrap();
        assert_eq!(t.all_faces().len(), 7);
    }
}
