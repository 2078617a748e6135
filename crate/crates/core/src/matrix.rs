use std::collections::HashMap;

use num_traits::One;

use crate::rational::Rational;
use crate::vector::SparseVector;

/// Outcome of reducing a vector against a distinct-pivot column store.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// What is left after all possible pivot eliminations. Either zero or a
    /// vector whose pivot matches no stored column.
    pub residual: SparseVector,
    /// Every elimination step as `(column index, coefficient)`, so that
    /// `input = residual + Σ coeff · column`.
    pub coeffs: Vec<(usize, Rational)>,
}

/// Ordered store of nonzero sparse columns with pivot-indexed reduction.
///
/// When used with distinct pivots (the reduced boundary matrices `R` and the
/// engine's `BoC`), each reduction step is a single lookup. Columns are the
/// unit of every elementary operation performed by the engines, so the span
/// of the store is preserved by construction.
#[derive(Clone, Debug, Default)]
pub struct ColumnMatrix {
    columns: Vec<SparseVector>,
    pivot_to_col: HashMap<usize, usize>,
}

impl ColumnMatrix {
    pub fn new() -> Self {
        ColumnMatrix::default()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, j: usize) -> &SparseVector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.columns
    }

    pub fn pivot_of(&self, j: usize) -> usize {
        self.columns[j].pivot().expect("stored columns are nonzero")
    }

    pub fn col_with_pivot(&self, pivot: usize) -> Option<usize> {
        self.pivot_to_col.get(&pivot).copied()
    }

    /// Appends a nonzero column whose pivot collides with no stored column.
    pub fn push(&mut self, v: SparseVector) {
        let p = v.pivot().expect("cannot store a zero column");
        let prev = self.pivot_to_col.insert(p, self.columns.len());
        assert!(prev.is_none(), "pivot {p} already present");
        self.columns.push(v);
    }

    /// Appends a nonzero column that may collide with a stored pivot; the
    /// caller restores distinctness afterwards.
    pub fn push_unrestored(&mut self, v: SparseVector) {
        let p = v.pivot().expect("cannot store a zero column");
        let j = self.columns.len();
        self.pivot_to_col.entry(p).or_insert(j);
        self.columns.push(v);
    }

    /// Replaces column `j`, keeping the pivot lookup in sync. The caller is
    /// responsible for restoring pivot distinctness afterwards.
    pub fn set_column(&mut self, j: usize, v: SparseVector) {
        let old = self.pivot_of(j);
        if self.pivot_to_col.get(&old) == Some(&j) {
            self.pivot_to_col.remove(&old);
        }
        let p = v.pivot().expect("cannot store a zero column");
        self.columns[j] = v;
        self.pivot_to_col.entry(p).or_insert(j);
    }

    /// Rebuilds the pivot lookup and returns a colliding pair `(j, k)` with
    /// the smallest shared pivot, if any. With at most structured collisions
    /// this drives the restore loop of the engine.
    pub fn rebuild_pivots(&mut self) -> Option<(usize, usize)> {
        self.pivot_to_col.clear();
        let mut collision: Option<(usize, usize, usize)> = None;
        for (j, c) in self.columns.iter().enumerate() {
            let p = c.pivot().expect("stored columns are nonzero");
            if let Some(&k) = self.pivot_to_col.get(&p) {
                if collision.as_ref().is_none_or(|&(q, _, _)| p < q) {
                    collision = Some((p, k, j));
                }
            } else {
                self.pivot_to_col.insert(p, j);
            }
        }
        collision.map(|(_, k, j)| (k, j))
    }

    /// Eliminates `v` against the stored columns: repeatedly cancels the
    /// pivot entry of the running residual with the column sharing that
    /// pivot, until no column matches.
    pub fn reduce(&self, v: &SparseVector) -> Reduction {
        let mut residual = v.clone();
        let mut coeffs = Vec::new();
        while let Some((k, a1)) = residual.pivot_entry() {
            let Some(j) = self.col_with_pivot(k) else {
                break;
            };
            let a2 = self.columns[j].get(k).expect("pivot entry present");
            let factor = a1 / a2;
            let neg = -factor.clone();
            residual.axpy(&neg, &self.columns[j]);
            coeffs.push((j, factor));
        }
        Reduction { residual, coeffs }
    }

    /// Rank of the column span, by fresh elimination. Test and oracle aid.
    pub fn rank(&self) -> usize {
        rank_and_kernel(&self.columns).0
    }
}

/// Exact Gaussian elimination over ℚ on a list of columns.
///
/// Returns the rank of the span together with a basis of the kernel of the
/// linear map `x ↦ Σ x_j · columns[j]`. Kernel vectors are indexed by column
/// position and normalized so their first nonzero coordinate is one.
pub fn rank_and_kernel(columns: &[SparseVector]) -> (usize, Vec<SparseVector>) {
    let mut store = ColumnMatrix::new();
    // combo[k] expresses store column k over the original column positions.
    let mut combos: Vec<SparseVector> = Vec::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let red = store.reduce(col);
        let mut combo = SparseVector::unit(j);
        for (k, c) in &red.coeffs {
            let neg = -c.clone();
            combo.axpy(&neg, &combos[*k]);
        }
        if red.residual.is_zero() {
            kernel.push(combo.leading_normalized());
        } else {
            store.push(red.residual);
            combos.push(combo);
        }
    }
    (store.len(), kernel)
}

/// Rank of a column list without keeping kernel bookkeeping.
pub fn rank_of(columns: &[SparseVector]) -> usize {
    let mut store = ColumnMatrix::new();
    for col in columns {
        let red = store.reduce(col);
        if !red.residual.is_zero() {
            store.push(red.residual);
        }
    }
    store.len()
}

/// True when `v` lies in the span of `basis`.
pub fn in_span(basis: &[SparseVector], v: &SparseVector) -> bool {
    if v.is_zero() {
        return true;
    }
    let mut store = ColumnMatrix::new();
    for col in basis {
        let red = store.reduce(col);
        if !red.residual.is_zero() {
            store.push(red.residual);
        }
    }
    store.reduce(v).residual.is_zero()
}

/// Checks that a reduction certificate reconstructs its input exactly.
pub fn reconstructs(m: &ColumnMatrix, input: &SparseVector, red: &Reduction) -> bool {
    let mut acc = red.residual.clone();
    for (j, c) in &red.coeffs {
        acc.axpy(c, m.column(*j));
    }
    acc == *input
}

/// True when every coefficient of `v` is ±1 or 0 and the pivot is one.
pub fn pivot_is_unit(v: &SparseVector) -> bool {
    v.pivot_entry().map_or(true, |(_, c)| c.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn sv(pairs: &[(usize, i64)]) -> SparseVector {
        SparseVector::from_entries(pairs.iter().map(|&(i, c)| (i, rat_int(c))))
    }

    #[test]
    fn reduce_zero_vector() {
        let m = ColumnMatrix::new();
        let red = m.reduce(&SparseVector::zero());
        assert!(red.residual.is_zero());
        assert!(red.coeffs.is_empty());
    }

    #[test]
    fn reduce_stored_column_to_zero() {
        let mut m = ColumnMatrix::new();
        m.push(sv(&[(0, -1), (1, 1)]));
        let red = m.reduce(&sv(&[(0, -1), (1, 1)]));
        assert!(red.residual.is_zero());
        assert_eq!(red.coeffs, vec![(0, rat_int(1))]);
    }

    #[test]
    fn reduce_with_disjoint_pivot_is_identity() {
        // ∂(ab) = b − a against {∂(ac) = c − a}: pivots differ (b vs c).
        let mut m = ColumnMatrix::new();
        m.push(sv(&[(0, -1), (2, 1)]));
        let v = sv(&[(0, -1), (1, 1)]);
        let red = m.reduce(&v);
        assert_eq!(red.residual, v);
        assert!(red.coeffs.is_empty());
    }

    #[test]
    fn reduction_reconstructs_input() {
        let mut m = ColumnMatrix::new();
        m.push(sv(&[(0, -1), (1, 1)]));
        m.push(sv(&[(1, -1), (2, 1)]));
        let v = sv(&[(0, -1), (2, 1)]);
        let red = m.reduce(&v);
        assert!(red.residual.is_zero());
        assert!(reconstructs(&m, &v, &red));
    }

    #[test]
    fn rank_of_identity_and_zero() {
        let id: Vec<_> = (0..3).map(SparseVector::unit).collect();
        let (rank, kernel) = rank_and_kernel(&id);
        assert_eq!(rank, 3);
        assert!(kernel.is_empty());

        let zeros = vec![SparseVector::zero(); 3];
        let (rank, kernel) = rank_and_kernel(&zeros);
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 3);
        for (j, k) in kernel.iter().enumerate() {
            assert_eq!(k, &SparseVector::unit(j));
        }
    }

    #[test]
    fn kernel_of_triangle_graph_boundary() {
        // ∂1 of the 3-cycle graph: columns b−a, c−b, c−a.
        let cols = vec![
            sv(&[(0, -1), (1, 1)]),
            sv(&[(1, -1), (2, 1)]),
            sv(&[(0, -1), (2, 1)]),
        ];
        let (rank, kernel) = rank_and_kernel(&cols);
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 1);
        // Kernel vector is x0 + x1 − x2 = 0 direction, leading coefficient 1.
        assert_eq!(kernel[0], sv(&[(0, 1), (1, 1), (2, -1)]));
    }

    #[test]
    fn kernel_vectors_really_annihilate() {
        let cols = vec![
            sv(&[(0, 2), (1, 4)]),
            sv(&[(0, 1), (1, 2)]),
            sv(&[(0, 3), (2, 1)]),
        ];
        let (rank, kernel) = rank_and_kernel(&cols);
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 1);
        for k in &kernel {
            let mut acc = SparseVector::zero();
            for (j, c) in k.iter() {
                acc.axpy(c, &cols[j]);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn span_membership() {
        let basis = vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)])];
        assert!(in_span(&basis, &sv(&[(0, 1), (2, -1)])));
        assert!(!in_span(&basis, &sv(&[(0, 1)])));
        assert!(in_span(&basis, &SparseVector::zero()));
    }

    #[test]
    fn rebuild_pivots_flags_smallest_collision() {
        let mut m = ColumnMatrix::new();
        m.push(sv(&[(1, 1)]));
        m.push(sv(&[(3, 1)]));
        assert!(m.rebuild_pivots().is_none());
        m.set_column(1, sv(&[(0, 1), (1, 2)]));
        let (a, b) = m.rebuild_pivots().unwrap();
        assert_eq!((a, b), (0, 1));
    }
}
