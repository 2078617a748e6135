//! Incremental computation of the harmonic chain barcode.
//!
//! The engine processes a simplex-wise filtration one insertion at a time.
//! Each insertion either raises or lowers the total harmonic dimension by
//! one. A positive insertion opens a new bar with a freshly constructed
//! harmonic cycle; a negative insertion closes the *oldest* bar whose
//! representative stops being harmonic, and repairs the remaining ones so
//! they persist. Every prefix therefore carries a full harmonic cycle basis
//! made of the partial representatives of the open bars.
//!
//! Per boundary degree `q` the engine maintains, next to the reduced
//! boundary basis `R^q`, a coboundary basis `Cob^{q+1}` together with the
//! pseudo-cochain encodings `SC^q` (columns over the `R^q` basis) and the
//! boundaries `BoC^q = ∂(Cob^{q+1})`, kept with pairwise distinct pivots.
//! The triple is what makes the newborn-cycle search a single reduction
//! instead of a kernel computation, which is where the cubic total bound
//! comes from.

use num_traits::Zero;

use crate::barcode::{Bar, Barcode, DeathKind};
use crate::error::{HcbError, Result};
use crate::filtration::Filtration;
use crate::matrix::{ColumnMatrix, Reduction};
use crate::rational::Rational;
use crate::vector::SparseVector;

/// An unpaired birth index together with its partial representative.
#[derive(Clone, Debug)]
pub struct PartialRep {
    pub birth: usize,
    pub chain: SparseVector,
}

/// The linked column triple for boundary degree `q`, plus the boundary basis
/// the pseudo-cochains are encoded against. For every `j`,
/// `cob[j] = δ(sc[j])` and `boc[j] = ∂(cob[j])` in the current prefix.
#[derive(Clone, Debug, Default)]
struct Block {
    /// Reduced boundary basis of `B_q`, distinct pivots, columns fixed once
    /// appended. This is exactly the reduced matrix of ordinary persistence
    /// restricted to the nonzero columns.
    r: ColumnMatrix,
    /// Pseudo-cochain encodings; `sc[j][k]` is the value on `r` column `k`.
    sc: Vec<Vec<Rational>>,
    /// Coboundary basis of `B^{q+1}`.
    cob: Vec<SparseVector>,
    /// Boundaries of the coboundary basis, distinct pivots.
    boc: ColumnMatrix,
}

/// Full engine state between insertions.
#[derive(Clone, Debug, Default)]
pub struct EngineState {
    prefix: usize,
    /// Per degree `p`: open bars sorted by birth. Their chains form a
    /// harmonic cycle basis of the current prefix.
    harmonic: Vec<Vec<PartialRep>>,
    /// Per boundary degree `q = p − 1`.
    blocks: Vec<Block>,
}

impl EngineState {
    /// Number of insertions processed so far.
    pub fn prefix(&self) -> usize {
        self.prefix
    }

    /// Unpaired birth indices of degree `p`, oldest first.
    pub fn unpaired_births(&self, p: usize) -> Vec<usize> {
        self.harmonic
            .get(p)
            .map(|reps| reps.iter().map(|r| r.birth).collect())
            .unwrap_or_default()
    }

    /// The partial representative currently held for `birth` in degree `p`.
    pub fn partial_representative(&self, p: usize, birth: usize) -> Option<&SparseVector> {
        self.harmonic
            .get(p)?
            .iter()
            .find(|r| r.birth == birth)
            .map(|r| &r.chain)
    }

    /// Total harmonic dimension across all degrees.
    pub fn total_harmonic_dim(&self) -> usize {
        self.harmonic.iter().map(|reps| reps.len()).sum()
    }

    fn ensure_degree(&mut self, p: usize) {
        if self.harmonic.len() <= p {
            self.harmonic.resize_with(p + 1, Vec::new);
        }
        if p >= 1 && self.blocks.len() < p {
            self.blocks.resize_with(p, Block::default);
        }
    }
}

/// What one insertion did.
#[derive(Clone, Debug)]
pub enum StepEvent {
    /// `σ_i` raised the harmonic dimension of `degree`; bar `birth` opened.
    Positive {
        index: usize,
        degree: usize,
        birth: usize,
    },
    /// `σ_i` lowered the harmonic dimension of `degree`; the oldest failing
    /// bar was closed and the other failing representatives repaired.
    Negative {
        index: usize,
        degree: usize,
        /// Evaluations `z_j(∂σ_i)` of the representatives that fail to
        /// persist, keyed by birth and ordered oldest first.
        alphas: Vec<(usize, Rational)>,
        paired_birth: usize,
        /// Applied repairs `z_j := z_j − factor · z_{j*}`, keyed by birth.
        updates: Vec<(usize, Rational)>,
        bar: Bar,
    },
}

/// Stepwise driver over one filtration. `run` consumes the engine and
/// returns the barcode; `step` exposes single insertions so callers can
/// interleave invariant checks or trace pairings.
pub struct HarmonicEngine<'f> {
    filtration: &'f Filtration,
    state: EngineState,
    bars: Vec<Bar>,
}

impl<'f> HarmonicEngine<'f> {
    pub fn new(filtration: &'f Filtration) -> Self {
        HarmonicEngine {
            filtration,
            state: EngineState::default(),
            bars: Vec::new(),
        }
    }

    pub fn state(&self) -> &EngineState {
        &self.state
    }

    pub fn bars_so_far(&self) -> &[Bar] {
        &self.bars
    }

    pub fn is_done(&self) -> bool {
        self.state.prefix == self.filtration.len()
    }

    /// Classifies the pending insertion by reducing its boundary against the
    /// fixed boundary basis. A zero residual means positive.
    fn classify(&self, boundary: &SparseVector, p: usize) -> Reduction {
        if p == 0 {
            return Reduction {
                residual: SparseVector::zero(),
                coeffs: Vec::new(),
            };
        }
        self.state.blocks[p - 1].r.reduce(boundary)
    }

    /// Finds the new harmonic cycle born with positive `σ_i`: starting from
    /// the dual vector, cancels its boundary against `BoC` while mirroring
    /// every step on the coboundary basis, so the result is a cocycle with
    /// zero boundary.
    fn newborn_harmonic(&self, sigma: usize, p: usize, boundary: &SparseVector) -> Result<SparseVector> {
        let mut phi = SparseVector::unit(sigma);
        if p == 0 {
            return Ok(phi);
        }
        let block = &self.state.blocks[p - 1];
        let mut zeta = boundary.clone();
        while let Some((k, a1)) = zeta.pivot_entry() {
            let Some(j) = block.boc.col_with_pivot(k) else {
                return Err(HcbError::InvariantViolation(format!(
                    "positive insertion {sigma}: boundary of the dual not spanned by BoC"
                )));
            };
            let a2 = block.boc.column(j).get(k).expect("pivot entry");
            let factor = -(a1 / a2);
            zeta.axpy(&factor, block.boc.column(j));
            phi.axpy(&factor, &block.cob[j]);
        }
        Ok(phi)
    }

    /// After `σ_i` is inserted, each maintained pseudo-cochain `ψ_j` may
    /// evaluate nonzero on `∂σ_i`, so its coboundary gains that coefficient
    /// on the dual of `σ_i`. Applies the correction to `Cob`/`BoC`, restores
    /// distinct pivots, and for a negative insertion first grows the
    /// boundary basis by the reduction residual and then adjoins the new
    /// coboundary generator discovered by the insertion.
    fn update_block(
        &mut self,
        q: usize,
        sigma: usize,
        boundary: &SparseVector,
        mu: &[(usize, Rational)],
        residual: Option<SparseVector>,
    ) -> Result<()> {
        let block = &mut self.state.blocks[q];
        let negative = residual.is_some();

        // ψ_j(∂σ_i) from the reduction certificate: ∂σ_i = Σ μ_k R[k] (+ z),
        // and the extension of ψ_j to the grown basis sends z to zero.
        let coeffs: Vec<Rational> = block
            .sc
            .iter()
            .map(|col| {
                let mut acc = Rational::zero();
                for (k, m) in mu {
                    if !col[*k].is_zero() {
                        acc += m * &col[*k];
                    }
                }
                acc
            })
            .collect();

        if let Some(z) = residual {
            block.r.push(z);
            for col in &mut block.sc {
                col.push(Rational::zero());
            }
        }

        let mut touched: Vec<(usize, usize, Rational)> = Vec::new();
        for (j, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let old_pivot = block.boc.pivot_of(j);
            let mut cob_j = block.cob[j].clone();
            cob_j.axpy(&c, &SparseVector::unit(sigma));
            block.cob[j] = cob_j;
            let mut boc_j = block.boc.column(j).clone();
            boc_j.axpy(&c, boundary);
            if boc_j.is_zero() {
                return Err(HcbError::InvariantViolation(format!(
                    "BoC column {j} vanished while processing insertion {sigma}"
                )));
            }
            block.boc.set_column(j, boc_j);
            touched.push((j, old_pivot, c));
        }

        // All touched columns picked up the same multiple of ∂σ_i; clearing
        // them against the one with the smallest old pivot restores the old
        // pivots everywhere but that column.
        if touched.len() >= 2 {
            touched.sort_by_key(|&(_, old_pivot, _)| old_pivot);
            let (l1, _, ref a1) = touched[0];
            let l1 = l1;
            let a1 = a1.clone();
            for (lj, _, aj) in &touched[1..] {
                let factor = aj / &a1;
                Self::eliminate_column(block, *lj, l1, &factor)?;
            }
        }
        Self::restore_distinct_pivots(block, sigma)?;

        if negative {
            // The dual of σ_i is itself a coboundary now: it is δ of the
            // pseudo-cochain that is 1 on the residual column and 0 on the
            // old basis.
            let mut v = vec![Rational::zero(); block.r.len()];
            *v.last_mut().expect("residual was appended") = Rational::from_integer(1.into());
            block.sc.push(v);
            block.cob.push(SparseVector::unit(sigma));
            block.boc.push_unrestored(boundary.clone());
            Self::restore_distinct_pivots(block, sigma)?;
        }
        Ok(())
    }

    /// `col[to] -= factor · col[from]` applied in parallel to SC, Cob, BoC.
    fn eliminate_column(block: &mut Block, to: usize, from: usize, factor: &Rational) -> Result<()> {
        let neg = -factor.clone();
        let from_sc = block.sc[from].clone();
        let to_sc = &mut block.sc[to];
        for (t, f) in to_sc.iter_mut().zip(&from_sc) {
            if !f.is_zero() {
                *t -= factor * f;
            }
        }
        let from_cob = block.cob[from].clone();
        block.cob[to].axpy(&neg, &from_cob);
        let mut boc_to = block.boc.column(to).clone();
        boc_to.axpy(&neg, block.boc.column(from));
        if boc_to.is_zero() {
            return Err(HcbError::InvariantViolation(
                "BoC column vanished during pivot restoration".into(),
            ));
        }
        block.boc.set_column(to, boc_to);
        Ok(())
    }

    /// While two BoC columns share a pivot, cancels the later column's pivot
    /// entry against the earlier column, mirroring the operation on SC and
    /// Cob. Collisions are processed in increasing pivot order; the modified
    /// column's pivot strictly decreases, so the loop terminates.
    fn restore_distinct_pivots(block: &mut Block, sigma: usize) -> Result<()> {
        while let Some((j1, j2)) = block.boc.rebuild_pivots() {
            let k = block.boc.pivot_of(j2);
            let g1 = block.boc.column(j2).get(k).expect("pivot entry").clone();
            let g2 = block.boc.column(j1).get(k).cloned().ok_or_else(|| {
                HcbError::InvariantViolation(format!(
                    "pivot bookkeeping out of sync at insertion {sigma}"
                ))
            })?;
            let factor = g1 / g2;
            Self::eliminate_column(block, j2, j1, &factor)?;
        }
        Ok(())
    }

    /// Processes the pending insertion and reports what happened.
    pub fn step(&mut self) -> Result<StepEvent> {
        let i = self.state.prefix;
        assert!(i < self.filtration.len(), "filtration exhausted");
        let complex = self.filtration.complex();
        let p = complex.dim_of(i);
        self.state.ensure_degree(p);
        let boundary = complex.boundary_of_simplex(i)?;
        let Reduction { residual, coeffs } = self.classify(&boundary, p);

        let event = if residual.is_zero() {
            let phi = self.newborn_harmonic(i, p, &boundary)?;
            self.state.harmonic[p].push(PartialRep {
                birth: i + 1,
                chain: phi,
            });
            if p >= 1 {
                self.update_block(p - 1, i, &boundary, &coeffs, None)?;
            }
            StepEvent::Positive {
                index: i,
                degree: p,
                birth: i + 1,
            }
        } else {
            let q = p - 1;
            // Representatives are kept oldest-first, so the first failing
            // one is the pairing partner.
            let alphas: Vec<(usize, Rational)> = self.state.harmonic[q]
                .iter()
                .filter_map(|rep| {
                    let a = rep.chain.dot(&boundary);
                    (!a.is_zero()).then_some((rep.birth, a))
                })
                .collect();
            let Some((paired_birth, alpha_star)) = alphas.first().cloned() else {
                return Err(HcbError::InvariantViolation(format!(
                    "negative insertion {i}: no representative fails to persist"
                )));
            };
            let pos = self.state.harmonic[q]
                .iter()
                .position(|r| r.birth == paired_birth)
                .expect("paired birth present");
            let star = self.state.harmonic[q].remove(pos);
            let mut updates = Vec::new();
            for rep in &mut self.state.harmonic[q] {
                if let Some((_, a)) = alphas.iter().find(|(b, _)| *b == rep.birth) {
                    let factor = a / &alpha_star;
                    let neg = -factor.clone();
                    rep.chain.axpy(&neg, &star.chain);
                    updates.push((rep.birth, factor));
                }
            }
            let bar = Bar {
                degree: q,
                birth: paired_birth,
                death: i,
                representative: star.chain.pivot_normalized(),
                death_kind: DeathKind::Paired,
            };
            self.bars.push(bar.clone());
            self.update_block(q, i, &boundary, &coeffs, Some(residual))?;
            StepEvent::Negative {
                index: i,
                degree: p,
                alphas,
                paired_birth,
                updates,
                bar,
            }
        };
        self.state.prefix += 1;
        Ok(event)
    }

    /// Emits the still-open bars as `[b, m]` and returns the barcode.
    pub fn finish(mut self) -> Barcode {
        let m = self.filtration.len();
        for (p, reps) in self.state.harmonic.iter().enumerate() {
            for rep in reps {
                self.bars.push(Bar {
                    degree: p,
                    birth: rep.birth,
                    death: m,
                    representative: rep.chain.pivot_normalized(),
                    death_kind: DeathKind::EndOfFiltration,
                });
            }
        }
        Barcode::new(m, self.bars)
    }

    pub fn run(mut self) -> Result<Barcode> {
        while !self.is_done() {
            self.step()?;
        }
        Ok(self.finish())
    }
}

/// Computes the harmonic chain barcode of `f` with one representative per bar.
pub fn compute_harmonic_barcode(f: &Filtration) -> Result<Barcode> {
    HarmonicEngine::new(f).run()
}

/// Exhaustive re-validation of the engine state against its definition.
/// Intended for small fuzz instances; cost grows like the oracle's.
pub fn check_state_invariants(engine: &HarmonicEngine<'_>) -> Result<()> {
    let state = engine.state();
    let complex = engine.filtration.complex();
    let prefix = state.prefix;
    let fail = |msg: String| Err(HcbError::InvariantViolation(msg));

    for (p, reps) in state.harmonic.iter().enumerate() {
        let mut last_birth = 0;
        for rep in reps {
            if rep.birth <= last_birth {
                return fail(format!("degree {p}: births out of order"));
            }
            last_birth = rep.birth;
            if rep.chain.is_zero() {
                return fail(format!("degree {p}: zero representative"));
            }
            if rep.chain.pivot().unwrap() >= prefix {
                return fail(format!("degree {p}: representative uses future simplices"));
            }
            if !complex.apply_boundary(&rep.chain, p)?.is_zero() {
                return fail(format!("degree {p} birth {}: not a cycle", rep.birth));
            }
            if !complex.apply_coboundary(&rep.chain, p, prefix).is_zero() {
                return fail(format!("degree {p} birth {}: not a cocycle", rep.birth));
            }
        }
    }

    for (q, block) in state.blocks.iter().enumerate() {
        if block.sc.len() != block.cob.len() || block.cob.len() != block.boc.len() {
            return fail(format!("block {q}: column triples out of step"));
        }
        for (j, col) in block.sc.iter().enumerate() {
            if col.len() != block.r.len() {
                return fail(format!("block {q} column {j}: SC row count mismatch"));
            }
        }
        let mut pivots: Vec<usize> = (0..block.boc.len()).map(|j| block.boc.pivot_of(j)).collect();
        pivots.sort_unstable();
        pivots.dedup();
        if pivots.len() != block.boc.len() {
            return fail(format!("block {q}: BoC pivots collide"));
        }
        for j in 0..block.cob.len() {
            // boc[j] = ∂(cob[j])
            let expect = complex.apply_boundary(&block.cob[j], q + 1)?;
            if &expect != block.boc.column(j) {
                return fail(format!("block {q} column {j}: BoC is not the boundary of Cob"));
            }
            // cob[j] = δ(ψ_j): evaluate both sides on every (q+1)-simplex.
            for &tau in complex.ids_in_prefix(q + 1, prefix) {
                let red = block.r.reduce(&complex.boundary_of_simplex(tau)?);
                if !red.residual.is_zero() {
                    return fail(format!(
                        "block {q}: boundary of simplex {tau} escapes the R basis"
                    ));
                }
                let mut val = Rational::zero();
                for (k, c) in &red.coeffs {
                    val += c * &block.sc[j][*k];
                }
                if val != block.cob[j].coeff(tau) {
                    return fail(format!(
                        "block {q} column {j}: Cob disagrees with δ(SC) on simplex {tau}"
                    ));
                }
            }
        }
    }
    Ok(())
}
