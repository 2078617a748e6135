use std::fmt;

use num_traits::Zero;

use crate::rational::{format_rational, Rational};

/// Sparse vector over ℚ indexed by global simplex ids.
///
/// Chains and cochains are identified, so one vector type carries cycles,
/// cocycles, coboundaries and dual basis elements alike. Entries are kept
/// sorted by index and never zero. The pivot is the entry with the largest
/// index, i.e. the most recently inserted simplex in its support.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct SparseVector {
    entries: Vec<(usize, Rational)>,
}

impl SparseVector {
    pub fn zero() -> Self {
        SparseVector::default()
    }

    /// The dual basis vector of the simplex with global id `index`.
    pub fn unit(index: usize) -> Self {
        SparseVector {
            entries: vec![(index, Rational::from_integer(1.into()))],
        }
    }

    /// Builds from arbitrary (index, coefficient) pairs, merging repeats and
    /// dropping zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut e: Vec<(usize, Rational)> = entries.into_iter().collect();
        e.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(e.len());
        for (i, c) in e {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += c,
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        SparseVector { entries: merged }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, index: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Coefficient at `index`, zero when absent.
    pub fn coeff(&self, index: usize) -> Rational {
        self.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    /// Index of the largest-index nonzero entry.
    pub fn pivot(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn pivot_entry(&self) -> Option<(usize, &Rational)> {
        self.entries.last().map(|(i, c)| (*i, c))
    }

    /// `self += c * other`, by sorted merge.
    pub fn axpy(&mut self, c: &Rational, other: &SparseVector) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let mut x = a.next();
        let mut y = b.next();
        loop {
            match (x, y) {
                (Some((i, ci)), Some((j, cj))) => {
                    if i < j {
                        out.push((*i, ci.clone()));
                        x = a.next();
                    } else if j < i {
                        out.push((*j, cj * c));
                        y = b.next();
                    } else {
                        let v = ci + cj * c;
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        x = a.next();
                        y = b.next();
                    }
                }
                (Some((i, ci)), None) => {
                    out.push((*i, ci.clone()));
                    x = a.next();
                }
                (None, Some((j, cj))) => {
                    out.push((*j, cj * c));
                    y = b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v *= c;
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseVector {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    /// Euclidean inner product under the simplex-indexed orthonormal basis.
    pub fn dot(&self, other: &SparseVector) -> Rational {
        let mut acc = Rational::zero();
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (i, c) in short.iter() {
            if let Some(d) = long.get(i) {
                acc += c * d;
            }
        }
        acc
    }

    pub fn norm_sq(&self) -> Rational {
        let mut acc = Rational::zero();
        for (_, c) in self.iter() {
            acc += c * c;
        }
        acc
    }

    /// Copy rescaled so the pivot coefficient equals one.
    pub fn pivot_normalized(&self) -> SparseVector {
        match self.pivot_entry() {
            None => SparseVector::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scaled(&inv)
            }
        }
    }

    /// Copy rescaled so the smallest-index coefficient equals one.
    pub fn leading_normalized(&self) -> SparseVector {
        match self.entries.first() {
            None => SparseVector::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scaled(&inv)
            }
        }
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·[{}]", format_rational(c), i)?;
        }
        Ok(())
    }
}
