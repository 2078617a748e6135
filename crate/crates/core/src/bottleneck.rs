//! Exact bottleneck distance between persistence diagrams.
//!
//! The optimum over bijections (diagonal matches allowed) is attained at one
//! of finitely many candidate values: a pairwise ℓ∞ distance or a point's
//! half-persistence. Since every coordinate is rational, binary searching
//! the sorted candidates with a bipartite matching feasibility test gives
//! the distance exactly.

use num_traits::{Signed, Zero};

use crate::barcode::RealInterval;
use crate::rational::Rational;

/// A persistence diagram: finite points plus births of essential classes
/// (death = +∞). The diagonal is implicit.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    pub points: Vec<(Rational, Rational)>,
    pub essential_births: Vec<Rational>,
}

impl Diagram {
    /// Collects the degree-`p` intervals of a closed-open barcode.
    pub fn from_intervals(intervals: &[RealInterval], degree: usize) -> Self {
        let mut points = Vec::new();
        let mut essential_births = Vec::new();
        for it in intervals.iter().filter(|it| it.degree == degree) {
            match &it.death {
                Some(d) => points.push((it.birth.clone(), d.clone())),
                None => essential_births.push(it.birth.clone()),
            }
        }
        Diagram {
            points,
            essential_births,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.essential_births.is_empty()
    }
}

fn linf(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    let db = (&a.0 - &b.0).abs();
    let dd = (&a.1 - &b.1).abs();
    if db > dd {
        db
    } else {
        dd
    }
}

fn half_persistence(p: &(Rational, Rational)) -> Rational {
    (&p.1 - &p.0).abs() / Rational::from_integer(2.into())
}

/// Maximum bipartite matching by augmenting paths. `adj[i]` lists the right
/// vertices reachable from left vertex `i`.
fn max_matching(adj: &[Vec<usize>], right_count: usize) -> usize {
    let mut match_right: Vec<Option<usize>> = vec![None; right_count];
    let mut size = 0;
    for left in 0..adj.len() {
        let mut seen = vec![false; right_count];
        if augment(left, adj, &mut match_right, &mut seen) {
            size += 1;
        }
    }
    size
}

fn augment(
    left: usize,
    adj: &[Vec<usize>],
    match_right: &mut Vec<Option<usize>>,
    seen: &mut Vec<bool>,
) -> bool {
    for &r in &adj[left] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if match_right[r].is_none() || augment(match_right[r].unwrap(), adj, match_right, seen) {
            match_right[r] = Some(left);
            return true;
        }
    }
    false
}

/// Can the finite parts of `a` and `b` be matched within `eps`?
///
/// Standard reduction: the left side is `a`'s points plus one diagonal slot
/// per point of `b`, the right side is `b`'s points plus one diagonal slot
/// per point of `a`. Diagonal slots pair with each other for free.
fn feasible(a: &[(Rational, Rational)], b: &[(Rational, Rational)], eps: &Rational) -> bool {
    let n = a.len();
    let k = b.len();
    let total = n + k;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    // Left 0..n are a's points; left n..n+k are diagonal slots for b.
    // Right 0..k are b's points; right k..k+n are diagonal slots for a.
    for (i, pa) in a.iter().enumerate() {
        for (j, pb) in b.iter().enumerate() {
            if linf(pa, pb) <= *eps {
                adj[i].push(j);
            }
        }
        if half_persistence(pa) <= *eps {
            adj[i].push(k + i);
        }
    }
    for (j, pb) in b.iter().enumerate() {
        if half_persistence(pb) <= *eps {
            adj[n + j].push(j);
        }
        for i in 0..n {
            adj[n + j].push(k + i);
        }
    }
    max_matching(&adj, total) == total
}

/// Exact bottleneck distance. `None` encodes +∞, which happens exactly when
/// the two diagrams disagree on the number of essential (infinite) classes.
pub fn bottleneck_distance(a: &Diagram, b: &Diagram) -> Option<Rational> {
    if a.essential_births.len() != b.essential_births.len() {
        return None;
    }
    // Essential classes only match each other; on a line, the sorted
    // matching minimizes the largest displacement.
    let mut ea = a.essential_births.clone();
    let mut eb = b.essential_births.clone();
    ea.sort();
    eb.sort();
    let mut essential = Rational::zero();
    for (x, y) in ea.iter().zip(&eb) {
        let d = (x - y).abs();
        if d > essential {
            essential = d;
        }
    }

    let mut candidates: Vec<Rational> = vec![Rational::zero()];
    for pa in &a.points {
        candidates.push(half_persistence(pa));
        for pb in &b.points {
            candidates.push(linf(pa, pb));
        }
    }
    for pb in &b.points {
        candidates.push(half_persistence(pb));
    }
    candidates.sort();
    candidates.dedup();

    // Smallest feasible candidate by binary search; feasibility is monotone.
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    debug_assert!(feasible(&a.points, &b.points, &candidates[hi]));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&a.points, &b.points, &candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let finite = candidates[lo].clone();
    Some(if essential > finite { essential } else { finite })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn diagram(points: &[(i64, i64)], essentials: &[i64]) -> Diagram {
        Diagram {
            points: points
                .iter()
                .map(|&(b, d)| (rat_int(b), rat_int(d)))
                .collect(),
            essential_births: essentials.iter().map(|&b| rat_int(b)).collect(),
        }
    }

    #[test]
    fn identical_diagrams_have_distance_zero() {
        let d = diagram(&[(0, 2), (1, 5)], &[3]);
        assert_eq!(bottleneck_distance(&d, &d), Some(rat_int(0)));
    }

    #[test]
    fn single_point_to_empty_matches_diagonal() {
        let d = diagram(&[(0, 2)], &[]);
        let e = diagram(&[], &[]);
        assert_eq!(bottleneck_distance(&d, &e), Some(rat_int(1)));
        assert_eq!(bottleneck_distance(&e, &d), Some(rat_int(1)));
    }

    #[test]
    fn forced_bijection_shift() {
        let d = diagram(&[(0, 4)], &[]);
        let e = diagram(&[(1, 5)], &[]);
        assert_eq!(bottleneck_distance(&d, &e), Some(rat_int(1)));
    }

    #[test]
    fn diagonal_beats_bad_match() {
        // Matching the two points directly costs 10; sending both to the
        // diagonal costs 1.
        let d = diagram(&[(0, 2)], &[]);
        let e = diagram(&[(10, 12)], &[]);
        assert_eq!(bottleneck_distance(&d, &e), Some(rat_int(1)));
    }

    #[test]
    fn essential_mismatch_is_infinite() {
        let d = diagram(&[], &[0]);
        let e = diagram(&[], &[]);
        assert_eq!(bottleneck_distance(&d, &e), None);
    }

    #[test]
    fn essential_births_match_sorted() {
        let d = diagram(&[], &[0, 10]);
        let e = diagram(&[], &[1, 9]);
        assert_eq!(bottleneck_distance(&d, &e), Some(rat_int(1)));
    }

    #[test]
    fn rational_coordinates_stay_exact() {
        let d = Diagram {
            points: vec![(rat(1, 3), rat(2, 3))],
            essential_births: vec![],
        };
        let e = Diagram {
            points: vec![],
            essential_births: vec![],
        };
        assert_eq!(bottleneck_distance(&d, &e), Some(rat(1, 6)));
    }

    #[test]
    fn symmetry_and_triangle_inequality_spot_check() {
        let ds = [
            diagram(&[(0, 3), (2, 8)], &[1]),
            diagram(&[(1, 4)], &[0]),
            diagram(&[(0, 2), (3, 9), (4, 5)], &[2]),
        ];
        for x in &ds {
            for y in &ds {
                let dxy = bottleneck_distance(x, y).unwrap();
                assert_eq!(Some(dxy.clone()), bottleneck_distance(y, x));
                for z in &ds {
                    let dxz = bottleneck_distance(x, z).unwrap();
                    let dzy = bottleneck_distance(z, y).unwrap();
                    assert!(dxy <= dxz + dzy);
                }
            }
        }
    }
}
