use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{HcbError, Result};
use crate::filtration::TimestampMap;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::vector::SparseVector;

/// How a bar ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeathKind {
    /// A negative insertion paired this birth; the representative stops
    /// being harmonic in the very next prefix.
    Paired,
    /// The bar was still alive when the filtration ran out.
    EndOfFiltration,
}

/// A bar of the harmonic chain barcode: a closed integer interval `[birth,
/// death]` with the single harmonic cycle that is alive over exactly that
/// interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bar {
    pub degree: usize,
    pub birth: usize,
    pub death: usize,
    pub representative: SparseVector,
    pub death_kind: DeathKind,
}

/// All bars of one filtration, sorted by (degree, birth, death).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Barcode {
    pub m: usize,
    pub bars: Vec<Bar>,
}

impl Barcode {
    pub fn new(m: usize, mut bars: Vec<Bar>) -> Self {
        bars.sort_by_key(|b| (b.degree, b.birth, b.death));
        Barcode { m, bars }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.bars.iter().map(|b| b.degree).max()
    }

    pub fn bars_in_degree(&self, p: usize) -> impl Iterator<Item = &Bar> {
        self.bars.iter().filter(move |b| b.degree == p)
    }

    /// Bars of degree `p` containing prefix index `i`.
    pub fn bars_containing(&self, p: usize, i: usize) -> impl Iterator<Item = &Bar> {
        self.bars_in_degree(p)
            .filter(move |b| b.birth <= i && i <= b.death)
    }

    /// The (birth, death) index pairs of degree `p` as a sorted multiset.
    pub fn endpoints_in_degree(&self, p: usize) -> (Vec<usize>, Vec<usize>) {
        let mut births: Vec<usize> = self.bars_in_degree(p).map(|b| b.birth).collect();
        let mut deaths: Vec<usize> = self
            .bars_in_degree(p)
            .filter(|b| b.death_kind == DeathKind::Paired)
            .map(|b| b.death)
            .collect();
        births.sort_unstable();
        deaths.sort_unstable();
        (births, deaths)
    }
}

/// A bar of the ordinary persistence barcode, drawn with the same closed
/// integer interval convention as the harmonic barcode so endpoint multisets
/// are directly comparable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryBar {
    pub degree: usize,
    pub birth: usize,
    pub death: usize,
    pub death_kind: DeathKind,
}

/// An interval of the closed-open (real timestamp) barcode. `death = None`
/// encodes +∞; empty intervals are dropped at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    pub degree: usize,
    pub birth: Rational,
    pub death: Option<Rational>,
}

/// Maps the integer-index barcode to the closed-open barcode over real
/// timestamps: `[b, d] ↦ [τ(b), τ(d+1))`, with unpaired bars ending at +∞.
/// Intervals with `τ(b) = τ(d+1)` vanish in the limit of the simplex-wise
/// expansion and are dropped.
pub fn to_closed_open(barcode: &Barcode, ts: &TimestampMap) -> Vec<RealInterval> {
    let mut out = Vec::new();
    for bar in &barcode.bars {
        let birth = ts.at(bar.birth).expect("birth index within range").clone();
        let death = ts.at(bar.death + 1).cloned();
        if let Some(d) = &death {
            if *d == birth {
                continue;
            }
        }
        out.push(RealInterval {
            degree: bar.degree,
            birth,
            death,
        });
    }
    out
}

/// JSON form of one bar. Rationals travel as `p/q` strings to stay exact;
/// an infinite death is `null` with the death index retained at `m`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BarRecord {
    pub degree: usize,
    pub birth_index: usize,
    pub death_index: usize,
    pub birth_time: String,
    pub death_time: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<BTreeMap<usize, String>>,
}

/// JSON form of a whole barcode as emitted by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BarcodeFile {
    pub m: usize,
    pub bars: Vec<BarRecord>,
}

impl BarRecord {
    pub fn from_bar(bar: &Bar, ts: &TimestampMap, with_representative: bool) -> Self {
        let birth_time = format_rational(ts.at(bar.birth).expect("birth in range"));
        let death_time = ts.at(bar.death + 1).map(format_rational);
        let representative = with_representative.then(|| {
            bar.representative
                .iter()
                .map(|(i, c)| (i, format_rational(c)))
                .collect()
        });
        BarRecord {
            degree: bar.degree,
            birth_index: bar.birth,
            death_index: bar.death,
            birth_time,
            death_time,
            representative,
        }
    }

    /// Reconstructs the bar; the representative is empty when absent.
    pub fn to_bar(&self, m: usize) -> Result<Bar> {
        let mut entries = Vec::new();
        if let Some(rep) = &self.representative {
            for (i, c) in rep {
                let c = parse_rational(c).map_err(HcbError::Invalid)?;
                entries.push((*i, c));
            }
        }
        let death_kind = if self.death_index >= m {
            DeathKind::EndOfFiltration
        } else {
            DeathKind::Paired
        };
        Ok(Bar {
            degree: self.degree,
            birth: self.birth_index,
            death: self.death_index,
            representative: SparseVector::from_entries(entries),
            death_kind,
        })
    }
}

impl BarcodeFile {
    pub fn from_barcode(b: &Barcode, ts: &TimestampMap, with_representatives: bool) -> Self {
        BarcodeFile {
            m: b.m,
            bars: b
                .bars
                .iter()
                .map(|bar| BarRecord::from_bar(bar, ts, with_representatives))
                .collect(),
        }
    }

    pub fn to_barcode(&self) -> Result<Barcode> {
        let bars: Result<Vec<Bar>> = self.bars.iter().map(|r| r.to_bar(self.m)).collect();
        Ok(Barcode::new(self.m, bars?))
    }

    /// Per-degree diagrams of the closed-open intervals carried by the file.
    /// Zero-length intervals are dropped, mirroring `to_closed_open`.
    pub fn real_intervals(&self) -> Result<Vec<RealInterval>> {
        let mut out = Vec::new();
        for bar in &self.bars {
            let birth = parse_rational(&bar.birth_time).map_err(HcbError::Invalid)?;
            let death = match &bar.death_time {
                None => None,
                Some(t) => Some(parse_rational(t).map_err(HcbError::Invalid)?),
            };
            if death.as_ref() == Some(&birth) {
                continue;
            }
            out.push(RealInterval {
                degree: bar.degree,
                birth,
                death,
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::Filtration;
    use crate::rational::rat_int;

    fn sample_barcode() -> (Barcode, TimestampMap) {
        let f = Filtration::parse("0 0\n0 1\n0 2\n1 0 1\n1 1 2\n1 0 2\n2 0 1 2\n").unwrap();
        let bars = vec![
            Bar {
                degree: 0,
                birth: 1,
                death: 3,
                representative: SparseVector::unit(0),
                death_kind: DeathKind::Paired,
            },
            Bar {
                degree: 0,
                birth: 3,
                death: 7,
                representative: SparseVector::from_entries([
                    (0, rat_int(1)),
                    (1, rat_int(1)),
                    (2, rat_int(1)),
                ]),
                death_kind: DeathKind::EndOfFiltration,
            },
            Bar {
                degree: 1,
                birth: 6,
                death: 6,
                representative: SparseVector::from_entries([
                    (3, rat_int(-1)),
                    (4, rat_int(-1)),
                    (5, rat_int(1)),
                ]),
                death_kind: DeathKind::Paired,
            },
        ];
        (Barcode::new(7, bars), f.timestamps())
    }

    #[test]
    fn closed_open_maps_indices_to_timestamps() {
        let (bc, ts) = sample_barcode();
        let intervals = to_closed_open(&bc, &ts);
        // [1,3] → [τ(1), τ(4)) = [0,1); [3,7] → [0,∞); [6,6] → [τ(6), τ(7)) = [1,2).
        assert_eq!(intervals.len(), 3);
        assert_eq!(intervals[0].birth, rat_int(0));
        assert_eq!(intervals[0].death, Some(rat_int(1)));
        assert_eq!(intervals[1].death, None);
        assert_eq!(intervals[2].birth, rat_int(1));
        assert_eq!(intervals[2].death, Some(rat_int(2)));
    }

    #[test]
    fn closed_open_drops_zero_length_intervals() {
        // Lower-star style timestamps: a,b,ab,c,ac,bc,abc at 0,1,1,2,2,2,2.
        let f = Filtration::parse("0 0\n1 1\n1 0 1\n2 2\n2 0 2\n2 1 2\n2 0 1 2\n").unwrap();
        let ts = f.timestamps();
        let bars = vec![
            // τ(6) = τ(7) = 2: vanishes in the limit.
            Bar {
                degree: 1,
                birth: 6,
                death: 6,
                representative: SparseVector::unit(5),
                death_kind: DeathKind::Paired,
            },
            // τ(2) = 1, τ(4) = 2: survives as [1,2).
            Bar {
                degree: 0,
                birth: 2,
                death: 3,
                representative: SparseVector::unit(1),
                death_kind: DeathKind::Paired,
            },
        ];
        let intervals = to_closed_open(&Barcode::new(7, bars), &ts);
        assert_eq!(intervals.len(), 1);
        assert_eq!(intervals[0].degree, 0);
        assert_eq!(intervals[0].birth, rat_int(1));
        assert_eq!(intervals[0].death, Some(rat_int(2)));
    }

    #[test]
    fn json_round_trip_preserves_barcode() {
        let (bc, ts) = sample_barcode();
        let file = BarcodeFile::from_barcode(&bc, &ts, true);
        let text = serde_json::to_string(&file).unwrap();
        let parsed: BarcodeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, file);
        assert_eq!(parsed.to_barcode().unwrap(), bc);
    }

    #[test]
    fn infinite_death_serializes_as_null() {
        let (bc, ts) = sample_barcode();
        let file = BarcodeFile::from_barcode(&bc, &ts, false);
        let unpaired = file.bars.iter().find(|b| b.death_index == 7).unwrap();
        assert_eq!(unpaired.death_time, None);
        let text = serde_json::to_string(unpaired).unwrap();
        assert!(text.contains("\"death_time\":null"));
    }

    #[test]
    fn endpoint_multisets() {
        let (bc, _) = sample_barcode();
        let (births, deaths) = bc.endpoints_in_degree(0);
        assert_eq!(births, vec![1, 3]);
        assert_eq!(deaths, vec![3]);
    }
}
