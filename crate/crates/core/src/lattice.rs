//! The crystal structure on finitely supported integer vectors indexed by positions of
//! the sequence, with Kashiwara operators and a breadth-first image enumerator.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{AdaptedSequence, DoubleIndex};

/// A finitely supported vector `(a_j)_{j >= 1}`. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeElement {
    entries: BTreeMap<usize, i64>,
}

impl LatticeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(j: usize) -> Self {
        let mut a = Self::zero();
        a.add(j, 1);
        a
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, i64)>>(entries: I) -> Self {
        let mut a = Self::zero();
        for (j, v) in entries {
            a.add(j, v);
        }
        a
    }

    pub fn get(&self, j: usize) -> i64 {
        self.entries.get(&j).copied().unwrap_or(0)
    }

    pub fn add(&mut self, j: usize, delta: i64) {
        assert!(j >= 1, "positions start at 1");
        let v = self.entries.entry(j).or_insert(0);
        *v += delta;
        if *v == 0 {
            self.entries.remove(&j);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.entries.iter().map(|(&j, &v)| (j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_support(&self) -> usize {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&v| v > 0)
    }

    /// The same entries keyed by double index.
    pub fn to_pairs(&self, seq: &AdaptedSequence) -> Vec<(DoubleIndex, i64)> {
        self.entries().map(|(j, v)| (seq.index_to_pair(j), v)).collect()
    }
}

impl Serialize for LatticeElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(usize, i64)> = self.entries().collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticeElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(usize, i64)> = Vec::deserialize(deserializer)?;
        if v.iter().any(|&(j, _)| j == 0) {
            return Err(serde::de::Error::custom("positions start at 1"));
        }
        Ok(Self::from_entries(v))
    }
}

/// `wt(a) = -sum_j a_j alpha_{i_j}`, stored as the coefficient of `-alpha_i` for each color.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVector {
    pub coeffs: BTreeMap<usize, i64>,
}

impl WeightVector {
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    /// `<h_i, wt>`.
    pub fn pairing(&self, seq: &AdaptedSequence, i: usize) -> i64 {
        -self.coeffs.iter().map(|(&j, &c)| seq.a(i, j) * c).sum::<i64>()
    }
}

/// `sigma_k` for every position `1..=bound`, computed in one backward sweep.
fn sigma_all(seq: &AdaptedSequence, a: &LatticeElement, bound: usize) -> Vec<i64> {
    let n = seq.n();
    let top = bound.max(a.max_support());
    // tail[c] = sum over j > k of a(c, i_j) * a_j
    let mut tail = vec![0i64; n + 1];
    let mut out = vec![0i64; top + 1];
    for k in (1..=top).rev() {
        let c = seq.color(k);
        let ak = a.get(k);
        out[k] = ak + tail[c];
        if ak != 0 {
            for (i, t) in tail.iter_mut().enumerate().skip(1) {
                *t += seq.a(i, c) * ak;
            }
        }
    }
    out.truncate(bound + 1);
    out
}

pub fn sigma(seq: &AdaptedSequence, a: &LatticeElement, k: usize) -> i64 {
    let ik = seq.color(k);
    a.get(k) + a.entries().filter(|&(j, _)| j > k).map(|(j, v)| seq.a(ik, seq.color(j)) * v).sum::<i64>()
}

fn scan_bound(seq: &AdaptedSequence, a: &LatticeElement) -> usize {
    a.max_support() + seq.period() + 1
}

pub fn epsilon(seq: &AdaptedSequence, a: &LatticeElement, i: usize) -> i64 {
    let bound = scan_bound(seq, a);
    let sig = sigma_all(seq, a, bound);
    seq.positions_of(i, bound).map(|k| sig[k]).max().unwrap_or(0).max(0)
}

pub fn weight(seq: &AdaptedSequence, a: &LatticeElement) -> WeightVector {
    let mut coeffs = BTreeMap::new();
    for (j, v) in a.entries() {
        *coeffs.entry(seq.color(j)).or_insert(0) += v;
    }
    coeffs.retain(|_, v| *v != 0);
    WeightVector { coeffs }
}

pub fn phi(seq: &AdaptedSequence, a: &LatticeElement, i: usize) -> i64 {
    weight(seq, a).pairing(seq, i) + epsilon(seq, a, i)
}

pub fn ftilde(seq: &AdaptedSequence, a: &LatticeElement, i: usize) -> LatticeElement {
    let bound = scan_bound(seq, a);
    let sig = sigma_all(seq, a, bound);
    let eps = seq.positions_of(i, bound).map(|k| sig[k]).max().unwrap_or(0).max(0);
    let k = seq
        .positions_of(i, bound)
        .find(|&k| sig[k] == eps)
        .expect("an i-colored position past the support has sigma = 0");
    let mut b = a.clone();
    b.add(k, 1);
    b
}

pub fn etilde(seq: &AdaptedSequence, a: &LatticeElement, i: usize) -> Option<LatticeElement> {
    let bound = scan_bound(seq, a);
    let sig = sigma_all(seq, a, bound);
    let eps = seq.positions_of(i, bound).map(|k| sig[k]).max().unwrap_or(0);
    if eps <= 0 {
        return None;
    }
    let k = seq.positions_of(i, bound).filter(|&k| sig[k] == eps).last()?;
    let mut b = a.clone();
    b.add(k, -1);
    Some(b)
}

/// A Kashiwara operator, for applying words of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Op {
    F(usize),
    E(usize),
}

impl std::str::FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(p, _)| p));
        let i: usize = rest.parse().map_err(|_| Error::Domain(format!("malformed operator '{s}'")))?;
        match head {
            "f" | "F" => Ok(Op::F(i)),
            "e" | "E" => Ok(Op::E(i)),
            _ => Err(Error::Domain(format!("malformed operator '{s}'"))),
        }
    }
}

/// Applies operators left to right; `None` once some `e_i` annihilates.
pub fn apply_ops(seq: &AdaptedSequence, start: &LatticeElement, ops: &[Op]) -> Result<Option<LatticeElement>> {
    let mut a = start.clone();
    for op in ops {
        let i = match *op {
            Op::F(i) | Op::E(i) => i,
        };
        if i == 0 || i > seq.n() {
            return Err(Error::Domain(format!("operator index {i} is outside 1..={}", seq.n())));
        }
        a = match *op {
            Op::F(i) => ftilde(seq, &a, i),
            Op::E(i) => match etilde(seq, &a, i) {
                Some(b) => b,
                None => return Ok(None),
            },
        };
    }
    Ok(Some(a))
}

pub const DEFAULT_IMAGE_CAP: usize = 2_000_000;

/// All `f_{i_1} ... f_{i_m} 0` with `m <= max_word_length`.
pub fn enumerate_image(seq: &AdaptedSequence, max_word_length: usize) -> Result<BTreeSet<LatticeElement>> {
    enumerate_image_capped(seq, max_word_length, DEFAULT_IMAGE_CAP)
}

pub fn enumerate_image_capped(
    seq: &AdaptedSequence,
    max_word_length: usize,
    cap: usize,
) -> Result<BTreeSet<LatticeElement>> {
    let mut seen = BTreeSet::new();
    seen.insert(LatticeElement::zero());
    let mut frontier = vec![LatticeElement::zero()];
    for _ in 0..max_word_length {
        let mut next = Vec::new();
        for a in &frontier {
            for i in 1..=seq.n() {
                let b = ftilde(seq, a, i);
                if seen.insert(b.clone()) {
                    next.push(b);
                }
            }
            if seen.len() > cap {
                return Err(Error::ResourceLimit { cap, reached: seen.len() });
            }
        }
        frontier = next;
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::Family;

    fn a1n2() -> AdaptedSequence {
        AdaptedSequence::build(Family::A1, 2, vec![1, 2]).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let seq = AdaptedSequence::build(Family::A1, 3, vec![2, 1, 3]).unwrap();
        assert_eq!(sigma(&seq, &LatticeElement::unit(1), 1), 1);
        assert_eq!(sigma(&seq, &LatticeElement::unit(3), 1), -1);
        assert_eq!(sigma(&seq, &LatticeElement::zero(), 4), 0);
    }

    #[test]
    fn sweep_matches_direct_sigma() {
        let seq = AdaptedSequence::build(Family::C1, 3, vec![2, 1, 3]).unwrap();
        let a = LatticeElement::from_entries([(1, 2), (2, 1), (4, 3), (7, 1), (8, -1)]);
        let all = sigma_all(&seq, &a, 12);
        for (k, value) in all.iter().enumerate().skip(1) {
            assert_eq!(*value, sigma(&seq, &a, k), "k = {k}");
        }
    }

    #[test]
    fn epsilon_and_operators_a1n2() {
        let seq = a1n2();
        let e2 = LatticeElement::unit(2);
        assert_eq!(epsilon(&seq, &e2, 1), 0);
        assert_eq!(etilde(&seq, &e2, 1), None);
        assert_eq!(phi(&seq, &LatticeElement::zero(), 1), 0);
        let f1 = ftilde(&seq, &LatticeElement::zero(), 1);
        assert_eq!(ftilde(&seq, &f1, 1), LatticeElement::from_entries([(1, 2)]));
        let f2 = ftilde(&seq, &LatticeElement::zero(), 2);
        assert_eq!(ftilde(&seq, &f2, 1), LatticeElement::from_entries([(2, 1), (3, 1)]));
        assert_eq!(etilde(&seq, &f1, 1), Some(LatticeElement::zero()));
    }

    #[test]
    fn image_small_depths() {
        let seq = AdaptedSequence::build(Family::A1, 3, vec![2, 1, 3]).unwrap();
        assert_eq!(enumerate_image(&seq, 0).unwrap().len(), 1);
        let one = enumerate_image(&seq, 1).unwrap();
        assert_eq!(one.len(), 4);
        assert!(one.contains(&LatticeElement::unit(2)));
        let two = enumerate_image(&a1n2(), 2).unwrap();
        let expected: BTreeSet<LatticeElement> = [
            vec![],
            vec![(1, 1)],
            vec![(2, 1)],
            vec![(1, 2)],
            vec![(1, 1), (2, 1)],
            vec![(2, 1), (3, 1)],
            vec![(2, 2)],
        ]
        .into_iter()
        .map(LatticeElement::from_entries)
        .collect();
        assert_eq!(two, expected);
        assert!(matches!(enumerate_image_capped(&seq, 4, 10), Err(Error::ResourceLimit { cap: 10, .. })));
    }

    #[test]
    fn op_parsing() {
        assert_eq!("f1".parse::<Op>().unwrap(), Op::F(1));
        assert_eq!("e12".parse::<Op>().unwrap(), Op::E(12));
        assert!("g1".parse::<Op>().is_err());
        assert!("f".parse::<Op>().is_err());
    }

    #[test]
    fn json_shape() {
        let a = LatticeElement::from_entries([(3, 1), (1, 2)]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[[1,2],[3,1]]");
        let back: LatticeElement = serde_json::from_str("[[1,2],[3,1]]").unwrap();
        assert_eq!(back, a);
    }
}
