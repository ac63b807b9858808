//! Sparse integer linear forms in double-index coordinates, the quanta `beta`, the
//! operator `S'` and its bounded closure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeElement;
use crate::root_data::{AdaptedSequence, DoubleIndex};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    terms: BTreeMap<DoubleIndex, i64>,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The coordinate function `x_{s,l}`.
    pub fn x(s: usize, l: usize) -> Self {
        Self::term(DoubleIndex::new(s, l), 1)
    }

    pub fn term(d: DoubleIndex, c: i64) -> Self {
        let mut f = Self::zero();
        f.add_term(d, c);
        f
    }

    pub fn from_terms<I: IntoIterator<Item = (DoubleIndex, i64)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for (d, c) in terms {
            f.add_term(d, c);
        }
        f
    }

    pub fn add_term(&mut self, d: DoubleIndex, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(d).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&d);
        }
    }

    pub fn coeff(&self, d: DoubleIndex) -> i64 {
        self.terms.get(&d).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (DoubleIndex, i64)> + '_ {
        self.terms.iter().map(|(&d, &c)| (d, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(d, c)| (d, c * k)))
    }

    /// Largest single index carrying a nonzero coefficient (0 for the zero form).
    pub fn max_index(&self, seq: &AdaptedSequence) -> usize {
        self.terms.keys().map(|&d| seq.pair_to_index(d)).max().unwrap_or(0)
    }

    pub fn min_s(&self) -> Option<usize> {
        self.terms.keys().map(|d| d.s).min()
    }
}

impl AddAssign<&LinearForm> for LinearForm {
    fn add_assign(&mut self, rhs: &LinearForm) {
        for (d, c) in rhs.terms() {
            self.add_term(d, c);
        }
    }
}

impl SubAssign<&LinearForm> for LinearForm {
    fn sub_assign(&mut self, rhs: &LinearForm) {
        for (d, c) in rhs.terms() {
            self.add_term(d, -c);
        }
    }
}

impl Add<&LinearForm> for &LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LinearForm> for &LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(mut self, rhs: LinearForm) -> LinearForm {
        self += &rhs;
        self
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(mut self, rhs: LinearForm) -> LinearForm {
        self -= &rhs;
        self
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self.scaled(-1)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (d, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match n {
                0 if c < 0 => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    s: usize,
    l: usize,
    c: i64,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr { terms: self.terms().map(|(d, c)| TermRepr { s: d.s, l: d.l, c }).collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(deserializer)?;
        if repr.terms.iter().any(|t| t.s == 0 || t.l == 0) {
            return Err(serde::de::Error::custom("double indices start at (1,1)"));
        }
        Ok(Self::from_terms(repr.terms.into_iter().map(|t| (DoubleIndex::new(t.s, t.l), t.c))))
    }
}

/// `beta_{s,l} = x_{s,l} + x_{s+1,l} + sum_{a_{l,j}<0} a_{l,j} x_{s+p_{j,l},j}`.
pub fn beta_pair(seq: &AdaptedSequence, s: usize, l: usize) -> LinearForm {
    assert!(s >= 1);
    let mut f = LinearForm::x(s, l);
    f.add_term(DoubleIndex::new(s + 1, l), 1);
    for j in seq.root().neighbors(l) {
        let p = seq.p(j, l).expect("neighbors have p values") as usize;
        f.add_term(DoubleIndex::new(s + p, j), seq.a(l, j));
    }
    f
}

/// `beta_k` in single-index form, re-expressed in double indices; `beta_0 = 0`.
pub fn beta_index(seq: &AdaptedSequence, k: usize) -> LinearForm {
    if k == 0 {
        return LinearForm::zero();
    }
    let kp = seq.successor(k);
    let ik = seq.color(k);
    let mut f = LinearForm::zero();
    f.add_term(seq.index_to_pair(k), 1);
    for j in k + 1..kp {
        f.add_term(seq.index_to_pair(j), seq.a(ik, seq.color(j)));
    }
    f.add_term(seq.index_to_pair(kp), 1);
    f
}

/// `beta` at a double index, with `s = 0` meaning `beta_0 = 0`.
pub fn beta_at(seq: &AdaptedSequence, s: usize, l: usize) -> LinearForm {
    if s == 0 {
        LinearForm::zero()
    } else {
        beta_pair(seq, s, l)
    }
}

pub fn s_prime(seq: &AdaptedSequence, form: &LinearForm, d: DoubleIndex) -> LinearForm {
    let c = form.coeff(d);
    match c.signum() {
        1 => form - &beta_pair(seq, d.s, d.l),
        -1 => form + &beta_at(seq, d.s - 1, d.l),
        _ => form.clone(),
    }
}

pub fn evaluate(seq: &AdaptedSequence, form: &LinearForm, a: &LatticeElement) -> i64 {
    form.terms().map(|(d, c)| c * a.get(seq.pair_to_index(d))).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub forms: BTreeSet<LinearForm>,
    pub pruned_count: usize,
}

pub const DEFAULT_CLOSURE_CAP: usize = 5_000_000;

/// Default single-index cap `L * (depth + 2)`.
pub fn default_index_bound(seq: &AdaptedSequence, depth: usize) -> usize {
    seq.period() * (depth + 2)
}

/// Breadth-first closure of `seeds` under `S'` at nonzero coefficients, `depth` rounds deep.
/// Forms reaching past `index_bound` are counted in `pruned_count` and dropped.
pub fn closure(
    seq: &AdaptedSequence,
    seeds: &BTreeSet<LinearForm>,
    depth: usize,
    index_bound: usize,
) -> Result<ClosureResult> {
    closure_capped(seq, seeds, depth, index_bound, DEFAULT_CLOSURE_CAP)
}

pub fn closure_capped(
    seq: &AdaptedSequence,
    seeds: &BTreeSet<LinearForm>,
    depth: usize,
    index_bound: usize,
    cap: usize,
) -> Result<ClosureResult> {
    let mut forms = seeds.clone();
    let mut pruned = BTreeSet::new();
    let mut frontier: Vec<LinearForm> = seeds.iter().cloned().collect();
    for _ in 0..depth {
        let mut next = Vec::new();
        for f in &frontier {
            for (d, _) in f.terms() {
                let g = s_prime(seq, f, d);
                if forms.contains(&g) || pruned.contains(&g) {
                    continue;
                }
                if g.max_index(seq) > index_bound {
                    pruned.insert(g);
                } else {
                    forms.insert(g.clone());
                    next.push(g);
                }
            }
            if forms.len() > cap {
                return Err(Error::ResourceLimit { cap, reached: forms.len() });
            }
        }
        frontier = next;
    }
    Ok(ClosureResult { forms, pruned_count: pruned.len() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub pass: bool,
    pub checked: usize,
    pub witnesses: Vec<(LinearForm, DoubleIndex)>,
}

/// Flags negative coefficients at first-occurrence coordinates `(1, l)`.
pub fn check_xi_positivity<'a, I>(forms: I) -> PositivityReport
where
    I: IntoIterator<Item = &'a LinearForm>,
{
    let mut checked = 0;
    let mut witnesses = Vec::new();
    for f in forms {
        checked += 1;
        for (d, c) in f.terms() {
            if d.s == 1 && c < 0 {
                witnesses.push((f.clone(), d));
            }
        }
    }
    PositivityReport { pass: witnesses.is_empty(), checked, witnesses }
}
