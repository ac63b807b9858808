//! Revised extended Young diagrams.
//!
//! A diagram is a two-sided integer sequence `(y_t)` that agrees with the staircase
//! `y_t = k + t` far to the left and with `k` far to the right. Between them the
//! sequence may rise by 0 or 1 per step, with extra freedom at the special residues of
//! `k + t`. Everything outside the stored window equals the ground diagram
//! `phi_t = k + min(t, 0)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{beta_pair, LinearForm};
use crate::root_data::{fold_unchecked, AdaptedSequence, DoubleIndex, Family, FoldMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ReydFlavor {
    A2,
    D2Target,
}

impl ReydFlavor {
    pub fn modulus(self, n: usize) -> i64 {
        match self {
            ReydFlavor::A2 => 2 * n as i64 - 1,
            ReydFlavor::D2Target => 2 * n as i64,
        }
    }

    /// Residues `l` of `k + t` at which the rise condition is relaxed.
    pub fn special_residues(self, n: usize) -> Vec<i64> {
        match self {
            ReydFlavor::A2 => vec![0],
            ReydFlavor::D2Target => vec![0, n as i64],
        }
    }

    pub fn fold_map(self) -> FoldMap {
        match self {
            ReydFlavor::A2 => FoldMap::Pi1,
            ReydFlavor::D2Target => FoldMap::Pi2,
        }
    }

    pub fn family(self) -> Family {
        match self {
            ReydFlavor::A2 => Family::A2,
            ReydFlavor::D2Target => Family::C1,
        }
    }

    pub fn allows_charge(self, n: usize, k: usize) -> bool {
        match self {
            ReydFlavor::A2 => (2..=n).contains(&k),
            ReydFlavor::D2Target => 1 < k && k < n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RevisedEyd {
    flavor: ReydFlavor,
    n: usize,
    k: i64,
    t_lo: i64,
    ys: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: u8,
    pub t: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Admissible,
    Removable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Single,
    Double,
}

impl Multiplicity {
    pub fn weight(self) -> i64 {
        match self {
            Multiplicity::Single => 1,
            Multiplicity::Double => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub x: i64,
    pub y: i64,
    pub role: Role,
    pub multiplicity: Multiplicity,
    pub color: usize,
}

impl RevisedEyd {
    pub fn ground(flavor: ReydFlavor, n: usize, k: usize) -> Result<Self> {
        Self::check_charge(flavor, n, k)?;
        Ok(Self { flavor, n, k: k as i64, t_lo: 0, ys: Vec::new() })
    }

    /// Builds a diagram from `y_{t_lo}, y_{t_lo+1}, ...`; unspecified values follow the ground diagram.
    pub fn new(flavor: ReydFlavor, n: usize, k: usize, t_lo: i64, ys: Vec<i64>) -> Result<Self> {
        Self::check_charge(flavor, n, k)?;
        let t = Self::canonical(flavor, n, k as i64, t_lo, ys);
        let v = t.violations();
        if let Some(first) = v.first() {
            return Err(Error::Invalid(format!(
                "condition ({}) fails at t = {} ({} violation(s))",
                first.condition,
                first.t,
                v.len()
            )));
        }
        Ok(t)
    }

    /// Like [`RevisedEyd::new`] but keeps invalid sequences so they can be inspected.
    pub fn new_unchecked(flavor: ReydFlavor, n: usize, k: usize, t_lo: i64, ys: Vec<i64>) -> Result<Self> {
        Self::check_charge(flavor, n, k)?;
        Ok(Self::canonical(flavor, n, k as i64, t_lo, ys))
    }

    fn check_charge(flavor: ReydFlavor, n: usize, k: usize) -> Result<()> {
        if n < 3 {
            return Err(Error::Domain(format!("revised diagrams need n >= 3, got {n}")));
        }
        if !flavor.allows_charge(n, k) {
            let reason = match flavor {
                ReydFlavor::A2 => format!("flavor A2 needs 2 <= k <= {n}"),
                ReydFlavor::D2Target => format!("flavor D2Target needs 1 < k < {n}"),
            };
            return Err(Error::BadCharge { k, reason });
        }
        Ok(())
    }

    fn canonical(flavor: ReydFlavor, n: usize, k: i64, mut t_lo: i64, mut ys: Vec<i64>) -> Self {
        let phi = |t: i64| k + t.min(0);
        while let Some(&y) = ys.last() {
            if y != phi(t_lo + ys.len() as i64 - 1) {
                break;
            }
            ys.pop();
        }
        let lead = ys.iter().enumerate().take_while(|&(r, &y)| y == phi(t_lo + r as i64)).count();
        ys.drain(..lead);
        t_lo += lead as i64;
        if ys.is_empty() {
            t_lo = 0;
        }
        Self { flavor, n, k, t_lo, ys }
    }

    pub fn flavor(&self) -> ReydFlavor {
        self.flavor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn t_lo(&self) -> i64 {
        self.t_lo
    }

    pub fn t_hi(&self) -> i64 {
        self.t_lo + self.ys.len() as i64 - 1
    }

    pub fn stored(&self) -> &[i64] {
        &self.ys
    }

    pub fn phi(&self, t: i64) -> i64 {
        self.k + t.min(0)
    }

    pub fn y(&self, t: i64) -> i64 {
        let r = t - self.t_lo;
        if r >= 0 && (r as usize) < self.ys.len() {
            self.ys[r as usize]
        } else {
            self.phi(t)
        }
    }

    /// Number of unit cells removed from the ground diagram.
    pub fn units(&self) -> i64 {
        self.ys.iter().enumerate().map(|(r, &y)| self.phi(self.t_lo + r as i64) - y).sum()
    }

    fn is_special(&self, t: i64) -> bool {
        let m = self.flavor.modulus(self.n);
        self.flavor.special_residues(self.n).contains(&(self.k + t).rem_euclid(m))
    }

    /// Span of positions where conditions or markings can occur, with a period of margin.
    fn scan_range(&self) -> (i64, i64) {
        let m = self.flavor.modulus(self.n);
        let (lo, hi) = if self.ys.is_empty() { (0, 0) } else { (self.t_lo.min(0), self.t_hi().max(0)) };
        (lo - m - 1, hi + m + 1)
    }

    pub fn violations(&self) -> Vec<Violation> {
        let (lo, hi) = self.scan_range();
        let mut out = Vec::new();
        for t in lo..hi {
            let d = self.y(t + 1) - self.y(t);
            if !self.is_special(t) {
                if d != 0 && d != 1 {
                    out.push(Violation { condition: 3, t });
                }
            } else if t > 0 && d < 0 {
                out.push(Violation { condition: 4, t });
            } else if t < 0 && d > 1 {
                out.push(Violation { condition: 5, t });
            }
        }
        out
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    fn with_value(&self, t: i64, y: i64) -> Self {
        let lo = self.t_lo.min(t);
        let hi = if self.ys.is_empty() { t } else { self.t_hi().max(t) };
        let ys = (lo..=hi).map(|u| if u == t { y } else { self.y(u) }).collect();
        Self::canonical(self.flavor, self.n, self.k, lo, ys)
    }

    fn lowered(&self, t: i64) -> Self {
        self.with_value(t, self.y(t) - 1)
    }

    fn raised(&self, t: i64) -> Self {
        self.with_value(t, self.y(t) + 1)
    }

    fn fold(&self, t: i64) -> usize {
        fold_unchecked(self.flavor.fold_map(), self.n, t)
    }

    fn double_admissible(&self, i: i64) -> Option<usize> {
        if !(self.y(i - 1) < self.y(i) && self.y(i) == self.y(i + 1)) {
            return None;
        }
        let m = self.flavor.modulus(self.n);
        let r = (i + self.k).rem_euclid(m);
        self.flavor
            .special_residues(self.n)
            .into_iter()
            .find(|&l| (r == (l + 1).rem_euclid(m) && i < 0) || (r == l && i > 0))
            .map(|l| self.fold(l))
    }

    fn double_removable(&self, i: i64) -> Option<usize> {
        if !(self.y(i - 2) == self.y(i - 1) && self.y(i - 1) < self.y(i)) {
            return None;
        }
        let m = self.flavor.modulus(self.n);
        let r = (i + self.k - 1).rem_euclid(m);
        self.flavor
            .special_residues(self.n)
            .into_iter()
            .find(|&l| (r == (l + 1).rem_euclid(m) && i > 1) || (r == l && i < 1))
            .map(|l| self.fold(l))
    }

    /// All admissible points `(i, y_i)` and removable points `(i, y_{i-1})`.
    pub fn classify_points(&self) -> Vec<MarkedPoint> {
        let (lo, hi) = self.scan_range();
        let mut out = Vec::new();
        for i in lo..=hi {
            if self.lowered(i).violations().is_empty() {
                let (multiplicity, color) = match self.double_admissible(i) {
                    Some(c) => (Multiplicity::Double, c),
                    None => (Multiplicity::Single, self.fold(i + self.k)),
                };
                out.push(MarkedPoint { x: i, y: self.y(i), role: Role::Admissible, multiplicity, color });
            }
            if self.raised(i - 1).violations().is_empty() {
                let (multiplicity, color) = match self.double_removable(i) {
                    Some(c) => (Multiplicity::Double, c),
                    None => (Multiplicity::Single, self.fold(i + self.k - 1)),
                };
                out.push(MarkedPoint { x: i, y: self.y(i - 1), role: Role::Removable, multiplicity, color });
            }
        }
        out.sort();
        out
    }

    /// Lowers `y_x` at an admissible point or raises `y_{x-1}` at a removable one.
    pub fn toggle_unit(&self, point: &MarkedPoint) -> Result<Self> {
        let marked = self.classify_points().iter().any(|p| p.x == point.x && p.y == point.y && p.role == point.role);
        if !marked {
            let role = match point.role {
                Role::Admissible => "admissible",
                Role::Removable => "removable",
            };
            return Err(Error::NotMarked { x: point.x, y: point.y, role });
        }
        Ok(match point.role {
            Role::Admissible => self.lowered(point.x),
            Role::Removable => self.raised(point.x - 1),
        })
    }

    pub fn render(&self) -> String {
        let (lo, hi) = if self.ys.is_empty() { (-2, 2) } else { (self.t_lo.min(0) - 2, self.t_hi().max(0) + 2) };
        let bottom = (lo..=hi).map(|t| self.y(t)).min().unwrap_or(self.k).min(self.k - 1);
        let mut out = String::new();
        let _ = writeln!(out, "{:?} n={} k={} columns {lo}..{hi}", self.flavor, self.n, self.k);
        let label_w = [self.k, bottom].iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for r in ((bottom + 1)..=self.k).rev() {
            let mut line = format!("{:>label_w$} |", r - 1);
            for t in lo..=hi {
                let cell = if self.y(t) >= r {
                    " "
                } else if self.phi(t) >= r {
                    "#"
                } else {
                    "."
                };
                line.push_str(cell);
                line.push(' ');
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        let mut axis = format!("{:>label_w$}  ", "");
        for t in lo..=hi {
            axis.push(if t == 0 { '0' } else { '-' });
            axis.push(' ');
        }
        let _ = writeln!(out, "{}", axis.trim_end());
        out
    }
}

impl<'de> Deserialize<'de> for RevisedEyd {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            flavor: ReydFlavor,
            n: usize,
            k: usize,
            t_lo: i64,
            ys: Vec<i64>,
        }
        let r = Repr::deserialize(deserializer)?;
        Self::new(r.flavor, r.n, r.k, r.t_lo, r.ys).map_err(serde::de::Error::custom)
    }
}

fn flavor_of(seq: &AdaptedSequence, t: &RevisedEyd) -> Result<()> {
    if seq.family() != t.flavor.family() || seq.n() != t.n {
        return Err(Error::FamilyMismatch {
            expected: format!("{} n={}", t.flavor.family(), t.n),
            found: format!("{} n={}", seq.family(), seq.n()),
        });
    }
    Ok(())
}

/// Double index of the point form at an admissible or removable point.
fn point_index(seq: &AdaptedSequence, t: &RevisedEyd, s: usize, p: &MarkedPoint) -> DoubleIndex {
    let table = seq.p_table(t.flavor.fold_map(), t.k());
    let (base, i) = match p.role {
        Role::Admissible => (p.x + t.k, p.x),
        Role::Removable => (p.x + t.k - 1, p.x - 1),
    };
    let shift = table.at(base) + i.min(0) + t.k - p.y;
    DoubleIndex::new((s as i64 + shift) as usize, t.fold(base))
}

pub fn assign(seq: &AdaptedSequence, t: &RevisedEyd, s: usize) -> Result<LinearForm> {
    flavor_of(seq, t)?;
    let mut form = LinearForm::zero();
    for p in t.classify_points() {
        let sign = match p.role {
            Role::Admissible => 1,
            Role::Removable => -1,
        };
        form.add_term(point_index(seq, t, s, &p), sign * p.multiplicity.weight());
    }
    Ok(form)
}

/// Signed `beta` by which the form changes when toggling one unit at `point`.
pub fn toggle_delta(seq: &AdaptedSequence, t: &RevisedEyd, point: &MarkedPoint, s: usize) -> Result<LinearForm> {
    flavor_of(seq, t)?;
    let d = point_index(seq, t, s, point);
    Ok(match point.role {
        Role::Admissible => beta_pair(seq, d.s, d.l).scaled(-1),
        Role::Removable => beta_pair(seq, d.s - 1, d.l),
    })
}

pub const DEFAULT_REYD_CAP: usize = 1_000_000;

/// All diagrams reachable from the ground diagram by at most `max_units` lowerings.
pub fn enumerate_reyd(flavor: ReydFlavor, n: usize, k: usize, max_units: usize) -> Result<BTreeSet<RevisedEyd>> {
    let ground = RevisedEyd::ground(flavor, n, k)?;
    let mut seen = BTreeSet::from([ground.clone()]);
    let mut queue = VecDeque::from([(ground, 0usize)]);
    while let Some((t, units)) = queue.pop_front() {
        if units == max_units {
            continue;
        }
        for p in t.classify_points().into_iter().filter(|p| p.role == Role::Admissible) {
            let next = t.lowered(p.x);
            if seen.insert(next.clone()) {
                if seen.len() > DEFAULT_REYD_CAP {
                    return Err(Error::ResourceLimit { cap: DEFAULT_REYD_CAP, reached: seen.len() });
                }
                queue.push_back((next, units + 1));
            }
        }
    }
    Ok(seen)
}
