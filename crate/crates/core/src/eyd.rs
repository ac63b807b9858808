//! Extended Young diagrams with a charge.
//!
//! A diagram of charge `k` is a weakly increasing sequence `y_0 <= y_1 <= ...` that is
//! eventually `k`. Column `t` holds `k - y_t` boxes hanging below the line `y = k`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{beta_pair, LinearForm};
use crate::root_data::{AdaptedSequence, DoubleIndex, Family, FoldMap, PTable};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtendedYoungDiagram {
    charge: i64,
    ys: Vec<i64>,
}

impl<'de> Deserialize<'de> for ExtendedYoungDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            charge: i64,
            ys: Vec<i64>,
        }
        let r = Repr::deserialize(deserializer)?;
        Self::new(r.charge, r.ys).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CornerKind {
    Concave,
    Convex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub x: i64,
    pub y: i64,
    pub kind: CornerKind,
    pub diagonal: i64,
}

impl Corner {
    fn new(x: i64, y: i64, kind: CornerKind) -> Self {
        Self { x, y, kind, diagonal: x + y }
    }
}

impl ExtendedYoungDiagram {
    pub fn new(charge: i64, mut ys: Vec<i64>) -> Result<Self> {
        if let Some(w) = ys.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::Invalid(format!("y_{w} > y_{}", w + 1)));
        }
        if ys.last().is_some_and(|&y| y > charge) {
            return Err(Error::Invalid(format!("last entry exceeds charge {charge}")));
        }
        while ys.last() == Some(&charge) {
            ys.pop();
        }
        Ok(Self { charge, ys })
    }

    /// The empty diagram of charge `k`.
    pub fn empty(charge: i64) -> Self {
        Self { charge, ys: Vec::new() }
    }

    /// Diagram whose column `t` has `parts[t]` boxes; `parts` must be a partition.
    pub fn from_partition(charge: i64, parts: &[i64]) -> Result<Self> {
        Self::new(charge, parts.iter().map(|p| charge - p).collect())
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn ys(&self) -> &[i64] {
        &self.ys
    }

    pub fn y(&self, t: usize) -> i64 {
        self.ys.get(t).copied().unwrap_or(self.charge)
    }

    pub fn boxes(&self) -> i64 {
        self.ys.iter().map(|y| self.charge - y).sum()
    }

    pub fn corners(&self) -> Vec<Corner> {
        let mut out = vec![Corner::new(0, self.y(0), CornerKind::Concave)];
        for t in 0..self.ys.len() {
            let (a, b) = (self.y(t), self.y(t + 1));
            if a < b {
                let x = t as i64 + 1;
                out.push(Corner::new(x, a, CornerKind::Convex));
                out.push(Corner::new(x, b, CornerKind::Concave));
            }
        }
        out
    }

    /// Adds one box at a concave corner `(i, y_i)`.
    pub fn add_box(&self, corner: &Corner) -> Result<Self> {
        let not = Error::NotACorner { x: corner.x, y: corner.y, kind: "concave" };
        if corner.kind != CornerKind::Concave || !self.corners().contains(corner) {
            return Err(not);
        }
        let t = corner.x as usize;
        let mut ys = self.ys.clone();
        if ys.len() <= t {
            ys.resize(t + 1, self.charge);
        }
        ys[t] -= 1;
        Self::new(self.charge, ys)
    }

    /// Removes the box under a convex corner `(i+1, y_i)`.
    pub fn remove_box(&self, corner: &Corner) -> Result<Self> {
        let not = Error::NotACorner { x: corner.x, y: corner.y, kind: "convex" };
        if corner.kind != CornerKind::Convex || !self.corners().contains(corner) {
            return Err(not);
        }
        let mut ys = self.ys.clone();
        ys[corner.x as usize - 1] += 1;
        Self::new(self.charge, ys)
    }

    /// Toggles at a corner: adds at a concave one, removes at a convex one.
    pub fn toggle(&self, corner: &Corner) -> Result<Self> {
        match corner.kind {
            CornerKind::Concave => self.add_box(corner),
            CornerKind::Convex => self.remove_box(corner),
        }
    }

    pub fn render(&self) -> String {
        let k = self.charge;
        let width = self.ys.len().max(1) + 1;
        let low = self.ys.first().copied().unwrap_or(k).min(k - 1);
        let label_w = [k, low].iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        let _ = writeln!(out, "charge {k}");
        let _ = writeln!(out, "{:>label_w$} +{}", k, "---".repeat(width));
        for r in ((low + 1)..=k).rev() {
            let mut line = format!("{:>label_w$} |", r - 1);
            for t in 0..width {
                line.push_str(if self.y(t) < r { "[] " } else { " . " });
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }
}

fn fold_for(family: Family) -> Result<FoldMap> {
    match family {
        Family::A1 => Ok(FoldMap::Overline),
        Family::D2 => Ok(FoldMap::Pi),
        other => Err(Error::FamilyMismatch { expected: "A1 or D2".into(), found: other.to_string() }),
    }
}

/// Double index attached to the point `(i, j)` of a charge-`k` diagram.
fn point_index(seq: &AdaptedSequence, table: &PTable, k: i64, s: usize, i: i64, j: i64) -> DoubleIndex {
    let shift = table.at(i + j) + (k - j).min(i);
    let l = crate::root_data::fold_unchecked(table.map(), seq.n(), i + j);
    DoubleIndex::new((s as i64 + shift) as usize, l)
}

fn charge_index(seq: &AdaptedSequence, k: i64) -> Result<usize> {
    if k < 1 || k as usize > seq.n() {
        return Err(Error::BadCharge { k: k.max(0) as usize, reason: format!("must lie in 1..={}", seq.n()) });
    }
    Ok(k as usize)
}

/// Linear form of a diagram: concave corners minus convex corners.
pub fn assign(seq: &AdaptedSequence, t: &ExtendedYoungDiagram, s: usize) -> Result<LinearForm> {
    let map = fold_for(seq.family())?;
    let k = t.charge();
    let table = seq.p_table(map, charge_index(seq, k)?);
    let mut form = LinearForm::zero();
    for c in t.corners() {
        let sign = if c.kind == CornerKind::Concave { 1 } else { -1 };
        form.add_term(point_index(seq, &table, k, s, c.x, c.y), sign);
    }
    Ok(form)
}

pub fn assign_a1(seq: &AdaptedSequence, t: &ExtendedYoungDiagram, s: usize) -> Result<LinearForm> {
    require(seq, Family::A1)?;
    assign(seq, t, s)
}

pub fn assign_d2(seq: &AdaptedSequence, t: &ExtendedYoungDiagram, s: usize) -> Result<LinearForm> {
    require(seq, Family::D2)?;
    assign(seq, t, s)
}

fn require(seq: &AdaptedSequence, family: Family) -> Result<()> {
    if seq.family() != family {
        return Err(Error::FamilyMismatch { expected: family.to_string(), found: seq.family().to_string() });
    }
    Ok(())
}

/// The quantum `beta` by which the form changes when toggling at `corner`, with its sign.
///
/// Adding at concave `(i, j)` changes the form by `-beta`; removing at convex
/// `(i+1, j-1)` changes it by `+beta` at the same double index.
pub fn toggle_delta(seq: &AdaptedSequence, t: &ExtendedYoungDiagram, corner: &Corner, s: usize) -> Result<LinearForm> {
    let map = fold_for(seq.family())?;
    let k = t.charge();
    let table = seq.p_table(map, charge_index(seq, k)?);
    let (i, j, sign) = match corner.kind {
        CornerKind::Concave => (corner.x, corner.y, -1),
        CornerKind::Convex => (corner.x - 1, corner.y + 1, 1),
    };
    let d = point_index(seq, &table, k, s, i, j);
    Ok(beta_pair(seq, d.s, d.l).scaled(sign))
}

pub const DEFAULT_EYD_CAP: usize = 1_000_000;

/// All diagrams of charge `k` with at most `max_boxes` boxes.
pub fn enumerate_eyd(k: i64, max_boxes: usize) -> Result<BTreeSet<ExtendedYoungDiagram>> {
    fn parts(left: usize, largest: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        for p in 1..=left.min(largest) {
            cur.push(p as i64);
            parts(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    parts(max_boxes, max_boxes, &mut Vec::new(), &mut all);
    if all.len() > DEFAULT_EYD_CAP {
        return Err(Error::ResourceLimit { cap: DEFAULT_EYD_CAP, reached: all.len() });
    }
    all.into_iter().map(|p| ExtendedYoungDiagram::from_partition(k, &p)).collect()
}
