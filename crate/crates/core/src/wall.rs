//! Proper Young walls built on a ground state.
//!
//! Rows `l >= k` occupy `[l, l+1]` and carry color `pi'(l)`. Split rows hold two
//! stacked half-blocks; the others hold one unit block. Column `j` (counted from the
//! right, starting at 1) has height `h_j` in half-units above `k`; the ground is
//! `h = 1`, the lower half of row `k`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{beta_pair, LinearForm};
use crate::reyd::{Multiplicity, Role};
use crate::root_data::{fold_unchecked, AdaptedSequence, DoubleIndex, Family, FoldMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WallFamily {
    A2,
    D2,
}

impl WallFamily {
    pub fn family(self) -> Family {
        match self {
            WallFamily::A2 => Family::A2,
            WallFamily::D2 => Family::C1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WallKind {
    pub family: WallFamily,
    pub n: usize,
    pub ground: usize,
}

impl WallKind {
    pub fn new(family: WallFamily, n: usize, ground: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("walls need n >= 3, got {n}")));
        }
        let ok = match family {
            WallFamily::A2 => ground == 1,
            WallFamily::D2 => ground == 1 || ground == n,
        };
        if !ok {
            let reason = match family {
                WallFamily::A2 => "A2 walls stand on ground 1".to_string(),
                WallFamily::D2 => format!("D2 walls stand on ground 1 or {n}"),
            };
            return Err(Error::BadCharge { k: ground, reason });
        }
        Ok(Self { family, n, ground })
    }

    pub fn color(&self, row: i64) -> usize {
        fold_unchecked(FoldMap::PiPrime, self.n, row)
    }

    pub fn is_split(&self, row: i64) -> bool {
        let c = self.color(row);
        match self.family {
            WallFamily::A2 => c == 1,
            WallFamily::D2 => c == 1 || c == self.n,
        }
    }

    /// Row and half (`None` for a unit row) holding the `q`-th half-unit above the baseline.
    fn cell(&self, q: u32) -> (i64, Option<Half>) {
        let row = self.ground as i64 + (q / 2) as i64;
        let half = self.is_split(row).then_some(if q.is_multiple_of(2) { Half::Lower } else { Half::Upper });
        (row, half)
    }

    /// Whether a column of `h` halves ends on a row boundary.
    fn is_full(&self, h: u32) -> bool {
        (0..h).filter(|&q| self.cell(q).1.is_none()).count() % 2 == 0
            && (0..h).filter(|&q| self.cell(q).1.is_some()).count() % 2 == 0
    }

    /// Whether a column of `h` halves stops inside a unit block.
    fn cuts_unit_block(&self, h: u32) -> bool {
        h > 0 && h % 2 == 1 && self.cell(h - 1).1.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct YoungWall {
    family: WallFamily,
    n: usize,
    ground: usize,
    halves: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WallViolation {
    BelowGround { column: usize },
    Misaligned { column: usize },
    NotMonotone { column: usize },
    EqualFullColumns { left: usize, right: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WallSite {
    pub column: usize,
    pub row: i64,
    /// `None` for a unit row.
    pub half: Option<Half>,
    pub role: Role,
    pub multiplicity: Multiplicity,
    pub color: usize,
}

impl YoungWall {
    pub fn ground(kind: WallKind) -> Self {
        Self { family: kind.family, n: kind.n, ground: kind.ground, halves: Vec::new() }
    }

    pub fn new(kind: WallKind, halves: Vec<u32>) -> Result<Self> {
        let w = Self::new_unchecked(kind, halves);
        let v = w.violations();
        if let Some(first) = v.first() {
            return Err(Error::Invalid(format!("wall is not proper: {first:?}")));
        }
        Ok(w)
    }

    pub fn new_unchecked(kind: WallKind, mut halves: Vec<u32>) -> Self {
        while halves.last() == Some(&1) {
            halves.pop();
        }
        Self { family: kind.family, n: kind.n, ground: kind.ground, halves }
    }

    pub fn kind(&self) -> WallKind {
        WallKind { family: self.family, n: self.n, ground: self.ground }
    }

    pub fn halves(&self) -> &[u32] {
        &self.halves
    }

    /// Height of column `j >= 1` in half-units.
    pub fn height(&self, j: usize) -> u32 {
        self.halves.get(j - 1).copied().unwrap_or(1)
    }

    /// Half-units stacked on the ground.
    pub fn added_halves(&self) -> u32 {
        self.halves.iter().map(|h| h - 1).sum()
    }

    /// Blocks stacked on the ground, counting each half-block as one block.
    pub fn blocks(&self) -> u32 {
        let kind = self.kind();
        self.halves
            .iter()
            .map(|&h| {
                let halves_in_split = (1..h).filter(|&q| kind.cell(q).1.is_some()).count() as u32;
                let unit_halves = (1..h).filter(|&q| kind.cell(q).1.is_none()).count() as u32;
                halves_in_split + unit_halves / 2
            })
            .sum()
    }

    pub fn violations(&self) -> Vec<WallViolation> {
        let kind = self.kind();
        let mut out = Vec::new();
        for (idx, &h) in self.halves.iter().enumerate() {
            let column = idx + 1;
            if h < 1 {
                out.push(WallViolation::BelowGround { column });
            }
            if kind.cuts_unit_block(h) {
                out.push(WallViolation::Misaligned { column });
            }
            if h < self.height(column + 1) {
                out.push(WallViolation::NotMonotone { column });
            }
        }
        let full: Vec<(usize, u32)> = self
            .halves
            .iter()
            .enumerate()
            .filter(|&(_, &h)| h > 1 && kind.is_full(h))
            .map(|(i, &h)| (i + 1, h))
            .collect();
        for w in full.windows(2) {
            if w[0].1 == w[1].1 {
                out.push(WallViolation::EqualFullColumns { left: w[1].0, right: w[0].0 });
            }
        }
        out
    }

    pub fn is_proper(&self) -> bool {
        self.violations().is_empty()
    }

    fn with_height(&self, j: usize, h: u32) -> Self {
        let mut halves = self.halves.clone();
        if halves.len() < j {
            halves.resize(j, 1);
        }
        halves[j - 1] = h;
        Self::new_unchecked(self.kind(), halves)
    }

    pub fn classify_sites(&self) -> Vec<WallSite> {
        let kind = self.kind();
        let mut out = Vec::new();
        for j in 1..=self.halves.len() + 1 {
            let h = self.height(j);
            // slot on top of column j
            let (row, half) = kind.cell(h);
            let color = kind.color(row);
            let step = if half.is_none() { 2 } else { 1 };
            let multiplicity = if half == Some(Half::Lower) && self.with_height(j, h + 2).is_proper() {
                Some(Multiplicity::Double)
            } else if self.with_height(j, h + step).is_proper() {
                Some(Multiplicity::Single)
            } else {
                None
            };
            if let Some(multiplicity) = multiplicity {
                out.push(WallSite { column: j, row, half, role: Role::Admissible, multiplicity, color });
            }
            // block at the top of column j
            if h <= 1 {
                continue;
            }
            let (row, half) = kind.cell(h - 1);
            let color = kind.color(row);
            let step = if half.is_none() { 2 } else { 1 };
            let multiplicity = if half == Some(Half::Upper) && h >= 3 && self.with_height(j, h - 2).is_proper() {
                Some(Multiplicity::Double)
            } else if h > step && self.with_height(j, h - step).is_proper() {
                Some(Multiplicity::Single)
            } else {
                None
            };
            if let Some(multiplicity) = multiplicity {
                out.push(WallSite { column: j, row, half, role: Role::Removable, multiplicity, color });
            }
        }
        out
    }

    /// Adds or removes the block at `site`. With `double`, moves both halves of a double site.
    pub fn toggle_block(&self, site: &WallSite, double: bool) -> Result<Self> {
        let role = match site.role {
            Role::Admissible => "admissible",
            Role::Removable => "removable",
        };
        let current = self
            .classify_sites()
            .into_iter()
            .find(|s| s.column == site.column && s.role == site.role)
            .ok_or(Error::NotASite { column: site.column, role })?;
        if double && current.multiplicity != Multiplicity::Double {
            return Err(Error::NotASite { column: site.column, role: "double" });
        }
        let step = if double || current.half.is_none() { 2 } else { 1 };
        let h = self.height(site.column);
        let h = match site.role {
            Role::Admissible => h + step,
            Role::Removable => h - step,
        };
        let out = self.with_height(site.column, h);
        debug_assert!(out.is_proper(), "classified toggle left the wall improper");
        Ok(out)
    }

    pub fn render(&self) -> String {
        let kind = self.kind();
        let cols = self.halves.len() + 1;
        let top = self.halves.first().copied().unwrap_or(1).max(1);
        let mut out = String::new();
        let _ = writeln!(out, "{:?} wall n={} ground {}", self.family, self.n, self.ground);
        for q in (0..top).rev() {
            let (row, half) = kind.cell(q);
            let color = kind.color(row);
            let mut line = String::from(if q == 0 { "..." } else { "   " });
            for j in (1..=cols).rev() {
                let cell = if q < self.height(j) {
                    match half {
                        None => format!("[{color}]"),
                        Some(_) => format!("({color})"),
                    }
                } else {
                    "   ".to_string()
                };
                line.push_str(&cell);
            }
            let label = match half {
                None => format!("row {row}"),
                Some(Half::Lower) => format!("row {row} lower"),
                Some(Half::Upper) => format!("row {row} upper"),
            };
            let _ = writeln!(out, "{line}  {label}");
        }
        out
    }
}

impl<'de> Deserialize<'de> for YoungWall {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            family: WallFamily,
            n: usize,
            ground: usize,
            halves: Vec<u32>,
        }
        let r = Repr::deserialize(deserializer)?;
        let kind = WallKind::new(r.family, r.n, r.ground).map_err(serde::de::Error::custom)?;
        Self::new(kind, r.halves).map_err(serde::de::Error::custom)
    }
}

fn family_of(seq: &AdaptedSequence, y: &YoungWall) -> Result<()> {
    if seq.family() != y.family.family() || seq.n() != y.n {
        return Err(Error::FamilyMismatch {
            expected: format!("{} n={}", y.family.family(), y.n),
            found: format!("{} n={}", seq.family(), seq.n()),
        });
    }
    Ok(())
}

fn site_index(seq: &AdaptedSequence, y: &YoungWall, s: usize, site: &WallSite) -> DoubleIndex {
    let table = seq.p_table(FoldMap::PiPrime, y.ground);
    let i = site.column as i64 - 1;
    let extra = i64::from(site.role == Role::Removable);
    DoubleIndex::new((s as i64 + table.at(site.row) + i + extra) as usize, site.color)
}

pub fn assign_wall(seq: &AdaptedSequence, y: &YoungWall, s: usize) -> Result<LinearForm> {
    family_of(seq, y)?;
    let mut form = LinearForm::zero();
    for site in y.classify_sites() {
        let sign = match site.role {
            Role::Admissible => 1,
            Role::Removable => -1,
        };
        form.add_term(site_index(seq, y, s, &site), sign * site.multiplicity.weight());
    }
    Ok(form)
}

/// Signed `beta` by which the form changes under a single-block move at `site`.
pub fn toggle_delta(seq: &AdaptedSequence, y: &YoungWall, site: &WallSite, s: usize) -> Result<LinearForm> {
    family_of(seq, y)?;
    let d = site_index(seq, y, s, site);
    Ok(match site.role {
        Role::Admissible => beta_pair(seq, d.s, d.l).scaled(-1),
        Role::Removable => beta_pair(seq, d.s - 1, d.l),
    })
}

pub const DEFAULT_WALL_CAP: usize = 1_000_000;

fn bfs(kind: WallKind, within: impl Fn(&YoungWall) -> bool) -> Result<BTreeSet<YoungWall>> {
    let ground = YoungWall::ground(kind);
    let mut seen = BTreeSet::from([ground.clone()]);
    let mut queue = VecDeque::from([ground]);
    while let Some(y) = queue.pop_front() {
        for site in y.classify_sites().into_iter().filter(|s| s.role == Role::Admissible) {
            let next = y.toggle_block(&site, false)?;
            if within(&next) && seen.insert(next.clone()) {
                if seen.len() > DEFAULT_WALL_CAP {
                    return Err(Error::ResourceLimit { cap: DEFAULT_WALL_CAP, reached: seen.len() });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Proper walls with at most `max_halves` half-units added to the ground.
pub fn enumerate_walls(kind: WallKind, max_halves: u32) -> Result<BTreeSet<YoungWall>> {
    bfs(kind, |y| y.added_halves() <= max_halves)
}

/// Proper walls with at most `max_blocks` blocks added to the ground.
pub fn enumerate_walls_by_blocks(kind: WallKind, max_blocks: u32) -> Result<BTreeSet<YoungWall>> {
    bfs(kind, |y| y.blocks() <= max_blocks)
}
