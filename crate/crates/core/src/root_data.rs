//! Affine root data, adapted sequences and the bookkeeping tables built on them.
//!
//! Colors are the indices `1..=n`. A word `[i_1, ..., i_L]` stands for the periodic
//! sequence `(..., i_2, i_1)` with `i_{j+L} = i_j`; `i_1` is read first.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A1,
    C1,
    A2,
    D2,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A1, Family::C1, Family::A2, Family::D2];

    pub fn min_rank(self) -> usize {
        match self {
            Family::A1 => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A1 => "A1",
            Family::C1 => "C1",
            Family::A2 => "A2",
            Family::D2 => "D2",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(Family::A1),
            "C1" => Ok(Family::C1),
            "A2" => Ok(Family::A2),
            "D2" => Ok(Family::D2),
            other => Err(Error::Domain(format!("unknown family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraType {
    pub family: Family,
    pub n: usize,
}

impl AlgebraType {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let min = family.min_rank();
        if n < min {
            return Err(Error::RankTooSmall { family, n, min });
        }
        Ok(Self { family, n })
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={})", self.family, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    algebra: AlgebraType,
    cartan: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(algebra: AlgebraType) -> Result<Self> {
        let algebra = AlgebraType::new(algebra.family, algebra.n)?;
        let n = algebra.n;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut set = |i: usize, j: usize, v: i64| a[i - 1][j - 1] = v;
        match algebra.family {
            Family::A1 if n == 2 => {
                set(1, 2, -2);
                set(2, 1, -2);
            }
            Family::A1 => {
                for i in 1..=n {
                    let j = i % n + 1;
                    set(i, j, -1);
                    set(j, i, -1);
                }
            }
            family => {
                for i in 1..n {
                    set(i, i + 1, -1);
                    set(i + 1, i, -1);
                }
                let (a12, a21, an1n, ann1) = match family {
                    Family::C1 => (-1, -2, -2, -1),
                    Family::A2 => (-1, -2, -1, -2),
                    Family::D2 => (-2, -1, -1, -2),
                    Family::A1 => unreachable!(),
                };
                set(1, 2, a12);
                set(2, 1, a21);
                set(n - 1, n, an1n);
                set(n, n - 1, ann1);
            }
        }
        Ok(Self { algebra, cartan: a })
    }

    pub fn algebra(&self) -> AlgebraType {
        self.algebra
    }

    pub fn n(&self) -> usize {
        self.algebra.n
    }

    /// `a_{i,j} = <h_i, alpha_j>` for colors `i, j` in `1..=n`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n()).filter(move |&j| j != i && self.a(i, j) < 0)
    }
}

/// Maps from the integers onto the color set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FoldMap {
    Overline,
    Pi,
    Pi1,
    Pi2,
    PiPrime,
}

impl FoldMap {
    pub fn period(self, n: usize) -> usize {
        match self {
            FoldMap::Overline => n,
            FoldMap::Pi | FoldMap::PiPrime => 2 * n - 2,
            FoldMap::Pi1 => 2 * n - 1,
            FoldMap::Pi2 => 2 * n,
        }
    }
}

pub fn fold(map: FoldMap, n: usize, t: i64) -> Result<usize> {
    if map == FoldMap::PiPrime && t < 1 {
        return Err(Error::Domain(format!("pi_prime is defined for t >= 1, got {t}")));
    }
    Ok(fold_unchecked(map, n, t))
}

pub(crate) fn fold_unchecked(map: FoldMap, n: usize, t: i64) -> usize {
    let p = map.period(n) as i64;
    let r = (t - 1).rem_euclid(p) as usize + 1;
    match map {
        FoldMap::Overline => r,
        FoldMap::Pi | FoldMap::PiPrime | FoldMap::Pi1 => {
            if r <= n {
                r
            } else {
                2 * n - r
            }
        }
        FoldMap::Pi2 => {
            if r <= n {
                r
            } else {
                2 * n + 1 - r
            }
        }
    }
}

/// The coordinate `x_{s,l}`: the `s`-th occurrence of color `l` in the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubleIndex {
    pub s: usize,
    pub l: usize,
}

impl DoubleIndex {
    pub fn new(s: usize, l: usize) -> Self {
        Self { s, l }
    }
}

impl fmt::Display for DoubleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.s, self.l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedSequence {
    root: RootSystem,
    word: Vec<usize>,
    /// First position (0-based) of each color inside the word.
    first: Vec<usize>,
    /// Word positions (0-based) of each color, in order.
    positions: Vec<Vec<usize>>,
    /// Occurrence number (1-based) of `word[r]` among `word[..=r]`.
    rank_in_word: Vec<usize>,
}

impl AdaptedSequence {
    pub fn new(root: RootSystem, word: Vec<usize>) -> Result<Self> {
        let n = root.n();
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&index) = word.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        let len = word.len();
        let mut positions = vec![Vec::new(); n + 1];
        let mut rank_in_word = Vec::with_capacity(len);
        for (r, &i) in word.iter().enumerate() {
            positions[i].push(r);
            rank_in_word.push(positions[i].len());
        }
        if let Some(i) = (1..=n).find(|&i| positions[i].is_empty()) {
            return Err(Error::MissingIndex(i));
        }
        for r in 0..len {
            let next = (r + 1) % len;
            if word[r] == word[next] {
                return Err(Error::ConsecutiveRepeat {
                    index: word[r],
                    position: r + 1,
                    next: if next == 0 { len + 1 } else { next + 1 },
                });
            }
        }
        for i in 1..=n {
            for j in root.neighbors(i).filter(|&j| j > i) {
                let restricted: Vec<usize> = word.iter().copied().filter(|&c| c == i || c == j).collect();
                let m = restricted.len();
                let broken = (0..m).any(|r| restricted[r] == restricted[(r + 1) % m]);
                if broken {
                    let mut window = restricted.clone();
                    window.extend_from_slice(&restricted);
                    return Err(Error::NotAdapted { i, j, window });
                }
            }
        }
        let mut first = vec![usize::MAX; n + 1];
        for i in 1..=n {
            first[i] = positions[i][0];
        }
        Ok(Self { root, word, first, positions, rank_in_word })
    }

    /// Builds the root system and the sequence in one step.
    pub fn build(family: Family, n: usize, word: Vec<usize>) -> Result<Self> {
        Self::new(RootSystem::new(AlgebraType::new(family, n)?)?, word)
    }

    pub fn root(&self) -> &RootSystem {
        &self.root
    }

    pub fn family(&self) -> Family {
        self.root.algebra().family
    }

    pub fn n(&self) -> usize {
        self.root.n()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Period length `L`.
    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.root.a(i, j)
    }

    /// Color `i_j` of single index `j >= 1`.
    pub fn color(&self, j: usize) -> usize {
        self.word[(j - 1) % self.word.len()]
    }

    /// `p_{i,j}` for a neighbor pair: 1 when `i` is met first reading from `i_1`.
    pub fn p(&self, i: usize, j: usize) -> Option<u8> {
        if i == j || self.root.a(i, j) >= 0 {
            return None;
        }
        Some(u8::from(self.first[i] < self.first[j]))
    }

    /// `p` value with folding conventions: equal colors contribute 0.
    pub(crate) fn p_folded(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 0;
        }
        i64::from(self.p(i, j).expect("consecutive folded colors are always neighbors"))
    }

    /// All defined `p_{i,j}` values.
    pub fn p_matrix(&self) -> BTreeMap<(usize, usize), u8> {
        let n = self.n();
        let mut out = BTreeMap::new();
        for i in 1..=n {
            for j in 1..=n {
                if let Some(v) = self.p(i, j) {
                    out.insert((i, j), v);
                }
            }
        }
        out
    }

    pub fn index_to_pair(&self, j: usize) -> DoubleIndex {
        assert!(j >= 1, "single indices start at 1");
        let len = self.word.len();
        let q = (j - 1) / len;
        let r = (j - 1) % len;
        let l = self.word[r];
        DoubleIndex { s: q * self.positions[l].len() + self.rank_in_word[r], l }
    }

    pub fn pair_to_index(&self, d: DoubleIndex) -> usize {
        assert!(d.s >= 1, "double indices start at s = 1");
        let per = &self.positions[d.l];
        let q = (d.s - 1) / per.len();
        let m = (d.s - 1) % per.len();
        q * self.word.len() + per[m] + 1
    }

    /// The next position after `j` carrying the same color.
    pub fn successor(&self, j: usize) -> usize {
        let d = self.index_to_pair(j);
        self.pair_to_index(DoubleIndex { s: d.s + 1, l: d.l })
    }

    /// Positions `1..=bound` of color `i`, in increasing order.
    pub fn positions_of(&self, i: usize, bound: usize) -> impl Iterator<Item = usize> + '_ {
        (1..).map(move |s| self.pair_to_index(DoubleIndex { s, l: i })).take_while(move |&j| j <= bound)
    }

    pub fn first_position(&self, i: usize) -> usize {
        self.first[i] + 1
    }

    /// The P table for charge `k` read through `map`.
    pub fn p_table(&self, map: FoldMap, k: usize) -> PTable {
        PTable::new(self, map, k)
    }
}

impl Serialize for AdaptedSequence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            word: &'a [usize],
        }
        Repr { word: &self.word }.serialize(serializer)
    }
}

/// Precomputed `P^k(t)` over one period in each direction; any `t` is answered in O(1).
#[derive(Debug, Clone)]
pub struct PTable {
    map: FoldMap,
    k: i64,
    period: usize,
    up: Vec<i64>,
    down: Vec<i64>,
}

impl PTable {
    pub fn new(seq: &AdaptedSequence, map: FoldMap, k: usize) -> Self {
        let n = seq.n();
        let period = map.period(n);
        let k = k as i64;
        let f = |t: i64| fold_unchecked(map, n, t);
        let mut up = vec![0i64; period + 1];
        let mut down = vec![0i64; period + 1];
        for r in 1..=period {
            let t = k + r as i64;
            up[r] = up[r - 1] + seq.p_folded(f(t), f(t - 1));
            let t = k - r as i64;
            down[r] = down[r - 1] + seq.p_folded(f(t), f(t + 1));
        }
        Self { map, k, period, up, down }
    }

    pub fn map(&self) -> FoldMap {
        self.map
    }

    pub fn get(&self, t: i64) -> Result<i64> {
        if self.map == FoldMap::PiPrime && t < self.k {
            return Err(Error::Domain(format!("pi_prime table is defined for t >= k = {}, got {t}", self.k)));
        }
        Ok(self.at(t))
    }

    pub(crate) fn at(&self, t: i64) -> i64 {
        let d = t - self.k;
        let (table, dist) = if d >= 0 { (&self.up, d as usize) } else { (&self.down, (-d) as usize) };
        let q = (dist / self.period) as i64;
        q * table[self.period] + table[dist % self.period]
    }
}

/// One-off evaluation of `P^k(t)`.
pub fn p_table(seq: &AdaptedSequence, map: FoldMap, k: usize, t: i64) -> Result<i64> {
    PTable::new(seq, map, k).get(t)
}
