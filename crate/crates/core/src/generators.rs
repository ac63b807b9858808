//! Picks the generator family that describes the inequalities for a given type and
//! charge, and gives all three families one interface.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eyd::{self, ExtendedYoungDiagram};
use crate::forms::LinearForm;
use crate::reyd::{self, RevisedEyd, ReydFlavor, Role};
use crate::root_data::{AdaptedSequence, Family};
use crate::wall::{self, WallFamily, WallKind, YoungWall};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum GeneratorKind {
    Eyd,
    Reyd { flavor: ReydFlavor },
    Wall { wall: WallKind },
}

pub fn generator_kind(seq: &AdaptedSequence, k: usize) -> Result<GeneratorKind> {
    let n = seq.n();
    if k == 0 || k > n {
        return Err(Error::BadCharge { k, reason: format!("must lie in 1..={n}") });
    }
    Ok(match seq.family() {
        Family::A1 | Family::D2 => GeneratorKind::Eyd,
        Family::A2 if k == 1 => GeneratorKind::Wall { wall: WallKind::new(WallFamily::A2, n, 1)? },
        Family::A2 => GeneratorKind::Reyd { flavor: ReydFlavor::A2 },
        Family::C1 if k == 1 || k == n => GeneratorKind::Wall { wall: WallKind::new(WallFamily::D2, n, k)? },
        Family::C1 => GeneratorKind::Reyd { flavor: ReydFlavor::D2Target },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", content = "object", rename_all = "snake_case")]
pub enum Generator {
    Eyd(ExtendedYoungDiagram),
    Reyd(RevisedEyd),
    Wall(YoungWall),
}

/// One legal toggle of a generator object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Move {
    pub label: String,
    pub adds: bool,
    pub result: Generator,
    /// `assign(result) - assign(before)` predicted by the step identity.
    pub expected_delta: LinearForm,
}

impl Generator {
    pub fn ground(seq: &AdaptedSequence, k: usize) -> Result<Self> {
        Ok(match generator_kind(seq, k)? {
            GeneratorKind::Eyd => Generator::Eyd(ExtendedYoungDiagram::empty(k as i64)),
            GeneratorKind::Reyd { flavor } => Generator::Reyd(RevisedEyd::ground(flavor, seq.n(), k)?),
            GeneratorKind::Wall { wall } => Generator::Wall(YoungWall::ground(wall)),
        })
    }

    /// Boxes, unit cells, or blocks (each half-block counting once).
    pub fn size(&self) -> u32 {
        match self {
            Generator::Eyd(t) => t.boxes() as u32,
            Generator::Reyd(t) => t.units() as u32,
            Generator::Wall(y) => y.blocks(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Generator::Eyd(t) => t.render(),
            Generator::Reyd(t) => t.render(),
            Generator::Wall(y) => y.render(),
        }
    }

    pub fn assign(&self, seq: &AdaptedSequence, s: usize) -> Result<LinearForm> {
        match self {
            Generator::Eyd(t) => eyd::assign(seq, t, s),
            Generator::Reyd(t) => reyd::assign(seq, t, s),
            Generator::Wall(y) => wall::assign_wall(seq, y, s),
        }
    }

    /// Every legal single toggle, plus the two-half moves at double wall sites.
    pub fn moves(&self, seq: &AdaptedSequence, s: usize) -> Result<Vec<Move>> {
        let mut out = Vec::new();
        match self {
            Generator::Eyd(t) => {
                for c in t.corners() {
                    let adds = c.kind == eyd::CornerKind::Concave;
                    out.push(Move {
                        label: format!("{:?} corner ({},{})", c.kind, c.x, c.y),
                        adds,
                        result: Generator::Eyd(t.toggle(&c)?),
                        expected_delta: eyd::toggle_delta(seq, t, &c, s)?,
                    });
                }
            }
            Generator::Reyd(t) => {
                for p in t.classify_points() {
                    out.push(Move {
                        label: format!("{:?} {:?} {}-point ({},{})", p.multiplicity, p.role, p.color, p.x, p.y),
                        adds: p.role == Role::Admissible,
                        result: Generator::Reyd(t.toggle_unit(&p)?),
                        expected_delta: reyd::toggle_delta(seq, t, &p, s)?,
                    });
                }
            }
            Generator::Wall(y) => {
                for site in y.classify_sites() {
                    let delta = wall::toggle_delta(seq, y, &site, s)?;
                    let label = format!(
                        "{:?} {:?} {}-site column {} row {}",
                        site.multiplicity, site.role, site.color, site.column, site.row
                    );
                    out.push(Move {
                        label: label.clone(),
                        adds: site.role == Role::Admissible,
                        result: Generator::Wall(y.toggle_block(&site, false)?),
                        expected_delta: delta.clone(),
                    });
                    if site.multiplicity == reyd::Multiplicity::Double {
                        out.push(Move {
                            label: format!("{label} (both halves)"),
                            adds: site.role == Role::Admissible,
                            result: Generator::Wall(y.toggle_block(&site, true)?),
                            expected_delta: delta.scaled(2),
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Generator objects of charge `k` with size (boxes, units or blocks) at most `max_size`.
pub fn enumerate(seq: &AdaptedSequence, k: usize, max_size: u32) -> Result<BTreeSet<Generator>> {
    Ok(match generator_kind(seq, k)? {
        GeneratorKind::Eyd => {
            eyd::enumerate_eyd(k as i64, max_size as usize)?.into_iter().map(Generator::Eyd).collect()
        }
        GeneratorKind::Reyd { flavor } => {
            reyd::enumerate_reyd(flavor, seq.n(), k, max_size as usize)?.into_iter().map(Generator::Reyd).collect()
        }
        GeneratorKind::Wall { wall } => {
            wall::enumerate_walls_by_blocks(wall, max_size)?.into_iter().map(Generator::Wall).collect()
        }
    })
}

/// The forms `assign(T, s)` over all generator objects of size at most `max_size`.
pub fn inequalities(seq: &AdaptedSequence, k: usize, s: usize, max_size: u32) -> Result<BTreeSet<LinearForm>> {
    enumerate(seq, k, max_size)?.iter().map(|g| g.assign(seq, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_per_family() {
        let a2 = AdaptedSequence::build(Family::A2, 3, vec![2, 1, 3]).unwrap();
        assert!(matches!(generator_kind(&a2, 1).unwrap(), GeneratorKind::Wall { .. }));
        assert!(matches!(generator_kind(&a2, 3).unwrap(), GeneratorKind::Reyd { flavor: ReydFlavor::A2 }));
        let c1 = AdaptedSequence::build(Family::C1, 4, vec![2, 1, 3, 4]).unwrap();
        assert!(matches!(generator_kind(&c1, 4).unwrap(), GeneratorKind::Wall { .. }));
        assert!(matches!(generator_kind(&c1, 2).unwrap(), GeneratorKind::Reyd { flavor: ReydFlavor::D2Target }));
        assert!(generator_kind(&c1, 5).is_err());
    }

    #[test]
    fn ground_forms_are_coordinates() {
        for family in Family::ALL {
            let seq = AdaptedSequence::build(family, 3, vec![2, 1, 3]).unwrap();
            for k in 1..=3 {
                let g = Generator::ground(&seq, k).unwrap();
                assert_eq!(g.size(), 0);
                assert_eq!(g.assign(&seq, 2).unwrap(), LinearForm::x(2, k), "{family} k={k}");
            }
        }
    }

    #[test]
    fn json_tagging() {
        let g = Generator::Eyd(ExtendedYoungDiagram::new(2, vec![1]).unwrap());
        let js = serde_json::to_string(&g).unwrap();
        assert_eq!(js, r#"{"type":"eyd","object":{"charge":2,"ys":[1]}}"#);
        assert_eq!(serde_json::from_str::<Generator>(&js).unwrap(), g);
    }
}
