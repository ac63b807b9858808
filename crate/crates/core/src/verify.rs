//! Desk-scale checks that tie the lattice crystal, the `S'` closure and the three
//! generator families together. Each check returns a [`VerificationReport`].

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::forms::{check_xi_positivity, closure, default_index_bound, evaluate, LinearForm};
use crate::generators::{enumerate, generator_kind, inequalities, GeneratorKind};
use crate::lattice::{enumerate_image, epsilon, etilde, ftilde, phi, weight, LatticeElement};
use crate::root_data::AdaptedSequence;
use crate::wall;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    pub witnesses: Vec<String>,
}

const MAX_WITNESSES: usize = 20;

impl VerificationReport {
    fn new(check: &str, seq: &AdaptedSequence) -> Self {
        let mut params = BTreeMap::new();
        params.insert("family".into(), json!(seq.family().to_string()));
        params.insert("n".into(), json!(seq.n()));
        params.insert("word".into(), json!(seq.word()));
        Self { check: check.into(), params, status: Status::Pass, counts: BTreeMap::new(), witnesses: Vec::new() }
    }

    fn param(mut self, key: &str, v: Value) -> Self {
        self.params.insert(key.into(), v);
        self
    }

    fn bump(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.into()).or_insert(0) += by;
    }

    fn fail(&mut self, witness: String) {
        self.status = Status::Fail;
        self.bump("failures", 1);
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepBounds {
    /// Largest diagram checked, in boxes or unit cells.
    pub max_size: u32,
    /// Largest wall checked, in half-units above the ground.
    pub max_halves: u32,
    pub s_values: Vec<usize>,
}

impl Default for StepBounds {
    fn default() -> Self {
        Self { max_size: 6, max_halves: 8, s_values: vec![1, 2] }
    }
}

/// Applies every legal toggle to every generator object within `bounds` and checks that
/// the form changes by exactly the predicted signed `beta`.
pub fn check_step_identities(seq: &AdaptedSequence, bounds: &StepBounds) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("step-identities", seq)
        .param("max_size", json!(bounds.max_size))
        .param("max_halves", json!(bounds.max_halves))
        .param("s_values", json!(bounds.s_values));
    for k in 1..=seq.n() {
        let objects: Vec<_> = match generator_kind(seq, k)? {
            GeneratorKind::Wall { wall: kind } => wall::enumerate_walls(kind, bounds.max_halves)?
                .into_iter()
                .map(crate::generators::Generator::Wall)
                .collect(),
            _ => enumerate(seq, k, bounds.max_size)?.into_iter().collect(),
        };
        report.bump("objects", objects.len() as u64);
        for g in &objects {
            for &s in &bounds.s_values {
                let before = g.assign(seq, s)?;
                for mv in g.moves(seq, s)? {
                    report.bump("toggles", 1);
                    let after = mv.result.assign(seq, s)?;
                    let got = &after - &before;
                    if got != mv.expected_delta {
                        report.fail(format!(
                            "k={k} s={s} {} at {}: got {got}, expected {}",
                            mv.label,
                            serde_json::to_string(g).unwrap_or_default(),
                            mv.expected_delta
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Compares the depth-`depth` closure of `x_{s,k}` with the forms of generator objects of
/// size at most `depth`.
pub fn check_closure_equality(seq: &AdaptedSequence, s: usize, k: usize, depth: usize) -> Result<VerificationReport> {
    let bound = default_index_bound(seq, depth + s.saturating_sub(1));
    let mut report = VerificationReport::new("closure", seq)
        .param("s", json!(s))
        .param("k", json!(k))
        .param("depth", json!(depth))
        .param("index_bound", json!(bound));
    let seeds = BTreeSet::from([LinearForm::x(s, k)]);
    let a = closure(seq, &seeds, depth, bound)?;
    let b = inequalities(seq, k, s, depth as u32)?;
    report.bump("closure_forms", a.forms.len() as u64);
    report.bump("generator_forms", b.len() as u64);
    report.bump("pruned", a.pruned_count as u64);
    let only_closure: Vec<_> = a.forms.difference(&b).collect();
    let only_generators: Vec<_> = b.difference(&a.forms).collect();
    report.bump("only_closure", only_closure.len() as u64);
    report.bump("only_generators", only_generators.len() as u64);
    if only_closure.is_empty() && only_generators.is_empty() {
        return Ok(report);
    }
    let witnesses: Vec<String> = only_closure
        .iter()
        .map(|f| format!("closure only: {f}"))
        .chain(only_generators.iter().map(|f| format!("generators only: {f}")))
        .collect();
    if a.pruned_count > 0 {
        report.status = Status::Inconclusive;
        report.witnesses = witnesses.into_iter().take(MAX_WITNESSES).collect();
    } else {
        for w in witnesses {
            report.fail(w);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageBounds {
    /// Largest generator object used, in boxes, unit cells or blocks.
    pub max_size: u32,
    /// Forms are generated for `s = 1..=max_s`.
    pub max_s: usize,
    /// Candidate vectors live on positions `1..=window`; `None` means `L * max_s`.
    pub window: Option<usize>,
}

impl ImageBounds {
    pub fn for_weight(max_weight: usize) -> Self {
        Self { max_size: max_weight as u32 + 2, max_s: max_weight + 1, window: None }
    }
}

fn compositions(len: usize, total: i64, out: &mut Vec<LatticeElement>) {
    fn go(pos: usize, len: usize, left: i64, cur: &mut Vec<(usize, i64)>, out: &mut Vec<LatticeElement>) {
        if pos > len {
            out.push(LatticeElement::from_entries(cur.iter().copied()));
            return;
        }
        for v in 0..=left {
            if v > 0 {
                cur.push((pos, v));
            }
            go(pos + 1, len, left - v, cur, out);
            if v > 0 {
                cur.pop();
            }
        }
    }
    go(1, len, total, &mut Vec::new(), out);
}

/// Checks the image of the crystal against the cut of generated inequalities.
///
/// Forward: every enumerated image element satisfies every generated form. Converse: every
/// nonnegative vector on the window with entry sum at most `max_weight` that satisfies all
/// forms is an image element.
pub fn check_image_equality(
    seq: &AdaptedSequence,
    max_weight: usize,
    bounds: &ImageBounds,
) -> Result<VerificationReport> {
    let window = bounds.window.unwrap_or(seq.period() * bounds.max_s);
    let mut report = VerificationReport::new("image", seq)
        .param("max_weight", json!(max_weight))
        .param("max_size", json!(bounds.max_size))
        .param("max_s", json!(bounds.max_s))
        .param("window", json!(window));
    let image = enumerate_image(seq, max_weight)?;
    let mut forms = BTreeSet::new();
    for k in 1..=seq.n() {
        let objects = enumerate(seq, k, bounds.max_size)?;
        for s in 1..=bounds.max_s {
            for g in &objects {
                forms.insert(g.assign(seq, s)?);
            }
        }
    }
    let forms: Vec<LinearForm> = forms.into_iter().collect();
    report.bump("image_elements", image.len() as u64);
    report.bump("forms", forms.len() as u64);

    for a in &image {
        if let Some(f) = forms.iter().find(|f| evaluate(seq, f, a) < 0) {
            report
                .fail(format!("forward: {} is in the image but {f} < 0", serde_json::to_string(a).unwrap_or_default()));
        }
    }

    let mut candidates = Vec::new();
    compositions(window, max_weight as i64, &mut candidates);
    report.bump("candidates", candidates.len() as u64);
    let mut converse = 0u64;
    for a in &candidates {
        if image.contains(a) {
            continue;
        }
        let cut = forms
            .iter()
            .any(|f| f.terms().any(|(d, c)| c < 0 && a.get(seq.pair_to_index(d)) > 0) && evaluate(seq, f, a) < 0);
        if !cut {
            converse += 1;
            if report.witnesses.len() < MAX_WITNESSES {
                report.witnesses.push(format!(
                    "converse: {} satisfies every form but is not in the image",
                    serde_json::to_string(a).unwrap_or_default()
                ));
            }
        }
    }
    report.bump("converse_violations", converse);
    if converse > 0 && report.status == Status::Pass {
        report.status = Status::Inconclusive;
    }
    Ok(report)
}

/// Kashiwara's axioms on each sampled element and each color.
pub fn check_crystal_axioms(seq: &AdaptedSequence, sample: &[LatticeElement]) -> VerificationReport {
    let mut report = VerificationReport::new("axioms", seq);
    report.bump("elements", sample.len() as u64);
    for a in sample {
        let wt = weight(seq, a);
        let tag = serde_json::to_string(a).unwrap_or_default();
        for i in 1..=seq.n() {
            report.bump("checks", 1);
            let eps = epsilon(seq, a, i);
            let ph = phi(seq, a, i);
            if ph != eps + wt.pairing(seq, i) {
                report.fail(format!("{tag}: phi_{i} != eps_{i} + <h_{i}, wt>"));
            }
            let f = ftilde(seq, a, i);
            let wf = weight(seq, &f);
            if wf.coeff(i) != wt.coeff(i) + 1 || (1..=seq.n()).any(|j| j != i && wf.coeff(j) != wt.coeff(j)) {
                report.fail(format!("{tag}: wt(f_{i} a) != wt(a) - alpha_{i}"));
            }
            if epsilon(seq, &f, i) != eps + 1 {
                report.fail(format!("{tag}: eps_{i}(f_{i} a) != eps_{i}(a) + 1"));
            }
            if phi(seq, &f, i) != ph - 1 {
                report.fail(format!("{tag}: phi_{i}(f_{i} a) != phi_{i}(a) - 1"));
            }
            if etilde(seq, &f, i).as_ref() != Some(a) {
                report.fail(format!("{tag}: e_{i} f_{i} a != a"));
            }
            match etilde(seq, a, i) {
                Some(e) => {
                    if ftilde(seq, &e, i) != *a {
                        report.fail(format!("{tag}: f_{i} e_{i} a != a"));
                    }
                    if epsilon(seq, &e, i) != eps - 1 || phi(seq, &e, i) != ph + 1 {
                        report.fail(format!("{tag}: eps/phi shift under e_{i}"));
                    }
                }
                None => {
                    if eps != 0 {
                        report.fail(format!("{tag}: e_{i} a = 0 but eps_{i} = {eps}"));
                    }
                }
            }
        }
    }
    report
}

/// No form in the closure of `{x_{s,k} : s <= max_s}` has a negative coefficient at `s = 1`.
pub fn check_positivity(seq: &AdaptedSequence, depth: usize, max_s: usize) -> Result<VerificationReport> {
    let bound = default_index_bound(seq, depth + max_s);
    let mut report = VerificationReport::new("positivity", seq)
        .param("depth", json!(depth))
        .param("max_s", json!(max_s))
        .param("index_bound", json!(bound));
    let seeds: BTreeSet<LinearForm> =
        (1..=max_s).flat_map(|s| (1..=seq.n()).map(move |k| LinearForm::x(s, k))).collect();
    let c = closure(seq, &seeds, depth, bound)?;
    report.bump("forms", c.forms.len() as u64);
    report.bump("pruned", c.pruned_count as u64);
    let pos = check_xi_positivity(&c.forms);
    for (f, d) in pos.witnesses {
        report.fail(format!("{f} has a negative coefficient at {d}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::Family;

    #[test]
    fn status_order() {
        assert_eq!(Status::Pass.combine(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Fail.combine(Status::Pass), Status::Fail);
    }

    #[test]
    fn compositions_count() {
        let mut out = Vec::new();
        compositions(4, 2, &mut out);
        assert_eq!(out.len(), 15);
    }

    #[test]
    fn small_checks_pass() {
        let seq = AdaptedSequence::build(Family::A1, 3, vec![2, 1, 3]).unwrap();
        let bounds = StepBounds { max_size: 3, max_halves: 4, s_values: vec![1] };
        assert!(check_step_identities(&seq, &bounds).unwrap().passed());
        let r = check_closure_equality(&seq, 1, 2, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.count("closure_forms"), 1);
        let r = check_image_equality(&seq, 0, &ImageBounds::for_weight(0)).unwrap();
        assert!(r.passed());
        assert_eq!(r.count("image_elements"), 1);
        let sample: Vec<_> = enumerate_image(&seq, 2).unwrap().into_iter().collect();
        assert!(check_crystal_axioms(&seq, &sample).passed());
        assert!(check_positivity(&seq, 3, 1).unwrap().passed());
    }
}
