//! WebAssembly entry points for the demo page in `www/`.
//!
//! Every function takes a JSON request string and returns a JSON string. A successful
//! call returns `{"ok": ...}` and a failed one returns `{"error": "message"}`, so the
//! page never has to catch exceptions and the functions can be called from native tests.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use polyreal::generators::{self, Generator};
use polyreal::lattice::{apply_ops, Op};
use polyreal::{AdaptedSequence, Family, LatticeElement};

#[derive(Deserialize)]
struct SequenceParams {
    family: String,
    n: usize,
    #[serde(default)]
    word: Option<Vec<usize>>,
}

impl SequenceParams {
    fn build(&self) -> Result<AdaptedSequence, String> {
        let family: Family = self.family.parse().map_err(err)?;
        let word = self.word.clone().filter(|w| !w.is_empty()).unwrap_or_else(|| (1..=self.n).collect());
        AdaptedSequence::build(family, self.n, word).map_err(err)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn parse<'a, T: Deserialize<'a>>(request: &'a str) -> Result<T, String> {
    serde_json::from_str(request).map_err(|e| format!("bad request: {e}"))
}

#[derive(Deserialize)]
struct InequalitiesRequest {
    #[serde(flatten)]
    seq: SequenceParams,
    k: usize,
    s: usize,
    bound: u32,
}

/// `{family, n, word?, k, s, bound}` to the list of forms `L(T)` with `size(T) <= bound`.
#[wasm_bindgen]
pub fn inequalities(request: &str) -> String {
    respond((|| {
        let req: InequalitiesRequest = parse(request)?;
        let seq = req.seq.build()?;
        if req.s == 0 {
            return Err("s must be at least 1".into());
        }
        let forms = generators::inequalities(&seq, req.k, req.s, req.bound).map_err(err)?;
        let text: Vec<String> = forms.iter().map(ToString::to_string).collect();
        Ok(json!({ "count": forms.len(), "forms": text }))
    })())
}

#[derive(Serialize)]
struct MoveView {
    label: String,
    adds: bool,
    delta: String,
}

#[derive(Deserialize)]
struct ExploreRequest {
    #[serde(flatten)]
    seq: SequenceParams,
    s: usize,
    /// Charge of the ground object, used when `object` is absent.
    #[serde(default)]
    k: Option<usize>,
    #[serde(default)]
    object: Option<Generator>,
    /// Index into the move list of `object`.
    #[serde(default)]
    apply: Option<usize>,
}

fn explorer_state(seq: &AdaptedSequence, g: &Generator, s: usize) -> Result<Value, String> {
    let moves = g.moves(seq, s).map_err(err)?;
    let views: Vec<MoveView> = moves
        .iter()
        .map(|m| MoveView { label: m.label.clone(), adds: m.adds, delta: m.expected_delta.to_string() })
        .collect();
    Ok(json!({
        "object": g,
        "size": g.size(),
        "picture": g.render(),
        "form": g.assign(seq, s).map_err(err)?.to_string(),
        "moves": views,
    }))
}

/// Generator explorer. Starts from the ground object of charge `k`, or from `object`;
/// with `apply = i` it first performs move `i`. Returns the picture, the form and the
/// legal moves, each labelled with its change of form.
#[wasm_bindgen]
pub fn explore(request: &str) -> String {
    respond((|| {
        let req: ExploreRequest = parse(request)?;
        let seq = req.seq.build()?;
        if req.s == 0 {
            return Err("s must be at least 1".into());
        }
        let mut g = match (req.object, req.k) {
            (Some(g), _) => g,
            (None, Some(k)) => Generator::ground(&seq, k).map_err(err)?,
            (None, None) => return Err("give k or object".into()),
        };
        if let Some(i) = req.apply {
            let mut moves = g.moves(&seq, req.s).map_err(err)?;
            if i >= moves.len() {
                return Err(format!("move {i} does not exist"));
            }
            g = moves.swap_remove(i).result;
        }
        explorer_state(&seq, &g, req.s)
    })())
}

#[derive(Deserialize)]
struct CrystalRequest {
    #[serde(flatten)]
    seq: SequenceParams,
    ops: String,
}

/// Applies a word such as `"f1 f2 e1"` to the zero vector, left to right.
#[wasm_bindgen]
pub fn crystal_apply(request: &str) -> String {
    respond((|| {
        let req: CrystalRequest = parse(request)?;
        let seq = req.seq.build()?;
        let ops: Vec<Op> = req.ops.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(err)?;
        let result = apply_ops(&seq, &LatticeElement::zero(), &ops).map_err(err)?;
        Ok(match result {
            None => json!({ "annihilated": true }),
            Some(a) => {
                let coords: Vec<Value> = a
                    .to_pairs(&seq)
                    .into_iter()
                    .zip(a.entries())
                    .map(|((d, v), (j, _))| json!({ "j": j, "s": d.s, "l": d.l, "value": v }))
                    .collect();
                json!({ "annihilated": false, "coords": coords })
            }
        })
    })())
}
