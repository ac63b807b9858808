use std::fmt::Write as _;
use std::io::Read as _;

use serde_json::{json, Value};

use polyreal::eyd::ExtendedYoungDiagram;
use polyreal::generators::{self, Generator};
use polyreal::lattice::{apply_ops, enumerate_image, Op};
use polyreal::reyd::{RevisedEyd, ReydFlavor};
use polyreal::verify::{
    check_closure_equality, check_crystal_axioms, check_image_equality, check_positivity, check_step_identities,
    ImageBounds, Status, StepBounds, VerificationReport,
};
use polyreal::wall::{WallFamily, WallKind, YoungWall};
use polyreal::{AdaptedSequence, Family, LatticeElement};

use crate::{Check, Cli, Command, Common, CrystalAction, RenderArgs, RenderKind, VerifyArgs};

/// What a command produced: a text surface, a JSON surface, and an exit code.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, code: 0 }
    }
}

type CmdResult = Result<Outcome, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn family(common: &Common) -> Result<Family, String> {
    common.family.as_deref().ok_or("--family is required")?.parse().map_err(err)
}

fn rank(common: &Common) -> Result<usize, String> {
    common.n.ok_or_else(|| "--n is required".to_string())
}

fn sequence(common: &Common) -> Result<AdaptedSequence, String> {
    let n = rank(common)?;
    let word = common.word.clone().unwrap_or_else(|| (1..=n).collect());
    AdaptedSequence::build(family(common)?, n, word).map_err(err)
}

pub fn run(cli: &Cli) -> CmdResult {
    let common = &cli.common;
    match &cli.command {
        Command::Inequalities { k, s, bound } => inequalities(common, *k, *s, *bound),
        Command::Verify(args) => verify(common, args),
        Command::Crystal { action } => crystal(common, action),
        Command::Render(args) => render(common, args),
        Command::Enumerate { k, bound, s } => enumerate(common, *k, *bound, *s),
    }
}

fn inequalities(common: &Common, k: usize, s: usize, bound: u32) -> CmdResult {
    let seq = sequence(common)?;
    if s == 0 {
        return Err("--s must be at least 1".into());
    }
    let forms = generators::inequalities(&seq, k, s, bound).map_err(err)?;
    let shown: Vec<String> = forms.iter().map(ToString::to_string).collect();
    let width = shown.iter().map(String::len).max().unwrap_or(0);
    let mut text = String::new();
    for f in &shown {
        let _ = writeln!(text, "{f:<width$} >= 0");
    }
    let json = json!({
        "family": seq.family().to_string(),
        "n": seq.n(),
        "word": seq.word(),
        "k": k,
        "s": s,
        "bound": bound,
        "forms": forms,
    });
    Ok(Outcome::ok(text, json))
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 3,
    }
}

fn verify(common: &Common, args: &VerifyArgs) -> CmdResult {
    let seq = sequence(common)?;
    let wants = |c: Check| args.check == c || args.check == Check::All;
    let mut reports: Vec<VerificationReport> = Vec::new();
    if wants(Check::StepIdentities) {
        let bounds = StepBounds { max_size: args.max_size, max_halves: args.max_halves, ..StepBounds::default() };
        reports.push(check_step_identities(&seq, &bounds).map_err(err)?);
    }
    if wants(Check::Closure) {
        let charges: Vec<usize> = match args.k {
            Some(k) => vec![k],
            None => (1..=seq.n()).collect(),
        };
        for k in charges {
            reports.push(check_closure_equality(&seq, args.s, k, args.depth).map_err(err)?);
        }
    }
    if wants(Check::Image) {
        let mut bounds = ImageBounds::for_weight(args.max_weight);
        if let Some(b) = args.bound {
            bounds.max_size = b;
        }
        if let Some(m) = args.max_s {
            bounds.max_s = m;
        }
        reports.push(check_image_equality(&seq, args.max_weight, &bounds).map_err(err)?);
    }
    if wants(Check::Positivity) {
        reports.push(check_positivity(&seq, args.depth, args.max_s.unwrap_or(2)).map_err(err)?);
    }
    if wants(Check::Axioms) {
        let sample: Vec<LatticeElement> = enumerate_image(&seq, args.depth).map_err(err)?.into_iter().collect();
        reports.push(check_crystal_axioms(&seq, &sample));
    }
    let status = reports.iter().fold(Status::Pass, |acc, r| acc.combine(r.status));
    let mut text = String::new();
    for r in &reports {
        let status = serde_json::to_value(r.status).map_err(err)?;
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let counts: Vec<String> = r.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(text, "{:<16} {:<12} {}", r.check, status.as_str().unwrap_or(""), params.join(" "));
        let _ = writeln!(text, "{:<16} {}", "", counts.join(" "));
        for w in &r.witnesses {
            let _ = writeln!(text, "{:<16} - {w}", "");
        }
    }
    let json = json!({ "status": status, "reports": reports });
    Ok(Outcome { text, json, code: exit_code(status) })
}

fn element_json(seq: &AdaptedSequence, a: &LatticeElement) -> Value {
    let double: Vec<Value> =
        a.to_pairs(seq).into_iter().map(|(d, v)| json!({ "s": d.s, "l": d.l, "value": v })).collect();
    json!({ "single": a, "double": double })
}

fn element_text(seq: &AdaptedSequence, a: &LatticeElement) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let single: Vec<String> = a.entries().map(|(j, v)| format!("x{j}={v}")).collect();
    let double: Vec<String> = a.to_pairs(seq).into_iter().map(|(d, v)| format!("{d}={v}")).collect();
    format!("{}  |  {}", single.join(" "), double.join(" "))
}

fn crystal(common: &Common, action: &CrystalAction) -> CmdResult {
    let seq = sequence(common)?;
    match action {
        CrystalAction::Apply { ops } => {
            let parsed: Vec<Op> = ops
                .iter()
                .flat_map(|s| s.split_whitespace())
                .map(|t| t.parse::<Op>())
                .collect::<Result<_, _>>()
                .map_err(err)?;
            let result = apply_ops(&seq, &LatticeElement::zero(), &parsed).map_err(err)?;
            let (text, value) = match &result {
                Some(a) => (element_text(&seq, a), element_json(&seq, a)),
                None => ("annihilated".to_string(), Value::Null),
            };
            Ok(Outcome::ok(format!("{text}\n"), json!({ "ops": parsed, "result": value })))
        }
        CrystalAction::Enumerate { depth } => {
            let image = enumerate_image(&seq, *depth).map_err(err)?;
            let mut text = format!("{} elements\n", image.len());
            for a in &image {
                let _ = writeln!(text, "{}", element_text(&seq, a));
            }
            let elements: Vec<Value> = image.iter().map(|a| element_json(&seq, a)).collect();
            Ok(Outcome::ok(text, json!({ "depth": depth, "count": image.len(), "elements": elements })))
        }
    }
}

fn read_json(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(err)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn build_object(common: &Common, args: &RenderArgs) -> Result<Generator, String> {
    if let Some(path) = &args.from_json {
        return serde_json::from_str(&read_json(path)?).map_err(err);
    }
    let kind = args.kind.ok_or("give an object type (eyd, reyd, wall) or --from-json")?;
    let k = args.k.ok_or("--k is required")?;
    Ok(match kind {
        RenderKind::Eyd => Generator::Eyd(ExtendedYoungDiagram::new(k as i64, args.ys.clone()).map_err(err)?),
        RenderKind::Reyd => {
            let flavor = match family(common)? {
                Family::A2 => ReydFlavor::A2,
                Family::C1 => ReydFlavor::D2Target,
                f => return Err(format!("revised diagrams exist for A2 and C1, not {f}")),
            };
            Generator::Reyd(RevisedEyd::new(flavor, rank(common)?, k, args.t_lo, args.ys.clone()).map_err(err)?)
        }
        RenderKind::Wall => {
            let wall_family = match family(common)? {
                Family::A2 => WallFamily::A2,
                Family::C1 => WallFamily::D2,
                f => return Err(format!("walls exist for A2 and C1, not {f}")),
            };
            let kind = WallKind::new(wall_family, rank(common)?, k).map_err(err)?;
            Generator::Wall(YoungWall::new(kind, args.halves.clone()).map_err(err)?)
        }
    })
}

fn render(common: &Common, args: &RenderArgs) -> CmdResult {
    let object = build_object(common, args)?;
    let json = serde_json::to_value(&object).map_err(err)?;
    Ok(Outcome::ok(object.render(), json))
}

fn enumerate(common: &Common, k: usize, bound: u32, s: Option<usize>) -> CmdResult {
    let seq = sequence(common)?;
    let mut objects: Vec<Generator> = generators::enumerate(&seq, k, bound).map_err(err)?.into_iter().collect();
    objects.sort_by_key(Generator::size);
    let mut text = format!("{} objects\n", objects.len());
    let mut items = Vec::new();
    for g in &objects {
        let form = s.map(|s| g.assign(&seq, s)).transpose().map_err(err)?;
        let _ = writeln!(text, "size {}", g.size());
        text.push_str(&g.render());
        if let Some(f) = &form {
            let _ = writeln!(text, "L = {f}");
        }
        text.push('\n');
        items.push(json!({ "object": g, "size": g.size(), "form": form }));
    }
    Ok(Outcome::ok(text, json!({ "k": k, "bound": bound, "count": objects.len(), "objects": items })))
}
