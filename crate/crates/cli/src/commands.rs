use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use transys_core::classify::{
    self, classified_label, enumerate_all, enumerate_brute_force, g_transfer_defect, label, sigma3_report,
    t_from_label, verify_main_theorem, Exponent, GeneralizedFactorization, HasseDiagram, LemmaChecks,
};
use transys_core::functors::{check_galois, restrict, right_adjoint, PrimeSplitting};
use transys_core::pair::parse_pair;
use transys_core::parse::ParseError;
use transys_core::transfer::TransferJson;
use transys_core::{Family, FamilySpec, TransferSystem};

use crate::{Cli, DefaultExponent, Format, Verb};

pub const DEFAULT_SEED: u64 = 20240601;

pub struct Output {
    pub stdout: String,
    /// A check found violations.
    pub failed: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, failed: false }
    }
}

/// Renders a parse error with a caret under the offending position.
fn show_parse(e: &ParseError) -> String {
    let col = e.input[..e.position.min(e.input.len())].chars().count();
    format!("{e}\n  {}\n  {}^", e.input, " ".repeat(col))
}

fn parse_family(text: &str) -> Result<Arc<Family>> {
    let spec = FamilySpec::parse(text).map_err(|e| anyhow::anyhow!(show_parse(&e)))?;
    Ok(Arc::new(spec.build().with_context(|| format!("cannot build {spec}"))?))
}

fn parse_label(cli: &Cli) -> Result<Option<GeneralizedFactorization>> {
    let default = match cli.default {
        DefaultExponent::Zero => Exponent::ZERO,
        DefaultExponent::Top => Exponent::Top,
    };
    cli.label
        .as_deref()
        .map(|text| GeneralizedFactorization::parse(text, default).map_err(|e| anyhow::anyhow!(show_parse(&e))))
        .transpose()
}

fn pair_ids(cli: &Cli, family: &Family) -> Result<Vec<(usize, usize)>> {
    cli.pairs
        .iter()
        .map(|p| {
            parse_pair(p, family).map_err(|e| match e {
                transys_core::pair::PairError::Parse(pe) => anyhow::anyhow!(show_parse(&pe)),
                other => anyhow::anyhow!("{p}: {other}"),
            })
        })
        .collect()
}

fn read_input(cli: &Cli) -> Result<String> {
    let mut text = String::new();
    match &cli.input {
        Some(path) => {
            text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        }
        None => {
            std::io::stdin().read_to_string(&mut text).context("reading standard input")?;
        }
    }
    Ok(text)
}

fn read_system(cli: &Cli) -> Result<TransferSystem> {
    TransferSystem::from_json(&read_input(cli)?).context("input system")
}

/// Rejects flag combinations the verb does not take, before any work.
fn validate(cli: &Cli) -> Result<Format> {
    use Verb::*;
    let v = cli.verb;
    let name = format!("{v:?}").to_lowercase();
    let takes_pairs = matches!(v, Label | Query | Close);
    let takes_label = matches!(v, Query);
    let takes_input = matches!(v, Label | Query | Radjoint | Restrict | Split | Merge);
    if !cli.pairs.is_empty() && !takes_pairs {
        bail!("{name} takes no --pair");
    }
    if cli.label.is_some() && !takes_label {
        bail!("{name} takes no --label");
    }
    if cli.input.is_some() && !takes_input {
        bail!("{name} takes no --input");
    }
    if cli.oracle && v != Enumerate {
        bail!("--oracle applies to enumerate only");
    }
    match v {
        Query if cli.pairs.is_empty() => bail!("query needs at least one --pair"),
        Query if cli.label.is_some() && cli.input.is_some() => bail!("query takes --label or --input, not both"),
        Label if !cli.pairs.is_empty() && cli.input.is_some() => bail!("label takes --pair seeds or --input, not both"),
        _ => {}
    }
    if cli.jobs == Some(0) {
        bail!("--jobs must be at least 1");
    }
    let default = match v {
        Close | Radjoint | Restrict | Split | Merge => Format::Json,
        Hasse => Format::Dot,
        _ => Format::Text,
    };
    let format = cli.format.unwrap_or(default);
    if format == Format::Dot && v != Hasse {
        bail!("--format dot applies to hasse only");
    }
    Ok(format)
}

pub fn run(cli: &Cli) -> Result<Output> {
    let format = validate(cli)?;
    if let Some(k) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .context("configuring worker threads")?;
    }
    let family = parse_family(&cli.family)?;
    match cli.verb {
        Verb::Enumerate => enumerate(cli, &family, format),
        Verb::Label => label_verb(cli, &family, format),
        Verb::Query => query(cli, &family, format),
        Verb::Close => {
            let t = TransferSystem::close(&family, pair_ids(cli, &family)?)?;
            Ok(Output::ok(emit_system(&t, format)))
        }
        Verb::Radjoint => {
            let t = read_system(cli)?;
            let r = right_adjoint(&t, &family)?;
            Ok(Output::ok(emit_system(&r, format)))
        }
        Verb::Restrict => {
            let t = read_system(cli)?;
            let r = restrict(&t, &family)?;
            Ok(Output::ok(emit_system(&r, format)))
        }
        Verb::Split => split(cli, &family, format),
        Verb::Merge => merge(cli, &family, format),
        Verb::Hasse => hasse(&family, format),
        Verb::Check => check(cli, &family, format),
    }
}

fn label_text(t: &TransferSystem) -> String {
    match classified_label(t) {
        Some(n) => n.to_string(),
        None => format!("unclassified (nearest label {})", label(t)),
    }
}

fn emit_system(t: &TransferSystem, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", t.to_json()),
        _ => {
            let mut out = format!("family: {}\nlabel: {}\npairs: {}\n", t.family().spec(), label_text(t), t.len());
            for (h, k) in t.non_reflexive_pairs() {
                let _ = writeln!(out, "  {}", t.describe_pair(h, k));
            }
            out
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    format!("{}\n", serde_json::to_string_pretty(value).expect("plain data serializes"))
}

fn enumerate(cli: &Cli, family: &Arc<Family>, format: Format) -> Result<Output> {
    let systems = enumerate_all(family);
    let mut failed = false;
    let oracle = if cli.oracle {
        let brute = enumerate_brute_force(family)?;
        let free = family.pair_count() - family.len();
        let agrees = brute == systems;
        failed = !agrees;
        Some((1usize << free, brute.len(), agrees))
    } else {
        None
    };
    let out = match format {
        Format::Json => {
            let entries: Vec<Value> = systems
                .iter()
                .map(|t| {
                    let n = classified_label(t);
                    json!({
                        "label": n.as_ref().map(ToString::to_string),
                        "system": t.to_json_value(),
                    })
                })
                .collect();
            let mut v = json!({
                "family": family.spec().to_string(),
                "count": systems.len(),
                "systems": entries,
            });
            if let Some((candidates, found, agrees)) = oracle {
                v["oracle"] = json!({ "candidates": candidates, "systems": found, "agrees": agrees });
            }
            to_json(&v)
        }
        _ => {
            let mut out = format!("family: {}\nsystems: {}\n", family.spec(), systems.len());
            for (i, t) in systems.iter().enumerate() {
                let name = classified_label(t).map_or("-".to_string(), |n| n.to_string());
                let _ = writeln!(out, "{i:>4}  {name:<24} {}", classify::describe(t));
            }
            if let Some((candidates, found, agrees)) = oracle {
                let verdict = if agrees { "agrees" } else { "DISAGREES" };
                let _ = writeln!(out, "oracle: {found} systems among {candidates} candidate relations, {verdict}");
            }
            out
        }
    };
    Ok(Output { stdout: out, failed })
}

fn label_verb(cli: &Cli, family: &Arc<Family>, format: Format) -> Result<Output> {
    let t = if cli.pairs.is_empty() {
        TransferSystem::from_json_in(&read_input(cli)?, family).context("input system")?
    } else {
        TransferSystem::close(family, pair_ids(cli, family)?)?
    };
    let n = label(&t);
    let classified = t_from_label(&n, family) == t;
    let out = match format {
        Format::Json => to_json(&json!({
            "family": family.spec().to_string(),
            "label": n.to_string(),
            "classified": classified,
        })),
        _ if classified => format!("{n}\n"),
        _ => format!("{n} (does not classify this system)\n"),
    };
    Ok(Output::ok(out))
}

fn query(cli: &Cli, family: &Arc<Family>, format: Format) -> Result<Output> {
    let ids = pair_ids(cli, family)?;
    let (t, source) = match parse_label(cli)? {
        Some(n) => (t_from_label(&n, family), format!("T^{n}")),
        None => (
            TransferSystem::from_json_in(&read_input(cli)?, family).context("input system")?,
            "input".to_string(),
        ),
    };
    let answers: Vec<bool> = ids.iter().map(|&(h, k)| t.contains(h, k)).collect();
    let out = match format {
        Format::Json => {
            let results: Vec<Value> = cli
                .pairs
                .iter()
                .zip(&answers)
                .map(|(p, a)| json!({ "pair": p, "admissible": a }))
                .collect();
            to_json(&json!({ "family": family.spec().to_string(), "system": source, "results": results }))
        }
        _ => cli
            .pairs
            .iter()
            .zip(&answers)
            .map(|(p, a)| format!("{p} -> {a}\n"))
            .collect(),
    };
    Ok(Output::ok(out))
}

#[derive(Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitJson {
    family: String,
    parts: BTreeMap<u64, TransferJson>,
}

fn split(cli: &Cli, family: &Arc<Family>, format: Format) -> Result<Output> {
    let t = TransferSystem::from_json_in(&read_input(cli)?, family).context("input system")?;
    let splitting = PrimeSplitting::new(family)?;
    let parts = splitting.split(&t)?;
    let out = match format {
        Format::Json => to_json(&SplitJson {
            family: family.spec().to_string(),
            parts: parts.iter().map(|(&p, t)| (p, t.to_json_value())).collect(),
        }),
        _ => parts
            .iter()
            .map(|(p, t)| format!("{p}: {} on {}\n", label_text(t), t.family().spec()))
            .collect(),
    };
    Ok(Output::ok(out))
}

fn merge(cli: &Cli, family: &Arc<Family>, format: Format) -> Result<Output> {
    let value: SplitJson = serde_json::from_str(&read_input(cli)?).context("input parts")?;
    let splitting = PrimeSplitting::new(family)?;
    let mut parts = BTreeMap::new();
    for (p, json) in &value.parts {
        let part = splitting
            .part(*p)
            .with_context(|| format!("{p} is not a prime of {}", family.spec()))?;
        parts.insert(*p, TransferSystem::from_json_value(json, part).with_context(|| format!("part at {p}"))?);
    }
    let t = splitting.merge(&parts)?;
    Ok(Output::ok(emit_system(&t, format)))
}

fn hasse(family: &Arc<Family>, format: Format) -> Result<Output> {
    let d = HasseDiagram::new(&enumerate_all(family))?;
    let out = match format {
        Format::Dot => d.to_dot(),
        Format::Json => format!("{}\n", d.to_json()),
        Format::Text => {
            let mut out = format!("family: {}\nnodes: {}\nedges: {}\n", family.spec(), d.nodes.len(), d.edges.len());
            for &(a, b) in &d.edges {
                let _ = writeln!(out, "  {} < {}", d.nodes[a].name, d.nodes[b].name);
            }
            out
        }
    };
    Ok(Output::ok(out))
}

/// A random closed system: the closure of up to three random pairs.
fn random_system(family: &Arc<Family>, rng: &mut ChaCha8Rng) -> TransferSystem {
    let n = rng.random_range(0..=3);
    let seed: Vec<(usize, usize)> = (0..n)
        .map(|_| family.pair(rng.random_range(0..family.pair_count())))
        .collect();
    TransferSystem::close(family, seed).expect("registry pairs")
}

/// A proper sub-truncation to test the adjunction against.
fn adjunction_partner(family: &Arc<Family>) -> Option<Arc<Family>> {
    let cyclic = family.sub_truncation(|g| g.is_cyclic()).ok();
    let cyclic = cyclic.filter(|c| c.len() < family.len());
    let chosen = cyclic.or_else(|| {
        let top = family.groups().iter().map(|g| g.order()).max()?;
        family.sub_truncation(|g| g.order() < top).ok()
    })?;
    Some(Arc::new(chosen))
}

/// Galois equivalence, triangle identity and maximality on random pairs.
fn adjunction_trials(
    family: &Arc<Family>,
    systems: &[TransferSystem],
    trials: usize,
    seed: u64,
) -> Result<Vec<String>> {
    let Some(sub) = adjunction_partner(family) else {
        return Ok(Vec::new());
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..trials {
        let t = random_system(family, &mut rng);
        let t2 = random_system(&sub, &mut rng);
        let g = check_galois(&t, &t2)?;
        if !g.holds() {
            out.push(format!("trial {i}: Galois sides differ ({} vs {})", g.left, g.right));
        }
        let r = right_adjoint(&t2, family)?;
        if restrict(&r, &sub)? != t2 {
            out.push(format!("trial {i}: restrict after right adjoint is not the identity"));
        }
        let below: Vec<&TransferSystem> = systems
            .iter()
            .filter(|s| restrict(s, &sub).is_ok_and(|u| u.leq(&t2).unwrap_or(false)))
            .collect();
        if below.iter().any(|s| !s.leq(&r).unwrap_or(false)) || !below.contains(&&r) {
            out.push(format!("trial {i}: right adjoint is not the largest system restricting below"));
        }
    }
    Ok(out)
}

/// Meet partners sampled per system; small families are checked exhaustively.
const MEET_SAMPLES: usize = 16;

fn lemma_violations(family: &Arc<Family>, systems: &[TransferSystem], seed: u64) -> Vec<String> {
    let checks = LemmaChecks::new(family);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d656574);
    let mut out = Vec::new();
    for (i, t) in systems.iter().enumerate() {
        for defect in [t.closure_defect(), checks.section_defect(t), checks.product_defect(t), g_transfer_defect(t)]
            .into_iter()
            .flatten()
        {
            out.push(format!("system {i}: {defect}"));
        }
        let partners: Vec<usize> = if systems.len() <= MEET_SAMPLES {
            (0..systems.len()).collect()
        } else {
            (0..MEET_SAMPLES).map(|_| rng.random_range(0..systems.len())).collect()
        };
        for j in partners {
            if let Some(defect) = t.meet(&systems[j]).ok().and_then(|m| m.closure_defect()) {
                out.push(format!("meet of systems {i} and {j}: {defect}"));
            }
        }
    }
    out
}

#[derive(Serialize)]
struct CheckReport {
    family: String,
    count: usize,
    labels: Vec<String>,
    chain_lengths: BTreeMap<u64, usize>,
    violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    colliding: Option<Vec<String>>,
    seed: u64,
    trials: usize,
}

fn check(cli: &Cli, family: &Arc<Family>, format: Format) -> Result<Output> {
    let systems = enumerate_all(family);
    let mut report = match family.spec() {
        FamilySpec::Sigma3 => {
            let r = sigma3_report()?;
            CheckReport {
                family: r.family,
                count: r.count,
                labels: r.labels,
                chain_lengths: r.chain_lengths,
                violations: r.violations,
                colliding: Some(r.colliding),
                seed: cli.seed,
                trials: cli.trials,
            }
        }
        FamilySpec::CycP { .. } | FamilySpec::AbP { .. } | FamilySpec::Cyc { .. } | FamilySpec::Ab { .. } => {
            let r = verify_main_theorem(family)?;
            CheckReport {
                family: r.family,
                count: r.count,
                labels: r.labels,
                chain_lengths: r.chain_lengths,
                violations: r.violations,
                colliding: None,
                seed: cli.seed,
                trials: cli.trials,
            }
        }
        FamilySpec::Custom(_) => CheckReport {
            family: family.spec().to_string(),
            count: systems.len(),
            labels: systems.iter().map(classify::describe).collect(),
            chain_lengths: BTreeMap::new(),
            violations: Vec::new(),
            colliding: None,
            seed: cli.seed,
            trials: cli.trials,
        },
    };
    report.violations.extend(lemma_violations(family, &systems, cli.seed));
    report.violations.extend(adjunction_trials(family, &systems, cli.trials, cli.seed)?);
    let failed = !report.violations.is_empty();
    let out = match format {
        Format::Json => to_json(&report),
        _ => {
            let mut out = format!("family: {}\nsystems: {}\n", report.family, report.count);
            if !report.chain_lengths.is_empty() {
                let chains: Vec<String> = report.chain_lengths.iter().map(|(p, l)| format!("{p}:{l}")).collect();
                let _ = writeln!(out, "chain lengths: {}", chains.join(" "));
                let _ = writeln!(out, "labels: {}", report.labels.join(" "));
            } else {
                for l in &report.labels {
                    let _ = writeln!(out, "  {l}");
                }
            }
            if let Some(c) = &report.colliding {
                let _ = writeln!(out, "colliding under restriction to C1, C2, C3:");
                for s in c {
                    let _ = writeln!(out, "  {s}");
                }
            }
            let _ = writeln!(out, "randomized adjunction: {} trials, seed {}", report.trials, report.seed);
            if report.violations.is_empty() {
                out.push_str("violations: none\nresult: PASS\n");
            } else {
                let _ = writeln!(out, "violations: {}", report.violations.len());
                for v in &report.violations {
                    let _ = writeln!(out, "  {v}");
                }
                out.push_str("result: FAIL\n");
            }
            out
        }
    };
    Ok(Output { stdout: out, failed })
}
