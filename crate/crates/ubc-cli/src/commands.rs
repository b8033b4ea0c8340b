use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::report::InstanceDigest;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use ubc_core::approx::{bcu_center_heuristic, cinch_up, wcu_center_heuristic};
use ubc_core::exact::{solve_exact, ExactOptions};
use ubc_core::flower::{ell_star_bottleneck, flower_instance, FlowerParams};
use ubc_core::oracle::{brute_force_bcu, brute_force_wcu, pair_decision, topology_bcu, DecisionMode, TopologyOptions, DEFAULT_BUDGET};
use ubc_core::render::{render_svg, RenderOptions, BLUE, BROWN, GRAY, GREEN, RED};
use ubc_core::{io, Instance, Selection};
use ubc_gadgets::{assignment_to_selection, build, bundled, Family, Formula, FormulaLayout, GadgetInstance, RoleTag, RoleTagFile};

/// What a command hands back for the report.
pub struct Outcome {
    pub instance: Option<InstanceDigest>,
    pub result: Value,
    pub params: Map<String, Value>,
    /// Written to `--out` when given, else to stdout together with the report.
    pub report_out: Option<PathBuf>,
}

fn read<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::File { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::File { path: path.display().to_string(), source })
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::File { path: path.display().to_string(), source })
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> CliResult<()> {
    write_text(path, &io::to_json_pretty(value)?)
}

fn value<T: Serialize>(v: &T) -> CliResult<Value> {
    Ok(serde_json::to_value(v).map_err(ubc_core::Error::from)?)
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn solve_exact_cmd(a: &SolveExact) -> CliResult<Outcome> {
    let inst: Instance = read(&a.input)?;
    let defaults = ExactOptions::default();
    let opts = ExactOptions {
        delta: a.delta,
        eps: a.epsilon,
        node_budget: a.budget.unwrap_or(defaults.node_budget),
        max_pair_branches: a.max_pair_branches.unwrap_or(defaults.max_pair_branches),
    };
    let rep = solve_exact(&inst, &opts)?;
    if let Some(p) = &a.selection_out {
        write_json(p, &rep.selection)?;
    }
    Ok(Outcome {
        instance: Some(InstanceDigest::of(&inst)),
        params: params(&[
            ("delta", json!(rep.delta)),
            ("epsilon", json!(rep.eps)),
            ("node_budget", json!(opts.node_budget)),
            ("max_pair_branches", json!(opts.max_pair_branches)),
        ]),
        result: value(&rep)?,
        report_out: a.out.clone(),
    })
}

pub fn approx_cmd(a: &Approx) -> CliResult<Outcome> {
    let inst: Instance = read(&a.input)?;
    let (name, res) = match a.method {
        ApproxMethod::Center => ("center", bcu_center_heuristic(&inst)?),
        ApproxMethod::Cinch => ("cinch", cinch_up(&inst)?),
        ApproxMethod::WcuCenter => ("wcu-center", wcu_center_heuristic(&inst)?),
    };
    if let Some(p) = &a.selection_out {
        write_json(p, &res.selection)?;
    }
    Ok(Outcome {
        instance: Some(InstanceDigest::of(&inst)),
        params: params(&[("method", json!(name))]),
        result: value(&res)?,
        report_out: a.out.clone(),
    })
}

fn decide(inst: &Instance, alpha: f64, trials: Option<u64>, seed: u64) -> CliResult<(Value, Map<String, Value>)> {
    let mode = match trials {
        Some(trials) => DecisionMode::Randomized { trials, seed },
        None => DecisionMode::Exhaustive,
    };
    let d = pair_decision(inst, alpha, mode)?;
    Ok((value(&d)?, params(&[("alpha", json!(alpha)), ("mode", value(&mode)?), ("seed", json!(seed))])))
}

pub fn oracle_cmd(a: &Oracle, seed: u64) -> CliResult<Outcome> {
    let inst: Instance = read(&a.input)?;
    let (result, params) = match (a.mode, a.method) {
        (OracleMode::PairDecision, _) => {
            let alpha = a.alpha.ok_or_else(|| CliError::Usage("--mode pair-decision needs --alpha".into()))?;
            decide(&inst, alpha, a.trials, seed)?
        }
        (OracleMode::Bcu, OracleKind::Topology) => {
            let mut opts = TopologyOptions::default();
            if let Some(b) = a.budget {
                opts.budget = b;
            }
            let r = topology_bcu(&inst, &opts)?;
            (value(&r)?, params(&[("mode", json!("bcu")), ("method", json!("topology")), ("budget", json!(opts.budget)), ("rel_tol", json!(opts.rel_tol))]))
        }
        (mode, _) => {
            let budget = a.budget.unwrap_or(DEFAULT_BUDGET);
            let (name, r) = match mode {
                OracleMode::Wcu => ("wcu", brute_force_wcu(&inst, a.grid, budget)?),
                _ => ("bcu", brute_force_bcu(&inst, a.grid, budget)?),
            };
            (value(&r)?, params(&[("mode", json!(name)), ("method", json!("lattice")), ("grid", json!(a.grid)), ("budget", json!(budget))]))
        }
    };
    Ok(Outcome { instance: Some(InstanceDigest::of(&inst)), result, params, report_out: a.out.clone() })
}

pub fn pair_decision_cmd(a: &PairDecisionArgs, seed: u64) -> CliResult<Outcome> {
    let inst: Instance = read(&a.input)?;
    let (result, params) = decide(&inst, a.alpha, a.trials, seed)?;
    Ok(Outcome { instance: Some(InstanceDigest::of(&inst)), result, params, report_out: a.out.clone() })
}

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::Pairs => Family::Pairs,
        FamilyArg::Segments => Family::Segments,
        FamilyArg::Squares => Family::Squares,
    }
}

fn parse_assignment(s: &str, n: usize) -> CliResult<Vec<bool>> {
    let a: Vec<bool> = s
        .chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            '1' | 'T' | 't' => Ok(true),
            '0' | 'F' | 'f' => Ok(false),
            _ => Err(CliError::Usage(format!("assignment character `{c}` is not 0/1/T/F"))),
        })
        .collect::<CliResult<_>>()?;
    if a.len() != n {
        return Err(CliError::Usage(format!("assignment has {} values for {n} variables", a.len())));
    }
    Ok(a)
}

fn tags_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "gadget".into());
    out.with_file_name(format!("{stem}.tags.json"))
}

pub fn gen_gadget_cmd(a: &GenGadget) -> CliResult<Outcome> {
    let (source, formula, layout): (String, Formula, FormulaLayout) = match (&a.bundled, &a.formula, &a.layout) {
        (Some(name), None, None) => {
            let b = bundled(name)?;
            (format!("bundled:{name}"), b.formula, b.layout)
        }
        (None, Some(f), Some(l)) => (f.display().to_string(), Formula::parse_dimacs(&read_text(f)?)?, read(l)?),
        _ => return Err(CliError::Usage("give either --bundled or both --formula and --layout".into())),
    };
    let fam = family(a.family);
    let g = build(fam, &formula, &layout)?;
    write_json(&a.out, &g.instance)?;
    let tags = a.tags_out.clone().unwrap_or_else(|| tags_path(&a.out));
    write_json(&tags, &g.sidecar())?;
    let mut result = json!({
        "family": fam.name(),
        "alpha_star": g.alpha_star,
        "regions": g.len(),
        "variables": formula.num_vars,
        "clauses": formula.clauses.len(),
        "satisfiable": formula.is_satisfiable().ok(),
        "instance_path": a.out.display().to_string(),
        "tags_path": tags.display().to_string(),
    });
    if let (Some(s), Some(p)) = (&a.assignment, &a.selection_out) {
        let assignment = parse_assignment(s, formula.num_vars)?;
        let sel = assignment_to_selection(&g, &formula, &assignment)?;
        write_json(p, &sel)?;
        result["assignment_satisfies"] = json!(formula.evaluate(&assignment)?);
        result["selection_connected"] = json!(ubc_core::connectivity::connected_at(&sel.points, g.alpha_star, 1e-9));
    }
    Ok(Outcome {
        instance: Some(InstanceDigest::of(&g.instance)),
        result,
        params: params(&[("family", json!(fam.name())), ("source", json!(source)), ("assignment", json!(a.assignment))]),
        report_out: None,
    })
}

pub fn gen_flower_cmd(a: &GenFlower) -> CliResult<Outcome> {
    let eps = a.eps.unwrap_or((a.spacing - 2.0) / 20.0);
    let p = FlowerParams { n: a.n, spacing: a.spacing, eps, big_radius: a.big_radius, chains: !a.rim_only };
    let f = flower_instance(&p)?;
    write_json(&a.out, &f.instance)?;
    if let Some(s) = &a.selection_out {
        write_json(s, &f.ell_star)?;
    }
    let l = a.spacing;
    let result = json!({
        "n": f.n,
        "big_radius": f.big_radius,
        "rim_count": f.rim_count,
        "chain_count": f.chain_count,
        "ell_star_bottleneck": ell_star_bottleneck(&f),
        "sqrt_l2_plus_4": (l * l + 4.0).sqrt(),
        "consecutive": f.consecutive,
        "sag": f.sag,
        "min_clearance": f.min_clearance,
        "instance_path": a.out.display().to_string(),
    });
    Ok(Outcome { instance: Some(InstanceDigest::of(&f.instance)), result, params: params(&[("flower", value(&p)?)]), report_out: None })
}

fn colors_from_tags(tags: &[RoleTag]) -> Vec<[&'static str; 2]> {
    let pick = |lower_first: bool, a: &'static str, b: &'static str| if lower_first { [a, b] } else { [b, a] };
    tags.iter()
        .map(|t| match *t {
            RoleTag::Reference { blue, .. } | RoleTag::Variable { blue, .. } => pick(blue == 0, BLUE, RED),
            RoleTag::ClauseGate { green, .. } => pick(green == 0, GREEN, BROWN),
            _ => [GRAY, GRAY],
        })
        .collect()
}

pub fn render_cmd(a: &Render) -> CliResult<Outcome> {
    let inst: Instance = read(&a.input)?;
    let selection: Option<Selection> = a.selection.as_deref().map(read).transpose()?;
    let candidate_colors = match &a.tags {
        Some(p) => {
            let tags: RoleTagFile = read(p)?;
            let g = GadgetInstance::from_parts(inst.clone(), tags)?;
            Some(colors_from_tags(&g.role_tags))
        }
        None => None,
    };
    let svg = render_svg(&inst, &RenderOptions { selection, alpha: a.alpha, candidate_colors, width_px: a.width })?;
    write_text(&a.out, &svg)?;
    Ok(Outcome {
        instance: Some(InstanceDigest::of(&inst)),
        result: json!({ "svg_path": a.out.display().to_string(), "bytes": svg.len() }),
        params: params(&[("alpha", json!(a.alpha)), ("width", json!(a.width))]),
        report_out: None,
    })
}
