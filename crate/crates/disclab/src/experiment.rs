//! Named desk-scale experiments with seeds, budgets, and JSON reports.
//!
//! Every experiment is deterministic given (config, seeds, version): randomness
//! comes only from per-seed RNGs, seed workers run isolated, and the report is
//! an ordered merge. Reports carry no floating-point values, so serialised
//! output is reproducible byte for byte; ratios are printed exactly.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::colouring::{colour_components, EdgeColouring};
use crate::connectivity::is_three_connected;
use crate::discrepancy::{
    exact_tree_discrepancy, tree_discrepancy_of_colouring, DEFAULT_COLOURING_ENUM_BUDGET,
};
use crate::dual::extract_separator;
use crate::error::{Error, Result};
use crate::extremal::phi_exact_with_cap;
use crate::extremal::{DEFAULT_PHI_N_CAP, DEFAULT_PHI_R_CAP};
use crate::generators::{gen_complete, gen_grid, gen_hypercube, gen_random_regular};
use crate::graph::Graph;
use crate::separation::{
    exact_separation_number_with_cap, layered_separator, min_cube_boundary_brute,
    separation_lower_bounds,
};
use crate::smallgraphs::connected_graphs_upto_iso;

/// Compiled-in version string for report provenance (git describe at build
/// time, "unknown" outside a git checkout).
pub const VERSION: &str = env!("DISCLAB_GIT_VERSION");

pub const KNOWN_EXPERIMENTS: &[&str] = &[
    "bound-suite",
    "grid-scaling",
    "hypercube-scaling",
    "rrg-discrepancy",
    "phi-tightness",
];

/// Enumeration caps for one experiment run. All must be positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Canonical colourings an exact-discrepancy call may enumerate.
    pub colourings: usize,
    /// Largest vertex count for exact separation-number search.
    pub separation_n: usize,
    /// Accepted moves per adversarial local search.
    pub search_steps: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            colourings: DEFAULT_COLOURING_ENUM_BUDGET,
            separation_n: 25,
            search_steps: 5_000,
        }
    }
}

/// One experiment request: which probe, over what inputs, and how hard to try.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    /// Graph family the probe runs on, where there is a choice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// Integer knobs (sizes, ranges, counts); unknown keys are rejected.
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    pub r: usize,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: &str, r: usize, seeds: Vec<u64>) -> Self {
        ExperimentConfig {
            experiment: experiment.to_string(),
            family: None,
            params: BTreeMap::new(),
            r,
            seeds,
            budgets: Budgets::default(),
            out: None,
        }
    }

    fn allowed_params(experiment: &str) -> &'static [&'static str] {
        match experiment {
            "bound-suite" => &["n-max"],
            "grid-scaling" => &["d", "k-min", "k-max", "colourings-per-seed"],
            "hypercube-scaling" => &["d-min", "d-max", "colourings-per-seed"],
            "rrg-discrepancy" => &["n", "d", "restarts"],
            "phi-tightness" => &["n-min", "n-max"],
            _ => &[],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !KNOWN_EXPERIMENTS.contains(&self.experiment.as_str()) {
            return Err(Error::InvalidSpec(format!(
                "unknown experiment '{}'; known: {}",
                self.experiment,
                KNOWN_EXPERIMENTS.join(", ")
            )));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidSpec("seeds must be nonempty".into()));
        }
        if self.r < 2 {
            return Err(Error::InvalidSpec(format!(
                "experiments need r >= 2 colours, got {}",
                self.r
            )));
        }
        let b = &self.budgets;
        if b.colourings == 0 || b.separation_n == 0 || b.search_steps == 0 {
            return Err(Error::InvalidSpec("budgets must be positive".into()));
        }
        let allowed = Self::allowed_params(&self.experiment);
        for key in self.params.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(Error::InvalidSpec(format!(
                    "unknown parameter '{key}' for {}; allowed: {}",
                    self.experiment,
                    allowed.join(", ")
                )));
            }
        }
        for (key, &v) in &self.params {
            if v <= 0 {
                return Err(Error::InvalidSpec(format!(
                    "parameter '{key}' must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    fn param(&self, key: &str, default: i64) -> i64 {
        self.params.get(key).copied().unwrap_or(default)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemStatus {
    Ok,
    /// Some computation for this item exceeded a configured budget; the
    /// values present are the ones that still fit.
    SkippedBudget,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportItem {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub status: ItemStatus,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    pub values: BTreeMap<String, Value>,
}

impl ReportItem {
    fn ok(label: impl Into<String>) -> Self {
        ReportItem {
            label: label.into(),
            seed: None,
            status: ItemStatus::Ok,
            detail: String::new(),
            values: BTreeMap::new(),
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.values.insert(key.to_string(), value);
    }

    /// Downgrades status according to an error from a sub-computation,
    /// keeping whatever values were already gathered.
    fn absorb_error(&mut self, context: &str, err: &Error) {
        let status = if err.is_budget() {
            ItemStatus::SkippedBudget
        } else {
            ItemStatus::Failed
        };
        // a Failed verdict must not be weakened back to SkippedBudget
        if self.status != ItemStatus::Failed {
            self.status = status;
        }
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(&format!("{context}: {err}"));
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub version: String,
    pub config: ExperimentConfig,
    /// False as soon as any item was budget-skipped or failed.
    pub complete: bool,
    pub items: Vec<ReportItem>,
    pub summary: BTreeMap<String, Value>,
}

impl ExperimentReport {
    fn assemble(cfg: &ExperimentConfig, items: Vec<ReportItem>) -> Self {
        let complete = items.iter().all(|i| i.status == ItemStatus::Ok);
        ExperimentReport {
            experiment: cfg.experiment.clone(),
            version: VERSION.to_string(),
            config: cfg.clone(),
            complete,
            items,
            summary: BTreeMap::new(),
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

fn ratio_value(q: Ratio<i64>) -> Value {
    Value::String(q.to_string())
}

/// Runs one closure per seed on its own thread and concatenates the results
/// in seed order, so the merged item list is deterministic.
fn per_seed_items<F>(seeds: &[u64], f: F) -> Vec<ReportItem>
where
    F: Fn(u64) -> Vec<ReportItem> + Sync,
{
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&seed| scope.spawn(move || f(seed)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("seed worker panicked"))
            .collect()
    })
}

/// Local search for colourings with small max_i(n - c_i): repeated
/// first-improvement single-edge recolour passes from balanced random
/// starts. Returns the best objective value seen and a colouring attaining
/// it. This is a heuristic upper bound on the true minimum; it never
/// certifies optimality.
pub fn adversarial_component_search<R: Rng>(
    g: &Graph,
    r: usize,
    restarts: usize,
    max_moves: usize,
    rng: &mut R,
) -> Result<(usize, EdgeColouring)> {
    if r < 2 {
        return Err(Error::InvalidSpec("search needs r >= 2".into()));
    }
    if restarts == 0 || max_moves == 0 {
        return Err(Error::InvalidSpec("search budgets must be positive".into()));
    }
    let n = g.n();
    let m = g.m();
    let objective = |f: &EdgeColouring| -> Result<usize> {
        let cc = colour_components(g, f)?;
        Ok((1..=r).map(|c| n - cc.count(c)).max().unwrap())
    };
    let mut best: Option<(usize, EdgeColouring)> = None;
    let mut moves_left = max_moves;
    for _ in 0..restarts {
        let mut current = EdgeColouring::random_balanced(r, m, rng);
        let mut value = objective(&current)?;
        'climb: while moves_left > 0 {
            for e in 0..m {
                let old = current.colour_of(e);
                for c in 1..=r {
                    if c == old {
                        continue;
                    }
                    let mut colours = current.colours().to_vec();
                    colours[e] = c;
                    let candidate = EdgeColouring::new(r, colours)?;
                    let v = objective(&candidate)?;
                    if v < value {
                        current = candidate;
                        value = v;
                        moves_left -= 1;
                        continue 'climb;
                    }
                }
            }
            break; // local minimum
        }
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            best = Some((value, current));
        }
        if moves_left == 0 {
            break;
        }
    }
    Ok(best.unwrap())
}

/// Colouring that cycles through the colours in edge order; each class gets
/// within one of m/r edges.
pub fn alternating_colouring(r: usize, m: usize) -> Result<EdgeColouring> {
    EdgeColouring::new(r, (0..m).map(|e| e % r + 1).collect())
}

// ---------------------------------------------------------------------------
// the experiments

/// Exhaustive check of tree discrepancy against the balanced-separation
/// bound (r-1)(s_r - 1) over every connected graph up to n-max vertices.
fn run_bound_suite(cfg: &ExperimentConfig) -> Result<Vec<ReportItem>> {
    let n_max = cfg.param("n-max", 6) as usize;
    let r = cfg.r;
    let mut items = Vec::new();
    for n in 2..=n_max {
        let mut item = ReportItem::ok(format!("n={n}"));
        let graphs = match connected_graphs_upto_iso(n) {
            Ok(list) => list,
            Err(e) => {
                item.absorb_error("catalogue", &e);
                items.push(item);
                continue;
            }
        };
        let mut violations = 0usize;
        let mut max_lhs = i64::MIN;
        let mut min_slack = i64::MAX;
        let mut checked = 0usize;
        for g in &graphs {
            let lhs = match exact_tree_discrepancy(g, r, cfg.budgets.colourings) {
                Ok(rep) => rep.value,
                Err(e) => {
                    item.absorb_error("exact discrepancy", &e);
                    continue;
                }
            };
            let s = match exact_separation_number_with_cap(g, r, cfg.budgets.separation_n) {
                Ok((s, _)) => s,
                Err(e) => {
                    item.absorb_error("exact separation", &e);
                    continue;
                }
            };
            let rhs = (r as i64 - 1) * (s as i64 - 1);
            if lhs > rhs {
                violations += 1;
            }
            max_lhs = max_lhs.max(lhs);
            min_slack = min_slack.min(rhs - lhs);
            checked += 1;
        }
        item.set("graphs", json!(graphs.len()));
        item.set("checked", json!(checked));
        item.set("violations", json!(violations));
        if checked > 0 {
            item.set("max-discrepancy", json!(max_lhs));
            item.set("min-slack", json!(min_slack));
        }
        if violations > 0 {
            item.status = ItemStatus::Failed;
            item.detail.push_str("bound violated");
        }
        items.push(item);
    }
    Ok(items)
}

/// Separation numbers and discrepancy of d-dimensional k-grids as k grows,
/// against the k^(d-1) scale, plus extracted-separator sizes from random
/// colourings.
fn run_grid_scaling(cfg: &ExperimentConfig) -> Result<Vec<ReportItem>> {
    let d = cfg.param("d", 2) as usize;
    let k_min = cfg.param("k-min", 3) as usize;
    let k_max = cfg.param("k-max", 5) as usize;
    let per_seed = cfg.param("colourings-per-seed", 3) as usize;
    if k_min > k_max {
        return Err(Error::InvalidSpec(format!(
            "k-min {k_min} exceeds k-max {k_max}"
        )));
    }
    let r = cfg.r;
    let mut items = Vec::new();
    for k in k_min..=k_max {
        let g = gen_grid(k, d)?;
        let mut item = ReportItem::ok(format!("k={k}"));
        item.set("n", json!(g.n()));
        item.set("m", json!(g.m()));
        item.set("scale", json!((k as u64).pow(d as u32 - 1)));
        match exact_separation_number_with_cap(&g, r, cfg.budgets.separation_n) {
            Ok((s, _)) => {
                item.set("s-exact", json!(s));
                item.set("bound-rhs", json!((r as i64 - 1) * (s as i64 - 1)));
            }
            Err(e) => {
                item.absorb_error("exact separation", &e);
                if let Ok(bounds) = separation_lower_bounds(&g, r) {
                    item.set("s-lower-bound", json!(bounds.best()));
                }
            }
        }
        match exact_tree_discrepancy(&g, r, cfg.budgets.colourings) {
            Ok(rep) => item.set("d-exact", json!(rep.value)),
            Err(e) if e.is_budget() => {
                // too many colourings to enumerate: report a heuristic
                // upper bound from local search, labelled as such
                let mut rng = StdRng::seed_from_u64(cfg.seeds[0]);
                let (obj, _) =
                    adversarial_component_search(&g, r, 3, cfg.budgets.search_steps, &mut rng)?;
                let ub = r as i64 * obj as i64 - (g.n() as i64 - 1);
                item.set("d-upper-heuristic", json!(ub));
            }
            Err(e) => item.absorb_error("exact discrepancy", &e),
        }
        items.push(item);
        items.extend(extraction_items(&g, r, per_seed, &cfg.seeds, &format!("k={k}")));
    }
    Ok(items)
}

/// Separation numbers of hypercubes as the dimension grows. The target scale
/// is 2^d/sqrt(d); to stay in integers the report carries the squared ratio
/// s^2*d/4^d exactly.
fn run_hypercube_scaling(cfg: &ExperimentConfig) -> Result<Vec<ReportItem>> {
    let d_min = cfg.param("d-min", 2) as usize;
    let d_max = cfg.param("d-max", 4) as usize;
    let per_seed = cfg.param("colourings-per-seed", 3) as usize;
    if d_min > d_max {
        return Err(Error::InvalidSpec(format!(
            "d-min {d_min} exceeds d-max {d_max}"
        )));
    }
    let r = cfg.r;
    let mut items = Vec::new();
    for d in d_min..=d_max {
        let g = gen_hypercube(d)?;
        let n = g.n();
        let mut item = ReportItem::ok(format!("d={d}"));
        item.set("n", json!(n));
        item.set("m", json!(g.m()));
        match exact_separation_number_with_cap(&g, r, cfg.budgets.separation_n) {
            Ok((s, _)) => {
                item.set("s-exact", json!(s));
                let ratio_sq = Ratio::new((s * s * d) as i64, 4i64.pow(d as u32));
                item.set("ratio-squared", ratio_value(ratio_sq));
            }
            Err(e) => item.absorb_error("exact separation", &e),
        }
        let layers = crate::generators::hypercube_layers(d);
        match layered_separator(&g, &layers, r) {
            Ok(sep) => item.set("layered-upper", json!(sep.separator_size())),
            Err(e) => item.absorb_error("layered separator", &e),
        }
        match min_cube_boundary_brute(d, n / 2) {
            Ok(b) => item.set("half-cube-boundary", json!(b)),
            Err(e) => item.absorb_error("half-cube boundary", &e),
        }
        items.push(item);
        items.extend(extraction_items(&g, r, per_seed, &cfg.seeds, &format!("d={d}")));
    }
    Ok(items)
}

/// Shared sampling loop: random colourings per seed, each run through the
/// separator extraction pipeline; reports separator sizes.
fn extraction_items(
    g: &Graph,
    r: usize,
    per_seed: usize,
    seeds: &[u64],
    prefix: &str,
) -> Vec<ReportItem> {
    per_seed_items(seeds, |seed| {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut item = ReportItem::ok(format!("{prefix} extraction"));
        item.seed = Some(seed);
        let mut sizes = Vec::new();
        for _ in 0..per_seed {
            let f = EdgeColouring::random(r, g.m(), &mut rng);
            match extract_separator(g, &f) {
                Ok(ext) => sizes.push(ext.separation.separator_size()),
                Err(e) => item.absorb_error("extraction", &e),
            }
        }
        if !sizes.is_empty() {
            item.set("separator-min", json!(sizes.iter().min().unwrap()));
            item.set("separator-max", json!(sizes.iter().max().unwrap()));
            item.set("separator-sizes", json!(sizes));
        }
        vec![item]
    })
}

/// Random d-regular graphs: even-colouring discrepancy against the
/// (d/2 - 1)n + 1 ceiling and adversarial local search against the
/// (d/2r)n floor.
fn run_rrg_discrepancy(cfg: &ExperimentConfig) -> Result<Vec<ReportItem>> {
    let n = cfg.param("n", 40) as usize;
    let d = cfg.param("d", 3) as usize;
    let restarts = cfg.param("restarts", 3) as usize;
    let r = cfg.r;
    let floor = Ratio::new(d as i64, (2 * r) as i64) * Ratio::from_integer(n as i64);
    let floor09 = floor * Ratio::new(9, 10);
    let even_bound = (Ratio::new(d as i64, 2) - 1) * Ratio::from_integer(n as i64) + 1;
    let items = per_seed_items(&cfg.seeds, |seed| {
        let mut item = ReportItem::ok(format!("n={n} d={d}"));
        item.seed = Some(seed);
        let g = match gen_random_regular(n, d, seed) {
            Ok(g) => g,
            Err(e) => {
                item.absorb_error("sampler", &e);
                return vec![item];
            }
        };
        item.set("regular", json!(g.is_regular() == Some(d)));
        match is_three_connected(&g) {
            Ok(t) => item.set("three-connected", json!(t)),
            Err(e) => item.absorb_error("connectivity", &e),
        }
        match alternating_colouring(r, g.m())
            .and_then(|f| tree_discrepancy_of_colouring(&g, &f))
        {
            Ok(rep) => {
                item.set("even-discrepancy", json!(rep.value));
                item.set(
                    "even-within-bound",
                    json!(Ratio::from_integer(rep.value) <= even_bound),
                );
            }
            Err(e) => item.absorb_error("even colouring", &e),
        }
        let mut rng = StdRng::seed_from_u64(seed);
        match adversarial_component_search(&g, r, restarts, cfg.budgets.search_steps, &mut rng) {
            Ok((obj, _)) => {
                item.set("adv-min-max-count", json!(obj));
                item.set(
                    "above-090-floor",
                    json!(Ratio::from_integer(obj as i64) >= floor09),
                );
            }
            Err(e) => item.absorb_error("adversarial search", &e),
        }
        vec![item]
    });
    let mut items = items;
    let mut head = ReportItem::ok("targets");
    head.set("floor", ratio_value(floor));
    head.set("floor-090", ratio_value(floor09));
    head.set("even-bound", ratio_value(even_bound));
    items.insert(0, head);
    Ok(items)
}

/// Minimal clique-cover sizes phi(r, n) for complete graphs, the tree
/// same-colour edge counts their cover colourings allow, and (exhaustively)
/// whether any colouring does better. Reports only; whether the phi - 1
/// level is always reachable stays an open probe.
fn run_phi_tightness(cfg: &ExperimentConfig) -> Result<Vec<ReportItem>> {
    let n_min = cfg.param("n-min", 3) as usize;
    let n_max = cfg.param("n-max", 6) as usize;
    if n_min > n_max {
        return Err(Error::InvalidSpec(format!(
            "n-min {n_min} exceeds n-max {n_max}"
        )));
    }
    let r = cfg.r;
    let mut items = Vec::new();
    for n in n_min..=n_max {
        let mut item = ReportItem::ok(format!("n={n}"));
        let cover = match phi_exact_with_cap(r, n, DEFAULT_PHI_R_CAP.max(r), DEFAULT_PHI_N_CAP) {
            Ok(c) => c,
            Err(e) => {
                item.absorb_error("cover search", &e);
                items.push(item);
                continue;
            }
        };
        item.set("phi", json!(cover.k));
        let g = gen_complete(n)?;
        match crate::extremal::clique_cover_colouring(&g, &cover.cover)
            .and_then(|f| colour_components(&g, &f))
        {
            Ok(cc) => {
                let cover_max = (1..=r).map(|c| n - cc.count(c)).max().unwrap();
                item.set("cover-max-count", json!(cover_max));
                item.set("cover-caps-at-phi-minus-1", json!(cover_max <= cover.k - 1));
            }
            Err(e) => item.absorb_error("cover colouring", &e),
        }
        // exhaustive minimum over all colourings of the best same-colour
        // tree edge count, recovered from the exact discrepancy
        match exact_tree_discrepancy(&g, r, cfg.budgets.colourings) {
            Ok(rep) => {
                let min_max = (rep.value + n as i64 - 1) / r as i64;
                item.set("exhaustive-min-max-count", json!(min_max));
                item.set("achieves-phi-minus-1", json!(min_max == cover.k as i64 - 1));
            }
            Err(e) => item.absorb_error("exhaustive minimum", &e),
        }
        items.push(item);
    }
    Ok(items)
}

/// Runs the configured experiment and, when `cfg.out` is set, writes the
/// report there as pretty JSON.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let items = match cfg.experiment.as_str() {
        "bound-suite" => run_bound_suite(cfg)?,
        "grid-scaling" => run_grid_scaling(cfg)?,
        "hypercube-scaling" => run_hypercube_scaling(cfg)?,
        "rrg-discrepancy" => run_rrg_discrepancy(cfg)?,
        "phi-tightness" => run_phi_tightness(cfg)?,
        other => unreachable!("validate admitted unknown experiment {other}"),
    };
    let mut report = ExperimentReport::assemble(cfg, items);
    summarise(&mut report);
    if let Some(path) = &cfg.out {
        std::fs::write(path, report.to_json_string())?;
    }
    Ok(report)
}

/// Headline numbers per experiment, distilled from the item list.
fn summarise(report: &mut ExperimentReport) {
    let items = &report.items;
    let mut summary = BTreeMap::new();
    summary.insert("items".to_string(), json!(items.len()));
    summary.insert(
        "ok-items".to_string(),
        json!(items.iter().filter(|i| i.status == ItemStatus::Ok).count()),
    );
    match report.experiment.as_str() {
        "bound-suite" => {
            let total: u64 = items
                .iter()
                .filter_map(|i| i.values.get("violations").and_then(Value::as_u64))
                .sum();
            summary.insert("violations".to_string(), json!(total));
        }
        "grid-scaling" | "hypercube-scaling" => {
            let s_values: Vec<i64> = items
                .iter()
                .filter_map(|i| i.values.get("s-exact").and_then(Value::as_i64))
                .collect();
            summary.insert(
                "s-nondecreasing".to_string(),
                json!(s_values.windows(2).all(|w| w[0] <= w[1])),
            );
            summary.insert("s-values".to_string(), json!(s_values));
            let d_values: Vec<i64> = items
                .iter()
                .filter_map(|i| i.values.get("d-exact").and_then(Value::as_i64))
                .collect();
            if !d_values.is_empty() {
                summary.insert(
                    "d-nondecreasing".to_string(),
                    json!(d_values.windows(2).all(|w| w[0] <= w[1])),
                );
                summary.insert("d-values".to_string(), json!(d_values));
            }
        }
        "rrg-discrepancy" => {
            let seeds_run = items.iter().filter(|i| i.seed.is_some()).count();
            let above = items
                .iter()
                .filter(|i| i.values.get("above-090-floor") == Some(&json!(true)))
                .count();
            let three = items
                .iter()
                .filter(|i| i.values.get("three-connected") == Some(&json!(true)))
                .count();
            summary.insert("seeds".to_string(), json!(seeds_run));
            summary.insert("above-090-floor".to_string(), json!(above));
            summary.insert("three-connected".to_string(), json!(three));
        }
        "phi-tightness" => {
            let phis: Vec<i64> = items
                .iter()
                .filter_map(|i| i.values.get("phi").and_then(Value::as_i64))
                .collect();
            summary.insert("phi-values".to_string(), json!(phis));
            let tight = items
                .iter()
                .filter(|i| i.values.get("achieves-phi-minus-1") == Some(&json!(true)))
                .count();
            summary.insert("achieves-phi-minus-1".to_string(), json!(tight));
        }
        _ => {}
    }
    report.summary = summary;
}
