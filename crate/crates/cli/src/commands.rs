use std::io::Write;
use std::path::Path;

use hybrid_trust::topology::format::{parse_topology, write_topology};
use hybrid_trust::{
    build_fig1_example, classify, enumerate_paths, propagate_routes, run_alpha_sweep, run_trust_variation, AsGraph64,
    AsId, CostModel, RandomStream,
};

use crate::config::ScenarioConfig;
use crate::error::{CliError, CliResult};

/// Which cost models `example-paths` reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelChoice {
    Both,
    Direct,
    Recommended,
}

impl ModelChoice {
    pub fn models(self) -> &'static [CostModel] {
        match self {
            ModelChoice::Both => &CostModel::ALL,
            ModelChoice::Direct => &[CostModel::DirectSum],
            ModelChoice::Recommended => &[CostModel::Recommended],
        }
    }
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().from_writer(out)
}

/// Costs of every A→H path of the built-in example under the chosen
/// models, then one `best:<model>` row per model with the route A selects.
pub fn example_paths<W: Write>(choice: ModelChoice, out: W) -> CliResult<()> {
    let g = build_fig1_example::<f64>();
    let (a, h) = (AsId::parse("A"), AsId::parse("H"));
    let paths = enumerate_paths(&g, &a, &h, g.node_count())?;
    let mut w = csv_writer(out);
    w.write_record(["path", "model", "cost"])?;
    for &model in choice.models() {
        for p in &paths {
            let cost = model.path_cost(&g, p)?;
            w.write_record([p.to_string(), model.name().to_string(), format!("{cost:.4}")])?;
        }
    }
    for &model in choice.models() {
        let routes = propagate_routes(&g, &h, model)?;
        let best = routes
            .get(&a)
            .ok_or_else(|| CliError::Runtime(format!("A has no route to H under {model}")))?;
        w.write_record([
            best.as_path.to_string(),
            format!("best:{}", model.name()),
            format!("{:.4}", best.cost),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn trust_variation<W: Write>(cfg: &ScenarioConfig, out: W) -> CliResult<()> {
    let series = run_trust_variation::<f64>(&cfg.variation_config())?;
    let mut w = csv_writer(out);
    w.write_record(["step", "t1", "tau", "cost_direct", "cost_recommended"])?;
    for (k, s) in series.iter().enumerate() {
        w.write_record([
            k.to_string(),
            format!("{:.6}", s.t1.value()),
            format!("{:.6}", s.tau.value()),
            format!("{:.6}", s.cost_direct),
            format!("{:.6}", s.cost_recommended),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn alpha_sweep<W: Write>(cfg: &ScenarioConfig, workers: Option<usize>, out: W) -> CliResult<()> {
    let sweep = cfg.sweep_config();
    sweep.validate().map_err(|e| CliError::Config(e.to_string()))?;
    let result = run_alpha_sweep::<f64>(&sweep, workers)?;
    let mut w = csv_writer(out);
    w.write_record([
        "alpha",
        "degree_target",
        "mean_realized_degree",
        "mean_failure",
        "std_failure",
        "replicates",
    ])?;
    for c in &result.cells {
        w.write_record([
            c.alpha.to_string(),
            c.degree_target.to_string(),
            format!("{:.6}", c.mean_realized_degree),
            format!("{:.6}", c.mean_failure_rate),
            format!("{:.6}", c.std_failure_rate),
            c.replicates.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// A thinned grid world with roles and sampled direct trust.
pub fn topology_generate<W: Write>(cfg: &ScenarioConfig, mut out: W) -> CliResult<()> {
    let sweep = cfg.sweep_config();
    let grid = &sweep.grid;
    let g: AsGraph64 =
        hybrid_trust::simulation::build_world(&sweep, grid.target_avg_degree, &RandomStream::from_seed(grid.seed))?;
    out.write_all(write_topology(&g).as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Parses a topology file; on success writes a one-line summary.
pub fn topology_validate<W: Write>(path: &Path, mut out: W) -> CliResult<()> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
    let g = parse_topology::<f64>(&text).map_err(|e| {
        let lines: Vec<String> = e
            .diagnostics
            .iter()
            .map(|d| format!("{}:{}: {}", path.display(), d.line, d.message))
            .collect();
        CliError::Runtime(lines.join("\n"))
    })?;
    writeln!(
        out,
        "{}: ok, {} nodes, {} edges, average degree {:.3}",
        path.display(),
        g.node_count(),
        g.edge_count(),
        g.average_degree()
    )?;
    Ok(())
}

/// Evaluates the `[trust]` tree: branch values and the combined trust,
/// each with its band on the five-step scale.
pub fn trust_tree<W: Write>(cfg: &ScenarioConfig, out: W) -> CliResult<()> {
    let (tree, weights) = cfg.trust_tree()?;
    let mut w = csv_writer(out);
    w.write_record(["component", "value", "band"])?;
    for (name, rate) in [
        ("inherent", tree.inherent_trust()),
        ("observed", tree.observed_trust()),
        ("universal", tree.evaluate(weights)),
    ] {
        w.write_record([
            name.to_string(),
            format!("{:.6}", rate.value()),
            classify(rate).label().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
