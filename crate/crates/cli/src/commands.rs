use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Value};

use configprob::analytic::{self, ProbabilityResult, SeriesMode};
use configprob::degree::sample_degree_sequence;
use configprob::format;
use configprob::montecarlo::{self, Ensemble, Event, MonteCarloEstimate};
use configprob::oracle::{self, OracleCaps, OracleReport};
use configprob::{DegreeDistribution, DegreeSequence, DirectedDegreeSequence, Error};

use crate::table::{Cell, Table};
use crate::{Cli, Command, Format, Mode};

/// `U` or `U,D`: undirected stub cap and optional directed edge cap.
pub const ORACLE_CAP_ENV: &str = "CONFIGPROB_ORACLE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerifyFailed,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::VerifyFailed => 2,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match cli.command {
        Command::Generate => generate(cli),
        Command::SampleDegrees => sample_degrees(cli),
        Command::Prob => emit_table(cli, prob(cli)?),
        Command::Selfloop => emit_table(cli, selfloop(cli)?),
        Command::Dprob => emit_table(cli, dprob(cli)?),
        Command::EnsembleSize => emit_table(cli, ensemble_size(cli)?),
        Command::Estimate => emit_table(cli, estimate(cli)?),
        Command::Verify => {
            let (table, all_pass) = verify(cli)?;
            emit_table(cli, table)?;
            Ok(if all_pass {
                Outcome::Success
            } else {
                Outcome::VerifyFailed
            })
        }
    }
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn read_degree_file(cli: &Cli) -> Result<Option<String>> {
    cli.degrees
        .as_ref()
        .map(|path| fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))
        .transpose()
}

fn distribution(cli: &Cli) -> Result<(DegreeDistribution, usize)> {
    let spec = cli
        .dist
        .as_deref()
        .ok_or_else(|| anyhow!("give --degrees FILE or --dist SPEC"))?;
    let dist: DegreeDistribution = spec.parse()?;
    let n = cli.vertices.ok_or_else(|| anyhow!("--dist needs --n N"))?;
    Ok((dist, n))
}

fn load_undirected(cli: &Cli) -> Result<DegreeSequence> {
    if let Some(text) = read_degree_file(cli)? {
        let path = cli.degrees.as_ref().unwrap().display();
        return format::parse_degree_sequence(&text).with_context(|| format!("in {path}"));
    }
    let (dist, n) = distribution(cli)?;
    Ok(sample_degree_sequence(&dist, n, cli.seed)?)
}

fn load_directed(cli: &Cli) -> Result<DirectedDegreeSequence> {
    let text = read_degree_file(cli)?
        .ok_or_else(|| anyhow!("directed commands need --degrees FILE with \"in out\" lines"))?;
    let path = cli.degrees.as_ref().unwrap().display();
    format::parse_directed_degree_sequence(&text).with_context(|| format!("in {path}"))
}

fn write_output(cli: &Cli, content: &str) -> Result<()> {
    match &cli.out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn inputs(cli: &Cli) -> Value {
    json!({
        "command": value_name(&cli.command),
        "degrees": cli.degrees.as_ref().map(|p| p.display().to_string()),
        "dist": cli.dist,
        "n": cli.vertices,
        "directed": cli.directed,
        "pair": cli.pair,
        "all_pairs": cli.all_pairs,
        "vertex": cli.vertex,
        "mode": value_name(&cli.mode),
        "trials": cli.trials,
        "seed": cli.seed,
        "sigmas": cli.sigmas,
    })
}

fn emit_table(cli: &Cli, table: Table) -> Result<Outcome> {
    let rendered = match cli.format {
        Format::Text => table.to_text(),
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(inputs(cli)),
    };
    write_output(cli, &rendered)?;
    Ok(Outcome::Success)
}

fn oracle_caps() -> Result<OracleCaps> {
    let mut caps = OracleCaps::default();
    if let Ok(raw) = std::env::var(ORACLE_CAP_ENV) {
        let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
        let parse = |s: &str| {
            s.parse::<u64>()
                .with_context(|| format!("{ORACLE_CAP_ENV}: bad cap {s:?}"))
        };
        match parts.as_slice() {
            [u] => caps.undirected_stubs = parse(u)?,
            [u, d] => {
                caps.undirected_stubs = parse(u)?;
                caps.directed_edges = parse(d)?;
            }
            _ => bail!("{ORACLE_CAP_ENV} must be \"U\" or \"U,D\""),
        }
    }
    Ok(caps)
}

fn pair_arg(cli: &Cli) -> Option<(usize, usize)> {
    cli.pair.as_ref().map(|p| (p[0], p[1]))
}

fn guard_all_pairs(cli: &Cli, n: usize) -> Result<()> {
    if n > cli.max_all_pairs {
        bail!(
            "--all-pairs on N={n} exceeds the limit {} (raise --max-all-pairs)",
            cli.max_all_pairs
        );
    }
    Ok(())
}

fn undirected_pairs(cli: &Cli, n: usize) -> Result<Vec<(usize, usize)>> {
    if let Some((m, v)) = pair_arg(cli) {
        if m == v {
            return Err(anyhow::Error::new(Error::SameVertex { vertex: m })
                .context("for self-loops run `configprob selfloop --vertex S`"));
        }
        return Ok(vec![(m, v)]);
    }
    if cli.all_pairs {
        guard_all_pairs(cli, n)?;
        return Ok((0..n)
            .flat_map(|m| (m + 1..n).map(move |v| (m, v)))
            .collect());
    }
    bail!("give --pair M N or --all-pairs")
}

fn ordered_pairs(cli: &Cli, n: usize) -> Result<Vec<(usize, usize)>> {
    if let Some(p) = pair_arg(cli) {
        return Ok(vec![p]);
    }
    if cli.all_pairs {
        guard_all_pairs(cli, n)?;
        return Ok((0..n).flat_map(|m| (0..n).map(move |v| (m, v))).collect());
    }
    bail!("give --pair M N or --all-pairs")
}

fn value_cell(p: &ProbabilityResult) -> Cell {
    match p.exact() {
        Some(r) => format::rational(r).into(),
        None => Cell::Float(p.value()),
    }
}

/// The three standard evaluations of one event plus the `--mode` selection.
struct Evaluations {
    full: ProbabilityResult,
    first: ProbabilityResult,
    literal: ProbabilityResult,
}

impl Evaluations {
    fn compute(eval: impl Fn(SeriesMode) -> configprob::Result<ProbabilityResult>) -> Result<Self> {
        Ok(Self {
            full: eval(SeriesMode::Full)?,
            first: eval(SeriesMode::Truncated(1))?,
            literal: eval(SeriesMode::PaperLiteral)?,
        })
    }

    fn literal_differs(&self) -> bool {
        match (self.full.exact(), self.literal.exact()) {
            (Some(a), Some(b)) => a != b,
            _ => self.full.value() != self.literal.value(),
        }
    }

    fn selected(&self, mode: Mode) -> &ProbabilityResult {
        match mode {
            Mode::Full => &self.full,
            Mode::FirstOrder => &self.first,
            Mode::PaperLiteral => &self.literal,
        }
    }

    fn cells(&self, mode: Mode) -> Vec<Cell> {
        vec![
            self.full.exact().map(format::rational).into(),
            self.full.value().into(),
            value_cell(&self.first),
            value_cell(&self.literal),
            self.literal_differs().into(),
            value_cell(self.selected(mode)),
        ]
    }
}

const EVAL_COLUMNS: [&str; 6] = [
    "p_full_exact",
    "p_full_float",
    "p_first_order",
    "p_paper_literal",
    "literal_differs",
    "p_selected",
];

fn with_eval_columns(lead: &[&'static str]) -> Table {
    Table::new(lead.iter().copied().chain(EVAL_COLUMNS).collect())
}

fn note_literal(table: &mut Table, differing: usize) {
    if differing > 0 {
        table.notes.push(format!(
            "paper-literal two-term value differs from the full series in {differing} row(s)"
        ));
    }
}

fn prob(cli: &Cli) -> Result<Table> {
    let seq = load_undirected(cli)?;
    let pairs = undirected_pairs(cli, seq.len())?;
    let evals: Vec<Evaluations> = pairs
        .par_iter()
        .map(|&(m, n)| {
            Evaluations::compute(|mode| analytic::connection_probability(&seq, m, n, mode))
        })
        .collect::<Result<_>>()?;
    let mut table = with_eval_columns(&["m", "n"]);
    for ((m, n), e) in pairs.iter().zip(&evals) {
        let mut row = vec![Cell::from(*m), Cell::from(*n)];
        row.extend(e.cells(cli.mode));
        table.push(row);
    }
    note_literal(
        &mut table,
        evals.iter().filter(|e| e.literal_differs()).count(),
    );
    Ok(table)
}

fn selfloop(cli: &Cli) -> Result<Table> {
    let seq = load_undirected(cli)?;
    let vertices: Vec<usize> = match cli.vertex {
        Some(s) => vec![s],
        None => (0..seq.len()).collect(),
    };
    let evals: Vec<Evaluations> = vertices
        .par_iter()
        .map(|&s| Evaluations::compute(|mode| analytic::self_loop_probability(&seq, s, mode)))
        .collect::<Result<_>>()?;
    let mut table = with_eval_columns(&["s", "k_s"]);
    for (&s, e) in vertices.iter().zip(&evals) {
        let mut row = vec![Cell::from(s), Cell::from(seq.degree(s))];
        row.extend(e.cells(cli.mode));
        table.push(row);
    }
    Ok(table)
}

fn dprob(cli: &Cli) -> Result<Table> {
    let dseq = load_directed(cli)?;
    let pairs = ordered_pairs(cli, dseq.len())?;
    let evals: Vec<Evaluations> = pairs
        .par_iter()
        .map(|&(m, n)| {
            Evaluations::compute(|mode| {
                analytic::directed_connection_probability(&dseq, m, n, mode)
            })
        })
        .collect::<Result<_>>()?;
    let mut table = with_eval_columns(&["m", "n"]);
    for ((m, n), e) in pairs.iter().zip(&evals) {
        let mut row = vec![Cell::from(*m), Cell::from(*n)];
        row.extend(e.cells(cli.mode));
        table.push(row);
    }
    Ok(table)
}

fn ensemble_size(cli: &Cli) -> Result<Table> {
    let (n, l, size) = if cli.directed {
        let d = load_directed(cli)?;
        (
            d.len(),
            d.edge_count(),
            analytic::directed_ensemble_log_size(&d),
        )
    } else {
        let s = load_undirected(cli)?;
        (s.len(), s.edge_count(), analytic::ensemble_log_size(&s))
    };
    let mut table = Table::new(vec!["n", "l", "ln_size", "exact_size"]);
    table.push(vec![
        n.into(),
        l.into(),
        size.ln_value.into(),
        size.exact_value.map(|v| v.to_string()).into(),
    ]);
    Ok(table)
}

fn single_event(cli: &Cli) -> Result<Event> {
    match (pair_arg(cli), cli.vertex) {
        (Some((m, n)), None) if cli.directed => Ok(Event::Arc(m, n)),
        (Some((m, n)), None) => {
            if m == n {
                return Err(anyhow::Error::new(Error::SameVertex { vertex: m })
                    .context("use --vertex S for self-loops"));
            }
            Ok(Event::Pair(m, n))
        }
        (None, Some(s)) if !cli.directed => Ok(Event::SelfLoop(s)),
        _ => bail!("give exactly one of --pair M N or --vertex S (self-loops are undirected only)"),
    }
}

fn estimate_row(est: &MonteCarloEstimate) -> Vec<Cell> {
    vec![
        est.event.to_string().into(),
        est.trials.into(),
        est.successes.into(),
        est.p_hat.into(),
        est.std_error.into(),
    ]
}

fn estimate(cli: &Cli) -> Result<Table> {
    let event = single_event(cli)?;
    let est = if cli.directed {
        let d = load_directed(cli)?;
        montecarlo::estimate(Ensemble::Directed(&d), event, cli.trials, cli.seed)?
    } else {
        let s = load_undirected(cli)?;
        montecarlo::estimate(Ensemble::Undirected(&s), event, cli.trials, cli.seed)?
    };
    let mut table = Table::new(vec!["event", "trials", "successes", "p_hat", "std_error"]);
    table.push(estimate_row(&est));
    Ok(table)
}

struct VerifyRow {
    cells: Vec<Cell>,
    pass: bool,
    literal_differs_from_oracle: bool,
}

fn verify_event(
    ensemble: Ensemble<'_>,
    event: Event,
    caps: &OracleCaps,
    trials: u64,
    seed: u64,
    sigmas: f64,
) -> Result<VerifyRow> {
    let (full, literal, oracle): (
        ProbabilityResult,
        Option<ProbabilityResult>,
        configprob::Result<OracleReport>,
    ) = match (ensemble, event) {
        (Ensemble::Undirected(s), Event::Pair(m, n)) => (
            analytic::connection_probability(s, m, n, SeriesMode::Full)?,
            Some(analytic::connection_probability(
                s,
                m,
                n,
                SeriesMode::PaperLiteral,
            )?),
            oracle::exact_connection_probability_with(s, m, n, caps),
        ),
        (Ensemble::Undirected(s), Event::SelfLoop(v)) => (
            analytic::self_loop_probability(s, v, SeriesMode::Full)?,
            None,
            oracle::exact_self_loop_probability_with(s, v, caps),
        ),
        (Ensemble::Directed(d), Event::Arc(m, n)) => (
            analytic::directed_connection_probability(d, m, n, SeriesMode::Full)?,
            None,
            oracle::exact_directed_connection_probability_with(d, m, n, caps),
        ),
        _ => bail!("event {event} does not fit this ensemble"),
    };
    let oracle = match oracle {
        Ok(r) => Some(r),
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let mc = montecarlo::estimate(ensemble, event, trials, seed)?;

    let oracle_agrees = match (&oracle, full.exact()) {
        (None, _) => true,
        (Some(o), Some(exact)) => &o.probability == exact,
        (Some(o), None) => (analytic::rational_to_f64(&o.probability) - full.value()).abs() <= 1e-9,
    };
    let mc_agrees = mc.within(full.value(), sigmas);
    let pass = oracle_agrees && mc_agrees;
    let literal_differs_from_oracle = match (&literal, &oracle) {
        (Some(l), Some(o)) => l.exact().is_some_and(|v| v != &o.probability),
        _ => false,
    };

    let cells = vec![
        event.to_string().into(),
        value_cell(&full),
        full.value().into(),
        literal.as_ref().map(value_cell).unwrap_or(Cell::Empty),
        match &oracle {
            Some(o) => format::rational(&o.probability).into(),
            None => "skipped (cap)".into(),
        },
        mc.p_hat.into(),
        mc.std_error.into(),
        if pass { "PASS" } else { "FAIL" }.into(),
    ];
    Ok(VerifyRow {
        cells,
        pass,
        literal_differs_from_oracle,
    })
}

fn verify(cli: &Cli) -> Result<(Table, bool)> {
    let caps = oracle_caps()?;
    let directed;
    let undirected;
    let (ensemble, events): (Ensemble<'_>, Vec<Event>) = if cli.directed {
        directed = load_directed(cli)?;
        let events = match pair_arg(cli) {
            Some((m, n)) => vec![Event::Arc(m, n)],
            None => {
                guard_all_pairs(cli, directed.len())?;
                let n = directed.len();
                (0..n)
                    .flat_map(|m| (0..n).map(move |v| Event::Arc(m, v)))
                    .collect()
            }
        };
        (Ensemble::Directed(&directed), events)
    } else {
        undirected = load_undirected(cli)?;
        let n = undirected.len();
        let events = match (pair_arg(cli), cli.vertex, cli.all_pairs) {
            (Some(_), _, _) => undirected_pairs(cli, n)?
                .into_iter()
                .map(|(m, v)| Event::Pair(m, v))
                .collect(),
            (None, Some(s), _) => vec![Event::SelfLoop(s)],
            (None, None, true) => undirected_pairs(cli, n)?
                .into_iter()
                .map(|(m, v)| Event::Pair(m, v))
                .collect(),
            (None, None, false) => {
                guard_all_pairs(cli, n)?;
                let pairs = (0..n).flat_map(|m| (m + 1..n).map(move |v| Event::Pair(m, v)));
                pairs.chain((0..n).map(Event::SelfLoop)).collect()
            }
        };
        (Ensemble::Undirected(&undirected), events)
    };

    let rows: Vec<VerifyRow> = events
        .par_iter()
        .map(|&e| verify_event(ensemble, e, &caps, cli.trials, cli.seed, cli.sigmas))
        .collect::<Result<_>>()?;

    let mut table = Table::new(vec![
        "event",
        "analytic",
        "analytic_float",
        "paper_literal",
        "oracle",
        "mc_p_hat",
        "mc_std_error",
        "status",
    ]);
    let all_pass = rows.iter().all(|r| r.pass);
    let skipped = rows
        .iter()
        .filter(|r| r.cells[4] == Cell::from("skipped (cap)"))
        .count();
    let literal_off = rows
        .iter()
        .filter(|r| r.literal_differs_from_oracle)
        .count();
    for r in rows {
        table.push(r.cells);
    }
    if skipped > 0 {
        table.notes.push(format!(
            "oracle skipped for {skipped} row(s): instance above enumeration cap ({} stubs undirected, {} edges directed)",
            caps.undirected_stubs, caps.directed_edges
        ));
    }
    if literal_off > 0 {
        table.notes.push(format!(
            "paper-literal two-term value disagrees with enumeration in {literal_off} row(s)"
        ));
    }
    table.notes.push(format!(
        "PASS = analytic equals oracle exactly and |mc_p_hat - analytic| <= {} * mc_std_error",
        cli.sigmas
    ));
    Ok((table, all_pass))
}

fn generate(cli: &Cli) -> Result<Outcome> {
    let graph = if cli.directed {
        configprob::sample_directed_configuration(&load_directed(cli)?, cli.seed)
    } else {
        configprob::sample_configuration(&load_undirected(cli)?, cli.seed)
    };
    write_output(cli, &format::write_edge_list(&graph, Some(cli.seed)))?;
    let summary = format!(
        "N={} L={} self_loops={} multi_edges={}",
        graph.vertex_count(),
        graph.edge_count(),
        graph.self_loop_count(),
        graph.multi_edge_count()
    );
    if cli.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(Outcome::Success)
}

fn sample_degrees(cli: &Cli) -> Result<Outcome> {
    let (dist, n) = distribution(cli)?;
    let seq = sample_degree_sequence(&dist, n, cli.seed)?;
    write_output(cli, &format::write_degrees(&seq))?;
    Ok(Outcome::Success)
}
