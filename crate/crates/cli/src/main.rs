//! `edgeideal`: Betti tables, generators and theorem sweeps for the edge
//! ideals of small graphs.
//!
//! Exit status: 0 on success, 1 when a (non-probe) claim failed, 2 on any
//! error (bad input, unmet hypotheses, unknown claims).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use edgeideal::graphs::Graph;
use edgeideal::groebner::{buchberger, colon_ideal};
use edgeideal::ideals::{
    apply_eta, apply_phi, build_ideal, colon_generators_combinatorial, colon_hypotheses, edge_polynomial, EdgePolyKind, IdealGenerators,
    IdealKind,
};
use edgeideal::resolution::{betti_table_koszul, betti_table_minimal, betti_table_schreyer, BettiTable};
use edgeideal::ring::{Field, FieldVisitor, MonomialOrder, PolyRing, RingSpec};
use edgeideal::theorems::{self, CheckConfig, SweepConfig, SweepReport, Verdict};

#[derive(Parser)]
#[command(name = "edgeideal", version, about = "Exact Betti tables and theorem checks for edge ideals of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded Betti table of S/I for one graph.
    Betti(BettiArgs),
    /// Sweep claims over all small graphs and report.
    Verify(VerifyArgs),
    /// Print generators, a Gröbner basis, a colon ideal or a Phi/eta image.
    Ideal(IdealArgs),
    /// List the claim registry.
    Claims,
}

/// Exactly one graph source.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Named family: path:n, cycle:n, complete:n, complete_bipartite:a,b,
    /// claw, diamond, paw, empty:n; join with `+` for disjoint unions.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    graph6: Option<String>,
    /// Edge-list file: vertex count, then one `i j` pair per line.
    #[arg(long, value_name = "PATH")]
    edges: Option<PathBuf>,
}

impl Input {
    fn graph(&self) -> Result<Graph> {
        if let Some(f) = &self.family {
            return Ok(Graph::family(f)?);
        }
        if let Some(s) = &self.graph6 {
            return Ok(Graph::from_graph6(s)?);
        }
        let path = self.edges.as_ref().expect("clap enforces one input");
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(Graph::from_edge_list(&text)?)
    }
}

#[derive(Args)]
struct RingArgs {
    /// Characteristic of the coefficient field: 0 or a prime.
    #[arg(long = "char", env = "EDGEIDEAL_CHAR", default_value_t = theorems::DEFAULT_CHARACTERISTIC)]
    characteristic: u64,
    #[arg(long, default_value = "degrevlex")]
    order: MonomialOrder,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    /// Schreyer frame, Betti numbers from the constant parts.
    Schreyer,
    /// Schreyer frame with unit entries cancelled.
    Minimal,
    /// Koszul homology strand by strand; partial up to --j-max.
    Koszul,
}

#[derive(Args)]
struct BettiArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, visible_alias = "kind", default_value = "parity")]
    ideal: IdealKind,
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Oracle::Schreyer)]
    oracle: Oracle,
    /// Internal-degree bound for the Koszul oracle [default: 2n].
    #[arg(long)]
    j_max: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated claim ids, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    claims: Vec<String>,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    #[command(flatten)]
    ring: RingArgs,
    /// Worker threads for the sweep.
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write the JSON-lines report to this file.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Show {
    Gens,
    Gb,
}

#[derive(Args)]
struct IdealArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, visible_alias = "ideal", default_value = "parity")]
    kind: IdealKind,
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long, value_enum, default_value_t = Show::Gens)]
    show: Show,
    /// Edge `u,v`: print generators of I_{G\e} : gbar_e.
    #[arg(long, value_name = "U,V", conflicts_with_all = ["phi", "eta"])]
    colon_edge: Option<String>,
    /// Apply Phi (swap x_i, y_i on the second side of the bipartition).
    #[arg(long, conflicts_with = "eta")]
    phi: bool,
    /// Apply eta (x_i -> x_i + y_i, y_i -> x_i - y_i).
    #[arg(long)]
    eta: bool,
}

struct BettiJob<'a> {
    graph: &'a Graph,
    kind: IdealKind,
    order: MonomialOrder,
    oracle: Oracle,
    j_max: u32,
}

impl FieldVisitor for BettiJob<'_> {
    type Output = Result<BettiTable>;

    fn visit<F: Field>(self, field: F) -> Result<BettiTable> {
        let ring = PolyRing::new(self.graph.n(), field, self.order)?;
        let i = build_ideal(self.kind, self.graph, &ring)?;
        Ok(match self.oracle {
            Oracle::Schreyer => betti_table_schreyer(&i)?,
            Oracle::Minimal => betti_table_minimal(&i)?,
            Oracle::Koszul => betti_table_koszul(&i, self.j_max)?,
        })
    }
}

fn cmd_betti(args: &BettiArgs) -> Result<bool> {
    let g = args.input.graph()?;
    if args.ideal == IdealKind::Custom {
        bail!("betti needs a graph ideal kind");
    }
    let spec = RingSpec::new(g.n(), args.ring.characteristic, args.ring.order)?;
    let job = BettiJob { graph: &g, kind: args.ideal, order: args.ring.order, oracle: args.oracle, j_max: args.j_max.unwrap_or(2 * g.n() as u32) };
    let table = spec.dispatch(job)?;
    let mut out = std::io::stdout().lock();
    match args.format {
        Format::Json => writeln!(out, "{}", table.to_json())?,
        Format::Text => {
            writeln!(out, "{} ideal of {} over characteristic {}", args.ideal, g.to_graph6(), args.ring.characteristic)?;
            write!(out, "{}", table.diagram())?;
            writeln!(out, "{}", table.to_json())?;
        }
    }
    Ok(true)
}

enum IdealOp {
    Generators,
    Colon(usize, usize),
    Phi,
    Eta,
}

struct IdealJob<'a> {
    graph: &'a Graph,
    kind: IdealKind,
    order: MonomialOrder,
    op: IdealOp,
    show: Show,
}

impl FieldVisitor for IdealJob<'_> {
    type Output = Result<String>;

    fn visit<F: Field>(self, field: F) -> Result<String> {
        let g = self.graph;
        let ring = PolyRing::new(g.n(), field, self.order)?;
        let gens: IdealGenerators<F> = match self.op {
            IdealOp::Generators => build_ideal(self.kind, g, &ring)?,
            IdealOp::Colon(u, v) => {
                if self.kind != IdealKind::Parity {
                    bail!("the colon construction applies to the parity ideal (--kind parity)");
                }
                let h = colon_hypotheses(g, (u, v))?;
                match self.show {
                    Show::Gens => colon_generators_combinatorial(g, (u, v), &ring)?,
                    // the colon computed from scratch, not from the formula
                    Show::Gb => {
                        let gbar = edge_polynomial(EdgePolyKind::GBar, u, v, &ring)?;
                        colon_ideal(&build_ideal(IdealKind::Parity, &h, &ring)?, &gbar)?
                    }
                }
            }
            IdealOp::Phi => {
                let (v1, v2) = g.bipartition().ok_or_else(|| anyhow!("Phi needs a bipartite graph"))?;
                build_ideal(self.kind, g, &ring)?.map(|p| apply_phi(p, &v1, &v2))?
            }
            IdealOp::Eta => build_ideal(self.kind, g, &ring)?.map(apply_eta)?,
        };
        Ok(match self.show {
            Show::Gens => gens.to_string(),
            Show::Gb => buchberger(&gens).basis().iter().map(|p| format!("{p}\n")).collect(),
        })
    }
}

fn parse_edge(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(',').ok_or_else(|| anyhow!("expected an edge `u,v`, got `{s}`"))?;
    Ok((a.trim().parse().context("edge endpoint")?, b.trim().parse().context("edge endpoint")?))
}

fn cmd_ideal(args: &IdealArgs) -> Result<bool> {
    let g = args.input.graph()?;
    if args.kind == IdealKind::Custom {
        bail!("ideal needs a graph ideal kind");
    }
    let op = match (&args.colon_edge, args.phi, args.eta) {
        (Some(e), _, _) => {
            let (u, v) = parse_edge(e)?;
            IdealOp::Colon(u, v)
        }
        (None, true, _) => IdealOp::Phi,
        (None, false, true) => IdealOp::Eta,
        _ => IdealOp::Generators,
    };
    let spec = RingSpec::new(g.n(), args.ring.characteristic, args.ring.order)?;
    let text = spec.dispatch(IdealJob { graph: &g, kind: args.kind, order: args.ring.order, op, show: args.show })?;
    print!("{text}");
    Ok(true)
}

fn summary_text(rep: &SweepReport) -> String {
    let mut s = format!("sweep over graphs with n <= {} in characteristic {}\n", rep.n_max, rep.characteristic);
    s.push_str(&format!("{:<28} {:<9} {:>8} {:>7} {:>7} {:>8}\n", "claim", "kind", "checked", "passed", "failed", "skipped"));
    for c in &rep.summary {
        let kind = serde_json::to_value(c.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        s.push_str(&format!("{:<28} {:<9} {:>8} {:>7} {:>7} {:>8}\n", c.claim_id, kind, c.checked, c.passed, c.failed, c.skipped));
    }
    for r in rep.reports.iter().filter(|r| r.verdict == Verdict::Fail) {
        let label = if r.is_failure() { "FAIL" } else { "COUNTEREXAMPLE" };
        s.push_str(&format!("{label} {} on {}: {}\n", r.claim_id, r.graph.to_graph6(), r.witness));
    }
    s.push_str(&format!(
        "{}; {} probe counterexamples; {:.0} ms\n",
        if rep.has_failures() { "FAILED" } else { "all claims hold" },
        rep.counterexamples().len(),
        rep.elapsed_ms
    ));
    s
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let ids: Vec<String> = if args.claims.iter().any(|c| c == "all") {
        theorems::claim_ids().into_iter().map(String::from).collect()
    } else {
        args.claims.iter().map(|c| c.trim().to_string()).collect()
    };
    let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
    let config = SweepConfig {
        check: CheckConfig { characteristic: args.ring.characteristic, order: args.ring.order },
        jobs: args.jobs,
    };
    let rep = theorems::sweep(args.n_max, &ids, &config)?;
    let lines = rep.to_json_lines();
    if let Some(path) = &args.report {
        fs::write(path, &lines).with_context(|| format!("writing {}", path.display()))?;
    }
    match args.format {
        Format::Json => print!("{lines}"),
        Format::Text => print!("{}", summary_text(&rep)),
    }
    Ok(!rep.has_failures())
}

fn cmd_claims() -> Result<bool> {
    for c in theorems::registry() {
        let kind = serde_json::to_value(c.kind)?;
        println!("{:<28} {:<9} {}", c.id, kind.as_str().unwrap_or_default(), c.statement);
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Betti(a) => cmd_betti(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Ideal(a) => cmd_ideal(a),
        Command::Claims => cmd_claims(),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
