use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use deltay::cycles::{enumerate_cycle_sets, CycleSet};
use deltay::diagram::LinkDiagram;
use deltay::family::{format_sequence, named_family, parse_sequence, replay, Member, Root, Step};
use deltay::graph::{delta_y, Graph, TriangleSite};
use deltay::invariants::{conway_a2, conway_polynomial, linking_number};
use deltay::spatial::{PLEmbedding, Projection};
use deltay::verifier::{
    verify_cg1, verify_cg2, verify_corollary, verify_main, verify_nrefine, verify_prop21,
    verify_transfer, IdentityId, IdentityReport,
};
use deltay::weights::{derive_weights, WeightMap};
use deltay::Error;

#[derive(Parser)]
#[command(name = "deltay", version, about = "ΔY-exchange families, cycle weights and Conway-Gordon type identities")]
struct Cli {
    /// Worker threads for trial-level parallelism.
    #[arg(long, global = true, env = "DELTAY_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the graphs obtained from a root by exchanges.
    Families {
        #[arg(long)]
        root: String,
        /// Also allow YΔ-exchanges.
        #[arg(long)]
        include_ydelta: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Derive the weight table of a ΔY-descendant.
    Weights {
        #[arg(long)]
        root: String,
        /// Comma-separated triangles, e.g. `0-1-2,3-4-6`; empty for the root.
        #[arg(long, conflicts_with = "member")]
        sequence: Option<String>,
        /// Family member by name, alias or certificate.
        #[arg(long)]
        member: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a random straight-edge embedding.
    Embed {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariants of a diagram file, or of cycles of an embedding file.
    Invariants {
        #[arg(long, conflicts_with = "embedding", required_unless_present = "embedding")]
        diagram: Option<PathBuf>,
        #[arg(long)]
        embedding: Option<PathBuf>,
        /// Cycle keys such as `0-1-2` or `0-1-2|3-4-5`; default all.
        #[arg(long = "cycle", requires = "embedding")]
        cycles: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check an identity on seeded random embeddings.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphArg {
    /// Family member by name, alias or certificate.
    #[arg(long)]
    member: Option<String>,
    /// Graph file (`graph <name> <n>` header, then `u v` lines).
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    id: String,
    /// Member name, alias or certificate, or `all`.
    #[arg(long)]
    member: Option<String>,
    /// Restricts `--member all` for transfer checks to one root.
    #[arg(long)]
    root: Option<String>,
    #[arg(long, default_value_t = 50)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Include per-term breakdowns in JSON output.
    #[arg(long)]
    details: bool,
}

/// Input problems, reported with exit code 2.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = Result<T, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Families { root, include_ydelta, format } => cmd_families(&root, include_ydelta, format),
        Command::Weights { root, sequence, member, out } => cmd_weights(&root, sequence, member, out),
        Command::Embed { graph, seed, out } => cmd_embed(&graph, seed, out),
        Command::Invariants { diagram, embedding, cycles, format } => {
            cmd_invariants(diagram, embedding, &cycles, format)
        }
        Command::Verify(args) => cmd_verify(&args),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| UsageError(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn read(p: &PathBuf) -> CliResult<String> {
    fs::read_to_string(p).map_err(|e| UsageError(format!("{}: {e}", p.display())))
}

// ---- member lookup ----------------------------------------------------

fn find_member(key: &str) -> Option<(Root, Member)> {
    [Root::K6, Root::K7]
        .into_iter()
        .find_map(|r| named_family(r, true).find(key).map(|m| (r, m.clone())))
}

fn triangle_steps(m: &Member) -> CliResult<Vec<TriangleSite>> {
    m.sequence
        .iter()
        .map(|s| match s {
            Step::DeltaY(t) => Ok(*t),
            Step::YDelta(_) => Err(UsageError(format!(
                "{} is not reachable by ΔY-exchanges alone; no identity applies",
                m.name
            ))),
        })
        .collect()
}

// ---- families ---------------------------------------------------------

fn cmd_families(root: &str, include_ydelta: bool, format: Format) -> CliResult<ExitCode> {
    let root: Root = root.parse()?;
    let fam = named_family(root, include_ydelta);
    let mut s = String::new();
    match format {
        Format::Text => {
            s.push_str("name\torder\tsize\tdelta_y\tsequence\tcertificate\taliases\n");
            for m in &fam.members {
                let seq = if m.sequence.is_empty() { "-".to_string() } else { format_sequence(&m.sequence) };
                let aliases = if m.aliases.is_empty() { "-".to_string() } else { m.aliases.join(",") };
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    m.name,
                    m.graph.vertex_count(),
                    m.graph.edge_count(),
                    if m.delta_y_reachable { "yes" } else { "no" },
                    seq,
                    m.certificate.hex(),
                    aliases
                ));
            }
        }
        Format::Json => {
            for m in &fam.members {
                let v = json!({
                    "name": m.name,
                    "aliases": m.aliases,
                    "order": m.graph.vertex_count(),
                    "size": m.graph.edge_count(),
                    "delta_y": m.delta_y_reachable,
                    "sequence": format_sequence(&m.sequence),
                    "certificate": m.certificate.hex(),
                });
                s.push_str(&v.to_string());
                s.push('\n');
            }
        }
    }
    emit(None, &s)?;
    Ok(ExitCode::SUCCESS)
}

// ---- weights ----------------------------------------------------------

fn cmd_weights(root: &str, sequence: Option<String>, member: Option<String>, out: Option<PathBuf>) -> CliResult<ExitCode> {
    let root: Root = root.parse()?;
    let (name, sites) = match (sequence, member) {
        (_, Some(key)) => {
            let (r, m) = find_member(&key).ok_or_else(|| UsageError(format!("unknown member `{key}`")))?;
            if r != root {
                return Err(UsageError(format!(
                    "identity kind mismatch: {} descends from {r}, not {root}",
                    m.name
                )));
            }
            (Some(m.name.clone()), triangle_steps(&m)?)
        }
        (seq, None) => {
            let steps = parse_sequence(seq.as_deref().unwrap_or(""))?;
            let sites = steps
                .iter()
                .map(|s| match s {
                    Step::DeltaY(t) => Ok(*t),
                    Step::YDelta(_) => Err(UsageError("weight sequences take ΔY steps only".into())),
                })
                .collect::<CliResult<Vec<_>>>()?;
            (None, sites)
        }
    };
    let mut w = derive_weights(root, &sites)?;
    if let Some(n) = name {
        w.host_name = n;
    }
    emit(out.as_ref(), &w.to_text())?;
    Ok(ExitCode::SUCCESS)
}

// ---- embed ------------------------------------------------------------

fn load_graph(arg: &GraphArg) -> CliResult<(String, Graph)> {
    if let Some(key) = &arg.member {
        let (_, m) = find_member(key).ok_or_else(|| UsageError(format!("unknown member `{key}`")))?;
        return Ok((m.name, m.graph));
    }
    let path = arg.graph.as_ref().expect("clap enforces one graph source");
    Ok(Graph::parse(&read(path)?)?)
}

fn cmd_embed(arg: &GraphArg, seed: u64, out: Option<PathBuf>) -> CliResult<ExitCode> {
    let (name, g) = load_graph(arg)?;
    let emb = PLEmbedding::random(&g, seed)?;
    emit(out.as_ref(), &emb.to_text(&name, seed))?;
    Ok(ExitCode::SUCCESS)
}

// ---- invariants -------------------------------------------------------

fn diagram_record(d: &LinkDiagram) -> Value {
    let mut v = json!({
        "components": d.component_count(),
        "crossings": d.crossing_count(),
        "conway": conway_polynomial(d).to_string(),
    });
    if let Ok(a2) = conway_a2(d) {
        v["a2"] = json!(a2);
        v["arf"] = json!(a2.rem_euclid(2));
    }
    if let Ok(lk) = linking_number(d) {
        v["lk"] = json!(lk);
    }
    v
}

fn cmd_invariants(
    diagram: Option<PathBuf>,
    embedding: Option<PathBuf>,
    cycles: &[String],
    format: Format,
) -> CliResult<ExitCode> {
    let mut s = String::new();
    if let Some(p) = diagram {
        let d = LinkDiagram::parse(&read(&p)?)?;
        let rec = diagram_record(&d);
        match format {
            Format::Json => s = format!("{rec}\n"),
            Format::Text => {
                for k in ["components", "crossings", "conway", "a2", "arf", "lk"] {
                    if let Some(v) = rec.get(k) {
                        let v = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
                        s.push_str(&format!("{k}\t{v}\n"));
                    }
                }
            }
        }
        emit(None, &s)?;
        return Ok(ExitCode::SUCCESS);
    }
    let p = embedding.expect("clap enforces one input");
    let (name, _, emb) = PLEmbedding::parse(&read(&p)?)?;
    let proj = Projection::find(&emb)?;
    let sets: Vec<CycleSet> = if cycles.is_empty() {
        enumerate_cycle_sets(emb.graph())
    } else {
        cycles
            .iter()
            .map(|k| {
                let g: CycleSet = k.parse()?;
                if !g.is_in(emb.graph()) {
                    return Err(UsageError(format!("{g} is not a cycle set of {name}")));
                }
                Ok(g)
            })
            .collect::<CliResult<_>>()?
    };
    if format == Format::Text {
        s.push_str("key\tcrossings\tinvariant\tvalue\n");
    }
    for g in sets {
        let d = proj.diagram(&g)?;
        let (inv, value) = match g {
            CycleSet::Knot(_) => ("a2", conway_a2(&d)?),
            CycleSet::Link(_) => ("lk", linking_number(&d)?),
        };
        match format {
            Format::Text => s.push_str(&format!("{g}\t{}\t{inv}\t{value}\n", d.crossing_count())),
            Format::Json => {
                let v = json!({"key": g.to_string(), "crossings": d.crossing_count(), inv: value});
                s.push_str(&format!("{v}\n"));
            }
        }
    }
    emit(None, &s)?;
    Ok(ExitCode::SUCCESS)
}

// ---- verify -----------------------------------------------------------

/// Trial seed from the run seed, the member name and the trial index.
fn trial_seed(seed: u64, member: &str, trial: u64) -> u64 {
    let name = member
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    splitmix(splitmix(seed ^ name) ^ trial)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// What one trial runs on.
#[derive(Clone)]
struct Target {
    name: String,
    graph: Graph,
    weights: Option<WeightMap>,
    /// For transfer checks: the Y created by the last step and the weights
    /// on the graph before it.
    last_step: Option<(deltay::graph::WyeSite, WeightMap)>,
}

fn targets(args: &VerifyArgs, id: IdentityId) -> CliResult<Vec<Target>> {
    let members: Vec<(Root, Member)> = match args.member.as_deref() {
        Some("all") => {
            let roots: Vec<Root> = match (id.root(), &args.root) {
                (Some(r), _) => vec![r],
                (None, Some(r)) => vec![r.parse()?],
                (None, None) => vec![Root::K6, Root::K7],
            };
            roots
                .into_iter()
                .flat_map(|r| named_family(r, false).members.into_iter().map(move |m| (r, m)))
                .filter(|(_, m)| !matches!(id, IdentityId::Transfer | IdentityId::Prop21) || !m.sequence.is_empty())
                .filter(|(r, m)| {
                    !matches!(id, IdentityId::Cg1 | IdentityId::Cg2 | IdentityId::Nrefine1 | IdentityId::Nrefine2)
                        || m.graph == r.graph()
                })
                .collect()
        }
        Some(key) => vec![find_member(key).ok_or_else(|| UsageError(format!("unknown member `{key}`")))?],
        None => match id.root() {
            Some(r) => vec![(r, named_family(r, false).members[0].clone())],
            None => return Err(UsageError(format!("{id} needs --member"))),
        },
    };
    let mut out = Vec::new();
    for (root, m) in members {
        if let Some(r) = id.root() {
            if r != root {
                return Err(UsageError(format!(
                    "identity kind mismatch: {id} applies to {r}-descendants, {} descends from {root}",
                    m.name
                )));
            }
        }
        let sites = triangle_steps(&m)?;
        let needs_root = matches!(id, IdentityId::Cg1 | IdentityId::Cg2 | IdentityId::Nrefine1 | IdentityId::Nrefine2);
        if needs_root && !sites.is_empty() {
            return Err(UsageError(format!("identity kind mismatch: {id} applies to {root} only")));
        }
        let weights = Some(derive_weights(root, &sites)?);
        let last_step = match sites.split_last() {
            Some((last, before)) if matches!(id, IdentityId::Transfer | IdentityId::Prop21) => {
                let g_delta = replay(&root.graph(), &before.iter().map(|t| Step::DeltaY(*t)).collect::<Vec<_>>())?;
                let (g_y, x) = delta_y(&g_delta, last)?;
                debug_assert_eq!(g_y, m.graph);
                Some((g_y.wye_site(x)?, derive_weights(root, before)?))
            }
            None if matches!(id, IdentityId::Transfer | IdentityId::Prop21) => {
                return Err(UsageError(format!("{id} needs a member with at least one ΔY step")));
            }
            _ => None,
        };
        out.push(Target {
            name: m.name.clone(),
            graph: m.graph.clone(),
            weights,
            last_step,
        });
    }
    Ok(out)
}

fn run_trial(id: IdentityId, t: &Target, seed: u64) -> Result<IdentityReport, Error> {
    let emb = PLEmbedding::random(&t.graph, seed)?;
    let w = t.weights.as_ref();
    match id {
        IdentityId::Cg1 => verify_cg1(&emb, &t.name, seed),
        IdentityId::Cg2 => verify_cg2(&emb, &t.name, seed),
        IdentityId::Nrefine1 | IdentityId::Nrefine2 => verify_nrefine(&emb, &t.name, seed),
        IdentityId::Main1 | IdentityId::Main2 => verify_main(&emb, w.unwrap(), &t.name, seed),
        IdentityId::Cor1 | IdentityId::Cor2 => verify_corollary(&emb, w.unwrap(), &t.name, seed),
        IdentityId::Transfer => {
            let (site, base) = t.last_step.as_ref().unwrap();
            verify_transfer(&emb, site, base, &t.name, seed)
        }
        IdentityId::Prop21 => {
            let (site, _) = t.last_step.as_ref().unwrap();
            verify_prop21(&emb, site, &t.name, seed)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<ExitCode> {
    let id: IdentityId = args.id.parse().map_err(|_| {
        let names: Vec<&str> = IdentityId::ALL.iter().map(|i| i.name()).collect();
        UsageError(format!("unknown identity `{}` (expected one of {})", args.id, names.join(", ")))
    })?;
    let targets = targets(args, id)?;
    let jobs: Vec<(&Target, u64)> = targets
        .iter()
        .flat_map(|t| (0..args.trials).map(move |i| (t, trial_seed(args.seed, &t.name, i))))
        .collect();
    let results: Vec<(&Target, u64, Result<IdentityReport, Error>)> = jobs
        .par_iter()
        .map(|&(t, seed)| (t, seed, run_trial(id, t, seed)))
        .collect();
    let mut s = String::new();
    let mut failed = 0;
    if args.format == Format::Text {
        s.push_str("graph\tidentity\tseed\tlhs\trhs\tverdict\n");
    }
    for (t, seed, r) in &results {
        match (r, args.format) {
            (Ok(rep), Format::Text) => {
                s.push_str(&rep.summary_line());
                s.push('\n');
                for v in &rep.violations {
                    s.push_str(&format!("#\t{v}\n"));
                }
            }
            (Ok(rep), Format::Json) => {
                let mut v = serde_json::to_value(rep).expect("reports serialize");
                if !args.details {
                    v.as_object_mut().unwrap().remove("terms");
                }
                s.push_str(&format!("{v}\n"));
            }
            (Err(e), Format::Text) => s.push_str(&format!("{}\t{id}\t{seed}\t-\t-\tERROR {e}\n", t.name)),
            (Err(e), Format::Json) => {
                let v = json!({"graph": t.name, "identity": id.name(), "seed": seed, "pass": false, "error": e.to_string()});
                s.push_str(&format!("{v}\n"));
            }
        }
        if !matches!(r, Ok(rep) if rep.pass) {
            failed += 1;
        }
    }
    if args.format == Format::Text {
        s.push_str(&format!("# {} of {} passed\n", results.len() - failed, results.len()));
    }
    emit(None, &s)?;
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
