use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use ribbonpoly::enumerate::{self, EnumerateError, Invariant, MapFilter, Witness};
use ribbonpoly::io::{poly_json, EditError, FormatError, MapDocument};
use ribbonpoly::matroid::{MatroidError, Perspective, RankOracle};
use ribbonpoly::polys::{self, IdentityCheck, InvariantError};
use ribbonpoly::{Poly, RibbonGraph};

#[derive(Parser)]
#[command(
    name = "ribbonpoly",
    version,
    about = "Polynomials of graphs on surfaces"
)]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one invariant of a map or embedded graph.
    Compute {
        file: PathBuf,
        #[arg(long, value_parser = parse_invariant)]
        poly: Invariant,
    },
    /// Vertex, edge, face and component counts and the genus.
    Info { file: PathBuf },
    /// Check the identities on one map, on every small map, or on a matroid pair.
    #[command(group(ArgGroup::new("input").required(true).args(["file", "sweep", "source"])))]
    Verify {
        file: Option<PathBuf>,
        /// Every connected map with at most this many edges.
        #[arg(long)]
        sweep: Option<usize>,
        /// Rank table of the source matroid of a perspective.
        #[arg(long, requires = "target")]
        source: Option<PathBuf>,
        /// Rank table of the target matroid.
        #[arg(long, requires = "source")]
        target: Option<PathBuf>,
    },
    /// Delete or contract an edge and write the result.
    #[command(group(ArgGroup::new("op").required(true).args(["delete_embedded", "delete_ribbon", "contract"])))]
    Edit {
        file: PathBuf,
        /// Unmark the edge, keeping the surface.
        #[arg(long, value_name = "EDGE")]
        delete_embedded: Option<String>,
        /// Remove the ribbon; the result lives on its own surface.
        #[arg(long, value_name = "EDGE")]
        delete_ribbon: Option<String>,
        #[arg(long, value_name = "EDGE")]
        contract: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find non-isomorphic maps sharing an invariant.
    Search {
        #[arg(long)]
        edges: usize,
        /// Only maps with exactly `--edges` edges.
        #[arg(long)]
        exact_edges: bool,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        one_vertex: bool,
        #[arg(long)]
        one_face: bool,
        #[arg(long, value_parser = parse_invariant)]
        equal: Invariant,
        /// An invariant that must differ, or `iso` for plain non-isomorphism.
        #[arg(long, default_value = "iso")]
        distinct: String,
    },
}

fn parse_invariant(s: &str) -> Result<Invariant, String> {
    s.parse()
}

enum Failure {
    Input(String),
    Semantic(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Semantic(_) => 3,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        Failure::Semantic(e.to_string())
    }
}

impl From<EditError> for Failure {
    fn from(e: EditError) -> Self {
        match e {
            EditError::Format(f) => f.into(),
            other => Failure::Semantic(other.to_string()),
        }
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        Failure::Semantic(e.to_string())
    }
}

impl From<MatroidError> for Failure {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::Syntax { .. } | MatroidError::IncompleteTable { .. } => {
                Failure::Input(e.to_string())
            }
            other => Failure::Semantic(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command, cli.json) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(f) => {
            let (Failure::Input(msg) | Failure::Semantic(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<MapDocument, Failure> {
    Ok(MapDocument::parse(&read(path)?)?)
}

fn require_map(doc: &MapDocument, what: &str) -> Result<RibbonGraph, Failure> {
    if doc.is_cellular() {
        Ok(doc.graph.clone())
    } else {
        Err(Failure::Semantic(format!(
            "{what} requires a cellularly embedded graph"
        )))
    }
}

fn run(cmd: Command, json: bool) -> Result<Output, Failure> {
    match cmd {
        Command::Compute { file, poly } => compute(&load(&file)?, poly),
        Command::Info { file } => info(&load(&file)?),
        Command::Verify {
            file,
            sweep,
            source,
            target,
        } => match (file, sweep, source.zip(target)) {
            (Some(f), _, _) => verify_map(&require_map(&load(&f)?, "verify")?),
            (_, Some(n), _) => verify_sweep(n),
            (_, _, Some((s, t))) => verify_perspective(&s, &t),
            _ => unreachable!("clap enforces one input"),
        },
        Command::Edit {
            file,
            delete_embedded,
            delete_ribbon,
            contract,
            output,
        } => {
            let text = read(&file)?;
            let doc = MapDocument::parse(&text)?;
            let edited = match (delete_embedded, delete_ribbon, contract) {
                (Some(e), _, _) => doc.delete_embedded(&e)?,
                (_, Some(e), _) => doc.delete_ribbon(&e)?,
                (_, _, Some(e)) => doc.contract(&e)?,
                _ => unreachable!("clap enforces one operation"),
            };
            let as_json = json || text.trim_start().starts_with('{');
            let body = if as_json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&edited.to_json_value()).expect("serializable")
                )
            } else {
                edited.to_text()
            };
            match output {
                Some(path) => {
                    fs::write(&path, &body)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    Ok(Output {
                        text: String::new(),
                        json: json!({ "written": path.display().to_string() }),
                        ok: true,
                    })
                }
                None => Ok(Output {
                    json: edited.to_json_value(),
                    text: body,
                    ok: true,
                }),
            }
        }
        Command::Search {
            edges,
            exact_edges,
            max_vertices,
            connected,
            one_vertex,
            one_face,
            equal,
            distinct,
        } => {
            let distinct = match distinct.as_str() {
                "iso" => None,
                other => Some(parse_invariant(other).map_err(Failure::Input)?),
            };
            let filter = MapFilter {
                connected,
                one_vertex,
                one_face,
                exact_edges,
                max_vertices,
            };
            search(edges, filter, equal, distinct)
        }
    }
}

fn compute(doc: &MapDocument, inv: Invariant) -> Result<Output, Failure> {
    let p: Poly = match inv {
        Invariant::Krushkal => polys::krushkal(
            &doc.embedded()
                .map_err(|e| Failure::Semantic(e.to_string()))?,
        )?,
        Invariant::Tutte => polys::tutte(
            &doc.graph
                .restrict(doc.marked.unwrap_or(doc.graph.all_edges()))
                .map_err(|e| Failure::Semantic(e.to_string()))?,
        )?,
        other => other.compute(&require_map(doc, other.name())?)?,
    };
    Ok(Output {
        text: format!("{p}\n"),
        json: json!({ "invariant": inv.name(), "poly": poly_json(&p) }),
        ok: true,
    })
}

fn info(doc: &MapDocument) -> Result<Output, Failure> {
    let c = doc.graph.counts();
    let genus = doc.graph.genus();
    let canonical = doc.graph.canonical_form().to_string();
    let mut text = format!(
        "vertices: {}\nedges: {}\nfaces: {}\ncomponents: {}\ngenus: {}\ncanonical: {}\n",
        c.v, c.e, c.f, c.c, genus, canonical
    );
    let mut j = json!({ "counts": c, "genus": genus, "canonical": canonical });
    if let Some(m) = doc.marked {
        let names: Vec<&str> = m.iter().map(|i| doc.names[i].as_str()).collect();
        text.push_str(&format!("marked: {}\n", names.join(" ")));
        j["marked"] = json!(names);
    }
    Ok(Output {
        text,
        json: j,
        ok: true,
    })
}

/// Name, outcome, and detail on failure.
type Check = (&'static str, bool, Option<String>);

fn check_all(g: &RibbonGraph) -> Result<Vec<Check>, Failure> {
    let identity = |c: IdentityCheck| (c.name, c.holds(), None);
    let mut out = vec![
        identity(polys::verify_main_theorem(g)?),
        identity(polys::verify_br_reduction(g)?),
        identity(polys::verify_lv_duality(g)?),
        identity(polys::verify_krushkal_duality(g)?),
    ];
    let recovery = Perspective::of_map(g)?.verify_tutte_recovery();
    out.push(("tutte_recovery_source", recovery.source, None));
    out.push((
        "tutte_recovery_target",
        recovery.target,
        recovery.diagnostic,
    ));
    let lemmas = polys::check_lemmas(g)?;
    out.push(("kernel_two_routes", lemmas.kernel_two_routes, None));
    out.push((
        "kernel_is_bond_nullity",
        lemmas.kernel_is_bond_nullity,
        None,
    ));
    out.push(("genus_rank_gap", lemmas.genus_rank_gap, None));
    out.push(("rank_difference", lemmas.rank_difference, None));
    Ok(out)
}

fn verify_map(g: &RibbonGraph) -> Result<Output, Failure> {
    let results = check_all(g)?;
    let ok = results.iter().all(|r| r.1);
    let mut text = String::new();
    for (name, holds, diag) in &results {
        text.push_str(&format!(
            "{name}: {}\n",
            if *holds { "holds" } else { "FAILS" }
        ));
        if let Some(d) = diag {
            text.push_str(&format!("  {d}\n"));
        }
    }
    let json = json!({
        "all_hold": ok,
        "identities": results.iter().map(|(n, h, _)| json!({ "name": n, "holds": h })).collect::<Vec<_>>(),
    });
    Ok(Output { text, json, ok })
}

fn verify_sweep(max_edges: usize) -> Result<Output, Failure> {
    let pool: Vec<RibbonGraph> = enumerate::connected_maps(max_edges)?
        .into_iter()
        .flatten()
        .collect();
    let results: Vec<Vec<Check>> = pool.par_iter().map(check_all).collect::<Result<_, _>>()?;
    let ok = results.iter().flatten().all(|r| r.1);
    let names: Vec<&str> = results
        .first()
        .map(|r| r.iter().map(|x| x.0).collect())
        .unwrap_or_default();
    let mut text = format!("maps checked: {}\n", pool.len());
    for (i, name) in names.iter().enumerate() {
        let passed = results.iter().filter(|r| r[i].1).count();
        text.push_str(&format!("{name}: {passed}/{}\n", pool.len()));
    }
    for (g, r) in pool.iter().zip(&results) {
        for (name, holds, _) in r {
            if !holds {
                text.push_str(&format!("FAILS {name} on {}\n", g.canonical_form()));
            }
        }
    }
    let per_graph: Vec<Value> = pool
        .iter()
        .zip(&results)
        .map(|(g, r)| {
            let ids: serde_json::Map<String, Value> =
                r.iter().map(|(n, h, _)| (n.to_string(), json!(h))).collect();
            json!({ "map": g.canonical_form().to_string(), "edges": g.num_edges(), "identities": ids })
        })
        .collect();
    let json = json!({ "maps_checked": pool.len(), "all_hold": ok, "results": per_graph });
    Ok(Output { text, json, ok })
}

fn verify_perspective(source: &Path, target: &Path) -> Result<Output, Failure> {
    let m = RankOracle::parse_table(&read(source)?)?;
    let mp = RankOracle::parse_table(&read(target)?)?;
    let p = Perspective::new(m, mp)?;
    let report = p.verify_tutte_recovery();
    let tutte = p.tutte();
    let mut text = format!("tutte: {tutte}\n");
    text.push_str(&format!(
        "tutte_recovery_source: {}\n",
        if report.source { "holds" } else { "FAILS" }
    ));
    text.push_str(&format!(
        "tutte_recovery_target: {}\n",
        if report.target { "holds" } else { "FAILS" }
    ));
    if let Some(d) = &report.diagnostic {
        text.push_str(&format!("  {d}\n"));
    }
    let json = json!({
        "tutte": poly_json(&tutte),
        "tutte_recovery_source": report.source,
        "tutte_recovery_target": report.target,
        "all_hold": report.holds(),
    });
    Ok(Output {
        text,
        json,
        ok: report.holds(),
    })
}

fn witness_json(w: &Witness) -> Value {
    let map = |g: &RibbonGraph, form: &dyn std::fmt::Display| json!({ "canonical": form.to_string(), "map": MapDocument::new(g.clone()).to_json_value() });
    let mut j = json!({
        "first": map(&w.first, &w.first_form),
        "second": map(&w.second, &w.second_form),
        "shared": poly_json(&w.shared),
        "mirror_images": w.mirror_images,
        "isolated_padding": w.isolated_padding,
    });
    if let Some((a, b)) = &w.distinct {
        j["distinct"] = json!([poly_json(a), poly_json(b)]);
    }
    j
}

fn search(
    edges: usize,
    filter: MapFilter,
    equal: Invariant,
    distinct: Option<Invariant>,
) -> Result<Output, Failure> {
    let pool = enumerate::all_maps(edges, filter)?;
    let witnesses = enumerate::search_collisions(&pool, equal, distinct)?;
    let mut text = format!(
        "pool: {} maps\nwitnesses: {}\n",
        pool.len(),
        witnesses.len()
    );
    for (i, w) in witnesses.iter().enumerate() {
        text.push_str(&format!(
            "witness {}: {} ~ {}\n",
            i + 1,
            w.first_form,
            w.second_form
        ));
        text.push_str(&format!("  {}: {}\n", equal.name(), w.shared));
        if let (Some(d), Some((a, b))) = (distinct, &w.distinct) {
            text.push_str(&format!("  {}: {} | {}\n", d.name(), a, b));
        }
        if w.mirror_images {
            text.push_str("  mirror images\n");
        }
        if w.isolated_padding {
            text.push_str("  differ only by isolated vertices\n");
        }
    }
    let json = json!({
        "pool": pool.len(),
        "equal": equal.name(),
        "distinct": distinct.map_or("iso", Invariant::name),
        "witnesses": witnesses.iter().map(witness_json).collect::<Vec<_>>(),
    });
    Ok(Output {
        text,
        json,
        ok: true,
    })
}
