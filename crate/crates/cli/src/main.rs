use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use mrfw_core::chartab::{theorem57_check, validate_table, ChartabError};
use mrfw_core::doc::{Document, PremodularDoc, RingDoc, RingRef};
use mrfw_core::mr::mr_extend;
use mrfw_core::obstruction::{
    classify_rank4_mr, obstruct, replay, sweep_mr, ObstructOptions, ObstructionCertificate, Verdict,
};
use mrfw_core::premodular::{degeneracy_class, tannakian_row_obstruction, PremodularData};
use mrfw_core::report::analyze;
use mrfw_core::ring::{detect_mr, fixes, invertibles, FusionRing};

/// Exact workbench for maximal-rank fusion rings.
#[derive(Parser)]
#[command(name = "mrfw", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a ring, character table or premodular document.
    Check { path: String },
    /// One-page analysis of a ring.
    Report {
        path: String,
        /// Emit the analysis as a report document instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the categorification obstruction pipeline.
    Obstruct {
        /// Ring document; with `--sweep` and no path, both rank-4 bases are swept.
        path: Option<String>,
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 60)]
        kappa_max: u64,
        #[arg(long)]
        node_cap: Option<u64>,
        #[arg(long)]
        enumeration_cap: Option<u64>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Re-run a stored certificate and compare every step.
        #[arg(long, value_name = "CERT", conflicts_with_all = ["path", "sweep"])]
        replay: Option<String>,
        /// Write the document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gagola condition versus MR structure for a character table.
    Gagola { table: String },
    /// S-matrix and degeneracy class of premodular data.
    Smatrix { data: String },
    /// Adjoin a self-dual object to an integral ring.
    Extend {
        base: String,
        #[arg(long)]
        kappa: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn corpus_dir() -> PathBuf {
    std::env::var_os("MRFW_CORPUS")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
}

/// A path on disk, else a corpus entry by name with or without `.json`.
fn resolve(arg: &str) -> Result<PathBuf> {
    let p = PathBuf::from(arg);
    if p.is_file() {
        return Ok(p);
    }
    let dir = corpus_dir();
    for cand in [dir.join(arg), dir.join(format!("{arg}.json"))] {
        if cand.is_file() {
            return Ok(cand);
        }
    }
    bail!("no such document: {arg} (corpus at {})", dir.display())
}

fn load(arg: &str) -> Result<Document> {
    let path = resolve(arg)?;
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    Document::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_ring_doc(arg: &str) -> Result<RingDoc> {
    Ok(load(arg)?.into_ring()?)
}

fn emit(doc: &Document, out: Option<&Path>) -> Result<()> {
    let text = doc.to_canonical();
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn premodular_data(doc: PremodularDoc) -> Result<std::result::Result<PremodularData, String>> {
    let ring_doc = match doc.ring {
        RingRef::Inline(r) => r,
        RingRef::Name(n) => load_ring_doc(&n)?,
    };
    let ring = match ring_doc.raw().into_ring() {
        Ok(r) => r,
        Err(e) => return Ok(Err(e.to_string())),
    };
    let dims = doc.dims.iter().map(|d| d.value()).collect::<Result<Vec<_>, _>>()?;
    Ok(PremodularData::new(ring, &dims, doc.twists).map_err(|e| e.to_string()))
}

fn cmd_check(path: &str) -> Result<u8> {
    match load(path)? {
        Document::Ring(r) => {
            let report = r.raw().validate();
            println!("{report}");
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Document::Chartable(t) => {
            let report = validate_table(&t);
            if report.is_valid() {
                println!("valid");
                return Ok(0);
            }
            for f in &report.failures {
                println!("{}", serde_json::to_string(f)?);
            }
            Ok(1)
        }
        Document::Premodular(p) => match premodular_data(p)? {
            Ok(_) => {
                println!("valid");
                Ok(0)
            }
            Err(e) => {
                println!("{e}");
                Ok(1)
            }
        },
        Document::Report(_) => bail!("check accepts ring, chartable or premodular documents"),
    }
}

fn ring_of(doc: &RingDoc) -> Result<std::result::Result<FusionRing, String>> {
    Ok(doc.raw().into_ring().map_err(|e| e.to_string()))
}

fn cmd_report(path: &str, as_json: bool) -> Result<u8> {
    let doc = load_ring_doc(path)?;
    let ring = match ring_of(&doc)? {
        Ok(r) => r,
        Err(e) => {
            println!("invalid ring: {e}");
            return Ok(1);
        }
    };
    let name = doc.name.clone().or_else(|| Path::new(path).file_stem().map(|s| s.to_string_lossy().into_owned()));
    let report = analyze(&ring, name.as_deref())?;
    if as_json {
        emit(&Document::report(&report), None)?;
    } else {
        print!("{report}");
    }
    Ok(0)
}

struct ObstructArgs {
    path: Option<String>,
    sweep: bool,
    kappa_max: u64,
    opts: ObstructOptions,
    jobs: usize,
    replay: Option<String>,
    out: Option<PathBuf>,
}

fn cmd_obstruct(a: ObstructArgs) -> Result<u8> {
    let jobs = if a.jobs == 0 { std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1) } else { a.jobs };
    if let Some(cert_path) = &a.replay {
        let Document::Report(v) = load(cert_path)? else { bail!("--replay expects a report document") };
        let cert: ObstructionCertificate = serde_json::from_value(v).context("not an obstruction certificate")?;
        let r = replay(&cert)?;
        println!(
            "recorded {:?}, recomputed {:?}, steps {}",
            r.recorded,
            r.recomputed,
            if r.steps_match { "match" } else { "differ" }
        );
        return Ok(if r.ok() { 0 } else { 1 });
    }
    let out = a.out.as_deref();
    match (&a.path, a.sweep) {
        (None, true) => {
            let table = classify_rank4_mr(a.kappa_max, &a.opts, jobs);
            for c in &table.columns {
                eprintln!("{}: survivors {:?}", c.base, c.survivors());
            }
            emit(&Document::report(&table), out)?;
        }
        (Some(p), true) => {
            let ring = match ring_of(&load_ring_doc(p)?)? {
                Ok(r) => r,
                Err(e) => {
                    println!("invalid ring: {e}");
                    return Ok(1);
                }
            };
            let mr = detect_mr(&ring)?.ok_or_else(|| anyhow!("--sweep needs an MR ring to take the base from"))?;
            let base = ring.restrict(&mr.base)?;
            let column = sweep_mr(&base, ring.label(mr.extra), a.kappa_max, &a.opts, jobs)?;
            eprintln!("{}: survivors {:?}", column.base, column.survivors());
            emit(&Document::report(&json!({ "kappa_max": a.kappa_max, "columns": [column] })), out)?;
        }
        (Some(p), false) => {
            let ring = match ring_of(&load_ring_doc(p)?)? {
                Ok(r) => r,
                Err(e) => {
                    println!("invalid ring: {e}");
                    return Ok(1);
                }
            };
            let cert = obstruct(&ring, &a.opts);
            let verdict = match cert.verdict {
                Verdict::Infeasible => "infeasible",
                Verdict::Feasible => "feasible",
                Verdict::Inconclusive => "inconclusive",
            };
            eprintln!("verdict: {verdict} ({})", cert.label);
            emit(&Document::report(&cert), out)?;
        }
        (None, false) => bail!("obstruct needs a ring document, --sweep or --replay"),
    }
    Ok(0)
}

fn cmd_gagola(table: &str) -> Result<u8> {
    let doc = load(table)?;
    let Document::Chartable(t) = doc else { bail!("expected a chartable document, found {}", doc.kind_name()) };
    match theorem57_check(&t) {
        Ok(r) => {
            println!(
                "{}: Gagola character {}, MR structure {}, equivalent: {}",
                r.name.as_deref().unwrap_or("table"),
                if r.gagola_side { "present" } else { "absent" },
                if r.mr_side { "present" } else { "absent" },
                r.equivalent
            );
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(if r.equivalent { 0 } else { 1 })
        }
        Err(e @ (ChartabError::Invalid(_) | ChartabError::Inequivalent(_) | ChartabError::NonIntegral { .. })) => {
            println!("{e}");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_smatrix(path: &str) -> Result<u8> {
    let doc = load(path)?;
    let Document::Premodular(p) = doc else { bail!("expected a premodular document, found {}", doc.kind_name()) };
    let data = match premodular_data(p)? {
        Ok(d) => d,
        Err(e) => {
            println!("{e}");
            return Ok(1);
        }
    };
    let labels = data.ring.labels().to_vec();
    println!("S =");
    for (l, row) in labels.iter().zip(&data.s) {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        println!("  {l}: [{}]", cells.join(", "));
    }
    let deg = degeneracy_class(&data)?;
    let center: Vec<&str> = deg.center.iter().map(|&i| labels[i].as_str()).collect();
    println!("class: {} (Müger center {{{}}})", deg.class, center.join(", "));
    if let Some(mr) = detect_mr(&data.ring)? {
        let inv = invertibles(&data.ring);
        for &g in &inv.elements {
            if g == 0 || !fixes(&data.ring, g, mr.extra) {
                continue;
            }
            let row = tannakian_row_obstruction(&data, &mr, g)?;
            println!("row({}) vs row({}): {}", labels[g], labels[0], row.conclusion);
        }
    }
    Ok(0)
}

fn cmd_extend(base: &str, kappa: u64, out: Option<&Path>) -> Result<u8> {
    let doc = load_ring_doc(base)?;
    let ring = match ring_of(&doc)? {
        Ok(r) => r,
        Err(e) => {
            println!("invalid ring: {e}");
            return Ok(1);
        }
    };
    let ext = mr_extend(&ring, kappa)?.canonicalize();
    let name = doc.name.map(|n| format!("{n}+κ{kappa}"));
    emit(&Document::Ring(RingDoc::from_raw(name, ext.to_raw())), out)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Check { path } => cmd_check(&path),
        Cmd::Report { path, json } => cmd_report(&path, json),
        Cmd::Obstruct { path, sweep, kappa_max, node_cap, enumeration_cap, jobs, replay, out } => {
            let mut opts = ObstructOptions::default();
            if let Some(n) = node_cap {
                opts.node_cap = n;
            }
            if let Some(n) = enumeration_cap {
                opts.enumeration_cap = n;
            }
            cmd_obstruct(ObstructArgs { path, sweep, kappa_max, opts, jobs, replay, out })
        }
        Cmd::Gagola { table } => cmd_gagola(&table),
        Cmd::Smatrix { data } => cmd_smatrix(&data),
        Cmd::Extend { base, kappa, out } => cmd_extend(&base, kappa, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
