//! Command-line front end: construction, analysis, chordality deciders,
//! enumeration, and the verification suites, all speaking JSON.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use gfq_core::chordal::{cfk_chordal, is_gfq_chordal, is_nq};
use gfq_core::codec::MatroidDocument;
use gfq_core::enumerate::{enumerate_matroids, OrbitCatalog};
use gfq_core::geometry::{
    construct_hyperoval, construct_mk4, construct_pg_minus_flat, construct_uniform_line,
    projective_geometry,
};
use gfq_core::gpc::{gpc, GpcSpec};
use gfq_core::structure::{dividers, is_round, minimal_dividers, SeparationReport};
use gfq_core::verify::{
    verify_bose, verify_fields, verify_lemma6, verify_lemmas_misc, verify_nq_equals_rq,
    verify_theorem3, verify_theorem4, SuiteReport,
};
use gfq_core::{make_field, Error, Matroid};

#[derive(Parser)]
#[command(name = "gfq", version, about = "Simple GF(q)-representable matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a named matroid as a MatroidDocument.
    Construct {
        #[command(subcommand)]
        which: Construct,
    },
    /// Generalized parallel connection of two documents across a glue flat.
    Gpc {
        file1: String,
        file2: String,
        /// Glue pairs "a=b", comma-separated or repeated.
        #[arg(long, value_delimiter = ',')]
        glue: Vec<String>,
    },
    /// Rank, flats, circuits, roundness, and vertical separations.
    Analyze { file: String },
    /// GF(q)-chordality with a construction or forbidden-minor certificate.
    Chordal {
        file: String,
        /// Reinterpret the point vectors over GF(q) instead of the stated field.
        #[arg(long)]
        q_override: Option<u32>,
    },
    /// Membership in N_q (projective glue at every minimal divider).
    Nq { file: String },
    /// Circuit-level chordality.
    Cfk { file: String },
    /// Run named verification suites; exits nonzero when a suite fails.
    Verify {
        /// theorem3, theorem4-q3, theorem4-q4, lemma6, nq-rq, misc, fields,
        /// bose, or all.
        suite: String,
        /// Catalog files (JSON lines) to reuse instead of re-enumerating.
        #[arg(long)]
        catalog: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count for the sampled q=4 suite.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Orbit catalog of subsets of PG(r-1, q) as JSON lines.
    Enumerate {
        r: usize,
        q: u32,
        #[arg(long)]
        out: Option<String>,
        /// Keep non-spanning orbit representatives too.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// PG(r-1, q).
    Pg { r: usize, q: u32 },
    /// U_{2,k} on a projective line over GF(q).
    UniformLine { k: usize, q: u32 },
    /// The (q+2)-point hyperoval in PG(2, q), q even.
    Hyperoval { q: u32 },
    /// PG(r-1, q) minus a rank-(r-i) coordinate subspace.
    PgMinusFlat { r: usize, i: usize, q: u32 },
    /// The cycle matroid of K_4 over GF(2).
    Mk4,
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
    }
}

fn load_matroid(path: &str) -> Result<Matroid, Error> {
    let text = read_input(path).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let doc: MatroidDocument =
        serde_json::from_str(&text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    doc.decode()
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).unwrap());
}

#[derive(Serialize)]
struct AnalyzeReport {
    q: u32,
    n: usize,
    rank: usize,
    flats_by_rank: Vec<usize>,
    circuits: Vec<Vec<String>>,
    round: bool,
    dividers: Vec<SeparationReport>,
    minimal_dividers: Vec<SeparationReport>,
}

fn analyze(m: &Matroid) -> Result<AnalyzeReport, Error> {
    let flats_by_rank = (0..=m.rank_full())
        .map(|k| m.flats_mask(k).map(|v| v.len()))
        .collect::<Result<Vec<_>, _>>()?;
    let circuits = m
        .circuits()
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect();
    Ok(AnalyzeReport {
        q: m.q(),
        n: m.n(),
        rank: m.rank_full(),
        flats_by_rank,
        circuits,
        round: is_round(m),
        dividers: dividers(m)?,
        minimal_dividers: minimal_dividers(m)?,
    })
}

fn parse_glue(pairs: &[String]) -> Result<Vec<(String, String)>, Error> {
    pairs
        .iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .ok_or_else(|| Error::MalformedDocument(format!("glue pair {p:?} is not a=b")))
        })
        .collect()
}

fn load_catalogs(paths: &[String]) -> Result<Vec<OrbitCatalog>, Error> {
    paths
        .iter()
        .map(|p| {
            let text = read_input(p).map_err(|e| Error::MalformedDocument(e.to_string()))?;
            OrbitCatalog::from_jsonl(&text)
        })
        .collect()
}

fn run_suite(
    name: &str,
    cache: Option<&[OrbitCatalog]>,
    seed: u64,
    samples: usize,
) -> Result<SuiteReport, Error> {
    match name {
        "theorem3" => verify_theorem3(cache),
        "theorem4-q3" => verify_theorem4(3, cache, seed, samples),
        "theorem4-q4" => verify_theorem4(4, cache, seed, samples),
        "lemma6" => verify_lemma6(cache),
        "nq-rq" => verify_nq_equals_rq(cache),
        "misc" => verify_lemmas_misc(cache, seed),
        "fields" => verify_fields(),
        "bose" => verify_bose(),
        other => Err(Error::MalformedDocument(format!("unknown suite {other:?}"))),
    }
}

const ALL_SUITES: &[&str] = &[
    "fields",
    "bose",
    "theorem3",
    "theorem4-q3",
    "theorem4-q4",
    "lemma6",
    "nq-rq",
    "misc",
];

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Construct { which } => {
            let m = match which {
                Construct::Pg { r, q } => projective_geometry(r, &make_field(q)?)?,
                Construct::UniformLine { k, q } => construct_uniform_line(k, &make_field(q)?)?,
                Construct::Hyperoval { q } => construct_hyperoval(&make_field(q)?)?,
                Construct::PgMinusFlat { r, i, q } => {
                    construct_pg_minus_flat(r, i, &make_field(q)?)?
                }
                Construct::Mk4 => construct_mk4(&make_field(2)?)?,
            };
            emit(&MatroidDocument::encode(&m));
        }
        Command::Gpc { file1, file2, glue } => {
            let spec = GpcSpec {
                m1: load_matroid(&file1)?,
                m2: load_matroid(&file2)?,
                glue: parse_glue(&glue)?,
            };
            emit(&MatroidDocument::encode(&gpc(&spec)?));
        }
        Command::Analyze { file } => {
            let m = load_matroid(&file)?;
            emit(&analyze(&m)?);
        }
        Command::Chordal { file, q_override } => {
            let m = load_matroid(&file)?;
            let m = match q_override {
                Some(q) => {
                    let field = make_field(q)?;
                    Matroid::new(field, m.points().to_vec(), Some(m.labels().to_vec()))?
                }
                None => m,
            };
            let (member, certificate) = is_gfq_chordal(&m)?;
            emit(&json!({ "q": m.q(), "member": member, "certificate": certificate }));
        }
        Command::Nq { file } => {
            let m = load_matroid(&file)?;
            let (member, evidence) = is_nq(&m)?;
            emit(&json!({ "q": m.q(), "member": member, "certificate": evidence }));
        }
        Command::Cfk { file } => {
            let m = load_matroid(&file)?;
            emit(&json!({ "chordal": cfk_chordal(&m)? }));
        }
        Command::Verify {
            suite,
            catalog,
            seed,
            samples,
        } => {
            let cats = load_catalogs(&catalog)?;
            let cache = if cats.is_empty() {
                None
            } else {
                Some(cats.as_slice())
            };
            let names: Vec<&str> = if suite == "all" {
                ALL_SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for name in names {
                let report = run_suite(name, cache, seed, samples)?;
                all_pass &= report.pass;
                reports.push(report);
            }
            if reports.len() == 1 {
                emit(&reports[0]);
            } else {
                emit(&reports);
            }
            if !all_pass {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Enumerate { r, q, out, all } => {
            let field = make_field(q)?;
            let catalog = enumerate_matroids(r, &field, !all)?;
            let text = catalog.to_jsonl();
            match out {
                Some(path) => {
                    fs::write(&path, &text)
                        .map_err(|e| Error::MalformedDocument(e.to_string()))?;
                    emit(&json!({
                        "written": path,
                        "orbits": catalog.orbits.len(),
                        "group_order": catalog.group_order,
                        "group_checksum": catalog.group_checksum,
                    }));
                }
                None => print!("{text}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let code = match e {
                Error::TooLarge { .. } => 3u8,
                _ => 2u8,
            };
            println!("{}", json!({ "error": e.to_string(), "code": code }));
            ExitCode::from(code)
        }
    }
}
