//! Command-line driver: classification, canonical forms, perp, tensor rank,
//! censuses and table regeneration, with JSON or text output.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tensor_orbits::census::{
    expected_rank1, subspace_census, tensor_census, verify_summary_table, CensusReport, Group,
    SubspaceCensusMode,
};
use tensor_orbits::linalg::{MatrixJson, SubspaceJson};
use tensor_orbits::orbit::{
    canonical_rep, classify_subspace, signature, InvariantSignature, OrbitLabel, ALL_LABELS,
};
use tensor_orbits::rank::{rank_of_label, subspace_rank, RankSource};
use tensor_orbits::tensor::TensorJson;
use tensor_orbits::{Error, Felt, Field, Subspace};

#[derive(Parser)]
#[command(
    name = "tensor-orbits",
    version,
    about = "Orbit classification in F2 (x) F3 over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    H,
    G,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a subspace or tensor and print its label and invariants.
    Classify {
        /// Field characteristic
        #[arg(long)]
        p: u64,
        /// Extension degree
        #[arg(long, default_value_t = 1)]
        h: u32,
        /// Input path with subspace/tensor JSON, or "-" for stdin
        #[arg(long)]
        input: Option<String>,
        /// Inline matrices like "100|000,010|000" spanning a subspace
        #[arg(long)]
        inline: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the canonical representative subspace of an orbit.
    Canon {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        h: u32,
        /// Orbit label, e.g. o12 or o4T_perp
        #[arg(long)]
        orbit: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Orthogonal complement of a subspace, with both labels.
    Perp {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        h: u32,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        inline: Option<String>,
    },
    /// Tensor rank of a subspace or tensor (oracle for q <= 3, else table).
    Rank {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        h: u32,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        inline: Option<String>,
    },
    /// Exhaustive census of subspaces (--dim) or tensors (--r).
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        h: u32,
        /// Subspace dimension 0..=6
        #[arg(long)]
        dim: Option<usize>,
        /// Third tensor factor dimension
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum, default_value_t = GroupArg::H)]
        group: GroupArg,
        /// Count tensor orbits by label dimension instead of exhausting
        #[arg(long)]
        derived: bool,
        /// Census solids/hyperplanes through the perp of their complement
        #[arg(long)]
        via_perp: bool,
        /// Worker threads for the enumeration shards
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Regenerate the orbit tables at a given q, with verification flags.
    Tables {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        h: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn set_jobs(jobs: Option<usize>) {
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Invalid(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))
    }
}

/// Parse "100|000,010|000": comma-separated 2x3 matrices spanning a
/// subspace, one base-10 digit per entry (prime fields only).
fn parse_inline(f: &Field, text: &str) -> Result<Subspace, Error> {
    let mut vectors: Vec<Vec<Felt>> = Vec::new();
    for part in text.split(',') {
        let rows: Vec<&str> = part.trim().split('|').collect();
        if rows.len() != 2 || rows.iter().any(|r| r.chars().count() != 3) {
            return Err(Error::Invalid(format!(
                "inline matrix {part:?} must be two '|'-separated rows of three digits"
            )));
        }
        let mut v = Vec::with_capacity(6);
        for row in rows {
            for ch in row.chars() {
                let d = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::Invalid(format!("bad digit {ch:?} in {part:?}")))?;
                v.push(f.try_felt(d as u64)?);
            }
        }
        vectors.push(v);
    }
    Subspace::from_vectors(f, 6, &vectors)
}

enum Input {
    Subspace(Subspace),
    Tensor(tensor_orbits::Tensor),
}

fn load_input(f: &Field, input: Option<&str>, inline: Option<&str>) -> Result<Input, Error> {
    match (input, inline) {
        (Some(path), None) => {
            let text = read_input(path)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| {
                Error::Invalid(format!(
                    "JSON parse error at line {} column {}: {e}",
                    e.line(),
                    e.column()
                ))
            })?;
            if value.get("slices").is_some() {
                let tj: TensorJson = serde_json::from_value(value)
                    .map_err(|e| Error::Invalid(format!("tensor JSON: {e}")))?;
                Ok(Input::Tensor(tj.to_tensor(f)?))
            } else if value.get("basis").is_some() {
                let sj: SubspaceJson = serde_json::from_value(value)
                    .map_err(|e| Error::Invalid(format!("subspace JSON: {e}")))?;
                Ok(Input::Subspace(sj.to_subspace(f)?))
            } else if value.get("rows").is_some() {
                let mj: MatrixJson = serde_json::from_value(value)
                    .map_err(|e| Error::Invalid(format!("matrix JSON: {e}")))?;
                let m = mj.to_matrix(f)?;
                Ok(Input::Subspace(Subspace::from_vectors(
                    f,
                    6,
                    &[m.entries().to_vec()],
                )?))
            } else {
                Err(Error::Invalid(
                    "input JSON must contain \"basis\", \"slices\" or \"rows\"".into(),
                ))
            }
        }
        (None, Some(text)) => Ok(Input::Subspace(parse_inline(f, text)?)),
        _ => Err(Error::Invalid(
            "provide exactly one of --input or --inline".into(),
        )),
    }
}

fn to_subspace(f: &Field, input: Input) -> Result<Subspace, Error> {
    match input {
        Input::Subspace(s) => Ok(s),
        Input::Tensor(t) => t.contraction_space(f, 3),
    }
}

fn print_report(rep: &CensusReport, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(rep).unwrap()),
        Format::Table => {
            let scope = match (rep.dim, rep.r) {
                (Some(d), _) => format!("dim {d}"),
                (_, Some(r)) => format!("r = {r}, group {}", rep.group.as_deref().unwrap_or("H")),
                _ => String::new(),
            };
            println!("census q={} {} [{}]", rep.q, scope, rep.mode);
            println!("  total {} (expected {})", rep.total, rep.expected);
            for (l, c) in &rep.counts {
                println!("  {:<10} {c}", l.name());
            }
            for ch in &rep.checks {
                println!(
                    "  [{}] {}: {}",
                    if ch.pass { "ok" } else { "FAIL" },
                    ch.name,
                    ch.detail
                );
            }
        }
    }
}

fn field_json(f: &Field) -> Value {
    json!({"p": f.p(), "h": f.h(), "modulus": f.modulus()})
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Classify {
            p,
            h,
            input,
            inline,
            format,
        } => {
            let f = Field::new(p, h)?;
            let (s, r) = match load_input(&f, input.as_deref(), inline.as_deref())? {
                Input::Tensor(t) => (t.contraction_space(&f, 3)?, Some(t.r())),
                Input::Subspace(s) => (s, None),
            };
            let sig = signature(&f, &s)?;
            let label = classify_subspace(&f, &s)?;
            match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&sig).expect("signature serializes");
                    v["label"] = json!(label.name());
                    if let Some(r) = r {
                        v["r"] = json!(r);
                    }
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
                Format::Table => {
                    println!("label          {}", label.name());
                    println!("dim            {}", sig.dim);
                    println!(
                        "rank distr     ({}, {})",
                        sig.rank_distribution.0, sig.rank_distribution.1
                    );
                    println!(
                        "segre support  {}x{}",
                        sig.segre_support.0, sig.segre_support.1
                    );
                    if let Some(shape) = sig.shape {
                        println!("locus shape    {shape}");
                    }
                }
            }
            Ok(())
        }
        Cmd::Canon {
            p,
            h,
            orbit,
            format,
        } => {
            let f = Field::new(p, h)?;
            let label: OrbitLabel = orbit.parse()?;
            let rep = canonical_rep(&f, label);
            match format {
                Format::Json => {
                    let v = json!({
                        "label": label.name(),
                        "field": field_json(&f),
                        "subspace": SubspaceJson::from_subspace(&rep),
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
                Format::Table => {
                    println!("{} (dim {})", label.name(), rep.dim());
                    for m in rep.basis_matrices(2, 3) {
                        let rows: Vec<String> = (0..2)
                            .map(|i| {
                                m.row(i)
                                    .iter()
                                    .map(|e| e.code().to_string())
                                    .collect::<Vec<_>>()
                                    .join(" ")
                            })
                            .collect();
                        println!("  [{} | {}]", rows[0], rows[1]);
                    }
                }
            }
            Ok(())
        }
        Cmd::Perp {
            p,
            h,
            input,
            inline,
        } => {
            let f = Field::new(p, h)?;
            let s = to_subspace(&f, load_input(&f, input.as_deref(), inline.as_deref())?)?;
            if s.ambient() != 6 {
                return Err(Error::AmbientMismatch {
                    expected: 6,
                    got: s.ambient(),
                });
            }
            let perp = s.perp(&f);
            let v = json!({
                "input_label": classify_subspace(&f, &s)?.name(),
                "label": classify_subspace(&f, &perp)?.name(),
                "subspace": SubspaceJson::from_subspace(&perp),
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            Ok(())
        }
        Cmd::Rank {
            p,
            h,
            input,
            inline,
        } => {
            let f = Field::new(p, h)?;
            let s = to_subspace(&f, load_input(&f, input.as_deref(), inline.as_deref())?)?;
            let (rank, source, witness) = if f.q() <= 3 {
                let res = subspace_rank(&f, &s)?;
                (res.rank, res.source, res.witness)
            } else {
                let label = classify_subspace(&f, &s)?;
                (rank_of_label(label, &f), RankSource::Table, Vec::new())
            };
            let v = json!({
                "rank": rank,
                "source": source.name(),
                "witness": witness.iter().map(MatrixJson::from_matrix).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            Ok(())
        }
        Cmd::Census {
            p,
            h,
            dim,
            r,
            group,
            derived,
            via_perp,
            jobs,
            format,
        } => {
            set_jobs(jobs);
            let f = Field::new(p, h)?;
            match (dim, r) {
                (Some(d), None) => {
                    let mode = if via_perp || (f.q() > 2 && (d == 4 || d == 5)) {
                        SubspaceCensusMode::ViaPerp
                    } else {
                        SubspaceCensusMode::Direct
                    };
                    let rep = subspace_census(&f, d, mode)?;
                    print_report(&rep, format);
                    Ok(())
                }
                (None, Some(r)) => {
                    let g = match group {
                        GroupArg::H => Group::H,
                        GroupArg::G => Group::G,
                    };
                    let total = (f.q() as u128).checked_pow(6 * r as u32);
                    let exhaustive = !derived && total.is_some_and(|t| t <= (1 << 24));
                    let rep = tensor_census(&f, r, g, exhaustive)?;
                    print_report(&rep, format);
                    Ok(())
                }
                _ => Err(Error::Invalid("provide exactly one of --dim or --r".into())),
            }
        }
        Cmd::Tables { p, h, format, jobs } => {
            set_jobs(jobs);
            let f = Field::new(p, h)?;
            run_tables(&f, format)
        }
    }
}

struct TableRow {
    label: OrbitLabel,
    rep: Subspace,
    sig: InvariantSignature,
    tensor_rank: usize,
    rank_source: &'static str,
    verified: bool,
}

/// One row per orbit: invariants of its representative plus verification
/// flags. Rank values are oracle-verified when q <= 3 and table-only above.
fn run_tables(f: &Field, format: Format) -> Result<(), Error> {
    let q = f.q();
    let mut rows = Vec::new();
    for label in ALL_LABELS {
        let rep = canonical_rep(f, label);
        let sig = signature(f, &rep)?;
        let classified = classify_subspace(f, &rep)?;
        let expected_n1 = expected_rank1(label, q);
        let tensor_rank = rank_of_label(label, f);
        let (rank_source, rank_ok) = if q <= 3 {
            let oracle = subspace_rank(f, &rep)?;
            ("oracle", oracle.rank == tensor_rank)
        } else {
            ("table", true)
        };
        let verified = classified == label && sig.rank_distribution.0 == expected_n1 && rank_ok;
        rows.push(TableRow {
            label,
            rep,
            sig,
            tensor_rank,
            rank_source,
            verified,
        });
    }
    let summary = verify_summary_table(f)?;

    match format {
        Format::Json => {
            let orbits: Vec<Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "label": row.label.name(),
                        "dim": row.label.dim(),
                        "rank1_points": row.sig.rank_distribution.0,
                        "rank_distribution": [row.sig.rank_distribution.0, row.sig.rank_distribution.1],
                        "segre_support": [row.sig.segre_support.0, row.sig.segre_support.1],
                        "shape": row.sig.shape.map(|s| s.to_string()),
                        "tensor_rank": row.tensor_rank,
                        "rank_source": row.rank_source,
                        "verified": row.verified,
                        "rep": SubspaceJson::from_subspace(&row.rep),
                    })
                })
                .collect();
            let v = json!({
                "q": q,
                "field": field_json(f),
                "orbits": orbits,
                "summary": summary,
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        Format::Table => {
            println!("orbit tables over GF({q})");
            let mut by_dim: BTreeMap<usize, Vec<&TableRow>> = BTreeMap::new();
            for row in &rows {
                by_dim.entry(row.label.dim()).or_default().push(row);
            }
            let dim_names = [
                "trivial",
                "points",
                "lines",
                "planes",
                "solids",
                "hyperplanes",
                "full space",
            ];
            for (d, rows) in by_dim {
                println!("\n{} (dim {d}):", dim_names[d]);
                println!(
                    "  {:<10} {:>8} {:>8} {:>4} {:>7}  status",
                    "orbit", "#rank1", "support", "trk", "src"
                );
                for row in rows {
                    println!(
                        "  {:<10} {:>8} {:>8} {:>4} {:>7}  {}",
                        row.label.name(),
                        row.sig.rank_distribution.0,
                        format!("{}x{}", row.sig.segre_support.0, row.sig.segre_support.1),
                        row.tensor_rank,
                        row.rank_source,
                        if row.verified { "verified" } else { "UNVERIFIED" }
                    );
                }
            }
            println!("\nsummary of contraction rank distributions:");
            let ok = summary.checks.iter().filter(|c| c.pass).count();
            println!("  {}/{} rows verified", ok, summary.checks.len());
            for c in summary.checks.iter().filter(|c| !c.pass) {
                println!("  [FAIL] {}: {}", c.name, c.detail);
            }
        }
    }
    Ok(())
}
