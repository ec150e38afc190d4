//! CLI front end: load or generate complexes, run spectral and Cheeger
//! computations, and drive the verification harness.
//!
//! Reports go to stdout as JSON (exact values as fraction strings, floats at
//! full precision); a human-readable summary goes to stderr. Exit codes:
//! 0 success, 1 failed assertion, 2 input/format error, 3 capacity limit.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use num_traits::Zero;
use sha2::{Digest, Sha256};

use hodge_cheeger::cheeger::{self, CheegerConfig};
use hodge_cheeger::complex::{canonical_json, complex_from_json, complex_to_json, SimplicialComplex};
use hodge_cheeger::error::Error;
use hodge_cheeger::generators::{self, NamedComplex};
use hodge_cheeger::laplacians::{spectral_report, LaplacianKind, LaplacianSpec, Normalization};
use hodge_cheeger::plap;
use hodge_cheeger::verify::{self, Section, SectionReport, Status};

#[derive(Parser)]
#[command(name = "hodge-cheeger", version, about = "Laplacian spectra and Cheeger constants of simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArg {
    /// JSON complex file ({"facets": ...} or {"simplices": ...})
    #[arg(long, conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// built-in generator name (see `gen --list`)
    #[arg(long)]
    gen: Option<String>,
}

#[derive(Args, Clone)]
struct CapacityArgs {
    /// grid candidate cap for the brute-force searches
    /// (env: HODGE_CHEEGER_GRID_LIMIT)
    #[arg(long)]
    grid_limit: Option<u64>,
    /// largest multiplicity bound tried by the stabilization protocol
    #[arg(long)]
    max_m: Option<u32>,
    /// vertex cap for the signed-graph enumeration
    #[arg(long)]
    signed_limit: Option<usize>,
}

impl CapacityArgs {
    fn config(&self) -> CheegerConfig {
        let mut cfg = CheegerConfig::default();
        if let Ok(v) = std::env::var("HODGE_CHEEGER_GRID_LIMIT") {
            if let Ok(v) = v.parse() {
                cfg.grid_candidate_limit = v;
            }
        }
        if let Some(v) = self.grid_limit {
            cfg.grid_candidate_limit = v;
        }
        if let Some(v) = self.max_m {
            cfg.max_m = v;
        }
        cfg.signed_limit_override = self.signed_limit;
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a built-in complex as JSON facets
    Gen {
        /// generator name, e.g. "octahedron" or "boundary_simplex:3"
        name: Option<String>,
        /// write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// list available generators
        #[arg(long)]
        list: bool,
    },
    /// Laplacian spectrum of a complex
    Spectra {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        dim: usize,
        /// up | down | full
        #[arg(long, default_value = "up")]
        kind: String,
        #[arg(long)]
        normalized: bool,
    },
    /// Cheeger constants
    Cheeger {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        dim: Option<usize>,
        /// gap0 | gapd2 | down | z2 | diam
        #[arg(long, default_value = "gap0")]
        which: String,
        /// run D1, D2, D4 and the D3 certificate, asserting equality
        #[arg(long)]
        all_defs: bool,
        /// k for the k-way constant
        #[arg(long, default_value = "1")]
        k: usize,
        #[command(flatten)]
        capacity: CapacityArgs,
    },
    /// p-Laplacian computations
    Plap {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "2.0")]
        p: f64,
        /// max | gap | duality | rough
        #[arg(long, default_value = "max")]
        op: String,
        #[arg(long, default_value = "32")]
        restarts: u32,
        #[arg(long, default_value = "1")]
        seed: u64,
        #[command(flatten)]
        capacity: CapacityArgs,
    },
    /// Run assertion families over a complex or the built-in suite
    Verify {
        #[command(flatten)]
        input: InputArg,
        /// run over the whole built-in suite
        #[arg(long)]
        suite: bool,
        /// comma-separated families, or "all"
        #[arg(long, default_value = "all")]
        sections: String,
        /// worker cap; results are independent of this
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        capacity: CapacityArgs,
    },
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    input_digest: String,
    results: serde_json::Value,
    assertions: Vec<verify::Assertion>,
}

fn digest(k: &SimplicialComplex) -> String {
    let canon = canonical_json(k);
    let mut hasher = Sha256::new();
    hasher.update(canon.as_bytes());
    format!("{:x}", hasher.finalize())
}

fn load_input(arg: &InputArg) -> anyhow::Result<NamedComplex> {
    match (&arg.input, &arg.gen) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let complex = complex_from_json(&text)?;
            Ok(NamedComplex {
                name: path.display().to_string(),
                complex,
                expected: Default::default(),
            })
        }
        (None, Some(name)) => generators::by_name(name)
            .ok_or_else(|| anyhow::anyhow!("unknown generator {name:?}")),
        _ => anyhow::bail!("exactly one of --input or --gen is required"),
    }
}

fn exit_code_for(err: &anyhow::Error) -> ExitCode {
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::Capacity(_) => ExitCode::from(3),
            _ => ExitCode::from(2),
        };
    }
    ExitCode::from(2)
}

fn emit(report: &RunReport) -> anyhow::Result<ExitCode> {
    println!("{}", serde_json::to_string_pretty(report)?);
    let mut failed = false;
    let stderr = std::io::stderr();
    let mut err = stderr.lock();
    for a in &report.assertions {
        let tag = match a.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed = true;
                "FAIL"
            }
            Status::ReportOnly => "INFO",
            Status::Skipped => "SKIP",
        };
        writeln!(err, "[{tag}] {}: {} | {}", a.name, a.lhs, a.rhs)?;
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code_for(&err)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen { name, out, list } => {
            if list {
                for n in generators::generator_names() {
                    println!("{n}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let name = name.ok_or_else(|| anyhow::anyhow!("generator name required (or --list)"))?;
            let named = generators::by_name(&name)
                .ok_or_else(|| anyhow::anyhow!("unknown generator {name:?}"))?;
            let text = complex_to_json(&named.complex);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectra { input, dim, kind, normalized } => {
            let named = load_input(&input)?;
            let kind_enum = match kind.as_str() {
                "up" => LaplacianKind::Up,
                "down" => LaplacianKind::Down,
                "full" => LaplacianKind::Full,
                other => anyhow::bail!("unknown kind {other:?} (up|down|full)"),
            };
            let spec = LaplacianSpec {
                dim,
                kind: kind_enum,
                normalization: if normalized {
                    Normalization::DegreeNormalized
                } else {
                    Normalization::Unnormalized
                },
            };
            let rep = spectral_report(&named.complex, spec)?;
            let betti = hodge_cheeger::complex::betti_numbers(
                &named.complex,
                hodge_cheeger::complex::Field::Rationals,
            );
            let assertions = vec![verify::Assertion::check(
                "zero-multiplicity-matches-exact-kernel",
                rep.zero_multiplicity == rep.exact_kernel_dim,
                rep.zero_multiplicity,
                rep.exact_kernel_dim,
            )];
            let results = serde_json::json!({
                "dim": dim,
                "kind": kind,
                "normalized": normalized,
                "n": rep.n,
                "eigenvalues": rep.eigenvalues,
                "zero_multiplicity": rep.zero_multiplicity,
                "index_first_up": rep.index_first_up,
                "betti": betti,
            });
            let report = RunReport {
                command: format!("spectra --dim {dim} --kind {kind}"),
                input_digest: digest(&named.complex),
                results,
                assertions,
            };
            emit(&report)
        }
        Command::Cheeger { input, dim, which, all_defs, k, capacity } => {
            let named = load_input(&input)?;
            let cfg = capacity.config();
            let mut assertions = Vec::new();
            let results: serde_json::Value = match which.as_str() {
                "gap0" => {
                    let d = dim.ok_or_else(|| anyhow::anyhow!("--dim required for gap0"))?;
                    let d1 = cheeger::h_sigma_d_bruteforce(&named.complex, d, cfg.max_m, &cfg)?;
                    let mut map = serde_json::Map::new();
                    map.insert("value".into(), d1.value.to_string().into());
                    map.insert("witness".into(), serde_json::json!(d1.witness));
                    map.insert("method".into(), "multiset-brute-force".into());
                    map.insert(
                        "stabilized_at_m".into(),
                        serde_json::json!(d1.stabilized_at_m),
                    );
                    map.insert("capped".into(), serde_json::json!(d1.capped));
                    map.insert("homology_flag".into(), serde_json::json!(d1.homology_flag));
                    map.insert("torsion_note".into(), serde_json::json!(d1.torsion_note));
                    if all_defs {
                        let d2 = cheeger::h_sigma_d_zexpander(&named.complex, d, &cfg)?;
                        let d4 = cheeger::h_sigma_d_filling(&named.complex, d, &cfg)?;
                        assertions.push(verify::Assertion::check(
                            "gap0:D1=D2",
                            d1.value == d2.value,
                            &d1.value,
                            &d2.value,
                        ));
                        assertions.push(verify::Assertion::check(
                            "gap0:D2=D4",
                            d2.value == d4.value,
                            &d2.value,
                            &d4.value,
                        ));
                        if !d1.value.is_zero() {
                            let cert = cheeger::certify_d3(&named.complex, d, &d1)?;
                            assertions.push(verify::Assertion::check(
                                "gap0:D3-certificate",
                                cert,
                                "certificate",
                                "true",
                            ));
                        }
                        map.insert("z_expander".into(), d2.value.to_string().into());
                        map.insert("filling".into(), d4.value.to_string().into());
                    }
                    serde_json::Value::Object(map)
                }
                "gapd2" => {
                    let d = dim.ok_or_else(|| anyhow::anyhow!("--dim required for gapd2"))?;
                    let rep = cheeger::h_k_sigma(&named.complex, d, k, &cfg)?;
                    serde_json::json!({
                        "value": rep.value.to_string(),
                        "k": rep.k,
                        "pairs": rep.pairs,
                    })
                }
                "down" => {
                    let d = dim.unwrap_or(named.complex.dim());
                    let rep = cheeger::h_down(&named.complex, d, &cfg)?;
                    serde_json::json!({
                        "value": rep.value.to_string(),
                        "method": match rep.method {
                            cheeger::DownMethod::DualGraphCuts => "dual-graph-cuts",
                            cheeger::DownMethod::GridLp => "grid-lp",
                        },
                        "cut": rep.cut,
                    })
                }
                "z2" => {
                    let d = dim.ok_or_else(|| anyhow::anyhow!("--dim required for z2"))?;
                    let value = cheeger::z2_cheeger(&named.complex, d, &cfg)?;
                    let za = verify::z2_mismatch_assertions(&named.complex, d, &cfg)?;
                    assertions.extend(za);
                    serde_json::json!({ "value": value.to_string() })
                }
                "diam" => {
                    let rep = cheeger::diameter_formula(&named.complex)?;
                    serde_json::json!({
                        "diameter": rep.diameter,
                        "value": rep.value.to_string(),
                    })
                }
                other => anyhow::bail!("unknown --which {other:?} (gap0|gapd2|down|z2|diam)"),
            };
            let report = RunReport {
                command: format!("cheeger --which {which}"),
                input_digest: digest(&named.complex),
                results,
                assertions,
            };
            emit(&report)
        }
        Command::Plap { input, dim, p, op, restarts, seed, capacity } => {
            let named = load_input(&input)?;
            let cfg = capacity.config();
            let mut assertions = Vec::new();
            let results = match op.as_str() {
                "max" => {
                    let prob = plap::PRayleighProblem::up(&named.complex, dim, p, true)?;
                    let est = plap::max_eig_p(&prob, restarts, seed)?;
                    serde_json::json!({
                        "p": p, "value": est.value, "converged": est.converged,
                        "restarts": est.restarts, "argument": est.argument,
                    })
                }
                "gap" => {
                    let rep = plap::verify_gap_p(&named.complex, dim, p, &cfg, restarts, seed)?;
                    assertions.push(verify::Assertion::check(
                        "gap-p:lower",
                        rep.lower_pass,
                        format!("c = {:.9}", rep.c_lower),
                        format!("gap = {:.9}", rep.gap),
                    ));
                    assertions.push(verify::Assertion::check(
                        "gap-p:upper",
                        rep.upper_pass,
                        format!("gap = {:.9}", rep.gap),
                        format!("C = {:.9}", rep.c_upper),
                    ));
                    serde_json::json!({
                        "p": p, "h1": rep.h1.to_string(), "lambda_top": rep.lambda_top,
                        "gap": rep.gap, "exact_constants": rep.exact_constants,
                    })
                }
                "duality" => {
                    let rep = plap::verify_p_duality(&named.complex, dim, p, restarts, seed)?;
                    assertions.push(verify::Assertion::check(
                        "p-duality",
                        rep.pass,
                        format!("{:.9}", rep.up_root),
                        format!("{:.9}", rep.down_root),
                    ));
                    serde_json::json!({
                        "p": p, "p_conjugate": rep.p_conjugate,
                        "up_root": rep.up_root, "down_root": rep.down_root,
                        "rel_err": rep.rel_err, "exact": rep.exact,
                    })
                }
                "rough" => {
                    let rep = plap::verify_rough_cheeger_p(&named.complex, dim, p, &cfg)?;
                    if rep.report_only {
                        assertions.push(verify::Assertion::report(
                            "rough-p (estimate)",
                            format!("λ ≈ {:.9}", rep.lambda),
                            format!("[{:.9}, {:.9}]", rep.lower, rep.upper),
                        ));
                    } else {
                        assertions.push(verify::Assertion::check(
                            "rough-p",
                            rep.pass,
                            format!("λ = {:.9}", rep.lambda),
                            format!("[{:.9}, {:.9}]", rep.lower, rep.upper),
                        ));
                    }
                    serde_json::json!({
                        "p": p, "h": rep.h.to_string(), "lambda": rep.lambda,
                        "lower": rep.lower, "upper": rep.upper, "report_only": rep.report_only,
                    })
                }
                other => anyhow::bail!("unknown --op {other:?} (max|gap|duality|rough)"),
            };
            let report = RunReport {
                command: format!("plap --op {op} --p {p} --seed {seed}"),
                input_digest: digest(&named.complex),
                results,
                assertions,
            };
            emit(&report)
        }
        Command::Verify { input, suite, sections, threads, capacity } => {
            let cfg = capacity.config();
            let sections: Vec<Section> = if sections == "all" {
                Section::ALL.to_vec()
            } else {
                sections
                    .split(',')
                    .map(|s| {
                        Section::parse(s.trim())
                            .ok_or_else(|| anyhow::anyhow!("unknown section {s:?}"))
                    })
                    .collect::<anyhow::Result<_>>()?
            };
            let complexes: Vec<NamedComplex> = if suite {
                generators::suite()
            } else {
                vec![load_input(&input)?]
            };
            let run_all = || -> hodge_cheeger::Result<Vec<SectionReport>> {
                let mut out = Vec::new();
                for named in &complexes {
                    for &section in &sections {
                        out.push(verify::run_section(named, section, &cfg)?);
                    }
                }
                Ok(out)
            };
            let reports = match threads {
                Some(n) => {
                    let pool = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build()?;
                    pool.install(run_all)?
                }
                None => run_all()?,
            };
            let mut assertions = Vec::new();
            for rep in &reports {
                for a in &rep.assertions {
                    let mut named = a.clone();
                    named.name = format!("{}::{}", rep.complex, named.name);
                    assertions.push(named);
                }
            }
            let digest_input = if suite {
                "suite".to_string()
            } else {
                digest(&complexes[0].complex)
            };
            let report = RunReport {
                command: format!("verify --sections {}", sections.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")),
                input_digest: digest_input,
                results: serde_json::to_value(&reports)?,
                assertions,
            };
            emit(&report)
        }
    }
}
