//! Command-line front end: Kazhdan–Lusztig tables, intersection homology
//! of complex files, and the finite-field Hecke check.

mod output;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use ihkl::complex::{examples, homology_dims, StratifiedComplex, Supports};
use ihkl::coxeter::{bruhat_leq, Permutation};
use ihkl::flagfq::FlagSpace;
use ihkl::hecke::HeckeElement;
use ihkl::ih::{self, IhOptions};
use ihkl::kl::{Algorithm, KlCache};
use ihkl::perversity::{Perversity, PerversitySpec};
use serde_json::{json, Value};

use output::{dims_csv, dims_json, dims_line, factored, json_map, pretty, Format, Syntax};

#[derive(Debug, Parser)]
#[command(name = "ihkl", version, about = "Intersection homology and Kazhdan-Lusztig polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kazhdan-Lusztig polynomials and C' elements of S_N.
    Kl {
        #[arg(long)]
        rank: usize,
        /// One element w: prints P_{u,w} for u <= w and C'_w.
        #[arg(long, conflicts_with = "interval")]
        element: Option<String>,
        /// A pair U,W: prints P_{U,W} and the IC stalk dimensions.
        #[arg(long)]
        interval: Option<String>,
        #[arg(long, default_value = "both")]
        algorithm: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Intersection homology dimensions of a complex file.
    Ih {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        perversity: String,
        #[arg(long, default_value = "bm")]
        supports: String,
        /// Extra barycentric subdivisions before computing.
        #[arg(long, default_value_t = 0)]
        subdivide: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ordinary homology dimensions of a complex file.
    Homology {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "bm")]
        supports: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Structural checks of a complex file.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Local intersection homology at a vertex.
    Stalks {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        perversity: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dimension symmetry between complementary perversities.
    Duality {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Splits isolated singular points into one copy per link component.
    Normalize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Writes a built-in example complex as JSON.
    Example {
        /// Example name; `list` prints the available names.
        #[arg(long)]
        name: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compares Hecke products at v^2 = q with convolution over F_q flags.
    Flagcheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Lift the n <= 4, q <= 7 guard.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bruhat comparison U <= W.
    Bruhat {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        leq: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Product of two Hecke algebra elements, each T:W or Cp:W.
    HeckeMul {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A computation that finished but whose result is a failure.
#[derive(Debug)]
struct Failed {
    code: u8,
    output: String,
}

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.output)
    }
}

impl std::error::Error for Failed {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(f) = e.downcast_ref::<Failed>() {
                print!("{}", f.output);
                return ExitCode::from(f.code);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for bad input, 3 for broken invariants, 1 for everything else.
fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<ihkl::Error>() {
            return if err.is_usage() {
                2
            } else if err.is_internal() {
                3
            } else {
                1
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() || cause.downcast_ref::<Usage>().is_some() {
            return 2;
        }
    }
    1
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Kl {
            rank,
            element,
            interval,
            algorithm,
            format,
        } => run_kl(rank, element, interval, &algorithm, format),
        Command::Ih {
            input,
            perversity,
            supports,
            subdivide,
            format,
        } => run_ih(&input, &perversity, &supports, subdivide, format),
        Command::Homology { input, supports, format } => run_homology(&input, &supports, format),
        Command::Validate { input, format } => run_validate(&input, format),
        Command::Stalks {
            input,
            vertex,
            perversity,
            format,
        } => run_stalks(&input, &vertex, &perversity, format),
        Command::Duality { input, p, q, format } => run_duality(&input, &p, &q, format),
        Command::Normalize { input, output, format } => run_normalize(&input, &output, format),
        Command::Example { name, output } => run_example(&name, output),
        Command::Flagcheck { n, q, force, format } => run_flagcheck(n, q, force, format),
        Command::Bruhat { rank, leq, format } => run_bruhat(rank, &leq, format),
        Command::HeckeMul {
            rank,
            left,
            right,
            format,
        } => run_hecke_mul(rank, &left, &right, format),
    }
}

fn read_complex(path: &PathBuf) -> Result<StratifiedComplex> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(StratifiedComplex::from_json(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn perversity(text: &str, n: usize) -> Result<Perversity> {
    Ok(text.parse::<PerversitySpec>()?.resolve(n)?)
}

fn permutation(n: usize, text: &str) -> Result<Permutation> {
    Ok(Permutation::parse_in(n, text)?)
}

fn pair(n: usize, text: &str) -> Result<(Permutation, Permutation, Syntax)> {
    let (u, w) = text
        .split_once(',')
        .ok_or_else(|| usage(format!("expected U,W but got '{text}'")))?;
    Ok((permutation(n, u)?, permutation(n, w)?, Syntax::of(w)))
}

fn run_kl(
    n: usize,
    element: Option<String>,
    interval: Option<String>,
    algorithm: &str,
    format: Format,
) -> Result<String> {
    let algorithm: Algorithm = algorithm.parse()?;
    let mut cache = KlCache::new(n)?;
    if let Some(text) = element {
        let w = permutation(n, &text)?;
        let syntax = Syntax::of(&text);
        let r = cache.compute(&w, algorithm)?;
        let mut out = String::new();
        match format {
            Format::Text => {
                writeln!(out, "w = {}  length {}", syntax.show(&w), w.length())?;
                for (u, p) in &r.kl_polys {
                    writeln!(out, "P({}, {}) = {}", syntax.show(u), syntax.show(&w), p.display_q())?;
                }
                writeln!(out, "C' = {}", factored(&r.cprime, w.length(), syntax))?;
                for (u, p) in &r.corrections {
                    writeln!(out, "p({}) = {p}", syntax.show(u))?;
                }
            }
            Format::Csv => {
                writeln!(out, "u,w,P")?;
                for (u, p) in &r.kl_polys {
                    writeln!(out, "{},{},{}", syntax.show(u), syntax.show(&w), p.display_q())?;
                }
            }
            Format::Json => {
                let polys = json_map(r.kl_polys.iter().map(|(u, p)| (syntax.show(u), p.to_json_q())));
                let corrections = json_map(r.corrections.iter().map(|(u, p)| (syntax.show(u), p.to_json())));
                out = pretty(&json!({
                    "rank": n,
                    "algorithm": algorithm.to_string(),
                    "w": syntax.show(&w),
                    "length": w.length(),
                    "kl_polys": polys,
                    "cprime": r.cprime.to_json(),
                    "corrections": corrections,
                }));
            }
        }
        return Ok(out);
    }
    if let Some(text) = interval {
        let (u, w, syntax) = pair(n, &text)?;
        cache.compute(&w, algorithm)?;
        let stalks = cache.ic_stalk_dims(&u, &w)?;
        let p = cache.compute(&w, algorithm)?.poly(&u);
        let mut out = String::new();
        match format {
            Format::Text => {
                writeln!(out, "P({}, {}) = {}", syntax.show(&u), syntax.show(&w), p.display_q())?;
                if !stalks.in_interval {
                    writeln!(out, "{} is not below {} in Bruhat order", syntax.show(&u), syntax.show(&w))?;
                }
                let line: Vec<String> = stalks.dims.iter().map(|(d, c)| format!("{d}:{c}")).collect();
                writeln!(out, "stalks {}", line.join(" "))?;
            }
            Format::Csv => {
                writeln!(out, "degree,dim")?;
                for (d, c) in &stalks.dims {
                    writeln!(out, "{d},{c}")?;
                }
            }
            Format::Json => {
                let dims = json_map(stalks.dims.iter().map(|(d, c)| (d.to_string(), json!(c.to_string()))));
                out = pretty(&json!({
                    "u": syntax.show(&u),
                    "w": syntax.show(&w),
                    "in_interval": stalks.in_interval,
                    "P": p.to_json_q(),
                    "stalks": dims,
                }));
            }
        }
        return Ok(out);
    }

    let table = cache.table(algorithm)?;
    let summary = if algorithm != Algorithm::Both {
        format!("{} pairs", table.len())
    } else if table.agrees() {
        format!("AGREE ({} pairs)", table.len())
    } else {
        format!("DISAGREE ({} of {} pairs)", table.discrepancies.len(), table.len())
    };
    let mut out = String::new();
    match format {
        Format::Text => {
            for ((u, w), p) in &table.entries {
                writeln!(out, "P({u}, {w}) = {}", p.display_q())?;
            }
            writeln!(out, "{summary}")?;
        }
        Format::Csv => {
            writeln!(out, "u,w,P")?;
            for ((u, w), p) in &table.entries {
                writeln!(out, "{u},{w},{}", p.display_q())?;
            }
        }
        Format::Json => {
            let entries: Vec<Value> = table
                .entries
                .iter()
                .map(|((u, w), p)| json!({"u": u.to_string(), "w": w.to_string(), "P": p.to_json_q()}))
                .collect();
            let discrepancies: Vec<Value> = table
                .discrepancies
                .iter()
                .map(|d| {
                    json!({
                        "u": d.u.to_string(),
                        "w": d.w.to_string(),
                        "bott_samelson": d.bott_samelson.to_json_q(),
                        "recursion": d.recursion.to_json_q(),
                    })
                })
                .collect();
            out = pretty(&json!({
                "rank": n,
                "algorithm": algorithm.to_string(),
                "pairs": table.len(),
                "agree": table.agrees(),
                "entries": entries,
                "discrepancies": discrepancies,
            }));
        }
    }
    if !table.agrees() {
        return Err(Failed { code: 3, output: out }.into());
    }
    Ok(out)
}

fn dims_output(t: &ihkl::complex::DimTable, format: Format, extra: Value) -> String {
    match format {
        Format::Text => format!("{}\n", dims_line(t)),
        Format::Csv => dims_csv(t),
        Format::Json => {
            let mut v = extra;
            v["dims"] = dims_json(t);
            pretty(&v)
        }
    }
}

fn run_ih(input: &PathBuf, p: &str, supports: &str, subdivide: usize, format: Format) -> Result<String> {
    let s = read_complex(input)?;
    let supports: Supports = supports.parse()?;
    let p = perversity(p, s.dimension())?;
    let options = IhOptions {
        extra_subdivisions: subdivide,
        ..IhOptions::default()
    };
    let dims = validated(&s, format, |s| Ok(ih::ih_dims_with(s, &p, supports, &options)?))?;
    Ok(dims_output(
        &dims,
        format,
        json!({"perversity": p.to_string(), "supports": supports.to_string()}),
    ))
}

fn run_homology(input: &PathBuf, supports: &str, format: Format) -> Result<String> {
    let s = read_complex(input)?;
    let supports: Supports = supports.parse()?;
    let dims = validated(&s, format, |s| Ok(homology_dims(s, supports)?))?;
    Ok(dims_output(&dims, format, json!({"supports": supports.to_string()})))
}

/// Runs `f` on a structurally valid complex; otherwise fails with exit 1
/// and the validation report.
fn validated<T>(s: &StratifiedComplex, format: Format, f: impl FnOnce(&StratifiedComplex) -> Result<T>) -> Result<T> {
    let report = s.validate();
    if !report.structurally_valid() {
        return Err(Failed {
            code: 1,
            output: render_report(&report, format),
        }
        .into());
    }
    f(s)
}

fn render_report(report: &ihkl::complex::ValidationReport, format: Format) -> String {
    match format {
        Format::Text => report.to_string(),
        Format::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for c in &report.checks {
                let _ = writeln!(out, "{},{},\"{}\"", c.kind.label(), c.passed, c.detail.replace('"', "'"));
            }
            out
        }
        Format::Json => pretty(&json_map(report.checks.iter().map(|c| {
            (
                c.kind.label().to_string(),
                json!({"passed": c.passed, "detail": c.detail}),
            )
        }))),
    }
}

fn run_validate(input: &PathBuf, format: Format) -> Result<String> {
    let s = read_complex(input)?;
    let report = s.validate();
    let out = render_report(&report, format);
    if !report.all_passed() {
        return Err(Failed { code: 1, output: out }.into());
    }
    Ok(out)
}

fn run_stalks(input: &PathBuf, vertex: &str, p: &str, format: Format) -> Result<String> {
    let s = read_complex(input)?;
    let p = perversity(p, s.dimension())?;
    let x = s.vertex(vertex).map_err(|e| usage(e.to_string()))?;
    let dims = validated(&s, format, |s| Ok(ih::local_stalk_table(s, x, &p)?))?;
    Ok(dims_output(
        &dims,
        format,
        json!({"vertex": vertex, "perversity": p.to_string()}),
    ))
}

fn run_duality(input: &PathBuf, p: &str, q: &str, format: Format) -> Result<String> {
    let s = read_complex(input)?;
    let n = s.dimension();
    let p = perversity(p, n)?;
    let q = perversity(q, n)?;
    let report = validated(&s, format, |s| Ok(ih::duality_report(s, &p, &q)?))?;
    let status = if report.agrees() { "PASS" } else { "FAIL" };
    let out = match format {
        Format::Text => {
            let mut out = report.comparison.to_string();
            if let Some(m) = &report.middle {
                out.push_str("middle self-duality\n");
                out.push_str(&m.to_string());
            }
            out.push_str(status);
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("check,degree,left,right\n");
            for (d, a, b) in report.comparison.rows() {
                writeln!(out, "pair,{d},{a},{b}")?;
            }
            if let Some(m) = &report.middle {
                for (d, a, b) in m.rows() {
                    writeln!(out, "middle,{d},{a},{b}")?;
                }
            }
            out
        }
        Format::Json => {
            let rows = |c: &ih::Comparison| -> Value {
                c.rows().iter().map(|(d, a, b)| json!({"degree": d, "left": a, "right": b})).collect()
            };
            pretty(&json!({
                "n": report.n,
                "p": report.p.to_string(),
                "q": report.q.to_string(),
                "pair": rows(&report.comparison),
                "middle": report.middle.as_ref().map(rows),
                "passed": report.agrees(),
            }))
        }
    };
    if !report.agrees() {
        return Err(Failed { code: 1, output: out }.into());
    }
    Ok(out)
}

fn run_normalize(input: &PathBuf, output: &PathBuf, format: Format) -> Result<String> {
    let s = read_complex(input)?;
    let normal = validated(&s, format, |s| Ok(ih::normalize_isolated(s)?))?;
    std::fs::write(output, normal.to_json()).with_context(|| format!("writing {}", output.display()))?;
    let vertices = normal.ambient().num_vertices();
    let components = normal.ambient().components().len();
    Ok(match format {
        Format::Text => format!("wrote {} ({vertices} vertices, {components} components)\n", output.display()),
        Format::Csv => format!("output,vertices,components\n{},{vertices},{components}\n", output.display()),
        Format::Json => pretty(&json!({
            "output": output.display().to_string(),
            "vertices": vertices,
            "components": components,
        })),
    })
}

fn run_example(name: &str, output: Option<PathBuf>) -> Result<String> {
    let all = examples::all_examples();
    if name == "list" {
        return Ok(all.iter().map(|e| format!("{}\n", e.name)).collect());
    }
    let Some(e) = all.into_iter().find(|e| e.name == name) else {
        bail!(usage(format!("unknown example '{name}'; try --name list")));
    };
    let text = e.complex.to_json();
    match output {
        Some(path) => {
            std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run_flagcheck(n: usize, q: u64, force: bool, format: Format) -> Result<String> {
    let report = FlagSpace::new(n, q, force)?.verify_hecke_specialization()?;
    let status = |ok: bool| if ok { "match" } else { "mismatch" };
    let out = match format {
        Format::Text => {
            let mut out = String::new();
            for m in report.mismatches() {
                writeln!(out, "mismatch at T:{} * T:{}", m.u, m.w)?;
            }
            writeln!(out, "{report}")?;
            out
        }
        Format::Csv => {
            let mut out = String::from("u,w,status\n");
            for p in &report.pairs {
                writeln!(out, "{},{},{}", p.u, p.w, status(p.matches()))?;
            }
            out
        }
        Format::Json => pretty(&json_map(
            report
                .pairs
                .iter()
                .map(|p| (format!("{},{}", p.u, p.w), json!(status(p.matches())))),
        )),
    };
    if !report.passed() {
        return Err(Failed { code: 3, output: out }.into());
    }
    Ok(out)
}

fn run_bruhat(n: usize, text: &str, format: Format) -> Result<String> {
    let (u, w, syntax) = pair(n, text)?;
    let leq = bruhat_leq(&u, &w)?;
    Ok(match format {
        Format::Text => format!("{leq}\n"),
        Format::Csv => format!("u,w,leq\n{},{},{leq}\n", syntax.show(&u), syntax.show(&w)),
        Format::Json => pretty(&json!({"u": syntax.show(&u), "w": syntax.show(&w), "leq": leq})),
    })
}

/// `T:3412` or `Cp:3412`, with the permutation in either syntax.
fn hecke_expr(n: usize, text: &str, cache: &mut KlCache) -> Result<HeckeElement> {
    let (kind, w) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("expected T:W or Cp:W but got '{text}'")))?;
    let w = permutation(n, w)?;
    match kind.trim() {
        "T" => Ok(HeckeElement::t(&w)),
        "Cp" => Ok(cache.compute(&w, Algorithm::Recursion)?.cprime),
        other => Err(usage(format!("unknown basis '{other}' (expected T or Cp)"))),
    }
}

fn run_hecke_mul(n: usize, left: &str, right: &str, format: Format) -> Result<String> {
    let mut cache = KlCache::new(n)?;
    let a = hecke_expr(n, left, &mut cache)?;
    let b = hecke_expr(n, right, &mut cache)?;
    let product = a.t_mul(&b)?;
    let syntax = Syntax::of(right.split_once(':').map_or(right, |(_, w)| w));
    Ok(match format {
        Format::Text => format!("{}\n", product.render(|w| syntax.show(w))),
        Format::Csv => {
            let mut out = String::from("w,coefficient\n");
            for (w, c) in product.terms() {
                writeln!(out, "{},{c}", syntax.show(w))?;
            }
            out
        }
        Format::Json => pretty(&json!({"left": left, "right": right, "product": product.to_json()})),
    })
}
