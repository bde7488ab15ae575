use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use en_duality::basis::BasisSpace;
use en_duality::duality::chains::{sym_side, wedge_side};
use en_duality::duality::{
    bgg_generation_check, classical_hermite_matrix, generic_chain_iso_search, hermite_matrix, verify_self_duality_with_window,
    weight_block_diff, IsoSearch, Side,
};
use en_duality::en::{en_complex, generic_phi, hankel_phi};
use en_duality::export::{matrix_csv, MatrixJson, PolyMatrixJson};
use en_duality::linalg::{format_rational, int};
use en_duality::rep::clebsch_gordan_v1;
use en_duality::Error;

#[derive(Parser)]
#[command(name = "en-duality", version, about = "Exact Eagon-Northcott complexes and self-duality certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Hermite reciprocity matrix ψ_{b,0}(Sym^{2b-2} U).
    Hermite {
        #[arg(long)]
        b: usize,
        /// Also print the classical isomorphism and a blockwise comparison (b = 3).
        #[arg(long)]
        compare_classical: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Build f, g and an explicit self-duality certificate.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        window: Option<i64>,
        #[command(flatten)]
        out: Output,
    },
    /// Check generation in lowest degree for P or P-hat.
    Generation {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "p")]
        side: SideArg,
        #[command(flatten)]
        out: Output,
    },
    /// Search for a chain isomorphism independently of f and g.
    Search {
        #[arg(long, value_enum)]
        case: SearchCase,
        #[arg(long, default_value_t = 3)]
        b: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Build a complex C_i(φ).
    En {
        #[arg(long, value_enum, default_value = "generic")]
        preset: Preset,
        #[arg(long, default_value_t = 3)]
        f: usize,
        #[arg(long, default_value_t = 2)]
        g: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        i: i64,
        /// Hankel: number of columns minus one.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Hankel: number of rows minus one.
        #[arg(long, default_value_t = 1)]
        b: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    b: usize,
    /// `sl2`, `random`, or `file:PATH` holding a JSON spanning matrix inside ∧²Q^{b+1}.
    #[arg(long, default_value = "sl2")]
    v1: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    P,
    PHat,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchCase {
    /// Sym^{b-1}(φ|V_1) against the reformulated dual, V_1 = Sym^{2b-2} U.
    SelfDual,
    /// C_2(φ) against C_{-1}(φ) for the generic 2 × 3 matrix.
    NonSelfDual,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Generic,
    BuchsbaumRim,
    Hankel,
}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidInput(msg.into()).into()
}

fn load_v1(run: &RunArgs) -> anyhow::Result<BasisSpace> {
    let b = run.b;
    if b == 0 {
        return Err(invalid("b must be at least 1"));
    }
    let ambient = BasisSpace::wedge(2, &BasisSpace::free(b + 1));
    if run.v1 == "sl2" {
        return Ok(clebsch_gordan_v1(b)?);
    }
    if run.v1 == "random" {
        let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
        let n = ambient.dim();
        let trip: Vec<_> = (0..n)
            .flat_map(|r| (0..2 * b - 1).map(move |c| (r, c)))
            .map(|(r, c)| (r, c, int(rng.gen_range(-3..=3))))
            .collect();
        let span = en_duality::linalg::SparseMatrix::from_triplets(n, 2 * b - 1, trip);
        return Ok(BasisSpace::subspace(&ambient, span)?);
    }
    if let Some(path) = run.v1.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("reading {path}: {e}")))?;
        let span = MatrixJson::parse(&text)?;
        return Ok(BasisSpace::subspace(&ambient, span)?);
    }
    Err(invalid(format!("unknown V_1 source {:?}", run.v1)))
}

fn json_text<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn hermite(b: usize, compare: bool, format: Format) -> anyhow::Result<(String, bool)> {
    let h = hermite_matrix(b)?;
    let classical = if compare { Some(classical_hermite_matrix(b)?) } else { None };
    let diff = classical.as_ref().map(|c| weight_block_diff(&h.matrix, c, &h.row_weights));
    let text = match format {
        Format::Json => json_text(&json!({
            "b": b,
            "raw_scale": format_rational(&h.raw_scale),
            "row_labels": h.row_labels,
            "col_labels": h.col_labels,
            "row_weights": h.row_weights,
            "col_weights": h.col_weights,
            "matrix": MatrixJson::from(&h.matrix),
            "classical": classical.as_ref().map(MatrixJson::from),
            "differing_blocks": diff.as_ref().map(|d| d.iter().filter(|x| x.differs).collect::<Vec<_>>()),
        }))?,
        Format::Csv => {
            let mut s = matrix_csv(&h.matrix);
            if let Some(c) = &classical {
                s.push('\n');
                s.push_str(&matrix_csv(c));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            writeln!(s, "psi_{{{b},0}} (scaled by {})", format_rational(&(int(1) / &h.raw_scale)))?;
            s.push_str(&pretty_matrix(&h.matrix, &h.row_labels));
            if let (Some(c), Some(d)) = (&classical, &diff) {
                writeln!(s, "\nclassical")?;
                s.push_str(&pretty_matrix(c, &h.row_labels));
                for blk in d.iter().filter(|x| x.differs) {
                    writeln!(s, "differs on rows/cols {:?} (weight {}): {:?} vs {:?}", blk.indices, blk.weight, blk.left, blk.right)?;
                }
            }
            s
        }
    };
    Ok((text, true))
}

fn pretty_matrix(m: &en_duality::linalg::SparseMatrix, labels: &[String]) -> String {
    let cells: Vec<Vec<String>> = m.to_dense().iter().map(|r| r.iter().map(format_rational).collect()).collect();
    let w = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let lw = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (i, row) in cells.iter().enumerate() {
        let label = labels.get(i).map(String::as_str).unwrap_or("");
        let pad = lw - label.chars().count();
        s.push_str(&format!("{label}{} |", " ".repeat(pad)));
        for c in row {
            s.push_str(&format!(" {c:>w$}"));
        }
        s.push('\n');
    }
    s
}

fn verify(run: &RunArgs, window: Option<i64>, format: Format) -> anyhow::Result<(String, bool)> {
    let v1 = load_v1(run)?;
    let b = run.b;
    let window = window.unwrap_or(3 * b as i64);
    if window < 2 * b as i64 {
        return Err(invalid(format!("window {window} is below 2b = {}", 2 * b)));
    }
    let cert = verify_self_duality_with_window(&v1, b, window)?;
    let text = match format {
        Format::Json => json_text(&cert)?,
        Format::Csv => {
            let mut s = String::new();
            for (j, x) in &cert.blocks {
                writeln!(s, "# x_{j}")?;
                s.push_str(&matrix_csv(x));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            writeln!(s, "b = {b}, V_1 = {}", cert.v1)?;
            writeln!(s, "window homology, degrees 0..={window}: {:?}", cert.window.dims)?;
            for d in &cert.degrees {
                writeln!(
                    s,
                    "degree {}: dim P = {}, dim T' = {}, dim C = {}, rank f = {}, rank g = {}, g scalar = {}, x invertible",
                    d.degree, d.dim_p, d.dim_t, d.dim_c, d.rank_f, d.rank_g, d.g_scalar
                )?;
            }
            writeln!(s, "reformulation scalars: {:?}", cert.reformulation_scalars)?;
            writeln!(s, "x is a chain isomorphism")?;
            s
        }
    };
    Ok((text, true))
}

fn generation(run: &RunArgs, side: SideArg, format: Format) -> anyhow::Result<(String, bool)> {
    let v1 = load_v1(run)?;
    let side = match side {
        SideArg::P => Side::P,
        SideArg::PHat => Side::PHat,
    };
    let r = bgg_generation_check(&v1, run.b, side)?;
    let text = match format {
        Format::Json => json_text(&r)?,
        Format::Csv => {
            let mut s = String::from("degree,rank,expected,pass,statement\n");
            for c in &r.checks {
                writeln!(s, "{},{},{},{},{}", c.degree, c.rank, c.expected, c.pass, c.statement)?;
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for c in &r.checks {
                writeln!(s, "[{}] {} (rank {} / {})", if c.pass { "pass" } else { "FAIL" }, c.statement, c.rank, c.expected)?;
            }
            writeln!(s, "{}", if r.pass { &r.conclusion } else { "generation check failed" })?;
            s
        }
    };
    Ok((text, r.pass))
}

fn search(case: SearchCase, b: usize, format: Format) -> anyhow::Result<(String, bool)> {
    let (c1, c2, expect_found) = match case {
        SearchCase::SelfDual => {
            if b < 2 {
                return Err(invalid("b must be at least 2"));
            }
            let v1 = clebsch_gordan_v1(b)?;
            (sym_side(&v1, b)?, wedge_side(&v1)?, true)
        }
        SearchCase::NonSelfDual => {
            let phi = generic_phi(3, 2)?;
            (en_complex(&phi, 2)?.complex, en_complex(&phi, -1)?.complex, false)
        }
    };
    let r = generic_chain_iso_search(&c1, &c2)?;
    let value = match &r {
        IsoSearch::Found { twist, seed, solution_dim, map } => json!({
            "result": "found",
            "twist": twist,
            "seed": seed,
            "solution_dim": solution_dim,
            "blocks": map.blocks.iter().map(|(p, m)| (p.to_string(), PolyMatrixJson::from(m))).collect::<std::collections::BTreeMap<_, _>>(),
        }),
        IsoSearch::NoneExists { solution_dim, reason } => json!({
            "result": "none",
            "solution_dim": solution_dim,
            "reason": reason,
        }),
    };
    let text = match format {
        Format::Json | Format::Csv => json_text(&value)?,
        Format::Pretty => match &r {
            IsoSearch::Found { twist, seed, solution_dim, .. } => {
                format!("isomorphism found (twist {twist}, seed {seed}, {solution_dim}-dimensional space of chain maps)\n")
            }
            IsoSearch::NoneExists { reason, .. } => format!("no isomorphism: {reason}\n"),
        },
    };
    Ok((text, r.is_found() == expect_found))
}

fn en(preset: Preset, f: usize, g: usize, i: i64, d: usize, b: usize, format: Format) -> anyhow::Result<(String, bool)> {
    let (phi, i) = match preset {
        Preset::Generic => (generic_phi(f, g)?, i),
        Preset::BuchsbaumRim => (generic_phi(f, g)?, 1),
        Preset::Hankel => (hankel_phi(d, b)?, i),
    };
    if phi.shape().0 > phi.shape().1 {
        return Err(invalid(format!("φ needs g <= f, got a {}x{} matrix", phi.shape().0, phi.shape().1)));
    }
    let c = en_complex(&phi, i)?;
    let ok = c.complex.verify().is_ok();
    let cx = &c.complex;
    let terms: Vec<_> = cx
        .positions()
        .zip(&c.kinds)
        .map(|(p, k)| json!({"position": p, "rank": cx.term(p).rank(), "twists": cx.term(p).generator_twists(), "kind": k}))
        .collect();
    let text = match format {
        Format::Json => json_text(&json!({
            "index": c.index,
            "f": c.f,
            "g": c.g,
            "provenance": c.provenance,
            "phi": PolyMatrixJson::from(&phi),
            "terms": terms,
            "differentials": cx.positions().skip(1).map(|p| json!({"position": p, "matrix": PolyMatrixJson::from(&cx.diff(p))})).collect::<Vec<_>>(),
            "d_squared_zero": ok,
        }))?,
        Format::Csv => {
            let mut s = String::from("position,rank,twist\n");
            for p in cx.positions() {
                let t = cx.term(p).generator_twists();
                writeln!(s, "{p},{},{}", t.len(), t.first().copied().unwrap_or(0))?;
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            writeln!(s, "C_{}(φ), {}x{} matrix, {:?}", c.index, c.g, c.f, c.provenance)?;
            for (p, k) in cx.positions().zip(&c.kinds) {
                writeln!(s, "  [{p}] rank {} {:?}", cx.term(p).rank(), k)?;
            }
            writeln!(s, "d^2 = 0: {ok}")?;
            s
        }
    };
    Ok((text, ok))
}

fn write_out(out: &Output, text: &str) -> anyhow::Result<()> {
    match &out.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let (result, out) = match &cli.command {
        Command::Hermite { b, compare_classical, out } => (hermite(*b, *compare_classical, out.format), out),
        Command::Verify { run, window, out } => (verify(run, *window, out.format), out),
        Command::Generation { run, side, out } => (generation(run, *side, out.format), out),
        Command::Search { case, b, out } => (search(*case, *b, out.format), out),
        Command::En { preset, f, g, i, d, b, out } => (en(*preset, *f, *g, *i, *d, *b, out.format), out),
    };
    let (text, ok) = result?;
    write_out(out, &text)?;
    Ok(ok)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::Verification(_)
            | Error::Containment { .. }
            | Error::NotInvertible { .. }
            | Error::Inconclusive(_)
            | Error::Internal(_),
        ) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("EN_NUM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
