//! flopcheck: command-line front end for the verification engine.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use flopcheck_core::bott::{bott_cohomology, euler_char, CohomologyResult, GrassmannData, HomogBundle};
use flopcheck_core::bundle::{normalize, parse_expr};
use flopcheck_core::functor::{
    eagon_northcott, filtration_ladder, generator_set, hom_compare, k_class_report, phi_image,
    r1_functor_table, roundtrip_check, GeneratorSheaf,
};
use flopcheck_core::lattice::{
    canonical_coefficients, flop_dimensions, pair, picard_relation_check, relative_nef,
    CurveClassY, DivClassY,
};
use flopcheck_core::schur::GLWeight;
use flopcheck_core::total_space::{
    graded_hom, span_generators, spanning_gram, Side, SpaceKind, TotalSpaceModel,
};
use flopcheck_core::verify::verify_all;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SpaceArg {
    /// Cotangent bundle total space (exact graded pieces).
    Cotangent,
    /// One-point extension of the cotangent bundle (E1-bound pieces).
    Extended,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SideArg {
    Minus,
    Plus,
}

#[derive(Parser)]
#[command(name = "flopcheck", version, about = "exact checks for a stratified Mukai flop on G(2,n)")]
struct Cli {
    /// Rank of the tautological subbundle.
    #[arg(long, global = true, default_value_t = 2)]
    r: u32,
    /// Ambient dimension.
    #[arg(long, global = true, default_value_t = 4)]
    n: u32,
    /// Grading cutoff for graded Hom tables.
    #[arg(long, global = true, default_value_t = 10, env = "FLOPCHECK_CUTOFF")]
    cutoff: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sheaf cohomology of an irreducible homogeneous bundle on G(r,n).
    Cohomology {
        /// Grassmannian as "r,n" (overrides --r/--n).
        #[arg(long)]
        g: Option<String>,
        /// Weight on the quotient bundle, e.g. "0,-1".
        #[arg(long)]
        mu: String,
        /// Weight on the subbundle, e.g. "1,0".
        #[arg(long)]
        lambda: String,
    },
    /// Euler characteristic of a bundle expression on G(r,n).
    Euler {
        #[arg(long)]
        g: Option<String>,
        /// Bundle expression, e.g. "sym(2,dual(S)) * O(1)".
        #[arg(long)]
        expr: String,
    },
    /// Decompose a bundle expression into irreducible summands.
    Normalize {
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        expr: String,
    },
    /// Graded Hom table between pullback bundles on a total-space model.
    GradedHom {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum, default_value_t = SpaceArg::Extended)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value_t = SideArg::Minus)]
        side: SideArg,
    },
    /// Euler pairing matrix of the spanning generators and its determinant.
    Gram,
    /// Relative intersection table, nef tests, and discrepancies on Y.
    Intersection,
    /// Dimension table for the flop at (r, n).
    Dims,
    /// Forward functor image of each spanning generator.
    FunctorTable,
    /// Round trip of the spanning generators through both functors.
    Roundtrip,
    /// Resolution of the structure sheaf of the flopped center: ranks and signs.
    EagonNorthcott,
    /// Graded quotients of the direct-image filtration of O_Y(-iE1').
    Filtration {
        /// Multiplicity of the exceptional divisor.
        #[arg(long, default_value_t = 1)]
        i: u32,
    },
    /// Graded Hom tables on both sides of the flop, with shift analysis.
    HomCompare {
        #[arg(long)]
        i1: u32,
        #[arg(long)]
        j1: u32,
        #[arg(long)]
        i2: u32,
        #[arg(long)]
        j2: u32,
    },
    /// Run every check in the verification suite.
    VerifyAll,
}

type AnyErr = Box<dyn std::error::Error>;

fn parse_g(s: Option<&str>, r: u32, n: u32) -> Result<GrassmannData, AnyErr> {
    let (r, n) = match s {
        Some(s) => {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 2 {
                return Err("expected --g as \"r,n\"".into());
            }
            (parts[0].trim().parse()?, parts[1].trim().parse()?)
        }
        None => (r, n),
    };
    Ok(GrassmannData::new(r, n)?)
}

/// Outcome of one subcommand: both renderings plus a failure flag for
/// the exit-status contract.
struct Report {
    text: String,
    json: serde_json::Value,
    failed: bool,
}

impl Report {
    fn ok(text: String, json: serde_json::Value) -> Report {
        Report { text, json, failed: false }
    }
}

fn run(cli: &Cli) -> Result<Report, AnyErr> {
    match &cli.cmd {
        Cmd::Cohomology { g, mu, lambda } => {
            let g = parse_g(g.as_deref(), cli.r, cli.n)?;
            let b = HomogBundle::new(g, GLWeight::parse(mu)?, GLWeight::parse(lambda)?)?;
            match bott_cohomology(g, &b) {
                CohomologyResult::Zero => Ok(Report::ok(
                    format!("{} on G({},{}): all cohomology vanishes\n", b, g.r(), g.n()),
                    json!({"bundle": b.to_string(), "result": "zero"}),
                )),
                CohomologyResult::NonZero { degree, rep, dim } => Ok(Report::ok(
                    format!(
                        "{} on G({},{}): H^{} = C^{}, weight ({})\n",
                        b, g.r(), g.n(), degree, dim, rep
                    ),
                    json!({
                        "bundle": b.to_string(),
                        "degree": degree.to_string(),
                        "dim": dim.to_string(),
                        "weight": rep.to_string(),
                    }),
                )),
            }
        }
        Cmd::Euler { g, expr } => {
            let g = parse_g(g.as_deref(), cli.r, cli.n)?;
            let form = normalize(&parse_expr(expr)?, g)?;
            let chi: i64 = form.terms().map(|(b, m)| m as i64 * euler_char(g, b)).sum();
            Ok(Report::ok(
                format!("chi(G({},{}), {}) = {}\n", g.r(), g.n(), expr, chi),
                json!({"expr": expr, "chi": chi.to_string()}),
            ))
        }
        Cmd::Normalize { g, expr } => {
            let g = parse_g(g.as_deref(), cli.r, cli.n)?;
            let form = normalize(&parse_expr(expr)?, g)?;
            let mut text = String::new();
            let mut terms = Vec::new();
            for (b, m) in form.terms() {
                text.push_str(&format!("{:>4} x {}\n", m, b));
                terms.push(json!([b.to_string(), m.to_string()]));
            }
            text.push_str(&format!("rank {}\n", form.rank()));
            Ok(Report::ok(
                text,
                json!({"expr": expr, "terms": terms, "rank": form.rank().to_string()}),
            ))
        }
        Cmd::GradedHom { a, b, space, side } => {
            let g = GrassmannData::new(cli.r, cli.n)?;
            let kind = match space {
                SpaceArg::Cotangent => SpaceKind::Cotangent,
                SpaceArg::Extended => SpaceKind::ExtendedCotangent,
            };
            let side = match side {
                SideArg::Minus => Side::Minus,
                SideArg::Plus => Side::Plus,
            };
            let model = TotalSpaceModel::new(g, kind, side);
            let table = graded_hom(&parse_expr(a)?, &parse_expr(b)?, &model, cli.cutoff)?;
            let mut text = format!(
                "graded Hom({}, {}) on G({},{}) model, cutoff {} ({})\n",
                a, b, g.r(), g.n(), cli.cutoff, table.exactness().label()
            );
            for p in table.degrees() {
                let row: Vec<String> = table.row(p).iter().map(|d| d.to_string()).collect();
                text.push_str(&format!("p={}: [{}]\n", p, row.join(", ")));
            }
            if table.degrees().is_empty() {
                text.push_str("all entries vanish\n");
            }
            Ok(Report::ok(text, table.to_json()))
        }
        Cmd::Gram => {
            let g = GrassmannData::new(cli.r, cli.n)?;
            let gens = span_generators(cli.n);
            let (matrix, det) = spanning_gram(g, &gens)?;
            let mut text = format!("spanning generators on G(2,{}): {}\n", cli.n, gens.len());
            let mut rows = Vec::new();
            for row in &matrix {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                text.push_str(&format!("[{}]\n", cells.join(", ")));
                rows.push(json!(cells));
            }
            text.push_str(&format!("det = {}\n", det));
            Ok(Report::ok(
                text,
                json!({
                    "generators": gens.iter().map(|&(i, j)| json!([i.to_string(), j.to_string()])).collect::<Vec<_>>(),
                    "matrix": rows,
                    "det": det.to_string(),
                }),
            ))
        }
        Cmd::Intersection => {
            let n = cli.n as i64;
            let table = [
                ("(E1'.l1')", pair(DivClassY::E1P, CurveClassY::L1P)),
                ("(E1'.l2)", pair(DivClassY::E1P, CurveClassY::L2)),
                ("(E2.l1')", pair(DivClassY::E2, CurveClassY::L1P)),
                ("(E2.l2)", pair(DivClassY::E2, CurveClassY::L2)),
                ("(f*O_X(1).l1')", pair(DivClassY::H, CurveClassY::L1P)),
                ("(f*O_X(1).l2)", pair(DivClassY::H, CurveClassY::L2)),
            ];
            let (a, b) = canonical_coefficients(n)?;
            let rel = picard_relation_check();
            let mut text = String::new();
            let mut payload = BTreeMap::new();
            for (name, v) in table {
                text.push_str(&format!("{} = {}\n", name, v));
                payload.insert(name.to_string(), v.to_string());
            }
            text.push_str(&format!("K_Y = f*K_X + {}E1' + {}E2\n", a, b));
            text.push_str(&format!(
                "f^{{+*}}O_{{X+}}(1) = -f*O_X(1) - 2E1' - E2; pairings (l1', l2) = ({}, {})\n",
                rel.pair_l1, rel.pair_l2
            ));
            text.push_str(&format!(
                "E2 nef: {}, -E1' nef: {}\n",
                relative_nef(DivClassY::E2),
                relative_nef(DivClassY::new(0, -1, 0)),
            ));
            payload.insert("K_Y coefficients".into(), format!("({},{})", a, b));
            Ok(Report::ok(text, json!({"n": n.to_string(), "pairings": payload})))
        }
        Cmd::Dims => {
            let d = flop_dimensions(cli.r as i64, cli.n as i64)?;
            Ok(Report::ok(
                format!(
                    "G(r,n): dim G = {}, dim X_0 = {}, dim X = {}, dim W = {}\n",
                    d.dim_g, d.dim_x0, d.dim_x, d.dim_w
                ),
                json!({
                    "dim_g": d.dim_g.to_string(),
                    "dim_x0": d.dim_x0.to_string(),
                    "dim_x": d.dim_x.to_string(),
                    "dim_w": d.dim_w.to_string(),
                }),
            ))
        }
        Cmd::FunctorTable => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for g in generator_set(cli.n) {
                let img = phi_image(&g);
                text.push_str(&format!("({},{}) {} -> {}\n", g.i, g.j, g, img));
                rows.push(json!({"generator": g, "image": img}));
            }
            let r1 = r1_functor_table(0, cli.n);
            text.push_str(&format!(
                "twist window at l = 0: k in [{}, 0], image twist -k\n",
                r1.entries.first().map(|e| e.0).unwrap_or(0)
            ));
            Ok(Report::ok(text, json!({"n": cli.n.to_string(), "table": rows})))
        }
        Cmd::Roundtrip => {
            let rt = roundtrip_check(cli.n)?;
            let mut text = String::new();
            for c in &rt.chains {
                text.push_str(&format!(
                    "({},{}) -> {} -> ({},{})  {}\n",
                    c.generator.i,
                    c.generator.j,
                    c.image,
                    c.back.i,
                    c.back.j,
                    if c.identity { "identity" } else { "MISMATCH" }
                ));
            }
            text.push_str(&format!(
                "round trip: {}\n",
                if rt.all_identity { "all identities" } else { "FAILED" }
            ));
            Ok(Report {
                text,
                json: serde_json::to_value(&rt)?,
                failed: !rt.all_identity,
            })
        }
        Cmd::EagonNorthcott => {
            let en = eagon_northcott(cli.n)?;
            let mut text = String::new();
            for t in &en.terms {
                text.push_str(&format!(
                    "{} rank {:>4}  {}\n",
                    if t.sign > 0 { "+" } else { "-" },
                    t.rank,
                    t.description
                ));
            }
            let sum = en.signed_rank_sum();
            text.push_str(&format!("signed rank sum = {}\n", sum));
            let kc = k_class_report(cli.n, None)?;
            for ((i, j), chi) in &kc.pairing_row {
                text.push_str(&format!("chi row against ({},{}): {}\n", i, j, chi));
            }
            Ok(Report {
                text,
                json: json!({"complex": en, "k_class_row": kc, "signed_rank_sum": sum.to_string()}),
                failed: sum != 0,
            })
        }
        Cmd::Filtration { i } => {
            let f = filtration_ladder(*i)?;
            let mut text = format!("filtration of O_Y(-{}E1'), {} graded steps\n", i, f.steps.len());
            for s in &f.steps {
                text.push_str(&format!("(k,l)=({},{}): {}\n", s.k, s.l, s.descriptor));
            }
            text.push_str(&format!("bottom: {}\n", f.bottom));
            Ok(Report::ok(text, serde_json::to_value(&f)?))
        }
        Cmd::HomCompare { i1, j1, i2, j2 } => {
            let g1 = GeneratorSheaf::new(*i1, *j1, cli.n)?;
            let g2 = GeneratorSheaf::new(*i2, *j2, cli.n)?;
            let hc = hom_compare(&g1, &g2, cli.cutoff)?;
            let mut text = format!(
                "Hom tables for ({},{}) x ({},{}) at cutoff {} (reported)\n",
                i1, j1, i2, j2, cli.cutoff
            );
            for ds in &hc.degree_shifts {
                let l: Vec<String> = ds.left_row.iter().map(|v| v.to_string()).collect();
                let r: Vec<String> = ds.right_row.iter().map(|v| v.to_string()).collect();
                let s: Vec<String> = ds.shifts.iter().map(|v| v.to_string()).collect();
                text.push_str(&format!(
                    "p={}: left [{}] right [{}] shifts [{}]\n",
                    ds.degree,
                    l.join(", "),
                    r.join(", "),
                    s.join(", ")
                ));
            }
            if hc.degree_shifts.is_empty() {
                text.push_str("both tables vanish\n");
            }
            Ok(Report::ok(text, hc.to_json()))
        }
        Cmd::VerifyAll => {
            let rep = verify_all(cli.n, cli.cutoff)?;
            Ok(Report {
                text: rep.to_text(),
                json: rep.to_json(),
                failed: rep.has_failures(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::FAILURE;
        }
    };
    let rendered = match cli.format {
        Format::Text => report.text,
        Format::Json => format!("{}\n", report.json),
    };
    let write_result = match &cli.output {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = write_result {
        eprintln!("error: {}", e);
        return ExitCode::FAILURE;
    }
    if report.failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
