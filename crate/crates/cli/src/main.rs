use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use klpoly::kl::{kl_forward, kl_inverse};
use klpoly::orthogonality::{
    classify, connection_coeffs, extract_structural, moments_to_recurrence, MomentFunctional,
    PearsonPair, StructuralRelation,
};
use klpoly::poly::{Poly, Var};
use klpoly::rat::{frac, parse_rat, rat, rat_to_string, Rat};
use klpoly::sequences::{
    cdh_monic, hermite, hermite_type, hypergeom_pair, laguerre, perturbed_laguerre,
    reversed_appell, Mps,
};
use klpoly::stirling::build_tables;
use klpoly_cli::suites::run_suite;
use num_traits::Zero;

#[derive(Parser)]
#[command(name = "klpoly", version, about = "Exact Kontorovich-Lebedev polynomial toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
    Roundtrip,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the transform (or its inverse) to a polynomial.
    Transform {
        /// Transform parameter alpha, as a rational "p/q".
        #[arg(long, default_value = "0")]
        alpha: String,
        /// Comma-separated rational coefficients, constant term first.
        #[arg(long)]
        coeffs: String,
        #[arg(long, value_enum, default_value = "forward")]
        dir: Direction,
    },
    /// Generate a polynomial family table with recurrence metadata.
    Sequence {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Highest degree to generate.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
    },
    /// Extract the structural relation of a family's transform image.
    Extract {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
    /// Classify a Pearson pair per the d-orthogonality theorem.
    Classify {
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Run a verification suite; exit code 0 iff every check passes.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Tolerance for the numeric suite.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Dump the modified Stirling triangles t and T.
    Tables {
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// One of: laguerre, hermite, hermite-type, reversed-appell, cdh,
    /// perturbed-laguerre, generalized-hermite, hypergeom.
    #[arg(long)]
    family: String,
    /// Comma-separated rational family parameters (hypergeom: "a1,..;b1,..").
    #[arg(long, default_value = "")]
    params: String,
    /// Transform parameter alpha, as a rational "p/q".
    #[arg(long, default_value = "0")]
    alpha: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Transform { alpha, coeffs, dir } => cmd_transform(&alpha, &coeffs, dir),
        Command::Sequence { fam, n, out } => cmd_sequence(&fam, n, out),
        Command::Extract { fam, nmax } => cmd_extract(&fam, nmax),
        Command::Classify { fam } => cmd_classify(&fam),
        Command::Verify { suite, nmax, tol } => cmd_verify(&suite, nmax, tol),
        Command::Tables { alpha, nmax, out } => cmd_tables(&alpha, nmax, out),
    }
}

fn parse_rational(s: &str) -> Result<Rat, String> {
    parse_rat(s.trim()).map_err(|e| e.to_string())
}

fn parse_rational_list(s: &str) -> Result<Vec<Rat>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(rat_to_string(r))).collect())
}

fn poly_json(p: &Poly) -> Value {
    json!({ "var": format!("{}", p.var), "coeffs": rats_json(p.coeffs()) })
}

fn relation_json(st: &StructuralRelation) -> Value {
    json!({
        "zeta": rats_json(&st.zeta),
        "a": st.a.iter().map(|row| rats_json(row)).collect::<Vec<_>>(),
        "detected_d": st.detected_d,
        "nmax": st.nmax,
    })
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

fn cmd_transform(alpha: &str, coeffs: &str, dir: Direction) -> Result<ExitCode, String> {
    let alpha = parse_rational(alpha)?;
    let cs = parse_rational_list(coeffs)?;
    if cs.is_empty() {
        return Err("empty coefficient list".into());
    }
    let (value, roundtrip_ok) = match dir {
        Direction::Forward => {
            let f = Poly::from_coeffs(Var::X, cs.clone());
            (poly_json(&kl_forward(&f, &alpha)), None)
        }
        Direction::Inverse => {
            let g = Poly::from_coeffs(Var::Z, cs.clone());
            (poly_json(&kl_inverse(&g, &alpha)), None)
        }
        Direction::Roundtrip => {
            let f = Poly::from_coeffs(Var::X, cs.clone());
            let back = kl_inverse(&kl_forward(&f, &alpha), &alpha);
            (poly_json(&back), Some(back == f))
        }
    };
    let mut report = json!({
        "command": "transform",
        "alpha": rat_to_string(&alpha),
        "input": rats_json(&cs),
        "output": value,
    });
    if let Some(ok) = roundtrip_ok {
        report["roundtrip_ok"] = Value::Bool(ok);
    }
    emit(&report);
    Ok(ExitCode::SUCCESS)
}

/// A family instance: the sequence itself (x-side unless `is_image`), an
/// optional three-term recurrence, and display metadata.
struct FamilyData {
    mps: Mps,
    three_term: Option<(Vec<Rat>, Vec<Rat>)>,
    is_image: bool,
    meta: Value,
}

fn build_family(fam: &FamilyArgs, n: usize) -> Result<FamilyData, String> {
    let alpha = parse_rational(&fam.alpha)?;
    let name = fam.family.as_str();
    let params = if name == "hypergeom" {
        Vec::new()
    } else {
        parse_rational_list(&fam.params)?
    };
    let need = |k: usize| -> Result<(), String> {
        if params.len() == k {
            Ok(())
        } else {
            Err(format!("family '{name}' takes {k} parameter(s), got {}", params.len()))
        }
    };
    match name {
        "laguerre" => {
            need(1)?;
            let a1 = params[0].clone();
            let mps = laguerre(&a1, n).map_err(|e| e.to_string())?;
            let beta: Vec<Rat> = (0..=n).map(|k| rat(2 * k as i64) + &a1 + rat(1)).collect();
            let gamma: Vec<Rat> =
                (1..=n).map(|k| rat(k as i64) * (rat(k as i64) + &a1)).collect();
            Ok(FamilyData {
                mps,
                meta: json!({ "alpha1": rat_to_string(&a1) }),
                three_term: Some((beta, gamma)),
                is_image: false,
            })
        }
        "hermite" => {
            need(0)?;
            let mps = hermite(n).map_err(|e| e.to_string())?;
            let beta = vec![Rat::zero(); n + 1];
            let gamma: Vec<Rat> = (1..=n).map(|k| frac(k as i64, 2)).collect();
            Ok(FamilyData { mps, meta: json!({}), three_term: Some((beta, gamma)), is_image: false })
        }
        "generalized-hermite" => {
            need(1)?;
            let mu = params[0].clone();
            let u = MomentFunctional::generalized_hermite(&mu);
            let rec = moments_to_recurrence(&u, n).map_err(|e| e.to_string())?;
            Ok(FamilyData {
                mps: rec.mps,
                three_term: Some((rec.beta, rec.gamma)),
                is_image: false,
                meta: json!({ "mu": rat_to_string(&mu) }),
            })
        }
        "hermite-type" => {
            need(1)?;
            let d = as_dim(&params[0])?;
            Ok(FamilyData {
                mps: hermite_type(d, n),
                three_term: None,
                is_image: false,
                meta: json!({ "d": d }),
            })
        }
        "reversed-appell" => {
            if params.is_empty() {
                return Err("reversed-appell takes d followed by alpha_1..alpha_d".into());
            }
            let d = as_dim(&params[0])?;
            if params.len() != d + 1 {
                return Err(format!("reversed-appell with d = {d} needs {d} alpha parameters"));
            }
            let alphas = params[1..].to_vec();
            let mps = reversed_appell(d, &alphas, n).map_err(|e| e.to_string())?;
            Ok(FamilyData {
                mps,
                three_term: None,
                is_image: false,
                meta: json!({ "d": d, "alphas": rats_json(&alphas) }),
            })
        }
        "cdh" => {
            need(2)?;
            let mps = cdh_monic(&alpha, &params[0], &params[1], n).map_err(|e| e.to_string())?;
            Ok(FamilyData {
                mps,
                three_term: None,
                is_image: true,
                meta: json!({
                    "alpha": rat_to_string(&alpha),
                    "alpha1": rat_to_string(&params[0]),
                    "alpha2": rat_to_string(&params[1]),
                }),
            })
        }
        "perturbed-laguerre" => {
            need(1)?;
            let pl =
                perturbed_laguerre(&alpha, &params[0], n).map_err(|e| e.to_string())?;
            Ok(FamilyData {
                mps: pl.mps,
                three_term: Some((pl.beta, pl.gamma)),
                is_image: false,
                meta: json!({
                    "alpha": rat_to_string(&alpha),
                    "lambda": rat_to_string(&params[0]),
                }),
            })
        }
        "hypergeom" => {
            let (a_str, b_str) = fam
                .params
                .split_once(';')
                .ok_or("hypergeom params: \"a1,..,ap;b1,..,bq\" (either side may be empty)")?;
            let a_list = parse_rational_list(a_str)?;
            let b_list = parse_rational_list(b_str)?;
            let (family, _image) =
                hypergeom_pair(&a_list, &b_list, n, &alpha).map_err(|e| e.to_string())?;
            Ok(FamilyData {
                mps: family,
                three_term: None,
                is_image: false,
                meta: json!({ "a": rats_json(&a_list), "b": rats_json(&b_list) }),
            })
        }
        other => Err(format!("unknown family '{other}'")),
    }
}

fn as_dim(r: &Rat) -> Result<usize, String> {
    klpoly::rat::as_usize(r)
        .filter(|d| *d >= 1)
        .ok_or_else(|| format!("expected a positive integer dimension, got {}", rat_to_string(r)))
}

fn cmd_sequence(fam: &FamilyArgs, n: usize, out: OutFormat) -> Result<ExitCode, String> {
    let data = build_family(fam, n)?;
    match out {
        OutFormat::Json => {
            let mut report = json!({
                "command": "sequence",
                "family": fam.family,
                "params": data.meta,
                "n": n,
                "polys": data.mps.polys.iter().map(poly_json).collect::<Vec<_>>(),
            });
            if let Some((beta, gamma)) = &data.three_term {
                report["recurrence"] = json!({
                    "order": 2,
                    "beta": rats_json(beta),
                    "gamma": rats_json(gamma),
                });
            } else {
                // structural relation of the sequence itself as metadata
                let st = extract_structural(&data.mps.polys);
                report["recurrence"] = relation_json(&st);
            }
            emit(&report);
        }
        OutFormat::Csv => {
            for (k, p) in data.mps.polys.iter().enumerate() {
                let row: Vec<String> = p.coeffs().iter().map(rat_to_string).collect();
                println!("{k},{}", row.join(","));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_extract(fam: &FamilyArgs, nmax: usize) -> Result<ExitCode, String> {
    let alpha = parse_rational(&fam.alpha)?;
    let data = build_family(fam, nmax + 2)?;
    let image = if data.is_image { data.mps.clone() } else { data.mps.kl_image(&alpha) };
    let st = extract_structural(&image.polys[..=nmax + 1]);
    // When a three-term recurrence is available, rerun through the connection
    // formulas, which self-check against the extraction route.
    let oracle = data.three_term.as_ref().map(|(beta, gamma)| {
        std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
            connection_coeffs(&data.mps, beta, gamma, &alpha, nmax) == st
        }))
        .unwrap_or(false)
    });
    let mut report = json!({
        "command": "extract",
        "family": fam.family,
        "params": data.meta,
        "alpha": rat_to_string(&alpha),
        "relation": relation_json(&st),
    });
    if let Some(ok) = oracle {
        report["oracle_agrees"] = Value::Bool(ok);
    }
    emit(&report);
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(fam: &FamilyArgs) -> Result<ExitCode, String> {
    let alpha = parse_rational(&fam.alpha)?;
    let params = parse_rational_list(&fam.params)?;
    let (pair, u) = match fam.family.as_str() {
        "laguerre" => {
            if params.len() != 1 {
                return Err("laguerre takes 1 parameter".into());
            }
            let a1 = params[0].clone();
            (
                PearsonPair::new(
                    Poly::monomial(Var::X, 1),
                    Poly::from_coeffs(Var::X, vec![-&a1 - rat(1), rat(1)]),
                ),
                MomentFunctional::laguerre(&a1),
            )
        }
        "hermite" => (
            PearsonPair::new(
                Poly::one(Var::X),
                Poly::from_coeffs(Var::X, vec![rat(0), rat(2)]),
            ),
            MomentFunctional::hermite(),
        ),
        "generalized-hermite" => {
            if params.len() != 1 {
                return Err("generalized-hermite takes 1 parameter".into());
            }
            let mu = params[0].clone();
            (
                PearsonPair::new(
                    Poly::monomial(Var::X, 1),
                    Poly::from_coeffs(Var::X, vec![-(&mu + &mu) - rat(1), rat(0), rat(2)]),
                ),
                MomentFunctional::generalized_hermite(&mu),
            )
        }
        other => return Err(format!("classify supports Pearson-class families, not '{other}'")),
    };
    let rep = classify(&pair, &alpha, &u);
    emit(&json!({
        "command": "classify",
        "family": fam.family,
        "alpha": rat_to_string(&alpha),
        "case": format!("{}", rep.case),
        "rho": poly_json(&rep.rho),
        "N": rat_to_string(&rep.n_const),
        "d": rep.d,
        "s": rep.s,
        "flags": rep.flags.iter()
            .map(|(name, pass)| json!({ "name": name, "pass": pass }))
            .collect::<Vec<_>>(),
    }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: &str, nmax: usize, tol: f64) -> Result<ExitCode, String> {
    let start = Instant::now();
    let checks = run_suite(suite, nmax, tol);
    let wall_ms = start.elapsed().as_millis() as u64;
    let pass = checks.iter().all(|c| c.pass);
    emit(&json!({
        "command": "verify",
        "params": { "suite": suite, "nmax": nmax, "tol": tol },
        "checks": checks.iter()
            .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
            .collect::<Vec<_>>(),
        "pass": pass,
        "metadata": { "wall_ms": wall_ms },
    }));
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_tables(alpha: &str, nmax: usize, out: OutFormat) -> Result<ExitCode, String> {
    let alpha = parse_rational(alpha)?;
    let tables = build_tables(nmax, &alpha);
    match out {
        OutFormat::Json => emit(&json!({
            "command": "tables",
            "alpha": rat_to_string(&alpha),
            "nmax": nmax,
            "t": tables.t.rows().iter().map(|r| rats_json(r)).collect::<Vec<_>>(),
            "t_inv": tables.t_inv.rows().iter().map(|r| rats_json(r)).collect::<Vec<_>>(),
        })),
        OutFormat::Csv => {
            for (name, tri) in [("t", &tables.t), ("T", &tables.t_inv)] {
                for (n, row) in tri.rows().iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(rat_to_string).collect();
                    println!("{name},{n},{}", cells.join(","));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
