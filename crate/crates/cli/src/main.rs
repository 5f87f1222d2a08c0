//! `linfactor`: factor degree distributions, constructions and explicit
//! factorizations of composed polynomials over finite fields.
//!
//! Exit status: 0 on success, 2 on invalid input or a violated precondition,
//! 1 when a closed form disagrees with the factorization oracle.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use linfactor::construct::{extend_by_primitive, iterate_f2, ConstructionChain};
use linfactor::distribution::{
    additive_distribution, butler_distribution, is_composition_irreducible, ni_lower_bound,
    DegreeDistribution,
};
use linfactor::explicit::{
    closed_form_cubic_char2, closed_form_quadratic, factor_f_xq_minus_x, ShiftFactorization,
};
use linfactor::linearized::{compose_f_lg, element_degree, fq_order, MAX_COEFFS_ENV};
use linfactor::poly::factor_with_seed;
use linfactor::text::{parse_element, parse_field, parse_poly, parse_poly_in};
use linfactor::{Error, ExtField, FiniteField, Poly};

#[derive(Parser)]
#[command(
    name = "linfactor",
    version,
    about = "Factoring f(L_g(x)) over finite fields"
)]
struct Cli {
    /// Field, e.g. `p=5` or `p=2,k=2,mod=t^2+t+1`
    #[arg(long, global = true)]
    field: Option<String>,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized factorization
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest polynomial (in coefficients) a composition may materialize
    #[arg(long, global = true)]
    max_coeffs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FG {
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
}

#[derive(Subcommand)]
enum Command {
    /// Expand f(L_g(x))
    Compose(FG),
    /// F_q-order of a root of f, or of an element of F_q[z]/(f)
    FqOrder {
        #[arg(long)]
        f: String,
        /// Element as a polynomial in z
        #[arg(long)]
        element: Option<String>,
    },
    /// Predicted degrees of the irreducible factors of f(L_g(x)) or f(x^m)
    Distribution {
        #[arg(long)]
        f: String,
        #[arg(long, required_unless_present = "multiplicative_m")]
        g: Option<String>,
        #[arg(long, conflicts_with = "g")]
        multiplicative_m: Option<u64>,
    },
    /// Complete factorization
    Factor {
        #[arg(long)]
        f: String,
    },
    /// Irreducible polynomials of degree n (q^d - 1) from primitive g
    Construct {
        #[arg(long)]
        f: String,
        /// Comma-separated primitive polynomials
        #[arg(long, value_delimiter = ',', required = true)]
        chain: Vec<String>,
    },
    /// Explicit factorization of f(x^q - x)
    Explicit {
        #[arg(long, required_unless_present = "closed_form")]
        f: Option<String>,
        #[arg(long, value_enum, conflicts_with = "f")]
        closed_form: Option<ClosedForm>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Compare the predicted distribution with the factorization oracle
    Verify {
        #[arg(long)]
        f: String,
        #[arg(long, required_unless_present = "multiplicative_m")]
        g: Option<String>,
        #[arg(long, conflicts_with = "g")]
        multiplicative_m: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosedForm {
    Quadratic,
    Cubic2,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.max_coeffs {
        std::env::set_var(MAX_COEFFS_ENV, n.to_string());
    }
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let spec = cli
        .field
        .as_deref()
        .ok_or_else(|| Failure::Input("--field is required".into()))?;
    let field = parse_field(spec)?;
    let poly = |s: &str| parse_poly(&field, s).map_err(Failure::from);
    match &cli.command {
        Command::Compose(FG { f, g }) => {
            let (f, g) = (poly(f)?, poly(g)?);
            let c = compose_f_lg(&f, &g)?;
            Ok(if cli.json {
                json(&ComposeOut {
                    field: field.spec_string(),
                    f: f.to_string(),
                    g: g.to_string(),
                    degree: c.degree().unwrap_or(0),
                    composition: c.to_string(),
                })
            } else {
                c.to_string()
            })
        }
        Command::FqOrder { f, element } => fq_order_cmd(cli, &field, &poly(f)?, element.as_deref()),
        Command::Distribution {
            f,
            g,
            multiplicative_m,
        } => {
            let f = poly(f)?;
            match (g, multiplicative_m) {
                (_, Some(m)) => {
                    let d = butler_distribution(&f, *m)?;
                    Ok(render_distribution(
                        cli,
                        &field,
                        &f,
                        None,
                        Some(*m),
                        &d,
                        None,
                    ))
                }
                (Some(g), None) => {
                    let g = poly(g)?;
                    let d = additive_distribution(&f, &g)?;
                    let bound = if g.is_divisible_by_x() || f.is_divisible_by_x() {
                        None
                    } else {
                        Some(ni_lower_bound(&f, &g)?)
                    };
                    Ok(render_distribution(
                        cli,
                        &field,
                        &f,
                        Some(&g),
                        None,
                        &d,
                        bound,
                    ))
                }
                (None, None) => Err(Failure::Input(
                    "--g or --multiplicative-m is required".into(),
                )),
            }
        }
        Command::Factor { f } => {
            let f = poly(f)?;
            let fac = factor_with_seed(&f, cli.seed)?;
            let factors: Vec<FactorOut> = fac
                .factors
                .iter()
                .map(|(p, e)| FactorOut {
                    poly: p.to_string(),
                    degree: p.degree().unwrap_or(0),
                    multiplicity: *e,
                })
                .collect();
            Ok(if cli.json {
                json(&FactorizationOut {
                    field: field.spec_string(),
                    f: f.to_string(),
                    unit: fac.unit.to_string(),
                    factors,
                })
            } else {
                let mut out = format!("unit: {}", fac.unit);
                for fo in factors {
                    out.push_str(&format!("\ndegree {}: {}", fo.degree, fo.poly));
                    if fo.multiplicity > 1 {
                        out.push_str(&format!("  (multiplicity {})", fo.multiplicity));
                    }
                }
                out
            })
        }
        Command::Construct { f, chain } => {
            let f = poly(f)?;
            let gs = chain
                .iter()
                .map(|s| poly(s))
                .collect::<Result<Vec<_>, _>>()?;
            let chain = if field.q() == 2 {
                iterate_f2(&f, &gs)?
            } else if gs.len() == 1 {
                let step = extend_by_primitive(&f, &gs[0])?;
                ConstructionChain {
                    base: step.f_in.clone(),
                    steps: vec![step],
                }
            } else {
                return Err(Failure::Input(
                    "chains of more than one step need q = 2".into(),
                ));
            };
            Ok(render_chain(cli, &field, &chain))
        }
        Command::Explicit {
            f,
            closed_form,
            a,
            b,
        } => {
            let elem = |s: &Option<String>, name: &str| {
                s.as_deref()
                    .ok_or_else(|| Failure::Input(format!("--{name} is required")))
                    .and_then(|s| parse_element(&field, s).map_err(Failure::from))
            };
            let (f, out) = match (f, closed_form) {
                (Some(f), _) => {
                    let f = poly(f)?;
                    let out = factor_f_xq_minus_x(&f)?;
                    (f, out)
                }
                (None, Some(ClosedForm::Quadratic)) => {
                    let a = elem(a, "a")?;
                    let out = closed_form_quadratic(&a)?;
                    let f = Poly::new(&field, vec![field.neg(a.value()), 0, 1]);
                    (f, out)
                }
                (None, Some(ClosedForm::Cubic2)) => {
                    let (a, b) = (elem(a, "a")?, elem(b, "b")?);
                    let out = closed_form_cubic_char2(&a, &b)?;
                    let f = Poly::new(&field, vec![b.value(), a.value(), 0, 1]);
                    (f, out)
                }
                (None, None) => {
                    return Err(Failure::Input("--f or --closed-form is required".into()))
                }
            };
            Ok(render_shifts(cli, &field, &f, &out))
        }
        Command::Verify {
            f,
            g,
            multiplicative_m,
        } => {
            let f = poly(f)?;
            verify_cmd(
                cli,
                &field,
                &f,
                g.as_deref().map(poly).transpose()?,
                *multiplicative_m,
            )
        }
    }
}

#[derive(Serialize)]
struct ComposeOut {
    field: String,
    f: String,
    g: String,
    degree: usize,
    composition: String,
}

#[derive(Serialize)]
struct FqOrderOut {
    field: String,
    f: String,
    element: String,
    order: String,
    degree: usize,
}

fn fq_order_cmd(cli: &Cli, field: &FiniteField, f: &Poly, element: Option<&str>) -> Outcome {
    let ctx = ExtField::new(f)?;
    let a = match element {
        Some(s) => ctx.from_poly(&parse_poly_in(field, s, 'z')?),
        None => ctx.generator(),
    };
    let order = fq_order(&a);
    let degree = element_degree(&a);
    Ok(if cli.json {
        json(&FqOrderOut {
            field: field.spec_string(),
            f: f.to_string(),
            element: a.to_string(),
            order: order.to_string(),
            degree,
        })
    } else {
        format!("order: {order}\ndegree: {degree}")
    })
}

#[derive(Serialize)]
struct ClassOut {
    order: String,
    degree: u64,
    count: u64,
}

#[derive(Serialize)]
struct DistributionOut {
    field: String,
    f: String,
    g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u64>,
    frobenius_power: u32,
    classes: Vec<ClassOut>,
    total_degree: u64,
    ni_lower_bound: Option<u64>,
}

fn render_distribution(
    cli: &Cli,
    field: &FiniteField,
    f: &Poly,
    g: Option<&Poly>,
    m: Option<u64>,
    d: &DegreeDistribution,
    bound: Option<u64>,
) -> String {
    let classes: Vec<ClassOut> = d
        .classes
        .iter()
        .map(|c| ClassOut {
            order: c.order.to_string(),
            degree: c.degree,
            count: c.count,
        })
        .collect();
    if cli.json {
        return json(&DistributionOut {
            field: field.spec_string(),
            f: f.to_string(),
            g: g.map(|g| g.to_string()),
            m,
            frobenius_power: d.frobenius_power,
            classes,
            total_degree: d.total_degree,
            ni_lower_bound: bound,
        });
    }
    let width = classes
        .iter()
        .map(|c| c.order.len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = String::new();
    if d.frobenius_power > 0 {
        out.push_str(&format!(
            "g = x^{} * g0; each factor below has multiplicity {}\n",
            d.frobenius_power, d.multiplicity
        ));
    }
    out.push_str(&format!(
        "{:<width$}  {:>8}  {:>8}",
        "order", "degree", "count"
    ));
    for c in &classes {
        out.push_str(&format!(
            "\n{:<width$}  {:>8}  {:>8}",
            c.order, c.degree, c.count
        ));
    }
    out.push_str(&format!("\ntotal degree: {}", d.total_degree));
    if let Some(b) = bound {
        out.push_str(&format!("\nlower bound on factor count: {b}"));
    }
    out
}

#[derive(Serialize)]
struct StepOut {
    g: String,
    degree: usize,
    g1: String,
    g2: String,
}

#[derive(Serialize)]
struct ChainOut {
    field: String,
    f: String,
    steps: Vec<StepOut>,
    degrees: Vec<usize>,
}

fn render_chain(cli: &Cli, field: &FiniteField, chain: &ConstructionChain) -> String {
    let steps: Vec<StepOut> = chain
        .steps
        .iter()
        .map(|s| StepOut {
            g: s.g.to_string(),
            degree: s.g2.degree().unwrap_or(0),
            g1: s.g1.to_string(),
            g2: s.g2.to_string(),
        })
        .collect();
    if cli.json {
        return json(&ChainOut {
            field: field.spec_string(),
            f: chain.base.to_string(),
            steps,
            degrees: chain.degrees(),
        });
    }
    let mut out = format!(
        "degree {}: {}",
        chain.base.degree().unwrap_or(0),
        chain.base
    );
    for s in steps {
        out.push_str(&format!("\ndegree {}: {}", s.degree, s.g2));
    }
    out
}

#[derive(Serialize)]
struct ShiftOut {
    shift: String,
    poly: String,
}

#[derive(Serialize)]
struct ExplicitOut {
    field: String,
    f: String,
    g0: String,
    shifts: Vec<ShiftOut>,
    product: String,
}

fn render_shifts(cli: &Cli, field: &FiniteField, f: &Poly, out: &ShiftFactorization) -> String {
    let shifts: Vec<ShiftOut> = field
        .elements()
        .zip(&out.shifts)
        .map(|(a, s)| ShiftOut {
            shift: field.element(a).to_string(),
            poly: s.to_string(),
        })
        .collect();
    if cli.json {
        return json(&ExplicitOut {
            field: field.spec_string(),
            f: f.to_string(),
            g0: out.g0.to_string(),
            shifts,
            product: out.product().to_string(),
        });
    }
    let mut text = format!("g0: {}", out.g0);
    for s in shifts {
        text.push_str(&format!("\ng0(x+{}): {}", s.shift, s.poly));
    }
    text
}

#[derive(Serialize)]
struct FactorOut {
    poly: String,
    degree: usize,
    multiplicity: u32,
}

#[derive(Serialize)]
struct FactorizationOut {
    field: String,
    f: String,
    unit: String,
    factors: Vec<FactorOut>,
}

#[derive(Serialize)]
struct VerifyOut {
    field: String,
    f: String,
    g: Option<String>,
    m: Option<u64>,
    matches: bool,
    predicted: BTreeMap<u64, u64>,
    actual: BTreeMap<u64, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    irreducible: Option<bool>,
}

fn verify_cmd(
    cli: &Cli,
    field: &FiniteField,
    f: &Poly,
    g: Option<Poly>,
    m: Option<u64>,
) -> Outcome {
    let (predicted, composed, irreducible) = match (&g, m) {
        (_, Some(m)) => {
            let d = butler_distribution(f, m)?;
            let x_m = Poly::monomial(field, 1, m as usize);
            (d.histogram(), f.compose(&x_m), None)
        }
        (Some(g), None) => {
            let d = additive_distribution(f, g)?;
            let irr = if g.is_divisible_by_x() {
                None
            } else {
                Some(is_composition_irreducible(f, g)?.0)
            };
            (d.histogram(), compose_f_lg(f, g)?, irr)
        }
        (None, None) => {
            return Err(Failure::Input(
                "--g or --multiplicative-m is required".into(),
            ))
        }
    };
    let actual = factor_with_seed(&composed, cli.seed)?.degree_histogram();
    let matches = predicted == actual;
    let text = if cli.json {
        json(&VerifyOut {
            field: field.spec_string(),
            f: f.to_string(),
            g: g.as_ref().map(|g| g.to_string()),
            m,
            matches,
            predicted: predicted.clone(),
            actual: actual.clone(),
            irreducible,
        })
    } else {
        let show = |h: &BTreeMap<u64, u64>| {
            h.iter()
                .map(|(d, c)| format!("{d}:{c}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "{}\npredicted (degree:count): {}\nactual    (degree:count): {}",
            if matches { "MATCH" } else { "MISMATCH" },
            show(&predicted),
            show(&actual)
        )
    };
    if matches {
        Ok(text)
    } else {
        Err(Failure::Internal(text))
    }
}
