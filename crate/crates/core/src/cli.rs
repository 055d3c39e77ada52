//! Command-line front end.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::catalog::{catalog_passes, run_catalog, CatalogRow};
use crate::curve::{ml_degree_curve, CurveError, CurveMLDegree, PlaneCurve};
use crate::engine::{ml_degree_faithful, EngineError, MLDegreeReport, TOOL_VERSION};
use crate::model::{build_model, build_parameterization, EquilibriumConstant, EquilibriumModel, ModelError};
use crate::numeric::mle::{maximize_likelihood, mle_report, MleError};
use crate::numeric::Tolerances;
use crate::reaction::{parse_reaction, ParseError, Reaction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_NO_POSITIVE: i32 = 5;
pub const EXIT_CATALOG_MISMATCH: i32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Faithful,
    Curve,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "eqml", version, about = "ML degree and MLE for chemical equilibrium models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Equilibrium constant: `generic`, `p/q` or a decimal.
    #[arg(long, global = true, default_value = "generic", allow_hyphen_values = true)]
    pub ke: String,
    #[arg(long, global = true, value_enum, default_value = "faithful")]
    pub method: Method,
    /// Comma-separated positive counts, one per species.
    #[arg(long, global = true, value_delimiter = ',')]
    pub counts: Option<Vec<u64>>,
    /// Seed for random specialization of a generic constant.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub output: Output,
    #[arg(long, global = true)]
    pub tol_residual: Option<f64>,
    #[arg(long, global = true)]
    pub tol_cluster: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and normalize a reaction.
    Parse { reaction: String },
    /// Print the implicit model and its parameterization.
    Model { reaction: String },
    /// Count complex critical points of the likelihood.
    MlDegree { reaction: String },
    /// Maximize the likelihood for observed counts.
    Mle { reaction: String },
    /// Recompute every catalog entry.
    Catalog,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degenerate constant with no count: {0}")]
    Degenerate(String),
    #[error("{0}")]
    NoPositive(String),
    #[error("catalog mismatch on a confirmed row")]
    CatalogMismatch,
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Other(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Degenerate(_) => EXIT_DEGENERATE,
            CliError::NoPositive(_) => EXIT_NO_POSITIVE,
            CliError::CatalogMismatch => EXIT_CATALOG_MISMATCH,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::UnsupportedShape { .. } | ModelError::NotEquilibrium(_) | ModelError::TooFewSpecies => {
                CliError::Unsupported(e.to_string())
            }
            ModelError::InvalidConstant(_) => CliError::Usage(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Model(m) => m.into(),
            EngineError::ZeroEliminant { .. } => CliError::Degenerate(e.to_string()),
            EngineError::TooManyParameters(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<MleError> for CliError {
    fn from(e: MleError) -> Self {
        match e {
            MleError::ZeroCount(_) | MleError::NoPositivePoint { .. } | MleError::NonPositiveCoordinate => {
                CliError::NoPositive(e.to_string())
            }
            MleError::UnsupportedShape => CliError::Unsupported(e.to_string()),
            MleError::Model(m) => m.into(),
            MleError::CountLength { .. } | MleError::NonPositiveConstant => CliError::Usage(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl Cli {
    fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(r) = self.tol_residual {
            t.residual = r;
        }
        if let Some(c) = self.tol_cluster {
            t.cluster = c;
        }
        t
    }

    fn ke(&self) -> Result<EquilibriumConstant, CliError> {
        self.ke.parse().map_err(|e: ModelError| CliError::Usage(e.to_string()))
    }
}

fn model_for(cli: &Cli, text: &str) -> Result<EquilibriumModel, CliError> {
    let r = parse_reaction(text)?;
    Ok(build_model(&r, &cli.ke()?)?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or("n/a".to_string(), |x| x.to_string())
}

fn cmd_parse(cli: &Cli, text: &str) -> Result<String, CliError> {
    let r: Reaction = parse_reaction(text)?;
    let species: Vec<&str> = r.species().collect();
    Ok(match cli.output {
        Output::Json => to_json(&json!({
            "reaction": r.to_string(),
            "arrow": r.arrow.as_str(),
            "species": species,
            "order": r.order(),
            "tool_version": TOOL_VERSION,
        })),
        Output::Tsv => format!("reaction\tspecies\torder\n{}\t{}\t{}", r, species.join(","), r.order()),
        Output::Text => format!("reaction: {r}\nspecies: {}\norder: {}", species.join(", "), r.order()),
    })
}

fn cmd_model(cli: &Cli, text: &str) -> Result<String, CliError> {
    let m = model_for(cli, text)?;
    let shape = m.shape()?;
    let map = build_parameterization(&m)?;
    Ok(match cli.output {
        Output::Json => to_json(&json!({
            "reaction": m.reaction.to_string(),
            "ke": m.ke.to_string(),
            "species_vars": m.species_vars,
            "shape": shape,
            "f_affine": m.f_affine.to_string(),
            "constraint": m.constraint.to_string(),
            "f_hom": m.f_hom.to_string(),
            "parameterization": map.as_ref().map(|p| p.to_string()),
            "warnings": m.warnings,
            "tool_version": TOOL_VERSION,
        })),
        Output::Tsv => format!(
            "reaction\tke\tf_hom\tparameterization\n{}\t{}\t{}\t{}",
            m.reaction,
            m.ke,
            m.f_hom,
            opt(&map.map(|p| p.to_string()))
        ),
        Output::Text => m.dump().trim_end().to_string(),
    })
}

fn curve_report(cli: &Cli, m: &EquilibriumModel) -> Result<CurveMLDegree, CliError> {
    if m.species_count() != 3 {
        return Err(CliError::Unsupported(format!(
            "curve method needs 3 species, `{}` has {}",
            m.reaction,
            m.species_count()
        )));
    }
    let (c, caveats) = PlaneCurve::from_model(m, cli.seed).map_err(curve_err)?;
    let mut rep = ml_degree_curve(&c, &cli.tolerances()).map_err(curve_err)?;
    rep.caveats.extend(caveats);
    Ok(rep)
}

fn curve_err(e: CurveError) -> CliError {
    match e {
        CurveError::Singular { .. } | CurveError::NotPlaneCurve | CurveError::ContainsLine(_) => {
            CliError::Unsupported(e.to_string())
        }
        CurveError::Degenerate(_) => CliError::Degenerate(e.to_string()),
        _ => CliError::Other(e.to_string()),
    }
}

/// Comparison lines for `--method both`.
pub fn comparison_lines(f: &MLDegreeReport, c: &CurveMLDegree) -> Vec<String> {
    let mut lines = Vec::new();
    if f.variety_count() == Some(c.ml_degree) {
        lines.push(format!(
            "agreement: variety count {} from both methods",
            c.ml_degree
        ));
    }
    if f.parameter_space_count != Some(c.ml_degree) {
        lines.push(format!(
            "divergence: parameter-space count {} vs curve count {} (fiber degree {}, quotient {})",
            opt(&f.parameter_space_count),
            c.ml_degree,
            f.fiber_degree,
            f.variety_count_quotient
        ));
    }
    lines
}

fn warning_lines(m: &EquilibriumModel) -> Vec<String> {
    if m.ke.positivity_flag() {
        vec![]
    } else {
        vec![format!(
            "warning: Ke = {} is not positive; equilibrium constants from the Arrhenius law are positive, counts are reported anyway",
            m.ke
        )]
    }
}

fn faithful_text(f: &MLDegreeReport) -> Vec<String> {
    let mut v = vec![
        format!("reaction: {}", f.reaction),
        format!("ke: {}", f.ke),
        format!("parameter-space count: {}", opt(&f.parameter_space_count)),
        format!("fiber degree: {}", f.fiber_degree),
        format!("variety count (quotient): {}", f.variety_count_quotient),
        format!("ke classification: {}", f.degeneracy),
    ];
    if let (Some(d), Some(val)) = (f.eliminant_degree, f.eliminant_valuation) {
        v.push(format!("eliminant: degree {d}, valuation {val}"));
    }
    v.extend(f.caveats.iter().map(|c| format!("caveat: {c}")));
    v
}

fn curve_text(c: &CurveMLDegree) -> Vec<String> {
    let mut v = vec![format!("curve count: {} (degree {})", c.ml_degree, c.degree)];
    if let Some(a) = &c.arrangement {
        v.push(format!("arrangement term a: {}", a.a));
    }
    v.extend(c.caveats.iter().map(|x| format!("caveat: {x}")));
    v
}

fn faithful_checked(m: &EquilibriumModel) -> Result<MLDegreeReport, CliError> {
    let f = ml_degree_faithful(m)?;
    if f.parameter_space_count.is_none() && !f.degeneracy.is_generic() {
        return Err(CliError::Degenerate(f.degeneracy.to_string()));
    }
    Ok(f)
}

fn cmd_ml_degree(cli: &Cli, text: &str) -> Result<String, CliError> {
    let m = model_for(cli, text)?;
    let warnings = warning_lines(&m);
    let faithful = match cli.method {
        Method::Faithful | Method::Both => Some(faithful_checked(&m)?),
        Method::Curve => None,
    };
    let curve = match cli.method {
        Method::Curve | Method::Both => Some(curve_report(cli, &m)?),
        Method::Faithful => None,
    };
    let comparison = match (&faithful, &curve) {
        (Some(f), Some(c)) => comparison_lines(f, c),
        _ => vec![],
    };
    Ok(match cli.output {
        Output::Json => to_json(&json!({
            "reaction": m.reaction.to_string(),
            "ke": m.ke.to_string(),
            "faithful": faithful,
            "curve": curve,
            "comparison": comparison,
            "warnings": warnings,
            "tool_version": TOOL_VERSION,
        })),
        Output::Tsv => {
            let mut s = String::from("reaction\tke\tparameter_space_count\tfiber_degree\tvariety_count_quotient\tcurve_count\n");
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}",
                m.reaction,
                m.ke,
                opt(&faithful.as_ref().and_then(|f| f.parameter_space_count)),
                opt(&faithful.as_ref().map(|f| f.fiber_degree)),
                faithful.as_ref().map_or("n/a".to_string(), |f| f.variety_count_quotient.clone()),
                opt(&curve.as_ref().map(|c| c.ml_degree)),
            ));
            for w in warnings.iter().chain(&comparison) {
                s.push_str(&format!("\n# {w}"));
            }
            s
        }
        Output::Text => {
            let mut lines = warnings;
            match &faithful {
                Some(f) => lines.extend(faithful_text(f)),
                None => {
                    lines.push(format!("reaction: {}", m.reaction));
                    lines.push(format!("ke: {}", m.ke));
                }
            }
            if let Some(c) = &curve {
                lines.extend(curve_text(c));
            }
            lines.extend(comparison);
            lines.join("\n")
        }
    })
}

fn cmd_mle(cli: &Cli, text: &str) -> Result<String, CliError> {
    let m = model_for(cli, text)?;
    let u = cli
        .counts
        .clone()
        .ok_or_else(|| CliError::Usage("mle needs --counts".to_string()))?;
    if u.len() != m.species_count() {
        return Err(CliError::Usage(format!(
            "{} counts given for {} species",
            u.len(),
            m.species_count()
        )));
    }
    let res = maximize_likelihood(&m, &u, &cli.tolerances())?;
    let rep = mle_report(&m, &u, &res);
    Ok(match cli.output {
        Output::Json => to_json(&rep),
        Output::Tsv => format!(
            "reaction\tke\tu\toptimum\tlog_likelihood\tobserved_ml_count\n{}\t{}\t{}\t{}\t{:.17e}\t{}",
            rep.reaction,
            rep.ke,
            join(&rep.u),
            rep.optimum.join(","),
            rep.log_likelihood,
            rep.observed_ml_count
        ),
        Output::Text => {
            let mut lines = vec![
                format!("reaction: {}", rep.reaction),
                format!("ke: {}", rep.ke),
                format!("counts: {}", join(&rep.u)),
                format!("optimum: {}", rep.optimum.join(", ")),
                format!("log-likelihood: {:.17e}", rep.log_likelihood),
                format!("critical points found: {}", rep.observed_ml_count),
                format!("max residual: {:.3e}", rep.residual_max),
            ];
            lines.extend(rep.caveats.iter().map(|c| format!("caveat: {c}")));
            lines.join("\n")
        }
    })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct CatalogJsonRow {
    #[serde(flatten)]
    row: Option<CatalogRow>,
    error: Option<String>,
}

fn cmd_catalog(cli: &Cli) -> Result<(String, bool), CliError> {
    let rows = run_catalog(cli.seed, &cli.tolerances());
    let ok = catalog_passes(&rows);
    let text = match cli.output {
        Output::Json => {
            let rs: Vec<CatalogJsonRow> = rows
                .iter()
                .map(|r| match r {
                    Ok(row) => CatalogJsonRow { row: Some(row.clone()), error: None },
                    Err(e) => CatalogJsonRow { row: None, error: Some(e.to_string()) },
                })
                .collect();
            to_json(&json!({ "rows": rs, "passed": ok, "tool_version": TOOL_VERSION }))
        }
        Output::Tsv | Output::Text => {
            let sep = if cli.output == Output::Tsv { "\t" } else { " | " };
            let head = [
                "reaction", "ke", "published", "param", "fiber", "quotient", "curve", "status", "result",
            ];
            let mut lines = vec![head.join(sep)];
            for r in &rows {
                lines.push(match r {
                    Ok(row) => {
                        let result = match (row.matches, row.status) {
                            (true, _) => "ok",
                            (false, crate::catalog::Status::Confirmed) => "MISMATCH",
                            (false, _) => "documented",
                        };
                        [
                            row.reaction.clone(),
                            row.ke.clone(),
                            row.published_value.to_string(),
                            opt(&row.parameter_space_count),
                            row.fiber_degree.to_string(),
                            row.variety_count_quotient.clone(),
                            opt(&row.curve_count),
                            row.status.to_string(),
                            result.to_string(),
                        ]
                        .join(sep)
                    }
                    Err(e) => format!("error: {e}"),
                });
            }
            lines.join("\n")
        }
    };
    Ok((text, ok))
}

/// Run one invocation; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Parse { reaction } => cmd_parse(&cli, reaction).map(|s| (s, true)),
        Command::Model { reaction } => cmd_model(&cli, reaction).map(|s| (s, true)),
        Command::MlDegree { reaction } => cmd_ml_degree(&cli, reaction).map(|s| (s, true)),
        Command::Mle { reaction } => cmd_mle(&cli, reaction).map(|s| (s, true)),
        Command::Catalog => cmd_catalog(&cli),
    };
    match result {
        Ok((text, ok)) => {
            let _ = writeln!(out, "{text}");
            if ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: {}", CliError::CatalogMismatch);
                EXIT_CATALOG_MISMATCH
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
