//! Report generation behind the `qflag` binary.
//!
//! Every command is a pure function of its arguments: [`run`] returns the full
//! report text and whether all requested checks passed. Exit statuses are
//! 0 (pass), 1 (a check failed) and 2 (invalid input).

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qflag::flagatlas::{self, CertKind, CertResult, Flag, FlagInvariants, CSV_HEADER};
use qflag::qarith::qbinom;
use qflag::qmodule::{self, MatrixRep, RelationReport};
use qflag::rootdata::{build_root_system, CartanType, RootSystem, Series, WeightVec};
use qflag::weights::{self, WeightEntry};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] qflag::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Lib(_) => EXIT_USAGE,
            CliError::Io(_) | CliError::Json(_) => EXIT_CHECK_FAILED,
        }
    }
}

macro_rules! lib_err {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Lib(e.into())
            }
        }
    )*};
}
lib_err!(
    qflag::RootDataError,
    qflag::QArithError,
    qflag::WeightsError,
    qflag::QModuleError,
    qflag::FlagError
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "qflag",
    version,
    about = "Invariants and certificates for irreducible quantum flag manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to a file instead of standard output
    #[arg(long, short, global = true)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct TypeSel {
    /// Cartan series (A-G)
    #[arg(long)]
    pub series: Series,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List cominuscule nodes with complex dimension and det(A)
    Classify {
        /// Restrict to one series
        #[arg(long)]
        series: Option<Series>,
        #[arg(long, default_value_t = 1)]
        min_rank: usize,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Invariants of one irreducible flag manifold
    FlagReport {
        #[command(flatten)]
        ty: TypeSel,
        #[arg(long)]
        node: usize,
    },
    /// Build a minuscule module and verify every defining relation
    VerifyRelations {
        #[command(flatten)]
        ty: TypeSel,
        #[arg(long)]
        node: usize,
        /// Tensor with a second minuscule module before verifying
        #[arg(long)]
        tensor_node: Option<usize>,
        /// Also write the module matrices as JSON to this path
        #[arg(long)]
        emit_rep: Option<std::path::PathBuf>,
    },
    /// Verify the defining relations on a module read from a JSON file
    CheckRep {
        /// Module in the format written by `verify-relations --emit-rep`
        rep: std::path::PathBuf,
    },
    /// Sweep module exponents through the Z-character certificates
    Certify {
        #[arg(long)]
        series: Option<Series>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        node: Option<usize>,
        /// Upper rank bound when sweeping all flags
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = -100, allow_hyphen_values = true)]
        min_exp: i64,
        #[arg(long, default_value_t = 100, allow_hyphen_values = true)]
        max_exp: i64,
    },
    /// Table of balanced q-binomial coefficients
    Qtable {
        #[arg(long, default_value_t = 6)]
        max_n: i64,
        /// Symmetrizer: entries are taken at q^d
        #[arg(long, default_value_t = 1)]
        d: i64,
    },
    /// Root-system data for one type
    RootSystem {
        #[command(flatten)]
        ty: TypeSel,
    },
    /// Weight diagram of an irreducible module
    Weights {
        #[command(flatten)]
        ty: TypeSel,
        /// Highest weight in fundamental-weight coordinates, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        highest: Vec<i64>,
    },
}

/// Output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub pass: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn root_system(sel: &TypeSel) -> Result<Arc<RootSystem>, CliError> {
    Ok(Arc::new(build_root_system(CartanType::new(
        sel.series, sel.rank,
    )?)))
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Classify {
            series,
            min_rank,
            max_rank,
        } => classify(*series, *min_rank, *max_rank, fmt),
        Command::FlagReport { ty, node } => flag_report(ty, *node, fmt),
        Command::VerifyRelations {
            ty,
            node,
            tensor_node,
            emit_rep,
        } => verify_relations(ty, *node, *tensor_node, emit_rep.as_deref(), fmt),
        Command::CheckRep { rep } => check_rep(rep, fmt),
        Command::Certify {
            series,
            rank,
            node,
            max_rank,
            min_exp,
            max_exp,
        } => certify(*series, *rank, *node, *max_rank, *min_exp, *max_exp, fmt),
        Command::Qtable { max_n, d } => qtable(*max_n, *d, fmt),
        Command::RootSystem { ty } => root_system_report(ty, fmt),
        Command::Weights { ty, highest } => weights_report(ty, highest, fmt),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRow {
    #[serde(rename = "type")]
    pub series: Series,
    pub rank: usize,
    pub node: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "detA")]
    pub det_a: i64,
}

fn classify(
    series: Option<Series>,
    min_rank: usize,
    max_rank: usize,
    fmt: Format,
) -> Result<Report, CliError> {
    if min_rank == 0 || min_rank > max_rank {
        return Err(CliError::Usage(format!(
            "invalid rank range {min_rank}..={max_rank}"
        )));
    }
    let rows: Vec<ClassifyRow> = flagatlas::all_flags(max_rank)
        .into_iter()
        .filter(|f| f.cartan_type().rank() >= min_rank)
        .filter(|f| series.is_none_or(|s| f.cartan_type().series() == s))
        .map(|f| ClassifyRow {
            series: f.cartan_type().series(),
            rank: f.cartan_type().rank(),
            node: f.node(),
            m: flagatlas::complex_dimension(&f),
            det_a: f.root_system().det_cartan(),
        })
        .collect();
    let body = match fmt {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("type,rank,node,M,detA\n");
            for r in &rows {
                writeln!(s, "{},{},{},{},{}", r.series, r.rank, r.node, r.m, r.det_a).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!("{:<6}{:>6}{:>6}{:>6}\n", "type", "node", "M", "detA");
            for r in &rows {
                let t = format!("{}{}", r.series, r.rank);
                writeln!(s, "{:<6}{:>6}{:>6}{:>6}", t, r.node, r.m, r.det_a).unwrap();
            }
            writeln!(s, "{} irreducible flag manifolds", rows.len()).unwrap();
            s
        }
    };
    Ok(Report { body, pass: true })
}

/// The structural checks a flag report asserts.
fn invariant_checks(inv: &FlagInvariants) -> Vec<(&'static str, bool)> {
    let s = inv.node - 1;
    let sum_dims: u128 = inv.form_dims.iter().sum();
    let two_m = 2 * inv.m;
    vec![
        ("|J1| = M", inv.j1_count == inv.m as u64),
        (
            "|omega01| = d_s det(A)",
            inv.omega01_exponent.abs() == inv.d_s * inv.det_a,
        ),
        (
            "Z central in Levi part",
            inv.commutation_exponents.iter().enumerate().all(|(j, &c)| {
                if j == s {
                    c == inv.d_s * inv.det_a
                } else {
                    c == 0
                }
            }),
        ),
        ("a positive", inv.a.iter().all(|&x| x > 0)),
        (
            "form ladder",
            sum_dims == 1u128 << two_m
                && (0..=two_m).all(|k| inv.form_dims[k] == inv.form_dims[two_m - k]),
        ),
    ]
}

fn flag_report(sel: &TypeSel, node: usize, fmt: Format) -> Result<Report, CliError> {
    let flag = Flag::new(root_system(sel)?, node)?;
    let inv = FlagInvariants::compute(&flag)?;
    let checks = invariant_checks(&inv);
    let pass = checks.iter().all(|(_, ok)| *ok);
    let body = match fmt {
        Format::Json => to_json(&inv)?,
        Format::Csv => format!("{CSV_HEADER}\n{}\n", inv.csv_row()),
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "flag           {}{} node {}",
                inv.series, inv.rank, inv.node
            )
            .unwrap();
            writeln!(s, "M              {}", inv.m).unwrap();
            writeln!(s, "det(A)         {}", inv.det_a).unwrap();
            writeln!(s, "d_s            {}", inv.d_s).unwrap();
            writeln!(s, "mu_S           {}", inv.mu_s).unwrap();
            writeln!(s, "N              {}", inv.n).unwrap();
            writeln!(s, "a              {:?}", inv.a).unwrap();
            writeln!(s, "Z commutation  {:?}", inv.commutation_exponents).unwrap();
            writeln!(s, "|J1|           {}", inv.j1_count).unwrap();
            writeln!(s, "omega01        q^{}", inv.omega01_exponent).unwrap();
            writeln!(s, "form dims      {:?}", inv.form_dims).unwrap();
            for (name, ok) in &checks {
                writeln!(
                    s,
                    "check {:<24} {}",
                    name,
                    if *ok { "pass" } else { "FAIL" }
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Report { body, pass })
}

fn verify_relations(
    sel: &TypeSel,
    node: usize,
    tensor_node: Option<usize>,
    emit_rep: Option<&std::path::Path>,
    fmt: Format,
) -> Result<Report, CliError> {
    let rs = root_system(sel)?;
    let mut rep = qmodule::minuscule_rep(Arc::clone(&rs), node)?;
    if let Some(n2) = tensor_node {
        let other = qmodule::minuscule_rep(Arc::clone(&rs), n2)?;
        rep = qmodule::tensor_rep(&rep, &other)?;
    }
    let report: RelationReport = qmodule::verify_relations(&rep);
    if let Some(path) = emit_rep {
        std::fs::write(path, to_json(&rep.to_json())?)?;
    }
    relation_report(&report, fmt)
}

fn check_rep(path: &std::path::Path, fmt: Format) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path)?;
    let json: qmodule::MatrixRepJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let rep = MatrixRep::from_json(&json)?;
    relation_report(&qmodule::verify_relations(&rep), fmt)
}

fn relation_report(report: &RelationReport, fmt: Format) -> Result<Report, CliError> {
    let body = match fmt {
        Format::Json => to_json(report)?,
        Format::Csv => {
            let mut s = String::from("family,pass,checked,i,j,row,col\n");
            for f in &report.families {
                let w = f
                    .witness
                    .as_ref()
                    .map(|w| format!("{},{},{},{}", w.i + 1, w.j + 1, w.row, w.col))
                    .unwrap_or_else(|| ",,,".to_string());
                writeln!(s, "{},{},{},{}", f.family, u8::from(f.pass), f.checked, w).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{}{} module of dimension {}\n",
                report.series, report.rank, report.dim
            );
            for f in &report.families {
                write!(
                    s,
                    "{:<15} {:<5} ({} instances)",
                    f.family.name(),
                    if f.pass { "pass" } else { "FAIL" },
                    f.checked
                )
                .unwrap();
                if let Some(w) = &f.witness {
                    write!(
                        s,
                        " i={} j={} entry ({},{}) residual {}",
                        w.i + 1,
                        w.j + 1,
                        w.row,
                        w.col,
                        w.residual
                    )
                    .unwrap();
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Report {
        body,
        pass: report.all_pass(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertRecord {
    #[serde(rename = "type")]
    pub series: Series,
    pub rank: usize,
    pub node: usize,
    pub module_exponent: i64,
    #[serde(flatten)]
    pub cert: CertResult,
}

fn select_flags(
    series: Option<Series>,
    rank: Option<usize>,
    node: Option<usize>,
    max_rank: usize,
) -> Result<Vec<Flag>, CliError> {
    match (series, rank) {
        (Some(s), Some(r)) => {
            let rs = Arc::new(build_root_system(CartanType::new(s, r)?));
            match node {
                Some(n) => Ok(vec![Flag::new(rs, n)?]),
                None => flagatlas::cominuscule_nodes(&rs)
                    .into_iter()
                    .map(|n| Flag::new(Arc::clone(&rs), n).map_err(CliError::from))
                    .collect(),
            }
        }
        (None, None) if node.is_none() => {
            if max_rank == 0 {
                return Err(CliError::Usage("max-rank must be positive".into()));
            }
            Ok(flagatlas::all_flags(max_rank))
        }
        (Some(s), None) if node.is_none() => Ok(flagatlas::all_flags(max_rank)
            .into_iter()
            .filter(|f| f.cartan_type().series() == s)
            .collect()),
        _ => Err(CliError::Usage(
            "--rank and --node require --series (and --node requires --rank)".into(),
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn certify(
    series: Option<Series>,
    rank: Option<usize>,
    node: Option<usize>,
    max_rank: usize,
    min_exp: i64,
    max_exp: i64,
    fmt: Format,
) -> Result<Report, CliError> {
    if min_exp > max_exp {
        return Err(CliError::Usage(format!(
            "empty exponent range {min_exp}..={max_exp}"
        )));
    }
    let flags = select_flags(series, rank, node, max_rank)?;
    let invariants = flagatlas::atlas(&flags)?;
    let per_flag: Vec<(FlagInvariants, bool, Vec<CertRecord>)> = invariants
        .into_par_iter()
        .map(|inv| {
            let structural = invariant_checks(&inv).iter().all(|(_, ok)| *ok);
            let records: Vec<CertRecord> = (min_exp..=max_exp)
                .flat_map(|e| CertKind::ALL.iter().map(move |&k| (e, k)))
                .map(|(e, k)| CertRecord {
                    series: inv.series,
                    rank: inv.rank,
                    node: inv.node,
                    module_exponent: e,
                    cert: inv.certify(k, e),
                })
                .collect();
            (inv, structural, records)
        })
        .collect();
    let pass = per_flag
        .iter()
        .all(|(_, ok, recs)| *ok && recs.iter().all(|r| r.cert.pass));
    let body = match fmt {
        Format::Json => {
            let all: Vec<&CertRecord> = per_flag.iter().flat_map(|(_, _, r)| r).collect();
            to_json(&all)?
        }
        Format::Csv => {
            let mut s = String::from(
                "type,rank,node,module_exponent,kind,pass,lhs_exponent,rhs_exponent\n",
            );
            for r in per_flag.iter().flat_map(|(_, _, r)| r) {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    r.series,
                    r.rank,
                    r.node,
                    r.module_exponent,
                    r.cert.kind,
                    u8::from(r.cert.pass),
                    r.cert.lhs_exponent,
                    r.cert.rhs_exponent
                )
                .unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (inv, ok, recs) in &per_flag {
                let passed = recs.iter().filter(|r| r.cert.pass).count();
                writeln!(
                    s,
                    "{}{} node {}: omega01 = q^{}, structure {}, {}/{} certificates pass for e in {}..={}",
                    inv.series,
                    inv.rank,
                    inv.node,
                    inv.omega01_exponent,
                    if *ok { "ok" } else { "FAIL" },
                    passed,
                    recs.len(),
                    min_exp,
                    max_exp
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Report { body, pass })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QtableRow {
    pub n: i64,
    pub k: i64,
    pub d: i64,
    pub value: qflag::LaurentPoly,
}

fn qtable(max_n: i64, d: i64, fmt: Format) -> Result<Report, CliError> {
    if max_n < 0 {
        return Err(CliError::Usage("max-n must be nonnegative".into()));
    }
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for k in 0..=n {
            rows.push(QtableRow {
                n,
                k,
                d,
                value: qbinom(n, k, d)?,
            });
        }
    }
    let body = match fmt {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("n,k,d,value\n");
            for r in &rows {
                writeln!(s, "{},{},{},{}", r.n, r.k, r.d, r.value).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                writeln!(s, "[{} {}]_(q^{}) = {}", r.n, r.k, r.d, r.value).unwrap();
            }
            s
        }
    };
    Ok(Report { body, pass: true })
}

fn root_system_report(sel: &TypeSel, fmt: Format) -> Result<Report, CliError> {
    let rs = root_system(sel)?;
    let body = match fmt {
        Format::Json => to_json(&rs.to_json())?,
        Format::Csv => {
            let mut s = String::from("root,height\n");
            for beta in rs.positive_roots() {
                let coords: Vec<String> = beta.0.iter().map(i64::to_string).collect();
                writeln!(s, "{},{}", coords.join("-"), beta.height()).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!("type {}\ncartan matrix\n", rs.cartan_type());
            for row in rs.cartan_matrix() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                writeln!(s, "  {}", cells.join("")).unwrap();
            }
            writeln!(s, "d              {:?}", rs.symmetrizers()).unwrap();
            writeln!(s, "det(A)         {}", rs.det_cartan()).unwrap();
            writeln!(s, "positive roots {}", rs.positive_roots().len()).unwrap();
            writeln!(s, "highest root   {:?}", rs.highest_root().0).unwrap();
            s
        }
    };
    Ok(Report { body, pass: true })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsJson {
    pub highest: WeightVec,
    pub dimension: u64,
    pub weights: Vec<WeightEntry>,
}

fn weights_report(sel: &TypeSel, highest: &[i64], fmt: Format) -> Result<Report, CliError> {
    let rs = root_system(sel)?;
    let mu = WeightVec(highest.to_vec());
    let diagram = weights::weight_multiplicities(&rs, &mu)?;
    let dim = weights::weyl_dim(&rs, &mu)?;
    let pass = diagram.dimension() == dim && diagram.is_weyl_invariant(&rs);
    let out = WeightsJson {
        highest: mu,
        dimension: dim,
        weights: diagram.entries(),
    };
    let body = match fmt {
        Format::Json => to_json(&out)?,
        Format::Csv => {
            let mut s = String::from("weight,mult\n");
            for e in &out.weights {
                let coords: Vec<String> = e.weight.0.iter().map(i64::to_string).collect();
                writeln!(s, "{},{}", coords.join(" "), e.mult).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "V{} of {}: dimension {} ({} distinct weights)\n",
                out.highest,
                rs.cartan_type(),
                dim,
                out.weights.len()
            );
            for e in &out.weights {
                writeln!(s, "  {}  x{}", e.weight, e.mult).unwrap();
            }
            s
        }
    };
    Ok(Report { body, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Report, CliError> {
        let mut full = vec!["qflag"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).expect("arguments parse"))
    }

    #[test]
    fn classify_a_series() {
        let r = run_args(&[
            "classify",
            "--series",
            "A",
            "--max-rank",
            "4",
            "--format",
            "csv",
        ])
        .unwrap();
        assert_eq!(r.body.lines().count(), 1 + 10);
    }

    #[test]
    fn flag_report_csv_row() {
        let r = run_args(&[
            "flag-report",
            "--series",
            "B",
            "--rank",
            "2",
            "--node",
            "1",
            "--format",
            "csv",
        ])
        .unwrap();
        assert!(r.pass);
        assert_eq!(r.body, format!("{CSV_HEADER}\nB,2,1,3,2,2,5,3,-4\n"));
    }

    #[test]
    fn invalid_input_is_usage_error() {
        let e =
            run_args(&["flag-report", "--series", "B", "--rank", "1", "--node", "1"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let e =
            run_args(&["flag-report", "--series", "G", "--rank", "2", "--node", "1"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let e = run_args(&["certify", "--rank", "3"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let e = run_args(&["certify", "--min-exp", "3", "--max-exp", "1"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn certify_single_flag_counts() {
        let r = run_args(&[
            "certify",
            "--series",
            "A",
            "--rank",
            "3",
            "--node",
            "2",
            "--min-exp",
            "-3",
            "--max-exp",
            "3",
            "--format",
            "csv",
        ])
        .unwrap();
        assert!(r.pass);
        assert_eq!(r.body.lines().count(), 1 + 7 * 4);
    }

    #[test]
    fn qtable_contains_central_binomial() {
        let r = run_args(&["qtable", "--max-n", "4", "--format", "csv"]).unwrap();
        assert!(r.body.contains("4,2,1,q^4 + q^2 + 2 + q^-2 + q^-4\n"));
    }
}
