//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function returns a JSON string. The plain Rust versions
//! (`*_json`) return `Result<String, String>` so they can be tested natively.

use num_traits::ToPrimitive;
use qflag::flagatlas::{Flag, FlagInvariants};
use qflag::qarith::{qbinom, LaurentPoly};
use qflag::rootdata::{RootSystem, Series, WeightVec};
use qflag::weights::{weight_multiplicities, weyl_dim};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn parse_series(s: &str) -> Result<Series, String> {
    s.parse::<Series>().map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct FlagSummary {
    name: String,
    cominuscule_nodes: Vec<usize>,
    invariants: Option<FlagInvariants>,
    error: Option<String>,
}

/// Invariants of the flag manifold at `node`, plus the list of admissible
/// nodes so the page can offer them.
pub fn flag_report_json(series: &str, rank: usize, node: usize) -> Result<String, String> {
    let rs = RootSystem::new(parse_series(series)?, rank).map_err(|e| e.to_string())?;
    let nodes = qflag::cominuscule_nodes(&rs);
    let name = rs.cartan_type().to_string();
    let (invariants, error) =
        match Flag::new(std::sync::Arc::new(rs), node).and_then(|f| FlagInvariants::compute(&f)) {
            Ok(inv) => (Some(inv), None),
            Err(e) => (None, Some(e.to_string())),
        };
    to_json(&FlagSummary {
        name,
        cominuscule_nodes: nodes,
        invariants,
        error,
    })
}

#[derive(Serialize)]
struct PlottedWeight {
    weight: WeightVec,
    mult: u64,
    x: f64,
    y: f64,
}

#[derive(Serialize)]
struct Diagram {
    dimension: u64,
    weyl_dimension: u64,
    weights: Vec<PlottedWeight>,
}

/// Euclidean coordinates of the fundamental weights: rows of the Cholesky
/// factor of their Gram matrix.
fn fundamental_frame(rs: &RootSystem) -> Vec<Vec<f64>> {
    let r = rs.rank();
    let gram: Vec<Vec<f64>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let v =
                        rs.bilinear(&WeightVec::fundamental(r, i), &WeightVec::fundamental(r, j));
                    v.numer().to_f64().unwrap() / v.denom().to_f64().unwrap()
                })
                .collect()
        })
        .collect();
    let mut l = vec![vec![0.0; r]; r];
    for i in 0..r {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                l[i][j] = (gram[i][i] - s).max(0.0).sqrt();
            } else {
                l[i][j] = (gram[i][j] - s) / l[j][j];
            }
        }
    }
    l
}

/// Weight diagram of the module with highest weight `highest`, with each
/// weight projected to the plane. Rank 2 is drawn isometrically; higher
/// ranks use a fixed orthogonal projection.
pub fn weight_diagram_json(series: &str, rank: usize, highest: &[i64]) -> Result<String, String> {
    let rs = RootSystem::new(parse_series(series)?, rank).map_err(|e| e.to_string())?;
    let mu = WeightVec(highest.to_vec());
    let diagram = weight_multiplicities(&rs, &mu).map_err(|e| e.to_string())?;
    let dim = weyl_dim(&rs, &mu).map_err(|e| e.to_string())?;
    let frame = fundamental_frame(&rs);
    let (u, v): (Vec<f64>, Vec<f64>) = (0..rank)
        .map(|k| {
            if rank == 2 {
                (f64::from(u8::from(k == 0)), f64::from(u8::from(k == 1)))
            } else {
                let t = std::f64::consts::PI * k as f64 / rank as f64;
                (t.cos(), t.sin())
            }
        })
        .unzip();
    let weights = diagram
        .entries()
        .into_iter()
        .map(|e| {
            let coords: Vec<f64> = (0..rank)
                .map(|k| (0..rank).map(|i| e.weight.0[i] as f64 * frame[i][k]).sum())
                .collect();
            let dot = |w: &[f64]| coords.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
            PlottedWeight {
                x: dot(&u),
                y: dot(&v),
                weight: e.weight,
                mult: e.mult,
            }
        })
        .collect();
    to_json(&Diagram {
        dimension: diagram.dimension(),
        weyl_dimension: dim,
        weights,
    })
}

#[derive(Serialize)]
struct QEntry {
    n: i64,
    k: i64,
    poly: String,
    value: f64,
}

fn eval_f64(p: &LaurentPoly, q: f64) -> f64 {
    p.terms()
        .map(|(e, c)| c.to_f64().unwrap() * q.powi(e as i32))
        .sum()
}

/// Balanced q-binomials `[n k]_{q^d}` for `n ≤ max_n`, each evaluated at `q`.
pub fn qbinomial_table_json(max_n: i64, d: i64, q: f64) -> Result<String, String> {
    if !(0..=30).contains(&max_n) {
        return Err("n must be between 0 and 30".into());
    }
    if q == 0.0 {
        return Err("q must be nonzero".into());
    }
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for k in 0..=n {
            let p = qbinom(n, k, d).map_err(|e| e.to_string())?;
            rows.push(QEntry {
                n,
                k,
                value: eval_f64(&p, q),
                poly: p.to_string(),
            });
        }
    }
    to_json(&rows)
}

#[wasm_bindgen]
pub fn flag_report(series: &str, rank: usize, node: usize) -> Result<String, JsError> {
    flag_report_json(series, rank, node).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weight_diagram(series: &str, rank: usize, highest: Vec<i64>) -> Result<String, JsError> {
    weight_diagram_json(series, rank, &highest).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn qbinomial_table(max_n: i32, d: i32, q: f64) -> Result<String, JsError> {
    qbinomial_table_json(max_n.into(), d.into(), q).map_err(|e| JsError::new(&e))
}
