//! Explicit U_q(g) modules over ℤ[q, q⁻¹].
//!
//! A [`MatrixRep`] stores E_i, F_i, K_i and K_i⁻¹ as sparse matrices acting on
//! a weight basis. Minuscule fundamental modules are built directly from the
//! Weyl orbit of the highest weight, where every generator acts by 0/1
//! entries, and tensor products use the coproduct
//!
//! ```text
//! Δ(K_i) = K_i ⊗ K_i,  Δ(E_i) = E_i ⊗ K_i + 1 ⊗ E_i,  Δ(F_i) = F_i ⊗ 1 + K_i⁻¹ ⊗ F_i.
//! ```
//!
//! [`verify_relations`] checks every defining relation of U_q(g) as an exact
//! identity of Laurent-polynomial matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qarith::{qbinom, qint_signed, LaurentPoly};
use crate::rootdata::{
    build_root_system, CartanType, RootDataError, RootSystem, Series, WeightVec,
};
use crate::weights::{weight_multiplicities, weyl_orbit, WeightsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QModuleError {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(
        "node {node} of {cartan_type} is not minuscule: weight {weight} has multiplicity {mult}"
    )]
    MultiplicityNotOne {
        cartan_type: CartanType,
        node: usize,
        weight: WeightVec,
        mult: u64,
    },
    #[error("node {node} of {cartan_type} is not minuscule: weight {weight} lies outside the Weyl orbit of the highest weight")]
    MultipleOrbits {
        cartan_type: CartanType,
        node: usize,
        weight: WeightVec,
    },
    #[error("tensor factors live over different root systems ({0} vs {1})")]
    RootSystemMismatch(CartanType, CartanType),
    #[error("malformed matrix data: {0}")]
    Malformed(String),
}

/// Square sparse matrix over ℤ[q, q⁻¹], stored column by column.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    cols: Vec<BTreeMap<usize, LaurentPoly>>,
}

impl SparseMatrix {
    pub fn zero(n: usize) -> Self {
        SparseMatrix {
            n,
            cols: vec![BTreeMap::new(); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| LaurentPoly::one()).collect())
    }

    pub fn diagonal(entries: Vec<LaurentPoly>) -> Self {
        let mut m = SparseMatrix::zero(entries.len());
        for (k, p) in entries.into_iter().enumerate() {
            m.set(k, k, p);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPoly) {
        assert!(row < self.n && col < self.n, "index out of range");
        if value.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> LaurentPoly {
        self.cols[col].get(&row).cloned().unwrap_or_default()
    }

    /// Nonzero entries of one column as `(row, value)`.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.cols[col].iter().map(|(r, p)| (*r, p))
    }

    /// All nonzero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, p)| (*r, c, p)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// First nonzero entry in column-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, LaurentPoly)> {
        self.entries().next().map(|(r, c, p)| (r, c, p.clone()))
    }

    /// Diagonal entries if the matrix is diagonal.
    pub fn diagonal_entries(&self) -> Option<Vec<LaurentPoly>> {
        if self.entries().any(|(r, c, _)| r != c) {
            return None;
        }
        Some((0..self.n).map(|k| self.get(k, k)).collect())
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = SparseMatrix::zero(self.n);
        for (j, col) in rhs.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    let slot = acc.entry(*i).or_default();
                    *slot += &(a * b);
                }
            }
            acc.retain(|_, p| !p.is_zero());
            out.cols[j] = acc;
        }
        out
    }

    fn combine(&self, rhs: &SparseMatrix, sign: i64) -> SparseMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        let s = BigInt::from(sign);
        for (j, col) in rhs.cols.iter().enumerate() {
            for (i, b) in col {
                let slot = out.cols[j].entry(*i).or_default();
                *slot += &b.scalar_mul(&s);
                if slot.is_zero() {
                    out.cols[j].remove(i);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.combine(rhs, 1)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.combine(rhs, -1)
    }

    pub fn scale(&self, c: &LaurentPoly) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (j, col) in self.cols.iter().enumerate() {
            out.cols[j] = col.iter().map(|(i, p)| (*i, p * c)).collect();
        }
        out
    }

    pub fn pow(&self, k: u32) -> SparseMatrix {
        let mut acc = SparseMatrix::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product; basis pair `(a, b)` maps to index `a · rhs.dim() + b`.
    pub fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let m = rhs.n;
        let mut out = SparseMatrix::zero(self.n * m);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in rhs.entries() {
                out.set(r1 * m + r2, c1 * m + c2, a * b);
            }
        }
        out
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries().map(|(r, c, p)| ((r, c), p.to_string())))
            .finish()
    }
}

/// A finite-dimensional U_q(g)-module given by explicit generator matrices.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    rs: Arc<RootSystem>,
    basis_weights: Vec<WeightVec>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
    k: Vec<SparseMatrix>,
    kinv: Vec<SparseMatrix>,
}

impl MatrixRep {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.basis_weights.len()
    }

    pub fn basis_weights(&self) -> &[WeightVec] {
        &self.basis_weights
    }

    pub fn e(&self, i: usize) -> &SparseMatrix {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &SparseMatrix {
        &self.f[i]
    }

    pub fn k(&self, i: usize) -> &SparseMatrix {
        &self.k[i]
    }

    pub fn kinv(&self, i: usize) -> &SparseMatrix {
        &self.kinv[i]
    }

    pub fn e_mut(&mut self, i: usize) -> &mut SparseMatrix {
        &mut self.e[i]
    }

    pub fn f_mut(&mut self, i: usize) -> &mut SparseMatrix {
        &mut self.f[i]
    }

    pub fn k_mut(&mut self, i: usize) -> &mut SparseMatrix {
        &mut self.k[i]
    }

    /// Checks that K_i acts on each basis vector by `q^{(wt, α_i)}` and that
    /// E_i / F_i shift weights by ±α_i. Returns the first violation.
    pub fn check_weight_structure(&self) -> Result<(), Witness> {
        let rs = &self.rs;
        for i in 0..rs.rank() {
            let expected: Vec<LaurentPoly> = self
                .basis_weights
                .iter()
                .map(|w| LaurentPoly::q_pow(rs.d(i) * w.0[i]))
                .collect();
            let want = SparseMatrix::diagonal(expected);
            let diff = self.k[i].sub(&want);
            if let Some((row, col, residual)) = diff.first_nonzero() {
                return Err(Witness {
                    i,
                    j: i,
                    row,
                    col,
                    residual,
                });
            }
            let alpha = rs.simple_root_weight(i);
            for (shift, mats) in [(1i64, &self.e), (-1i64, &self.f)] {
                for (row, col, p) in mats[i].entries() {
                    let target = self.basis_weights[col].add(&alpha.scale(shift));
                    if self.basis_weights[row] != target {
                        return Err(Witness {
                            i,
                            j: i,
                            row,
                            col,
                            residual: p.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> MatrixRepJson {
        let enc = |ms: &[SparseMatrix]| -> Vec<Vec<MatrixEntry>> {
            ms.iter()
                .map(|m| {
                    m.entries()
                        .map(|(row, col, p)| MatrixEntry {
                            row,
                            col,
                            value: p.clone(),
                        })
                        .collect()
                })
                .collect()
        };
        let t = self.rs.cartan_type();
        MatrixRepJson {
            series: t.series(),
            rank: t.rank(),
            dim: self.dim(),
            basis_weights: self.basis_weights.clone(),
            e: enc(&self.e),
            f: enc(&self.f),
            k: enc(&self.k),
            kinv: enc(&self.kinv),
        }
    }

    pub fn from_json(json: &MatrixRepJson) -> Result<MatrixRep, QModuleError> {
        let t = CartanType::new(json.series, json.rank)?;
        let rs = Arc::new(build_root_system(t));
        let n = json.dim;
        if json.basis_weights.len() != n || json.basis_weights.iter().any(|w| w.0.len() != t.rank())
        {
            return Err(QModuleError::Malformed(
                "basis weights do not match dim/rank".into(),
            ));
        }
        let dec =
            |name: &str, lists: &[Vec<MatrixEntry>]| -> Result<Vec<SparseMatrix>, QModuleError> {
                if lists.len() != t.rank() {
                    return Err(QModuleError::Malformed(format!(
                        "{name}: expected {} matrices",
                        t.rank()
                    )));
                }
                lists
                    .iter()
                    .map(|entries| {
                        let mut m = SparseMatrix::zero(n);
                        for en in entries {
                            if en.row >= n || en.col >= n {
                                return Err(QModuleError::Malformed(format!(
                                    "{name}: entry out of range"
                                )));
                            }
                            m.set(en.row, en.col, en.value.clone());
                        }
                        Ok(m)
                    })
                    .collect()
            };
        Ok(MatrixRep {
            rs,
            basis_weights: json.basis_weights.clone(),
            e: dec("E", &json.e)?,
            f: dec("F", &json.f)?,
            k: dec("K", &json.k)?,
            kinv: dec("Kinv", &json.kinv)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub value: LaurentPoly,
}

/// JSON form of a [`MatrixRep`]: one sparse entry list per generator index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRepJson {
    #[serde(rename = "type")]
    pub series: Series,
    pub rank: usize,
    pub dim: usize,
    pub basis_weights: Vec<WeightVec>,
    #[serde(rename = "E")]
    pub e: Vec<Vec<MatrixEntry>>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<MatrixEntry>>,
    #[serde(rename = "K")]
    pub k: Vec<Vec<MatrixEntry>>,
    #[serde(rename = "Kinv")]
    pub kinv: Vec<Vec<MatrixEntry>>,
}

fn k_matrices(rs: &RootSystem, weights: &[WeightVec], sign: i64) -> Vec<SparseMatrix> {
    (0..rs.rank())
        .map(|i| {
            SparseMatrix::diagonal(
                weights
                    .iter()
                    .map(|w| LaurentPoly::q_pow(sign * rs.d(i) * w.0[i]))
                    .collect(),
            )
        })
        .collect()
}

/// The one-dimensional trivial module.
pub fn trivial_rep(rs: Arc<RootSystem>) -> MatrixRep {
    let r = rs.rank();
    MatrixRep {
        basis_weights: vec![WeightVec::zero(r)],
        e: vec![SparseMatrix::zero(1); r],
        f: vec![SparseMatrix::zero(1); r],
        k: vec![SparseMatrix::identity(1); r],
        kinv: vec![SparseMatrix::identity(1); r],
        rs,
    }
}

/// The minuscule fundamental module `V_{ϖ_node}` (1-based node).
pub fn minuscule_rep(rs: Arc<RootSystem>, node: usize) -> Result<MatrixRep, QModuleError> {
    let idx = rs.check_node(node)?;
    let t = rs.cartan_type();
    let top = WeightVec::fundamental(rs.rank(), idx);
    let diagram = weight_multiplicities(&rs, &top)?;
    if let Some((w, m)) = diagram.mults().iter().find(|(_, m)| **m != 1) {
        return Err(QModuleError::MultiplicityNotOne {
            cartan_type: t,
            node,
            weight: w.clone(),
            mult: *m,
        });
    }
    let orbit = weyl_orbit(&rs, &top);
    if let Some(w) = diagram.mults().keys().find(|w| !orbit.contains(*w)) {
        return Err(QModuleError::MultipleOrbits {
            cartan_type: t,
            node,
            weight: w.clone(),
        });
    }

    let basis: Vec<WeightVec> = diagram.entries().into_iter().map(|e| e.weight).collect();
    let index: HashMap<&WeightVec, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let n = basis.len();
    let mut e = Vec::with_capacity(rs.rank());
    let mut f = Vec::with_capacity(rs.rank());
    for i in 0..rs.rank() {
        let alpha = rs.simple_root_weight(i);
        let mut ei = SparseMatrix::zero(n);
        let mut fi = SparseMatrix::zero(n);
        for (col, w) in basis.iter().enumerate() {
            if let Some(&row) = index.get(&w.add(&alpha)) {
                ei.set(row, col, LaurentPoly::one());
            }
            if let Some(&row) = index.get(&w.sub(&alpha)) {
                fi.set(row, col, LaurentPoly::one());
            }
        }
        e.push(ei);
        f.push(fi);
    }
    Ok(MatrixRep {
        k: k_matrices(&rs, &basis, 1),
        kinv: k_matrices(&rs, &basis, -1),
        e,
        f,
        basis_weights: basis,
        rs,
    })
}

/// Tensor product through the coproduct.
pub fn tensor_rep(r1: &MatrixRep, r2: &MatrixRep) -> Result<MatrixRep, QModuleError> {
    let (t1, t2) = (r1.rs.cartan_type(), r2.rs.cartan_type());
    if t1 != t2 {
        return Err(QModuleError::RootSystemMismatch(t1, t2));
    }
    let id1 = SparseMatrix::identity(r1.dim());
    let id2 = SparseMatrix::identity(r2.dim());
    let rank = r1.rs.rank();
    let basis_weights = r1
        .basis_weights
        .iter()
        .flat_map(|a| r2.basis_weights.iter().map(move |b| a.add(b)))
        .collect();
    Ok(MatrixRep {
        rs: Arc::clone(&r1.rs),
        basis_weights,
        e: (0..rank)
            .map(|i| r1.e[i].kron(&r2.k[i]).add(&id1.kron(&r2.e[i])))
            .collect(),
        f: (0..rank)
            .map(|i| r1.f[i].kron(&id2).add(&r1.kinv[i].kron(&r2.f[i])))
            .collect(),
        k: (0..rank).map(|i| r1.k[i].kron(&r2.k[i])).collect(),
        kinv: (0..rank).map(|i| r1.kinv[i].kron(&r2.kinv[i])).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationFamily {
    #[serde(rename = "KK-commute")]
    KkCommute,
    #[serde(rename = "K-inverse")]
    KInverse,
    #[serde(rename = "KE")]
    KE,
    #[serde(rename = "KF")]
    KF,
    #[serde(rename = "EF-commutator")]
    EfCommutator,
    #[serde(rename = "Serre-E")]
    SerreE,
    #[serde(rename = "Serre-F")]
    SerreF,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 7] = [
        RelationFamily::KkCommute,
        RelationFamily::KInverse,
        RelationFamily::KE,
        RelationFamily::KF,
        RelationFamily::EfCommutator,
        RelationFamily::SerreE,
        RelationFamily::SerreF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::KkCommute => "KK-commute",
            RelationFamily::KInverse => "K-inverse",
            RelationFamily::KE => "KE",
            RelationFamily::KF => "KF",
            RelationFamily::EfCommutator => "EF-commutator",
            RelationFamily::SerreE => "Serre-E",
            RelationFamily::SerreF => "Serre-F",
        }
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Location of a nonzero entry in `lhs − rhs` for a relation instance (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub row: usize,
    pub col: usize,
    pub residual: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyResult {
    pub family: RelationFamily,
    pub pass: bool,
    /// number of (i, j) instances checked
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    #[serde(rename = "type")]
    pub series: Series,
    pub rank: usize,
    pub dim: usize,
    pub families: Vec<FamilyResult>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.families.iter().all(|f| f.pass)
    }

    pub fn family(&self, family: RelationFamily) -> &FamilyResult {
        self.families
            .iter()
            .find(|f| f.family == family)
            .expect("every family is reported")
    }
}

/// `(K_i − K_i⁻¹) / (q_i − q_i⁻¹)`. Diagonal monomial entries `q^{d_i m}` map
/// to `[m]_{q_i}`; anything else goes through exact division.
fn ef_rhs(rep: &MatrixRep, i: usize) -> Result<SparseMatrix, Witness> {
    let d = rep.rs.d(i);
    let fail = |row, col, residual| Witness {
        i,
        j: i,
        row,
        col,
        residual,
    };
    let diff = rep.k[i].sub(&rep.kinv[i]);
    if let Some(diag) = rep.k[i].diagonal_entries() {
        let mut out = Vec::with_capacity(diag.len());
        let mut monomial = true;
        for (kk, p) in diag.iter().enumerate() {
            match p.as_q_power() {
                Some(e) if e % d == 0 && rep.kinv[i].get(kk, kk) == LaurentPoly::q_pow(-e) => {
                    out.push(qint_signed(e / d, d).expect("d is positive"));
                }
                _ => {
                    monomial = false;
                    break;
                }
            }
        }
        if monomial && rep.kinv[i].diagonal_entries().is_some() {
            return Ok(SparseMatrix::diagonal(out));
        }
    }
    let denom = &LaurentPoly::q_pow(d) - &LaurentPoly::q_pow(-d);
    let mut out = SparseMatrix::zero(rep.dim());
    for (row, col, p) in diff.entries() {
        let quotient = p.div_exact(&denom).map_err(|_| fail(row, col, p.clone()))?;
        out.set(row, col, quotient);
    }
    Ok(out)
}

/// `Σ_{s=0}^{n} (−1)^s [n; s]_{q_i} X_i^{n−s} X_j X_i^s` with `n = 1 − a_ij`.
fn serre_residual(x: &[SparseMatrix], rs: &RootSystem, i: usize, j: usize) -> SparseMatrix {
    let n = 1 - rs.a(i, j);
    let xi = &x[i];
    let dim = xi.dim();
    // left powers X_i^0..X_i^n
    let mut left = vec![SparseMatrix::identity(dim)];
    for p in 1..=n as usize {
        left.push(left[p - 1].mul(xi));
    }
    let mut acc = SparseMatrix::zero(dim);
    // running right factor X_j X_i^s
    let mut right = x[j].clone();
    for s in 0..=n {
        let mut coeff = qbinom(n, s, rs.d(i)).expect("0 <= s <= n");
        if s % 2 == 1 {
            coeff = -coeff;
        }
        let term = left[(n - s) as usize].mul(&right).scale(&coeff);
        acc = acc.add(&term);
        if s < n {
            right = right.mul(xi);
        }
    }
    acc
}

fn first_failure<F>(pairs: &[(usize, usize)], check: F) -> FamilyResultPart
where
    F: Fn(usize, usize) -> Option<Witness> + Sync,
{
    let failures: Vec<Option<Witness>> = pairs.par_iter().map(|&(i, j)| check(i, j)).collect();
    FamilyResultPart {
        checked: pairs.len(),
        witness: failures.into_iter().flatten().next(),
    }
}

struct FamilyResultPart {
    checked: usize,
    witness: Option<Witness>,
}

fn residual_witness(i: usize, j: usize, m: &SparseMatrix) -> Option<Witness> {
    m.first_nonzero().map(|(row, col, residual)| Witness {
        i,
        j,
        row,
        col,
        residual,
    })
}

/// Checks every defining relation of U_q(g) on `rep`, exactly.
pub fn verify_relations(rep: &MatrixRep) -> RelationReport {
    let rs = &*rep.rs;
    let r = rs.rank();
    let n = rep.dim();
    let all_pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
    let distinct: Vec<(usize, usize)> = all_pairs.iter().copied().filter(|(i, j)| i != j).collect();
    let diagonal: Vec<(usize, usize)> = (0..r).map(|i| (i, i)).collect();
    let id = SparseMatrix::identity(n);

    let mut families = Vec::with_capacity(7);
    for family in RelationFamily::ALL {
        let part = match family {
            RelationFamily::KkCommute => first_failure(&all_pairs, |i, j| {
                residual_witness(i, j, &rep.k[i].mul(&rep.k[j]).sub(&rep.k[j].mul(&rep.k[i])))
            }),
            RelationFamily::KInverse => first_failure(&diagonal, |i, _| {
                residual_witness(i, i, &rep.k[i].mul(&rep.kinv[i]).sub(&id))
                    .or_else(|| residual_witness(i, i, &rep.kinv[i].mul(&rep.k[i]).sub(&id)))
            }),
            RelationFamily::KE => first_failure(&all_pairs, |i, j| {
                let c = LaurentPoly::q_pow(rs.d(i) * rs.a(i, j));
                let lhs = rep.k[i].mul(&rep.e[j]);
                let rhs = rep.e[j].mul(&rep.k[i]).scale(&c);
                residual_witness(i, j, &lhs.sub(&rhs))
            }),
            RelationFamily::KF => first_failure(&all_pairs, |i, j| {
                let c = LaurentPoly::q_pow(-rs.d(i) * rs.a(i, j));
                let lhs = rep.k[i].mul(&rep.f[j]);
                let rhs = rep.f[j].mul(&rep.k[i]).scale(&c);
                residual_witness(i, j, &lhs.sub(&rhs))
            }),
            RelationFamily::EfCommutator => first_failure(&all_pairs, |i, j| {
                let comm = rep.e[i].mul(&rep.f[j]).sub(&rep.f[j].mul(&rep.e[i]));
                if i != j {
                    return residual_witness(i, j, &comm);
                }
                match ef_rhs(rep, i) {
                    Ok(rhs) => residual_witness(i, j, &comm.sub(&rhs)),
                    Err(w) => Some(w),
                }
            }),
            RelationFamily::SerreE => first_failure(&distinct, |i, j| {
                residual_witness(i, j, &serre_residual(&rep.e, rs, i, j))
            }),
            RelationFamily::SerreF => first_failure(&distinct, |i, j| {
                residual_witness(i, j, &serre_residual(&rep.f, rs, i, j))
            }),
        };
        families.push(FamilyResult {
            family,
            pass: part.witness.is_none(),
            checked: part.checked,
            witness: part.witness,
        });
    }
    RelationReport {
        series: rs.cartan_type().series(),
        rank: r,
        dim: n,
        families,
    }
}

/// Minuscule nodes (1-based) of a type, Bourbaki numbering.
pub fn minuscule_nodes(t: CartanType) -> Vec<usize> {
    let r = t.rank();
    match t.series() {
        Series::A => (1..=r).collect(),
        Series::B => vec![r],
        Series::C => vec![1],
        Series::D => vec![1, r - 1, r],
        Series::E => match r {
            6 => vec![1, 6],
            7 => vec![7],
            _ => vec![],
        },
        Series::F | Series::G => vec![],
    }
}
