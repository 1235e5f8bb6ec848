//! Irreducible flag manifolds `G/L_S` with `S = {1..r} \ {s}` and their
//! central-character invariants.
//!
//! For a cominuscule node `s` the element `Z = K_1^{a_1} ⋯ K_r^{a_r}`, with
//! `det(A)·ϖ_s = Σ a_i α_i`, commutes with `E_j, F_j` for `j ≠ s`, so it acts
//! on every simple `U_q(l_S)`-module by a power of `q`. Everything the
//! existence/uniqueness/flatness/torsion arguments consume reduces to integer
//! exponents of those powers, and that is what the certificates record.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qarith::LaurentPoly;
use crate::rootdata::{
    build_root_system, CartanType, RootDataError, RootSystem, Series, WeightVec,
};
use crate::weights::{weight_multiplicities, weyl_dim, WeightEntry, WeightsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error("node {node} of {cartan_type} is not cominuscule (coefficient {coefficient} in the highest root)")]
    NotCominuscule {
        cartan_type: CartanType,
        node: usize,
        coefficient: i64,
    },
    #[error("Z-character on J(1) is not uniform for {cartan_type} node {node}: {first} vs {other} at weight {weight}")]
    NonUniformCharacter {
        cartan_type: CartanType,
        node: usize,
        first: i64,
        other: i64,
        weight: WeightVec,
    },
    #[error("Z-character on J(1) is trivial for {cartan_type} node {node}")]
    TrivialCharacter {
        cartan_type: CartanType,
        node: usize,
    },
    #[error("J(1) is empty for {cartan_type} node {node}")]
    EmptyJ1 {
        cartan_type: CartanType,
        node: usize,
    },
}

/// Nodes (1-based) whose simple root has coefficient 1 in the highest root.
pub fn cominuscule_nodes(rs: &RootSystem) -> Vec<usize> {
    rs.highest_root()
        .0
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(i, _)| i + 1)
        .collect()
}

/// An irreducible flag manifold, identified by its crossed node.
#[derive(Debug, Clone)]
pub struct Flag {
    rs: Arc<RootSystem>,
    node: usize,
}

impl Flag {
    pub fn new(rs: Arc<RootSystem>, node: usize) -> Result<Self, FlagError> {
        let idx = rs.check_node(node)?;
        let coefficient = rs.highest_root().0[idx];
        if coefficient != 1 {
            return Err(FlagError::NotCominuscule {
                cartan_type: rs.cartan_type(),
                node,
                coefficient,
            });
        }
        Ok(Flag { rs, node })
    }

    pub fn from_type(series: Series, rank: usize, node: usize) -> Result<Self, FlagError> {
        let t = CartanType::new(series, rank)?;
        Flag::new(Arc::new(build_root_system(t)), node)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn cartan_type(&self) -> CartanType {
        self.rs.cartan_type()
    }

    /// 1-based crossed node `s`.
    pub fn node(&self) -> usize {
        self.node
    }

    fn s(&self) -> usize {
        self.node - 1
    }

    /// `μ_S = ϖ_s`.
    pub fn mu_s(&self) -> WeightVec {
        WeightVec::fundamental(self.rs.rank(), self.s())
    }

    /// Nodes in `S`, 1-based.
    pub fn levi_nodes(&self) -> Vec<usize> {
        (1..=self.rs.rank()).filter(|&k| k != self.node).collect()
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} node {}", self.cartan_type(), self.node)
    }
}

/// `M`: positive roots with nonzero α_s-coefficient.
pub fn complex_dimension(flag: &Flag) -> usize {
    let s = flag.s();
    flag.rs
        .positive_roots()
        .iter()
        .filter(|beta| beta.0[s] >= 1)
        .count()
}

/// Weights `wt` of `V_{ϖ_s}` with `(ϖ_s, ϖ_s − α_s − wt) = 0`, with multiplicity.
pub fn j1_set(flag: &Flag) -> Result<Vec<(WeightVec, u64)>, FlagError> {
    let rs = &*flag.rs;
    let ws = flag.mu_s();
    let alpha_s = rs.simple_root_weight(flag.s());
    let diagram = weight_multiplicities(rs, &ws)?;
    let base = ws.sub(&alpha_s);
    Ok(diagram
        .entries()
        .into_iter()
        .filter(|e| rs.bilinear(&ws, &base.sub(&e.weight)).is_zero())
        .map(|e| (e.weight, e.mult))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZElement {
    /// exponents `a_i` with `det(A)·ϖ_s = Σ a_i α_i`
    pub a: Vec<i64>,
    /// `c_j` with `Z E_j Z⁻¹ = q^{c_j} E_j`
    pub commutation_exponents: Vec<i64>,
}

pub fn z_element(flag: &Flag) -> ZElement {
    let rs = &*flag.rs;
    let r = rs.rank();
    let s = flag.s();
    let a: Vec<i64> = (0..r).map(|i| rs.adjugate_cartan()[i][s]).collect();
    // K_i E_j K_i⁻¹ = q^{d_i a_ij} E_j
    let commutation_exponents = (0..r)
        .map(|j| (0..r).map(|i| a[i] * rs.d(i) * rs.a(i, j)).sum())
        .collect();
    ZElement {
        a,
        commutation_exponents,
    }
}

/// Exponent of `q` by which `Z` acts on a vector of weight `wt`.
fn z_exponent_on_weight(rs: &RootSystem, z: &ZElement, wt: &WeightVec) -> i64 {
    // K_i acts by q^{(wt, α_i)} = q^{d_i wt_i}
    (0..rs.rank()).map(|i| z.a[i] * rs.d(i) * wt.0[i]).sum()
}

/// Common value of the Z-exponent of `wt − ϖ_s` over `J(1)`.
pub fn omega01_character_exponent(flag: &Flag) -> Result<i64, FlagError> {
    let j1 = j1_set(flag)?;
    omega01_from_j1(flag, &z_element(flag), &j1)
}

fn omega01_from_j1(flag: &Flag, z: &ZElement, j1: &[(WeightVec, u64)]) -> Result<i64, FlagError> {
    let rs = &*flag.rs;
    let ws = flag.mu_s();
    let mut values = j1
        .iter()
        .map(|(wt, _)| (wt, z_exponent_on_weight(rs, z, &wt.sub(&ws))));
    let (_, first) = values.next().ok_or(FlagError::EmptyJ1 {
        cartan_type: flag.cartan_type(),
        node: flag.node,
    })?;
    for (wt, other) in values {
        if other != first {
            return Err(FlagError::NonUniformCharacter {
                cartan_type: flag.cartan_type(),
                node: flag.node,
                first,
                other,
                weight: wt.clone(),
            });
        }
    }
    if first == 0 {
        return Err(FlagError::TrivialCharacter {
            cartan_type: flag.cartan_type(),
            node: flag.node,
        });
    }
    Ok(first)
}

/// `binomial(2M, k)` for `k = 0..=2M`.
pub fn form_dims(m: usize) -> Vec<u128> {
    let n = 2 * m as u128;
    let mut out = Vec::with_capacity(2 * m + 1);
    let mut c: u128 = 1;
    out.push(c);
    for k in 1..=n {
        c = c * (n + 1 - k) / k;
        out.push(c);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagInvariants {
    #[serde(rename = "type")]
    pub series: Series,
    pub rank: usize,
    pub node: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "detA")]
    pub det_a: i64,
    pub d_s: i64,
    /// `μ_S = ϖ_s` in fundamental-weight coordinates
    pub mu_s: WeightVec,
    #[serde(rename = "N")]
    pub n: u64,
    pub a: Vec<i64>,
    pub commutation_exponents: Vec<i64>,
    pub j1: Vec<WeightEntry>,
    pub j1_count: u64,
    pub omega01_exponent: i64,
    pub form_dims: Vec<u128>,
}

pub const CSV_HEADER: &str = "type,rank,node,M,detA,d_s,N,J1,omega01_exponent";

impl FlagInvariants {
    pub fn compute(flag: &Flag) -> Result<Self, FlagError> {
        let rs = &*flag.rs;
        let t = rs.cartan_type();
        let m = complex_dimension(flag);
        let z = z_element(flag);
        let j1 = j1_set(flag)?;
        let omega01_exponent = omega01_from_j1(flag, &z, &j1)?;
        Ok(FlagInvariants {
            series: t.series(),
            rank: t.rank(),
            node: flag.node,
            m,
            det_a: rs.det_cartan(),
            d_s: rs.d(flag.s()),
            mu_s: flag.mu_s(),
            n: weyl_dim(rs, &flag.mu_s())?,
            a: z.a,
            commutation_exponents: z.commutation_exponents,
            j1_count: j1.iter().map(|(_, k)| k).sum(),
            j1: j1
                .into_iter()
                .map(|(weight, mult)| WeightEntry { weight, mult })
                .collect(),
            omega01_exponent,
            form_dims: form_dims(m),
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.series,
            self.rank,
            self.node,
            self.m,
            self.det_a,
            self.d_s,
            self.n,
            self.j1_count,
            self.omega01_exponent
        )
    }

    pub fn certify(&self, kind: CertKind, module_z_exponent: i64) -> CertResult {
        certificate(kind, self.omega01_exponent, module_z_exponent)
    }

    pub fn certify_all(&self, module_z_exponent: i64) -> Vec<CertResult> {
        CertKind::ALL
            .iter()
            .map(|&k| self.certify(k, module_z_exponent))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CertKind {
    #[serde(rename = "uniqueness-01")]
    Uniqueness01,
    #[serde(rename = "uniqueness-10")]
    Uniqueness10,
    #[serde(rename = "flatness")]
    Flatness,
    #[serde(rename = "torsion-free")]
    TorsionFree,
}

impl CertKind {
    pub const ALL: [CertKind; 4] = [
        CertKind::Uniqueness01,
        CertKind::Uniqueness10,
        CertKind::Flatness,
        CertKind::TorsionFree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CertKind::Uniqueness01 => "uniqueness-01",
            CertKind::Uniqueness10 => "uniqueness-10",
            CertKind::Flatness => "flatness",
            CertKind::TorsionFree => "torsion-free",
        }
    }
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Character-separation certificate: passes iff `q^lhs ≠ q^rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertResult {
    pub kind: CertKind,
    pub pass: bool,
    pub lhs_exponent: i64,
    pub rhs_exponent: i64,
    pub explanation: String,
}

impl CertResult {
    /// Compares `q^lhs` and `q^rhs` at a concrete `q0`, exactly.
    pub fn separated_at(&self, q0: &BigRational) -> bool {
        let lhs = LaurentPoly::q_pow(self.lhs_exponent).eval(q0);
        let rhs = LaurentPoly::q_pow(self.rhs_exponent).eval(q0);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => a != b,
            _ => false,
        }
    }
}

/// Builds one certificate from the (0,1)-form exponent `omega` and the
/// module exponent `e` (`χ_F(Z) = q^e`).
pub fn certificate(kind: CertKind, omega: i64, e: i64) -> CertResult {
    let (lhs, rhs, explanation) = match kind {
        CertKind::Uniqueness01 => (
            omega + e,
            e,
            format!(
                "chi(Omega01 (x) F)(Z) = q^{} vs chi(F)(Z) = q^{}",
                omega + e,
                e
            ),
        ),
        CertKind::Uniqueness10 => (
            -omega + e,
            e,
            format!(
                "chi(Omega10 (x) F)(Z) = q^{} vs chi(F)(Z) = q^{}",
                -omega + e,
                e
            ),
        ),
        CertKind::Flatness => (
            2 * omega + e,
            e,
            format!(
                "chi(Omega02 (x) F)(Z) = q^{} vs chi(F)(Z) = q^{}",
                2 * omega + e,
                e
            ),
        ),
        CertKind::TorsionFree => (
            2 * omega,
            omega,
            format!(
                "chi(Omega02)(Z) = q^{} vs chi(Omega01)(Z) = q^{}",
                2 * omega,
                omega
            ),
        ),
    };
    CertResult {
        kind,
        pass: lhs != rhs,
        lhs_exponent: lhs,
        rhs_exponent: rhs,
        explanation,
    }
}

pub fn uniqueness_certificate(
    flag: &Flag,
    module_z_exponent: i64,
) -> Result<CertResult, FlagError> {
    Ok(FlagInvariants::compute(flag)?.certify(CertKind::Uniqueness01, module_z_exponent))
}

pub fn flatness_certificate(flag: &Flag, module_z_exponent: i64) -> Result<CertResult, FlagError> {
    Ok(FlagInvariants::compute(flag)?.certify(CertKind::Flatness, module_z_exponent))
}

pub fn torsion_certificate(flag: &Flag) -> Result<CertResult, FlagError> {
    Ok(FlagInvariants::compute(flag)?.certify(CertKind::TorsionFree, 0))
}

/// Every irreducible flag with rank in `1..=max_rank`, ordered by (series, rank, node).
pub fn all_flags(max_rank: usize) -> Vec<Flag> {
    CartanType::all_up_to(max_rank)
        .into_iter()
        .flat_map(|t| {
            let rs = Arc::new(build_root_system(t));
            cominuscule_nodes(&rs)
                .into_iter()
                .map(move |s| Flag {
                    rs: Arc::clone(&rs),
                    node: s,
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Invariants for a list of flags, computed in parallel; output keeps input order.
pub fn atlas(flags: &[Flag]) -> Result<Vec<FlagInvariants>, FlagError> {
    flags.par_iter().map(FlagInvariants::compute).collect()
}

/// `(ϖ_s, α_s)` as an exact rational, for reporting.
pub fn pairing_ws_alpha_s(flag: &Flag) -> BigRational {
    let rs = &*flag.rs;
    let beta = crate::rootdata::RootVec::simple(rs.rank(), flag.s());
    BigRational::from_integer(BigInt::from(rs.form_weight_root(&flag.mu_s(), &beta)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flag(s: Series, r: usize, node: usize) -> Flag {
        Flag::from_type(s, r, node).unwrap()
    }

    #[test]
    fn cominuscule_examples() {
        let a4 = RootSystem::new(Series::A, 4).unwrap();
        assert_eq!(cominuscule_nodes(&a4), vec![1, 2, 3, 4]);
        let g2 = RootSystem::new(Series::G, 2).unwrap();
        assert!(cominuscule_nodes(&g2).is_empty());
        let d5 = RootSystem::new(Series::D, 5).unwrap();
        assert_eq!(cominuscule_nodes(&d5), vec![1, 4, 5]);
    }

    #[test]
    fn invalid_flags_rejected() {
        assert!(matches!(
            Flag::from_type(Series::B, 3, 2),
            Err(FlagError::NotCominuscule { coefficient: 2, .. })
        ));
        assert!(matches!(
            Flag::from_type(Series::A, 3, 4),
            Err(FlagError::RootData(RootDataError::NodeOutOfRange { .. }))
        ));
        assert!(matches!(
            Flag::from_type(Series::G, 3, 1),
            Err(FlagError::RootData(RootDataError::InvalidRank { .. }))
        ));
    }

    #[test]
    fn complex_dimension_examples() {
        for n in 1..=6 {
            assert_eq!(complex_dimension(&flag(Series::A, n, 1)), n);
        }
        assert_eq!(complex_dimension(&flag(Series::A, 3, 2)), 4);
        assert_eq!(complex_dimension(&flag(Series::B, 2, 1)), 3);
    }

    #[test]
    fn j1_examples() {
        let a1 = j1_set(&flag(Series::A, 1, 1)).unwrap();
        assert_eq!(a1, vec![(WeightVec(vec![-1]), 1)]);
        let b2 = j1_set(&flag(Series::B, 2, 1)).unwrap();
        assert_eq!(b2.len(), 3);
        assert!(b2.contains(&(WeightVec(vec![0, 0]), 1)));
        assert_eq!(j1_set(&flag(Series::A, 2, 1)).unwrap().len(), 2);
    }

    #[test]
    fn z_element_examples() {
        let z = z_element(&flag(Series::A, 1, 1));
        assert_eq!(z.a, vec![1]);
        assert_eq!(z.commutation_exponents, vec![2]);
        let z = z_element(&flag(Series::A, 3, 2));
        assert_eq!(z.a, vec![2, 4, 2]);
        assert_eq!(z.commutation_exponents, vec![0, 4, 0]);
    }

    #[test]
    fn omega01_examples() {
        assert_eq!(
            omega01_character_exponent(&flag(Series::A, 1, 1)).unwrap(),
            -2
        );
        assert_eq!(
            omega01_character_exponent(&flag(Series::B, 2, 1))
                .unwrap()
                .abs(),
            4
        );
        let e6 = flag(Series::E, 6, 1);
        assert_eq!(omega01_character_exponent(&e6).unwrap().abs(), 3);
        assert_eq!(j1_set(&e6).unwrap().len(), 16);
    }

    #[test]
    fn certificate_examples() {
        let a1 = flag(Series::A, 1, 1);
        let c = uniqueness_certificate(&a1, 0).unwrap();
        assert!(c.pass);
        assert_eq!((c.lhs_exponent, c.rhs_exponent), (-2, 0));
        let gr24 = flag(Series::A, 3, 2);
        for k in -3..=3 {
            assert!(flatness_certificate(&gr24, 4 * k).unwrap().pass);
        }
        assert!(torsion_certificate(&gr24).unwrap().pass);
    }

    #[test]
    fn certificate_fails_only_for_zero_omega() {
        for kind in CertKind::ALL {
            assert!(!certificate(kind, 0, 5).pass);
            assert!(certificate(kind, 3, 5).pass);
        }
    }

    #[test]
    fn separation_at_real_q() {
        let c = certificate(CertKind::Flatness, -2, 7);
        for q0 in [
            BigRational::new(2.into(), 1.into()),
            BigRational::new((-1).into(), 3.into()),
        ] {
            assert!(c.separated_at(&q0));
        }
        let degenerate = certificate(CertKind::Uniqueness01, 0, 1);
        assert!(!degenerate.separated_at(&BigRational::new(5.into(), 2.into())));
    }

    #[test]
    fn form_dims_ladder() {
        assert_eq!(form_dims(2), vec![1, 4, 6, 4, 1]);
        let gr = form_dims(4);
        assert_eq!(gr.len(), 9);
        assert_eq!(gr.iter().sum::<u128>(), 256);
        assert_eq!(form_dims(36).iter().sum::<u128>(), 1u128 << 72);
    }

    #[test]
    fn invariants_csv_row() {
        let inv = FlagInvariants::compute(&flag(Series::B, 2, 1)).unwrap();
        assert_eq!(inv.csv_row(), "B,2,1,3,2,2,5,3,-4");
        assert_eq!(inv.mu_s, WeightVec(vec![1, 0]));
        assert_eq!(flag(Series::B, 2, 1).levi_nodes(), vec![2]);
        assert_eq!(
            pairing_ws_alpha_s(&flag(Series::B, 2, 1)),
            BigRational::from_integer(2.into())
        );
    }
}
