//! Finite crystallographic root systems of types A–G.
//!
//! Nodes follow Bourbaki numbering throughout:
//!
//! | type | diagram                                   | short/long                 |
//! |------|-------------------------------------------|----------------------------|
//! | A_r  | 1 - 2 - ... - r                           | simply laced               |
//! | B_r  | 1 - 2 - ... - (r-1) => r                  | α_r short, d = (2,..,2,1)  |
//! | C_r  | 1 - 2 - ... - (r-1) <= r                  | α_r long,  d = (1,..,1,2)  |
//! | D_r  | 1 - ... - (r-2) - (r-1), (r-2) - r        | simply laced               |
//! | E_r  | 1 - 3 - 4 - 5 - ... - r, 2 - 4            | simply laced               |
//! | F_4  | 1 - 2 => 3 - 4                            | d = (2,2,1,1)              |
//! | G_2  | 1 <= 2                                    | α_2 long,  d = (1,3)       |
//!
//! The Cartan matrix is `a_ij = (α_i^∨, α_j)` with `α_i^∨ = α_i / d_i`, and the
//! form is normalised so that the shortest simple roots have `(α, α) = 2`.
//! Roots are stored in simple-root coordinates ([`RootVec`]) and weights in
//! fundamental-weight coordinates ([`WeightVec`]); the two never mix implicitly.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("invalid rank {rank} for series {series} (allowed: {allowed})")]
    InvalidRank {
        series: Series,
        rank: usize,
        allowed: &'static str,
    },
    #[error("unknown Cartan series '{0}'")]
    UnknownSeries(String),
    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub const ALL: [Series; 7] = [
        Series::A,
        Series::B,
        Series::C,
        Series::D,
        Series::E,
        Series::F,
        Series::G,
    ];

    fn allowed_ranks(self) -> &'static str {
        match self {
            Series::A => ">= 1",
            Series::B | Series::C => ">= 2",
            Series::D => ">= 4",
            Series::E => "6..=8",
            Series::F => "4",
            Series::G => "2",
        }
    }

    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
        };
        f.write_str(c)
    }
}

impl FromStr for Series {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            _ => Err(RootDataError::UnknownSeries(s.to_string())),
        }
    }
}

/// A Cartan type such as `B3` or `E6`. Construction validates the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CartanType {
    series: Series,
    rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootDataError> {
        if !series.admits_rank(rank) {
            return Err(RootDataError::InvalidRank {
                series,
                rank,
                allowed: series.allowed_ranks(),
            });
        }
        Ok(CartanType { series, rank })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All valid types with rank in `1..=max_rank`, ordered by (series, rank).
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for series in Series::ALL {
            for rank in 1..=max_rank {
                if let Ok(t) = CartanType::new(series, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let head = chars
            .next()
            .ok_or_else(|| RootDataError::UnknownSeries(s.to_string()))?;
        let series: Series = head.to_string().parse()?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootDataError::UnknownSeries(s.to_string()))?;
        CartanType::new(series, rank)
    }
}

/// Element of the root lattice in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVec(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

/// Integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVec(pub Vec<i64>);

impl WeightVec {
    pub fn zero(rank: usize) -> Self {
        WeightVec(vec![0; rank])
    }

    /// The fundamental weight ϖ_{i+1} (0-based index `i`).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        WeightVec(v)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> WeightVec {
        WeightVec(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Argument for [`RootSystem::bilinear`]: a vector in either basis.
#[derive(Debug, Clone, Copy)]
pub enum LatticeVec<'a> {
    Root(&'a RootVec),
    Weight(&'a WeightVec),
}

impl<'a> From<&'a RootVec> for LatticeVec<'a> {
    fn from(r: &'a RootVec) -> Self {
        LatticeVec::Root(r)
    }
}

impl<'a> From<&'a WeightVec> for LatticeVec<'a> {
    fn from(w: &'a WeightVec) -> Self {
        LatticeVec::Weight(w)
    }
}

/// Immutable root datum for one Cartan type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan_matrix: Vec<Vec<i64>>,
    d: Vec<i64>,
    positive_roots: Vec<RootVec>,
    highest_root: RootVec,
    det: i64,
    adjugate: Vec<Vec<i64>>,
}

/// Canonical JSON view of a root system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub series: Series,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub positive_roots: Vec<RootVec>,
    pub highest_root: RootVec,
}

/// Symmetrised Gram matrix `(α_i, α_j)` and symmetrisers for a type.
fn gram_and_symmetrizers(t: CartanType) -> (Vec<Vec<i64>>, Vec<i64>) {
    let r = t.rank;
    let mut d = vec![1i64; r];
    // (i, j, (α_i, α_j)) with 0-based indices
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    match t.series {
        Series::A => {
            for i in 0..r.saturating_sub(1) {
                edges.push((i, i + 1, -1));
            }
        }
        Series::B => {
            for x in d.iter_mut().take(r - 1) {
                *x = 2;
            }
            for i in 0..r - 1 {
                edges.push((i, i + 1, -2));
            }
        }
        Series::C => {
            d[r - 1] = 2;
            for i in 0..r - 2 {
                edges.push((i, i + 1, -1));
            }
            edges.push((r - 2, r - 1, -2));
        }
        Series::D => {
            for i in 0..r - 2 {
                edges.push((i, i + 1, -1));
            }
            edges.push((r - 3, r - 1, -1));
        }
        Series::E => {
            edges.push((0, 2, -1));
            edges.push((1, 3, -1));
            for i in 2..r - 1 {
                edges.push((i, i + 1, -1));
            }
        }
        Series::F => {
            d = vec![2, 2, 1, 1];
            edges.push((0, 1, -2));
            edges.push((1, 2, -2));
            edges.push((2, 3, -1));
        }
        Series::G => {
            d = vec![1, 3];
            edges.push((0, 1, -3));
        }
    }
    let mut gram = vec![vec![0i64; r]; r];
    for i in 0..r {
        gram[i][i] = 2 * d[i];
    }
    for (i, j, v) in edges {
        gram[i][j] = v;
        gram[j][i] = v;
    }
    (gram, d)
}

/// Fraction-free Gaussian elimination (Bareiss). Exact for integer input.
pub(crate) fn bareiss_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // cofactor C_ji goes to adj[i][j]
                    let minor: Vec<Vec<i64>> = m
                        .iter()
                        .enumerate()
                        .filter(|(r, _)| *r != j)
                        .map(|(_, row)| {
                            row.iter()
                                .enumerate()
                                .filter(|(c, _)| *c != i)
                                .map(|(_, &x)| x)
                                .collect()
                        })
                        .collect();
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    sign * bareiss_det(&minor)
                })
                .collect()
        })
        .collect()
}

/// Builds the root system of type `t`.
pub fn build_root_system(t: CartanType) -> RootSystem {
    let r = t.rank;
    let (gram, d) = gram_and_symmetrizers(t);
    let cartan_matrix: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| gram[i][j] / d[i]).collect())
        .collect();

    let reflect = |beta: &RootVec, i: usize| -> RootVec {
        let pairing: i64 = (0..r).map(|j| cartan_matrix[i][j] * beta.0[j]).sum();
        let mut out = beta.0.clone();
        out[i] -= pairing;
        RootVec(out)
    };

    let mut seen: BTreeSet<RootVec> = BTreeSet::new();
    let mut queue: VecDeque<RootVec> = VecDeque::new();
    for i in 0..r {
        let a = RootVec::simple(r, i);
        seen.insert(a.clone());
        queue.push_back(a);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            let img = reflect(&beta, i);
            if img.is_nonnegative() && img.height() > 0 && seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut positive_roots: Vec<RootVec> = seen.into_iter().collect();
    positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    let highest_root = positive_roots
        .last()
        .cloned()
        .expect("a root system has at least one positive root");

    let det = bareiss_det(&cartan_matrix);
    let adjugate = adjugate(&cartan_matrix);

    RootSystem {
        cartan_type: t,
        cartan_matrix,
        d,
        positive_roots,
        highest_root,
        det,
        adjugate,
    }
}

impl RootSystem {
    pub fn new(series: Series, rank: usize) -> Result<Self, RootDataError> {
        Ok(build_root_system(CartanType::new(series, rank)?))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    /// `a_ij` with 0-based indices.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan_matrix[i][j]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &RootVec {
        &self.highest_root
    }

    pub fn det_cartan(&self) -> i64 {
        self.det
    }

    /// `det(A)·A⁻¹`, an integer matrix.
    pub fn adjugate_cartan(&self) -> &[Vec<i64>] {
        &self.adjugate
    }

    pub fn cartan_inverse(&self) -> Vec<Vec<BigRational>> {
        let det = BigInt::from(self.det);
        self.adjugate
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| BigRational::new(BigInt::from(x), det.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn check_node(&self, node: usize) -> Result<usize, RootDataError> {
        if node == 0 || node > self.rank() {
            return Err(RootDataError::NodeOutOfRange {
                node,
                rank: self.rank(),
            });
        }
        Ok(node - 1)
    }

    pub fn check_len(&self, len: usize) -> Result<(), RootDataError> {
        if len != self.rank() {
            return Err(RootDataError::DimensionMismatch {
                got: len,
                expected: self.rank(),
            });
        }
        Ok(())
    }

    /// Simple root α_{i+1} expressed in the fundamental-weight basis (column i of A).
    pub fn simple_root_weight(&self, i: usize) -> WeightVec {
        WeightVec((0..self.rank()).map(|k| self.cartan_matrix[k][i]).collect())
    }

    pub fn root_to_weight(&self, root: &RootVec) -> WeightVec {
        let r = self.rank();
        WeightVec(
            (0..r)
                .map(|k| (0..r).map(|j| self.cartan_matrix[k][j] * root.0[j]).sum())
                .collect(),
        )
    }

    /// Simple-root coordinates of a weight; rational in general.
    pub fn weight_to_root(&self, w: &WeightVec) -> Vec<BigRational> {
        let r = self.rank();
        let det = BigInt::from(self.det);
        (0..r)
            .map(|k| {
                let num: i64 = (0..r).map(|j| self.adjugate[k][j] * w.0[j]).sum();
                BigRational::new(BigInt::from(num), det.clone())
            })
            .collect()
    }

    /// `det(A)` times the simple-root coordinates of a weight; always integral.
    pub fn weight_to_root_scaled(&self, w: &WeightVec) -> RootVec {
        let r = self.rank();
        RootVec(
            (0..r)
                .map(|k| (0..r).map(|j| self.adjugate[k][j] * w.0[j]).sum())
                .collect(),
        )
    }

    /// `(x, y)` for two roots. Integral.
    pub fn form_root_root(&self, x: &RootVec, y: &RootVec) -> i64 {
        let r = self.rank();
        let mut acc = 0;
        for i in 0..r {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                acc += x.0[i] * self.d[i] * self.cartan_matrix[i][j] * y.0[j];
            }
        }
        acc
    }

    /// `(λ, β)` for a weight and a root, using `(ϖ_i, α_j) = d_j δ_ij`. Integral.
    pub fn form_weight_root(&self, w: &WeightVec, root: &RootVec) -> i64 {
        (0..self.rank())
            .map(|j| w.0[j] * self.d[j] * root.0[j])
            .sum()
    }

    /// `det(A)·(λ, μ)` for two weights. Integral.
    pub fn form_weight_weight_scaled(&self, x: &WeightVec, y: &WeightVec) -> i64 {
        let y_root = self.weight_to_root_scaled(y);
        self.form_weight_root(x, &y_root)
    }

    /// The invariant form on either basis, exact.
    pub fn bilinear<'a, 'b>(
        &self,
        x: impl Into<LatticeVec<'a>>,
        y: impl Into<LatticeVec<'b>>,
    ) -> BigRational {
        let det = BigInt::from(self.det);
        match (x.into(), y.into()) {
            (LatticeVec::Root(a), LatticeVec::Root(b)) => {
                BigRational::from_integer(BigInt::from(self.form_root_root(a, b)))
            }
            (LatticeVec::Weight(w), LatticeVec::Root(b))
            | (LatticeVec::Root(b), LatticeVec::Weight(w)) => {
                BigRational::from_integer(BigInt::from(self.form_weight_root(w, b)))
            }
            (LatticeVec::Weight(a), LatticeVec::Weight(b)) => {
                BigRational::new(BigInt::from(self.form_weight_weight_scaled(a, b)), det)
            }
        }
    }

    /// Simple reflection `s_i(λ) = λ − (λ, α_i^∨) α_i` on a weight.
    pub fn reflect_weight(&self, w: &WeightVec, i: usize) -> WeightVec {
        let c = w.0[i];
        if c == 0 {
            return w.clone();
        }
        WeightVec(
            (0..self.rank())
                .map(|k| w.0[k] - c * self.cartan_matrix[k][i])
                .collect(),
        )
    }

    /// ρ = Σ ϖ_i.
    pub fn rho(&self) -> WeightVec {
        WeightVec(vec![1; self.rank()])
    }

    /// Leading principal minors of the symmetrised matrix D·A.
    pub fn symmetrized_leading_minors(&self) -> Vec<i64> {
        let r = self.rank();
        let b: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| self.d[i] * self.cartan_matrix[i][j])
                    .collect()
            })
            .collect();
        (1..=r)
            .map(|k| {
                let sub: Vec<Vec<i64>> = b[..k].iter().map(|row| row[..k].to_vec()).collect();
                bareiss_det(&sub)
            })
            .collect()
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            series: self.cartan_type.series,
            rank: self.rank(),
            cartan_matrix: self.cartan_matrix.clone(),
            d: self.d.clone(),
            positive_roots: self.positive_roots.clone(),
            highest_root: self.highest_root.clone(),
        }
    }
}

/// True if `A · inverse` is the identity, checked in exact rationals.
pub fn is_exact_inverse(a: &[Vec<i64>], inverse: &[Vec<BigRational>]) -> bool {
    let n = a.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let s = (0..n).fold(BigRational::zero(), |acc, k| {
                acc + BigRational::from_integer(BigInt::from(a[i][k])) * &inverse[k][j]
            });
            if i == j {
                s.is_one()
            } else {
                s.is_zero()
            }
        })
    })
}
