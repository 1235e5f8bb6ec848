//! Weight diagrams of irreducible highest-weight modules.
//!
//! Multiplicities come from Freudenthal's recursion evaluated on dominant
//! weights only; every other weight inherits the multiplicity of its dominant
//! Weyl conjugate.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{CartanType, RootSystem, WeightVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightsError {
    #[error("weight {0} is not dominant")]
    NotDominant(WeightVec),
    #[error("weight has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("dimension of V_{0} does not fit in 64 bits")]
    Overflow(WeightVec),
}

/// All weights of `V_μ` with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDiagram {
    highest: WeightVec,
    mults: BTreeMap<WeightVec, u64>,
    /// height of `μ − λ` for each weight λ
    depth: BTreeMap<WeightVec, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub weight: WeightVec,
    pub mult: u64,
}

impl WeightDiagram {
    pub fn highest(&self) -> &WeightVec {
        &self.highest
    }

    pub fn mult(&self, w: &WeightVec) -> u64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn mults(&self) -> &BTreeMap<WeightVec, u64> {
        &self.mults
    }

    pub fn num_weights(&self) -> usize {
        self.mults.len()
    }

    pub fn dimension(&self) -> u64 {
        self.mults.values().sum()
    }

    /// Height of `μ − λ` in the simple-root basis.
    pub fn depth(&self, w: &WeightVec) -> Option<i64> {
        self.depth.get(w).copied()
    }

    /// Entries sorted by height descending (depth ascending), ties by
    /// descending lexicographic order of the coordinates.
    pub fn entries(&self) -> Vec<WeightEntry> {
        let mut v: Vec<_> = self.mults.iter().collect();
        v.sort_by(|(a, _), (b, _)| self.depth[*a].cmp(&self.depth[*b]).then_with(|| b.cmp(a)));
        v.into_iter()
            .map(|(w, m)| WeightEntry {
                weight: w.clone(),
                mult: *m,
            })
            .collect()
    }

    /// Whether every simple reflection permutes the multiplicity map.
    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        (0..rs.rank()).all(|i| {
            self.mults
                .iter()
                .all(|(w, m)| self.mult(&rs.reflect_weight(w, i)) == *m)
        })
    }
}

fn check_rank(rs: &RootSystem, w: &WeightVec) -> Result<(), WeightsError> {
    if w.0.len() != rs.rank() {
        return Err(WeightsError::DimensionMismatch {
            got: w.0.len(),
            expected: rs.rank(),
        });
    }
    Ok(())
}

/// Orbit of `λ` under the Weyl group, generated by simple reflections.
pub fn weyl_orbit(rs: &RootSystem, lambda: &WeightVec) -> BTreeSet<WeightVec> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lambda.clone());
    queue.push_back(lambda.clone());
    while let Some(w) = queue.pop_front() {
        for i in 0..rs.rank() {
            let img = rs.reflect_weight(&w, i);
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    seen
}

/// The unique dominant weight in the Weyl orbit of `w`.
pub fn dominant_conjugate(rs: &RootSystem, w: &WeightVec) -> WeightVec {
    let mut w = w.clone();
    while let Some(i) = w.0.iter().position(|&c| c < 0) {
        w = rs.reflect_weight(&w, i);
    }
    w
}

/// Weights of `V_μ` (without multiplicities), found by descending along
/// simple-root strings from μ.
fn weight_support(rs: &RootSystem, mu: &WeightVec) -> BTreeMap<WeightVec, i64> {
    let alphas: Vec<WeightVec> = (0..rs.rank()).map(|i| rs.simple_root_weight(i)).collect();
    let mut depth = BTreeMap::new();
    let mut queue = VecDeque::new();
    depth.insert(mu.clone(), 0i64);
    queue.push_back(mu.clone());
    while let Some(w) = queue.pop_front() {
        let dw = depth[&w];
        for (i, alpha) in alphas.iter().enumerate() {
            let top = w.0[i];
            let mut cur = w.clone();
            for k in 1..=top {
                cur = cur.sub(alpha);
                if !depth.contains_key(&cur) {
                    depth.insert(cur.clone(), dw + k);
                    queue.push_back(cur.clone());
                }
            }
        }
    }
    depth
}

/// Freudenthal multiplicities for the irreducible module of highest weight `mu`.
pub fn weight_multiplicities(
    rs: &RootSystem,
    mu: &WeightVec,
) -> Result<WeightDiagram, WeightsError> {
    check_rank(rs, mu)?;
    if !mu.is_dominant() {
        return Err(WeightsError::NotDominant(mu.clone()));
    }
    let depth = weight_support(rs, mu);

    let mut dominant: Vec<&WeightVec> = depth.keys().filter(|w| w.is_dominant()).collect();
    dominant.sort_by(|a, b| depth[*a].cmp(&depth[*b]).then_with(|| b.cmp(a)));

    let rho = rs.rho();
    let mu_rho = mu.add(&rho);
    let norm_top = rs.form_weight_weight_scaled(&mu_rho, &mu_rho);
    let det = rs.det_cartan();
    let pos_weights: Vec<_> = rs
        .positive_roots()
        .iter()
        .map(|beta| (beta, rs.root_to_weight(beta)))
        .collect();

    // memo keyed by dominant representatives
    let mut dom_mult: HashMap<WeightVec, u64> = HashMap::new();
    for lambda in dominant {
        if lambda == mu {
            dom_mult.insert(lambda.clone(), 1);
            continue;
        }
        let mut sum: i128 = 0;
        for (beta, beta_w) in &pos_weights {
            let mut shifted = lambda.add(beta_w);
            while depth.contains_key(&shifted) {
                let rep = dominant_conjugate(rs, &shifted);
                let m = *dom_mult
                    .get(&rep)
                    .expect("higher dominant weights are processed first");
                sum += m as i128 * rs.form_weight_root(&shifted, beta) as i128;
                shifted = shifted.add(beta_w);
            }
        }
        let lam_rho = lambda.add(&rho);
        let gap = (norm_top - rs.form_weight_weight_scaled(&lam_rho, &lam_rho)) as i128;
        let num = 2 * det as i128 * sum;
        assert!(gap > 0 && num % gap == 0, "Freudenthal step must be exact");
        dom_mult.insert(lambda.clone(), (num / gap) as u64);
    }

    let mut mults = BTreeMap::new();
    let mut kept_depth = BTreeMap::new();
    for (w, d) in depth {
        let m = dom_mult[&dominant_conjugate(rs, &w)];
        if m > 0 {
            mults.insert(w.clone(), m);
            kept_depth.insert(w, d);
        }
    }
    Ok(WeightDiagram {
        highest: mu.clone(),
        mults,
        depth: kept_depth,
    })
}

/// Weyl dimension formula `∏_{β>0} (μ+ρ, β) / (ρ, β)`.
pub fn weyl_dim(rs: &RootSystem, mu: &WeightVec) -> Result<u64, WeightsError> {
    check_rank(rs, mu)?;
    if !mu.is_dominant() {
        return Err(WeightsError::NotDominant(mu.clone()));
    }
    let rho = rs.rho();
    let mu_rho = mu.add(&rho);
    let mut acc = BigRational::one();
    for beta in rs.positive_roots() {
        acc *= BigRational::new(
            BigInt::from(rs.form_weight_root(&mu_rho, beta)),
            BigInt::from(rs.form_weight_root(&rho, beta)),
        );
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
        .to_u64()
        .ok_or_else(|| WeightsError::Overflow(mu.clone()))
}

/// Read-only memo of weight diagrams shared between threads.
#[derive(Debug, Default)]
pub struct DiagramCache {
    inner: RwLock<HashMap<(CartanType, WeightVec), Arc<WeightDiagram>>>,
}

impl DiagramCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(
        &self,
        rs: &RootSystem,
        mu: &WeightVec,
    ) -> Result<Arc<WeightDiagram>, WeightsError> {
        let key = (rs.cartan_type(), mu.clone());
        if let Some(d) = self.inner.read().expect("cache lock poisoned").get(&key) {
            return Ok(Arc::clone(d));
        }
        let diagram = Arc::new(weight_multiplicities(rs, mu)?);
        let mut guard = self.inner.write().expect("cache lock poisoned");
        Ok(Arc::clone(guard.entry(key).or_insert(diagram)))
    }

    pub fn len(&self) -> usize {
        self.inner.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Series;

    fn rs(s: Series, r: usize) -> RootSystem {
        RootSystem::new(s, r).unwrap()
    }

    fn w(v: &[i64]) -> WeightVec {
        WeightVec(v.to_vec())
    }

    #[test]
    fn orbit_examples() {
        let a1 = rs(Series::A, 1);
        let orbit = weyl_orbit(&a1, &w(&[1]));
        assert_eq!(
            orbit.into_iter().collect::<Vec<_>>(),
            vec![w(&[-1]), w(&[1])]
        );
        assert_eq!(weyl_orbit(&rs(Series::A, 2), &w(&[1, 0])).len(), 3);
        let b2_orbit = weyl_orbit(&rs(Series::B, 2), &w(&[1, 0]));
        assert_eq!(b2_orbit.len(), 4);
        assert!(!b2_orbit.contains(&w(&[0, 0])));
    }

    #[test]
    fn a2_adjoint() {
        let a2 = rs(Series::A, 2);
        let diag = weight_multiplicities(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(diag.mult(&w(&[0, 0])), 2);
        assert_eq!(diag.dimension(), 8);
        assert_eq!(weyl_dim(&a2, &w(&[1, 1])).unwrap(), 8);
    }

    #[test]
    fn b2_vector() {
        let b2 = rs(Series::B, 2);
        let diag = weight_multiplicities(&b2, &w(&[1, 0])).unwrap();
        assert_eq!(diag.num_weights(), 5);
        assert!(diag.mults().values().all(|&m| m == 1));
        assert_eq!(diag.mult(&w(&[0, 0])), 1);
    }

    #[test]
    fn trivial_module() {
        for t in CartanType::all_up_to(5) {
            let rs = crate::rootdata::build_root_system(t);
            let zero = WeightVec::zero(rs.rank());
            let diag = weight_multiplicities(&rs, &zero).unwrap();
            assert_eq!(diag.num_weights(), 1);
            assert_eq!(diag.mult(&zero), 1);
            assert_eq!(weyl_dim(&rs, &zero).unwrap(), 1);
        }
    }

    #[test]
    fn weyl_dim_examples() {
        for n in 1..=8 {
            assert_eq!(
                weyl_dim(&rs(Series::A, n), &WeightVec::fundamental(n, 0)).unwrap(),
                n as u64 + 1
            );
        }
        assert_eq!(
            weyl_dim(&rs(Series::E, 6), &WeightVec::fundamental(6, 0)).unwrap(),
            27
        );
        assert_eq!(weyl_dim(&rs(Series::B, 2), &w(&[1, 0])).unwrap(), 5);
        assert_eq!(
            weyl_dim(&rs(Series::E, 7), &WeightVec::fundamental(7, 6)).unwrap(),
            56
        );
        assert_eq!(
            weyl_dim(&rs(Series::E, 8), &WeightVec::fundamental(8, 7)).unwrap(),
            248
        );
        assert_eq!(
            weyl_dim(&rs(Series::E, 8), &WeightVec::fundamental(8, 0)).unwrap(),
            3875
        );
        assert_eq!(weyl_dim(&rs(Series::G, 2), &w(&[1, 0])).unwrap(), 7);
    }

    #[test]
    fn non_dominant_rejected() {
        let a2 = rs(Series::A, 2);
        assert_eq!(
            weight_multiplicities(&a2, &w(&[1, -1])),
            Err(WeightsError::NotDominant(w(&[1, -1])))
        );
        assert!(weyl_dim(&a2, &w(&[-1, 0])).is_err());
        assert!(weyl_dim(&a2, &w(&[1])).is_err());
    }

    #[test]
    fn g2_short_and_long() {
        let g2 = rs(Series::G, 2);
        // 7-dim: six short roots plus zero weight
        let d7 = weight_multiplicities(&g2, &w(&[1, 0])).unwrap();
        assert_eq!(d7.dimension(), 7);
        assert_eq!(d7.mult(&w(&[0, 0])), 1);
        // adjoint: zero weight has multiplicity rank
        let adj = weight_multiplicities(&g2, &w(&[0, 1])).unwrap();
        assert_eq!(adj.dimension(), 14);
        assert_eq!(adj.mult(&w(&[0, 0])), 2);
        assert!(adj.is_weyl_invariant(&g2));
    }

    #[test]
    fn entries_start_at_highest() {
        let diag = weight_multiplicities(&rs(Series::A, 3), &w(&[0, 1, 0])).unwrap();
        let e = diag.entries();
        assert_eq!(e[0].weight, w(&[0, 1, 0]));
        assert_eq!(e.len(), 6);
        let depths: Vec<i64> = e.iter().map(|x| diag.depth(&x.weight).unwrap()).collect();
        assert!(depths.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn cache_reuses_diagrams() {
        let cache = DiagramCache::new();
        let a3 = rs(Series::A, 3);
        let x = cache.get_or_compute(&a3, &w(&[1, 0, 0])).unwrap();
        let y = cache.get_or_compute(&a3, &w(&[1, 0, 0])).unwrap();
        assert!(Arc::ptr_eq(&x, &y));
        assert_eq!(cache.len(), 1);
    }
}
