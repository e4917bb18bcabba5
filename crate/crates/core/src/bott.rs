//! Bott's algorithm for cohomology of irreducible homogeneous bundles
//! Sigma_mu Q (x) Sigma_lambda S on the Grassmannian G(r,n).
//!
//! Convention: the bundle maps to the sequence c = (mu, lambda) in Z^n,
//! rho = (n-1, ..., 0). If c + rho has a repeated entry the cohomology
//! vanishes; otherwise it is concentrated in the single degree given by
//! the number of inversions needed to sort c + rho strictly descending,
//! with highest weight sort(c + rho) - rho. The convention is pinned by
//! two calibration anchors: H^1 of Q^* (x) S on G(2,4) is one-dimensional,
//! and h^0(O(1)) = C(n,r).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::schur::GLWeight;

/// The Grassmannian G(r,n) of r-dimensional subspaces of an n-dimensional
/// space, under the standing assumption 2r <= n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct GrassmannData {
    r: u32,
    n: u32,
}

impl GrassmannData {
    pub fn new(r: u32, n: u32) -> Result<Self> {
        if r < 1 || 2 * r > n {
            return Err(Error::Domain(format!(
                "G({},{}) requires 1 <= r and 2r <= n",
                r, n
            )));
        }
        Ok(GrassmannData { r, n })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> u32 {
        self.r * (self.n - self.r)
    }

    /// Rank of the tautological subbundle S.
    pub fn sub_rank(&self) -> usize {
        self.r as usize
    }

    /// Rank of the quotient bundle Q.
    pub fn quot_rank(&self) -> usize {
        (self.n - self.r) as usize
    }
}

/// An irreducible homogeneous bundle Sigma_mu Q (x) Sigma_lambda S.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HomogBundle {
    mu: GLWeight,
    lambda: GLWeight,
}

impl HomogBundle {
    pub fn new(g: GrassmannData, mu: GLWeight, lambda: GLWeight) -> Result<Self> {
        if mu.len() != g.quot_rank() {
            return Err(Error::LengthMismatch {
                left: mu.len(),
                right: g.quot_rank(),
            });
        }
        if lambda.len() != g.sub_rank() {
            return Err(Error::LengthMismatch {
                left: lambda.len(),
                right: g.sub_rank(),
            });
        }
        Ok(HomogBundle { mu, lambda })
    }

    /// The line bundle O(j) = (det Q)^j.
    pub fn line(g: GrassmannData, j: i64) -> Self {
        HomogBundle {
            mu: GLWeight::det_power(j, g.quot_rank()),
            lambda: GLWeight::zero(g.sub_rank()),
        }
    }

    pub fn structure_sheaf(g: GrassmannData) -> Self {
        HomogBundle::line(g, 0)
    }

    pub fn mu(&self) -> &GLWeight {
        &self.mu
    }

    pub fn lambda(&self) -> &GLWeight {
        &self.lambda
    }

    pub fn rank(&self) -> u64 {
        self.mu.weyl_dim() * self.lambda.weyl_dim()
    }

    pub fn dual(&self) -> HomogBundle {
        HomogBundle {
            mu: self.mu.dual(),
            lambda: self.lambda.dual(),
        }
    }

    /// Tensor with O(j): since O(1) = det Q, this adds j to every mu entry.
    pub fn twist(&self, j: i64) -> HomogBundle {
        HomogBundle {
            mu: self.mu.twist(j),
            lambda: self.lambda.clone(),
        }
    }
}

impl std::fmt::Display for HomogBundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q[{}] S[{}]", self.mu, self.lambda)
    }
}

/// Output of Bott's algorithm: zero, or a single irreducible GL(V)
/// representation in a single cohomological degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CohomologyResult {
    Zero,
    NonZero {
        degree: u32,
        rep: GLWeight,
        dim: u64,
    },
}

impl CohomologyResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, CohomologyResult::Zero)
    }
}

pub fn bott_cohomology(g: GrassmannData, b: &HomogBundle) -> CohomologyResult {
    let n = g.n() as usize;
    let mut v: Vec<i64> = Vec::with_capacity(n);
    v.extend_from_slice(b.mu().entries());
    v.extend_from_slice(b.lambda().entries());
    debug_assert_eq!(v.len(), n);
    // add rho = (n-1, ..., 0)
    for (i, e) in v.iter_mut().enumerate() {
        *e += (n - 1 - i) as i64;
    }
    let mut sorted = v.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return CohomologyResult::Zero;
    }
    // inversion count relative to strictly descending order
    let mut inversions = 0u32;
    for i in 0..n {
        for j in (i + 1)..n {
            if v[i] < v[j] {
                inversions += 1;
            }
        }
    }
    for (i, e) in sorted.iter_mut().enumerate() {
        *e -= (n - 1 - i) as i64;
    }
    let rep = GLWeight::new(sorted).expect("sorted weight is dominant");
    let dim = rep.weyl_dim();
    CohomologyResult::NonZero {
        degree: inversions,
        rep,
        dim,
    }
}

/// Euler characteristic: 0 for vanishing cohomology, else
/// (-1)^degree * dim.
pub fn euler_char(g: GrassmannData, b: &HomogBundle) -> i64 {
    match bott_cohomology(g, b) {
        CohomologyResult::Zero => 0,
        CohomologyResult::NonZero { degree, dim, .. } => {
            let d = dim as i64;
            if degree % 2 == 0 {
                d
            } else {
                -d
            }
        }
    }
}

/// Termwise Bott on a sum of bundles, aggregated per degree. Absent
/// entries mean zero.
pub fn cohomology_of_sum(
    g: GrassmannData,
    terms: &[(HomogBundle, u64)],
) -> BTreeMap<u32, u64> {
    let mut table = BTreeMap::new();
    for (b, mult) in terms {
        if let CohomologyResult::NonZero { degree, dim, .. } = bott_cohomology(g, b) {
            *table.entry(degree).or_insert(0) += mult * dim;
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn w(entries: &[i64]) -> GLWeight {
        GLWeight::new(entries.to_vec()).unwrap()
    }

    fn g24() -> GrassmannData {
        GrassmannData::new(2, 4).unwrap()
    }

    #[test]
    fn anchor_ext1_q_s() {
        // Q^* (x) S on G(2,4): single class in degree 1
        let b = HomogBundle::new(g24(), w(&[0, -1]), w(&[1, 0])).unwrap();
        match bott_cohomology(g24(), &b) {
            CohomologyResult::NonZero { degree, rep, dim } => {
                assert_eq!(degree, 1);
                assert_eq!(rep, w(&[0, 0, 0, 0]));
                assert_eq!(dim, 1);
            }
            _ => panic!("expected nonzero cohomology"),
        }
    }

    #[test]
    fn anchor_pluecker_o1() {
        let b = HomogBundle::line(g24(), 1);
        match bott_cohomology(g24(), &b) {
            CohomologyResult::NonZero { degree, rep, dim } => {
                assert_eq!(degree, 0);
                assert_eq!(rep, w(&[1, 1, 0, 0]));
                assert_eq!(dim, 6);
            }
            _ => panic!("expected nonzero cohomology"),
        }
    }

    #[test]
    fn p1_o_minus_1_vanishes() {
        let g = GrassmannData::new(1, 2).unwrap();
        let b = HomogBundle::new(g, w(&[-1]), w(&[0])).unwrap();
        assert!(bott_cohomology(g, &b).is_zero());
    }

    #[test]
    fn structure_sheaf_is_trivial() {
        let b = HomogBundle::structure_sheaf(g24());
        match bott_cohomology(g24(), &b) {
            CohomologyResult::NonZero { degree, dim, .. } => {
                assert_eq!(degree, 0);
                assert_eq!(dim, 1);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(euler_char(g24(), &HomogBundle::line(g24(), 1)), 6);
        assert_eq!(euler_char(g24(), &HomogBundle::line(g24(), 2)), 20);
        let qs = HomogBundle::new(g24(), w(&[0, -1]), w(&[1, 0])).unwrap();
        assert_eq!(euler_char(g24(), &qs), -1);
    }

    #[test]
    fn sum_table_examples() {
        let g = g24();
        assert_eq!(
            cohomology_of_sum(g, &[(HomogBundle::structure_sheaf(g), 1)]),
            BTreeMap::from([(0, 1)])
        );
        let qs = HomogBundle::new(g, w(&[0, -1]), w(&[1, 0])).unwrap();
        let table = cohomology_of_sum(g, &[(qs, 1), (HomogBundle::line(g, 1), 1)]);
        assert_eq!(table, BTreeMap::from([(0, 6), (1, 1)]));
        assert!(cohomology_of_sum(g, &[]).is_empty());
    }

    #[test]
    fn rejects_bad_grassmannian() {
        assert!(GrassmannData::new(3, 5).is_err());
        assert!(GrassmannData::new(0, 2).is_err());
        assert!(GrassmannData::new(3, 6).is_ok());
    }

    fn random_bundle(rng: &mut StdRng, g: GrassmannData) -> HomogBundle {
        let mut mk = |m: usize| {
            let mut v: Vec<i64> = (0..m).map(|_| rng.gen_range(-4..=4)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            GLWeight::new(v).unwrap()
        };
        let mu = mk(g.quot_rank());
        let lambda = mk(g.sub_rank());
        HomogBundle::new(g, mu, lambda).unwrap()
    }

    #[test]
    fn serre_duality_randomized() {
        // K_G = O(-n); duality pairs degree p with dim(G) - p at equal dim.
        let mut rng = StdRng::seed_from_u64(42);
        for (r, n) in [(1u32, 3u32), (2, 4), (2, 5)] {
            let g = GrassmannData::new(r, n).unwrap();
            for _ in 0..150 {
                let b = random_bundle(&mut rng, g);
                let serre = b.dual().twist(-(n as i64));
                let lhs = bott_cohomology(g, &b);
                let rhs = bott_cohomology(g, &serre);
                match (lhs, rhs) {
                    (CohomologyResult::Zero, CohomologyResult::Zero) => {}
                    (
                        CohomologyResult::NonZero {
                            degree: p, dim: d, ..
                        },
                        CohomologyResult::NonZero {
                            degree: q, dim: e, ..
                        },
                    ) => {
                        assert_eq!(p + q, g.dim(), "bundle {}", b);
                        assert_eq!(d, e, "bundle {}", b);
                    }
                    _ => panic!("duality mismatch for {}", b),
                }
            }
        }
    }

    #[test]
    fn projective_space_specialization() {
        // On G(1, m+1) = P^m: h^0(O(k)) = C(m+k, k) for k >= 0,
        // h^m(O(k)) = C(-k-1, m) for k <= -m-1, zero in between.
        for m in 1..=5u32 {
            let g = GrassmannData::new(1, m + 1).unwrap();
            for k in -(2 * m as i64 + 2)..=(2 * m as i64 + 2) {
                let b = HomogBundle::line(g, k);
                let res = bott_cohomology(g, &b);
                if k >= 0 {
                    match res {
                        CohomologyResult::NonZero { degree, dim, .. } => {
                            assert_eq!(degree, 0);
                            assert_eq!(dim, crate::schur::binomial((m as i64 + k) as u64, k as u64));
                        }
                        _ => panic!("expected H^0 for O({}) on P^{}", k, m),
                    }
                } else if k >= -(m as i64) {
                    assert!(res.is_zero(), "O({}) on P^{} should vanish", k, m);
                } else {
                    match res {
                        CohomologyResult::NonZero { degree, dim, .. } => {
                            assert_eq!(degree, m);
                            assert_eq!(dim, crate::schur::binomial((-k - 1) as u64, m as u64));
                        }
                        _ => panic!("expected H^{} for O({}) on P^{}", m, k, m),
                    }
                }
            }
        }
    }
}
