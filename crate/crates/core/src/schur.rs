//! Partition and GL-weight combinatorics: Littlewood-Richardson products,
//! Cauchy decompositions, duals, and the Weyl dimension formula.
//!
//! Everything here is exact integer arithmetic; no floating point.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// A partition: weakly decreasing non-negative integers with trailing
/// zeros stripped in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidWeight(format!("{:?}", parts)));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part at `i`, zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Conjugate (transposed Young diagram).
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// All partitions of `k` with at most `max_len` rows, in lexicographically
/// descending order.
pub fn partitions_of(k: u32, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(remaining: u32, max_part: u32, rows_left: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            // remaining - p must be packable into rows_left - 1 rows of height <= p
            if remaining - p <= p * (rows_left as u32 - 1) {
                current.push(p);
                go(remaining - p, p, rows_left - 1, current, out);
                current.pop();
            }
        }
    }
    if k == 0 {
        out.push(Partition::empty());
    } else if max_len > 0 {
        go(k, k, max_len, &mut current, &mut out);
    }
    out
}

/// A GL(m)-weight: weakly decreasing integers of fixed length m.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GLWeight {
    entries: Vec<i64>,
}

impl GLWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if !entries.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidWeight(format!("{:?}", entries)));
        }
        Ok(GLWeight { entries })
    }

    pub fn zero(m: usize) -> Self {
        GLWeight { entries: vec![0; m] }
    }

    /// c * (1, ..., 1), a determinant power.
    pub fn det_power(c: i64, m: usize) -> Self {
        GLWeight { entries: vec![c; m] }
    }

    pub fn from_partition(p: &Partition, m: usize) -> Result<Self> {
        if p.len() > m {
            return Err(Error::Domain(format!(
                "partition {} has more than {} rows",
                p, m
            )));
        }
        Ok(GLWeight {
            entries: (0..m).map(|i| p.part(i) as i64).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Dual weight (-v_m, ..., -v_1); an involution.
    pub fn dual(&self) -> GLWeight {
        GLWeight {
            entries: self.entries.iter().rev().map(|e| -e).collect(),
        }
    }

    /// Add `j` to every entry (tensor with the j-th determinant power).
    pub fn twist(&self, j: i64) -> GLWeight {
        GLWeight {
            entries: self.entries.iter().map(|e| e + j).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// All entries equal (a determinant power); returns the common value.
    pub fn as_det_power(&self) -> Option<i64> {
        match self.entries.first() {
            None => Some(0),
            Some(&c) if self.entries.iter().all(|&e| e == c) => Some(c),
            _ => None,
        }
    }

    /// Weyl dimension formula: prod_{i<j} (v_i - v_j + j - i) / (j - i).
    pub fn weyl_dim(&self) -> u64 {
        let m = self.entries.len();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..m {
            for j in (i + 1)..m {
                num *= BigInt::from(self.entries[i] - self.entries[j] + (j - i) as i64);
                den *= BigInt::from((j - i) as i64);
            }
        }
        (num / den).to_u64().expect("weyl_dim exceeds u64")
    }

    /// Parse comma-separated integers, whitespace tolerated.
    pub fn parse(s: &str) -> Result<Self> {
        let entries: Result<Vec<i64>> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight entry {:?}", t)))
            })
            .collect();
        GLWeight::new(entries?)
    }
}

impl fmt::Display for GLWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// A finite multiset of irreducible GL-representations with positive
/// multiplicities. Terms iterate in lexicographically descending weight
/// order so outputs are byte-stable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IrrepSum {
    terms: BTreeMap<GLWeight, u64>,
}

impl IrrepSum {
    pub fn new() -> Self {
        IrrepSum::default()
    }

    pub fn single(weight: GLWeight) -> Self {
        let mut s = IrrepSum::new();
        s.add(weight, 1);
        s
    }

    pub fn add(&mut self, weight: GLWeight, mult: u64) {
        if mult > 0 {
            *self.terms.entry(weight).or_insert(0) += mult;
        }
    }

    /// Terms in descending weight order.
    pub fn terms(&self) -> impl Iterator<Item = (&GLWeight, u64)> {
        self.terms.iter().rev().map(|(w, &m)| (w, m))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn multiplicity(&self, w: &GLWeight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.terms.iter().map(|(w, m)| m * w.weyl_dim()).sum()
    }
}

impl fmt::Display for IrrepSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, m) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "({})", w)?;
            } else {
                write!(f, "{}*({})", m, w)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Littlewood-Richardson decomposition of a tensor product of two GL(m)
/// irreducibles. Negative entries are handled by a uniform determinant
/// shift; LR coefficients are shift-invariant.
pub fn lr_tensor(lambda: &GLWeight, mu: &GLWeight) -> Result<IrrepSum> {
    if lambda.len() != mu.len() {
        return Err(Error::LengthMismatch {
            left: lambda.len(),
            right: mu.len(),
        });
    }
    let m = lambda.len();
    if m == 0 {
        return Ok(IrrepSum::single(GLWeight::zero(0)));
    }
    let c1 = -lambda.entries()[m - 1].min(0);
    let c2 = -mu.entries()[m - 1].min(0);
    let pa = to_partition(&lambda.twist(c1));
    let pb = to_partition(&mu.twist(c2));

    let mut out = IrrepSum::new();
    for nu in candidate_shapes(&pa, &pb, m) {
        let c = lr_coefficient(&pa, &pb, &nu);
        if c > 0 {
            let w = GLWeight::from_partition(&nu, m)?.twist(-(c1 + c2));
            out.add(w, c);
        }
    }
    Ok(out)
}

fn to_partition(w: &GLWeight) -> Partition {
    Partition::new(w.entries().iter().map(|&e| e as u32).collect())
        .expect("shifted weight is a partition")
}

/// Partitions nu with at most `max_len` rows, containing `lambda`,
/// with |nu| = |lambda| + |mu| and nu_i <= lambda_i + mu_1.
fn candidate_shapes(lambda: &Partition, mu: &Partition, max_len: usize) -> Vec<Partition> {
    let total = lambda.size() + mu.size();
    let mut out = Vec::new();
    let mut rows: Vec<u32> = Vec::new();
    fn go(
        i: usize,
        max_len: usize,
        remaining: u32,
        lambda: &Partition,
        mu1: u32,
        rows: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == max_len {
            if remaining == 0 {
                out.push(Partition::new(rows.clone()).unwrap());
            }
            return;
        }
        // minimum the remaining rows must absorb
        let min_rest: u32 = (i + 1..max_len).map(|k| lambda.part(k)).sum();
        let prev = if i == 0 { u32::MAX } else { rows[i - 1] };
        let lo = lambda.part(i);
        let hi = (lambda.part(i) + mu1).min(prev).min(remaining.saturating_sub(min_rest));
        for v in lo..=hi {
            rows.push(v);
            go(i + 1, max_len, remaining - v, lambda, mu1, rows, out);
            rows.pop();
        }
    }
    go(0, max_len, total, lambda, mu.part(0), &mut rows, &mut out);
    out
}

/// The Littlewood-Richardson coefficient c^nu_{lambda,mu}: the number of
/// LR skew tableaux of shape nu/lambda and content mu (semistandard,
/// reverse reading word a ballot sequence).
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    // Cells of nu/lambda in reverse reading order: rows top to bottom,
    // within a row right to left.
    let mut cells = Vec::new();
    for r in 0..nu.len() {
        for c in (lambda.part(r)..nu.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let labels = mu.len();
    let mut counts = vec![0u32; labels];
    // grid[r] holds labels for row r, indexed by absolute column
    let mut grid: Vec<Vec<u32>> = (0..nu.len()).map(|r| vec![0; nu.part(r) as usize]).collect();

    fn fill(
        idx: usize,
        cells: &[(usize, u32)],
        mu: &Partition,
        lambda: &Partition,
        counts: &mut Vec<u32>,
        grid: &mut Vec<Vec<u32>>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for t in 1..=counts.len() as u32 {
            if counts[t as usize - 1] >= mu.part(t as usize - 1) {
                continue;
            }
            // ballot: after placing t, #t must not exceed #(t-1)
            if t > 1 && counts[t as usize - 1] + 1 > counts[t as usize - 2] {
                continue;
            }
            // rows weakly increase left to right: entry <= right neighbor
            if (c + 1) < grid[r].len() as u32 && c + 1 >= lambda.part(r) {
                if t > grid[r][c as usize + 1] {
                    continue;
                }
            }
            // columns strictly increase: entry > entry above (skew cells only)
            if r > 0 && c >= lambda.part(r - 1) && c < grid[r - 1].len() as u32 {
                if t <= grid[r - 1][c as usize] {
                    continue;
                }
            }
            counts[t as usize - 1] += 1;
            grid[r][c as usize] = t;
            total += fill(idx + 1, cells, mu, lambda, counts, grid);
            counts[t as usize - 1] -= 1;
            grid[r][c as usize] = 0;
        }
        total
    }

    fill(0, &cells, mu, lambda, &mut counts, &mut grid)
}

/// Cauchy decomposition of Sym^k(A (x) B) for vector spaces of the given
/// ranks: the pairs (kappa, kappa) over partitions kappa of k with at most
/// min(rank_a, rank_b) rows.
pub fn cauchy_sym(k: u32, rank_a: u32, rank_b: u32) -> Vec<(Partition, Partition)> {
    partitions_of(k, rank_a.min(rank_b) as usize)
        .into_iter()
        .map(|p| (p.clone(), p))
        .collect()
}

/// Cauchy decomposition of Wedge^k(A (x) B): pairs (kappa, kappa') with
/// kappa of k fitting in a rank_a x rank_b box.
pub fn cauchy_wedge(k: u32, rank_a: u32, rank_b: u32) -> Vec<(Partition, Partition)> {
    partitions_of(k, rank_a as usize)
        .into_iter()
        .filter(|p| p.part(0) <= rank_b)
        .map(|p| {
            let c = p.conjugate();
            (p, c)
        })
        .collect()
}

/// Binomial coefficient with exact arithmetic.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    (num / den).to_u64().expect("binomial exceeds u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn w(entries: &[i64]) -> GLWeight {
        GLWeight::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn pieri_box_times_box() {
        let s = lr_tensor(&w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(s.multiplicity(&w(&[2, 0])), 1);
        assert_eq!(s.multiplicity(&w(&[1, 1])), 1);
        assert_eq!(s.num_terms(), 2);
    }

    #[test]
    fn pieri_two_times_box() {
        let s = lr_tensor(&w(&[2, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(s.multiplicity(&w(&[3, 0])), 1);
        assert_eq!(s.multiplicity(&w(&[2, 1])), 1);
        assert_eq!(s.num_terms(), 2);
    }

    #[test]
    fn lr_21_squared() {
        let s = lr_tensor(&w(&[2, 1]), &w(&[2, 1])).unwrap();
        assert_eq!(s.multiplicity(&w(&[4, 2])), 1);
        assert_eq!(s.multiplicity(&w(&[3, 3])), 1);
        assert_eq!(s.num_terms(), 2);
        // dimension bookkeeping: 2*2 = 3+1
        assert_eq!(w(&[2, 1]).weyl_dim(), 2);
        assert_eq!(s.total_dim(), 4);
    }

    #[test]
    fn lr_trivial_identity() {
        let lam = w(&[3, 1, -2]);
        let s = lr_tensor(&lam, &GLWeight::zero(3)).unwrap();
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s.multiplicity(&lam), 1);
    }

    #[test]
    fn lr_length_mismatch() {
        assert!(matches!(
            lr_tensor(&w(&[1, 0]), &w(&[1, 0, 0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn weyl_dim_examples() {
        assert_eq!(w(&[0, 0, 0, 0]).weyl_dim(), 1);
        assert_eq!(w(&[1, 1, 0, 0]).weyl_dim(), 6);
        assert_eq!(w(&[1, 0, 0, -1]).weyl_dim(), 15);
    }

    #[test]
    fn weyl_dim_rejects_non_monotone() {
        assert!(GLWeight::new(vec![0, 1]).is_err());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(w(&[0, 0]).dual(), w(&[0, 0]));
        assert_eq!(w(&[1, 0]).dual(), w(&[0, -1]));
        assert_eq!(w(&[2, 1, 0]).dual(), w(&[0, -1, -2]));
    }

    #[test]
    fn cauchy_examples() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(cauchy_sym(1, 2, 2), vec![(p(&[1]), p(&[1]))]);
        let k2 = cauchy_sym(2, 2, 3);
        assert_eq!(k2, vec![(p(&[2]), p(&[2])), (p(&[1, 1]), p(&[1, 1]))]);
        let k3 = cauchy_sym(3, 2, 4);
        assert_eq!(k3, vec![(p(&[3]), p(&[3])), (p(&[2, 1]), p(&[2, 1]))]);
    }

    #[test]
    fn cauchy_dimension_identity() {
        // sum over kappa of dim_a(kappa) * dim_b(kappa) = C(ab + k - 1, k)
        for ra in 1..=4u32 {
            for rb in 1..=4u32 {
                for k in 0..=6u32 {
                    let total: u64 = cauchy_sym(k, ra, rb)
                        .iter()
                        .filter(|(a, b)| a.len() <= ra as usize && b.len() <= rb as usize)
                        .map(|(a, b)| {
                            GLWeight::from_partition(a, ra as usize).unwrap().weyl_dim()
                                * GLWeight::from_partition(b, rb as usize).unwrap().weyl_dim()
                        })
                        .sum();
                    let expected = binomial((ra * rb + k) as u64 - 1, k as u64);
                    assert_eq!(total, expected, "ra={} rb={} k={}", ra, rb, k);
                }
            }
        }
    }

    fn random_weight(rng: &mut StdRng, m: usize) -> GLWeight {
        let mut v: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        GLWeight::new(v).unwrap()
    }

    #[test]
    fn lr_dimension_product_randomized() {
        let mut rng = StdRng::seed_from_u64(20260823);
        for _ in 0..200 {
            let m = rng.gen_range(1..=4);
            let a = random_weight(&mut rng, m);
            let b = random_weight(&mut rng, m);
            let s = lr_tensor(&a, &b).unwrap();
            assert_eq!(
                s.total_dim(),
                a.weyl_dim() * b.weyl_dim(),
                "a={} b={}",
                a,
                b
            );
            // commutativity up to multiset equality
            let t = lr_tensor(&b, &a).unwrap();
            assert_eq!(s, t);
        }
    }

    #[test]
    fn weyl_dim_dual_invariant() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(1..=5);
            let a = random_weight(&mut rng, m);
            assert_eq!(a.weyl_dim(), a.dual().weyl_dim());
            assert_eq!(a.dual().dual(), a);
        }
    }

    #[test]
    fn conjugate_involution() {
        let p = Partition::new(vec![4, 2, 1]).unwrap();
        assert_eq!(p.conjugate().conjugate(), p);
        assert_eq!(p.conjugate().parts(), &[3, 2, 1, 1]);
    }

    #[test]
    fn parse_and_display() {
        let v = GLWeight::parse(" 2, 1 , 0").unwrap();
        assert_eq!(v, w(&[2, 1, 0]));
        assert_eq!(v.to_string(), "2,1,0");
        assert!(GLWeight::parse("1,2").is_err());
    }

    proptest::proptest! {
        #[test]
        fn prop_conjugate_involution(parts in proptest::collection::vec(0u32..12, 0..8)) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let p = Partition::new(parts).unwrap();
            proptest::prop_assert_eq!(p.conjugate().conjugate(), p.clone());
            proptest::prop_assert_eq!(p.conjugate().size(), p.size());
        }

        #[test]
        fn prop_weight_display_roundtrip(entries in proptest::collection::vec(-9i64..9, 1..6)) {
            let mut entries = entries;
            entries.sort_unstable_by(|a, b| b.cmp(a));
            let v = GLWeight::new(entries).unwrap();
            proptest::prop_assert_eq!(GLWeight::parse(&v.to_string()).unwrap(), v);
        }
    }
}
