//! Graded cohomology/Ext on the total spaces of the cotangent bundle and
//! its one-dimensional extension over G(r,n), via pushforward to the base
//! and Sym-algebra grading, plus the Euler Gram matrix of the spanning
//! generator set.
//!
//! Ext groups on these non-compact spaces are infinite-dimensional in
//! aggregate; only graded pieces are meaningful, so the grading cutoff is
//! an explicit parameter everywhere. Cotangent tables are exact; the
//! extended model is reported at the associated-graded (E1-page) level,
//! exact for Euler characteristics.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::bott::{bott_cohomology, euler_char, CohomologyResult, GrassmannData};
use crate::bundle::{normalize, sym_of_graded_extension, BundleExpr, NormalForm};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    /// Total space of Omega^1 (X_0 = T^*G).
    Cotangent,
    /// Total space of the extension of O by Omega^1 (X).
    ExtendedCotangent,
}

/// The side tag exists only for report labeling: the plus side reuses the
/// same engine since G^+ = G(r,n) of the dual space has equal invariants.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct TotalSpaceModel {
    pub base: GrassmannData,
    pub kind: SpaceKind,
    pub side: Side,
}

impl TotalSpaceModel {
    pub fn new(base: GrassmannData, kind: SpaceKind, side: Side) -> Self {
        TotalSpaceModel { base, kind, side }
    }
}

/// Graded piece k of the pushforward of the structure sheaf to the base:
/// Sym^k T for the cotangent model, the direct sum of Sym^a T for a <= k
/// for the extended model.
pub fn pushforward_graded(k: u32, m: &TotalSpaceModel) -> Result<NormalForm> {
    match m.kind {
        SpaceKind::Cotangent => normalize(&BundleExpr::sym(k, BundleExpr::tangent()), m.base),
        SpaceKind::ExtendedCotangent => {
            sym_of_graded_extension(k, &BundleExpr::tangent_ext(), m.base)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    E1Bound,
}

impl Exactness {
    pub fn label(&self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::E1Bound => "e1-bound",
        }
    }
}

/// Dimensions of graded Hom^p in Sym-grading k, up to the stated cutoff.
/// Entries at k beyond the cutoff are unreported, not asserted zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedExtTable {
    entries: BTreeMap<(u32, u32), u64>,
    cutoff: u32,
    exactness: Exactness,
}

impl GradedExtTable {
    pub fn entry(&self, p: u32, k: u32) -> u64 {
        self.entries.get(&(p, k)).copied().unwrap_or(0)
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.entries.iter().map(|(&pk, &d)| (pk, d))
    }

    /// Degrees p with a nonzero entry.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ps: Vec<u32> = self.entries.keys().map(|&(p, _)| p).collect();
        ps.dedup();
        ps
    }

    /// Dimension sequence (k = 0..=cutoff) in a fixed degree.
    pub fn row(&self, p: u32) -> Vec<u64> {
        (0..=self.cutoff).map(|k| self.entry(p, k)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(&(p, k), &d)| json!([p, k, d.to_string()]))
            .collect();
        json!({
            "cutoff": self.cutoff,
            "entries": entries,
            "exactness": self.exactness.label(),
        })
    }
}

/// Graded Hom between pullback-type bundles on a total-space model:
/// entry (p, k) is dim H^p(G, a^v (x) b (x) gr_k) via Bott.
pub fn graded_hom(
    a: &BundleExpr,
    b: &BundleExpr,
    m: &TotalSpaceModel,
    cutoff: u32,
) -> Result<GradedExtTable> {
    if a.contains_extension() || b.contains_extension() {
        return Err(Error::UnsupportedNode(
            "graded_hom arguments must be pullback-type bundles".into(),
        ));
    }
    let ab = normalize(&BundleExpr::dual(a.clone()), m.base)?
        .tensor(&normalize(b, m.base)?, m.base)?;
    let mut entries = BTreeMap::new();
    for k in 0..=cutoff {
        let gr = pushforward_graded(k, m)?;
        let total = ab.tensor(&gr, m.base)?;
        for (term, mult) in total.terms() {
            if let CohomologyResult::NonZero { degree, dim, .. } = bott_cohomology(m.base, term)
            {
                *entries.entry((degree, k)).or_insert(0) += mult * dim;
            }
        }
    }
    let exactness = match m.kind {
        SpaceKind::Cotangent => Exactness::Exact,
        SpaceKind::ExtendedCotangent => Exactness::E1Bound,
    };
    Ok(GradedExtTable {
        entries,
        cutoff,
        exactness,
    })
}

/// The spanning generator list: (i, j) with i, j >= 0 and i + j <= n - 2,
/// indexing Sym^i S^* (x) O(j). Its size is C(n, 2).
pub fn span_generators(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in 0..=(n - 2) {
        for j in 0..=(n - 2 - i) {
            out.push((i, j));
        }
    }
    out
}

fn generator_expr(i: u32, j: u32) -> BundleExpr {
    BundleExpr::sym(i, BundleExpr::dual(BundleExpr::s())) * BundleExpr::o(j as i64)
}

/// Euler pairing matrix of the generator set over the base and its exact
/// determinant: entry (u, v) = chi(G, gen_u^v (x) gen_v).
pub fn spanning_gram(
    g: GrassmannData,
    gens: &[(u32, u32)],
) -> Result<(Vec<Vec<i64>>, i64)> {
    for &(i, j) in gens {
        if i + j > g.n() - 2 {
            return Err(Error::Domain(format!(
                "generator ({},{}) violates i+j <= n-2 for n = {}",
                i,
                j,
                g.n()
            )));
        }
    }
    let forms: Result<Vec<NormalForm>> = gens
        .iter()
        .map(|&(i, j)| normalize(&generator_expr(i, j), g))
        .collect();
    let forms = forms?;
    let mut matrix = Vec::with_capacity(gens.len());
    for fu in &forms {
        let dual = fu.dual();
        let mut row = Vec::with_capacity(gens.len());
        for fv in &forms {
            let prod = dual.tensor(fv, g)?;
            let chi: i64 = prod
                .terms()
                .map(|(b, m)| m as i64 * euler_char(g, b))
                .sum();
            row.push(chi);
        }
        matrix.push(row);
    }
    let det = det_bareiss(&matrix)?;
    Ok((matrix, det))
}

/// Fraction-free (Bareiss) determinant over the integers.
pub fn det_bareiss(matrix: &[Vec<i64>]) -> Result<i64> {
    let n = matrix.len();
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| {
            if row.len() != n {
                Err(Error::Domain("determinant of a non-square matrix".into()))
            } else {
                Ok(row.iter().map(|&x| x as i128).collect())
            }
        })
        .collect::<Result<_>>()?;
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| a[i][k] != 0);
            match swap {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| Error::Overflow)
}
