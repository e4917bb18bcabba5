//! Symbolic model of the flop functors on the spanning generators: image
//! tables, the rank-one case for arbitrary twists, the filtration ladder,
//! the Eagon-Northcott complex bookkeeping, the n = 4 round-trip check,
//! and the cross-flop graded Hom comparison harness.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::bott::{euler_char, GrassmannData, HomogBundle};
use crate::bundle::{normalize, BundleExpr, NormalForm};
use crate::error::{Error, Result};
use crate::schur::{binomial, GLWeight};
use crate::total_space::{graded_hom, GradedExtTable, Side, SpaceKind, TotalSpaceModel};

/// A spanning generator Sym^i S^*_X (x) O_X(j), constrained to the range
/// i, j >= 0 and i + j <= n - 2.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct GeneratorSheaf {
    pub i: u32,
    pub j: u32,
    pub n: u32,
}

impl GeneratorSheaf {
    pub fn new(i: u32, j: u32, n: u32) -> Result<Self> {
        if n < 4 {
            return Err(Error::Domain(format!("generator needs n >= 4, got {}", n)));
        }
        if i + j > n - 2 {
            return Err(Error::Domain(format!(
                "generator ({},{}) violates i+j <= n-2 for n = {}",
                i,
                j,
                n
            )));
        }
        Ok(GeneratorSheaf { i, j, n })
    }

    /// The underlying bundle expression on the base, pulled back to X.
    pub fn expr(&self) -> BundleExpr {
        BundleExpr::sym(self.i, BundleExpr::dual(BundleExpr::s())) * BundleExpr::o(self.j as i64)
    }
}

impl fmt::Display for GeneratorSheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym^{}S*_X (x) O_X({})", self.i, self.j)
    }
}

/// The full spanning set for a given n, in (i, j) lexicographic order.
pub fn generator_set(n: u32) -> Vec<GeneratorSheaf> {
    let mut out = Vec::new();
    for i in 0..=(n - 2) {
        for j in 0..=(n - 2 - i) {
            out.push(GeneratorSheaf { i, j, n });
        }
    }
    out
}

/// Image of a spanning generator under the forward functor.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ImageSheaf {
    /// Sym^i S^+ (x) O_{X^+}(-j).
    PlusBundle { i: u32, j: u32 },
    /// I_{W^+} (x) O_{X^+}(-n+2).
    IdealTwist { n: u32 },
    /// E^+_i (x) O_{X^+}(-n+2+i), known through its defining exact
    /// sequence 0 -> E^+_i(i-2) -> Sym^i S^+(i-2) -> O_{W^+}(-2) -> 0.
    EPlus { i: u32, n: u32 },
}

impl fmt::Display for ImageSheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageSheaf::PlusBundle { i, j } => {
                write!(f, "Sym^{}S+ (x) O_{{X+}}({})", i, -(*j as i64))
            }
            ImageSheaf::IdealTwist { n } => write!(f, "I_{{W+}} (x) O_{{X+}}({})", 2 - *n as i64),
            ImageSheaf::EPlus { i, n } => {
                write!(f, "E+_{} (x) O_{{X+}}({})", i, *i as i64 + 2 - *n as i64)
            }
        }
    }
}

/// Forward image table: the exact case split on (i, j).
pub fn phi_image(g: &GeneratorSheaf) -> ImageSheaf {
    let n = g.n;
    if g.i == 0 {
        if g.j <= n - 3 {
            ImageSheaf::PlusBundle { i: 0, j: g.j }
        } else {
            ImageSheaf::IdealTwist { n }
        }
    } else if g.i + g.j <= n - 3 {
        ImageSheaf::PlusBundle { i: g.i, j: g.j }
    } else {
        ImageSheaf::EPlus { i: g.i, n }
    }
}

/// Inverse image table, deliberately restricted to the proven cases:
/// plus-bundle images at any n, ideal and E^+ images only at n = 4.
pub fn psi_image(s: &ImageSheaf, n: u32) -> Result<GeneratorSheaf> {
    match *s {
        ImageSheaf::PlusBundle { i, j } => {
            if i + j <= n - 3 {
                GeneratorSheaf::new(i, j, n)
            } else {
                Err(Error::UnsupportedNode(format!(
                    "inverse of plus-bundle ({},{}) outside i+j <= n-3",
                    i, j
                )))
            }
        }
        ImageSheaf::IdealTwist { n: m } => {
            if n == 4 && m == 4 {
                GeneratorSheaf::new(0, n - 2, n)
            } else {
                Err(Error::UnsupportedNode(
                    "inverse of the ideal twist is only established at n = 4".into(),
                ))
            }
        }
        ImageSheaf::EPlus { i, n: m } => {
            if n == 4 && m == 4 && i >= 1 && i <= 2 {
                GeneratorSheaf::new(i, n - 2 - i, n)
            } else {
                Err(Error::UnsupportedNode(
                    "inverse of E^+_i is only established at n = 4 for 0 < i <= 2".into(),
                ))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTripChain {
    pub generator: GeneratorSheaf,
    pub image: ImageSheaf,
    pub back: GeneratorSheaf,
    pub identity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub n: u32,
    pub chains: Vec<RoundTripChain>,
    pub all_identity: bool,
}

/// Round-trip through both functors on the full spanning set; established
/// only at n = 4.
pub fn roundtrip_check(n: u32) -> Result<RoundTrip> {
    if n != 4 {
        return Err(Error::UnsupportedNode(
            "the round trip is only established at n = 4".into(),
        ));
    }
    let mut chains = Vec::new();
    for g in generator_set(n) {
        let image = phi_image(&g);
        let back = psi_image(&image, n)?;
        chains.push(RoundTripChain {
            generator: g,
            image,
            back,
            identity: back == g,
        });
    }
    let all_identity = chains.iter().all(|c| c.identity);
    Ok(RoundTrip {
        n,
        chains,
        all_identity,
    })
}

/// The rank-one functor table: O_X(k) maps to O_{X^+}(-k) on the spanning
/// range l - n + 1 <= k <= l, together with its inverse.
#[derive(Clone, Debug, Serialize)]
pub struct R1Table {
    pub l: i64,
    pub n: u32,
    /// (k, image twist -k) over the spanning range.
    pub entries: Vec<(i64, i64)>,
}

pub fn r1_functor_table(l: i64, n: u32) -> R1Table {
    let entries = ((l - n as i64 + 1)..=l).map(|k| (k, -k)).collect();
    R1Table { l, n, entries }
}

impl R1Table {
    /// The inverse table: image twist back to source twist.
    pub fn inverse(&self) -> BTreeMap<i64, i64> {
        self.entries.iter().map(|&(k, mk)| (mk, k)).collect()
    }

    pub fn roundtrip_ok(&self) -> bool {
        let inv = self.inverse();
        self.entries.len() == self.n as usize
            && self.entries.iter().all(|&(k, mk)| inv.get(&mk) == Some(&k))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ENTerm {
    pub description: String,
    pub rank: u64,
    pub sign: i8,
}

/// Term list of the Eagon-Northcott resolution of O_{W^+}(-1) on the
/// determinantal locus of the rank-2 evaluation map.
#[derive(Clone, Debug, Serialize)]
pub struct ENComplex {
    pub n: u32,
    pub terms: Vec<ENTerm>,
}

impl ENComplex {
    pub fn signed_rank_sum(&self) -> i64 {
        self.terms
            .iter()
            .map(|t| t.sign as i64 * t.rank as i64)
            .sum()
    }

    pub fn ranks(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.rank).collect()
    }
}

pub fn eagon_northcott(n: u32) -> Result<ENComplex> {
    if n < 4 {
        return Err(Error::Domain(format!(
            "Eagon-Northcott bookkeeping needs n >= 4, got {}",
            n
        )));
    }
    let mut terms = Vec::new();
    // resolution ends ... -> O (x) Wedge^2 V^* -> Wedge^2 S^+ -> O_{W+}(-1);
    // signs alternate with the final locally free term positive
    for k in (1..=(n - 2)).rev() {
        terms.push(ENTerm {
            description: format!("Sym^{}(S+)^* (x) Wedge^{}V^*", k, k + 2),
            rank: (k as u64 + 1) * binomial(n as u64, k as u64 + 2),
            sign: if k % 2 == 1 { 1 } else { -1 },
        });
    }
    terms.push(ENTerm {
        description: "O (x) Wedge^2 V^*".into(),
        rank: binomial(n as u64, 2),
        sign: -1,
    });
    terms.push(ENTerm {
        description: "Wedge^2 S+".into(),
        rank: 1,
        sign: 1,
    });
    Ok(ENComplex { n, terms })
}

/// One step of the decreasing filtration, with the coefficients of its
/// subquotient O_{E2}(-iE1' - kE2) (x) f^{+*}O_{X+}(-k+l).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationStep {
    pub k: u32,
    pub l: u32,
    pub e1_coeff: i64,
    pub e2_coeff: i64,
    pub plus_twist: i64,
    pub descriptor: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationLadder {
    pub i: u32,
    pub steps: Vec<FiltrationStep>,
    pub bottom: String,
}

fn divisor_twist(e1: i64, e2: i64) -> String {
    let mut s = String::new();
    for (c, name) in [(e1, "E1'"), (e2, "E2")] {
        if c == 0 {
            continue;
        }
        if c > 0 && !s.is_empty() {
            s.push('+');
        }
        if c == -1 {
            s.push('-');
        } else if c != 1 {
            s.push_str(&c.to_string());
        }
        s.push_str(name);
    }
    s
}

pub fn filtration_ladder(i: u32) -> Result<FiltrationLadder> {
    if i < 1 {
        return Err(Error::Domain("filtration ladder needs i >= 1".into()));
    }
    let mut steps = Vec::new();
    for k in 0..i {
        for l in 0..=k {
            let descriptor = format!(
                "O_{{E2}}({}) (x) f^{{+*}}O_{{X+}}({})",
                divisor_twist(-(i as i64), -(k as i64)),
                l as i64 - k as i64
            );
            steps.push(FiltrationStep {
                k,
                l,
                e1_coeff: -(i as i64),
                e2_coeff: -(k as i64),
                plus_twist: l as i64 - k as i64,
                descriptor,
            });
        }
    }
    let bottom = format!(
        "f^{{+*}}Sym^{}S+({})",
        i,
        divisor_twist(-(i as i64), -(i as i64))
    );
    Ok(FiltrationLadder { i, steps, bottom })
}

/// Shift analysis for one cohomological degree of a paired table.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeShift {
    pub degree: u32,
    pub left_row: Vec<u64>,
    pub right_row: Vec<u64>,
    /// Grading shifts s for which the right row equals the left row
    /// shifted by s on the overlapping window (with nonzero overlap).
    pub shifts: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct HomCompare {
    pub g1: GeneratorSheaf,
    pub g2: GeneratorSheaf,
    pub left: GradedExtTable,
    pub right: GradedExtTable,
    pub degree_shifts: Vec<DegreeShift>,
}

impl HomCompare {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "g1": self.g1,
            "g2": self.g2,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "degree-shifts": self.degree_shifts,
            "status": "reported",
        })
    }
}

fn matching_shifts(left: &[u64], right: &[u64]) -> Vec<i64> {
    let c = left.len() as i64;
    let mut shifts = Vec::new();
    for s in -(c - 1)..c {
        let mut nonzero = false;
        let mut ok = true;
        for k in 0..c {
            let k2 = k - s;
            if k2 < 0 || k2 >= c {
                continue;
            }
            let (r, l) = (right[k as usize], left[k2 as usize]);
            if r != l {
                ok = false;
                break;
            }
            if r != 0 {
                nonzero = true;
            }
        }
        if ok && nonzero {
            shifts.push(s);
        }
    }
    shifts
}

/// Paired graded Hom tables across the flop for generators with
/// plus-bundle images, together with a per-degree shift analysis. The
/// tables are reported, never asserted equal: the equivalence does not
/// pin down the graded correspondence.
pub fn hom_compare(
    g1: &GeneratorSheaf,
    g2: &GeneratorSheaf,
    cutoff: u32,
) -> Result<HomCompare> {
    if g1.n != g2.n {
        return Err(Error::Domain("generators live over different n".into()));
    }
    let base = GrassmannData::new(2, g1.n)?;
    let plus_expr = |img: ImageSheaf| -> Result<BundleExpr> {
        match img {
            ImageSheaf::PlusBundle { i, j } => {
                Ok(BundleExpr::sym(i, BundleExpr::s()) * BundleExpr::o(-(j as i64)))
            }
            other => Err(Error::UnsupportedNode(format!(
                "hom_compare needs plus-bundle images, got {}",
                other
            ))),
        }
    };
    let b1 = plus_expr(phi_image(g1))?;
    let b2 = plus_expr(phi_image(g2))?;
    let x_model = TotalSpaceModel::new(base, SpaceKind::ExtendedCotangent, Side::Minus);
    let xp_model = TotalSpaceModel::new(base, SpaceKind::ExtendedCotangent, Side::Plus);
    let left = graded_hom(&g1.expr(), &g2.expr(), &x_model, cutoff)?;
    let right = graded_hom(&b1, &b2, &xp_model, cutoff)?;

    let mut degrees: Vec<u32> = left.degrees();
    degrees.extend(right.degrees());
    degrees.sort_unstable();
    degrees.dedup();
    let degree_shifts = degrees
        .into_iter()
        .map(|p| {
            let lrow = left.row(p);
            let rrow = right.row(p);
            let shifts = matching_shifts(&lrow, &rrow);
            DegreeShift {
                degree: p,
                left_row: lrow,
                right_row: rrow,
                shifts,
            }
        })
        .collect();
    Ok(HomCompare {
        g1: *g1,
        g2: *g2,
        left,
        right,
        degree_shifts,
    })
}

/// A signed formal combination of irreducible homogeneous bundles,
/// used for K-theoretic consistency rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KClass {
    terms: BTreeMap<HomogBundle, i64>,
}

impl KClass {
    pub fn new() -> Self {
        KClass::default()
    }

    pub fn add(&mut self, b: HomogBundle, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(b.clone()).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&b);
        }
    }

    pub fn from_normal_form(nf: &NormalForm, sign: i64) -> Self {
        let mut c = KClass::new();
        for (b, m) in nf.terms() {
            c.add(b.clone(), sign * m as i64);
        }
        c
    }

    pub fn twist(&self, j: i64) -> KClass {
        let mut c = KClass::new();
        for (b, &coeff) in &self.terms {
            c.add(b.twist(j), coeff);
        }
        c
    }

    pub fn extend(&mut self, other: &KClass) {
        for (b, &coeff) in &other.terms {
            self.add(b.clone(), coeff);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HomogBundle, i64)> {
        self.terms.iter().map(|(b, &c)| (b, c))
    }

    /// Euler pairing chi(G, a^v (x) self) against a locally free class.
    pub fn euler_pair_against(&self, a: &NormalForm, g: GrassmannData) -> Result<i64> {
        let dual = a.dual();
        let mut total = 0i64;
        for (b, coeff) in &self.terms {
            let prod = dual.tensor(&NormalForm::single(b.clone()), g)?;
            let chi: i64 = prod
                .terms()
                .map(|(t, m)| m as i64 * euler_char(g, t))
                .sum();
            total += coeff * chi;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KClassReport {
    pub n: u32,
    /// Signed irreducible decomposition of the class assigned to the
    /// ideal-twist image.
    pub class_terms: Vec<(String, i64)>,
    /// Euler pairings of that class against each spanning generator,
    /// computed on the base.
    pub pairing_row: Vec<((u32, u32), i64)>,
    pub status: &'static str,
}

/// K-class of O_{W^+}(-1) on the base, read off the alternating sum of
/// the Eagon-Northcott terms. This is the default for the consistency
/// row; the class on the full extended total space is not pinned down by
/// the construction, so callers may override it.
pub fn en_structure_class(n: u32) -> Result<KClass> {
    let g = GrassmannData::new(2, n)?;
    let mut class = KClass::new();
    // Sym^k(S+)^* (x) Wedge^{k+2}V^* for k = n-2 down to 1, then the
    // trivial term with multiplicity C(n,2), then Wedge^2 S+ = det S+
    for k in (1..=(n - 2)).rev() {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let bundle = HomogBundle::new(
            g,
            GLWeight::zero(g.quot_rank()),
            GLWeight::new(vec![0, -(k as i64)])?,
        )?;
        class.add(bundle, sign * binomial(n as u64, k as u64 + 2) as i64);
    }
    class.add(
        HomogBundle::structure_sheaf(g),
        -(binomial(n as u64, 2) as i64),
    );
    class.add(
        HomogBundle::new(
            g,
            GLWeight::zero(g.quot_rank()),
            GLWeight::det_power(1, g.sub_rank()),
        )?,
        1,
    );
    Ok(class)
}

/// Consistency row for the ideal-twist image at n = 4: its K-class is
/// [O(-2)] minus the structure class of W^+ twisted by O(-2), paired
/// against the spanning generators. Reported, not asserted.
pub fn k_class_report(n: u32, w_class: Option<KClass>) -> Result<KClassReport> {
    let g = GrassmannData::new(2, n)?;
    let w = match w_class {
        Some(c) => c,
        None => en_structure_class(n)?.twist(1), // O_{W+}(-1) -> O_{W+}
    };
    let mut class = KClass::new();
    class.add(HomogBundle::line(g, -2), 1);
    let mut torsion = w.twist(-2);
    for (_, c) in torsion.terms.iter_mut() {
        *c = -*c;
    }
    class.extend(&torsion);

    let mut pairing_row = Vec::new();
    for gen in generator_set(n) {
        let a = normalize(&gen.expr(), g)?;
        pairing_row.push(((gen.i, gen.j), class.euler_pair_against(&a, g)?));
    }
    let class_terms = class
        .terms()
        .map(|(b, c)| (b.to_string(), c))
        .collect();
    Ok(KClassReport {
        n,
        class_terms,
        pairing_row,
        status: "reported",
    })
}
