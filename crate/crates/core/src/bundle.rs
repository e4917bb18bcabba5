//! Symbolic homogeneous-bundle expressions over S, Q, O(j) and their
//! normalization into sums of irreducible bundles consumable by the Bott
//! engine.
//!
//! Sym and Wedge are implemented only for single Schur generators
//! (possibly twisted), tensor products of two generators (via the Cauchy
//! identity), and marked two-step extensions. Anything else errors loudly
//! rather than silently approximating.

use std::collections::BTreeMap;
use std::fmt;

use crate::bott::{GrassmannData, HomogBundle};
use crate::error::{Error, Result};
use crate::schur::{binomial, cauchy_sym, cauchy_wedge, GLWeight, Partition};

#[derive(Clone, PartialEq, Debug)]
pub enum BundleExpr {
    /// Tautological subbundle S.
    Sub,
    /// Quotient bundle Q.
    Quot,
    /// Line bundle O(j) = (det Q)^j.
    Line(i64),
    /// Trivial bundle of the given rank.
    Trivial(u32),
    Dual(Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Sym(u32, Box<BundleExpr>),
    Wedge(u32, Box<BundleExpr>),
    Sum(Vec<BundleExpr>),
    /// A marked extension; normalization passes to the associated graded.
    GradedExt(Vec<BundleExpr>),
}

impl BundleExpr {
    pub fn s() -> Self {
        BundleExpr::Sub
    }

    pub fn q() -> Self {
        BundleExpr::Quot
    }

    pub fn o(j: i64) -> Self {
        BundleExpr::Line(j)
    }

    pub fn dual(e: BundleExpr) -> Self {
        BundleExpr::Dual(Box::new(e))
    }

    pub fn sym(k: u32, e: BundleExpr) -> Self {
        BundleExpr::Sym(k, Box::new(e))
    }

    pub fn wedge(k: u32, e: BundleExpr) -> Self {
        BundleExpr::Wedge(k, Box::new(e))
    }

    /// The cotangent bundle Omega^1 = Hom(Q, S) = Q^* (x) S.
    pub fn cotangent() -> Self {
        BundleExpr::dual(BundleExpr::q()) * BundleExpr::s()
    }

    /// The tangent bundle T = S^* (x) Q.
    pub fn tangent() -> Self {
        BundleExpr::dual(BundleExpr::s()) * BundleExpr::q()
    }

    /// The extension of O by Omega^1 (rank dim G + 1), marked.
    pub fn cotangent_ext() -> Self {
        BundleExpr::GradedExt(vec![BundleExpr::cotangent(), BundleExpr::Trivial(1)])
    }

    /// The dual extension of T by O, marked.
    pub fn tangent_ext() -> Self {
        BundleExpr::GradedExt(vec![BundleExpr::tangent(), BundleExpr::Trivial(1)])
    }

    pub fn contains_extension(&self) -> bool {
        match self {
            BundleExpr::GradedExt(_) => true,
            BundleExpr::Sub | BundleExpr::Quot | BundleExpr::Line(_) | BundleExpr::Trivial(_) => {
                false
            }
            BundleExpr::Dual(e) | BundleExpr::Sym(_, e) | BundleExpr::Wedge(_, e) => {
                e.contains_extension()
            }
            BundleExpr::Tensor(a, b) => a.contains_extension() || b.contains_extension(),
            BundleExpr::Sum(es) => es.iter().any(|e| e.contains_extension()),
        }
    }
}

impl std::ops::Mul for BundleExpr {
    type Output = BundleExpr;
    fn mul(self, rhs: BundleExpr) -> BundleExpr {
        BundleExpr::Tensor(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Add for BundleExpr {
    type Output = BundleExpr;
    fn add(self, rhs: BundleExpr) -> BundleExpr {
        match self {
            BundleExpr::Sum(mut es) => {
                es.push(rhs);
                BundleExpr::Sum(es)
            }
            e => BundleExpr::Sum(vec![e, rhs]),
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Sub => write!(f, "S"),
            BundleExpr::Quot => write!(f, "Q"),
            BundleExpr::Line(j) => write!(f, "O({})", j),
            BundleExpr::Trivial(m) => write!(f, "triv({})", m),
            BundleExpr::Dual(e) => write!(f, "dual({})", e),
            BundleExpr::Tensor(a, b) => write!(f, "{} * {}", a, b),
            BundleExpr::Sym(k, e) => write!(f, "sym({}, {})", k, e),
            BundleExpr::Wedge(k, e) => write!(f, "wedge({}, {})", k, e),
            BundleExpr::Sum(es) => {
                let s: Vec<String> = es.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", s.join(" + "))
            }
            BundleExpr::GradedExt(es) => {
                let s: Vec<String> = es.iter().map(|e| e.to_string()).collect();
                write!(f, "ext({})", s.join(", "))
            }
        }
    }
}

/// Complete decomposition into irreducible homogeneous bundles with
/// multiplicities. Rank is preserved by construction.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NormalForm {
    terms: BTreeMap<HomogBundle, u64>,
}

impl NormalForm {
    pub fn new() -> Self {
        NormalForm::default()
    }

    pub fn single(b: HomogBundle) -> Self {
        let mut nf = NormalForm::new();
        nf.add(b, 1);
        nf
    }

    pub fn add(&mut self, b: HomogBundle, mult: u64) {
        if mult > 0 {
            *self.terms.entry(b).or_insert(0) += mult;
        }
    }

    pub fn extend(&mut self, other: &NormalForm) {
        for (b, m) in &other.terms {
            self.add(b.clone(), *m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HomogBundle, u64)> {
        self.terms.iter().map(|(b, &m)| (b, m))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, b: &HomogBundle) -> u64 {
        self.terms.get(b).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> u64 {
        self.terms.iter().map(|(b, m)| m * b.rank()).sum()
    }

    pub fn dual(&self) -> NormalForm {
        let mut nf = NormalForm::new();
        for (b, m) in &self.terms {
            nf.add(b.dual(), *m);
        }
        nf
    }

    pub fn twist(&self, j: i64) -> NormalForm {
        let mut nf = NormalForm::new();
        for (b, m) in &self.terms {
            nf.add(b.twist(j), *m);
        }
        nf
    }

    /// Distributive tensor product via Littlewood-Richardson on both
    /// weight components.
    pub fn tensor(&self, other: &NormalForm, g: GrassmannData) -> Result<NormalForm> {
        let mut nf = NormalForm::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                let mus = crate::schur::lr_tensor(a.mu(), b.mu())?;
                let lambdas = crate::schur::lr_tensor(a.lambda(), b.lambda())?;
                for (mu, cm) in mus.terms() {
                    for (lam, cl) in lambdas.terms() {
                        let term = HomogBundle::new(g, mu.clone(), lam.clone())?;
                        nf.add(term, ma * mb * cm * cl);
                    }
                }
            }
        }
        Ok(nf)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, m) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{}", b)?;
            } else {
                write!(f, "{}*{}", m, b)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// How a single weight component sits relative to Schur-functor rules:
/// a pure determinant twist, or the standard (resp. dual standard)
/// representation twisted by a determinant power.
#[derive(Clone, Copy, PartialEq, Debug)]
enum SideKind {
    Twist(i64),
    VecStd(i64),
    VecDual(i64),
}

fn side_kind(w: &GLWeight) -> Option<SideKind> {
    if let Some(c) = w.as_det_power() {
        return Some(SideKind::Twist(c));
    }
    let m = w.len();
    let e = w.entries();
    if m >= 2 && e[0] == e[1] + 1 && e[1..].iter().all(|&x| x == e[1]) {
        return Some(SideKind::VecStd(e[1]));
    }
    if m >= 2 && e[m - 1] == e[m - 2] - 1 && e[..m - 1].iter().all(|&x| x == e[0]) {
        return Some(SideKind::VecDual(e[0]));
    }
    None
}

fn apply_partition(kind: SideKind, kappa: &Partition, k: u32, m: usize) -> Result<GLWeight> {
    match kind {
        SideKind::Twist(c) => {
            if kappa.is_empty() || (kappa.len() == 1 && m == 1) {
                // rank-1 side: Sym^k and the k-row column both collapse
                Ok(GLWeight::det_power(c * k as i64 + kappa.part(0) as i64, m))
            } else {
                Err(Error::UnsupportedNode(
                    "Schur functor of a twisted line with a non-row partition".into(),
                ))
            }
        }
        SideKind::VecStd(c) => Ok(GLWeight::from_partition(kappa, m)?.twist(c * k as i64)),
        SideKind::VecDual(c) => Ok(GLWeight::from_partition(kappa, m)?
            .dual()
            .twist(c * k as i64)),
    }
}

/// Normalize a bundle expression into irreducible summands.
pub fn normalize(e: &BundleExpr, g: GrassmannData) -> Result<NormalForm> {
    match e {
        BundleExpr::Sub => {
            let lambda = GLWeight::from_partition(&Partition::new(vec![1])?, g.sub_rank())?;
            Ok(NormalForm::single(HomogBundle::new(
                g,
                GLWeight::zero(g.quot_rank()),
                lambda,
            )?))
        }
        BundleExpr::Quot => {
            let mu = GLWeight::from_partition(&Partition::new(vec![1])?, g.quot_rank())?;
            Ok(NormalForm::single(HomogBundle::new(
                g,
                mu,
                GLWeight::zero(g.sub_rank()),
            )?))
        }
        BundleExpr::Line(j) => Ok(NormalForm::single(HomogBundle::line(g, *j))),
        BundleExpr::Trivial(m) => {
            let mut nf = NormalForm::new();
            nf.add(HomogBundle::structure_sheaf(g), *m as u64);
            Ok(nf)
        }
        BundleExpr::Dual(inner) => Ok(normalize(inner, g)?.dual()),
        BundleExpr::Tensor(a, b) => normalize(a, g)?.tensor(&normalize(b, g)?, g),
        BundleExpr::Sum(es) => {
            let mut nf = NormalForm::new();
            for e in es {
                nf.extend(&normalize(e, g)?);
            }
            Ok(nf)
        }
        BundleExpr::GradedExt(es) => {
            // associated graded: valid for Euler characteristics and
            // E1-page dimension bounds, not for exact cohomology
            let mut nf = NormalForm::new();
            for e in es {
                nf.extend(&normalize(e, g)?);
            }
            Ok(nf)
        }
        BundleExpr::Sym(k, inner) => schur_power(*k, inner, g, true),
        BundleExpr::Wedge(k, inner) => schur_power(*k, inner, g, false),
    }
}

fn schur_power(k: u32, inner: &BundleExpr, g: GrassmannData, sym: bool) -> Result<NormalForm> {
    if inner.contains_extension() {
        return Err(Error::UnsupportedNode(
            "sym/wedge of a marked extension: use sym_of_graded_extension".into(),
        ));
    }
    if k == 0 {
        return Ok(NormalForm::single(HomogBundle::structure_sheaf(g)));
    }
    let nf = normalize(inner, g)?;
    // purely trivial content: plain binomial rank arithmetic
    if nf
        .terms()
        .all(|(b, _)| b.mu().is_trivial() && b.lambda().is_trivial())
    {
        let m = nf.rank();
        let mult = if sym {
            binomial(m + k as u64 - 1, k as u64)
        } else {
            binomial(m, k as u64)
        };
        let mut out = NormalForm::new();
        out.add(HomogBundle::structure_sheaf(g), mult);
        return Ok(out);
    }
    if nf.num_terms() != 1 || nf.terms().next().map(|(_, m)| m) != Some(1) {
        return Err(Error::UnsupportedNode(format!(
            "sym/wedge of a reducible expression: {}",
            inner
        )));
    }
    let (b, _) = nf.terms().next().unwrap();
    let mu_kind = side_kind(b.mu());
    let lam_kind = side_kind(b.lambda());
    let (mu_kind, lam_kind) = match (mu_kind, lam_kind) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::UnsupportedNode(format!(
                "sym/wedge of a non-generator irreducible: {}",
                b
            )))
        }
    };
    let mq = g.quot_rank();
    let ms = g.sub_rank();
    let mut out = NormalForm::new();
    match (mu_kind, lam_kind) {
        // line bundle: k-th tensor power
        (SideKind::Twist(c1), SideKind::Twist(c2)) => {
            if sym || k <= 1 {
                out.add(
                    HomogBundle::new(
                        g,
                        GLWeight::det_power(c1 * k as i64, mq),
                        GLWeight::det_power(c2 * k as i64, ms),
                    )?,
                    1,
                );
            }
            // wedge^k of a line bundle vanishes for k > 1: empty form
        }
        // one vector side, the other a pure twist
        (vec_kind @ (SideKind::VecStd(_) | SideKind::VecDual(_)), SideKind::Twist(c2)) => {
            let rank = mq as u32;
            if !sym && k > rank {
                return Ok(out); // wedge beyond the rank vanishes
            }
            let kappa = if sym {
                Partition::new(vec![k])?
            } else {
                Partition::new(vec![1; k as usize])?
            };
            out.add(
                HomogBundle::new(
                    g,
                    apply_partition(vec_kind, &kappa, k, mq)?,
                    GLWeight::det_power(c2 * k as i64, ms),
                )?,
                1,
            );
        }
        (SideKind::Twist(c1), vec_kind @ (SideKind::VecStd(_) | SideKind::VecDual(_))) => {
            let rank = ms as u32;
            if !sym && k > rank {
                return Ok(out);
            }
            let kappa = if sym {
                Partition::new(vec![k])?
            } else {
                Partition::new(vec![1; k as usize])?
            };
            out.add(
                HomogBundle::new(
                    g,
                    GLWeight::det_power(c1 * k as i64, mq),
                    apply_partition(vec_kind, &kappa, k, ms)?,
                )?,
                1,
            );
        }
        // tensor product of two generators: Cauchy identity
        (
            mu_vec @ (SideKind::VecStd(_) | SideKind::VecDual(_)),
            lam_vec @ (SideKind::VecStd(_) | SideKind::VecDual(_)),
        ) => {
            let pairs = if sym {
                cauchy_sym(k, mq as u32, ms as u32)
            } else {
                cauchy_wedge(k, mq as u32, ms as u32)
            };
            for (pa, pb) in pairs {
                out.add(
                    HomogBundle::new(
                        g,
                        apply_partition(mu_vec, &pa, k, mq)?,
                        apply_partition(lam_vec, &pb, k, ms)?,
                    )?,
                    1,
                );
            }
        }
    }
    Ok(out)
}

/// Sym^k of a marked two-step extension with one trivial line piece:
/// the associated graded is the direct sum of Sym^a of the nontrivial
/// piece for a = 0..k.
pub fn sym_of_graded_extension(
    k: u32,
    e: &BundleExpr,
    g: GrassmannData,
) -> Result<NormalForm> {
    let pieces = match e {
        BundleExpr::GradedExt(pieces) => pieces,
        _ => {
            return Err(Error::UnsupportedNode(format!(
                "sym_of_graded_extension expects a marked extension, got {}",
                e
            )))
        }
    };
    if pieces.len() != 2 {
        return Err(Error::UnsupportedNode(
            "extensions with more than two graded pieces are not supported".into(),
        ));
    }
    let trivial_line = |p: &BundleExpr| -> Result<bool> {
        let nf = normalize(p, g)?;
        Ok(nf.rank() == 1 && nf.multiplicity(&HomogBundle::structure_sheaf(g)) == 1)
    };
    let nontrivial = if trivial_line(&pieces[0])? {
        &pieces[1]
    } else if trivial_line(&pieces[1])? {
        &pieces[0]
    } else {
        return Err(Error::UnsupportedNode(
            "extension must have one trivial line summand".into(),
        ));
    };
    let mut out = NormalForm::new();
    for a in 0..=k {
        out.extend(&normalize(&BundleExpr::sym(a, nontrivial.clone()), g)?);
    }
    Ok(out)
}

/// Rank by structural arithmetic, without normalizing.
pub fn rank(e: &BundleExpr, g: GrassmannData) -> u64 {
    match e {
        BundleExpr::Sub => g.sub_rank() as u64,
        BundleExpr::Quot => g.quot_rank() as u64,
        BundleExpr::Line(_) => 1,
        BundleExpr::Trivial(m) => *m as u64,
        BundleExpr::Dual(e) => rank(e, g),
        BundleExpr::Tensor(a, b) => rank(a, g) * rank(b, g),
        BundleExpr::Sum(es) | BundleExpr::GradedExt(es) => es.iter().map(|e| rank(e, g)).sum(),
        BundleExpr::Sym(k, e) => binomial(rank(e, g) + *k as u64 - 1, *k as u64),
        BundleExpr::Wedge(k, e) => binomial(rank(e, g), *k as u64),
    }
}

/// Recursive-descent parser for the expression syntax used by the CLI,
/// e.g. "sym(2, dual(S) * Q) * O(-1)".
pub fn parse_expr(input: &str) -> Result<BundleExpr> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing input at offset {}",
            p.pos
        )));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected '{}' at offset {}",
                c, self.pos
            )))
        }
    }

    fn expr(&mut self) -> Result<BundleExpr> {
        let mut e = self.term()?;
        while self.peek() == Some('+') {
            self.eat('+')?;
            e = e + self.term()?;
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<BundleExpr> {
        let mut e = self.factor()?;
        while self.peek() == Some('*') {
            self.eat('*')?;
            e = e * self.factor()?;
        }
        Ok(e)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('\u{2212}')) {
            self.pos += 1;
        }
        while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        s.parse()
            .map_err(|_| Error::Parse(format!("expected integer at offset {}", start)))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn factor(&mut self) -> Result<BundleExpr> {
        if self.peek() == Some('(') {
            self.eat('(')?;
            let e = self.expr()?;
            self.eat(')')?;
            return Ok(e);
        }
        let name = self.ident();
        match name.as_str() {
            "S" => Ok(BundleExpr::Sub),
            "Q" => Ok(BundleExpr::Quot),
            "T" => Ok(BundleExpr::tangent()),
            "Omega" => Ok(BundleExpr::cotangent()),
            "O" => {
                self.eat('(')?;
                let j = self.integer()?;
                self.eat(')')?;
                Ok(BundleExpr::Line(j))
            }
            "triv" => {
                self.eat('(')?;
                let m = self.integer()?;
                self.eat(')')?;
                if m < 0 {
                    return Err(Error::Parse("trivial rank must be non-negative".into()));
                }
                Ok(BundleExpr::Trivial(m as u32))
            }
            "dual" => {
                self.eat('(')?;
                let e = self.expr()?;
                self.eat(')')?;
                Ok(BundleExpr::dual(e))
            }
            "sym" | "wedge" => {
                self.eat('(')?;
                let k = self.integer()?;
                if k < 0 {
                    return Err(Error::Parse("sym/wedge degree must be non-negative".into()));
                }
                self.eat(',')?;
                let e = self.expr()?;
                self.eat(')')?;
                Ok(if name == "sym" {
                    BundleExpr::sym(k as u32, e)
                } else {
                    BundleExpr::wedge(k as u32, e)
                })
            }
            "ext" => {
                self.eat('(')?;
                let mut pieces = vec![self.expr()?];
                while self.peek() == Some(',') {
                    self.eat(',')?;
                    pieces.push(self.expr()?);
                }
                self.eat(')')?;
                Ok(BundleExpr::GradedExt(pieces))
            }
            other => Err(Error::Parse(format!(
                "unknown symbol {:?} at offset {}",
                other, self.pos
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn g24() -> GrassmannData {
        GrassmannData::new(2, 4).unwrap()
    }

    fn w(entries: &[i64]) -> GLWeight {
        GLWeight::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn tangent_normalizes_to_single_term() {
        let g = g24();
        let nf = normalize(&BundleExpr::tangent(), g).unwrap();
        assert_eq!(nf.num_terms(), 1);
        let b = HomogBundle::new(g, w(&[1, 0]), w(&[0, -1])).unwrap();
        assert_eq!(nf.multiplicity(&b), 1);
        assert_eq!(nf.rank(), 4);
    }

    #[test]
    fn sym2_tangent_cauchy() {
        let g = g24();
        let nf = normalize(&BundleExpr::sym(2, BundleExpr::tangent()), g).unwrap();
        let t1 = HomogBundle::new(g, w(&[2, 0]), w(&[0, -2])).unwrap();
        let t2 = HomogBundle::new(g, w(&[1, 1]), w(&[-1, -1])).unwrap();
        assert_eq!(nf.multiplicity(&t1), 1);
        assert_eq!(nf.multiplicity(&t2), 1);
        assert_eq!(nf.num_terms(), 2);
        assert_eq!(nf.rank(), 10); // C(4+2-1, 2)
    }

    #[test]
    fn sym_i_s_dual_twisted() {
        // Sym^i S^* (x) O(j) on G(2,n) is the single term mu = (j,j),
        // lambda = (0,-i)
        for n in [4u32, 5, 6] {
            let g = GrassmannData::new(2, n).unwrap();
            for i in 0..4u32 {
                for j in -2i64..3 {
                    let e = BundleExpr::sym(i, BundleExpr::dual(BundleExpr::s()))
                        * BundleExpr::o(j);
                    let nf = normalize(&e, g).unwrap();
                    assert_eq!(nf.num_terms(), 1);
                    let b = HomogBundle::new(
                        g,
                        GLWeight::det_power(j, g.quot_rank()),
                        w(&[0, -(i as i64)]),
                    )
                    .unwrap();
                    assert_eq!(nf.multiplicity(&b), 1);
                }
            }
        }
    }

    #[test]
    fn rank_examples() {
        let g = g24();
        assert_eq!(rank(&BundleExpr::cotangent_ext(), g), 5);
        assert_eq!(rank(&BundleExpr::sym(2, BundleExpr::dual(BundleExpr::s())), g), 3);
        assert_eq!(rank(&BundleExpr::wedge(2, BundleExpr::s()), g), 1);
    }

    #[test]
    fn wedge2_s_is_det() {
        let g = g24();
        let nf = normalize(&BundleExpr::wedge(2, BundleExpr::s()), g).unwrap();
        assert_eq!(nf.num_terms(), 1);
        let b = HomogBundle::new(g, w(&[0, 0]), w(&[1, 1])).unwrap();
        assert_eq!(nf.multiplicity(&b), 1);
    }

    #[test]
    fn sym_of_extension() {
        let g = g24();
        let ext = BundleExpr::tangent_ext();
        let k0 = sym_of_graded_extension(0, &ext, g).unwrap();
        assert_eq!(k0.rank(), 1);
        assert_eq!(k0.multiplicity(&HomogBundle::structure_sheaf(g)), 1);

        let k1 = sym_of_graded_extension(1, &ext, g).unwrap();
        assert_eq!(k1.rank(), 5);
        let tg = HomogBundle::new(g, w(&[1, 0]), w(&[0, -1])).unwrap();
        assert_eq!(k1.multiplicity(&tg), 1);

        let k2 = sym_of_graded_extension(2, &ext, g).unwrap();
        // O + T + Sym^2 T (two Cauchy terms): 4 irreducible terms
        assert_eq!(k2.num_terms(), 4);
        assert_eq!(k2.rank(), 1 + 4 + 10);
    }

    #[test]
    fn sym_of_extension_errors_in_normalize() {
        let g = g24();
        let e = BundleExpr::sym(2, BundleExpr::tangent_ext());
        assert!(matches!(
            normalize(&e, g),
            Err(Error::UnsupportedNode(_))
        ));
    }

    #[test]
    fn double_dual_is_identity() {
        let g = g24();
        let exprs = [
            BundleExpr::tangent(),
            BundleExpr::sym(2, BundleExpr::s()),
            BundleExpr::wedge(2, BundleExpr::tangent()),
            BundleExpr::q() * BundleExpr::o(-1),
        ];
        for e in exprs {
            let nf = normalize(&e, g).unwrap();
            let dd = normalize(&BundleExpr::dual(BundleExpr::dual(e)), g).unwrap();
            assert_eq!(nf, dd);
        }
    }

    #[test]
    fn normalize_preserves_rank_randomized() {
        let mut rng = StdRng::seed_from_u64(99);
        let g = g24();
        for _ in 0..100 {
            let e = random_expr(&mut rng, 3);
            if let Ok(nf) = normalize(&e, g) {
                assert_eq!(nf.rank(), rank(&e, g), "expr {}", e);
            }
        }
    }

    fn random_expr(rng: &mut StdRng, depth: u32) -> BundleExpr {
        let leaf = |rng: &mut StdRng| match rng.gen_range(0..4) {
            0 => BundleExpr::Sub,
            1 => BundleExpr::Quot,
            2 => BundleExpr::Line(rng.gen_range(-2..=2)),
            _ => BundleExpr::Trivial(rng.gen_range(1..=3)),
        };
        if depth == 0 {
            return leaf(rng);
        }
        match rng.gen_range(0..6) {
            0 => leaf(rng),
            1 => BundleExpr::dual(random_expr(rng, depth - 1)),
            2 => random_expr(rng, depth - 1) * random_expr(rng, depth - 1),
            3 => random_expr(rng, depth - 1) + random_expr(rng, depth - 1),
            4 => BundleExpr::sym(rng.gen_range(0..=3), leaf(rng)),
            _ => BundleExpr::wedge(rng.gen_range(0..=3), leaf(rng)),
        }
    }

    #[test]
    fn parser_round_trips() {
        let e = parse_expr("sym(2, dual(S) * Q) * O(-1)").unwrap();
        let g = g24();
        let nf = normalize(&e, g).unwrap();
        assert_eq!(nf.rank(), 10);
        let direct = normalize(
            &(BundleExpr::sym(2, BundleExpr::tangent()) * BundleExpr::o(-1)),
            g,
        )
        .unwrap();
        assert_eq!(nf, direct);

        assert!(parse_expr("sym(2,").is_err());
        assert!(parse_expr("foo(1)").is_err());
        assert!(parse_expr("S * Q trailing").is_err());
        let ext = parse_expr("ext(dual(Q) * S, triv(1))").unwrap();
        assert_eq!(rank(&ext, g), 5);
    }
}
