//! Relations among the natural derivations, the presentation of the ring of
//! differential operators, operator words and order-filtration membership.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::dermod::{Derivation, DerivationModule};
use crate::error::{Error, Result};
use crate::jacobi::IndexTuple;
use crate::polyring::Rational;
use crate::quotient::{CoordinateRing, LocalizedElement, Residue};

/// Default cap on the order bound accepted by [`order_i_membership`].
pub const DEFAULT_ORDER_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    /// Multiplication by an element of `A`.
    Mul(Residue),
    /// The natural derivation `d_{i,j}`.
    Gen(IndexTuple, IndexTuple),
}

/// `Σ c·w` where each word `w` acts right-to-left.
#[derive(Clone, Debug)]
pub struct OperatorExpr {
    ring: CoordinateRing,
    terms: Vec<(Rational, Vec<Atom>)>,
}

impl OperatorExpr {
    pub fn new(ring: &CoordinateRing, terms: Vec<(Rational, Vec<Atom>)>) -> Self {
        OperatorExpr { ring: ring.clone(), terms }
    }

    pub fn zero(ring: &CoordinateRing) -> Self {
        Self::new(ring, Vec::new())
    }

    /// The empty word.
    pub fn identity(ring: &CoordinateRing) -> Self {
        Self::word(ring, Vec::new())
    }

    pub fn word(ring: &CoordinateRing, atoms: Vec<Atom>) -> Self {
        Self::new(ring, vec![(Rational::one(), atoms)])
    }

    pub fn mul(a: &Residue) -> Self {
        Self::word(a.ring(), vec![Atom::Mul(a.clone())])
    }

    pub fn gen(ring: &CoordinateRing, i: &IndexTuple, j: &IndexTuple) -> Self {
        Self::word(ring, vec![Atom::Gen(i.clone(), j.clone())])
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Rational, Vec<Atom>)] {
        &self.terms
    }

    /// Largest number of derivation atoms in a word.
    pub fn order(&self) -> usize {
        self.terms
            .iter()
            .map(|(_, w)| w.iter().filter(|a| matches!(a, Atom::Gen(..))).count())
            .max()
            .unwrap_or(0)
    }

    pub fn plus(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        OperatorExpr { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> OperatorExpr {
        let terms = self.terms.iter().map(|(d, w)| (d * c, w.clone())).collect();
        OperatorExpr { ring: self.ring.clone(), terms }
    }

    pub fn minus(&self, other: &OperatorExpr) -> OperatorExpr {
        self.plus(&other.scale(&-Rational::one()))
    }

    /// `self ∘ other`.
    pub fn then(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut terms = Vec::new();
        for (c, w) in &self.terms {
            for (d, v) in &other.terms {
                let mut word = w.clone();
                word.extend(v.iter().cloned());
                terms.push((c * d, word));
            }
        }
        OperatorExpr { ring: self.ring.clone(), terms }
    }
}

/// Action of an operator expression on `A`.
pub fn apply_operator(dm: &DerivationModule, e: &OperatorExpr, a: &Residue) -> Result<Residue> {
    let ring = dm.ring();
    if !e.ring.same_ring(ring) || !a.ring().same_ring(ring) {
        return Err(Error::RingMismatch);
    }
    let mut cache: Vec<((IndexTuple, IndexTuple), Derivation)> = Vec::new();
    let mut acc = ring.zero();
    for (c, word) in &e.terms {
        let mut v = a.clone();
        for atom in word.iter().rev() {
            v = match atom {
                Atom::Mul(b) => b.checked_mul(&v)?,
                Atom::Gen(i, j) => {
                    let pos = match cache.iter().position(|(k, _)| k.0 == *i && k.1 == *j) {
                        Some(p) => p,
                        None => {
                            cache.push(((i.clone(), j.clone()), dm.natural_derivation(i, j)?));
                            cache.len() - 1
                        }
                    };
                    cache[pos].1.apply(&v)?
                }
            };
        }
        acc = &acc + &v.scale(c);
    }
    Ok(acc)
}

/// Exponent vectors of total degree at most `d` in `n` variables.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[k] = e;
            rec(k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| {
        let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    out
}

/// Compares two operators of order at most `bound` by their values on the
/// monomials of degree at most `bound`, which determine them.
pub fn operators_equal_up_to_order(
    dm: &DerivationModule,
    e1: &OperatorExpr,
    e2: &OperatorExpr,
    bound: usize,
) -> Result<bool> {
    for e in [e1, e2] {
        if e.order() > bound {
            return Err(Error::OrderBoundExceeded { order: e.order(), bound });
        }
    }
    let ring = dm.ring();
    for alpha in monomials_up_to(ring.nvars(), bound as u32) {
        let m = ring.monomial(&alpha);
        if apply_operator(dm, e1, &m)? != apply_operator(dm, e2, &m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Derel,
    Rd1,
    Rd2,
    Rd3,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Derel => "DEREL",
            RelationKind::Rd1 => "RD1",
            RelationKind::Rd2 => "RD2",
            RelationKind::Rd3 => "RD3",
        }
    }
}

/// One summand `sign · minor · d_{i, target_j}` of a linear relation.
#[derive(Clone, Debug, PartialEq)]
pub struct DerelTerm {
    pub sign: i32,
    pub minor: Residue,
    pub target_j: IndexTuple,
}

/// A relation `lhs = rhs` among operators.
///
/// For linear relations (`DEREL`, `RD3`) it reads
/// `Δ(i,j)·d_{i′,j′} = Σ sign·minor·d_{i,target}` with `minor` holding `Δ(i,j)`.
/// For `RD2`, `j` is the symbol's column tuple, `k` the variable and `minor`
/// the commutator constant. `RD1` relations carry either `generator` (an
/// equation `f = 0`) or the pair `k`, `l` (commutativity).
#[derive(Clone, Debug)]
pub struct Relation {
    pub kind: RelationKind,
    pub i: IndexTuple,
    pub iprime: IndexTuple,
    pub j: IndexTuple,
    pub jprime: IndexTuple,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub generator: Option<usize>,
    pub minor: Option<Residue>,
    pub terms: Vec<DerelTerm>,
    pub lhs: OperatorExpr,
    pub rhs: OperatorExpr,
}

impl Relation {
    fn blank(kind: RelationKind, ring: &CoordinateRing) -> Self {
        Relation {
            kind,
            i: IndexTuple::empty(),
            iprime: IndexTuple::empty(),
            j: IndexTuple::empty(),
            jprime: IndexTuple::empty(),
            k: None,
            l: None,
            generator: None,
            minor: None,
            terms: Vec::new(),
            lhs: OperatorExpr::zero(ring),
            rhs: OperatorExpr::zero(ring),
        }
    }

    /// Human-readable form with `d(i;j)` symbols, 1-based.
    pub fn show(&self) -> String {
        let names = self.lhs.ring.names();
        let sym = |i: &IndexTuple, j: &IndexTuple| format!("d{}{}", i, j);
        match self.kind {
            RelationKind::Rd1 => match (self.generator, self.k, self.l) {
                (Some(g), _, _) => format!("{} = 0", self.lhs.ring.show(&self.lhs.ring.generators()[g])),
                (_, Some(k), Some(l)) => format!("{0}*{1} = {1}*{0}", names[k], names[l]),
                _ => String::from("?"),
            },
            RelationKind::Rd2 => {
                let k = self.k.unwrap_or(0);
                let c = self.minor.as_ref().map(|m| format!("{}", m)).unwrap_or_default();
                let d = sym(&self.i, &self.j);
                format!("{d}*{x} = {x}*{d} + {c}", x = names[k])
            }
            RelationKind::Derel | RelationKind::Rd3 => {
                let lhs = self.minor.as_ref().map(|m| format!("{}", m)).unwrap_or_default();
                let mut s = format!("({})*{} =", lhs, sym(&self.iprime, &self.jprime));
                if self.terms.is_empty() {
                    s.push_str(" 0");
                }
                for (n, t) in self.terms.iter().enumerate() {
                    let sign = if t.sign < 0 { "-" } else if n == 0 { "" } else { "+" };
                    let sep = if n == 0 && t.sign > 0 { "" } else { " " };
                    s.push_str(&format!(" {}{}({})*{}", sign, sep, t.minor, sym(&self.i, &t.target_j)));
                }
                s
            }
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.show())
    }
}

/// `[d_{i,j}, x_k]`: the signed minor at the position of `k` in `j`, or 0.
pub fn rd2_constant(dm: &DerivationModule, i: &IndexTuple, j: &IndexTuple, k: usize) -> Result<Residue> {
    let r = dm.rank();
    if i.len() != r || j.len() != r + 1 {
        return Err(Error::TupleSize(format!("expected |i| = {} and |j| = {}, got {} and {}", r, r + 1, i, j)));
    }
    let n = dm.ring().nvars();
    if k >= n {
        return Err(Error::VariableOutOfRange { index: k, nvars: n });
    }
    match j.as_slice().iter().position(|&c| c == k) {
        None => Ok(dm.ring().zero()),
        Some(s) => {
            let m = dm.jacobi().minor(i, &j.remove_at(s))?;
            // (−1)^{r+1+(s+1)}
            Ok(if (r + s).is_multiple_of(2) { m } else { -m })
        }
    }
}

fn linear_relation(
    dm: &DerivationModule,
    kind: RelationKind,
    i: &IndexTuple,
    ip: &IndexTuple,
    j: &IndexTuple,
    jp: &IndexTuple,
) -> Result<Relation> {
    let ring = dm.ring();
    let jd = dm.jacobi();
    let r = dm.rank();
    let delta = jd.minor(i, j)?;
    let mut terms = Vec::new();
    for (nu, &c) in jp.as_slice().iter().enumerate() {
        if j.contains(c) {
            continue;
        }
        let (target, eps) = j.append_sorted(c).expect("c is not in j");
        let base = if (r + nu).is_multiple_of(2) { 1 } else { -1 };
        terms.push(DerelTerm { sign: base * eps, minor: jd.minor(ip, &jp.remove_at(nu))?, target_j: target });
    }
    let lhs = OperatorExpr::mul(&delta).then(&OperatorExpr::gen(ring, ip, jp));
    let mut rhs = OperatorExpr::zero(ring);
    for t in &terms {
        let w = OperatorExpr::mul(&t.minor).then(&OperatorExpr::gen(ring, i, &t.target_j));
        rhs = rhs.plus(&w.scale(&Rational::from_integer(t.sign.into())));
    }
    Ok(Relation {
        i: i.clone(),
        iprime: ip.clone(),
        j: j.clone(),
        jprime: jp.clone(),
        minor: Some(delta),
        terms,
        lhs,
        rhs,
        ..Relation::blank(kind, ring)
    })
}

/// One linear relation per `(i, i′, j, j′) ∈ I_r × I_r × J_r × J_{r+1}`.
pub fn derel_instances(dm: &DerivationModule) -> Result<Vec<Relation>> {
    relations_of_kind(dm, RelationKind::Derel)
}

fn relations_of_kind(dm: &DerivationModule, kind: RelationKind) -> Result<Vec<Relation>> {
    let jd = dm.jacobi();
    let mut out = Vec::new();
    for i in jd.nonsingular_rows() {
        for ip in jd.nonsingular_rows() {
            for j in jd.nonsingular_cols() {
                for jp in jd.critical_set() {
                    out.push(linear_relation(dm, kind, i, ip, j, jp)?);
                }
            }
        }
    }
    Ok(out)
}

/// Compares both sides of a linear relation as derivations, coefficientwise.
pub fn verify_derel(dm: &DerivationModule, rel: &Relation) -> Result<bool> {
    if !matches!(rel.kind, RelationKind::Derel | RelationKind::Rd3) {
        return Err(Error::Malformed(format!("{} is not a linear relation", rel.kind.name())));
    }
    let delta = rel.minor.as_ref().ok_or_else(|| Error::Malformed("missing left-hand minor".into()))?;
    let lhs = dm.natural_derivation(&rel.iprime, &rel.jprime)?.mul_residue(delta);
    let mut rhs = Derivation::zero(dm.ring());
    for t in &rel.terms {
        if t.sign.abs() != 1 {
            return Err(Error::Malformed(format!("sign {}", t.sign)));
        }
        let d = dm.natural_derivation(&rel.i, &t.target_j)?.mul_residue(&t.minor);
        let d = if t.sign < 0 { d.scale(&-Rational::one()) } else { d };
        rhs = rhs.checked_add(&d)?;
    }
    Ok(lhs == rhs)
}

/// Generators and defining relations of the ring of differential operators.
#[derive(Clone, Debug)]
pub struct PresentationDoc {
    pub variables: Vec<String>,
    pub d_symbols: Vec<(IndexTuple, IndexTuple)>,
    pub rd1: Vec<Relation>,
    pub rd2: Vec<Relation>,
    pub rd3: Vec<Relation>,
}

pub fn presentation(dm: &DerivationModule) -> Result<PresentationDoc> {
    let ring = dm.ring();
    let n = ring.nvars();
    let mut rd1 = Vec::new();
    for (g, f) in ring.generators().iter().enumerate() {
        let fbar = ring.project(f);
        rd1.push(Relation { generator: Some(g), lhs: OperatorExpr::mul(&fbar), ..Relation::blank(RelationKind::Rd1, ring) });
    }
    for k in 0..n {
        for l in k + 1..n {
            let (xk, xl) = (OperatorExpr::mul(&ring.var(k)), OperatorExpr::mul(&ring.var(l)));
            rd1.push(Relation {
                k: Some(k),
                l: Some(l),
                lhs: xk.then(&xl),
                rhs: xl.then(&xk),
                ..Relation::blank(RelationKind::Rd1, ring)
            });
        }
    }
    let d_symbols: Vec<(IndexTuple, IndexTuple)> =
        dm.natural_generators().iter().map(|(i, j, _)| (i.clone(), j.clone())).collect();
    let mut rd2 = Vec::new();
    for (i, j) in &d_symbols {
        for k in 0..n {
            let c = rd2_constant(dm, i, j, k)?;
            let (d, x) = (OperatorExpr::gen(ring, i, j), OperatorExpr::mul(&ring.var(k)));
            rd2.push(Relation {
                i: i.clone(),
                j: j.clone(),
                k: Some(k),
                lhs: d.then(&x),
                rhs: x.then(&d).plus(&OperatorExpr::mul(&c)),
                minor: Some(c),
                ..Relation::blank(RelationKind::Rd2, ring)
            });
        }
    }
    let rd3 = relations_of_kind(dm, RelationKind::Rd3)?;
    Ok(PresentationDoc { variables: ring.names().to_vec(), d_symbols, rd1, rd2, rd3 })
}

/// Per-relation verdicts of [`verify_presentation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub rd1: Vec<bool>,
    pub rd2: Vec<bool>,
    pub rd3: Vec<bool>,
}

impl PresentationReport {
    pub fn rd1_ok(&self) -> bool {
        self.rd1.iter().all(|b| *b)
    }

    pub fn rd2_ok(&self) -> bool {
        self.rd2.iter().all(|b| *b)
    }

    pub fn rd3_ok(&self) -> bool {
        self.rd3.iter().all(|b| *b)
    }

    pub fn all_ok(&self) -> bool {
        self.rd1_ok() && self.rd2_ok() && self.rd3_ok()
    }
}

/// Checks every relation of the presentation. RD2 and RD3 are compared as
/// operators on monomials of degree at most 1; RD3 is also compared
/// coefficientwise.
pub fn verify_presentation(dm: &DerivationModule) -> Result<PresentationReport> {
    let doc = presentation(dm)?;
    let ring = dm.ring();
    let mut rd1 = Vec::new();
    for rel in &doc.rd1 {
        let ok = match (rel.generator, rel.k, rel.l) {
            (Some(g), _, _) => ring.project(&ring.generators()[g]).is_zero(),
            (_, Some(k), Some(l)) => {
                let (a, b) = (ring.var(k), ring.var(l));
                &a * &b == &b * &a && operators_equal_up_to_order(dm, &rel.lhs, &rel.rhs, 0)?
            }
            _ => false,
        };
        rd1.push(ok);
    }
    let mut rd2 = Vec::new();
    for rel in &doc.rd2 {
        rd2.push(operators_equal_up_to_order(dm, &rel.lhs, &rel.rhs, 1)?);
    }
    let mut rd3 = Vec::new();
    for rel in &doc.rd3 {
        rd3.push(verify_derel(dm, rel)? && operators_equal_up_to_order(dm, &rel.lhs, &rel.rhs, 1)?);
    }
    Ok(PresentationReport { rd1, rd2, rd3 })
}

/// The commuting localized derivations `Δ^{-1}∂_{i; j, c}`, `c` outside `j`,
/// for a pivot `(i, j) ∈ I_r × J_r`.
pub struct PivotFrame {
    delta: Residue,
    complement: Vec<usize>,
    derivations: Vec<Derivation>,
    delta_images: Vec<Residue>,
}

impl PivotFrame {
    pub fn new(dm: &DerivationModule, i: &IndexTuple, j: &IndexTuple) -> Result<Self> {
        let jd = dm.jacobi();
        if !jd.is_nonsingular_row(i) || !jd.is_nonsingular_col(j) {
            return Err(Error::SingularTuple(format!("pivot {} x {}", i, j)));
        }
        let delta = jd.minor(i, j)?;
        let mut complement = Vec::new();
        let mut derivations = Vec::new();
        let mut delta_images = Vec::new();
        for (c, d) in dm.pivot_derivations(i, j)? {
            delta_images.push(d.apply(&delta)?);
            complement.push(c);
            derivations.push(d);
        }
        Ok(PivotFrame { delta, complement, derivations, delta_images })
    }

    pub fn delta(&self) -> &Residue {
        &self.delta
    }

    /// Variables outside the pivot columns, indexing multi-indices.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// `∂_{i; j, c_k}` (not divided by `Δ`).
    pub fn derivation(&self, k: usize) -> &Derivation {
        &self.derivations[k]
    }

    /// `D_k(num/Δ^t) = (∂(num)·Δ − t·num·∂(Δ)) / Δ^{t+2}` with `∂ = ∂_{i;j,c_k}`.
    fn step(&self, k: usize, num: &Residue, t: u32) -> Result<(Residue, u32)> {
        let d = &self.derivations[k];
        let mut out = &d.apply(num)? * &self.delta;
        if t > 0 {
            let tr = Rational::from_integer(t.into());
            out = &out - &(num * &self.delta_images[k]).scale(&tr);
        }
        Ok((out, t + 2))
    }

    /// `D^α(a)` as a fraction over `Δ`.
    pub fn apply_power(&self, alpha: &[u32], a: &Residue) -> Result<LocalizedElement> {
        if alpha.len() != self.complement.len() {
            return Err(Error::Malformed(format!(
                "multi-index of length {} over {} complement variables",
                alpha.len(),
                self.complement.len()
            )));
        }
        let (mut num, mut t) = (a.clone(), 0u32);
        for (k, &e) in alpha.iter().enumerate() {
            for _ in 0..e {
                (num, t) = self.step(k, &num, t)?;
            }
        }
        LocalizedElement::new(num, self.delta.clone(), t)
    }

    /// `Σ coeff·D^α(a)`.
    pub fn apply(&self, candidate: &[(LocalizedElement, Vec<u32>)], a: &Residue) -> Result<LocalizedElement> {
        let mut acc = LocalizedElement::from_residue(a.ring().zero());
        for (c, alpha) in candidate {
            acc = acc.checked_add(&c.checked_mul(&self.apply_power(alpha, a)?)?)?;
        }
        Ok(acc)
    }
}

/// Decides whether `Σ coeff·D^α` maps every monomial of degree at most
/// `bound` into `A`, with the default cap on `bound`.
pub fn order_i_membership(
    dm: &DerivationModule,
    i: &IndexTuple,
    j: &IndexTuple,
    candidate: &[(LocalizedElement, Vec<u32>)],
    bound: usize,
) -> Result<bool> {
    order_i_membership_capped(dm, i, j, candidate, bound, DEFAULT_ORDER_CAP)
}

pub fn order_i_membership_capped(
    dm: &DerivationModule,
    i: &IndexTuple,
    j: &IndexTuple,
    candidate: &[(LocalizedElement, Vec<u32>)],
    bound: usize,
    cap: usize,
) -> Result<bool> {
    if bound > cap {
        return Err(Error::OrderBoundExceeded { order: bound, bound: cap });
    }
    let frame = PivotFrame::new(dm, i, j)?;
    for (c, alpha) in candidate {
        if !c.ring().same_ring(dm.ring()) {
            return Err(Error::RingMismatch);
        }
        if alpha.len() != frame.complement.len() {
            return Err(Error::Malformed(format!("multi-index {:?} has the wrong length", alpha)));
        }
        let order = alpha.iter().sum::<u32>() as usize;
        if order > bound {
            return Err(Error::OrderBoundExceeded { order, bound });
        }
    }
    let ring = dm.ring();
    for beta in monomials_up_to(ring.nvars(), bound as u32) {
        let value = frame.apply(candidate, &ring.monomial(&beta))?;
        if value.in_ring().is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
