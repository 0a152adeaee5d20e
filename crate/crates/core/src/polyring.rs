//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] carries its variable count and [`MonomialOrder`]; its
//! terms are kept sorted descending under that order with no zero
//! coefficients, so structural equality is polynomial equality.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest matrix accepted by [`determinant`].
pub const DEFAULT_DET_BOUND: usize = 8;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[k] = 1;
        Self { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// True if `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(k, _)| k)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    DegLex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegLex => a.degree().cmp(&b.degree()).then_with(|| a.exps.cmp(&b.exps)),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // smaller exponent in the last differing variable wins
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::DegLex => "deglex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "degrevlex" => Some(MonomialOrder::DegRevLex),
            "deglex" => Some(MonomialOrder::DegLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Self { nvars, order, terms: Vec::new() }
    }

    pub fn one(nvars: usize, order: MonomialOrder) -> Self {
        Self::constant(nvars, order, Rational::one())
    }

    pub fn constant(nvars: usize, order: MonomialOrder, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c, order)
    }

    pub fn var(nvars: usize, k: usize, order: MonomialOrder) -> Self {
        Self::monomial(Monomial::var(nvars, k), Rational::one(), order)
    }

    pub fn monomial(m: Monomial, c: Rational, order: MonomialOrder) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars, order);
        }
        Self { nvars, order, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(nvars: usize, order: MonomialOrder, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut raw: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        raw.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            debug_assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { nvars, order, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Same polynomial with its terms re-sorted for another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial { nvars: self.nvars, order, terms }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.compare(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate_other { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate_other { -c } else { c.clone() })),
        );
        Polynomial { nvars: self.nvars, order, terms: out }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.nvars, self.order));
        }
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(self.nvars, self.order);
        for (m, c) in &small.terms {
            acc = acc.merge(&big.mul_term(m, c), false);
        }
        Ok(acc)
    }

    /// Multiplies by the single term `c * m`. Term order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    /// `self - c * m * other`, the elementary reduction step.
    pub fn sub_term_multiple(&self, c: &Rational, m: &Monomial, other: &Polynomial) -> Polynomial {
        self.merge(&other.mul_term(m, c), true)
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Appends a term smaller than every existing term.
    pub(crate) fn push_trailing(&mut self, m: Monomial, c: Rational) {
        debug_assert!(self
            .terms
            .last()
            .is_none_or(|(lm, _)| self.order.compare(lm, &m) == Ordering::Greater));
        if !c.is_zero() {
            self.terms.push((m, c));
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars, self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `k` (0-based).
    pub fn partial(&self, k: usize) -> Result<Polynomial> {
        if k >= self.nvars {
            return Err(Error::VariableOutOfRange { index: k, nvars: self.nvars });
        }
        let terms = self.terms.iter().filter(|(m, _)| m.exps[k] > 0).map(|(m, c)| {
            let e = m.exps[k];
            let mut exps = m.exps.clone();
            exps[k] -= 1;
            (Monomial { exps }, c * rat(e as i64))
        });
        Ok(Polynomial::from_terms(self.nvars, self.order, terms))
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(&m.exps) {
                for _ in 0..*e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Displays with the given variable names, e.g. `2/3*x*y^2 - 1`.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a, S> {
    poly: &'a Polynomial,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write!(f, "{}", abs)?;
                first = false;
            }
            for (k, e) in m.exps.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                match self.names.get(k) {
                    Some(name) => f.write_str(name.as_ref())?,
                    None => write!(f, "x{}", k + 1)?,
                }
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("incompatible polynomial rings")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Determinant of a square polynomial matrix, bounded by [`DEFAULT_DET_BOUND`].
pub fn determinant(matrix: &[Vec<Polynomial>]) -> Result<Polynomial> {
    determinant_bounded(matrix, DEFAULT_DET_BOUND)
}

/// Laplace expansion along rows, memoised on the set of used columns.
pub fn determinant_bounded(matrix: &[Vec<Polynomial>], bound: usize) -> Result<Polynomial> {
    let size = matrix.len();
    for row in matrix {
        if row.len() != size {
            return Err(Error::NonSquare { rows: size, cols: row.len() });
        }
    }
    if size > bound {
        return Err(Error::DeterminantTooLarge { size, bound });
    }
    if size == 0 {
        // the empty minor is 1; caller supplies ring shape via a nonempty matrix otherwise
        return Err(Error::Malformed("empty matrix has no ambient ring; use Polynomial::one".into()));
    }
    let nvars = matrix[0][0].nvars();
    let order = matrix[0][0].order();
    for row in matrix {
        for e in row {
            if e.nvars() != nvars {
                return Err(Error::VariableCountMismatch { left: nvars, right: e.nvars() });
            }
            if e.order() != order {
                return Err(Error::OrderMismatch);
            }
        }
    }
    let mut memo: Vec<Option<Polynomial>> = vec![None; 1 << size];
    Ok(det_rec(matrix, 0, &mut memo, nvars, order))
}

fn det_rec(
    matrix: &[Vec<Polynomial>],
    used: usize,
    memo: &mut Vec<Option<Polynomial>>,
    nvars: usize,
    order: MonomialOrder,
) -> Polynomial {
    let size = matrix.len();
    let row = used.count_ones() as usize;
    if row == size {
        return Polynomial::one(nvars, order);
    }
    if let Some(p) = &memo[used] {
        return p.clone();
    }
    let mut acc = Polynomial::zero(nvars, order);
    let mut free_before = 0usize;
    for col in 0..size {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = &matrix[row][col];
        if !entry.is_zero() {
            let sub = det_rec(matrix, used | (1 << col), memo, nvars, order);
            if !sub.is_zero() {
                let prod = entry * &sub;
                acc = if free_before.is_multiple_of(2) { acc + prod } else { acc - prod };
            }
        }
        free_before += 1;
    }
    memo[used] = Some(acc.clone());
    acc
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for c in col..ncols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
