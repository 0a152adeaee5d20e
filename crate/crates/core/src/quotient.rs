//! The coordinate ring `A = P_n/I`, its residues, and fractions `a/Δ^t`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, module_buchberger, GroebnerBasis};
use crate::polyring::{rat, Monomial, MonomialOrder, Polynomial, Rational};

/// Random product pairs tried by the zero-divisor probe.
pub const PROBE_PAIRS: usize = 20;
const PROBE_SEED: u64 = 0x5eed_d1ff;

struct RingData {
    names: Vec<String>,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    gb: GroebnerBasis,
    dimension: usize,
}

/// Cheap-to-clone handle on a presented coordinate ring.
#[derive(Clone)]
pub struct CoordinateRing(Arc<RingData>);

impl fmt::Debug for CoordinateRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoordinateRing")
            .field("variables", &self.0.names)
            .field("generators", &self.0.generators.len())
            .field("order", &self.0.order)
            .finish()
    }
}

impl CoordinateRing {
    /// Presents `K[names]/(generators)`.
    ///
    /// Rejects the unit ideal and maximal ideals, and runs a randomized
    /// zero-divisor probe; primality itself is the caller's assertion.
    pub fn new(names: Vec<String>, generators: Vec<Polynomial>, order: MonomialOrder) -> Result<Self> {
        let ring = Self::without_probe(names, generators, order)?;
        ring.probe_zero_divisors()?;
        Ok(ring)
    }

    /// Like [`CoordinateRing::new`] but skips the zero-divisor probe.
    pub fn without_probe(names: Vec<String>, generators: Vec<Polynomial>, order: MonomialOrder) -> Result<Self> {
        let n = names.len();
        let generators: Vec<Polynomial> = generators
            .into_iter()
            .map(|g| {
                if g.nvars() != n {
                    Err(Error::VariableCountMismatch { left: n, right: g.nvars() })
                } else {
                    Ok(g.with_order(order))
                }
            })
            .collect::<Result<_>>()?;
        let gb = buchberger(n, &generators, order)?;
        let dimension = gb.krull_dimension()?;
        if dimension == 0 {
            return Err(Error::MaximalIdeal);
        }
        Ok(CoordinateRing(Arc::new(RingData { names, generators, order, gb, dimension })))
    }

    fn probe_zero_divisors(&self) -> Result<()> {
        if self.gb().is_zero_ideal() {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
        for _ in 0..PROBE_PAIRS {
            let a = self.project(&self.random_poly(&mut rng, 3));
            let b = self.project(&self.random_poly(&mut rng, 3));
            if !a.is_zero() && !b.is_zero() && (&a * &b).is_zero() {
                return Err(Error::NotPrime { left: format!("{}", a), right: format!("{}", b) });
            }
        }
        Ok(())
    }

    /// Sparse random polynomial of total degree at most `max_degree`, with
    /// one to three terms and small integer coefficients.
    pub fn random_poly<R: Rng>(&self, rng: &mut R, max_degree: u32) -> Polynomial {
        let n = self.nvars();
        let nterms = rng.gen_range(1..=3);
        let terms = (0..nterms).map(|_| {
            let mut exps = vec![0u32; n];
            let deg = rng.gen_range(0..=max_degree);
            for _ in 0..deg {
                if n > 0 {
                    exps[rng.gen_range(0..n)] += 1;
                }
            }
            let mut c = rng.gen_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            (Monomial::from_exponents(exps), rat(c))
        });
        Polynomial::from_terms(n, self.order(), terms)
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    /// The generators `f_1..f_m`, verbatim.
    pub fn generators(&self) -> &[Polynomial] {
        &self.0.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.0.gb
    }

    pub fn krull_dimension(&self) -> usize {
        self.0.dimension
    }

    pub fn same_ring(&self, other: &CoordinateRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// The canonical residue `p + I`.
    pub fn project(&self, p: &Polynomial) -> Residue {
        Residue { ring: self.clone(), rep: self.0.gb.normal_form(p) }
    }

    pub fn zero(&self) -> Residue {
        Residue { ring: self.clone(), rep: Polynomial::zero(self.nvars(), self.order()) }
    }

    pub fn one(&self) -> Residue {
        self.project(&Polynomial::one(self.nvars(), self.order()))
    }

    pub fn constant(&self, c: Rational) -> Residue {
        self.project(&Polynomial::constant(self.nvars(), self.order(), c))
    }

    /// The coordinate function `x̄_k` (0-based).
    pub fn var(&self, k: usize) -> Residue {
        self.project(&Polynomial::var(self.nvars(), k, self.order()))
    }

    /// Residue of the monomial `x^exps`.
    pub fn monomial(&self, exps: &[u32]) -> Residue {
        self.project(&Polynomial::monomial(Monomial::from_exponents(exps.to_vec()), Rational::one(), self.order()))
    }

    pub fn polynomial(&self, exps: Vec<u32>, c: Rational) -> Polynomial {
        Polynomial::monomial(Monomial::from_exponents(exps), c, self.order())
    }

    /// Formats a polynomial with this ring's variable names.
    pub fn show(&self, p: &Polynomial) -> String {
        format!("{}", p.display(&self.0.names))
    }
}

/// An element of `A`, held as its normal form.
#[derive(Clone)]
pub struct Residue {
    ring: CoordinateRing,
    rep: Polynomial,
}

impl Residue {
    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    /// The normal-form representative in `P_n`.
    pub fn lift(&self) -> &Polynomial {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    fn check(&self, other: &Residue) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue { ring: self.ring.clone(), rep: &self.rep + &other.rep })
    }

    pub fn checked_sub(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(Residue { ring: self.ring.clone(), rep: &self.rep - &other.rep })
    }

    pub fn checked_mul(&self, other: &Residue) -> Result<Residue> {
        self.check(other)?;
        Ok(self.ring.project(&(&self.rep * &other.rep)))
    }

    pub fn scale(&self, c: &Rational) -> Residue {
        Residue { ring: self.ring.clone(), rep: self.rep.scale(c) }
    }

    pub fn pow(&self, e: u32) -> Residue {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Value at a rational point of the representative.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        self.rep.eval(point)
    }
}

impl PartialEq for Residue {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.rep == other.rep
    }
}

impl Eq for Residue {}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep.display(self.ring.names()))
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

macro_rules! residue_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Residue> for &Residue {
            type Output = Residue;
            fn $method(self, rhs: &Residue) -> Residue {
                self.$checked(rhs).expect("residues from different rings")
            }
        }
        impl $trait<Residue> for Residue {
            type Output = Residue;
            fn $method(self, rhs: Residue) -> Residue {
                (&self).$method(&rhs)
            }
        }
    };
}

residue_binop!(Add, add, checked_add);
residue_binop!(Sub, sub, checked_sub);
residue_binop!(Mul, mul, checked_mul);

impl Neg for &Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue { ring: self.ring.clone(), rep: -&self.rep }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        -&self
    }
}

/// The fraction `numerator / delta^power` in the localization `A_Δ`.
///
/// Not normalized; equality is decided by cross-multiplication, which is
/// sound because `A` is a domain.
#[derive(Clone)]
pub struct LocalizedElement {
    numerator: Residue,
    delta: Residue,
    power: u32,
}

impl LocalizedElement {
    pub fn new(numerator: Residue, delta: Residue, power: u32) -> Result<Self> {
        numerator.check(&delta)?;
        if delta.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { numerator, delta, power })
    }

    pub fn from_residue(a: Residue) -> Self {
        let one = a.ring.one();
        Self { numerator: a, delta: one, power: 0 }
    }

    /// `1/delta`.
    pub fn inverse_of(delta: &Residue) -> Result<Self> {
        Self::new(delta.ring.one(), delta.clone(), 1)
    }

    pub fn numerator(&self) -> &Residue {
        &self.numerator
    }

    pub fn delta(&self) -> &Residue {
        &self.delta
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.numerator.ring
    }

    /// `delta^power`.
    pub fn denominator(&self) -> Residue {
        self.delta.pow(self.power)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Decides whether the fraction lies in `A`, i.e. whether
    /// `numerator ∈ Δ^t·A`, returning the witness `w` with `w·Δ^t = numerator`.
    pub fn in_ring(&self) -> Option<Residue> {
        if self.power == 0 {
            return Some(self.numerator.clone());
        }
        let ring = self.ring();
        let (n, order) = (ring.nvars(), ring.order());
        let zero = Polynomial::zero(n, order);
        let denominator = self.denominator();
        // (num, 0) ≡ (0, -w) modulo <(Δ^t, 1), (g, 0)> iff num = w·Δ^t mod I
        let mut gens = vec![vec![denominator.lift().clone(), Polynomial::one(n, order)]];
        gens.extend(ring.gb().generators().iter().map(|g| vec![g.clone(), zero.clone()]));
        let mb = module_buchberger(n, 2, &gens, order).expect("well-formed module generators");
        let rem = mb
            .reduce(&[self.numerator.lift().clone(), zero])
            .expect("rank 2 vector");
        if !rem[0].is_zero() {
            return None;
        }
        let witness = ring.project(&-&rem[1]);
        debug_assert!(&witness * &denominator == self.numerator);
        Some(witness)
    }

    fn scaled_denominators(&self, other: &Self) -> (Residue, Residue, Residue, u32) {
        // returns (a', b', common delta, common power) with a/D1 = a'/D, b/D2 = b'/D
        if self.delta == other.delta {
            let p = self.power.max(other.power);
            let a = &self.numerator * &self.delta.pow(p - self.power);
            let b = &other.numerator * &other.delta.pow(p - other.power);
            return (a, b, self.delta.clone(), p);
        }
        if other.power == 0 {
            let b = &other.numerator * &self.denominator();
            return (self.numerator.clone(), b, self.delta.clone(), self.power);
        }
        if self.power == 0 {
            let a = &self.numerator * &other.denominator();
            return (a, other.numerator.clone(), other.delta.clone(), other.power);
        }
        let d1 = self.denominator();
        let d2 = other.denominator();
        let a = &self.numerator * &d2;
        let b = &other.numerator * &d1;
        (a, b, &d1 * &d2, 1)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.numerator.check(&other.numerator)?;
        let (a, b, delta, power) = self.scaled_denominators(other);
        Ok(Self { numerator: &a + &b, delta, power })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.numerator.check(&other.numerator)?;
        let numerator = &self.numerator * &other.numerator;
        if self.delta == other.delta {
            return Ok(Self { numerator, delta: self.delta.clone(), power: self.power + other.power });
        }
        if other.power == 0 {
            return Ok(Self { numerator, delta: self.delta.clone(), power: self.power });
        }
        if self.power == 0 {
            return Ok(Self { numerator, delta: other.delta.clone(), power: other.power });
        }
        Ok(Self { numerator, delta: &self.denominator() * &other.denominator(), power: 1 })
    }

    /// Multiplies by an element of `A`.
    pub fn mul_residue(&self, a: &Residue) -> Self {
        Self { numerator: &self.numerator * a, delta: self.delta.clone(), power: self.power }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { numerator: self.numerator.scale(c), delta: self.delta.clone(), power: self.power }
    }

    pub fn show(&self) -> String {
        if self.power == 0 {
            format!("{}", self.numerator)
        } else if self.power == 1 {
            format!("({})/({})", self.numerator, self.delta)
        } else {
            format!("({})/({})^{}", self.numerator, self.delta, self.power)
        }
    }
}

impl PartialEq for LocalizedElement {
    fn eq(&self, other: &Self) -> bool {
        if !self.numerator.ring.same_ring(&other.numerator.ring) {
            return false;
        }
        let (a, b, _, _) = self.scaled_denominators(other);
        a == b
    }
}

impl fmt::Debug for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.show())
    }
}

impl Neg for &LocalizedElement {
    type Output = LocalizedElement;
    fn neg(self) -> LocalizedElement {
        LocalizedElement { numerator: -&self.numerator, delta: self.delta.clone(), power: self.power }
    }
}

impl Add for &LocalizedElement {
    type Output = LocalizedElement;
    fn add(self, rhs: &LocalizedElement) -> LocalizedElement {
        self.checked_add(rhs).expect("fractions from different rings")
    }
}

impl Sub for &LocalizedElement {
    type Output = LocalizedElement;
    fn sub(self, rhs: &LocalizedElement) -> LocalizedElement {
        self.checked_sub(rhs).expect("fractions from different rings")
    }
}

impl Mul for &LocalizedElement {
    type Output = LocalizedElement;
    fn mul(self, rhs: &LocalizedElement) -> LocalizedElement {
        self.checked_mul(rhs).expect("fractions from different rings")
    }
}
