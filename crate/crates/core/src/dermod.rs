//! Derivations of the coordinate ring: the natural derivations built from
//! Jacobian minors, membership tests and reconstruction from values.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, module_buchberger, GroebnerBasis, ModuleBasis};
use crate::jacobi::{combinations, IndexTuple, JacobiData};
use crate::polyring::{Polynomial, Rational};
use crate::quotient::{CoordinateRing, LocalizedElement, Residue};

/// `Σ a_k ∂_k` with coefficients in `A`.
#[derive(Clone)]
pub struct Derivation {
    ring: CoordinateRing,
    coeffs: Vec<Residue>,
}

impl Derivation {
    pub fn new(ring: &CoordinateRing, coeffs: Vec<Residue>) -> Result<Self> {
        if coeffs.len() != ring.nvars() {
            return Err(Error::LengthMismatch { expected: ring.nvars(), got: coeffs.len() });
        }
        if coeffs.iter().any(|c| !c.ring().same_ring(ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Derivation { ring: ring.clone(), coeffs })
    }

    pub fn zero(ring: &CoordinateRing) -> Self {
        Derivation { ring: ring.clone(), coeffs: (0..ring.nvars()).map(|_| ring.zero()).collect() }
    }

    /// The coordinate derivation `∂_k`; generally not a derivation of `A`.
    pub fn coordinate(ring: &CoordinateRing, k: usize) -> Self {
        let mut d = Self::zero(ring);
        d.coeffs[k] = ring.one();
        d
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    pub fn coefficients(&self) -> &[Residue] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> &Residue {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Residue::is_zero)
    }

    /// `Σ a_k · (∂p/∂x_k + I)` where `p` lifts `a`.
    pub fn apply(&self, a: &Residue) -> Result<Residue> {
        if !a.ring().same_ring(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut acc = Polynomial::zero(self.ring.nvars(), self.ring.order());
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(c.lift() * &a.lift().partial(k)?);
        }
        Ok(self.ring.project(&acc))
    }

    pub fn checked_add(&self, other: &Derivation) -> Result<Derivation> {
        if !self.ring.same_ring(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Derivation { ring: self.ring.clone(), coeffs })
    }

    pub fn mul_residue(&self, a: &Residue) -> Derivation {
        Derivation { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Lifted coefficient vector in `P_n^n`.
    pub fn lift(&self) -> Vec<Polynomial> {
        self.coeffs.iter().map(|c| c.lift().clone()).collect()
    }

    /// Renders as `(2*y)*d_x + (3*x^2)*d_y`.
    pub fn show(&self) -> String {
        let names = self.ring.names();
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(format!("d_{}", names[k]));
            } else {
                parts.push(format!("({})*d_{}", c, names[k]));
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ")
    }
}

impl PartialEq for Derivation {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.coeffs == other.coeffs
    }
}

impl Eq for Derivation {}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.show())
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.show())
    }
}

/// A derivation `A → A/a_{s+1}`, coefficients reduced modulo `I + a_{s+1}`.
#[derive(Clone, Debug)]
pub struct HigherDerivation {
    level: usize,
    coeffs: Vec<Polynomial>,
    gb: GroebnerBasis,
}

impl HigherDerivation {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// The basis of `I + lift(a_{s+1})` the coefficients are reduced by.
    pub fn modulus(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn apply(&self, a: &Residue) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.gb.nvars(), self.gb.order());
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &(c * &a.lift().partial(k)?);
        }
        Ok(self.gb.normal_form(&acc))
    }

    /// Compares with an ordinary derivation modulo `a_{s+1}`.
    pub fn agrees_with(&self, d: &Derivation) -> bool {
        self.coeffs
            .iter()
            .zip(d.coefficients())
            .all(|(c, e)| *c == self.gb.normal_form(e.lift()))
    }
}

impl PartialEq for HigherDerivation {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.coeffs == other.coeffs
    }
}

/// Checks `J̄·a = 0` in `A^m`.
pub fn is_derivation(ring: &CoordinateRing, matrix: &[Vec<Residue>], a: &[Residue]) -> Result<bool> {
    if a.len() != ring.nvars() {
        return Err(Error::LengthMismatch { expected: ring.nvars(), got: a.len() });
    }
    for row in matrix {
        let mut acc = Polynomial::zero(ring.nvars(), ring.order());
        for (e, c) in row.iter().zip(a) {
            acc = &acc + &(e.lift() * c.lift());
        }
        if !ring.project(&acc).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficients `(−1)^{s+1+k} Δ(i; cols minus cols_k)` of the determinant
/// derivation for columns in the given order, `k` 1-based.
fn signed_minors(jd: &JacobiData, i: &IndexTuple, cols: &[usize]) -> Result<Vec<(usize, Residue)>> {
    let s = i.len();
    let sorted = cols.windows(2).all(|w| w[0] < w[1]);
    let mut out = Vec::with_capacity(cols.len());
    for pos in 0..cols.len() {
        let mut rest = cols.to_vec();
        rest.remove(pos);
        let m = if sorted {
            jd.minor(i, &IndexTuple::new(rest, jd.ncols())?)?
        } else {
            jd.minor_ordered(i.as_slice(), &rest)?
        };
        // (−1)^{s+1+(pos+1)}
        let m = if (s + pos).is_multiple_of(2) { m } else { -m };
        out.push((cols[pos], m));
    }
    Ok(out)
}

/// `Der_K(A)` together with its natural submodule `der_K(A)`.
pub struct DerivationModule {
    jacobi: JacobiData,
    generators: Vec<(IndexTuple, IndexTuple, Derivation)>,
    basis: ModuleBasis,
}

impl fmt::Debug for DerivationModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DerivationModule")
            .field("rank", &self.jacobi.rank())
            .field("generators", &self.generators)
            .finish()
    }
}

impl DerivationModule {
    pub fn new(ring: &CoordinateRing) -> Result<Self> {
        Self::from_jacobi(JacobiData::new(ring)?)
    }

    pub fn from_jacobi(jacobi: JacobiData) -> Result<Self> {
        let ring = jacobi.ring().clone();
        let mut generators = Vec::new();
        for i in jacobi.nonsingular_rows() {
            for j in jacobi.critical_set() {
                let d = natural_from(&jacobi, i, j.as_slice())?;
                generators.push((i.clone(), j.clone(), d));
            }
        }
        let n = ring.nvars();
        let mut vectors: Vec<Vec<Polynomial>> = generators.iter().map(|(_, _, d)| d.lift()).collect();
        let zero = Polynomial::zero(n, ring.order());
        for g in ring.gb().generators() {
            for k in 0..n {
                let mut v = alloc::vec![zero.clone(); n];
                v[k] = g.clone();
                vectors.push(v);
            }
        }
        let basis = module_buchberger(n, n, &vectors, ring.order())?;
        Ok(DerivationModule { jacobi, generators, basis })
    }

    pub fn jacobi(&self) -> &JacobiData {
        &self.jacobi
    }

    pub fn ring(&self) -> &CoordinateRing {
        self.jacobi.ring()
    }

    pub fn rank(&self) -> usize {
        self.jacobi.rank()
    }

    /// `∂_{i,j}` for `|i| = r`, `|j| = r + 1`.
    pub fn natural_derivation(&self, i: &IndexTuple, j: &IndexTuple) -> Result<Derivation> {
        let r = self.rank();
        if i.len() != r || j.len() != r + 1 {
            return Err(Error::TupleSize(format!("expected |i| = {} and |j| = {}, got {} and {}", r, r + 1, i, j)));
        }
        if let Some((_, _, d)) = self.generators.iter().find(|(a, b, _)| a == i && b == j) {
            return Ok(d.clone());
        }
        self.check_bounds(i, j.as_slice())?;
        natural_from(&self.jacobi, i, j.as_slice())
    }

    /// `∂_{i; cols}` with the columns taken in the given order, which may
    /// be unsorted; a repeated column gives zero.
    pub fn natural_derivation_ordered(&self, i: &IndexTuple, cols: &[usize]) -> Result<Derivation> {
        let r = self.rank();
        if i.len() != r || cols.len() != r + 1 {
            return Err(Error::TupleSize(format!("expected |i| = {} and {} columns", r, r + 1)));
        }
        self.check_bounds(i, cols)?;
        natural_from(&self.jacobi, i, cols)
    }

    fn check_bounds(&self, i: &IndexTuple, cols: &[usize]) -> Result<()> {
        let (m, n) = (self.jacobi.nrows(), self.jacobi.ncols());
        if i.as_slice().iter().any(|&a| a >= m) || cols.iter().any(|&b| b >= n) {
            return Err(Error::InvalidTuple(format!("{} x {:?} out of bounds", i, cols)));
        }
        Ok(())
    }

    /// Generators `∂_{i,j}`, `i ∈ I_r`, `j ∈ J_{r+1}`, in lex order.
    pub fn natural_generators(&self) -> &[(IndexTuple, IndexTuple, Derivation)] {
        &self.generators
    }

    pub fn is_derivation(&self, a: &[Residue]) -> Result<bool> {
        is_derivation(self.ring(), self.jacobi.matrix(), a)
    }

    /// Membership in `der_K(A)`, decided on lifts in `P_n^n`.
    pub fn in_natural_submodule(&self, d: &Derivation) -> Result<bool> {
        if !d.ring().same_ring(self.ring()) {
            return Err(Error::RingMismatch);
        }
        if !self.is_derivation(d.coefficients())? {
            return Err(Error::NotADerivation);
        }
        self.basis.member(&d.lift())
    }

    /// Lifted basis of `der_K(A) + I·P_n^n`.
    pub fn submodule_basis(&self) -> &ModuleBasis {
        &self.basis
    }

    /// The derivation with prescribed values on the variables outside `j`,
    /// for a pivot `(i, j) ∈ I_r × J_r`. Fails when a forced coefficient
    /// leaves `A`.
    pub fn reconstruct(
        &self,
        i: &IndexTuple,
        j: &IndexTuple,
        values: &BTreeMap<usize, Residue>,
    ) -> Result<Derivation> {
        let jd = &self.jacobi;
        if !jd.is_nonsingular_row(i) || !jd.is_nonsingular_col(j) {
            return Err(Error::SingularTuple(format!("pivot {} x {}", i, j)));
        }
        let ring = self.ring();
        let complement = j.complement(ring.nvars());
        if values.len() != complement.len() || !complement.iter().all(|c| values.contains_key(c)) {
            return Err(Error::Malformed("values must be given exactly on the variables outside the pivot columns".into()));
        }
        if values.values().any(|v| !v.ring().same_ring(ring)) {
            return Err(Error::RingMismatch);
        }
        let delta = jd.minor(i, j)?;
        let mut coeffs: Vec<Residue> = (0..ring.nvars()).map(|_| ring.zero()).collect();
        for (&c, v) in values {
            coeffs[c] = v.clone();
        }
        for (nu, &col) in j.as_slice().iter().enumerate() {
            let mut num = ring.zero();
            for (&c, v) in values {
                num = &num - &(v * &jd.replacement_minor(i, j, nu, c)?);
            }
            let frac = LocalizedElement::new(num, delta.clone(), 1)?;
            coeffs[col] = frac.in_ring().ok_or_else(|| Error::InclusionFailure {
                variable: col + 1,
                element: frac.show(),
            })?;
        }
        let d = Derivation { ring: ring.clone(), coeffs };
        debug_assert!(self.is_derivation(d.coefficients()).unwrap_or(false));
        Ok(d)
    }

    /// `∂_{i,j}` as a derivation into `A/a_{s+1}`, `|i| = s`, `|j| = s + 1`.
    pub fn higher_natural_derivation(&self, s: usize, i: &IndexTuple, j: &IndexTuple) -> Result<HigherDerivation> {
        let r = self.rank();
        if s == 0 || s > r {
            return Err(Error::MinorSizeOutOfRange { k: s, max: r });
        }
        if i.len() != s || j.len() != s + 1 {
            return Err(Error::TupleSize(format!("expected |i| = {} and |j| = {}, got {} and {}", s, s + 1, i, j)));
        }
        self.check_bounds(i, j.as_slice())?;
        let gb = self.jacobi.ideal_gb(s + 1)?;
        let ring = self.ring();
        let mut coeffs: Vec<Polynomial> = (0..ring.nvars()).map(|_| Polynomial::zero(ring.nvars(), ring.order())).collect();
        for (col, m) in signed_minors(&self.jacobi, i, j.as_slice())? {
            coeffs[col] = gb.normal_form(m.lift());
        }
        Ok(HigherDerivation { level: s, coeffs, gb })
    }

    /// Basis of the ideal generated by `∂_{i,j}(x̄_k)` over all natural
    /// generators, together with `I`.
    pub fn image_ideal(&self) -> Result<GroebnerBasis> {
        let ring = self.ring();
        let mut gens: Vec<Polynomial> = Vec::new();
        for (_, _, d) in &self.generators {
            for k in 0..ring.nvars() {
                let v = d.apply(&ring.var(k))?;
                if !v.is_zero() {
                    gens.push(v.lift().clone());
                }
            }
        }
        gens.extend(ring.gb().generators().iter().cloned());
        buchberger(ring.nvars(), &gens, ring.order())
    }

    /// Pivot derivations `∂_{i; j, c}` for each `c` outside `j`, with the
    /// appended column last.
    pub fn pivot_derivations(&self, i: &IndexTuple, j: &IndexTuple) -> Result<Vec<(usize, Derivation)>> {
        let ring = self.ring();
        j.complement(ring.nvars())
            .into_iter()
            .map(|c| {
                let mut cols = j.as_slice().to_vec();
                cols.push(c);
                Ok((c, self.natural_derivation_ordered(i, &cols)?))
            })
            .collect()
    }

    /// All `(r+1)`-column tuples, for enumerating every `∂_{i,j}`.
    pub fn all_column_tuples(&self) -> Vec<IndexTuple> {
        combinations(self.jacobi.ncols(), self.rank() + 1)
    }
}

fn natural_from(jd: &JacobiData, i: &IndexTuple, cols: &[usize]) -> Result<Derivation> {
    let ring = jd.ring();
    let mut coeffs: Vec<Residue> = (0..ring.nvars()).map(|_| ring.zero()).collect();
    let mut seen = alloc::vec![false; ring.nvars()];
    for &c in cols {
        if core::mem::replace(&mut seen[c], true) {
            return Ok(Derivation::zero(ring));
        }
    }
    for (col, m) in signed_minors(jd, i, cols)? {
        coeffs[col] = m;
    }
    Ok(Derivation { ring: ring.clone(), coeffs })
}
