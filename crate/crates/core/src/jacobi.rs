//! Jacobi matrix, minors, rank, non-singular index sets and Jacobian ideals.
//!
//! Indices are 0-based throughout the library; [`IndexTuple`] renders them
//! 1-based for display.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::polyring::{determinant, rational_rank, Polynomial, Rational};
use crate::quotient::{CoordinateRing, LocalizedElement, Residue};

/// Strictly increasing tuple of 0-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(indices: Vec<usize>, bound: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidTuple(format!("{:?} is not strictly increasing", indices)));
        }
        if let Some(&last) = indices.last() {
            if last >= bound {
                return Err(Error::InvalidTuple(format!("index {} exceeds bound {}", last + 1, bound)));
            }
        }
        Ok(IndexTuple(indices))
    }

    /// From 1-based indices as written in reports.
    pub fn from_one_based(indices: &[usize], bound: usize) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::InvalidTuple("indices are 1-based".into()));
        }
        Self::new(indices.iter().map(|i| i - 1).collect(), bound)
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    /// The tuple with the entry at `pos` deleted.
    pub fn remove_at(&self, pos: usize) -> IndexTuple {
        let mut v = self.0.clone();
        v.remove(pos);
        IndexTuple(v)
    }

    /// Sorted tuple of `(self..., c)` with the sign of the sorting
    /// permutation, or `None` when `c` is already present.
    pub fn append_sorted(&self, c: usize) -> Option<(IndexTuple, i32)> {
        match self.0.binary_search(&c) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, c);
                let moves = self.0.len() - pos;
                Some((IndexTuple(v), if moves.is_multiple_of(2) { 1 } else { -1 }))
            }
        }
    }

    /// Indices in `0..n` not in the tuple, ascending.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|k| !self.contains(*k)).collect()
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str(")")
    }
}

/// All strictly increasing `size`-tuples below `bound`, in lex order.
pub fn combinations(bound: usize, size: usize) -> Vec<IndexTuple> {
    let mut out = Vec::new();
    if size > bound {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(IndexTuple(idx.clone()));
        let mut k = size;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < bound - size + k {
                idx[k] += 1;
                for l in k + 1..size {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `J̄ = (∂f_i/∂x_j mod I)`.
pub fn jacobi_matrix(ring: &CoordinateRing) -> Vec<Vec<Residue>> {
    ring.generators()
        .iter()
        .map(|f| {
            (0..ring.nvars())
                .map(|k| ring.project(&f.partial(k).expect("index in range")))
                .collect()
        })
        .collect()
}

/// Ideal of `A` generated by all `k×k` minors of `J̄`.
#[derive(Clone, Debug)]
pub struct JacobianIdeal {
    pub k: usize,
    pub generators: Vec<Residue>,
    /// Basis of the lifted minors together with `I`.
    pub gb: GroebnerBasis,
}

impl JacobianIdeal {
    pub fn contains(&self, a: &Residue) -> bool {
        self.gb.contains(a.lift())
    }

    pub fn is_unit(&self) -> bool {
        self.gb.is_unit()
    }
}

/// Outcome of probing a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointReport {
    pub on_variety: bool,
    /// `None` when the point is off the variety.
    pub singular: Option<bool>,
    pub tangent_dim: Option<usize>,
}

pub struct JacobiData {
    ring: CoordinateRing,
    matrix: Vec<Vec<Residue>>,
    rank: usize,
    rows: Vec<IndexTuple>,
    cols: Vec<IndexTuple>,
    critical: Vec<IndexTuple>,
    minors: BTreeMap<(IndexTuple, IndexTuple), Residue>,
    top: JacobianIdeal,
}

impl fmt::Debug for JacobiData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JacobiData")
            .field("rank", &self.rank)
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("critical", &self.critical)
            .finish()
    }
}

impl JacobiData {
    /// Builds the Jacobi matrix and determines the rank together with the
    /// non-singular tuples and the critical set.
    pub fn new(ring: &CoordinateRing) -> Result<Self> {
        let matrix = jacobi_matrix(ring);
        let m = matrix.len();
        let n = ring.nvars();
        let mut cache = BTreeMap::new();
        let mut minor = |i: &IndexTuple, j: &IndexTuple| -> Result<Residue> {
            if let Some(v) = cache.get(&(i.clone(), j.clone())) {
                return Ok(Residue::clone(v));
            }
            let v = det_of(ring, &matrix, i.as_slice(), j.as_slice())?;
            cache.insert((i.clone(), j.clone()), v.clone());
            Ok(v)
        };

        // grow a nonzero minor one row and one column at a time
        let (mut pi, mut pj) = (IndexTuple::empty(), IndexTuple::empty());
        loop {
            let mut found = None;
            'extend: for row in 0..m {
                let Some((ni, _)) = pi.append_sorted(row) else { continue };
                for col in 0..n {
                    let Some((nj, _)) = pj.append_sorted(col) else { continue };
                    if !minor(&ni, &nj)?.is_zero() {
                        found = Some((ni, nj));
                        break 'extend;
                    }
                }
            }
            if found.is_none() {
                let size = pi.len() + 1;
                'full: for ni in combinations(m, size) {
                    for nj in combinations(n, size) {
                        if !minor(&ni, &nj)?.is_zero() {
                            found = Some((ni, nj));
                            break 'full;
                        }
                    }
                }
            }
            match found {
                Some((ni, nj)) => {
                    pi = ni;
                    pj = nj;
                }
                None => break,
            }
        }
        let rank = pi.len();
        if rank >= n {
            return Err(Error::MaximalIdeal);
        }

        // with one nonzero (i0, j0), i is non-singular iff Δ(i, j0) ≠ 0
        let mut rows = Vec::new();
        for i in combinations(m, rank) {
            if !minor(&i, &pj)?.is_zero() {
                rows.push(i);
            }
        }
        let mut cols = Vec::new();
        for j in combinations(n, rank) {
            if !minor(&pi, &j)?.is_zero() {
                cols.push(j);
            }
        }
        let critical: Vec<IndexTuple> = combinations(n, rank + 1)
            .into_iter()
            .filter(|j| (0..j.len()).any(|pos| cols.binary_search(&j.remove_at(pos)).is_ok()))
            .collect();

        let mut top_gens = Vec::new();
        for i in &rows {
            for j in &cols {
                top_gens.push(minor(i, j)?);
            }
        }
        let top = build_ideal(ring, rank, top_gens)?;

        Ok(JacobiData { ring: ring.clone(), matrix, rank, rows, cols, critical, minors: cache, top })
    }

    pub fn ring(&self) -> &CoordinateRing {
        &self.ring
    }

    pub fn matrix(&self) -> &[Vec<Residue>] {
        &self.matrix
    }

    pub fn nrows(&self) -> usize {
        self.matrix.len()
    }

    pub fn ncols(&self) -> usize {
        self.ring.nvars()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `I_r`.
    pub fn nonsingular_rows(&self) -> &[IndexTuple] {
        &self.rows
    }

    /// `J_r`.
    pub fn nonsingular_cols(&self) -> &[IndexTuple] {
        &self.cols
    }

    /// `J_{r+1}`.
    pub fn critical_set(&self) -> &[IndexTuple] {
        &self.critical
    }

    /// Lexicographically smallest pair of `I_r × J_r`.
    pub fn pivot(&self) -> (&IndexTuple, &IndexTuple) {
        (&self.rows[0], &self.cols[0])
    }

    pub fn is_nonsingular_row(&self, i: &IndexTuple) -> bool {
        self.rows.binary_search(i).is_ok()
    }

    pub fn is_nonsingular_col(&self, j: &IndexTuple) -> bool {
        self.cols.binary_search(j).is_ok()
    }

    /// `Δ(i, j)`; the empty minor is 1.
    pub fn minor(&self, i: &IndexTuple, j: &IndexTuple) -> Result<Residue> {
        if i.len() != j.len() {
            return Err(Error::TupleSize(format!("|{}| != |{}|", i, j)));
        }
        if i.as_slice().last().is_some_and(|&k| k >= self.nrows()) || j.as_slice().last().is_some_and(|&k| k >= self.ncols()) {
            return Err(Error::InvalidTuple(format!("{} x {} out of bounds", i, j)));
        }
        if let Some(v) = self.minors.get(&(i.clone(), j.clone())) {
            return Ok(v.clone());
        }
        det_of(&self.ring, &self.matrix, i.as_slice(), j.as_slice())
    }

    /// Determinant of the submatrix with rows and columns taken in the
    /// given (not necessarily increasing) order.
    pub fn minor_ordered(&self, rows: &[usize], cols: &[usize]) -> Result<Residue> {
        if rows.len() != cols.len() {
            return Err(Error::TupleSize(format!("{} rows vs {} columns", rows.len(), cols.len())));
        }
        det_of(&self.ring, &self.matrix, rows, cols)
    }

    /// `Δ(i; j_1..j_{ν-1}, c, j_{ν+1}..j_r)`: column `ν` of `j` replaced by `c`.
    pub fn replacement_minor(&self, i: &IndexTuple, j: &IndexTuple, nu: usize, c: usize) -> Result<Residue> {
        let mut cols = j.as_slice().to_vec();
        cols[nu] = c;
        self.minor_ordered(i.as_slice(), &cols)
    }

    /// The ideal `a_k`, `1 ≤ k ≤ r`.
    pub fn jacobian_ideal(&self, k: usize) -> Result<JacobianIdeal> {
        if k == 0 || k > self.rank {
            return Err(Error::MinorSizeOutOfRange { k, max: self.rank });
        }
        if k == self.rank {
            return Ok(self.top.clone());
        }
        let mut gens = Vec::new();
        for i in combinations(self.nrows(), k) {
            for j in combinations(self.ncols(), k) {
                gens.push(self.minor(&i, &j)?);
            }
        }
        build_ideal(&self.ring, k, gens)
    }

    /// Basis of `lift(a_k) + I` for any `k`, with `a_0 = A` and `a_k = 0`
    /// above the rank.
    pub fn ideal_gb(&self, k: usize) -> Result<GroebnerBasis> {
        if k == 0 {
            let one = Polynomial::one(self.ncols(), self.ring.order());
            return buchberger(self.ncols(), &[one], self.ring.order());
        }
        if k > self.rank {
            return Ok(self.ring.gb().clone());
        }
        Ok(self.jacobian_ideal(k)?.gb)
    }

    /// `a_r`, or the unit ideal when `r = 0`.
    pub fn top_ideal(&self) -> &JacobianIdeal {
        &self.top
    }

    /// Jacobian criterion: `A` is regular iff `a_r = A`.
    pub fn is_smooth(&self) -> bool {
        self.top.is_unit()
    }

    pub fn point_report(&self, point: &[Rational]) -> Result<PointReport> {
        let n = self.ncols();
        if point.len() != n {
            return Err(Error::VariableCountMismatch { left: n, right: point.len() });
        }
        for f in self.ring.generators() {
            if !f.eval(point)?.is_zero() {
                return Ok(PointReport { on_variety: false, singular: None, tangent_dim: None });
            }
        }
        let mut singular = self.rank > 0;
        for g in &self.top.generators {
            if !g.eval(point)?.is_zero() {
                singular = false;
                break;
            }
        }
        let mut scalar = Vec::with_capacity(self.nrows());
        for f in self.ring.generators() {
            let mut row = Vec::with_capacity(n);
            for k in 0..n {
                row.push(f.partial(k)?.eval(point)?);
            }
            scalar.push(row);
        }
        let tangent_dim = n - rational_rank(&scalar);
        Ok(PointReport { on_variety: true, singular: Some(singular), tangent_dim: Some(tangent_dim) })
    }

    fn require_nonsingular(&self, rows: &[&IndexTuple], cols: &[&IndexTuple]) -> Result<()> {
        for i in rows {
            if !self.is_nonsingular_row(i) {
                return Err(Error::SingularTuple(format!("row tuple {}", i)));
            }
        }
        for j in cols {
            if !self.is_nonsingular_col(j) {
                return Err(Error::SingularTuple(format!("column tuple {}", j)));
            }
        }
        Ok(())
    }

    /// Checks `Δ(i′,j′)Δ(i,j) = Δ(i′,j)Δ(i,j′)` in `A`.
    pub fn verify_minor_identity(
        &self,
        i: &IndexTuple,
        ip: &IndexTuple,
        j: &IndexTuple,
        jp: &IndexTuple,
    ) -> Result<bool> {
        self.require_nonsingular(&[i, ip], &[j, jp])?;
        let lhs = &self.minor(ip, jp)? * &self.minor(i, j)?;
        let rhs = &self.minor(ip, j)? * &self.minor(i, jp)?;
        Ok(lhs == rhs)
    }

    /// Change-of-basis matrix `H(j, j′) = J̄(i,j)^{-1} J̄(i,j′)` over `A_Δ`,
    /// `Δ = Δ(i, j)`. Entry `(ν, μ)` is `Δ(i; j with j_ν ↦ j′_μ) / Δ`.
    pub fn change_of_basis_h(
        &self,
        i: &IndexTuple,
        j: &IndexTuple,
        jp: &IndexTuple,
    ) -> Result<Vec<Vec<LocalizedElement>>> {
        self.require_nonsingular(&[i], &[j, jp])?;
        let delta = self.minor(i, j)?;
        let r = self.rank;
        let mut h = Vec::with_capacity(r);
        for nu in 0..r {
            let mut row = Vec::with_capacity(r);
            for mu in 0..r {
                let num = self.replacement_minor(i, j, nu, jp.as_slice()[mu])?;
                row.push(LocalizedElement::new(num, delta.clone(), 1)?);
            }
            h.push(row);
        }
        Ok(h)
    }

    /// The `r×r` block `J̄(i, j)`.
    pub fn block(&self, i: &IndexTuple, j: &IndexTuple) -> Vec<Vec<Residue>> {
        i.as_slice()
            .iter()
            .map(|&a| j.as_slice().iter().map(|&b| self.matrix[a][b].clone()).collect())
            .collect()
    }
}

fn det_of(ring: &CoordinateRing, matrix: &[Vec<Residue>], rows: &[usize], cols: &[usize]) -> Result<Residue> {
    if rows.is_empty() {
        return Ok(ring.one());
    }
    let sub: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|&a| cols.iter().map(|&b| matrix[a][b].lift().clone()).collect())
        .collect();
    Ok(ring.project(&determinant(&sub)?))
}

fn build_ideal(ring: &CoordinateRing, k: usize, generators: Vec<Residue>) -> Result<JacobianIdeal> {
    let mut lifts: Vec<Polynomial> = generators.iter().map(|g| g.lift().clone()).collect();
    lifts.extend(ring.gb().generators().iter().cloned());
    let gb = buchberger(ring.nvars(), &lifts, ring.order())?;
    Ok(JacobianIdeal { k, generators, gb })
}

/// Product of two matrices over the localization.
pub fn matmul_localized(a: &[Vec<LocalizedElement>], b: &[Vec<LocalizedElement>]) -> Vec<Vec<LocalizedElement>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let mut acc = &row[0] * &b[0][c];
                    for k in 1..inner {
                        acc = &acc + &(&row[k] * &b[k][c]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn identity_localized(ring: &CoordinateRing, size: usize) -> Vec<Vec<LocalizedElement>> {
    (0..size)
        .map(|a| {
            (0..size)
                .map(|b| LocalizedElement::from_residue(if a == b { ring.one() } else { ring.zero() }))
                .collect()
        })
        .collect()
}

/// Renders a tuple list as `{(1),(2)}`.
pub fn show_tuples(tuples: &[IndexTuple]) -> String {
    let parts: Vec<String> = tuples.iter().map(|t| format!("{}", t)).collect();
    format!("{{{}}}", parts.join(","))
}
