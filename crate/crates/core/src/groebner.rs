//! Buchberger's algorithm for ideals of `P_n` and submodules of `P_n^s`.
//!
//! Both cases share one engine. Module elements use a position-over-term
//! order: the leading term sits in the first nonzero component, and within a
//! component the polynomial order decides.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::One;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, Polynomial, Rational};

trait Element: Clone {
    /// (position, leading monomial, leading coefficient)
    fn lead(&self) -> Option<(usize, &Monomial, &Rational)>;
    fn mul_term(&self, m: &Monomial, c: &Rational) -> Self;
    fn sub_multiple(&self, c: &Rational, m: &Monomial, other: &Self) -> Self;
    fn move_lead_into(&mut self, rem: &mut Self);
    fn zero_like(&self) -> Self;

    fn is_zero(&self) -> bool {
        self.lead().is_none()
    }

    fn monic(&self) -> Self {
        match self.lead() {
            Some((_, m, c)) if !c.is_one() => {
                let inv = c.recip();
                let one = Monomial::one(m.nvars());
                self.mul_term(&one, &inv)
            }
            _ => self.clone(),
        }
    }
}

impl Element for Polynomial {
    fn lead(&self) -> Option<(usize, &Monomial, &Rational)> {
        self.leading_term().map(|(m, c)| (0, m, c))
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        Polynomial::mul_term(self, m, c)
    }

    fn sub_multiple(&self, c: &Rational, m: &Monomial, other: &Self) -> Self {
        self.sub_term_multiple(c, m, other)
    }

    fn move_lead_into(&mut self, rem: &mut Self) {
        if let Some((m, c)) = self.pop_leading() {
            rem.push_trailing(m, c);
        }
    }

    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars(), self.order())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ModVec(Vec<Polynomial>);

impl Element for ModVec {
    fn lead(&self) -> Option<(usize, &Monomial, &Rational)> {
        self.0
            .iter()
            .enumerate()
            .find_map(|(pos, p)| p.leading_term().map(|(m, c)| (pos, m, c)))
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        ModVec(self.0.iter().map(|p| p.mul_term(m, c)).collect())
    }

    fn sub_multiple(&self, c: &Rational, m: &Monomial, other: &Self) -> Self {
        ModVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if b.is_zero() { a.clone() } else { a.sub_term_multiple(c, m, b) })
                .collect(),
        )
    }

    fn move_lead_into(&mut self, rem: &mut Self) {
        if let Some(pos) = self.0.iter().position(|p| !p.is_zero()) {
            self.0[pos].move_lead_into(&mut rem.0[pos]);
        }
    }

    fn zero_like(&self) -> Self {
        ModVec(self.0.iter().map(|p| p.zero_like()).collect())
    }
}

fn find_reducer<'a, T: Element>(basis: &'a [T], pos: usize, m: &Monomial) -> Option<&'a T> {
    basis.iter().find(|g| match g.lead() {
        Some((gp, gm, _)) => gp == pos && gm.divides(m),
        None => false,
    })
}

fn reduction_step<T: Element>(p: &T, g: &T) -> T {
    let (_, pm, pc) = p.lead().expect("nonzero");
    let (_, gm, gc) = g.lead().expect("nonzero");
    let shift = gm.quotient_of(pm).expect("divisible");
    let factor = pc / gc;
    p.sub_multiple(&factor, &shift, g)
}

/// Complete reduction: no term of the result is divisible by a leading term.
fn reduce_full<T: Element>(p: &T, basis: &[T]) -> T {
    let mut p = p.clone();
    let mut rem = p.zero_like();
    loop {
        let reducer = match p.lead() {
            None => break,
            Some((pos, m, _)) => find_reducer(basis, pos, m),
        };
        match reducer {
            Some(g) => p = reduction_step(&p, g),
            None => p.move_lead_into(&mut rem),
        }
    }
    rem
}

/// Reduces leading terms only; the result is zero iff `p` is in the span.
fn reduce_top<T: Element>(p: &T, basis: &[T]) -> T {
    let mut p = p.clone();
    loop {
        let reducer = match p.lead() {
            None => return p,
            Some((pos, m, _)) => find_reducer(basis, pos, m),
        };
        match reducer {
            Some(g) => p = reduction_step(&p, g),
            None => return p,
        }
    }
}

fn s_element<T: Element>(f: &T, g: &T) -> T {
    let (_, fm, fc) = f.lead().expect("nonzero");
    let (_, gm, gc) = g.lead().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l).expect("lcm"), &fc.recip());
    a.sub_multiple(&gc.recip(), &gm.quotient_of(&l).expect("lcm"), g)
}

fn compare_leads<T: Element>(order: MonomialOrder, a: &T, b: &T) -> Ordering {
    match (a.lead(), b.lead()) {
        (Some((pa, ma, _)), Some((pb, mb, _))) => pb.cmp(&pa).then_with(|| order.compare(ma, mb)),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
    }
}

/// Buchberger completion followed by interreduction. The output is the
/// reduced basis, sorted by descending leading term.
fn complete<T: Element>(gens: Vec<T>, order: MonomialOrder, product_criterion: bool) -> Vec<T> {
    let mut basis: Vec<T> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |basis: &mut Vec<T>, pending: &mut BTreeSet<(usize, usize)>, h: T| {
        let idx = basis.len();
        let (hp, hm, _) = h.lead().expect("nonzero");
        for (k, g) in basis.iter().enumerate() {
            let (gp, gm, _) = g.lead().expect("nonzero");
            if gp != hp {
                continue;
            }
            if product_criterion && gm.is_coprime(hm) {
                continue;
            }
            pending.insert((k, idx));
        }
        basis.push(h);
    };

    for g in gens {
        let h = reduce_full(&g, &basis);
        if !h.is_zero() {
            add(&mut basis, &mut pending, h.monic());
        }
    }

    while !pending.is_empty() {
        // normal selection strategy: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = pair_lcm(&basis, **a);
                let lb = pair_lcm(&basis, **b);
                la.degree().cmp(&lb.degree()).then_with(|| order.compare(&la, &lb))
            })
            .expect("nonempty");
        pending.remove(&(i, j));

        if chain_criterion(&basis, &pending, i, j) {
            continue;
        }
        let s = s_element(&basis[i], &basis[j]);
        let h = reduce_full(&s, &basis);
        if !h.is_zero() {
            add(&mut basis, &mut pending, h.monic());
        }
    }

    interreduce(basis, order)
}

fn pair_lcm<T: Element>(basis: &[T], (i, j): (usize, usize)) -> Monomial {
    let (_, mi, _) = basis[i].lead().expect("nonzero");
    let (_, mj, _) = basis[j].lead().expect("nonzero");
    mi.lcm(mj)
}

fn chain_criterion<T: Element>(basis: &[T], pending: &BTreeSet<(usize, usize)>, i: usize, j: usize) -> bool {
    let (pos, _, _) = basis[i].lead().expect("nonzero");
    let l = pair_lcm(basis, (i, j));
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    basis.iter().enumerate().any(|(k, g)| {
        if k == i || k == j {
            return false;
        }
        let (gp, gm, _) = g.lead().expect("nonzero");
        gp == pos && gm.divides(&l) && !pending.contains(&key(i, k)) && !pending.contains(&key(j, k))
    })
}

fn interreduce<T: Element>(mut basis: Vec<T>, order: MonomialOrder) -> Vec<T> {
    basis.sort_by(|a, b| compare_leads(order, b, a));
    // drop elements whose leading term is divisible by another one's
    let mut minimal: Vec<T> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let (gp, gm, _) = g.lead().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            if k == idx {
                return false;
            }
            let (hp, hm, _) = h.lead().expect("nonzero");
            hp == gp && hm.divides(gm) && (hm != gm || k > idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<T> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(reduce_full(&minimal[idx], &others).monic());
    }
    reduced.sort_by(|a, b| compare_leads(order, b, a));
    reduced
}

/// A Groebner basis of an ideal of `P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    reduced: bool,
}

/// Reduced Groebner basis of the ideal generated by `gens` in `nvars` variables.
pub fn buchberger(nvars: usize, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let mut input = Vec::with_capacity(gens.len());
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::VariableCountMismatch { left: nvars, right: g.nvars() });
        }
        if !g.is_zero() {
            input.push(g.with_order(order));
        }
    }
    let generators = complete(input, order, true);
    Ok(GroebnerBasis { nvars, order, generators, reduced: true })
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Canonical remainder of `p`; zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        debug_assert_eq!(p.nvars(), self.nvars);
        let p = p.with_order(self.order);
        if self.generators.is_empty() {
            return p;
        }
        reduce_full(&p, &self.generators)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        let p = p.with_order(self.order);
        reduce_top(&p, &self.generators).is_zero()
    }

    pub fn contains_ideal(&self, other: &GroebnerBasis) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Reduced bases are unique, so equality is structural.
    pub fn ideal_equal(&self, other: &GroebnerBasis) -> Result<bool> {
        if self.order != other.order {
            return Err(Error::OrderMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(self.generators == other.generators)
    }

    /// Largest set of variables independent modulo the leading-term ideal.
    pub fn krull_dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let leads: Vec<u64> = self
            .generators
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").support().fold(0u64, |acc, k| acc | (1 << k)))
            .collect();
        let n = self.nvars;
        let mut best = 0;
        for subset in 0u64..(1u64 << n) {
            let size = subset.count_ones() as usize;
            if size <= best {
                continue;
            }
            // independent: no leading monomial is supported inside the subset
            if leads.iter().all(|&l| l & !subset != 0) {
                best = size;
            }
        }
        Ok(best)
    }
}

/// A Groebner basis of a submodule of `P_n^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleBasis {
    nvars: usize,
    rank: usize,
    order: MonomialOrder,
    generators: Vec<Vec<Polynomial>>,
}

pub fn module_buchberger(
    nvars: usize,
    rank: usize,
    gens: &[Vec<Polynomial>],
    order: MonomialOrder,
) -> Result<ModuleBasis> {
    let mut input = Vec::with_capacity(gens.len());
    for g in gens {
        if g.len() != rank {
            return Err(Error::LengthMismatch { expected: rank, got: g.len() });
        }
        for p in g {
            if p.nvars() != nvars {
                return Err(Error::VariableCountMismatch { left: nvars, right: p.nvars() });
            }
        }
        let v = ModVec(g.iter().map(|p| p.with_order(order)).collect());
        if !v.is_zero() {
            input.push(v);
        }
    }
    let product_criterion = rank == 1;
    let generators = complete(input, order, product_criterion).into_iter().map(|v| v.0).collect();
    Ok(ModuleBasis { nvars, rank, order, generators })
}

impl ModuleBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    fn as_vecs(&self) -> Vec<ModVec> {
        self.generators.iter().map(|g| ModVec(g.clone())).collect()
    }

    fn prepare(&self, v: &[Polynomial]) -> Result<ModVec> {
        if v.len() != self.rank {
            return Err(Error::LengthMismatch { expected: self.rank, got: v.len() });
        }
        Ok(ModVec(v.iter().map(|p| p.with_order(self.order)).collect()))
    }

    /// Fully reduced remainder of `v`.
    pub fn reduce(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let v = self.prepare(v)?;
        if self.generators.is_empty() {
            return Ok(v.0);
        }
        Ok(reduce_full(&v, &self.as_vecs()).0)
    }

    pub fn member(&self, v: &[Polynomial]) -> Result<bool> {
        let v = self.prepare(v)?;
        Ok(reduce_top(&v, &self.as_vecs()).is_zero())
    }
}

/// Zero vector of the given rank.
pub fn zero_vector(nvars: usize, rank: usize, order: MonomialOrder) -> Vec<Polynomial> {
    vec![Polynomial::zero(nvars, order); rank]
}
