//! Property suites run by `verify`.

use std::collections::BTreeMap;

use derivring_core::jacobi::{combinations, identity_localized, matmul_localized};
use derivring_core::relgen::{
    apply_operator, derel_instances, operators_equal_up_to_order, rd2_constant, verify_derel, verify_presentation,
    PivotFrame,
};
use derivring_core::{buchberger, CoordinateRing, DerivationModule, OperatorExpr, Polynomial};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::CliResult;

pub const SUITES: [&str; 9] = [
    "annihilation",
    "nonsingular-sets",
    "image-ideal",
    "minor-identities",
    "dimension",
    "relations",
    "invariance",
    "jacobian-chain",
    "reconstruction",
];

const SEED: u64 = 0x0dd5_eed5;

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub invariance_trials: usize,
    pub reconstruction_trials: usize,
    pub leibniz_trials: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { invariance_trials: 3, reconstruction_trials: 5, leibniz_trials: 5 }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        if self.passed() {
            format!("{}: ok ({} checks)", self.name, self.checks)
        } else {
            format!(
                "{}: FAILED ({} of {} checks), first: {}",
                self.name,
                self.failures.len(),
                self.checks,
                self.failures[0]
            )
        }
    }
}

pub fn run_suite(name: &str, dm: &DerivationModule, opts: &SuiteOptions) -> CliResult<SuiteReport> {
    let Some(&name) = SUITES.iter().find(|s| **s == name) else {
        return Err(crate::error::CliError::Usage(format!(
            "unknown suite '{}'; expected one of {}",
            name,
            SUITES.join(", ")
        )));
    };
    let mut rep = SuiteReport::new(name);
    match name {
        "annihilation" => annihilation(dm, opts, &mut rep)?,
        "nonsingular-sets" => nonsingular_sets(dm, &mut rep)?,
        "image-ideal" => image_ideal(dm, &mut rep)?,
        "minor-identities" => minor_identities(dm, &mut rep)?,
        "dimension" => dimension(dm, &mut rep),
        "relations" => relations(dm, &mut rep)?,
        "invariance" => invariance(dm, opts, &mut rep)?,
        "jacobian-chain" => jacobian_chain(dm, &mut rep)?,
        "reconstruction" => reconstruction(dm, opts, &mut rep)?,
        _ => unreachable!(),
    }
    Ok(rep)
}

pub fn run_all(dm: &DerivationModule, only: Option<&str>, opts: &SuiteOptions) -> CliResult<Vec<SuiteReport>> {
    match only {
        Some(name) => Ok(vec![run_suite(name, dm, opts)?]),
        None => SUITES.iter().map(|s| run_suite(s, dm, opts)).collect(),
    }
}

fn nonzero_residue(a: &CoordinateRing, rng: &mut ChaCha8Rng, degree: u32) -> Polynomial {
    loop {
        let p = a.random_poly(rng, degree);
        if !a.project(&p).is_zero() {
            return p;
        }
    }
}

fn annihilation(dm: &DerivationModule, opts: &SuiteOptions, rep: &mut SuiteReport) -> CliResult<()> {
    let a = dm.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (i, j, d) in dm.natural_generators() {
        for (k, f) in a.generators().iter().enumerate() {
            let mut acc = Polynomial::zero(a.nvars(), a.order());
            for (l, c) in d.coefficients().iter().enumerate() {
                acc = &acc + &(c.lift() * &f.partial(l)?);
            }
            rep.check(a.gb().contains(&acc), || format!("d{}{} does not kill f_{}", i, j, k + 1));
        }
        rep.check(dm.is_derivation(d.coefficients())?, || format!("d{}{} is not a derivation", i, j));
        for _ in 0..opts.leibniz_trials {
            let (p, q) = (a.project(&a.random_poly(&mut rng, 3)), a.project(&a.random_poly(&mut rng, 3)));
            let lhs = d.apply(&(&p * &q))?;
            let rhs = &(&d.apply(&p)? * &q) + &(&p * &d.apply(&q)?);
            rep.check(lhs == rhs, || format!("Leibniz fails for d{}{} on {} and {}", i, j, p, q));
        }
    }
    Ok(())
}

fn nonsingular_sets(dm: &DerivationModule, rep: &mut SuiteReport) -> CliResult<()> {
    let jd = dm.jacobi();
    let r = jd.rank();
    for i in combinations(jd.nrows(), r) {
        for j in combinations(jd.ncols(), r) {
            let nonzero = !jd.minor(&i, &j)?.is_zero();
            let inside = jd.is_nonsingular_row(&i) && jd.is_nonsingular_col(&j);
            rep.check(nonzero == inside, || format!("minor {} x {} disagrees with the non-singular sets", i, j));
        }
        for j in dm.all_column_tuples() {
            let nonzero = !dm.natural_derivation(&i, &j)?.is_zero();
            let inside = jd.is_nonsingular_row(&i) && jd.critical_set().contains(&j);
            rep.check(nonzero == inside, || format!("d{}{} vanishing disagrees with the critical set", i, j));
        }
    }
    for i in combinations(jd.nrows(), r + 1) {
        for j in combinations(jd.ncols(), r + 1) {
            rep.check(jd.minor(&i, &j)?.is_zero(), || format!("minor {} x {} above the rank is nonzero", i, j));
        }
    }
    Ok(())
}

fn image_ideal(dm: &DerivationModule, rep: &mut SuiteReport) -> CliResult<()> {
    let img = dm.image_ideal()?;
    let top = &dm.jacobi().top_ideal().gb;
    rep.check(img.ideal_equal(top)?, || "image of der(A) differs from the top Jacobian ideal".into());
    Ok(())
}

fn minor_identities(dm: &DerivationModule, rep: &mut SuiteReport) -> CliResult<()> {
    let jd = dm.jacobi();
    if jd.rank() == 0 {
        return Ok(());
    }
    let (rows, cols) = (jd.nonsingular_rows(), jd.nonsingular_cols());
    for i in rows {
        for ip in rows {
            for j in cols {
                for jp in cols {
                    rep.check(jd.verify_minor_identity(i, ip, j, jp)?, || {
                        format!("minor identity fails for {} {} {} {}", i, ip, j, jp)
                    });
                }
            }
        }
    }
    let id = identity_localized(jd.ring(), jd.rank());
    let same = |p: &[Vec<_>], q: &[Vec<_>]| p.iter().flatten().zip(q.iter().flatten()).all(|(x, y)| x == y);
    let i = &rows[0];
    for j in cols {
        for jp in cols {
            let h = jd.change_of_basis_h(i, j, jp)?;
            let back = jd.change_of_basis_h(i, jp, j)?;
            rep.check(same(&matmul_localized(&h, &back), &id), || format!("H({},{}) is not invertible", j, jp));
            for jpp in cols {
                let lhs = matmul_localized(&h, &jd.change_of_basis_h(i, jp, jpp)?);
                rep.check(same(&lhs, &jd.change_of_basis_h(i, j, jpp)?), || {
                    format!("cocycle fails for {} {} {}", j, jp, jpp)
                });
            }
            for ip in rows {
                rep.check(same(&jd.change_of_basis_h(ip, j, jp)?, &h), || {
                    format!("H({},{}) depends on the row tuple", j, jp)
                });
            }
        }
    }
    Ok(())
}

fn dimension(dm: &DerivationModule, rep: &mut SuiteReport) {
    let a = dm.ring();
    rep.check(dm.rank() + a.krull_dimension() == a.nvars(), || {
        format!("rank {} + dimension {} != {}", dm.rank(), a.krull_dimension(), a.nvars())
    });
}

fn relations(dm: &DerivationModule, rep: &mut SuiteReport) -> CliResult<()> {
    let report = verify_presentation(dm)?;
    for (kind, list) in [("RD1", &report.rd1), ("RD2", &report.rd2), ("RD3", &report.rd3)] {
        for (k, ok) in list.iter().enumerate() {
            rep.check(*ok, || format!("{} relation {} fails", kind, k + 1));
        }
    }
    for rel in derel_instances(dm)? {
        rep.check(verify_derel(dm, &rel)?, || format!("linear relation fails: {}", rel));
        rep.check(operators_equal_up_to_order(dm, &rel.lhs, &rel.rhs, 1)?, || {
            format!("linear relation fails as an operator: {}", rel)
        });
    }
    // [d, x_k] acts as multiplication by the constant
    let a = dm.ring();
    for (i, j, _) in dm.natural_generators() {
        for k in 0..a.nvars() {
            let (d, x) = (OperatorExpr::gen(a, i, j), OperatorExpr::mul(&a.var(k)));
            let comm = d.then(&x).minus(&x.then(&d));
            let c = OperatorExpr::mul(&rd2_constant(dm, i, j, k)?);
            rep.check(operators_equal_up_to_order(dm, &comm, &c, 1)?, || {
                format!("[d{}{}, x_{}] is not the expected constant", i, j, k + 1)
            });
            let value = apply_operator(dm, &comm, &a.one())?;
            rep.check(value == rd2_constant(dm, i, j, k)?, || format!("[d{}{}, x_{}](1) mismatch", i, j, k + 1));
        }
    }
    Ok(())
}

fn invariance(dm: &DerivationModule, opts: &SuiteOptions, rep: &mut SuiteReport) -> CliResult<()> {
    let a = dm.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x1);
    for _ in 0..opts.invariance_trials {
        let u = nonzero_residue(a, &mut rng, 2);
        let mut gens = a.generators().to_vec();
        gens.push(&u * &gens[0]);
        let other = CoordinateRing::without_probe(a.names().to_vec(), gens, a.order())?;
        let new = DerivationModule::new(&other)?;
        let shown = a.show(&u);
        rep.check(new.rank() == dm.rank(), || format!("rank changes after appending ({})*f_1", shown));
        if new.rank() != dm.rank() {
            continue;
        }
        for k in 1..=dm.rank() {
            let (g1, g2) = (dm.jacobi().ideal_gb(k)?, new.jacobi().ideal_gb(k)?);
            rep.check(g1.generators() == g2.generators(), || format!("a_{} changes after appending ({})*f_1", k, shown));
        }
        for (i, j, d) in new.natural_generators() {
            rep.check(dm.submodule_basis().member(&d.lift())?, || {
                format!("new d{}{} is outside the old natural submodule (u = {})", i, j, shown)
            });
        }
        for (i, j, d) in dm.natural_generators() {
            rep.check(new.submodule_basis().member(&d.lift())?, || {
                format!("old d{}{} is outside the new natural submodule (u = {})", i, j, shown)
            });
        }
    }
    Ok(())
}

fn jacobian_chain(dm: &DerivationModule, rep: &mut SuiteReport) -> CliResult<()> {
    let jd = dm.jacobi();
    let a = dm.ring();
    let r = jd.rank();
    for k in 1..r {
        let (lo, hi) = (jd.ideal_gb(k)?, jd.ideal_gb(k + 1)?);
        rep.check(lo.contains_ideal(&hi), || format!("a_{} is not contained in a_{}", k + 1, k));
    }
    for p in 1..r {
        for q in 1..=(r - p) {
            let (ip, iq) = (jd.jacobian_ideal(p)?, jd.jacobian_ideal(q)?);
            let mut prods: Vec<Polynomial> = Vec::new();
            for g in &ip.generators {
                for h in &iq.generators {
                    prods.push(g.lift() * h.lift());
                }
            }
            prods.extend(a.gb().generators().iter().cloned());
            let gb = buchberger(a.nvars(), &prods, a.order())?;
            let target = jd.ideal_gb(p + q)?;
            rep.check(gb.contains_ideal(&target), || format!("a_{} a_{} does not contain a_{}", p, q, p + q));
        }
    }
    if r > 0 {
        let top = jd.top_ideal();
        rep.check(top.generators.iter().any(|g| !g.is_zero()), || "top Jacobian ideal is zero".into());
        rep.check(jd.is_smooth() == top.is_unit(), || "smoothness verdict inconsistent".into());
        for (i, j, d) in dm.natural_generators() {
            let h = dm.higher_natural_derivation(r, i, j)?;
            rep.check(h.agrees_with(d), || format!("level-{} derivation d{}{} differs", r, i, j));
        }
    }
    Ok(())
}

fn reconstruction(dm: &DerivationModule, opts: &SuiteOptions, rep: &mut SuiteReport) -> CliResult<()> {
    let a = dm.ring();
    let jd = dm.jacobi();
    let smooth = jd.is_smooth();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x2);
    for i in jd.nonsingular_rows() {
        for j in jd.nonsingular_cols() {
            let complement = j.complement(a.nvars());
            let delta = jd.minor(i, j)?;
            for (gi, gj, d) in dm.natural_generators() {
                let values: BTreeMap<usize, _> =
                    complement.iter().map(|&c| Ok((c, d.apply(&a.var(c))?))).collect::<CliResult<_>>()?;
                let back = dm.reconstruct(i, j, &values)?;
                rep.check(back == *d, || format!("d{}{} is not recovered from pivot {} x {}", gi, gj, i, j));
            }
            for _ in 0..opts.reconstruction_trials {
                let values: BTreeMap<usize, _> =
                    complement.iter().map(|&c| (c, &a.project(&a.random_poly(&mut rng, 2)) * &delta)).collect();
                let d = dm.reconstruct(i, j, &values)?;
                rep.check(dm.is_derivation(d.coefficients())?, || "reconstruction is not a derivation".into());
                for (&c, v) in &values {
                    rep.check(d.apply(&a.var(c))? == *v, || format!("prescribed value on variable {} lost", c + 1));
                }
                if smooth {
                    rep.check(dm.in_natural_submodule(&d)?, || format!("{} is outside der(A) on a smooth ring", d));
                }
            }
            let frame = PivotFrame::new(dm, i, j)?;
            for k in 0..complement.len() {
                let mut alpha = vec![0; complement.len()];
                alpha[k] = 1;
                for (l, &c) in complement.iter().enumerate() {
                    let value = frame.apply_power(&alpha, &a.var(c))?;
                    let want = if k == l { a.one() } else { a.zero() };
                    rep.check(value.in_ring() == Some(want), || {
                        format!("localized derivation {} on variable {} is not a Kronecker delta", k + 1, c + 1)
                    });
                }
            }
        }
    }
    Ok(())
}
