#![allow(dead_code)]

use derivring_core::{CoordinateRing, MonomialOrder, Polynomial};

pub const O: MonomialOrder = MonomialOrder::DegRevLex;

pub fn v(n: usize, k: usize) -> Polynomial {
    Polynomial::var(n, k, O)
}

pub fn ring(names: &[&str], gens: Vec<Polynomial>) -> CoordinateRing {
    CoordinateRing::new(names.iter().map(|s| s.to_string()).collect(), gens, O).unwrap()
}

pub fn cusp() -> CoordinateRing {
    ring(&["x", "y"], vec![v(2, 0).pow(3) - v(2, 1).pow(2)])
}

pub fn node() -> CoordinateRing {
    let (x, y) = (v(2, 0), v(2, 1));
    ring(&["x", "y"], vec![y.pow(2) - x.pow(3) - x.pow(2)])
}

pub fn circle() -> CoordinateRing {
    let (x, y) = (v(2, 0), v(2, 1));
    ring(&["x", "y"], vec![x.pow(2) + y.pow(2) - Polynomial::one(2, O)])
}

pub fn twisted_cubic() -> CoordinateRing {
    let w = |k| v(3, k);
    ring(&["x", "y", "z"], vec![w(1) - w(0).pow(2), w(2) - w(0).pow(3)])
}

pub fn whitney() -> CoordinateRing {
    let w = |k| v(3, k);
    ring(&["x", "y", "z"], vec![w(0).pow(2) - &w(1).pow(2) * &w(2)])
}

pub fn subspace(r: usize, n: usize) -> CoordinateRing {
    let names: Vec<String> = (1..=n).map(|k| format!("x{}", k)).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    ring(&refs, (0..r).map(|k| v(n, k)).collect())
}

pub fn double_cusp() -> CoordinateRing {
    let w = |k| v(4, k);
    ring(&["x", "y", "u", "v"], vec![w(0).pow(3) - w(1).pow(2), w(2).pow(3) - w(3).pow(2)])
}

pub fn catalog() -> Vec<(&'static str, CoordinateRing)> {
    vec![
        ("cusp", cusp()),
        ("node", node()),
        ("circle", circle()),
        ("twisted-cubic", twisted_cubic()),
        ("whitney-umbrella", whitney()),
        ("subspace-1-2", subspace(1, 2)),
        ("subspace-2-4", subspace(2, 4)),
        ("double-cusp", double_cusp()),
    ]
}

/// Determinant by the permutation expansion, as an independent oracle.
pub fn permutation_det(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = Polynomial::zero(nvars, O);
    loop {
        let mut inversions = 0;
        for a in 0..n {
            for b in a + 1..n {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        let mut term = Polynomial::one(nvars, O);
        for (row, &col) in perm.iter().enumerate() {
            term = &term * &m[row][col];
        }
        acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        // next permutation in lex order
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| perm[k] < perm[k + 1]) else {
            return acc;
        };
        let l = (k + 1..n).rev().find(|&l| perm[k] < perm[l]).unwrap();
        perm.swap(k, l);
        perm[k + 1..].reverse();
    }
}
