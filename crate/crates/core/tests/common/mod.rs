//! Random Jacobi-valid algebras with nondegenerate metrics.
#![allow(clippy::needless_range_loop, dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use swlie_core::lie::{MetricLieAlgebra, StructureConstants};
use swlie_core::scalar::rational::int;
use swlie_core::tensor::determinant;
use swlie_core::{Metric, Polynomial, Tensor, VarList, Variance};

fn k(n: i64) -> Polynomial {
    Polynomial::constant(&VarList::empty(), int(n))
}

fn levi_civita(i: usize, j: usize, l: usize) -> i64 {
    match (i, j, l) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `c^k_ij = ε_ijl n^{lk} + δ^k_j a_i − δ^k_i a_j` with `n` symmetric and `n·a = 0`.
pub fn random_structure(rng: &mut ChaCha8Rng) -> StructureConstants<Polynomial> {
    let mut n = [[0i64; 3]; 3];
    let with_a = rng.gen_bool(0.5);
    let a = if with_a { rng.gen_range(1..=3) } else { 0 };
    for i in 0..3 {
        for j in i..3 {
            if with_a && (i == 0 || j == 0) {
                continue;
            }
            let v = rng.gen_range(-2..=2);
            n[i][j] = v;
            n[j][i] = v;
        }
    }
    let mut sc = StructureConstants::zero(3);
    for i in 0..3 {
        for j in i + 1..3 {
            for kk in 0..3 {
                let mut c: i64 = (0..3).map(|l| levi_civita(i, j, l) * n[l][kk]).sum();
                if i == 0 && kk == j {
                    c += a;
                }
                if j == 0 && kk == i {
                    c -= a;
                }
                sc.set(i, j, kk, k(c));
            }
        }
    }
    sc
}

/// Diagonal `±1..±3` or a random symmetric integer matrix, retried until invertible.
pub fn random_metric(rng: &mut ChaCha8Rng) -> Metric<Polynomial> {
    if rng.gen_bool(0.5) {
        let d: Vec<Polynomial> = (0..3)
            .map(|_| {
                let m = rng.gen_range(1..=3);
                k(if rng.gen_bool(0.5) { m } else { -m })
            })
            .collect();
        return Metric::diagonal(&d).expect("nonzero diagonal");
    }
    loop {
        let mut g = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let v = rng.gen_range(-3..=3);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        let rows: Vec<Vec<Polynomial>> = g.iter().map(|r| r.iter().map(|&x| k(x)).collect()).collect();
        if determinant(&rows).is_zero() {
            continue;
        }
        let t = Tensor::from_fn(3, &[Variance::Co, Variance::Co], |ix| k(g[ix[0]][ix[1]]));
        return Metric::new(t).expect("invertible metric");
    }
}

pub fn random_algebra(rng: &mut ChaCha8Rng, label: String) -> MetricLieAlgebra<Polynomial> {
    MetricLieAlgebra {
        sc: random_structure(rng),
        metric: random_metric(rng),
        params: VarList::empty(),
        label,
    }
}
