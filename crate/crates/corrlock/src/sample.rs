//! Seeded random inputs for property sweeps and verification suites.
//!
//! Every generator takes an explicit RNG so that sweeps stay reproducible;
//! callers derive per-draw streams from a base seed.

use nalgebra::DMatrix;
use rand::Rng;

use crate::qmath::{C64, CMat, CVec, DensityMatrix, JointDistribution, Povm};

/// Mix a base seed with a salt into an independent stream seed
/// (splitmix64 finalizer). Used to give every restart, draw, or sweep row
/// its own schedule-independent RNG stream.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One standard-normal sample via Box-Muller (keeps the dependency surface
/// small and the stream stable across platforms).
fn normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn complex_normal(rng: &mut impl Rng) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Square matrix with i.i.d. complex-normal entries.
pub fn ginibre(rng: &mut impl Rng, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| complex_normal(rng))
}

/// Haar-like random unit vector.
pub fn random_pure_state(rng: &mut impl Rng, dim: usize) -> CVec {
    loop {
        let v = CVec::from_fn(dim, |_, _| complex_normal(rng));
        let n = v.norm();
        if n > 1e-6 {
            return v / C64::new(n, 0.0);
        }
    }
}

/// Full-rank random density matrix from the Hilbert-Schmidt ensemble.
pub fn random_state(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let g = ginibre(rng, dim);
    let mut rho = &g * g.adjoint();
    let tr = rho.trace().re;
    rho.scale_mut(1.0 / tr);
    // symmetrize away accumulation noise
    let rho = (&rho + rho.adjoint()).scale(0.5);
    DensityMatrix::trusted(dim, 1, rho)
}

/// Random bipartite state on `C^{da} ⊗ C^{db}` with subsystem metadata.
pub fn random_bipartite_state(rng: &mut impl Rng, dim_a: usize, dim_b: usize) -> DensityMatrix {
    random_state(rng, dim_a * dim_b)
        .with_split(dim_a, dim_b)
        .expect("split matches construction")
}

/// Random POVM with `n` outcomes: `A_j = S^{-1/2} G_j G_j† S^{-1/2}`.
pub fn random_povm(rng: &mut impl Rng, dim: usize, n: usize) -> Povm {
    let ps: Vec<CMat> = (0..n)
        .map(|_| {
            let g = ginibre(rng, dim);
            &g * g.adjoint()
        })
        .collect();
    let mut s = CMat::zeros(dim, dim);
    for p in &ps {
        s += p;
    }
    let w = crate::infomeasure::inv_sqrt_psd(&s);
    let elements = ps.iter().map(|p| &w * p * &w).collect();
    Povm::trusted(elements)
}

/// Random probability vector with full support.
pub fn random_distribution(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-9).collect();
    let s: f64 = p.iter().sum();
    for x in &mut p {
        *x /= s;
    }
    p
}

/// Random joint distribution table.
pub fn random_joint_distribution(rng: &mut impl Rng, rows: usize, cols: usize) -> JointDistribution {
    let flat = random_distribution(rng, rows * cols);
    JointDistribution::new(DMatrix::from_row_slice(rows, cols, &flat))
        .expect("normalized by construction")
}
