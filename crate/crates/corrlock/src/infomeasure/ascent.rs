//! Gradient-ascent machinery for mutual-information maximization over POVMs.
//!
//! POVMs are parameterized by unconstrained complex matrices `B_j`:
//! `P_j = B_j† B_j`, `S = Σ P_j`, `A_j = S^{-1/2} P_j S^{-1/2}`, which keeps
//! completeness exact at every step. The objective gradient flows through
//! the inverse square root via the Daleckii-Krein divided-difference formula
//! and is spot-checked against finite differences in the tests.

use nalgebra::DMatrix;

use crate::qmath::{C64, CMat};

/// Floor applied to log arguments so gradients stay finite at the boundary
/// of the probability simplex.
const LOG_FLOOR: f64 = 1e-18;

/// A discrimination problem: maximize the mutual information between the
/// source label `i` (weight `w_i`, state `σ_i`) and the measurement outcome.
pub(crate) struct MeasurementProblem {
    pub dim: usize,
    pub weights: Vec<f64>,
    pub ops: Vec<CMat>,
}

impl MeasurementProblem {
    pub fn from_pure(items: &[(f64, crate::qmath::CVec)]) -> Self {
        let dim = items[0].1.len();
        let weights = items.iter().map(|(p, _)| *p).collect();
        let ops = items.iter().map(|(_, v)| v * v.adjoint()).collect();
        Self { dim, weights, ops }
    }

    pub fn from_mixed(items: Vec<(f64, CMat)>) -> Self {
        let dim = items[0].1.nrows();
        let weights = items.iter().map(|(p, _)| *p).collect();
        let ops = items.into_iter().map(|(_, m)| m).collect();
        Self { dim, weights, ops }
    }
}

/// `S^{-1/2}` of a PSD matrix, with an eigenvalue floor against rank
/// deficiency in degenerate parameter corners.
pub fn inv_sqrt_psd(s: &CMat) -> CMat {
    let (evals, vecs) = crate::qmath::hermitian_eigen(s);
    let top = evals.iter().copied().fold(0.0f64, f64::max);
    let floor = (top * 1e-14).max(1e-280);
    let inv: Vec<f64> = evals.iter().map(|&x| 1.0 / x.max(floor).sqrt()).collect();
    scaled_congruence(&vecs, &inv)
}

/// `V · diag(vals) · V†`.
fn scaled_congruence(vecs: &CMat, vals: &[f64]) -> CMat {
    let mut scaled = vecs.clone();
    for (j, &v) in vals.iter().enumerate() {
        let mut col = scaled.column_mut(j);
        col *= C64::new(v, 0.0);
    }
    scaled * vecs.adjoint()
}

/// POVM elements from the unconstrained parameterization.
pub(crate) fn povm_elements(bs: &[CMat]) -> Vec<CMat> {
    let dim = bs[0].ncols();
    let ps: Vec<CMat> = bs.iter().map(|b| b.adjoint() * b).collect();
    let mut s = CMat::zeros(dim, dim);
    for p in &ps {
        s += p;
    }
    let w = inv_sqrt_psd(&s);
    ps.iter().map(|p| &w * p * &w).collect()
}

/// Outcome table `q[i][j] = w_i Tr(σ_i A_j)`, clamped at zero.
fn outcome_table(problem: &MeasurementProblem, elements: &[CMat]) -> DMatrix<f64> {
    let ni = problem.ops.len();
    let nj = elements.len();
    DMatrix::from_fn(ni, nj, |i, j| {
        let t = frobenius_inner(&problem.ops[i], &elements[j]);
        (problem.weights[i] * t).max(0.0)
    })
}

/// `Re Tr(a† b)` with `a` Hermitian: the Hilbert-Schmidt pairing.
#[inline]
fn frobenius_inner(a: &CMat, b: &CMat) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x.conj() * y).re)
        .sum()
}

fn mutual_information(q: &DMatrix<f64>, weights: &[f64]) -> f64 {
    let nj = q.ncols();
    let mut qb = vec![0.0f64; nj];
    for j in 0..nj {
        qb[j] = q.column(j).sum();
    }
    let mut info = 0.0;
    for i in 0..q.nrows() {
        for j in 0..nj {
            let v = q[(i, j)];
            if v > 0.0 && qb[j] > 0.0 && weights[i] > 0.0 {
                info += v * (v / (weights[i] * qb[j])).log2();
            }
        }
    }
    info
}

/// Objective value for the parameterization `bs`.
pub(crate) fn objective(problem: &MeasurementProblem, bs: &[CMat]) -> f64 {
    let elements = povm_elements(bs);
    mutual_information(&outcome_table(problem, &elements), &problem.weights)
}

/// Analytic gradient of the objective with respect to every `B_j`: the
/// real and imaginary parts of `G_j` are the partial derivatives of the
/// objective with respect to the real and imaginary parts of `B_j`.
pub(crate) fn gradient(problem: &MeasurementProblem, bs: &[CMat]) -> Vec<CMat> {
    let dim = problem.dim;
    let nj = bs.len();

    let ps: Vec<CMat> = bs.iter().map(|b| b.adjoint() * b).collect();
    let mut s = CMat::zeros(dim, dim);
    for p in &ps {
        s += p;
    }
    let (evals, vecs) = crate::qmath::hermitian_eigen(&s);
    let top = evals.iter().copied().fold(0.0f64, f64::max);
    let floor = (top * 1e-14).max(1e-280);
    let clamped: Vec<f64> = evals.iter().map(|&x| x.max(floor)).collect();
    let inv_sqrt: Vec<f64> = clamped.iter().map(|&x| 1.0 / x.sqrt()).collect();
    let w = scaled_congruence(&vecs, &inv_sqrt);
    let elements: Vec<CMat> = ps.iter().map(|p| &w * p * &w).collect();

    let q = outcome_table(problem, &elements);
    let mut qb = vec![0.0f64; nj];
    for j in 0..nj {
        qb[j] = q.column(j).sum();
    }

    // R_j = Σ_i w_i log2(q_ij / (w_i qB_j)) σ_i   (dI = Σ_j Tr(R_j dA_j))
    let rs: Vec<CMat> = (0..nj)
        .map(|j| {
            let mut r = CMat::zeros(dim, dim);
            for i in 0..problem.ops.len() {
                let wi = problem.weights[i];
                if wi <= 0.0 {
                    continue;
                }
                let coeff = (q[(i, j)].max(LOG_FLOOR) / (wi * qb[j].max(LOG_FLOOR))).log2();
                r += problem.ops[i].scale(wi * coeff);
            }
            r
        })
        .collect();

    // K collects the dW terms: K = Σ_j (P_j W R_j + R_j W P_j)
    let mut k = CMat::zeros(dim, dim);
    for j in 0..nj {
        let pw = &ps[j] * &w;
        k += &pw * &rs[j];
        k += &rs[j] * pw.adjoint();
    }

    // transport K through the matrix function S ↦ S^{-1/2} (Daleckii-Krein)
    let k_tilde = vecs.adjoint() * &k * &vecs;
    let mut m_tilde = CMat::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            let (sa, sb) = (clamped[a], clamped[b]);
            let f = if (sa - sb).abs() > 1e-12 * top.max(1.0) {
                (inv_sqrt[a] - inv_sqrt[b]) / (sa - sb)
            } else {
                -0.5 / (sa * sa.sqrt())
            };
            m_tilde[(a, b)] = k_tilde[(a, b)] * C64::new(f, 0.0);
        }
    }
    let m = &vecs * m_tilde * vecs.adjoint();

    (0..nj)
        .map(|j| {
            let c = &m + &w * &rs[j] * &w;
            (&bs[j] * c).scale(2.0)
        })
        .collect()
}

/// How a restart is initialized.
#[derive(Debug, Clone)]
pub(crate) enum RestartInit {
    /// Projective measurement along the computational basis.
    Computational,
    /// Projective measurement along the columns of a unitary.
    Basis(CMat),
    /// Rank-one elements `(w_j/‖w_j‖²)·|w_j⟩⟨w_j|`-style from explicit
    /// parameter rows; used for covariant POVM warm starts.
    Explicit(Vec<CMat>),
    /// Complex-normal `B_j` entries from the given seed.
    Random(u64),
}

pub(crate) fn initial_params(
    init: &RestartInit,
    dim: usize,
    num_outcomes: usize,
) -> Vec<CMat> {
    match init {
        RestartInit::Computational => {
            initial_params(&RestartInit::Basis(CMat::identity(dim, dim)), dim, num_outcomes)
        }
        RestartInit::Basis(u) => (0..num_outcomes)
            .map(|j| {
                if j < dim {
                    let col = u.column(j);
                    &col * col.adjoint()
                } else {
                    CMat::zeros(dim, dim)
                }
            })
            .collect(),
        RestartInit::Explicit(bs) => {
            let mut bs = bs.clone();
            while bs.len() < num_outcomes {
                bs.push(CMat::zeros(dim, dim));
            }
            bs
        }
        RestartInit::Random(seed) => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let scale = 1.0 / (dim as f64).sqrt();
            (0..num_outcomes)
                .map(|_| crate::sample::ginibre(&mut rng, dim).scale(scale))
                .collect()
        }
    }
}

pub(crate) struct AscentOutcome {
    pub value: f64,
    pub params: Vec<CMat>,
    pub converged: bool,
}

/// Backtracking gradient ascent with plateau stopping: the run converges
/// once the relative objective change stays below `rel_tol` for five
/// consecutive iterations.
pub(crate) fn ascend(
    problem: &MeasurementProblem,
    start: Vec<CMat>,
    max_iters: usize,
    rel_tol: f64,
    step_init: f64,
) -> AscentOutcome {
    let mut bs = start;
    let mut best = objective(problem, &bs);
    let mut step = step_init;
    let mut flat_count = 0u32;
    let mut converged = false;

    for _ in 0..max_iters {
        let grad = gradient(problem, &bs);
        let gnorm: f64 = grad.iter().map(|g| g.norm_squared()).sum::<f64>().sqrt();
        if gnorm < 1e-14 {
            converged = true;
            break;
        }

        let mut t = step;
        let mut accepted = false;
        for halving in 0..40 {
            let cand: Vec<CMat> = bs
                .iter()
                .zip(&grad)
                .map(|(b, g)| b + g.scale(t))
                .collect();
            let f = objective(problem, &cand);
            if f > best {
                let rel = (f - best) / best.abs().max(1e-12);
                bs = cand;
                best = f;
                if halving == 0 {
                    step = (step * 1.5).min(1e3);
                } else {
                    step = t;
                }
                flat_count = if rel < rel_tol { flat_count + 1 } else { 0 };
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            flat_count += 1;
            step = (step * 0.5).max(1e-12);
        }
        if flat_count >= 5 {
            converged = true;
            break;
        }
    }

    AscentOutcome {
        value: best,
        params: bs,
        converged,
    }
}
