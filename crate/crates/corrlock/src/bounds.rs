//! Evaluators and checkers for the inequalities governing correlation
//! locking: the one-way communication bound, the two-way cap driven by the
//! product-distance lemma, Fannes continuity, and Pinsker.
//!
//! Evaluators never assume their preconditions; they evaluate and report
//! `precondition_met` so sweeps can chart where each bound applies.

use std::f64::consts::LN_2;

use thiserror::Error;

use crate::infomeasure::{self, OptimizerConfig};
use crate::mub::{least_prime_power, OperatorBasis};
use crate::qmath::{self, CMat, DensityMatrix, Keep, QmathError};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Qmath(#[from] QmathError),
    #[error("optimizer: {0}")]
    Optimizer(#[from] infomeasure::InfoError),
    #[error("argument {0} outside [0, 1]")]
    OutsideUnitInterval(f64),
    #[error("merit figures need a positive key length")]
    ZeroKey,
    #[error("amplification undefined: no initial and no final correlation")]
    UndefinedMerit,
    #[error("state dimensions {0}x{1} do not match the d={2} operator basis")]
    BasisMismatch(usize, usize, usize),
    #[error("decomposition chain violated at {stage}: lhs={lhs}, rhs={rhs}")]
    ChainViolated {
        stage: &'static str,
        lhs: f64,
        rhs: f64,
    },
}

pub type Result<T> = std::result::Result<T, BoundsError>;

/// One evaluated inequality: `lhs ≤ rhs` with `slack = rhs − lhs`.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub precondition_met: bool,
    pub details: Vec<(String, f64)>,
}

impl BoundReport {
    fn new(name: &str, lhs: f64, rhs: f64, precondition_met: bool) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            slack: rhs - lhs,
            precondition_met,
            details: Vec::new(),
        }
    }

    fn with(mut self, key: &str, value: f64) -> Self {
        self.details.push((key.to_string(), value));
        self
    }

    /// Whether the inequality holds within `tol` slack.
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }
}

/// Figures of merit for a locking instance.
#[derive(Debug, Clone, Copy)]
pub struct MeritFigures {
    /// Amplification `I_c(ρ')/I_c(ρ)`.
    pub r1: f64,
    /// Unlocked correlation per key bit, `(I_c(ρ') − I_c(ρ))/l`.
    pub r2: f64,
}

// ---------------------------------------------------------------------------
// Scalar evaluators
// ---------------------------------------------------------------------------

/// `η(x) = −x log₂ x` on `[0, 1]`, with `η(0) = 0`.
pub fn eta(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(BoundsError::OutsideUnitInterval(x));
    }
    Ok(eta_extended(x))
}

/// `−x log₂ x` for any `x ≥ 0`; the continuity bounds use arguments that
/// can exceed 1 near their precondition boundary.
fn eta_extended(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// The smallest initial correlation consistent with reaching `ic_after`
/// via `l` bits of one-way classical communication: `2^{−l}(ic_after − l)`.
///
/// This floor also settles "complete locking" feasibility questions with
/// no extra machinery: an ansatz with initial correlation `2^{−αl}` that
/// still unlocks `δ·log₂ d` bits is infeasible whenever
/// `2^{−αl} < theorem1_requirement(δ·log₂ d + l, l)`, which rules out
/// `α ≥ 1` at large `d` and very short keys.
pub fn theorem1_requirement(ic_after: f64, l: f64) -> f64 {
    (-l).exp2() * (ic_after - l)
}

/// The largest one-way unlocking gain permitted from initial correlation
/// `ic_before` with an `l`-bit message: `l + (2^l − 1)·ic_before`.
pub fn theorem1_delta_cap(ic_before: f64, l: f64) -> f64 {
    l + (l.exp2() - 1.0) * ic_before
}

/// Product-distance bound `(d'+1)²·sqrt(2 ln2 · ic)` on
/// `Tr|ρ_AB − ρ_A ⊗ ρ_B|`, with `d'` the least prime power at or above `d`.
pub fn lemma1_rhs(ic: f64, d: usize) -> f64 {
    let dp = least_prime_power(d) as f64;
    (dp + 1.0).powi(2) * (2.0 * LN_2 * ic).sqrt()
}

/// Fannes continuity bound `log₂(d0)·t + η(t)` on an entropy difference,
/// valid for trace distance `t ≤ 1/e`. Returns the evaluated bound and
/// whether the precondition holds.
pub fn fannes_bound(t: f64, d0: usize) -> (f64, bool) {
    let bound = (d0 as f64).log2() * t + eta_extended(t);
    (bound, (0.0..=1.0 / std::f64::consts::E).contains(&t))
}

/// Pinsker: `(1/(2 ln2))(Σ|p−q|)² ≤ S(p‖q)`.
pub fn pinsker_gap(p: &[f64], q: &[f64]) -> Result<BoundReport> {
    if p.len() != q.len() {
        return Err(QmathError::DimensionMismatch(p.len(), q.len()).into());
    }
    let l1: f64 = p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum();
    let lhs = l1 * l1 / (2.0 * LN_2);
    let rhs = qmath::classical_relative_entropy(p, q)?;
    Ok(BoundReport::new("pinsker", lhs, rhs, true).with("l1", l1))
}

/// Merit figures `r1 = ic_after/ic` and `r2 = (ic_after − ic)/l`.
///
/// `ic = 0` with `ic_after > 0` reports infinite amplification; `l = 0`
/// and the fully degenerate case are errors.
pub fn merit_figures(ic: f64, ic_after: f64, l: f64) -> Result<MeritFigures> {
    if l <= 0.0 {
        return Err(BoundsError::ZeroKey);
    }
    let r2 = (ic_after - ic) / l;
    if ic <= 0.0 {
        if ic_after > 0.0 {
            return Ok(MeritFigures {
                r1: f64::INFINITY,
                r2,
            });
        }
        return Err(BoundsError::UndefinedMerit);
    }
    Ok(MeritFigures {
        r1: ic_after / ic,
        r2,
    })
}

/// Two-way cap on `I_c(ρ') − I_c(ρ)` from initial correlation `ic` and `l`
/// qubits of communication, for states on `C^d ⊗ C^d`.
///
/// `rhs` carries the full form
/// `2l + 2(d'+1)²√(2 ic ln2)·log₂ d + η((d'+1)²√(2 ic ln2))`; the looser
/// simplified form and the precondition threshold
/// `ic ≤ 1/(6 ln2 (d'+1)²)` are reported in the details.
pub fn theorem2_cap(ic: f64, l: f64, d: usize) -> BoundReport {
    let dp = least_prime_power(d) as f64;
    let factor = (dp + 1.0).powi(2);
    let threshold = 1.0 / (6.0 * LN_2 * factor);
    let x = factor * (2.0 * ic * LN_2).sqrt();
    let full = 2.0 * l + 2.0 * x * (d as f64).log2() + eta_extended(x);
    let simplified = if ic > 0.0 {
        2.0 * l - x * (2.0 * LN_2 * ic).sqrt().log2()
    } else {
        2.0 * l
    };
    BoundReport::new("theorem2_cap", 0.0, full, ic <= threshold)
        .with("full_cap", full)
        .with("simplified_cap", simplified)
        .with("d_prime", dp)
        .with("precondition_threshold", threshold)
}

// ---------------------------------------------------------------------------
// Lemma 1 decomposition chain
// ---------------------------------------------------------------------------

/// Verify the measurement decomposition behind the product-distance lemma
/// on a state over `C^d ⊗ C^d`:
///
/// `Tr|ρ − ρ_A⊗ρ_B|  ≤  Σ_kl ‖p_kl − q_kl‖₁  ≤  (d+1)²√(2 ln2 · max_kl S(p_kl‖q_kl))`
///
/// where `p_kl`, `q_kl` are the outcome distributions of measuring `ρ` and
/// `ρ_A⊗ρ_B` in the tensor eigenbasis `U_k ⊗ U_l` of the operator classes.
/// Returns the evaluated chain or an error if it fails beyond 1e-8.
pub fn lemma1_decomposition_check(
    rho: &DensityMatrix,
    ob: &OperatorBasis,
) -> Result<BoundReport> {
    let d = ob.dim();
    if rho.dim_a() != d || rho.dim_b() != d {
        return Err(BoundsError::BasisMismatch(rho.dim_a(), rho.dim_b(), d));
    }
    let ra = qmath::partial_trace(rho, Keep::A)?;
    let rb = qmath::partial_trace(rho, Keep::B)?;
    let product = qmath::tensor(ra.matrix(), rb.matrix());
    let lhs = qmath::trace_distance(rho.matrix(), &product)?;

    let bases = ob.eigenbases();
    // marginal outcome distributions per basis
    let diag_probs = |u: &CMat, m: &CMat| -> Vec<f64> {
        (0..d)
            .map(|j| {
                let col = u.column(j);
                (col.adjoint() * m * col)[(0, 0)].re.max(0.0)
            })
            .collect()
    };
    let pa: Vec<Vec<f64>> = bases.iter().map(|u| diag_probs(u, ra.matrix())).collect();
    let pb: Vec<Vec<f64>> = bases.iter().map(|u| diag_probs(u, rb.matrix())).collect();

    let mut mid = 0.0f64;
    let mut max_rel_entropy = 0.0f64;
    for (k, uk) in bases.iter().enumerate() {
        // Alice-side rotation once per k: block_m[b,b'] = ⟨m|U_k† ⊗ I ρ U_k ⊗ I|m⟩
        let blocks: Vec<CMat> = (0..d)
            .map(|m| {
                let v = uk.column(m);
                let mut block = CMat::zeros(d, d);
                for a in 0..d {
                    for a2 in 0..d {
                        let w = v[a].conj() * v[a2];
                        if w.norm_sqr() == 0.0 {
                            continue;
                        }
                        for b in 0..d {
                            for b2 in 0..d {
                                block[(b, b2)] += w * rho.matrix()[(a * d + b, a2 * d + b2)];
                            }
                        }
                    }
                }
                block
            })
            .collect();

        for (l, ul) in bases.iter().enumerate() {
            let mut l1 = 0.0f64;
            let mut rel = 0.0f64;
            for (m, block) in blocks.iter().enumerate() {
                for m2 in 0..d {
                    let col = ul.column(m2);
                    let p = (col.adjoint() * block * col)[(0, 0)].re.max(0.0);
                    let q = pa[k][m] * pb[l][m2];
                    l1 += (p - q).abs();
                    if p > 0.0 {
                        if q <= 0.0 {
                            rel = f64::INFINITY;
                        } else {
                            rel += p * (p / q).log2();
                        }
                    }
                }
            }
            mid += l1;
            max_rel_entropy = max_rel_entropy.max(rel);
        }
    }

    let factor = ((d + 1) * (d + 1)) as f64;
    let rhs = factor * (2.0 * LN_2 * max_rel_entropy).sqrt();
    if lhs > mid + 1e-8 {
        return Err(BoundsError::ChainViolated {
            stage: "trace-distance vs l1 sum",
            lhs,
            rhs: mid,
        });
    }
    if mid > rhs + 1e-8 {
        return Err(BoundsError::ChainViolated {
            stage: "l1 sum vs Pinsker cap",
            lhs: mid,
            rhs,
        });
    }
    Ok(BoundReport::new("lemma1_chain", lhs, rhs, true)
        .with("mid_l1_sum", mid)
        .with("max_rel_entropy", max_rel_entropy)
        // main-text variant of the factor, for comparison with (d'+1)²
        .with(
            "rhs_main_text_factor",
            (4 * d * d) as f64 * (2.0 * LN_2 * max_rel_entropy).sqrt(),
        ))
}

/// Pad a bipartite state into `C^D ⊗ C^D` so square-lattice machinery
/// (operator bases, the decomposition chain) applies to rectangular states.
pub fn embed_square(rho: &DensityMatrix, target: usize) -> Result<DensityMatrix> {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    if target < da.max(db) {
        return Err(BoundsError::BasisMismatch(da, db, target));
    }
    let mut mat = CMat::zeros(target * target, target * target);
    for a in 0..da {
        for b in 0..db {
            for a2 in 0..da {
                for b2 in 0..db {
                    mat[(a * target + b, a2 * target + b2)] =
                        rho.matrix()[(a * db + b, a2 * db + b2)];
                }
            }
        }
    }
    Ok(DensityMatrix::trusted(target, target, mat))
}

// ---------------------------------------------------------------------------
// Two-way proof-chain checks on concrete states
// ---------------------------------------------------------------------------

/// Step 1 of the two-way cap: any locally measured mutual information is at
/// most `I_q`.
pub fn theorem2_step1_check(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<BoundReport> {
    let res = infomeasure::icc_general_lower_bound(rho, cfg)?;
    let iq = infomeasure::quantum_mutual_info(rho)?;
    Ok(BoundReport::new("theorem2_step1_ic_le_iq", res.value, iq, true))
}

/// Step 3 of the two-way cap: `I_q ≤ log₂(dim)·T + η(T)` with
/// `T = Tr|ρ − ρ_A⊗ρ_B|`, valid when `T ≤ 1/e`.
pub fn theorem2_step3_check(rho: &DensityMatrix) -> Result<BoundReport> {
    let ra = qmath::partial_trace(rho, Keep::A)?;
    let rb = qmath::partial_trace(rho, Keep::B)?;
    let product = qmath::tensor(ra.matrix(), rb.matrix());
    let t = qmath::trace_distance(rho.matrix(), &product)?;
    let iq = infomeasure::quantum_mutual_info(rho)?;
    let (bound, ok) = fannes_bound(t, rho.dim());
    Ok(BoundReport::new("theorem2_step3_fromfannes", iq, bound, ok).with("trace_distance", t))
}

// ---------------------------------------------------------------------------
