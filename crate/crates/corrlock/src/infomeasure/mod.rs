//! Classical, accessible, and quantum mutual information.
//!
//! The optimizers produce certified lower bounds: every returned value is
//! the exactly evaluated mutual information of a concrete POVM, and each
//! result carries the tightest available upper-bound certificate (Holevo χ,
//! or an entropic-uncertainty bound when the ensemble is built from
//! mutually unbiased bases).

mod ascent;

use nalgebra::DMatrix;
use thiserror::Error;

pub(crate) use ascent::inv_sqrt_psd;
use ascent::{ascend, initial_params, MeasurementProblem, RestartInit};

use crate::mub::MubFamily;
use crate::qmath::{
    self, classical_mutual_info, holevo_chi, partial_trace, von_neumann_entropy, C64, CMat, CVec,
    DensityMatrix, Ensemble, JointDistribution, Keep, Povm, QmathError,
};
use crate::states::{bob_ensemble, LockingInstance};

#[derive(Debug, Error)]
pub enum InfoError {
    #[error(transparent)]
    Qmath(#[from] QmathError),
    #[error("optimizer configuration invalid: {0}")]
    BadConfig(&'static str),
}

pub type Result<T> = std::result::Result<T, InfoError>;

// ---------------------------------------------------------------------------
// Configuration and results
// ---------------------------------------------------------------------------

/// Settings for the multi-restart POVM optimizers.
///
/// `num_outcomes = None` defaults to `d²` (rank-one optima with at most `d²`
/// outcomes exist). Restart `i` draws its own RNG stream from
/// `(seed, i)`, so results do not depend on scheduling or thread count, and
/// enlarging `restarts` keeps the earlier streams (nested seeding).
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub num_outcomes: Option<usize>,
    pub restarts: usize,
    pub max_iters: usize,
    pub rel_tol: f64,
    pub step_init: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            num_outcomes: None,
            restarts: 32,
            max_iters: 2000,
            rel_tol: 1e-9,
            step_init: 0.1,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.restarts < 1 {
            return Err(InfoError::BadConfig("restarts must be at least 1"));
        }
        if let Some(n) = self.num_outcomes {
            if n < dim {
                return Err(InfoError::BadConfig("num_outcomes must be at least d"));
            }
        }
        Ok(())
    }

    fn outcomes_for(&self, dim: usize) -> usize {
        self.num_outcomes.unwrap_or(dim * dim).max(dim)
    }
}

/// Which family of upper bound certifies (or estimates) a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// Holevo χ of the ensemble.
    Holevo,
    /// Two-basis entropic uncertainty bound.
    MaassenUffink,
    /// Full-family (d+1 bases) entropic uncertainty bound.
    SanchezRuiz,
    /// Closed-form value.
    Analytic,
    /// `I_q` cap on bipartite classical correlation.
    QuantumMutualInfo,
    /// Numerical entropy-sum minimization: an estimate, not a certificate.
    EntropicEstimate,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Holevo => "holevo",
            Self::MaassenUffink => "maassen-uffink",
            Self::SanchezRuiz => "sanchez-ruiz",
            Self::Analytic => "analytic",
            Self::QuantumMutualInfo => "quantum-mutual-info",
            Self::EntropicEstimate => "entropic-estimate",
        }
    }

    /// Whether a bound of this kind is rigorous (an estimate is not).
    pub fn is_certificate(&self) -> bool {
        !matches!(self, Self::EntropicEstimate)
    }
}

impl std::fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of an optimizer run: a certified lower bound plus the tightest
/// upper bound available.
#[derive(Debug, Clone)]
pub struct OptResult {
    /// Best mutual information found; a valid lower bound.
    pub value: f64,
    /// Tightest certificate (see `certificate_kind`).
    pub upper_bound: f64,
    pub certificate_kind: CertificateKind,
    pub best_povm: Povm,
    /// Final objective of each restart, in restart order.
    pub per_restart: Vec<f64>,
    pub converged: bool,
}

/// An upper bound on `I_c` for a locking instance.
#[derive(Debug, Clone, Copy)]
pub struct UpperBound {
    pub bits: f64,
    pub kind: CertificateKind,
}

impl UpperBound {
    pub fn is_certificate(&self) -> bool {
        self.kind.is_certificate()
    }
}

// ---------------------------------------------------------------------------
// Direct evaluations
// ---------------------------------------------------------------------------

/// Mutual information between the ensemble label and the POVM outcome.
pub fn mutual_info_of_povm(e: &Ensemble, m: &Povm) -> Result<f64> {
    if e.dim() != m.dim() {
        return Err(QmathError::DimensionMismatch(e.dim(), m.dim()).into());
    }
    let probs = DMatrix::from_fn(e.len(), m.len(), |i, j| {
        let (p, v) = &e.items()[i];
        let t = (v.adjoint() * &m.elements()[j] * v)[(0, 0)].re;
        (p * t).max(0.0)
    });
    let total: f64 = probs.iter().sum();
    let probs = if total > 0.0 { probs / total } else { probs };
    Ok(classical_mutual_info(&JointDistribution::new(probs)?))
}

/// Quantum mutual information `S(ρ_A) + S(ρ_B) − S(ρ)` in bits.
pub fn quantum_mutual_info(rho: &DensityMatrix) -> Result<f64> {
    let ra = partial_trace(rho, Keep::A)?;
    let rb = partial_trace(rho, Keep::B)?;
    Ok(von_neumann_entropy(&ra) + von_neumann_entropy(&rb) - von_neumann_entropy(rho))
}

/// `I_c` of the unlocked state, `log₂ L + log₂ d`.
pub fn unlocked_icc_analytic(inst: &LockingInstance) -> f64 {
    (inst.num_bases() as f64).log2() + (inst.d() as f64).log2()
}

// ---------------------------------------------------------------------------
// Accessible-information optimization
// ---------------------------------------------------------------------------

use crate::sample::derive_seed;

fn map_restarts<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Build the restart list: computational warm start, one warm start per
/// extra basis, any explicit warm starts (covariant POVMs), then seeded
/// random restarts up to the configured budget.
fn restart_plan(
    warm_bases: &[CMat],
    explicit: Vec<Vec<CMat>>,
    cfg: &OptimizerConfig,
) -> Vec<RestartInit> {
    let mut plan = vec![RestartInit::Computational];
    for u in warm_bases {
        let d = u.nrows();
        if (u - CMat::identity(d, d)).norm() > 1e-12 {
            plan.push(RestartInit::Basis(u.clone()));
        }
    }
    for bs in explicit {
        plan.push(RestartInit::Explicit(bs));
    }
    plan.truncate(cfg.restarts.max(1));
    let mut salt = 0u64;
    while plan.len() < cfg.restarts {
        plan.push(RestartInit::Random(derive_seed(cfg.seed, salt)));
        salt += 1;
    }
    plan
}

struct SearchOutcome {
    values: Vec<f64>,
    best_elements: Vec<CMat>,
    converged: bool,
}

fn run_search(problem: &MeasurementProblem, plan: &[RestartInit], cfg: &OptimizerConfig) -> SearchOutcome {
    let n_out = cfg.outcomes_for(problem.dim);
    let runs = map_restarts(plan.len(), |i| {
        let start = initial_params(&plan[i], problem.dim, n_out);
        ascend(problem, start, cfg.max_iters, cfg.rel_tol, cfg.step_init)
    });
    let mut best_index = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.value > runs[best_index].value {
            best_index = i;
        }
    }
    let best_elements = ascent::povm_elements(&runs[best_index].params);
    SearchOutcome {
        values: runs.iter().map(|r| r.value).collect(),
        converged: runs[best_index].converged,
        best_elements,
    }
}

/// Group an ensemble into mutually unbiased orthonormal bases, if it is the
/// uniform ensemble over the columns of such a family. Used to seed the
/// optimizer with the measurements known to matter for locking ensembles.
fn detect_mub_bases(e: &Ensemble) -> Option<Vec<CMat>> {
    let d = e.dim();
    let n = e.len();
    if n % d != 0 || n == 0 {
        return None;
    }
    let uniform = 1.0 / n as f64;
    if e.items().iter().any(|(p, _)| (p - uniform).abs() > 1e-9) {
        return None;
    }
    let vecs: Vec<&CVec> = e.items().iter().map(|(_, v)| v).collect();
    let mut assigned = vec![false; n];
    let mut bases: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let group: Vec<usize> = (i..n)
            .filter(|&j| {
                !assigned[j] && (j == i || (vecs[i].adjoint() * vecs[j])[(0, 0)].norm() < 1e-9)
            })
            .collect();
        if group.len() != d {
            return None;
        }
        // mutual orthogonality inside the group
        for (a, &x) in group.iter().enumerate() {
            for &y in &group[a + 1..] {
                if (vecs[x].adjoint() * vecs[y])[(0, 0)].norm() > 1e-9 {
                    return None;
                }
            }
            assigned[x] = true;
        }
        bases.push(group);
    }
    // cross-basis unbiasedness
    let target = 1.0 / d as f64;
    for (s, ga) in bases.iter().enumerate() {
        for gb in &bases[s + 1..] {
            for &x in ga {
                for &y in gb {
                    let ov = (vecs[x].adjoint() * vecs[y])[(0, 0)].norm_sqr();
                    if (ov - target).abs() > 1e-6 {
                        return None;
                    }
                }
            }
        }
    }
    Some(
        bases
            .iter()
            .map(|group| {
                let mut u = CMat::zeros(d, d);
                for (col, &idx) in group.iter().enumerate() {
                    u.set_column(col, vecs[idx]);
                }
                u
            })
            .collect(),
    )
}

/// Entropic upper bound on the accessible information of the uniform
/// ensemble over `l` MUBs in dimension `d`, where one is known.
fn entropic_bound(d: usize, l: usize) -> Option<UpperBound> {
    if l == 2 {
        // sum of the two measurement entropies is at least log2 d
        Some(UpperBound {
            bits: 0.5 * (d as f64).log2(),
            kind: CertificateKind::MaassenUffink,
        })
    } else if l == d + 1 {
        // sum of the d+1 entropies is at least (d+1) log2((d+1)/2)
        Some(UpperBound {
            bits: 1.0 - (1.0 + 1.0 / d as f64).log2(),
            kind: CertificateKind::SanchezRuiz,
        })
    } else {
        None
    }
}

/// Maximize the mutual information between the ensemble label and a POVM
/// outcome by multi-restart gradient ascent.
///
/// The restart list always contains the computational-basis warm start;
/// when the ensemble is recognized as the uniform ensemble over a MUB
/// family, each basis contributes a further warm start and the matching
/// entropic certificate is attached when one exists.
pub fn optimize_accessible_info(e: &Ensemble, cfg: &OptimizerConfig) -> Result<OptResult> {
    e.validate()?;
    cfg.validate(e.dim())?;
    let detected = detect_mub_bases(e);
    let warm = detected.clone().unwrap_or_default();
    let entropic = detected
        .as_ref()
        .and_then(|bases| entropic_bound(e.dim(), bases.len()));
    optimize_with_warm_starts(e, &warm, Vec::new(), entropic, cfg)
}

fn optimize_with_warm_starts(
    e: &Ensemble,
    warm_bases: &[CMat],
    explicit: Vec<Vec<CMat>>,
    entropic: Option<UpperBound>,
    cfg: &OptimizerConfig,
) -> Result<OptResult> {
    let problem = MeasurementProblem::from_pure(e.items());
    let plan = restart_plan(warm_bases, explicit, cfg);
    let search = run_search(&problem, &plan, cfg);

    let best_povm = Povm::trusted(search.best_elements);
    let value = mutual_info_of_povm(e, &best_povm)?;

    let chi = holevo_chi(e);
    let (upper_bound, certificate_kind) = match entropic {
        Some(ub) if ub.bits <= chi => (ub.bits, ub.kind),
        _ => (chi, CertificateKind::Holevo),
    };

    Ok(OptResult {
        value,
        upper_bound,
        certificate_kind,
        best_povm,
        per_restart: search.values,
        converged: search.converged,
    })
}

/// `I_c` of a locking state as a certified lower bound: Alice's complete
/// measurement along `{|k⟩⊗|t⟩}` is optimal for her, which reduces `I_c(ρ)`
/// to the accessible information of Bob's ensemble.
///
/// Besides the basis warm starts, the restart list carries the covariant
/// POVM built on the Weyl orbit of the entropy-sum minimizer: conjugation
/// by a Weyl operator permutes each basis of the family, so every orbit
/// element shares the minimal entropy sum and the orbit resolves the
/// identity — for these ensembles that measurement attains the entropic
/// bound `log₂ d − (1/L) min_φ Σ_t H_t(φ)` exactly.
pub fn icc_locking(inst: &LockingInstance, cfg: &OptimizerConfig) -> Result<OptResult> {
    let e = bob_ensemble(inst);
    let warm: Vec<CMat> = inst.mubs().unitaries().to_vec();
    let explicit = covariant_warm_start(inst, cfg)
        .map(|bs| vec![bs])
        .unwrap_or_default();
    let entropic = entropic_bound(inst.d(), inst.num_bases());
    optimize_with_warm_starts(&e, &warm, explicit, entropic, cfg)
}

/// Parameters of the Weyl-covariant POVM `{(1/d)·W|φ*⟩⟨φ*|W†}` seeded by
/// the numerical entropy-sum minimizer `φ*`.
fn covariant_warm_start(inst: &LockingInstance, cfg: &OptimizerConfig) -> Option<Vec<CMat>> {
    let d = inst.d();
    let field = crate::mub::GaloisField::for_order(d).ok()?;
    let seed_cfg = OptimizerConfig {
        restarts: cfg.restarts.clamp(4, 16),
        max_iters: cfg.max_iters.max(500),
        rel_tol: cfg.rel_tol.min(1e-10),
        ..cfg.clone()
    };
    let (_, phi) = entropy_sum_min_vector(inst.mubs(), &seed_cfg);
    let scale = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    Some(
        crate::mub::weyl_operators(&field)
            .iter()
            .map(|w| {
                let v = w * &phi;
                // one nonzero row: B†B = (1/d)|v⟩⟨v|
                let mut b = CMat::zeros(d, d);
                for (col, amp) in v.iter().enumerate() {
                    b[(0, col)] = amp.conj() * scale;
                }
                b
            })
            .collect(),
    )
}

/// Upper bound on `I_c` of a locking instance.
///
/// For `L = 2` and `L = d+1` the entropic uncertainty bounds give rigorous
/// certificates. For intermediate `L` no closed-form inequality is
/// available, so the bound is evaluated by numerically minimizing the
/// entropy sum and is flagged [`CertificateKind::EntropicEstimate`].
pub fn icc_locking_upper_bound(inst: &LockingInstance) -> UpperBound {
    if let Some(ub) = entropic_bound(inst.d(), inst.num_bases()) {
        return ub;
    }
    let cfg = OptimizerConfig {
        restarts: 8,
        max_iters: 1000,
        rel_tol: 1e-10,
        ..OptimizerConfig::default()
    };
    let min_sum = entropy_sum_min(inst.mubs(), &cfg);
    UpperBound {
        bits: (inst.d() as f64).log2() - min_sum / inst.num_bases() as f64,
        kind: CertificateKind::EntropicEstimate,
    }
}

// ---------------------------------------------------------------------------
// Entropy-sum minimization
// ---------------------------------------------------------------------------

/// Minimize `Σ_t H(|⟨·|U_t†|φ⟩|²)` over unit vectors `|φ⟩`: how far a single
/// state can be simultaneously aligned with every basis of the family.
/// Projected gradient descent on the unit sphere, warm-started from every
/// basis vector of the family plus `cfg.restarts` random starts.
pub fn entropy_sum_min(m: &MubFamily, cfg: &OptimizerConfig) -> f64 {
    entropy_sum_min_vector(m, cfg).0
}

/// As [`entropy_sum_min`] but also returns the minimizing vector.
pub fn entropy_sum_min_vector(m: &MubFamily, cfg: &OptimizerConfig) -> (f64, CVec) {
    let d = m.dim();
    let cols: Vec<CVec> = m
        .unitaries()
        .iter()
        .flat_map(|u| (0..d).map(move |j| u.column(j).clone_owned()))
        .collect();

    let objective = |phi: &CVec| -> f64 {
        let mut total = 0.0;
        for c in &cols {
            let p = (c.adjoint() * phi)[(0, 0)].norm_sqr();
            if p > 0.0 {
                total -= p * p.log2();
            }
        }
        total
    };
    let gradient = |phi: &CVec| -> CVec {
        let mut g = CVec::zeros(d);
        for c in &cols {
            let amp = (c.adjoint() * phi)[(0, 0)];
            let p = amp.norm_sqr().max(1e-18);
            let coeff = -(p.log2() + std::f64::consts::LOG2_E);
            g += c.map(|x| x * amp * C64::new(coeff, 0.0));
        }
        // tangent component on the sphere
        let overlap = (phi.adjoint() * &g)[(0, 0)];
        g - phi.map(|x| x * overlap)
    };

    let descend = |start: CVec| -> (f64, CVec) {
        let mut phi = start;
        let mut best = objective(&phi);
        let mut step = cfg.step_init.max(1e-6);
        let mut flat = 0u32;
        for _ in 0..cfg.max_iters {
            let g = gradient(&phi);
            if g.norm() < 1e-14 {
                break;
            }
            let mut t = step;
            let mut accepted = false;
            for halving in 0..40 {
                let mut cand = &phi - g.map(|x| x * C64::new(t, 0.0));
                let n = cand.norm();
                if n < 1e-12 {
                    t *= 0.5;
                    continue;
                }
                cand /= C64::new(n, 0.0);
                let f = objective(&cand);
                if f < best {
                    let rel = (best - f) / best.abs().max(1e-12);
                    phi = cand;
                    best = f;
                    step = if halving == 0 { (step * 1.5).min(10.0) } else { t };
                    flat = if rel < cfg.rel_tol { flat + 1 } else { 0 };
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted {
                flat += 1;
                step = (step * 0.5).max(1e-12);
            }
            if flat >= 5 {
                break;
            }
        }
        (best, phi)
    };

    use rand::SeedableRng;
    let mut starts: Vec<CVec> = cols.clone();
    for i in 0..cfg.restarts {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 0x5eed ^ i as u64));
        starts.push(crate::sample::random_pure_state(&mut rng, d));
    }
    let results = map_restarts(starts.len(), |i| descend(starts[i].clone()));
    results
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one basis-vector start")
}

// ---------------------------------------------------------------------------
// General bipartite lower bound (seesaw)
// ---------------------------------------------------------------------------

/// `Tr_B[(I ⊗ B_j) ρ]`, the subnormalized conditional state on A.
fn conditional_on_a(rho: &DensityMatrix, b_el: &CMat) -> CMat {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let m = rho.matrix();
    let mut out = CMat::zeros(da, da);
    for a in 0..da {
        for a2 in 0..da {
            let mut s = C64::new(0.0, 0.0);
            for b in 0..db {
                for c in 0..db {
                    s += b_el[(b, c)] * m[(a * db + c, a2 * db + b)];
                }
            }
            out[(a, a2)] = s;
        }
    }
    out
}

/// `Tr_A[(A_i ⊗ I) ρ]`, the subnormalized conditional state on B.
fn conditional_on_b(rho: &DensityMatrix, a_el: &CMat) -> CMat {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let m = rho.matrix();
    let mut out = CMat::zeros(db, db);
    for b in 0..db {
        for b2 in 0..db {
            let mut s = C64::new(0.0, 0.0);
            for a in 0..da {
                for a2 in 0..da {
                    s += a_el[(a, a2)] * m[(a2 * db + b, a * db + b2)];
                }
            }
            out[(b, b2)] = s;
        }
    }
    out
}

fn conditional_problem(conditionals: Vec<CMat>) -> MeasurementProblem {
    let items: Vec<(f64, CMat)> = conditionals
        .into_iter()
        .filter_map(|m| {
            let w = m.trace().re;
            (w > 1e-15).then(|| (w, m.scale(1.0 / w)))
        })
        .collect();
    MeasurementProblem::from_mixed(items)
}

/// Certified lower bound on `I_c(ρ)` by alternating (seesaw) ascent: fix
/// Bob's POVM and optimize Alice's, then the reverse, until the joint
/// mutual information plateaus. The upper bound is `I_q(ρ)`.
pub fn icc_general_lower_bound(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<OptResult> {
    if !rho.is_bipartite() {
        return Err(QmathError::Unipartite.into());
    }
    cfg.validate(rho.dim_a().min(rho.dim_b()))?;
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let (na, nb) = (cfg.outcomes_for(da), cfg.outcomes_for(db));
    const MAX_ROUNDS: usize = 60;

    let run_restart = |r: usize| -> (f64, Vec<CMat>, Vec<CMat>, bool) {
        let (mut params_a, mut params_b) = if r == 0 {
            (
                initial_params(&RestartInit::Computational, da, na),
                initial_params(&RestartInit::Computational, db, nb),
            )
        } else {
            (
                initial_params(&RestartInit::Random(derive_seed(cfg.seed, 2 * r as u64)), da, na),
                initial_params(
                    &RestartInit::Random(derive_seed(cfg.seed, 2 * r as u64 + 1)),
                    db,
                    nb,
                ),
            )
        };

        let mut current = f64::NEG_INFINITY;
        let mut flat = 0u32;
        let mut converged = false;
        for _ in 0..MAX_ROUNDS {
            // Alice's turn against Bob's current POVM
            let b_elements = ascent::povm_elements(&params_b);
            let problem_a = conditional_problem(
                b_elements.iter().map(|el| conditional_on_a(rho, el)).collect(),
            );
            let out_a = ascend(&problem_a, params_a, cfg.max_iters, cfg.rel_tol, cfg.step_init);
            params_a = out_a.params;

            // Bob's turn against Alice's new POVM
            let a_elements = ascent::povm_elements(&params_a);
            let problem_b = conditional_problem(
                a_elements.iter().map(|el| conditional_on_b(rho, el)).collect(),
            );
            let out_b = ascend(&problem_b, params_b, cfg.max_iters, cfg.rel_tol, cfg.step_init);
            params_b = out_b.params;

            let gain = out_b.value - current;
            current = out_b.value;
            if gain.abs() <= cfg.rel_tol * current.abs().max(1e-12) {
                flat += 1;
                if flat >= 2 {
                    converged = true;
                    break;
                }
            } else {
                flat = 0;
            }
        }
        (current, params_a, params_b, converged)
    };

    let runs = map_restarts(cfg.restarts, run_restart);
    let mut best_index = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.0 > runs[best_index].0 {
            best_index = i;
        }
    }
    let (_, params_a, params_b, converged) = &runs[best_index];
    let povm_a = Povm::trusted(ascent::povm_elements(params_a));
    let povm_b = Povm::trusted(ascent::povm_elements(params_b));
    // evaluate through the independent measurement path
    let joint = qmath::measurement_joint_distribution(rho, &povm_a, &povm_b)?;
    let value = classical_mutual_info(&joint);

    Ok(OptResult {
        value,
        upper_bound: quantum_mutual_info(rho)?,
        certificate_kind: CertificateKind::QuantumMutualInfo,
        best_povm: povm_b,
        per_restart: runs.iter().map(|r| r.0).collect(),
        converged: *converged,
    })
}

// ---------------------------------------------------------------------------
