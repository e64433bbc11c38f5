//! Core density-matrix algebra.
//!
//! Dense complex matrices, base-2 entropies, trace distance, partial traces
//! and local-measurement statistics. Everything here is a pure function of
//! immutable inputs; matrices stay dense (subsystem dimensions at desk scale).

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{Complex, DMatrix, DVector};
use thiserror::Error;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Hermiticity deviation allowed on state-like inputs.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Eigenvalues in `[-EIGENVALUE_TOL, 0)` are treated as exact zeros;
/// anything more negative fails validation.
pub const EIGENVALUE_TOL: f64 = 1e-10;
/// Allowed deviation of traces and probability sums from 1.
pub const TRACE_TOL: f64 = 1e-10;
/// POVM elements must sum to identity within this bound (max-entry norm).
pub const POVM_COMPLETENESS_TOL: f64 = 1e-8;
/// Eigenvalues at or below this threshold count as outside the support
/// when deciding whether a relative entropy is infinite.
pub const SUPPORT_TOL: f64 = 1e-12;
/// Hermiticity deviation allowed on the difference fed to [`trace_distance`].
pub const TRACE_DISTANCE_HERM_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum QmathError {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("subsystem dimensions {0}x{1} do not match matrix size {2}")]
    BadSubsystemDims(usize, usize, usize),
    #[error("not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    BadTrace(f64),
    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("operation requires a bipartite state (dim_b > 1)")]
    Unipartite,
    #[error("probabilities sum to {0}, expected 1")]
    BadProbabilitySum(f64),
    #[error("state vector has norm {0}, expected 1")]
    BadNorm(f64),
    #[error("POVM elements do not sum to identity (max deviation {0:e})")]
    IncompletePovm(f64),
    #[error("empty collection: {0}")]
    Empty(&'static str),
}

pub type Result<T> = std::result::Result<T, QmathError>;

// ---------------------------------------------------------------------------
// Small shared helpers
// ---------------------------------------------------------------------------

pub(crate) fn max_hermiticity_deviation(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = m[(i, j)] - m[(j, i)].conj();
            dev = dev.max(d.norm());
        }
    }
    dev
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let sym = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Full eigendecomposition of a Hermitian matrix: `(eigenvalues, eigenvectors)`
/// with eigenvectors in columns, same index order as the eigenvalues.
pub(crate) fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

#[inline]
fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// A density matrix with subsystem dimension metadata.
///
/// Unipartite states use `dim_b = 1`. The matrix is stored dense, row-major
/// in the composite index `a * dim_b + b` (A-index major).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    mat: CMat,
}

impl DensityMatrix {
    /// Validating constructor: Hermitian within 1e-10, eigenvalues above
    /// `-1e-10`, trace 1 within 1e-10.
    pub fn new(dim_a: usize, dim_b: usize, mat: CMat) -> Result<Self> {
        let dm = Self { dim_a, dim_b, mat };
        dm.validate()?;
        Ok(dm)
    }

    /// Constructor for matrices whose invariants hold by construction.
    pub(crate) fn trusted(dim_a: usize, dim_b: usize, mat: CMat) -> Self {
        debug_assert_eq!(dim_a * dim_b, mat.nrows());
        Self { dim_a, dim_b, mat }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.mat.nrows();
        if self.mat.ncols() != n {
            return Err(QmathError::NotSquare(n, self.mat.ncols()));
        }
        if self.dim_a * self.dim_b != n || self.dim_a == 0 || self.dim_b == 0 {
            return Err(QmathError::BadSubsystemDims(self.dim_a, self.dim_b, n));
        }
        let herm = max_hermiticity_deviation(&self.mat);
        if herm > HERMITICITY_TOL {
            return Err(QmathError::NotHermitian(herm));
        }
        let tr = self.mat.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(QmathError::BadTrace(tr));
        }
        let min_ev = hermitian_eigenvalues(&self.mat)
            .first()
            .copied()
            .unwrap_or(f64::INFINITY);
        if min_ev < -EIGENVALUE_TOL {
            return Err(QmathError::NotPsd(min_ev));
        }
        Ok(())
    }

    /// Rank-one state from a unit vector (unipartite metadata).
    pub fn from_pure(psi: &CVec) -> Result<Self> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(QmathError::BadNorm(norm));
        }
        let mat = psi * psi.adjoint();
        Ok(Self::trusted(psi.len(), 1, mat))
    }

    /// Rank-one bipartite state from a unit vector on `C^{da} ⊗ C^{db}`.
    pub fn from_pure_bipartite(psi: &CVec, dim_a: usize, dim_b: usize) -> Result<Self> {
        if psi.len() != dim_a * dim_b {
            return Err(QmathError::BadSubsystemDims(dim_a, dim_b, psi.len()));
        }
        let norm = psi.norm();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(QmathError::BadNorm(norm));
        }
        Ok(Self::trusted(dim_a, dim_b, psi * psi.adjoint()))
    }

    /// Maximally mixed state on `dim` levels.
    pub fn maximally_mixed(dim: usize) -> Self {
        let mat = CMat::identity(dim, dim).scale(1.0 / dim as f64);
        Self::trusted(dim, 1, mat)
    }

    /// Reinterpret the same matrix with a different subsystem split.
    pub fn with_split(&self, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a * dim_b != self.dim() {
            return Err(QmathError::BadSubsystemDims(dim_a, dim_b, self.dim()));
        }
        Ok(Self::trusted(dim_a, dim_b, self.mat.clone()))
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total Hilbert-space dimension `dim_a * dim_b`.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn is_bipartite(&self) -> bool {
        self.dim_b > 1
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }
}

/// Which subsystem [`partial_trace`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

/// A POVM: positive semidefinite operators of common dimension summing to
/// the identity. Zero operators are allowed as padding.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<CMat>,
}

impl Povm {
    pub fn new(elements: Vec<CMat>) -> Result<Self> {
        let povm = Self { elements };
        povm.validate()?;
        Ok(povm)
    }

    pub(crate) fn trusted(elements: Vec<CMat>) -> Self {
        Self { elements }
    }

    /// Projective measurement along the columns of a unitary.
    pub fn projective(basis: &CMat) -> Self {
        let elements = (0..basis.ncols())
            .map(|j| {
                let col = basis.column(j);
                &col * col.adjoint()
            })
            .collect();
        Self { elements }
    }

    pub fn validate(&self) -> Result<()> {
        if self.elements.is_empty() {
            return Err(QmathError::Empty("POVM"));
        }
        let d = self.elements[0].nrows();
        let mut sum = CMat::zeros(d, d);
        for e in &self.elements {
            if e.nrows() != d || e.ncols() != d {
                return Err(QmathError::DimensionMismatch(e.nrows(), d));
            }
            let herm = max_hermiticity_deviation(e);
            if herm > HERMITICITY_TOL {
                return Err(QmathError::NotHermitian(herm));
            }
            let min_ev = hermitian_eigenvalues(e).first().copied().unwrap_or(0.0);
            if min_ev < -EIGENVALUE_TOL {
                return Err(QmathError::NotPsd(min_ev));
            }
            sum += e;
        }
        let dev = (&sum - CMat::identity(d, d))
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        if dev > POVM_COMPLETENESS_TOL {
            return Err(QmathError::IncompletePovm(dev));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.elements.first().map_or(0, |e| e.nrows())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMat] {
        &self.elements
    }
}

/// An ensemble of pure states with probabilities.
#[derive(Debug, Clone)]
pub struct Ensemble {
    items: Vec<(f64, CVec)>,
}

impl Ensemble {
    pub fn new(items: Vec<(f64, CVec)>) -> Result<Self> {
        let e = Self { items };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        if self.items.is_empty() {
            return Err(QmathError::Empty("ensemble"));
        }
        let d = self.items[0].1.len();
        let mut psum = 0.0;
        for (p, v) in &self.items {
            if v.len() != d {
                return Err(QmathError::DimensionMismatch(v.len(), d));
            }
            if !(0.0..=1.0 + TRACE_TOL).contains(p) {
                return Err(QmathError::BadProbabilitySum(*p));
            }
            let norm = v.norm();
            if (norm - 1.0).abs() > TRACE_TOL {
                return Err(QmathError::BadNorm(norm));
            }
            psum += p;
        }
        if (psum - 1.0).abs() > TRACE_TOL {
            return Err(QmathError::BadProbabilitySum(psum));
        }
        Ok(())
    }

    pub fn items(&self) -> &[(f64, CVec)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.items.first().map_or(0, |(_, v)| v.len())
    }

    /// The average state `μ = Σ p_i |η_i⟩⟨η_i|`.
    pub fn average_state(&self) -> DensityMatrix {
        let d = self.dim();
        let mut mu = CMat::zeros(d, d);
        for (p, v) in &self.items {
            mu += (v * v.adjoint()).scale(*p);
        }
        DensityMatrix::trusted(d, 1, mu)
    }

    /// The `m`-fold product ensemble: all tuples of members with product
    /// probabilities, each state the Kronecker product of the members.
    pub fn power(&self, m: u32) -> Ensemble {
        let mut items: Vec<(f64, CVec)> = vec![(1.0, CVec::from_element(1, C64::new(1.0, 0.0)))];
        for _ in 0..m {
            let mut next = Vec::with_capacity(items.len() * self.items.len());
            for (p, v) in &items {
                for (q, w) in &self.items {
                    next.push((p * q, v.kronecker(w)));
                }
            }
            items = next;
        }
        Ensemble { items }
    }
}

/// A joint probability distribution over two outcome sets.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    probs: DMatrix<f64>,
}

impl JointDistribution {
    pub fn new(probs: DMatrix<f64>) -> Result<Self> {
        let mut sum = 0.0;
        for &p in probs.iter() {
            if p < 0.0 {
                return Err(QmathError::BadProbabilitySum(p));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(QmathError::BadProbabilitySum(sum));
        }
        Ok(Self { probs })
    }

    pub(crate) fn trusted(probs: DMatrix<f64>) -> Self {
        Self { probs }
    }

    pub fn probs(&self) -> &DMatrix<f64> {
        &self.probs
    }

    pub fn marginal_a(&self) -> Vec<f64> {
        (0..self.probs.nrows())
            .map(|i| self.probs.row(i).sum())
            .collect()
    }

    pub fn marginal_b(&self) -> Vec<f64> {
        (0..self.probs.ncols())
            .map(|j| self.probs.column(j).sum())
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Kronecker product, A-index major: `(a ⊗ b)[(i·p+k),(j·q+l)] = a[i,j]·b[k,l]`.
pub fn tensor(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Reduced state of the kept subsystem.
pub fn partial_trace(rho: &DensityMatrix, keep: Keep) -> Result<DensityMatrix> {
    if !rho.is_bipartite() {
        return Err(QmathError::Unipartite);
    }
    let (da, db) = (rho.dim_a, rho.dim_b);
    let m = &rho.mat;
    let out = match keep {
        Keep::A => {
            let mut out = CMat::zeros(da, da);
            for a in 0..da {
                for a2 in 0..da {
                    let mut s = C64::new(0.0, 0.0);
                    for b in 0..db {
                        s += m[(a * db + b, a2 * db + b)];
                    }
                    out[(a, a2)] = s;
                }
            }
            out
        }
        Keep::B => {
            let mut out = CMat::zeros(db, db);
            for b in 0..db {
                for b2 in 0..db {
                    let mut s = C64::new(0.0, 0.0);
                    for a in 0..da {
                        s += m[(a * db + b, a * db + b2)];
                    }
                    out[(b, b2)] = s;
                }
            }
            out
        }
    };
    let d = out.nrows();
    Ok(DensityMatrix::trusted(d, 1, out))
}

/// Von Neumann entropy in bits: `−Σ λ log₂ λ` over the eigenvalues.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&hermitian_eigenvalues(&rho.mat))
}

/// Entropy of a set of eigenvalues, clamping the `[-1e-10, 0)` band to zero.
pub(crate) fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    -eigenvalues.iter().map(|&l| xlog2x(l.max(0.0))).sum::<f64>()
}

/// Quantum relative entropy `S(ν‖μ) = Tr ν log₂ ν − Tr ν log₂ μ` in bits.
///
/// Returns `+∞` when the support of `ν` is not contained in the support of
/// `μ` (eigenvalues at or below 1e-12 count as outside the support).
pub fn quantum_relative_entropy(nu: &DensityMatrix, mu: &DensityMatrix) -> Result<f64> {
    if nu.dim() != mu.dim() {
        return Err(QmathError::DimensionMismatch(nu.dim(), mu.dim()));
    }
    let nu_ev = hermitian_eigenvalues(&nu.mat);
    let first = nu_ev.iter().map(|&l| xlog2x(l.max(0.0))).sum::<f64>();

    let (mu_ev, mu_vecs) = hermitian_eigen(&mu.mat);
    let mut second = 0.0;
    for (j, &s) in mu_ev.iter().enumerate() {
        let w = mu_vecs.column(j);
        let mass = (w.adjoint() * &nu.mat * w)[(0, 0)].re;
        if s <= SUPPORT_TOL {
            if mass > SUPPORT_TOL {
                return Ok(f64::INFINITY);
            }
        } else {
            second += mass * s.log2();
        }
    }
    Ok(first - second)
}

/// Trace distance `Σ |eigenvalues of (a − b)|` between Hermitian matrices.
pub fn trace_distance(a: &CMat, b: &CMat) -> Result<f64> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(QmathError::DimensionMismatch(a.nrows(), b.nrows()));
    }
    let mut diff = a - b;
    let herm = max_hermiticity_deviation(&diff);
    if herm > TRACE_DISTANCE_HERM_TOL {
        return Err(QmathError::NotHermitian(herm));
    }
    // canonicalize the overall sign so the result is bit-identical under
    // argument swap (the spectrum only flips sign)
    if let Some(lead) = diff.iter().find(|z| z.re != 0.0 || z.im != 0.0) {
        if lead.re < 0.0 || (lead.re == 0.0 && lead.im < 0.0) {
            diff.neg_mut();
        }
    }
    Ok(hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum())
}

/// Shannon entropy in bits, with `0·log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().map(|&x| xlog2x(x)).sum::<f64>()
}

/// Classical relative entropy `Σ p log₂(p/q)` in bits; `+∞` when some
/// `p_i > 0` has `q_i = 0`.
pub fn classical_relative_entropy(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(QmathError::DimensionMismatch(p.len(), q.len()));
    }
    let mut s = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi <= 0.0 {
            continue;
        }
        if qi <= 0.0 {
            return Ok(f64::INFINITY);
        }
        s += pi * (pi / qi).log2();
    }
    Ok(s)
}

/// Classical mutual information `H(p_A) + H(p_B) − H(p_AB)` of a joint
/// distribution, in bits.
pub fn classical_mutual_info(j: &JointDistribution) -> f64 {
    let ha = shannon_entropy(&j.marginal_a());
    let hb = shannon_entropy(&j.marginal_b());
    let hab = -j.probs.iter().map(|&x| xlog2x(x)).sum::<f64>();
    ha + hb - hab
}

/// Outcome distribution `p(i,j) = Tr((A_i ⊗ B_j) ρ)` of a local product
/// measurement. Small negative values (≥ −1e-12 scale noise) are clamped to
/// zero and the table is renormalized to sum exactly 1.
pub fn measurement_joint_distribution(
    rho: &DensityMatrix,
    ma: &Povm,
    mb: &Povm,
) -> Result<JointDistribution> {
    if ma.dim() != rho.dim_a {
        return Err(QmathError::DimensionMismatch(ma.dim(), rho.dim_a));
    }
    if mb.dim() != rho.dim_b {
        return Err(QmathError::DimensionMismatch(mb.dim(), rho.dim_b));
    }
    let (da, db) = (rho.dim_a, rho.dim_b);
    let m = &rho.mat;
    let mut probs = DMatrix::<f64>::zeros(ma.len(), mb.len());
    for (i, ai) in ma.elements().iter().enumerate() {
        // t[b, b'] = Σ_{a,a'} A_i[a,a'] ρ[(a',b),(a,b')]
        let mut t = CMat::zeros(db, db);
        for a in 0..da {
            for a2 in 0..da {
                let w = ai[(a, a2)];
                if w.norm_sqr() == 0.0 {
                    continue;
                }
                for b in 0..db {
                    for b2 in 0..db {
                        t[(b, b2)] += w * m[(a2 * db + b, a * db + b2)];
                    }
                }
            }
        }
        for (j, bj) in mb.elements().iter().enumerate() {
            // Tr((A_i ⊗ B_j) ρ) = Σ_{b,b'} B_j[b,b'] t[b',b]
            let mut s = C64::new(0.0, 0.0);
            for b in 0..db {
                for b2 in 0..db {
                    s += bj[(b, b2)] * t[(b2, b)];
                }
            }
            probs[(i, j)] = s.re.max(0.0);
        }
    }
    let total: f64 = probs.iter().sum();
    if total > 0.0 {
        probs.scale_mut(1.0 / total);
    }
    Ok(JointDistribution::trusted(probs))
}

/// Holevo χ of an ensemble: `S(μ) − Σ p_i S(η_i)`, which reduces to `S(μ)`
/// for pure members. Upper-bounds the accessible information.
pub fn holevo_chi(e: &Ensemble) -> f64 {
    von_neumann_entropy(&e.average_state())
}

// ---------------------------------------------------------------------------
