//! Generalized Pauli operators, maximal commuting operator classes, and
//! mutually unbiased bases for prime-power dimensions.
//!
//! The `d² − 1` nonidentity generalized Pauli operators split into `d + 1`
//! classes of `d − 1` pairwise-commuting, trace-orthogonal operators. The
//! joint eigenbases of the classes are mutually unbiased. For prime `d` the
//! classes are the power sets of `Z` and `X Z^r`; for `d = p^n` they are the
//! lines `{X(a) Z(λa)}` of field-labeled operators with trace phases.

pub mod gf;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::qmath::{C64, CMat};
pub use gf::{factor_prime_power, least_prime_power, GaloisField, GfError};

#[derive(Debug, Error)]
pub enum MubError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("number of bases {0} outside 2..=d+1 for d={1}")]
    BasesOutOfRange(usize, usize),
    #[error("failed to resolve a nondegenerate joint eigenbasis for class {0}")]
    DegenerateClass(usize),
}

/// Maximum deviation from unitarity tolerated on constructed bases.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Maximum deviation of cross-basis overlaps from 1/d on constructed families.
pub const MUB_OVERLAP_TOL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Clock and shift
// ---------------------------------------------------------------------------

/// Generalized Pauli generators: `X|j⟩ = |j+1 mod d⟩`, `Z|j⟩ = ω^j |j⟩`
/// with `ω = exp(2πi/d)`, so that `Z X = ω X Z`.
pub fn clock_shift(d: usize) -> (CMat, CMat) {
    let mut x = CMat::zeros(d, d);
    for j in 0..d {
        x[((j + 1) % d, j)] = C64::new(1.0, 0.0);
    }
    let z = CMat::from_fn(d, d, |i, j| {
        if i == j {
            root_of_unity(d, i as i64)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    (x, z)
}

fn root_of_unity(d: usize, k: i64) -> C64 {
    let theta = 2.0 * std::f64::consts::PI * (k.rem_euclid(d as i64) as f64) / d as f64;
    C64::new(theta.cos(), theta.sin())
}

// ---------------------------------------------------------------------------
// Operator classes
// ---------------------------------------------------------------------------

/// The `d + 1` maximal commuting classes of traceless generalized Pauli
/// operators, with the unitary that diagonalizes each class.
///
/// Class 0 is always the `Z` class and its eigenbasis is exactly the
/// identity (the computational basis).
#[derive(Debug, Clone)]
pub struct OperatorBasis {
    d: usize,
    classes: Vec<Vec<CMat>>,
    class_eigenbasis: Vec<CMat>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn classes(&self) -> &[Vec<CMat>] {
        &self.classes
    }

    pub fn eigenbases(&self) -> &[CMat] {
        &self.class_eigenbasis
    }

    /// Max deviation of `Tr(M_k^{i†} M_l^j)` from `d·δ_kl·δ_ij`.
    pub fn max_orthonormality_deviation(&self) -> f64 {
        let d = self.d as f64;
        let flat: Vec<(usize, usize, &CMat)> = self
            .classes
            .iter()
            .enumerate()
            .flat_map(|(k, ops)| ops.iter().enumerate().map(move |(i, m)| (k, i, m)))
            .collect();
        let mut dev = 0.0f64;
        for (a, &(k, i, m)) in flat.iter().enumerate() {
            for &(l, j, w) in &flat[a..] {
                let inner = (m.adjoint() * w).trace();
                let expect = if k == l && i == j { d } else { 0.0 };
                dev = dev.max((inner - C64::new(expect, 0.0)).norm());
            }
        }
        dev
    }

    /// Max commutator norm within any class.
    pub fn max_commutator_norm(&self) -> f64 {
        let mut dev = 0.0f64;
        for ops in &self.classes {
            for (i, m) in ops.iter().enumerate() {
                for w in &ops[i + 1..] {
                    dev = dev.max((m * w - w * m).norm());
                }
            }
        }
        dev
    }

    /// Max off-diagonal magnitude of `U_k† M_k^i U_k` over all classes.
    pub fn max_offdiagonal_in_eigenbasis(&self) -> f64 {
        let mut dev = 0.0f64;
        for (ops, u) in self.classes.iter().zip(&self.class_eigenbasis) {
            for m in ops {
                let t = u.adjoint() * m * u;
                for i in 0..t.nrows() {
                    for j in 0..t.ncols() {
                        if i != j {
                            dev = dev.max(t[(i, j)].norm());
                        }
                    }
                }
            }
        }
        dev
    }

    /// The class eigenbases as a family of bases (Z class first).
    pub fn as_mub_family(&self) -> MubFamily {
        MubFamily {
            d: self.d,
            unitaries: self.class_eigenbasis.clone(),
        }
    }
}

/// Partition the nonidentity generalized Pauli operators of dimension
/// `q = field.order()` into `q + 1` maximal commuting classes and compute
/// the diagonalizing unitaries.
pub fn pauli_classes(field: &GaloisField) -> Result<OperatorBasis, MubError> {
    let d = field.order();
    let (classes, generators) = if field.degree() == 1 {
        prime_classes(d)
    } else {
        extension_classes(field)
    };

    let mut class_eigenbasis = Vec::with_capacity(classes.len());
    for (k, (ops, gens)) in classes.iter().zip(&generators).enumerate() {
        if k == 0 {
            // Z class: computational basis by convention
            class_eigenbasis.push(CMat::identity(d, d));
            continue;
        }
        let sep = if field.degree() == 1 {
            d
        } else {
            field.p() as usize
        };
        let u = joint_eigenbasis(ops, gens, sep).ok_or(MubError::DegenerateClass(k))?;
        class_eigenbasis.push(u);
    }

    Ok(OperatorBasis {
        d,
        classes,
        class_eigenbasis,
    })
}

/// All `d²` generalized Pauli (Weyl) operators of the field's dimension,
/// identity included. Conjugation by any of them permutes each operator
/// class, so they carry minimizers of class-symmetric functionals into
/// minimizers; the covariant POVM built on such an orbit is complete.
pub fn weyl_operators(field: &GaloisField) -> Vec<CMat> {
    let q = field.order();
    if field.degree() == 1 {
        let (x, z) = clock_shift(q);
        let mut ops = Vec::with_capacity(q * q);
        let mut xa = CMat::identity(q, q);
        for _ in 0..q {
            let mut m = xa.clone();
            for _ in 0..q {
                ops.push(m.clone());
                m *= &z;
            }
            xa = &x * xa;
        }
        ops
    } else {
        let p = field.p() as usize;
        let mut ops = Vec::with_capacity(q * q);
        for a in 0..q {
            let mut shift = CMat::zeros(q, q);
            for x in 0..q {
                shift[(field.add(x, a), x)] = C64::new(1.0, 0.0);
            }
            for b in 0..q {
                let phase = CMat::from_fn(q, q, |i, j| {
                    if i == j {
                        root_of_unity(p, field.trace(field.mul(b, i)) as i64)
                    } else {
                        C64::new(0.0, 0.0)
                    }
                });
                ops.push(&shift * phase);
            }
        }
        ops
    }
}

type ClassList = Vec<Vec<CMat>>;

/// Prime d: class 0 = {Z^a}, class r+1 = {(X Z^r)^a}, a = 1..d-1.
fn prime_classes(d: usize) -> (ClassList, Vec<Vec<CMat>>) {
    let (x, z) = clock_shift(d);
    let mut classes = Vec::with_capacity(d + 1);
    let mut generators = Vec::with_capacity(d + 1);

    let powers = |g: &CMat| -> Vec<CMat> {
        let mut ops = Vec::with_capacity(d - 1);
        let mut acc = g.clone();
        for _ in 1..d {
            ops.push(acc.clone());
            acc *= g;
        }
        ops
    };

    classes.push(powers(&z));
    generators.push(vec![z.clone()]);
    let mut zr = CMat::identity(d, d);
    for _ in 0..d {
        let g = &x * &zr;
        classes.push(powers(&g));
        generators.push(vec![g]);
        zr *= &z;
    }
    (classes, generators)
}

/// Prime power d = p^n: field-labeled operators `X(a) Z(b)` with
/// `X(a)|x⟩ = |x+a⟩` and `Z(b)|x⟩ = ω_p^{tr(bx)}|x⟩`. Class 0 is
/// `{Z(b)}`, and for each slope λ the line `{X(a) Z(λa)}` is a class.
fn extension_classes(field: &GaloisField) -> (ClassList, Vec<Vec<CMat>>) {
    let q = field.order();
    let p = field.p() as usize;
    let n = field.degree();

    let shift = |a: usize| -> CMat {
        let mut m = CMat::zeros(q, q);
        for x in 0..q {
            m[(field.add(x, a), x)] = C64::new(1.0, 0.0);
        }
        m
    };
    let phase = |b: usize| -> CMat {
        CMat::from_fn(q, q, |i, j| {
            if i == j {
                root_of_unity(p, field.trace(field.mul(b, i)) as i64)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    };
    let op = |a: usize, b: usize| shift(a) * phase(b);

    let mut classes = Vec::with_capacity(q + 1);
    let mut generators = Vec::with_capacity(q + 1);

    classes.push((1..q).map(|b| phase(b)).collect::<Vec<_>>());
    generators.push((0..n).map(|j| phase(field.basis_element(j))).collect());

    for lambda in 0..q {
        classes.push(
            (1..q)
                .map(|a| op(a, field.mul(lambda, a)))
                .collect::<Vec<_>>(),
        );
        generators.push(
            (0..n)
                .map(|j| {
                    let e = field.basis_element(j);
                    op(e, field.mul(lambda, e))
                })
                .collect(),
        );
    }
    (classes, generators)
}

/// Deterministic stream for the Hermitian-combination weights.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn unit_interval(state: &mut u64) -> f64 {
    (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64
}

/// Joint eigenbasis of a commuting class, resolved by diagonalizing a
/// generic Hermitian combination of the members. Columns are ordered by the
/// eigenvalue phases of the class generators (lexicographically for n > 1)
/// and each column is rotated so its first significant component is
/// positive real. `sep`: the number of distinct eigenvalue phases per
/// generator, used to snap phases away from the 0/2π wraparound.
fn joint_eigenbasis(ops: &[CMat], generators: &[CMat], sep: usize) -> Option<CMat> {
    let d = ops[0].nrows();
    for attempt in 0..16u64 {
        let mut stream = 0xc0de_0001u64 ^ (attempt << 32);
        let mut h = CMat::zeros(d, d);
        for m in ops {
            let w = C64::new(unit_interval(&mut stream) - 0.5, unit_interval(&mut stream) - 0.5);
            h += m.scale_complex(w) + m.adjoint().scale_complex(w.conj());
        }
        let (evals, vecs) = crate::qmath::hermitian_eigen(&h);
        let mut sorted = evals.clone();
        sorted.sort_by(f64::total_cmp);
        let spread = (sorted[d - 1] - sorted[0]).max(1.0);
        let min_gap = sorted
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        if min_gap < 1e-6 * spread {
            continue;
        }

        // sort columns by the generator phase tuple
        let window = 2.0 * std::f64::consts::PI - std::f64::consts::PI / sep as f64;
        let mut keyed: Vec<(Vec<f64>, usize)> = Vec::with_capacity(d);
        let mut ok = true;
        for i in 0..d {
            let v = vecs.column(i);
            let mut key = Vec::with_capacity(generators.len());
            for g in generators {
                let mu = (v.adjoint() * g * v)[(0, 0)];
                if (mu.norm() - 1.0).abs() > 1e-6 {
                    ok = false; // eigenvectors mixed a degenerate subspace
                    break;
                }
                let mut phase = mu.arg().rem_euclid(2.0 * std::f64::consts::PI);
                if phase > window {
                    phase -= 2.0 * std::f64::consts::PI;
                }
                key.push(phase);
            }
            if !ok {
                break;
            }
            keyed.push((key, i));
        }
        if !ok {
            continue;
        }
        keyed.sort_by(|a, b| {
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| x.total_cmp(y))
                .find(|c| c.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });

        let mut u = CMat::zeros(d, d);
        for (slot, (_, i)) in keyed.iter().enumerate() {
            let mut col = vecs.column(*i).clone_owned();
            if let Some(lead) = col.iter().find(|z| z.norm() > 1e-8) {
                let rot = lead.conj() / C64::new(lead.norm(), 0.0);
                col *= rot;
            }
            u.set_column(slot, &col);
        }
        return Some(u);
    }
    None
}

trait ScaleComplex {
    fn scale_complex(&self, w: C64) -> CMat;
}

impl ScaleComplex for CMat {
    fn scale_complex(&self, w: C64) -> CMat {
        self.map(|z| z * w)
    }
}

// ---------------------------------------------------------------------------
// MUB families
// ---------------------------------------------------------------------------

/// A list of basis unitaries, first entry the identity by convention.
#[derive(Debug, Clone)]
pub struct MubFamily {
    d: usize,
    unitaries: Vec<CMat>,
}

impl MubFamily {
    /// Wrap an arbitrary list of square matrices of common dimension.
    /// Construction does not enforce unbiasedness; see [`verify_mub`].
    pub fn from_unitaries(unitaries: Vec<CMat>) -> Option<Self> {
        let d = unitaries.first()?.nrows();
        if unitaries.iter().any(|u| u.nrows() != d || u.ncols() != d) {
            return None;
        }
        Some(Self { d, unitaries })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }

    pub fn unitaries(&self) -> &[CMat] {
        &self.unitaries
    }

    /// Max-entry deviation of `U†U` from the identity over the family.
    pub fn max_unitarity_deviation(&self) -> f64 {
        let id = CMat::identity(self.d, self.d);
        self.unitaries
            .iter()
            .map(|u| {
                (u.adjoint() * u - &id)
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max)
    }

    /// Keep the first `l` bases.
    pub fn truncated(&self, l: usize) -> Self {
        Self {
            d: self.d,
            unitaries: self.unitaries[..l.min(self.unitaries.len())].to_vec(),
        }
    }
}

/// Build `L` mutually unbiased bases in prime-power dimension `d` from the
/// class eigenbases, Z class (computational basis) first. `U_0 = I` exactly.
pub fn mub_family(d: usize, l: usize) -> Result<MubFamily, MubError> {
    let field = GaloisField::for_order(d)?;
    if !(2..=d + 1).contains(&l) {
        return Err(MubError::BasesOutOfRange(l, d));
    }
    let ob = pauli_classes(&field)?;
    Ok(MubFamily {
        d,
        unitaries: ob.class_eigenbasis[..l].to_vec(),
    })
}

/// Max deviation of `|⟨u|v⟩|²` from `1/d` over all column pairs of distinct
/// bases. Constructed families stay at or below [`MUB_OVERLAP_TOL`].
pub fn verify_mub(m: &MubFamily) -> f64 {
    let d = m.d;
    let target = 1.0 / d as f64;
    let mut dev = 0.0f64;
    for (s, us) in m.unitaries.iter().enumerate() {
        for ut in &m.unitaries[s + 1..] {
            let overlaps: DMatrix<C64> = us.adjoint() * ut;
            for z in overlaps.iter() {
                dev = dev.max((z.norm_sqr() - target).abs());
            }
        }
    }
    dev
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const PRIME_POWERS_TO_16: [usize; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

    #[test]
    fn clock_shift_small_dims() {
        let (x, z) = clock_shift(2);
        // Pauli X and Pauli Z
        assert!((x[(0, 1)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((z[(1, 1)] - C64::new(-1.0, 0.0)).norm() < 1e-15);

        let (x3, z3) = clock_shift(3);
        assert!((x3[(0, 2)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        let omega = C64::new(-0.5, 3f64.sqrt() / 2.0);
        assert!((z3[(1, 1)] - omega).norm() < 1e-14);
        assert!((z3[(2, 2)] - omega * omega).norm() < 1e-14);
    }

    #[test]
    fn clock_shift_relations() {
        for d in 2..=9 {
            let (x, z) = clock_shift(d);
            let omega = root_of_unity(d, 1);
            assert!((&z * &x - (&x * &z).map(|v| v * omega)).norm() < 1e-12);
            let mut xp = CMat::identity(d, d);
            let mut zp = CMat::identity(d, d);
            for _ in 0..d {
                xp *= &x;
                zp *= &z;
            }
            assert!((xp - CMat::identity(d, d)).norm() < 1e-11, "X^d != I at d={d}");
            assert!((zp - CMat::identity(d, d)).norm() < 1e-11, "Z^d != I at d={d}");
        }
    }

    #[test]
    fn qubit_classes_are_the_pauli_axes() {
        let field = GaloisField::new(2, 1).unwrap();
        let ob = pauli_classes(&field).unwrap();
        assert_eq!(ob.classes().len(), 3);
        let (x, z) = clock_shift(2);
        assert!((ob.classes()[0][0].clone() - &z).norm() < 1e-14);
        assert!((ob.classes()[1][0].clone() - &x).norm() < 1e-14);
        assert!((ob.classes()[2][0].clone() - &x * &z).norm() < 1e-14);

        // eigenbasis of the X class is the Hadamard with the fixed ordering
        let h = &ob.eigenbases()[1];
        let s = 0.5f64.sqrt();
        for (i, j, val) in [(0, 0, s), (1, 0, s), (0, 1, s), (1, 1, -s)] {
            assert!((h[(i, j)] - C64::new(val, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn qutrit_classes_match_bruteforce_partition() {
        // oracle: enumerate X^a Z^b, group by commutation
        let d = 3;
        let (x, z) = clock_shift(d);
        let mut labeled: Vec<((usize, usize), CMat)> = Vec::new();
        for a in 0..d {
            let mut xa = CMat::identity(d, d);
            for _ in 0..a {
                xa *= &x;
            }
            for b in 0..d {
                if a == 0 && b == 0 {
                    continue;
                }
                let mut m = xa.clone();
                for _ in 0..b {
                    m *= &z;
                }
                labeled.push(((a, b), m));
            }
        }
        let commutes = |m: &CMat, w: &CMat| (m * w - w * m).norm() < 1e-10;
        // greedy partition into maximal commuting classes
        let mut remaining: Vec<usize> = (0..labeled.len()).collect();
        let mut oracle_classes: Vec<Vec<(usize, usize)>> = Vec::new();
        while let Some(&first) = remaining.first() {
            let members: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| commutes(&labeled[first].1, &labeled[i].1))
                .collect();
            oracle_classes.push(members.iter().map(|&i| labeled[i].0).collect());
            remaining.retain(|i| !members.contains(i));
        }
        assert_eq!(oracle_classes.len(), 4);

        let field = GaloisField::new(3, 1).unwrap();
        let ob = pauli_classes(&field).unwrap();
        assert_eq!(ob.classes().len(), 4);
        assert_eq!(ob.classes()[0].len(), 2);
        // constructed classes commute with exactly one oracle class each:
        // match each constructed class to the oracle partition via its span
        for ops in ob.classes() {
            let hits = oracle_classes
                .iter()
                .filter(|labels| {
                    labels.iter().all(|&(a, b)| {
                        let m = &labeled.iter().find(|(l, _)| *l == (a, b)).unwrap().1;
                        ops.iter().all(|w| commutes(m, w))
                    })
                })
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn operator_basis_invariants_up_to_16() {
        for &d in &PRIME_POWERS_TO_16 {
            let field = GaloisField::for_order(d).unwrap();
            let ob = pauli_classes(&field).unwrap();
            assert_eq!(ob.classes().len(), d + 1, "class count at d={d}");
            for ops in ob.classes() {
                assert_eq!(ops.len(), d - 1, "class size at d={d}");
                for m in ops {
                    assert!(m.trace().norm() < 1e-10, "traceless at d={d}");
                }
            }
            assert!(
                ob.max_orthonormality_deviation() < 1e-9,
                "orthonormality at d={d}: {}",
                ob.max_orthonormality_deviation()
            );
            assert!(ob.max_commutator_norm() < 1e-9, "commutation at d={d}");
            assert!(
                ob.max_offdiagonal_in_eigenbasis() < 1e-9,
                "diagonalization at d={d}"
            );
        }
    }

    #[test]
    fn class_eigenbases_are_mutually_unbiased() {
        for &d in &PRIME_POWERS_TO_16 {
            let field = GaloisField::for_order(d).unwrap();
            let ob = pauli_classes(&field).unwrap();
            let fam = ob.as_mub_family();
            assert_eq!(fam.len(), d + 1);
            assert!(fam.max_unitarity_deviation() < UNITARITY_TOL, "unitarity at d={d}");
            let dev = verify_mub(&fam);
            assert!(dev < MUB_OVERLAP_TOL, "overlap deviation {dev} at d={d}");
        }
    }

    #[test]
    fn expansion_completeness_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for &d in &[2usize, 3, 4, 5, 8, 9] {
            let field = GaloisField::for_order(d).unwrap();
            let ob = pauli_classes(&field).unwrap();
            let m = crate::sample::ginibre(&mut rng, d);
            // coefficients in {I} ∪ {M_k^i}: c = Tr(B† M)/d
            let mut recon = CMat::identity(d, d).scale_complex(m.trace() / C64::new(d as f64, 0.0));
            for ops in ob.classes() {
                for b in ops {
                    let c = (b.adjoint() * &m).trace() / C64::new(d as f64, 0.0);
                    recon += b.scale_complex(c);
                }
            }
            assert!(
                (&recon - &m).norm() < 1e-8,
                "reconstruction at d={d}: {}",
                (&recon - &m).norm()
            );
        }
    }

    #[test]
    fn mub_family_construction() {
        let fam = mub_family(2, 3).unwrap();
        assert_eq!(fam.len(), 3);
        assert!((fam.unitaries()[0].clone() - CMat::identity(2, 2)).norm() == 0.0);
        assert!(verify_mub(&fam) < 1e-12);

        let fam3 = mub_family(3, 4).unwrap();
        assert!(verify_mub(&fam3) < 1e-12);

        let fam5 = mub_family(5, 6).unwrap();
        assert!(verify_mub(&fam5) < 1e-9);

        assert!(matches!(mub_family(3, 5), Err(MubError::BasesOutOfRange(5, 3))));
        assert!(matches!(mub_family(3, 1), Err(MubError::BasesOutOfRange(1, 3))));
        assert!(mub_family(6, 2).is_err());
    }

    #[test]
    fn u0_is_exactly_identity() {
        for &d in &PRIME_POWERS_TO_16 {
            let fam = mub_family(d, 2).unwrap();
            assert_eq!(fam.unitaries()[0], CMat::identity(d, d));
        }
    }

    #[test]
    fn weyl_orbit_is_a_tight_frame() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for &d in &[2usize, 3, 4, 9] {
            let field = GaloisField::for_order(d).unwrap();
            let ops = weyl_operators(&field);
            assert_eq!(ops.len(), d * d);
            let phi = crate::sample::random_pure_state(&mut rng, d);
            let mut sum = CMat::zeros(d, d);
            for w in &ops {
                let v = w * &phi;
                sum += &v * v.adjoint();
            }
            assert!(
                (sum - CMat::identity(d, d).scale(d as f64)).norm() < 1e-9,
                "orbit of a random vector must resolve d·I at d={d}"
            );
        }
    }

    #[test]
    fn weyl_conjugation_permutes_each_class() {
        for &d in &[3usize, 4] {
            let field = GaloisField::for_order(d).unwrap();
            let ob = pauli_classes(&field).unwrap();
            let ops = weyl_operators(&field);
            for w in &ops {
                for ops_k in ob.classes() {
                    for m in ops_k {
                        let conj = w * m * w.adjoint();
                        // conj must be a unimodular multiple of some member
                        let matched = ops_k.iter().any(|other| {
                            let inner = (other.adjoint() * &conj).trace() / C64::new(d as f64, 0.0);
                            (inner.norm() - 1.0).abs() < 1e-9
                                && (&conj - other.map(|z| z * inner)).norm() < 1e-9
                        });
                        assert!(matched, "class not closed under Weyl conjugation at d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn verify_mub_flags_repeated_basis() {
        let id = CMat::identity(4, 4);
        let fam = MubFamily::from_unitaries(vec![id.clone(), id]).unwrap();
        let dev = verify_mub(&fam);
        assert!((dev - (1.0 - 0.25)).abs() < 1e-12);
    }

    #[test]
    fn verify_mub_hadamard_is_exact() {
        let s = 0.5f64.sqrt();
        let h = CMat::from_row_slice(
            2,
            2,
            &[
                C64::new(s, 0.0),
                C64::new(s, 0.0),
                C64::new(s, 0.0),
                C64::new(-s, 0.0),
            ],
        );
        let fam = MubFamily::from_unitaries(vec![CMat::identity(2, 2), h]).unwrap();
        assert!(verify_mub(&fam) < 1e-15);
    }
}
