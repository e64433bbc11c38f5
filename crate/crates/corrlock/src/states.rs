//! The locking family: states in which a short classical message unlocks a
//! large amount of classical correlation.
//!
//! Alice holds a data register `|k⟩` and a basis register `|t⟩`; Bob holds
//! `U_t|k⟩` drawn from `L` mutually unbiased bases of dimension `d`.

use crate::mub::{self, MubError, MubFamily};
use crate::qmath::{C64, CMat, CVec, DensityMatrix, Ensemble, Keep, QmathError};

/// Parameters of one locking state: Bob dimension `d` (a prime power),
/// `L` bases with `2 ≤ L ≤ d+1`, and the MUB family used for the encoding.
#[derive(Debug, Clone)]
pub struct LockingInstance {
    d: usize,
    num_bases: usize,
    mubs: MubFamily,
}

impl LockingInstance {
    pub fn new(d: usize, num_bases: usize) -> Result<Self, MubError> {
        let mubs = mub::mub_family(d, num_bases)?;
        Ok(Self { d, num_bases, mubs })
    }

    /// Bob's dimension.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of encoding bases `L`.
    pub fn num_bases(&self) -> usize {
        self.num_bases
    }

    /// Key size in bits, `l = log₂ L`.
    pub fn key_bits(&self) -> f64 {
        (self.num_bases as f64).log2()
    }

    /// Alice's dimension `L·d` (data register times basis register).
    pub fn alice_dim(&self) -> usize {
        self.num_bases * self.d
    }

    pub fn bob_dim(&self) -> usize {
        self.d
    }

    pub fn mubs(&self) -> &MubFamily {
        &self.mubs
    }

    /// Alice's composite index for `(k, t)`: `k` major.
    pub fn alice_index(&self, k: usize, t: usize) -> usize {
        k * self.num_bases + t
    }
}

/// The locking state
/// `ρ = (1/(Ld)) Σ_{k,t} (|k⟩⟨k| ⊗ |t⟩⟨t|)_A ⊗ (U_t|k⟩⟨k|U_t†)_B`,
/// block diagonal in Alice's computational basis.
pub fn locking_state(inst: &LockingInstance) -> DensityMatrix {
    let d = inst.d;
    let l = inst.num_bases;
    let da = inst.alice_dim();
    let n = da * d;
    let weight = 1.0 / (l * d) as f64;
    let mut mat = CMat::zeros(n, n);
    for k in 0..d {
        for t in 0..l {
            let a = inst.alice_index(k, t);
            let v = inst.mubs.unitaries()[t].column(k);
            for b in 0..d {
                for b2 in 0..d {
                    mat[(a * d + b, a * d + b2)] += v[b] * v[b2].conj() * weight;
                }
            }
        }
    }
    DensityMatrix::trusted(da, d, mat)
}

/// Bob's marginal ensemble `{1/(Ld), U_t|k⟩}`, ordered `k` major to match
/// Alice's register layout. Its average state is `I/d`.
pub fn bob_ensemble(inst: &LockingInstance) -> Ensemble {
    let weight = 1.0 / (inst.num_bases * inst.d) as f64;
    let mut items: Vec<(f64, CVec)> = Vec::with_capacity(inst.num_bases * inst.d);
    for k in 0..inst.d {
        for t in 0..inst.num_bases {
            items.push((weight, inst.mubs.unitaries()[t].column(k).clone_owned()));
        }
    }
    Ensemble::new(items).expect("uniform ensemble over unit basis columns")
}

/// The state after Alice sends `t` and Bob undoes `U_t`:
/// `(1/(Ld)) Σ_{k,t} (|k,t⟩⟨k,t|)_A ⊗ (|t⟩⟨t| ⊗ |k⟩⟨k|)_B` —
/// fully classical and perfectly correlated on `(k, t)`.
pub fn unlocked_state(inst: &LockingInstance) -> DensityMatrix {
    let d = inst.d;
    let l = inst.num_bases;
    let da = inst.alice_dim();
    let db = da; // Bob now holds the message register too
    let n = da * db;
    let weight = C64::new(1.0 / (l * d) as f64, 0.0);
    let mut mat = CMat::zeros(n, n);
    for k in 0..d {
        for t in 0..l {
            let a = inst.alice_index(k, t);
            let b = t * d + k;
            mat[(a * db + b, a * db + b)] = weight;
        }
    }
    DensityMatrix::trusted(da, db, mat)
}

/// `ρ_A ⊗ ρ_B` with the same subsystem split as the input.
pub fn product_of_marginals(rho: &DensityMatrix) -> Result<DensityMatrix, QmathError> {
    let ra = crate::qmath::partial_trace(rho, Keep::A)?;
    let rb = crate::qmath::partial_trace(rho, Keep::B)?;
    Ok(DensityMatrix::trusted(
        rho.dim_a(),
        rho.dim_b(),
        crate::qmath::tensor(ra.matrix(), rb.matrix()),
    ))
}

/// `ρ^{⊗m}` with the subsystems regrouped as `(A^m : B^m)`.
pub fn tensor_power_regrouped(rho: &DensityMatrix, m: u32) -> Result<DensityMatrix, QmathError> {
    if !rho.is_bipartite() {
        return Err(QmathError::Unipartite);
    }
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let mut kron = CMat::identity(1, 1);
    for _ in 0..m {
        kron = crate::qmath::tensor(&kron, rho.matrix());
    }
    let m = m as usize;
    let da_m = da.pow(m as u32);
    let db_m = db.pow(m as u32);
    let n = da_m * db_m;

    // regrouped index ((a_1..a_m),(b_1..b_m)) -> interleaved ((a_1,b_1)..(a_m,b_m))
    let to_old = |new: usize| -> usize {
        let mut a_part = new / db_m;
        let mut b_part = new % db_m;
        let mut a_digits = vec![0usize; m];
        let mut b_digits = vec![0usize; m];
        for i in (0..m).rev() {
            a_digits[i] = a_part % da;
            a_part /= da;
            b_digits[i] = b_part % db;
            b_part /= db;
        }
        let mut old = 0usize;
        for i in 0..m {
            old = old * da * db + a_digits[i] * db + b_digits[i];
        }
        old
    };

    let mat = CMat::from_fn(n, n, |i, j| kron[(to_old(i), to_old(j))]);
    Ok(DensityMatrix::trusted(da_m, db_m, mat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{
        classical_mutual_info, measurement_joint_distribution, partial_trace, tensor,
        von_neumann_entropy, Povm,
    };

    fn prime_powers_to_16() -> Vec<usize> {
        vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    }

    #[test]
    fn two_basis_qubit_locking_state_matches_hand_construction() {
        let inst = LockingInstance::new(2, 2).unwrap();
        let rho = locking_state(&inst);

        let s = 0.5f64.sqrt();
        let kets: [(usize, usize, Vec<f64>); 4] = [
            (0, 0, vec![1.0, 0.0]), // |0⟩
            (0, 1, vec![s, s]),     // |+⟩
            (1, 0, vec![0.0, 1.0]), // |1⟩
            (1, 1, vec![s, -s]),    // |−⟩
        ];
        let mut expect = CMat::zeros(8, 8);
        for (k, t, amps) in &kets {
            let a = k * 2 + t;
            let mut flag = CMat::zeros(4, 4);
            flag[(a, a)] = C64::new(1.0, 0.0);
            let v = CVec::from_iterator(2, amps.iter().map(|&x| C64::new(x, 0.0)));
            expect += tensor(&flag, &(&v * v.adjoint())).scale(0.25);
        }
        assert!((rho.matrix() - &expect).norm() < 1e-12);
    }

    #[test]
    fn locking_state_marginals_are_maximally_mixed() {
        for d in [2usize, 3, 4, 5] {
            for l in 2..=d + 1 {
                let inst = LockingInstance::new(d, l).unwrap();
                let rho = locking_state(&inst);
                let ra = partial_trace(&rho, Keep::A).unwrap();
                let rb = partial_trace(&rho, Keep::B).unwrap();
                let ida = CMat::identity(l * d, l * d).scale(1.0 / (l * d) as f64);
                let idb = CMat::identity(d, d).scale(1.0 / d as f64);
                assert!((ra.matrix() - &ida).norm() < 1e-10, "rho_A at d={d} L={l}");
                assert!((rb.matrix() - &idb).norm() < 1e-10, "rho_B at d={d} L={l}");
            }
        }
    }

    /// Structural check usable at every size: Alice-off-diagonal blocks are
    /// exactly zero and each diagonal block is 1/(Ld) times a rank-1
    /// projector, so the spectrum is exactly {1/(Ld) × Ld, 0 …}.
    fn assert_block_structure(inst: &LockingInstance) {
        let rho = locking_state(inst);
        let d = inst.d();
        let da = inst.alice_dim();
        let w = 1.0 / da as f64;
        let m = rho.matrix();
        for a in 0..da {
            for a2 in 0..da {
                let block = m.view((a * d, a2 * d), (d, d));
                if a != a2 {
                    assert!(block.iter().all(|z| z.norm() == 0.0), "off-block not zero");
                } else {
                    // block = w·P with P² = P, P† = P, Tr P = 1
                    let p = block.map(|z| z / C64::new(w, 0.0));
                    assert!(((&p * &p) - &p).norm() < 1e-10, "block not a projector");
                    assert!((p.trace() - C64::new(1.0, 0.0)).norm() < 1e-10);
                    assert!(crate::qmath::max_hermiticity_deviation(&p.clone_owned()) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn locking_state_invariants_all_prime_powers_to_16() {
        for d in prime_powers_to_16() {
            for l in 2..=d + 1 {
                let inst = LockingInstance::new(d, l).unwrap();
                assert_block_structure(&inst);
                // full validation incl. dense eigenvalues at moderate size
                if l * d * d <= 512 {
                    let rho = locking_state(&inst);
                    rho.validate().expect("locking state invariants");
                    let evals = crate::qmath::hermitian_eigenvalues(rho.matrix());
                    let nonzero: Vec<f64> =
                        evals.iter().copied().filter(|&x| x > 1e-12).collect();
                    assert_eq!(nonzero.len(), l * d, "rank at d={d} L={l}");
                    let w = 1.0 / (l * d) as f64;
                    assert!(nonzero.iter().all(|&x| (x - w).abs() < 1e-10));
                }
            }
        }
    }

    #[test]
    fn quantum_mutual_info_of_locking_state_is_log_d() {
        for (d, l) in [(2, 2), (2, 3), (3, 2), (3, 4), (4, 2), (5, 3), (7, 2), (8, 2)] {
            let inst = LockingInstance::new(d, l).unwrap();
            let rho = locking_state(&inst);
            let ra = partial_trace(&rho, Keep::A).unwrap();
            let rb = partial_trace(&rho, Keep::B).unwrap();
            let iq = von_neumann_entropy(&ra) + von_neumann_entropy(&rb)
                - von_neumann_entropy(&rho);
            assert!(
                (iq - (d as f64).log2()).abs() < 1e-8,
                "I_q at d={d} L={l}: {iq}"
            );
        }
    }

    #[test]
    fn bob_ensemble_two_bases_qubit() {
        let inst = LockingInstance::new(2, 2).unwrap();
        let e = bob_ensemble(&inst);
        assert_eq!(e.len(), 4);
        // average state I/2, Holevo chi = log2 d = 1
        let mu = e.average_state();
        assert!((mu.matrix() - CMat::identity(2, 2).scale(0.5)).norm() < 1e-12);
        assert!((crate::qmath::holevo_chi(&e) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bob_ensemble_counts_and_chi() {
        let inst = LockingInstance::new(3, 4).unwrap();
        let e = bob_ensemble(&inst);
        assert_eq!(e.len(), 12);
        assert!((crate::qmath::holevo_chi(&e) - 3f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn unlocked_state_is_perfectly_correlated_classical() {
        for (d, l) in [(2usize, 2usize), (3, 2), (4, 2), (3, 4)] {
            let inst = LockingInstance::new(d, l).unwrap();
            let rho = unlocked_state(&inst);
            rho.validate().unwrap();
            let comp_a = Povm::projective(&CMat::identity(l * d, l * d));
            let comp_b = Povm::projective(&CMat::identity(l * d, l * d));
            let j = measurement_joint_distribution(&rho, &comp_a, &comp_b).unwrap();
            let mi = classical_mutual_info(&j);
            assert!(
                (mi - ((l * d) as f64).log2()).abs() < 1e-9,
                "unlocked correlation at d={d} L={l}"
            );
        }
    }

    #[test]
    fn locking_state_computational_measurement_gives_half_bit() {
        // Alice along {|k,t⟩}, Bob computational: the optimum for L = 2
        let inst = LockingInstance::new(2, 2).unwrap();
        let rho = locking_state(&inst);
        let comp_a = Povm::projective(&CMat::identity(4, 4));
        let comp_b = Povm::projective(&CMat::identity(2, 2));
        let j = measurement_joint_distribution(&rho, &comp_a, &comp_b).unwrap();
        assert!((classical_mutual_info(&j) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn unlocked_state_quantum_mutual_info_is_two_bits() {
        let inst = LockingInstance::new(2, 2).unwrap();
        let rho = unlocked_state(&inst);
        let ra = partial_trace(&rho, Keep::A).unwrap();
        let rb = partial_trace(&rho, Keep::B).unwrap();
        let iq = von_neumann_entropy(&ra) + von_neumann_entropy(&rb)
            - von_neumann_entropy(&rho);
        assert!((iq - 2.0).abs() < 1e-9);
    }

    #[test]
    fn unlocked_state_d4_reaches_three_bits() {
        let inst = LockingInstance::new(4, 2).unwrap();
        let rho = unlocked_state(&inst);
        let comp = Povm::projective(&CMat::identity(8, 8));
        let j = measurement_joint_distribution(&rho, &comp, &comp).unwrap();
        assert!((classical_mutual_info(&j) - 3.0).abs() < 1e-9);
    }

    #[test]
    fn unlocked_state_invariant_under_correction_convention() {
        // Convention A: Bob undoes U_t (the canonical unlocked_state).
        // Convention B: Bob keeps U_t|k⟩ and measures in the rotated basis.
        let inst = LockingInstance::new(3, 2).unwrap();
        let (d, l) = (3usize, 2usize);
        let rho_a = unlocked_state(&inst);
        let comp = Povm::projective(&CMat::identity(l * d, l * d));
        let j_a = measurement_joint_distribution(&rho_a, &comp, &comp).unwrap();

        // uncorrected state: (|k,t⟩⟨k,t|)_A ⊗ (|t⟩⟨t| ⊗ U_t|k⟩⟨k|U_t†)_B
        let n = (l * d) * (l * d);
        let mut mat = CMat::zeros(n, n);
        for k in 0..d {
            for t in 0..l {
                let a = inst.alice_index(k, t);
                let v = inst.mubs().unitaries()[t].column(k);
                for b in 0..d {
                    for b2 in 0..d {
                        let row = a * (l * d) + t * d + b;
                        let col = a * (l * d) + t * d + b2;
                        mat[(row, col)] += v[b] * v[b2].conj() / C64::new((l * d) as f64, 0.0);
                    }
                }
            }
        }
        let rho_b = DensityMatrix::trusted(l * d, l * d, mat);
        // Bob's rotated projective measurement {|t⟩⊗U_t|j⟩}
        let mut elements = Vec::new();
        for t in 0..l {
            for j in 0..d {
                let mut vec = CVec::zeros(l * d);
                let col = inst.mubs().unitaries()[t].column(j);
                for b in 0..d {
                    vec[t * d + b] = col[b];
                }
                elements.push(&vec * vec.adjoint());
            }
        }
        let rotated = Povm::new(elements).unwrap();
        let j_b = measurement_joint_distribution(&rho_b, &comp, &rotated).unwrap();
        assert!((j_a.probs() - j_b.probs()).norm() < 1e-10);
    }

    #[test]
    fn product_of_marginals_examples() {
        let inst = LockingInstance::new(2, 2).unwrap();
        let rho = locking_state(&inst);
        let prod = product_of_marginals(&rho).unwrap();
        let expect = CMat::identity(8, 8).scale(1.0 / 8.0);
        assert!((prod.matrix() - &expect).norm() < 1e-10);

        // product input stays itself
        let again = product_of_marginals(&prod).unwrap();
        assert!((again.matrix() - prod.matrix()).norm() < 1e-10);
    }

    #[test]
    fn tensor_power_regroups_subsystems() {
        let inst = LockingInstance::new(2, 2).unwrap();
        let rho = locking_state(&inst);
        let sq = tensor_power_regrouped(&rho, 2).unwrap();
        assert_eq!(sq.dim_a(), 16);
        assert_eq!(sq.dim_b(), 4);
        sq.validate().unwrap();
        // marginals of the power are powers of the marginals
        let ra = partial_trace(&rho, Keep::A).unwrap();
        let ra2 = partial_trace(&sq, Keep::A).unwrap();
        assert!((ra2.matrix() - tensor(ra.matrix(), ra.matrix())).norm() < 1e-10);
    }
}
