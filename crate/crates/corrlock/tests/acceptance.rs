//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured numbers (run with `--nocapture` to see them).
//!
//! Criterion 5 carries two known-unattainable points at (d,L) = (3,3) and
//! (5,3): the optimizer provably reaches the exact optimum there (the
//! achieved value meets the rigorous entropic upper bound), and that
//! optimum sits below the window the criterion asks for. The test states
//! this in its failure message rather than widening the window.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use corrlock::bounds;
use corrlock::infomeasure::{
    self, entropy_sum_min, icc_locking, icc_locking_upper_bound, optimize_accessible_info,
    quantum_mutual_info, unlocked_icc_analytic, CertificateKind, OptimizerConfig,
};
use corrlock::io;
use corrlock::mub::{self, least_prime_power, pauli_classes, GaloisField};
use corrlock::qmath::{self, CVec, C64};
use corrlock::sample::{self, derive_seed};
use corrlock::states::{self, LockingInstance};

const TWO_BASIS_DIMS: [usize; 8] = [2, 3, 4, 5, 7, 8, 9, 16];
const PRIME_POWERS_TO_16: [usize; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn warm_cfg(l: usize, seed: u64) -> OptimizerConfig {
    // the plan fills restarts in order [computational, L-1 bases, covariant
    // orbit, randoms]; the budget must reach past the covariant start
    OptimizerConfig {
        restarts: (l + 3).max(6),
        max_iters: 800,
        seed,
        ..OptimizerConfig::default()
    }
}

#[test]
fn criterion_01_two_basis_locking_value() {
    let start = Instant::now();
    for &d in &TWO_BASIS_DIMS {
        let inst = LockingInstance::new(d, 2).expect("prime power");
        let cfg = OptimizerConfig {
            restarts: 3,
            max_iters: 400,
            seed: 101,
            ..OptimizerConfig::default()
        };
        let res = icc_locking(&inst, &cfg).expect("optimizer");
        let expect = 0.5 * (d as f64).log2();
        assert!(
            res.value >= expect - 1e-3 && res.value <= expect + 1e-7,
            "d={d}: value {} vs (1/2)log2(d) = {expect}",
            res.value
        );
        let ub = icc_locking_upper_bound(&inst);
        assert_eq!(ub.kind, CertificateKind::MaassenUffink);
        assert_eq!(ub.bits, expect, "upper bound must be exactly (1/2)log2 d");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "criterion 1 exceeded 5 minutes");
    println!(
        "acceptance 01 (two-basis locking value): PASS — 8 dimensions in {:.1?}",
        elapsed
    );
}

#[test]
fn criterion_02_unlocking() {
    for (d, l) in [(2usize, 2usize), (3, 2), (4, 2), (3, 4)] {
        let inst = LockingInstance::new(d, l).expect("prime power");
        let analytic = unlocked_icc_analytic(&inst);
        assert_eq!(analytic, (d as f64).log2() + (l as f64).log2());
    }
    for d in [2usize, 3, 4] {
        let inst = LockingInstance::new(d, 2).expect("prime power");
        let rho = states::unlocked_state(&inst);
        let cfg = OptimizerConfig {
            restarts: 2,
            max_iters: 300,
            seed: 202,
            ..OptimizerConfig::default()
        };
        let res = infomeasure::icc_general_lower_bound(&rho, &cfg).expect("seesaw");
        let expect = unlocked_icc_analytic(&inst);
        assert!(
            (res.value - expect).abs() <= 1e-5,
            "d={d}: seesaw reached {} vs {expect}",
            res.value
        );
    }
    println!("acceptance 02 (unlocking reaches log2 d + log2 L): PASS");
}

#[test]
fn criterion_03_theorem1_saturation() {
    for &d in &TWO_BASIS_DIMS {
        let inst = LockingInstance::new(d, 2).expect("prime power");
        let ub = icc_locking_upper_bound(&inst);
        let requirement = bounds::theorem1_requirement((d as f64).log2() + 1.0, 1.0);
        assert!(
            (ub.bits - requirement).abs() <= 1e-12,
            "d={d}: |{} - {requirement}| > 1e-12",
            ub.bits
        );
    }
    println!("acceptance 03 (one-way bound saturated by the two-basis family): PASS");
}

#[test]
fn criterion_04_full_family_regime() {
    for d in [3usize, 5, 7] {
        let inst = LockingInstance::new(d, d + 1).expect("prime power");
        let ub = icc_locking_upper_bound(&inst);
        let expect = 1.0 - (1.0 + 1.0 / d as f64).log2();
        assert_eq!(ub.kind, CertificateKind::SanchezRuiz);
        assert!(ub.is_certificate());
        assert!((ub.bits - expect).abs() <= 1e-12);

        let res = icc_locking(&inst, &warm_cfg(d + 1, 404)).expect("optimizer");
        assert!(
            res.value <= ub.bits + 1e-7,
            "d={d}: optimizer {} exceeded the certificate {}",
            res.value,
            ub.bits
        );

        let gap = unlocked_icc_analytic(&inst) - ub.bits;
        let floor = 2.0 * ((d + 1) as f64).log2() - 1.0;
        assert!(
            gap >= floor - 1e-9,
            "d={d}: unlocked gain {gap} below 2log2(d+1) - 1 = {floor}"
        );
    }
    println!("acceptance 04 (L = d+1 regime, certified): PASS");
}

#[test]
fn criterion_05_appendix_numerics_c_window() {
    let start = Instant::now();
    let mut out_of_window: Vec<String> = Vec::new();
    for d in [3usize, 5, 7, 11] {
        for l in 3..=d {
            let inst = LockingInstance::new(d, l).expect("prime power");
            let cfg = warm_cfg(l, derive_seed(505, (d * 100 + l) as u64));
            let res = icc_locking(&inst, &cfg).expect("optimizer");
            let c = res.value / (d as f64).log2() - 1.0 / l as f64;
            println!("  criterion 05: d={d} L={l} ic_lower={:.9} c={c:.5}", res.value);
            if !(0.05..=0.20).contains(&c) {
                out_of_window.push(format!("(d={d}, L={l}): c = {c:.5}"));
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1800, "criterion 5 exceeded 30 minutes");
    assert!(
        out_of_window.is_empty(),
        "acceptance 05 (c window [0.05, 0.20]): FAIL — {} point(s) below the window: {}. \
         At these points the achieved value equals the entropic upper bound evaluated at \
         the (restart-stable) global entropy-sum minimum, so it is the exact optimum; \
         no optimizer can move c into the requested window there.",
        out_of_window.len(),
        out_of_window.join("; ")
    );
    println!(
        "acceptance 05 (appendix numerics c window): PASS — all pairs in [0.05, 0.20], {:.1?}",
        elapsed
    );
}

#[test]
fn criterion_06_mub_invariants() {
    for &d in &PRIME_POWERS_TO_16 {
        let field = GaloisField::for_order(d).expect("prime power");
        let ob = pauli_classes(&field).expect("supported");
        let fam = ob.as_mub_family();
        let overlap = mub::verify_mub(&fam);
        let ortho = ob.max_orthonormality_deviation();
        assert!(overlap <= 1e-9, "d={d}: overlap deviation {overlap}");
        assert!(ortho <= 1e-9, "d={d}: trace-orthonormality deviation {ortho}");
    }
    println!("acceptance 06 (MUB and operator-class invariants to d=16): PASS");
}

#[test]
fn criterion_07_lemma1_chain() {
    // |Φ+⟩ reproduces the exact trace distance 1.5
    let s = 0.5f64.sqrt();
    let bell = CVec::from_row_slice(&[
        C64::new(s, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(s, 0.0),
    ]);
    let bell = qmath::DensityMatrix::from_pure_bipartite(&bell, 2, 2).expect("unit vector");
    let ob2 = pauli_classes(&GaloisField::for_order(2).unwrap()).unwrap();
    let report = bounds::lemma1_decomposition_check(&bell, &ob2).expect("chain");
    assert!((report.lhs - 1.5).abs() <= 1e-12, "Bell lhs {}", report.lhs);

    // 100 random states per dimension
    for d in [2usize, 3] {
        let ob = pauli_classes(&GaloisField::for_order(d).unwrap()).unwrap();
        for i in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(707, d as u64 * 1000 + i));
            let rho = sample::random_bipartite_state(&mut rng, d, d);
            let rep = bounds::lemma1_decomposition_check(&rho, &ob)
                .unwrap_or_else(|e| panic!("chain violated at d={d} draw={i}: {e}"));
            assert!(rep.holds(1e-8));
        }
    }

    // locking states at d ≤ 9, embedded into the least prime-power square
    for d in [2usize, 3, 4, 5, 7, 8, 9] {
        let inst = LockingInstance::new(d, 2).expect("prime power");
        let rho = states::locking_state(&inst);
        let target = least_prime_power(2 * d);
        let embedded = bounds::embed_square(&rho, target).expect("embedding");
        let ob = pauli_classes(&GaloisField::for_order(target).unwrap()).unwrap();
        let rep = bounds::lemma1_decomposition_check(&embedded, &ob)
            .unwrap_or_else(|e| panic!("chain violated on locking d={d}: {e}"));
        assert!(rep.holds(1e-8));
    }
    println!("acceptance 07 (product-distance decomposition chain): PASS");
}

#[test]
fn criterion_08_inequality_property_suites() {
    // Pinsker on 1000 random pairs
    for i in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(808, i));
        let n = 2 + (i % 15) as usize;
        let p = sample::random_distribution(&mut rng, n);
        let q = sample::random_distribution(&mut rng, n);
        let rep = bounds::pinsker_gap(&p, &q).expect("equal lengths");
        assert!(rep.slack >= -1e-9, "Pinsker violation at draw {i}");
    }

    // Fannes on 1000 random pairs with t ≤ 1/e
    let mut produced = 0u64;
    let mut salt = 0u64;
    while produced < 1000 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(809, salt));
        salt += 1;
        let dim = 2 + (salt % 3) as usize;
        let nu = sample::random_state(&mut rng, dim);
        let tau = sample::random_state(&mut rng, dim);
        let lam = 0.3 * (salt % 97) as f64 / 97.0;
        let mu = qmath::DensityMatrix::new(
            dim,
            1,
            nu.matrix().scale(1.0 - lam) + tau.matrix().scale(lam),
        )
        .expect("mixture");
        let t = qmath::trace_distance(nu.matrix(), mu.matrix()).expect("hermitian");
        let (bound, ok) = bounds::fannes_bound(t, dim);
        if !ok {
            continue;
        }
        let gap = (qmath::von_neumann_entropy(&nu) - qmath::von_neumann_entropy(&mu)).abs();
        assert!(gap <= bound + 1e-9, "Fannes violation: {gap} > {bound}");
        produced += 1;
    }

    // measured mutual information never exceeds I_q
    let cfg = OptimizerConfig {
        restarts: 1,
        max_iters: 120,
        seed: 810,
        ..OptimizerConfig::default()
    };
    for i in 0..100u64 {
        let d = if i % 2 == 0 { 2 } else { 3 };
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(811, i));
        let rho = sample::random_bipartite_state(&mut rng, d, d);
        let res = infomeasure::icc_general_lower_bound(&rho, &cfg).expect("seesaw");
        let iq = quantum_mutual_info(&rho).expect("bipartite");
        assert!(res.value <= iq + 1e-9, "I_c lower {} above I_q {iq}", res.value);
    }
    println!("acceptance 08 (Pinsker / Fannes / I_c ≤ I_q sweeps): PASS");
}

#[test]
fn criterion_09_entropic_uncertainty_sampling() {
    for d in [2usize, 3, 4, 5, 7, 8] {
        let fam = mub::mub_family(d, 2).expect("prime power");
        let log_d = (d as f64).log2();
        let mut min_seen = f64::INFINITY;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(909, d as u64));
        for _ in 0..10_000 {
            let phi = sample::random_pure_state(&mut rng, d);
            let mut total = 0.0;
            for u in fam.unitaries() {
                let mut h = 0.0;
                for j in 0..d {
                    let col = u.column(j);
                    let p = (col.adjoint() * &phi)[(0, 0)].norm_sqr();
                    if p > 0.0 {
                        h -= p * p.log2();
                    }
                }
                total += h;
            }
            min_seen = min_seen.min(total);
        }
        assert!(
            min_seen >= log_d - 1e-9,
            "d={d}: sampled entropy sum {min_seen} below log2 d"
        );

        let cfg = OptimizerConfig {
            restarts: 8,
            max_iters: 1000,
            seed: 910,
            ..OptimizerConfig::default()
        };
        let min = entropy_sum_min(&fam, &cfg);
        assert!(
            (min - log_d).abs() <= 1e-6,
            "d={d}: entropy_sum_min {min} vs log2 d {log_d}"
        );
    }
    println!("acceptance 09 (two-basis entropic uncertainty floor): PASS");
}

#[test]
fn criterion_10_additivity_probe() {
    let inst = LockingInstance::new(2, 2).expect("prime power");
    let squared = states::bob_ensemble(&inst).power(2);
    assert_eq!(squared.len(), 16);
    let cfg = OptimizerConfig {
        restarts: 6,
        max_iters: 600,
        seed: 1010,
        ..OptimizerConfig::default()
    };
    let res = optimize_accessible_info(&squared, &cfg).expect("optimizer");
    assert!(
        res.value >= 0.995 && res.value <= 1.0 + 1e-7,
        "two-copy value {} outside [0.995, 1 + 1e-7]",
        res.value
    );
    println!(
        "acceptance 10 (two-copy additivity probe): PASS — value {:.6}",
        res.value
    );
}

// ---------------------------------------------------------------------------
// Criterion 11: determinism. Each artifact function reruns the relevant
// computation (reduced budgets, same seeds) and renders it through the io
// formatters; reruns and thread-pool changes must be byte-identical.
// ---------------------------------------------------------------------------

fn artifact_locking_optimum() -> String {
    let inst = LockingInstance::new(3, 2).expect("prime power");
    let cfg = OptimizerConfig {
        restarts: 5,
        max_iters: 200,
        seed: 1111,
        ..OptimizerConfig::default()
    };
    let res = icc_locking(&inst, &cfg).expect("optimizer");
    io::write_opt_result_json(&res)
}

fn artifact_seesaw() -> String {
    let inst = LockingInstance::new(2, 2).expect("prime power");
    let rho = states::unlocked_state(&inst);
    let cfg = OptimizerConfig {
        restarts: 2,
        max_iters: 150,
        seed: 1112,
        ..OptimizerConfig::default()
    };
    let res = infomeasure::icc_general_lower_bound(&rho, &cfg).expect("seesaw");
    io::write_opt_result_json(&res)
}

fn artifact_bound_reports() -> String {
    let mut lines = Vec::new();
    for i in 0..40u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(1113, i));
        let p = sample::random_distribution(&mut rng, 6);
        let q = sample::random_distribution(&mut rng, 6);
        lines.push(io::write_bound_report_json(
            &bounds::pinsker_gap(&p, &q).expect("equal lengths"),
        ));
    }
    for d in [2usize, 3] {
        lines.push(io::write_bound_report_json(&bounds::theorem2_cap(1e-4, 1.0, d)));
    }
    lines.join("\n")
}

fn artifact_states_and_families() -> String {
    let inst = LockingInstance::new(3, 4).expect("prime power");
    let mut out = io::write_matrix_json(states::locking_state(&inst).matrix());
    out.push('\n');
    out.push_str(&io::write_matrix_json(states::unlocked_state(&inst).matrix()));
    out.push('\n');
    out.push_str(&io::write_mub_family_json(inst.mubs()));
    out
}

fn artifact_entropy_min() -> String {
    let fam = mub::mub_family(5, 3).expect("prime power");
    let cfg = OptimizerConfig {
        restarts: 6,
        max_iters: 300,
        seed: 1114,
        ..OptimizerConfig::default()
    };
    io::fmt_g12(entropy_sum_min(&fam, &cfg))
}

#[test]
fn criterion_11_determinism() {
    let artifacts: Vec<(&str, fn() -> String)> = vec![
        ("locking optimum", artifact_locking_optimum),
        ("seesaw", artifact_seesaw),
        ("bound reports", artifact_bound_reports),
        ("states and families", artifact_states_and_families),
        ("entropy minimum", artifact_entropy_min),
    ];
    for (name, make) in &artifacts {
        let a = make();
        let b = make();
        assert_eq!(a, b, "artifact '{name}' changed between identical reruns");
    }

    #[cfg(feature = "parallel")]
    {
        // thread count must not influence any byte of the artifacts
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        for (name, make) in &artifacts {
            let a = pool1.install(make);
            let b = pool4.install(make);
            assert_eq!(a, b, "artifact '{name}' depends on the thread count");
        }
    }
    println!("acceptance 11 (byte-identical artifacts across reruns and pools): PASS");
}
