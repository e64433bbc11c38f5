//! Browser bindings for the locking explorer page.
//!
//! Three operations back the demo: a full lock/unlock evaluation for one
//! `(d, L)` instance, the overlap grid of the underlying basis family for
//! the heatmap, and the two-way cap curve. Heavy values are returned as
//! JSON strings or flat `f64` buffers so the page needs no framework.

use wasm_bindgen::prelude::*;

use corrlock::bounds;
use corrlock::infomeasure::{self, OptimizerConfig};
use corrlock::io::fmt_g12;
use corrlock::mub;
use corrlock::states::LockingInstance;

fn error_json(msg: &str) -> String {
    format!("{{\"error\":\"{}\"}}", msg.replace('"', "'"))
}

/// Evaluate one locking instance: certified bounds on the locked
/// correlation, the unlocked value, and the merit figures.
#[wasm_bindgen]
pub fn lock_demo_json(d: u32, l: u32, restarts: u32, seed: u32) -> String {
    let inst = match LockingInstance::new(d as usize, l as usize) {
        Ok(inst) => inst,
        Err(e) => return error_json(&e.to_string()),
    };
    let cfg = OptimizerConfig {
        restarts: restarts.clamp(1, 64) as usize,
        max_iters: 600,
        seed: seed as u64,
        ..OptimizerConfig::default()
    };
    let res = match infomeasure::icc_locking(&inst, &cfg) {
        Ok(res) => res,
        Err(e) => return error_json(&e.to_string()),
    };
    let ub = infomeasure::icc_locking_upper_bound(&inst);
    let ic_after = infomeasure::unlocked_icc_analytic(&inst);
    let key_bits = inst.key_bits();
    let (r1, r2) = match bounds::merit_figures(res.value, ic_after, key_bits) {
        Ok(m) => (m.r1, m.r2),
        Err(_) => (f64::NAN, f64::NAN),
    };
    format!(
        "{{\"d\":{d},\"L\":{l},\"key_bits\":{},\"ic_lower\":{},\"ic_upper\":{},\
         \"certificate\":\"{}\",\"certified\":{},\"ic_after\":{},\
         \"theorem1_requirement\":{},\"theorem1_delta_cap\":{},\"r1\":{},\"r2\":{},\
         \"converged\":{}}}",
        fmt_g12(key_bits),
        fmt_g12(res.value),
        fmt_g12(ub.bits),
        ub.kind,
        ub.is_certificate(),
        fmt_g12(ic_after),
        fmt_g12(bounds::theorem1_requirement(ic_after, key_bits)),
        fmt_g12(bounds::theorem1_delta_cap(res.value, key_bits)),
        fmt_g12(r1),
        fmt_g12(r2),
        res.converged,
    )
}

/// Squared overlaps `|⟨u|v⟩|²` between all `L·d` basis vectors of the
/// family, row-major over a `(L·d) × (L·d)` grid. Cross-basis blocks sit
/// at `1/d`, diagonal blocks are identity — the MUB fingerprint.
#[wasm_bindgen]
pub fn mub_overlap_grid(d: u32, l: u32) -> Vec<f64> {
    let fam = match mub::mub_family(d as usize, l as usize) {
        Ok(f) => f,
        Err(_) => return Vec::new(),
    };
    let dim = d as usize;
    let n = dim * l as usize;
    let cols: Vec<_> = fam
        .unitaries()
        .iter()
        .flat_map(|u| (0..dim).map(move |j| u.column(j).clone_owned()))
        .collect();
    let mut grid = Vec::with_capacity(n * n);
    for a in &cols {
        for b in &cols {
            grid.push((a.adjoint() * b)[(0, 0)].norm_sqr());
        }
    }
    grid
}

/// The two-way communication cap as a function of the initial correlation:
/// flat triples `(ic, full_cap, simplified_cap)` for `n` points spanning
/// `[0, 1.5 × precondition threshold]`; the threshold itself is the first
/// element of the returned buffer header `[threshold, n]`.
#[wasm_bindgen]
pub fn theorem2_cap_curve(d: u32, l_qubits: f64, n: u32) -> Vec<f64> {
    let d = (d as usize).max(2);
    let n = n.clamp(2, 4096) as usize;
    let probe = bounds::theorem2_cap(0.0, l_qubits, d);
    let threshold = probe
        .details
        .iter()
        .find(|(k, _)| k == "precondition_threshold")
        .map(|(_, v)| *v)
        .unwrap_or(0.01);
    let mut out = Vec::with_capacity(2 + 3 * n);
    out.push(threshold);
    out.push(n as f64);
    for i in 0..n {
        let ic = 1.5 * threshold * i as f64 / (n - 1) as f64;
        let rep = bounds::theorem2_cap(ic, l_qubits, d);
        let simplified = rep
            .details
            .iter()
            .find(|(k, _)| k == "simplified_cap")
            .map(|(_, v)| *v)
            .unwrap_or(f64::NAN);
        out.push(ic);
        out.push(rep.rhs);
        out.push(simplified);
    }
    out
}

/// Prime powers accepted by the demo controls.
#[wasm_bindgen]
pub fn supported_dims() -> Vec<u32> {
    vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
}
