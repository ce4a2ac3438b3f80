use std::f64::consts::PI;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::{ScenarioConfig, Suite};
use super::report::{CaseRecord, VerificationReport};
use crate::encoded::{
    allowed_pairs, find_swap_angle, prepare_logical_zero, random_circuit, relocate_34_to_15, simulate_circuit,
    singlet_measurement_probability, verify_gate_equivalence, Basis, EncodedBlock, GateSpec,
};
use crate::error::Result;
use crate::exchange::{
    actual_hkl, exchange_triples, ideal_hkl, verify_exchange_dressing, ExchangePair,
};
use crate::leakage::{
    actual_h1, ideal_h1, ising_invariance, leakage_triple, phase_gate_check, verify_h1_dressing, LeakageModel,
};
use crate::nonseparable::{nonlocal_dressing, residual_scaling, residual as ring_residual, RingModel};
use crate::sampling::{complex, dm_vector, physical_dm, stream_rng, uniform};
use crate::spin::{site_component, spin_matrices};
use crate::su2::{dressing_identity_residual, OperatorTriple};
use crate::tensor::{hermitian_eigensystem, op_distance, Operator};

type Runner = Box<dyn Fn(&mut ChaCha8Rng) -> Result<f64> + Send + Sync>;

/// One named check: draws from its own RNG stream and returns a residual.
pub struct Case {
    pub suite: Suite,
    pub name: String,
    pub default_tolerance: f64,
    pub params: Value,
    run: Runner,
}

impl Case {
    fn new(
        suite: Suite,
        name: impl Into<String>,
        default_tolerance: f64,
        params: Value,
        run: impl Fn(&mut ChaCha8Rng) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            suite,
            name: format!("{}/{}", suite.name(), name.into()),
            default_tolerance,
            params,
            run: Box::new(run),
        }
    }
}

/// Stable 64-bit stream id for a case name (FNV-1a), so that adding or
/// removing cases never shifts the draws of the others.
pub fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

fn max_over(n: usize, mut f: impl FnMut() -> Result<f64>) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..n {
        let r = f()?;
        if r.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Largest gap between sorted spectra of two Hermitian operators.
pub fn spectral_gap(a: &Operator, b: &Operator) -> Result<f64> {
    let ea = hermitian_eigensystem(a)?;
    let eb = hermitian_eigensystem(b)?;
    Ok(ea
        .values
        .iter()
        .zip(eb.values.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

fn identity_sweep(rng: &mut ChaCha8Rng, t: &OperatorTriple) -> Result<f64> {
    dressing_identity_residual(t, uniform(rng, -5.0, 5.0))
}

fn random_leakage(rng: &mut ChaCha8Rng, n: usize, f: f64, scale: f64) -> Result<LeakageModel> {
    let deltas = (0..n - 2).map(|_| complex(rng, scale)).collect();
    LeakageModel::new(n, f, deltas, (1.0, 2.0))
}

fn su2_cases(cfg: &ScenarioConfig) -> Vec<Case> {
    let n = cfg.trials;
    let mut cases = Vec::new();
    cases.push(Case::new(Suite::Su2, "identity/spin_half", 1e-12, json!({"trials": n, "delta_range": [-5.0, 5.0]}), move |rng| {
        let [sx, sy, sz] = spin_matrices();
        let t = OperatorTriple::new(sx, sy, sz)?;
        max_over(n, || identity_sweep(rng, &t))
    }));
    let (f, scale) = (cfg.leakage.f, cfg.leakage.delta_scale);
    for levels in cfg.levels.to_vec() {
        cases.push(Case::new(
            Suite::Su2,
            format!("identity/leakage_n{levels}"),
            1e-12,
            json!({"trials": n, "levels": levels, "delta_range": [-5.0, 5.0]}),
            move |rng| {
                max_over(n, || {
                    let m = random_leakage(rng, levels, f, scale)?;
                    identity_sweep(rng, &leakage_triple(&m)?)
                })
            },
        ));
    }
    for (label, pick_b) in [("exchange_a", false), ("exchange_b", true)] {
        cases.push(Case::new(Suite::Su2, format!("identity/{label}"), 1e-12, json!({"trials": n, "delta_range": [-5.0, 5.0]}), move |rng| {
            max_over(n, || {
                let p = ExchangePair::two_spin(1.0, physical_dm(rng));
                let (a, b) = exchange_triples(&p)?;
                identity_sweep(rng, if pick_b { &b } else { &a })
            })
        }));
    }
    // the third relation fails for triple B, yet the identity above holds
    cases.push(Case::new(Suite::Su2, "third_relation_not_required", 0.0, json!({"trials": n, "min_r3": 0.1}), move |rng| {
        max_over(n, || {
            let p = ExchangePair::two_spin(1.0, physical_dm(rng));
            let (_, b) = exchange_triples(&p)?;
            Ok((0.1 - b.residuals().r3).max(0.0))
        })
    }));
    cases
}

fn leakage_cases(cfg: &ScenarioConfig) -> Vec<Case> {
    let n = cfg.trials;
    let small = (2 * n).div_ceil(5);
    let (f, scale) = (cfg.leakage.f, cfg.leakage.delta_scale);
    let levels = cfg.levels.to_vec();
    let mut cases = Vec::new();
    for &nl in &levels {
        cases.push(Case::new(Suite::Leakage, format!("h1_dressing_n{nl}"), 1e-12, json!({"trials": n, "levels": nl, "f": f, "delta_scale": scale}), move |rng| {
            max_over(n, || Ok(verify_h1_dressing(&random_leakage(rng, nl, f, scale)?)))
        }));
        cases.push(Case::new(Suite::Leakage, format!("isospectral_n{nl}"), 1e-12, json!({"trials": n, "levels": nl, "f": f, "delta_scale": scale}), move |rng| {
            max_over(n, || {
                let m = random_leakage(rng, nl, f, scale)?;
                spectral_gap(&actual_h1(&m), &ideal_h1(&m))
            })
        }));
    }
    let lv = levels.clone();
    cases.push(Case::new(Suite::Leakage, "phase_gate", 1e-12, json!({"trials": small, "ratio": "p/q, p,q in 1..=9"}), move |rng| {
        max_over(small, || {
            let nl = lv[rng.random_range(0..lv.len())];
            let e2 = uniform(rng, 0.5, 3.0);
            let (p, q) = (rng.random_range(1..=9), rng.random_range(1..=9));
            let e1 = e2 * f64::from(p) / f64::from(q);
            let deltas = (0..nl - 2).map(|_| complex(rng, scale)).collect();
            Ok(phase_gate_check(&LeakageModel::new(nl, f, deltas, (e1, e2))?).residual)
        })
    }));
    if let Some([e1, e2]) = cfg.leakage.energies {
        cases.push(Case::new(Suite::Leakage, "phase_gate_configured", 1e-12, json!({"energies": [e1, e2]}), move |rng| {
            let deltas = vec![complex(rng, scale)];
            Ok(phase_gate_check(&LeakageModel::new(3, f, deltas, (e1, e2))?).residual)
        }));
    }
    let lv = levels;
    cases.push(Case::new(Suite::Leakage, "ising_invariance", 1e-13, json!({"trials": small}), move |rng| {
        max_over(small, || {
            let nk = lv[rng.random_range(0..lv.len())];
            let nl = lv[rng.random_range(0..lv.len())];
            let mk = random_leakage(rng, nk, f, scale)?;
            let ml = random_leakage(rng, nl, f, scale)?;
            Ok(ising_invariance(&mk, &ml))
        })
    }));
    cases
}

fn exchange_cases(cfg: &ScenarioConfig) -> Vec<Case> {
    let n = 2 * cfg.trials;
    let j = cfg.exchange.j;
    let mut cases = vec![
        Case::new(Suite::Exchange, "dressing", 1e-12, json!({"trials": n, "j": j, "dm_range": [0.01, 0.8]}), move |rng| {
            max_over(n, || Ok(verify_exchange_dressing(&ExchangePair::two_spin(j, physical_dm(rng))).max()))
        }),
        Case::new(Suite::Exchange, "isospectral", 1e-12, json!({"trials": n, "j": j, "dm_range": [0.01, 0.8]}), move |rng| {
            max_over(n, || {
                let p = ExchangePair::two_spin(j, physical_dm(rng));
                Ok(spectral_gap(&actual_hkl(&p), &ideal_hkl(&p))? / j.abs().max(1.0))
            })
        }),
        // |γ − 1/2| / |D| must stay below 1 for small |D|
        Case::new(Suite::Exchange, "gamma_small_d", 1.0, json!({"trials": n, "dm_range": [0.01, 0.1]}), move |rng| {
            max_over(n, || {
                let d = dm_vector(rng, 0.01, 0.1);
                Ok((d.gamma() - 0.5).abs() / d.d_abs())
            })
        }),
    ];
    if let Some(d) = cfg.exchange.dm_vector() {
        cases.push(Case::new(Suite::Exchange, "configured_dm", 1e-12, json!({"dm": d.d(), "j": j}), move |_| {
            Ok(verify_exchange_dressing(&ExchangePair::two_spin(j, d)).max())
        }));
    }
    cases
}

fn encoded_cases(cfg: &ScenarioConfig) -> Vec<Case> {
    let n = cfg.trials;
    let small = (2 * n).div_ceil(5);
    let depth = cfg.encoded.depth;
    let (j, b_field) = (cfg.exchange.j, cfg.encoded.b_field);
    let mut cases = Vec::new();
    for (k, l) in allowed_pairs(2) {
        cases.push(Case::new(Suite::Encoded, format!("gate_equivalence_{k}_{l}"), 1e-12, json!({"trials": n, "pair": [k, l]}), move |rng| {
            max_over(n, || {
                let d = physical_dm(rng);
                let g = GateSpec::new((k, l), uniform(rng, -PI, PI), Basis::Actual);
                verify_gate_equivalence(&g, &d, rng.random())
            })
        }));
    }
    cases.push(Case::new(Suite::Encoded, "circuits", 1e-10, json!({"trials": n, "blocks": 2, "depth": depth}), move |rng| {
        max_over(n, || {
            let d = physical_dm(rng);
            let c = random_circuit(rng, 2, depth);
            Ok(simulate_circuit(&c, &d)?.equivalence_residual)
        })
    }));
    cases.push(Case::new(Suite::Encoded, "swap_angle", 1e-12, json!({"expected": "pi"}), |_| {
        Ok((find_swap_angle().angle - PI).abs())
    }));
    cases.push(Case::new(Suite::Encoded, "relocation_34_to_15", 1e-12, json!({"trials": small}), move |rng| {
        let ts = find_swap_angle().angle;
        max_over(small, || relocate_34_to_15(uniform(rng, -PI, PI), ts))
    }));
    cases.push(Case::new(Suite::Encoded, "preparation", 1e-10, json!({"trials": small, "j": j, "b_field": b_field}), move |rng| {
        max_over(small, || {
            let d = physical_dm(rng);
            let block = EncodedBlock::along_dm(1, &d)?;
            Ok(1.0 - prepare_logical_zero(&d, j, b_field, &block)?.overlap)
        })
    }));
    cases.push(Case::new(Suite::Encoded, "preparation_round_trip", 1e-9, json!({"trials": small, "j": j, "b_field": b_field}), move |rng| {
        max_over(small, || {
            let d = physical_dm(rng);
            let block = EncodedBlock::along_dm(1, &d)?;
            let prep = prepare_logical_zero(&d, j, b_field, &block)?;
            Ok(1.0 - singlet_measurement_probability(&prep.state, &d, &block)?)
        })
    }));
    cases
}

fn nonseparable_cases(cfg: &ScenarioConfig) -> Vec<Case> {
    let fy = cfg.nonseparable.fy;
    let deltas = cfg.nonseparable.deltas;
    let mut cases = Vec::new();
    for size in cfg.ring_sizes.clone() {
        // |ln(ratio/100)| ≤ ln 1.25 is exactly ratio ∈ [80, 125]
        cases.push(Case::new(Suite::Nonseparable, format!("ratio_n{size}"), 1.25f64.ln(), json!({"ring": size, "fy": fy, "deltas": deltas}), move |_| {
            let m = RingModel::new(size, 0.0, fy)?;
            max_over_sites(size, |k| {
                let r = residual_scaling(&m, k, &deltas)?;
                Ok((r[0] / r[1] / 100.0).ln().abs())
            })
        }));
        cases.push(Case::new(Suite::Nonseparable, format!("derivative_n{size}"), 1e-6, json!({"ring": size, "fy": fy, "step": 1e-4}), move |_| {
            let h = 1e-4;
            max_over_sites(size, |k| {
                let up = ring_residual(&RingModel::new(size, h, fy)?, k)?;
                let down = ring_residual(&RingModel::new(size, -h, fy)?, k)?;
                Ok(((up - down) / (2.0 * h)).abs())
            })
        }));
        cases.push(Case::new(Suite::Nonseparable, format!("sz_invariance_n{size}"), 1e-14, json!({"ring": size, "delta": 0.3}), move |_| {
            let m = RingModel::new(size, 0.3, fy)?;
            let v = nonlocal_dressing(&m);
            let reg = m.register();
            let z: Vec<Operator> = (0..size).map(|k| site_component(&reg, k, 2)).collect::<Result<_>>()?;
            let mut worst = 0.0f64;
            for k in 0..size {
                worst = worst.max(op_distance(&z[k].conjugated_by(&v)?, &z[k])?);
                for l in k + 1..size {
                    let zz = &z[k] * &z[l];
                    worst = worst.max(op_distance(&zz.conjugated_by(&v)?, &zz)?);
                }
            }
            Ok(worst)
        }));
    }
    cases
}

fn max_over_sites(size: usize, mut f: impl FnMut(usize) -> Result<f64>) -> Result<f64> {
    let mut k = 0;
    max_over(size, || {
        let r = f(k);
        k += 1;
        r
    })
}

/// Every case selected by `cfg.suite`, in definition order.
pub fn build_cases(cfg: &ScenarioConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    for suite in Suite::MEMBERS {
        if !cfg.suite.includes(suite) {
            continue;
        }
        cases.extend(match suite {
            Suite::Su2 => su2_cases(cfg),
            Suite::Leakage => leakage_cases(cfg),
            Suite::Exchange => exchange_cases(cfg),
            Suite::Encoded => encoded_cases(cfg),
            Suite::Nonseparable => nonseparable_cases(cfg),
            Suite::All => unreachable!("not a member suite"),
        });
    }
    cases
}

/// Runs the selected cases concurrently; each case draws from stream
/// [`stream_id`] of `cfg.seed`.
pub fn run_suite(cfg: &ScenarioConfig) -> VerificationReport {
    let records: Vec<CaseRecord> = build_cases(cfg)
        .into_par_iter()
        .map(|case| {
            let mut rng = stream_rng(cfg.seed, stream_id(&case.name));
            let start = Instant::now();
            let outcome = (case.run)(&mut rng).map_err(|e| e.to_string());
            let wall_time = start.elapsed().as_secs_f64();
            let tolerance = cfg.tolerance_for(case.suite, case.default_tolerance);
            CaseRecord::new(case.name, outcome, tolerance, case.params, wall_time)
        })
        .collect();
    VerificationReport::assemble(cfg.suite.name(), cfg.seed, records)
}
