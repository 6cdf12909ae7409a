//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use varregion_cli::parse_domain_spec;
use varregion_core::schur::toeplitz_spectral_norm;
use varregion_core::{
    cv_region, domain_eval, extremal_coefficients, gamma_from_a2a3, h_function, hausdorff, integrate_segment,
    k_primitive, make_domain, membership_trial, polygon_convexity, q_point, region_compute, schur_parameters,
    toeplitz_membership, tower_taylor, BlaschkeTower, CaratheodoryData, Classification, ClosedFormCurve, Constraint,
    DomainMap, Gamma2, QuadratureConfig, RegionRequest, RegionResult, TargetClass, VariabilityQuery, DEFAULT_TOL_UNIT,
};

const MATRIX_DOMAINS: [&str; 6] =
    ["halfplane", "halfplane:alpha=0.5", "sector:beta=0.5", "janowski:A=2,B=-1", "janowski:A=-2,B=-1", "kucv:k=1"];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn domain(spec: &str) -> DomainMap {
    make_domain(parse_domain_spec(spec).unwrap()).unwrap()
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + tag)
}

fn in_disk(r: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * r.random::<f64>().sqrt(), r.random_range(-PI..PI))
}

fn unimodular(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, r.random_range(-PI..PI))
}

fn random_z0(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(r.random_range(0.1..=0.8), r.random_range(-PI..PI))
}

/// Carathéodory data `(c₀, …, c_{len−1})` with random interior Schur parameters.
fn interior_data(r: &mut ChaCha8Rng, len: usize, radius: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    let gamma: Vec<Complex64> = (0..len).map(|_| in_disk(r, radius)).collect();
    let tower = BlaschkeTower::new(gamma.clone(), in_disk(r, 1.0)).unwrap();
    (gamma, tower_taylor(&tower, len - 1).into_coeffs())
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

// ---------------------------------------------------------------------------

fn closed_form_curve() -> Outcome {
    let h = domain("halfplane");
    let cfg = QuadratureConfig::default();
    let mut worst = 0.0f64;
    for z0 in [0.3, 0.6] {
        for lam in [0.0, 0.3, 0.7] {
            let z0 = Complex64::new(z0, 0.0);
            let curve = ClosedFormCurve::new(z0, lam, 720).unwrap().polygon().unwrap();
            let q = VariabilityQuery {
                domain: h.clone(),
                z0,
                constraint: Constraint::A2 { lambda: Complex64::new(lam, 0.0) },
                target: TargetClass::ConvexClass,
            };
            let RegionResult::Region(engine) = cv_region(&q, 720, &cfg).unwrap() else {
                return check(false, format!("no region for z0={z0}, lambda={lam}"));
            };
            worst = worst.max(hausdorff(&curve, &engine));
        }
    }
    check(worst < 1e-7, format!("max Hausdorff distance {worst:.3e} over 6 cases (< 1e-7)"))
}

fn classical_region() -> Outcome {
    let h = domain("halfplane");
    let cfg = QuadratureConfig::default();
    let mut r = rng(2);
    let worst = (0..100)
        .map(|_| {
            let z = in_disk(&mut r, 0.9);
            (k_primitive(&h, z, &cfg).unwrap() + 2.0 * (1.0 - z).ln()).norm()
        })
        .fold(0.0, f64::max);
    check(worst < 1e-10, format!("max |K(z) + 2 log(1 - z)| = {worst:.3e} over 100 points (< 1e-10)"))
}

fn zero_a2_closed_form() -> Outcome {
    let h = domain("halfplane");
    let cfg = QuadratureConfig::default();
    let zero = [Complex64::default(); 2];
    let mut r = rng(3);
    let mut worst = 0.0f64;
    for m in 0..100 {
        let z0 = Complex64::from_polar(r.random_range(0.05..0.95), r.random_range(-PI..PI));
        let eps = if m % 2 == 0 { unimodular(&mut r) } else { in_disk(&mut r, 1.0) };
        let q = q_point(&h, &zero, -1, z0, eps, &cfg).unwrap();
        worst = worst.max((q + (1.0 - eps * z0 * z0).ln()).norm());
    }
    check(worst < 1e-9, format!("max |Q + log(1 - eps z0^2)| = {worst:.3e} over 100 points (< 1e-9)"))
}

fn schur_roundtrip() -> Outcome {
    let mut r = rng(4);
    let mut worst = 0.0f64;
    let mut misclassified = 0;
    for _ in 0..500 {
        let len = r.random_range(1..=7);
        let (gamma, data) = interior_data(&mut r, len, 0.95);
        let p = schur_parameters(&CaratheodoryData::new(data).unwrap(), DEFAULT_TOL_UNIT);
        if p.classification != Classification::Interior {
            misclassified += 1;
            continue;
        }
        for (got, want) in p.finite_values().unwrap().iter().zip(&gamma) {
            worst = worst.max((got - want).norm());
        }
    }
    check(
        misclassified == 0 && worst < 1e-9,
        format!("{misclassified} non-interior of 500, max parameter error {worst:.3e} (< 1e-9)"),
    )
}

fn oracle_agreement() -> Outcome {
    let mut r = rng(5);
    let (mut accepted, mut agree, mut skipped) = (0, 0, 0);
    let (mut interior, mut exterior) = (0, 0);
    while accepted < 1000 {
        let len = r.random_range(1..=6);
        let data: Vec<Complex64> = match r.random_range(0..3) {
            0 => {
                let scale = r.random_range(0.5..1.5);
                interior_data(&mut r, len, 0.99).1.into_iter().map(|c| c * scale).collect()
            }
            1 => (0..len).map(|_| in_disk(&mut r, 1.2)).collect(),
            _ => {
                let decay: f64 = r.random_range(0.2..0.9);
                (0..len).map(|k| in_disk(&mut r, decay.powi(k as i32 + 1) * 1.6)).collect()
            }
        };
        let norm = toeplitz_spectral_norm(&data);
        if (1.0 - 1e-6..=1.0 + 1e-6).contains(&norm) {
            skipped += 1;
            continue;
        }
        accepted += 1;
        let c = CaratheodoryData::new(data).unwrap();
        let a = schur_parameters(&c, DEFAULT_TOL_UNIT).classification;
        let b = toeplitz_membership(&c, 1e-6);
        if a == b {
            agree += 1;
        }
        match b {
            Classification::Interior => interior += 1,
            _ => exterior += 1,
        }
    }
    check(
        agree == accepted,
        format!("{agree}/{accepted} agree ({interior} interior, {exterior} exterior, {skipped} in band skipped)"),
    )
}

struct MatrixCase {
    spec: &'static str,
    j: i32,
    gamma: Vec<Complex64>,
    data: Vec<Complex64>,
    z0: Complex64,
}

fn matrix_cases() -> Vec<MatrixCase> {
    let mut r = rng(6);
    let mut cases = Vec::new();
    for spec in MATRIX_DOMAINS {
        for j in [-1, 0, 1] {
            for len in 1..=3 {
                for _ in 0..5 {
                    let (gamma, data) = interior_data(&mut r, len, 0.9);
                    cases.push(MatrixCase { spec, j, gamma, data, z0: random_z0(&mut r) });
                }
            }
        }
    }
    cases
}

fn convexity_matrix() -> Outcome {
    let cases = matrix_cases();
    let cfg = QuadratureConfig::default();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|c| {
            let mut req = RegionRequest::new(domain(c.spec), CaratheodoryData::new(c.data.clone()).unwrap(), c.j, c.z0);
            req.quad = cfg;
            match region_compute(&req) {
                Ok(RegionResult::Region(p)) if polygon_convexity(&p, 1e-9) => None,
                Ok(RegionResult::Region(_)) => Some(format!("{} j={} z0={} not convex", c.spec, c.j, c.z0)),
                other => Some(format!("{} j={} z0={}: {other:?}", c.spec, c.j, c.z0)),
            }
        })
        .collect();
    let detail = match failures.first() {
        None => format!("{} traces convex", cases.len()),
        Some(f) => format!("{} of {} failed, first: {f}", failures.len(), cases.len()),
    };
    check(failures.is_empty(), detail)
}

fn membership_monte_carlo() -> Outcome {
    let cases: Vec<MatrixCase> = matrix_cases().into_iter().filter(|c| c.j == -1).collect();
    let cfg = QuadratureConfig::default();
    let mut outside = 0;
    let mut total = 0;
    let mut worst = f64::NEG_INFINITY;
    for (k, c) in cases.iter().enumerate() {
        let report = membership_trial(&domain(c.spec), &c.gamma, c.j, c.z0, 1000, 7000 + k as u64, &cfg).unwrap();
        outside += report.total - report.inside;
        total += report.total;
        worst = worst.max(report.max_signed_distance);
    }
    check(
        outside == 0,
        format!("{outside} of {total} outside over {} configurations, max signed distance {worst:.3e}", cases.len()),
    )
}

fn h_identity() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut r = rng(8);
    let mut worst = 0.0f64;
    let mut count = 0;
    for spec in ["halfplane", "janowski:A=0.5,B=-0.5"] {
        let d = domain(spec);
        for j in 0..=2i32 {
            for n in 1..=3u32 {
                let zeros = vec![Complex64::default(); n as usize];
                for _ in 0..20 {
                    let z0 = random_z0(&mut r);
                    let eps = unimodular(&mut r);
                    let lhs = (j + 1) as f64 * q_point(&d, &zeros, j, z0, eps, &cfg).unwrap() / z0.powi(j + 1);
                    let rhs = h_function(&d, j, n, eps * z0.powi(n as i32), &cfg).unwrap();
                    worst = worst.max((lhs - rhs).norm());
                    count += 1;
                }
            }
        }
    }
    check(worst < 1e-10, format!("max deviation {worst:.3e} over {count} cases (< 1e-10)"))
}

fn coefficient_fidelity() -> Outcome {
    let mut r = rng(9);
    let mut worst = 0.0f64;
    let mut worst_coeff = 0.0f64;
    let specs: Vec<&str> = MATRIX_DOMAINS.iter().copied().chain(["kucv:k=0.5", "janowski:A=0.5,B=-0.5"]).collect();
    for spec in &specs {
        let d = domain(spec);
        for _ in 0..200 {
            let (g1, g2, eps) = (in_disk(&mut r, 0.95), in_disk(&mut r, 0.95), unimodular(&mut r));
            let f = extremal_coefficients(&d, &[g1, g2], eps, 3).unwrap();
            let pair = gamma_from_a2a3(f.coeff(2), f.coeff(3), &d);
            let Gamma2::Value(h2) = pair.gamma2 else { return check(false, format!("{spec}: degenerate gamma2")) };
            worst = worst.max((pair.gamma1 - g1).norm()).max((h2 - g2).norm());

            // prescribed (a₂, a₃) reproduced by the extremal built from their parameters
            let (lam, mu) = (f.coeff(2), f.coeff(3));
            let pair = gamma_from_a2a3(lam, mu, &d);
            let Gamma2::Value(h2) = pair.gamma2 else { unreachable!() };
            let f2 = extremal_coefficients(&d, &[pair.gamma1, h2], unimodular(&mut r), 3).unwrap();
            worst_coeff = worst_coeff.max((f2.coeff(2) - lam).norm()).max((f2.coeff(3) - mu).norm());
        }
    }
    check(
        worst < 1e-8 && worst_coeff < 1e-8,
        format!(
            "{} domains x 200: max parameter error {worst:.3e}, max (a2, a3) error {worst_coeff:.3e} (< 1e-8)",
            specs.len()
        ),
    )
}

fn cli(args: &[&str]) -> (i32, Value) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = varregion_cli::run(std::iter::once("varregion").chain(args.iter().copied()), &mut out, &mut err);
    let v = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, v)
}

fn degenerate_cases() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let (code, v) = cli(&["schur", "--data", "1,0"]);
    let ok =
        code == 0 && v["classification"] == "boundary" && v["gamma"] == serde_json::json!([[1.0, 0.0], [0.0, 0.0]]);
    pass &= ok;
    notes.push(format!("schur 1,0 boundary: {ok}"));

    let (code, v) = cli(&["schur", "--data", "1,0.5"]);
    let ok = code == 0 && v["classification"] == "exterior";
    pass &= ok;
    let (code, v) = cli(&["region", "--domain", "halfplane", "--data", "1,0.5", "--j", "-1", "--z0", "0.5"]);
    let ok = ok && code == 0 && v == serde_json::json!({"variant": "empty"});
    pass &= ok;
    notes.push(format!("1,0.5 empty: {ok}"));

    // single points against an independent recomputation at tighter tolerance
    let fine = QuadratureConfig::new(1e-14, 1e-14, 60).unwrap();
    let mut worst = 0.0f64;
    let c = Complex64::new;
    let cases = [
        ("1,0", c(1.0, 0.0), c(0.0, 0.0)),
        ("0,1", c(0.0, 0.0), c(1.0, 0.0)),
        ("0.3,0.91i", c(0.3, 0.0), c(0.0, 0.91)),
    ];
    for spec in MATRIX_DOMAINS {
        let d = domain(spec);
        for (data, c0, c1) in cases {
            for (z0s, j) in [("0.5", -1), ("0.3+0.4i", 0), ("-0.6i", 1)] {
                let (code, v) = cli(&["region", "--domain", spec, "--data", data, "--j", &j.to_string(), "--z0", z0s]);
                if code != 0 || v["variant"] != "single_point" {
                    pass = false;
                    notes.push(format!("{spec} {data}: {v}"));
                    continue;
                }
                let w0 = c(v["w0"][0].as_f64().unwrap(), v["w0"][1].as_f64().unwrap());
                let z0 = varregion_cli::parse_complex(z0s).unwrap();
                let want = if c0.norm() == 1.0 {
                    // the extremal self-map is the constant c₀
                    Complex64::default()
                } else {
                    // ω(ζ) = σ_{γ₀}(γ₁ζ) with γ₀ = c₀, γ₁ = c₁/(1 − |c₀|²) unimodular
                    let g1 = c1 / (1.0 - c0.norm_sqr());
                    let p0 = domain_eval(&d, c0).unwrap();
                    integrate_segment(
                        |z| {
                            let u = g1 * z;
                            let w = (u + c0) / (1.0 + c0.conj() * u);
                            z.powi(j) * (domain_eval(&d, w).unwrap() - p0)
                        },
                        z0,
                        &fine,
                    )
                    .unwrap()
                };
                worst = worst.max((w0 - want).norm());
            }
        }
    }
    pass &= worst < 1e-10;
    notes.push(format!("single-point max deviation {worst:.3e} (< 1e-10)"));
    check(pass, notes.join(", "))
}

fn janowski_reduction() -> Outcome {
    let mut r = rng(11);
    let mut worst = 0.0f64;
    for alpha in [-0.5, 0.0, 0.25, 0.5] {
        let jan = domain(&format!("janowski:A={},B=-1", 1.0 - 2.0 * alpha));
        let half = domain(&format!("halfplane:alpha={alpha}"));
        for _ in 0..100 {
            let z = in_disk(&mut r, 0.9);
            worst = worst.max((jan.eval(z).unwrap() - half.eval(z).unwrap()).norm());
        }
    }
    let kucv = domain("kucv:k=0");
    let half = domain("halfplane");
    let worst_k = (0..100)
        .map(|_| {
            let z = in_disk(&mut r, 0.9);
            (kucv.eval(z).unwrap() - half.eval(z).unwrap()).norm()
        })
        .fold(0.0, f64::max);
    check(
        worst <= 1e-12 && worst_k <= 1e-10,
        format!("Janowski vs half-plane {worst:.3e} (<= 1e-12), kucv:k=0 vs half-plane {worst_k:.3e} (<= 1e-10)"),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("closed-form half-plane curve vs engine trace", closed_form_curve),
        ("classical region -2 log(1 - z)", classical_region),
        ("zero a2 closed form", zero_a2_closed_form),
        ("Schur roundtrip", schur_roundtrip),
        ("Schur vs Toeplitz classification", oracle_agreement),
        ("convexity matrix", convexity_matrix),
        ("membership Monte-Carlo", membership_monte_carlo),
        ("zero-data H identity", h_identity),
        ("coefficient fidelity", coefficient_fidelity),
        ("degenerate cases", degenerate_cases),
        ("Janowski and kucv reductions", janowski_reduction),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome { pass: false, detail: format!("panicked: {msg}") }
        });
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}) [{:.1}s]",
            k + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            name,
            outcome.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
