//! Acceptance gate: one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use inkbasis::approx::{
    approx_error, norm_report, project, reconstruct, symbol_curve, theorem2_bound, timing_report,
    ParametricCurve, PolyCurve,
};
use inkbasis::bases::{build_basis, eval_reference, gauss_rule, BasisKind, RefKind, Weight};
use inkbasis::classify::{evaluate_protocol, EvalOptions};
use inkbasis::data_io::{first_per_class, parse_pendigits, ParseMode};
use inkbasis::InkSymbol;

fn repo(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let mut o = f();
    let elapsed = t.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            o.pass = false;
            o.detail = format!("{}; over the {:?} budget", o.detail, b);
        }
    }
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!(
        "{tag} {name}: {} ({:.2} s)",
        o.detail,
        elapsed.as_secs_f64()
    );
    o.pass
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// `∫ f(s) w(s) ds` with 80-point Gauss–Legendre, in `θ` for the Chebyshev weight.
fn dense_integral(weight: Weight, f: impl Fn(f64) -> f64) -> f64 {
    let rule = gauss_rule::<f64>(80).unwrap();
    match weight {
        Weight::Unit => rule.integrate(f),
        Weight::Chebyshev => rule.integrate_on(0.0, std::f64::consts::PI, |t| f(t.cos())),
    }
}

fn orthogonality() -> Outcome {
    let mut worst = 0.0f64;
    let mut at = String::new();
    for kind in BasisKind::ALL {
        for mu in [0.0, 0.125] {
            for d in 0..=20 {
                let b = build_basis(kind, d, mu).unwrap();
                let elems: Vec<_> = (0..=d)
                    .map(|i| {
                        let mut c = vec![0.0; d + 1];
                        c[i] = 1.0;
                        b.poly(c).unwrap()
                    })
                    .collect();
                let derivs: Vec<_> = elems.iter().map(|p| p.derivative()).collect();
                // Classical families are orthogonal without the derivative term.
                let mu = b.inner_product().mu;
                let gram = |i: usize, j: usize| {
                    dense_integral(kind.weight(), |s| {
                        elems[i].eval(s).unwrap() * elems[j].eval(s).unwrap()
                            + mu * derivs[i].eval(s).unwrap() * derivs[j].eval(s).unwrap()
                    })
                };
                let diag: Vec<f64> = (0..=d).map(|i| gram(i, i)).collect();
                for i in 0..=d {
                    for j in 0..i {
                        let r = gram(i, j).abs() / (diag[i] * diag[j]).sqrt();
                        if r > worst {
                            worst = r;
                            at = format!("{kind} mu={mu} d={d} ({i},{j})");
                        }
                    }
                }
            }
        }
    }
    outcome(
        worst < 1e-10,
        format!("max relative off-diagonal {worst:.2e} at {at}, limit 1e-10"),
    )
}

fn exact_representation(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for kind in BasisKind::ALL {
        for _ in 0..100 {
            let d = rng.gen_range(0..=20);
            let deg = rng.gen_range(0..=d);
            let xs: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let ys: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let curve = PolyCurve::new(kind.reference(), xs, ys);
            let b = build_basis(kind, d, 0.125).unwrap();
            let rec = reconstruct(&project(&curve, &b).unwrap(), &b, 2001).unwrap();
            for (s, (x, y)) in rec.s_nodes().iter().zip(rec.points()) {
                let (px, py) = curve.position(*s);
                worst = worst.max((x - px).hypot(y - py));
            }
        }
    }
    outcome(
        worst < 1e-9,
        format!("400 curves, max L∞ error {worst:.2e}, limit 1e-9"),
    )
}

fn theorem_two(rng: &mut ChaCha8Rng) -> Outcome {
    let mut held = 0;
    let mut tightest = f64::INFINITY;
    for kind in BasisKind::ALL {
        for _ in 0..1000 {
            let d = rng.gen_range(0..=20);
            let b = build_basis(kind, d, 0.125).unwrap();
            let f = b
                .poly((0..=d).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .unwrap();
            let g = b
                .poly((0..=d).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .unwrap();
            let r = theorem2_bound(&f, &g, 0.125).unwrap();
            if r.holds {
                held += 1;
            }
            tightest = tightest.min(r.rhs / r.lhs);
        }
    }
    outcome(
        held == 4000,
        format!("{held}/4000 trials hold, min rhs/lhs {tightest:.4}"),
    )
}

/// `R_i'(s)` for the reference families in closed form.
fn reference_derivative(r: RefKind, i: usize, s: f64) -> f64 {
    if i == 0 {
        return 0.0;
    }
    match r {
        RefKind::Legendre => {
            let p = eval_reference(r, i, s).unwrap();
            let q = eval_reference(r, i - 1, s).unwrap();
            i as f64 * (s * p - q) / (s * s - 1.0)
        }
        RefKind::Chebyshev => {
            let t = s.acos();
            i as f64 * (i as f64 * t).sin() / t.sin()
        }
    }
}

fn differentiation(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst_fd = 0.0f64;
    let mut worst_exact = 0.0f64;
    for kind in BasisKind::ALL {
        for _ in 0..100 {
            let d = rng.gen_range(0..=20);
            let b = build_basis(kind, d, 0.125).unwrap();
            let p = b
                .poly((0..=d).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .unwrap();
            let dp = p.derivative();
            let a = p.reference_coeffs();
            let mut err = 0.0f64;
            let mut scale = 1.0f64;
            for k in 0..20 {
                let s = -1.0 + 2.0 * (k as f64 + 0.5) / 20.0;
                let got = dp.eval(s).unwrap();
                let h = 1e-5;
                let fd = (p.eval(s + h).unwrap() - p.eval(s - h).unwrap()) / (2.0 * h);
                err = err.max((fd - got).abs());
                scale = scale.max(got.abs());
                let exact: f64 = a
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * reference_derivative(kind.reference(), i, s))
                    .sum();
                worst_exact = worst_exact.max((got - exact).abs() / exact.abs().max(1.0));
            }
            worst_fd = worst_fd.max(err / scale);
        }
    }
    outcome(
        worst_fd <= 1e-6 && worst_exact <= 1e-10,
        format!(
            "400 polynomials, finite differences {worst_fd:.2e} (relative to max(1,|p'|), limit 1e-6), analytic {worst_exact:.2e} (limit 1e-10)"
        ),
    )
}

fn recognition(subset: &[InkSymbol]) -> Outcome {
    let opts = EvalOptions {
        n_splits: 20,
        threads: Some(1),
        ..EvalOptions::default()
    };
    let r = evaluate_protocol(subset, &[BasisKind::ChebyshevSobolev], &[12], 0.125, &opts).unwrap();
    let row = &r.rows[0];
    outcome(
        row.mean >= 0.90,
        format!(
            "{} samples, 20 splits, mean {:.4} (min {:.4}, max {:.4}), limit 0.90",
            subset.len(),
            row.mean,
            row.min,
            row.max
        ),
    )
}

fn norm_ordering(subset: &[InkSymbol]) -> Outcome {
    let t = norm_report(subset, &BasisKind::ALL, &[20], 0.125).unwrap();
    let of = |k: BasisKind| t.rows.iter().find(|r| r.kind == k).unwrap().mean_coeff_norm;
    let (l, c, ls, cs) = (
        of(BasisKind::Legendre),
        of(BasisKind::Chebyshev),
        of(BasisKind::LegendreSobolev),
        of(BasisKind::ChebyshevSobolev),
    );
    outcome(
        ls < l && cs < c,
        format!("d=20: legendre-sobolev {ls:.4} < legendre {l:.4}, chebyshev-sobolev {cs:.4} < chebyshev {c:.4}"),
    )
}

fn timing_ordering(subset: &[InkSymbol]) -> Outcome {
    let degrees = [5, 10, 15, 20];
    let t = timing_report(subset, &BasisKind::ALL, &degrees, 0.125, 9).unwrap();
    let time = |k: BasisKind, d: usize| {
        t.rows
            .iter()
            .find(|r| r.kind == k && r.degree == d)
            .unwrap()
            .mean_seconds_per_sample
    };
    let mut problems = Vec::new();
    let mut summary = Vec::new();
    for k in BasisKind::ALL {
        let ts: Vec<f64> = degrees.iter().map(|&d| time(k, d)).collect();
        summary.push(format!(
            "{k} [{}]",
            ts.iter()
                .map(|x| format!("{:.2}", x * 1e6))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        if ts.windows(2).any(|w| w[1] < w[0]) {
            problems.push(format!("{k} not nondecreasing"));
        }
    }
    for (s, c) in [
        (BasisKind::LegendreSobolev, BasisKind::Legendre),
        (BasisKind::ChebyshevSobolev, BasisKind::Chebyshev),
    ] {
        if time(s, 20) < time(c, 20) {
            problems.push(format!("{s} faster than {c} at d=20"));
        }
    }
    let detail = format!("µs/sample at d=5,10,15,20: {}", summary.join("; "));
    if problems.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{}; {detail}", problems.join(", ")))
    }
}

fn degree_progression(subset: &[InkSymbol]) -> Outcome {
    let samples = first_per_class(subset, 5);
    let mut failures = 0;
    let mut worst_ratio = 0.0f64;
    for kind in BasisKind::ALL {
        let b5 = build_basis(kind, 5, 0.125).unwrap();
        let b20 = build_basis(kind, 20, 0.125).unwrap();
        for s in &samples {
            let c = symbol_curve(s).unwrap();
            let e5 = approx_error(&c, &project(&c, &b5).unwrap(), &b5)
                .unwrap()
                .linf;
            let e20 = approx_error(&c, &project(&c, &b20).unwrap(), &b20)
                .unwrap()
                .linf;
            if e20 >= e5 {
                failures += 1;
            }
            worst_ratio = worst_ratio.max(e20 / e5);
        }
    }
    outcome(
        failures == 0 && samples.len() == 50,
        format!(
            "{} samples x 4 bases, {failures} with L∞(d=20) >= L∞(d=5), worst ratio {worst_ratio:.3}",
            samples.len()
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let data = repo("data/pendigits/pendigits.csv");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_inkbasis"))
            .args([
                "eval",
                "--basis",
                "chebyshev-sobolev",
                "--degree",
                "12",
                "--mu",
                "0.125",
            ])
            .args([
                "--splits",
                "4",
                "--per-class",
                "40",
                "--seed",
                "7",
                "--data",
            ])
            .arg(&data)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    outcome(
        a == b && !a.is_empty(),
        format!(
            "two eval runs, {} bytes each, identical: {}",
            a.len(),
            a == b
        ),
    )
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_101);
    let data = parse_pendigits(repo("data/pendigits/pendigits.csv"), ParseMode::Strict).unwrap();
    let subset = first_per_class(&data.symbols, 200);
    assert_eq!(subset.len(), 2000);

    let results = [
        check(
            "orthogonality",
            Some(Duration::from_secs(30)),
            orthogonality,
        ),
        check(
            "exact-representation",
            Some(Duration::from_secs(60)),
            || exact_representation(&mut rng),
        ),
        check("theorem-2-bound", Some(Duration::from_secs(60)), || {
            theorem_two(&mut rng)
        }),
        check("differentiation-matrices", None, || {
            differentiation(&mut rng)
        }),
        check(
            "recognition-desk-scale",
            Some(Duration::from_secs(300)),
            || recognition(&subset),
        ),
        check("norm-ordering", None, || norm_ordering(&subset)),
        check("timing-ordering", None, || timing_ordering(&subset)),
        check("degree-progression", None, || degree_progression(&subset)),
        check("eval-determinism", None, determinism),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
