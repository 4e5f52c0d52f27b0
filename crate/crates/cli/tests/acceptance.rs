//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p auxr-cli --test acceptance`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::time::{Duration, Instant};

use auxr_cli::run_with;
use auxr_core::hermite::{hermite_integral_spec, HermiteMethod};
use auxr_core::identities::prop_inth_lhs;
use auxr_core::xray::{figure_axis_crossings, FIGURE_TOL};
use auxr_core::{
    crosscheck, hermite, hermite_reflection_residual, integrate_line, integrate_real_line, parabolic_ode_residual,
    prop_inth_residual, prop_inth_spec, sinc_lemma_residual, sinc_lemma_spec, zeta_spec, zeta_via_r, Complex64 as C,
    HermiteEngine, LineContour, QuadratureSpec, RMethod,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn disc(rng: &mut ChaCha8Rng, r: f64) -> C {
    loop {
        let z = C::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
        if z.norm() <= r {
            return z;
        }
    }
}

fn hermite_poly(n: usize, z: C) -> C {
    let (mut prev, mut cur) = (C::new(1.0, 0.0), z * 2.0);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = z * 2.0 * cur - prev * (2.0 * k as f64);
        prev = cur;
        cur = next;
    }
    cur
}

const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

fn zeta_euler_maclaurin(s: C) -> C {
    let n = 30.0f64;
    let mut sum: C = (1..30).map(|k| (-s * (k as f64).ln()).exp()).sum();
    let n_pow = (-s * n.ln()).exp();
    sum += n_pow * n / (s - 1.0) + n_pow * 0.5;
    let mut factor = s / n;
    let mut fact = 2.0;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let m = (2 * (k + 1)) as f64;
        sum += n_pow * factor * (*b / fact);
        factor = factor * (s + (m - 1.0)) * (s + m) / (n * n);
        fact *= (m + 1.0) * (m + 2.0);
    }
    sum
}

fn lemma_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 50 {
        let y = rng.gen_range(-3.0..3.0);
        let a: f64 = rng.gen_range(0.0..1.0);
        let z = C::new(y + a, y);
        if a == 0.0 || z.norm() > 3.0 {
            continue;
        }
        let r = sinc_lemma_spec(z, 1e-11).and_then(|spec| sinc_lemma_residual(z, &spec)).unwrap_or(f64::INFINITY);
        worst = worst.max(r);
        n += 1;
    }
    Outcome { pass: worst <= 1e-9, detail: format!("50 points, max residual {worst:.2e} (limit 1e-9)") }
}

fn proposition_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let angles = [FRAC_PI_3, FRAC_PI_2, 2.0 * FRAC_PI_3];
    let (mut worst_res, mut worst_spread): (f64, f64) = (0.0, 0.0);
    for _ in 0..30 {
        let s = disc(&mut rng, 3.0);
        let z = disc(&mut rng, 3.0);
        let mut lhs = Vec::new();
        for &angle in &angles {
            let run = || {
                let spec = prop_inth_spec(s, z, angle, 1e-12)?;
                Ok::<_, auxr_core::Error>((
                    prop_inth_residual(s, z, angle, &spec)?,
                    prop_inth_lhs(s, z, angle, &spec)?.value,
                ))
            };
            match run() {
                Ok((r, v)) => {
                    worst_res = worst_res.max(r);
                    lhs.push(v);
                }
                Err(_) => worst_res = f64::INFINITY,
            }
        }
        for i in 0..lhs.len() {
            for j in i + 1..lhs.len() {
                worst_spread = worst_spread.max(rel(lhs[i], lhs[j]));
            }
        }
    }
    Outcome {
        pass: worst_res <= 1e-7 && worst_spread <= 1e-9,
        detail: format!(
            "30 pairs x 3 angles, max residual {worst_res:.2e} (1e-7), angle spread {worst_spread:.2e} (1e-9)"
        ),
    }
}

fn hermite_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let value = |nu: C, z: C, m: HermiteMethod| hermite(nu, z, m, 1e-13).map(|h| h.value());

    let mut poly: f64 = 0.0;
    for _ in 0..25 {
        let z = disc(&mut rng, 4.0);
        for n in 0..=10 {
            let got = value(C::new(n as f64, 0.0), z, HermiteMethod::Auto);
            poly = poly.max(got.map(|v| rel(v, hermite_poly(n, z))).unwrap_or(f64::INFINITY));
        }
    }

    let mut dual: f64 = 0.0;
    for _ in 0..100 {
        let nu = C::new(rng.gen_range(-5.0..-0.1), rng.gen_range(-10.0..10.0));
        let z = disc(&mut rng, 3.0);
        let a = hermite(nu, z, HermiteMethod::Series, 1e-14).map(|h| h.value());
        let b = hermite_integral_spec(nu, z, 1e-13);
        let b = auxr_core::hermite_integral(nu, z, &b).map(|r| r.value);
        dual = dual.max(match (a, b) {
            (Ok(a), Ok(b)) => rel(a, b),
            _ => f64::INFINITY,
        });
    }

    let mut refl: f64 = 0.0;
    let mut n = 0;
    while n < 50 {
        let nu = disc(&mut rng, 3.0);
        if (1..=4).any(|k| (nu + k as f64).norm() < 0.1) {
            continue;
        }
        let z = disc(&mut rng, 2.0);
        refl = refl.max(hermite_reflection_residual(nu, z).unwrap_or(f64::INFINITY));
        n += 1;
    }

    let mut ode: f64 = 0.0;
    for _ in 0..20 {
        let nu = disc(&mut rng, 3.0);
        let z = disc(&mut rng, 3.0);
        ode = ode.max(parabolic_ode_residual(-nu - 0.5, z).unwrap_or(f64::INFINITY));
    }

    Outcome {
        pass: poly <= 1e-9 && dual <= 1e-8 && refl <= 1e-8 && ode <= 1e-5,
        detail: format!(
            "polynomial {poly:.2e} (1e-9), series/integral {dual:.2e} (1e-8), reflection {refl:.2e} (1e-8), ODE {ode:.2e} (1e-5)"
        ),
    }
}

fn representation_suite() -> Outcome {
    let two = [RMethod::Definition, RMethod::HermiteForm];
    let mut worst_two: f64 = 0.0;
    let mut failed = Vec::new();
    for sigma in [-1.0, 0.0, 0.5, 1.0, 2.0] {
        for t in [0.0, 5.0, 10.0, 20.0] {
            match crosscheck(C::new(sigma, t), &two, 1e-6) {
                Ok(r) => {
                    worst_two = worst_two.max(r.max_pairwise_rel_err);
                    if !r.pass {
                        failed.push(format!("{sigma}+{t}i"));
                    }
                }
                Err(_) => failed.push(format!("{sigma}+{t}i")),
            }
        }
    }
    let mut worst_three: f64 = 0.0;
    for sigma in [0.5, 1.0] {
        for t in [0.0, 10.0, 20.0] {
            match crosscheck(C::new(sigma, t), &RMethod::ALL, 1e-5) {
                Ok(r) => {
                    worst_three = worst_three.max(r.max_pairwise_rel_err);
                    if !r.pass {
                        failed.push(format!("{sigma}+{t}i (three)"));
                    }
                }
                Err(_) => failed.push(format!("{sigma}+{t}i (three)")),
            }
        }
    }
    let mut detail = format!("20 points {worst_two:.2e} (1e-6), 6 points with U form {worst_three:.2e} (1e-5)");
    if !failed.is_empty() {
        detail.push_str(&format!(", failing at {}", failed.join(" ")));
    }
    Outcome { pass: failed.is_empty(), detail }
}

fn quadrature_suite() -> Outcome {
    let gauss = |z: C| (-z * z).exp();
    let root_pi = C::new(PI.sqrt(), 0.0);
    let spec = QuadratureSpec::new(8.0, 0.125, 1e-12).unwrap();
    let mut gauss_err: f64 = 0.0;
    for angle in [0.0, PI / 6.0] {
        let v = integrate_line(gauss, &LineContour::new(C::new(0.0, 0.0), angle), &spec).map(|r| r.value);
        gauss_err = gauss_err.max(v.map(|v| (v - root_pi).norm()).unwrap_or(f64::INFINITY));
    }

    let mut shift: f64 = 0.0;
    let base = LineContour::new(C::new(0.2, -0.1), 0.3);
    let a = integrate_line(gauss, &base, &spec).unwrap().value;
    for r in [-1.5, -0.5, 0.7, 1.5] {
        let moved = base.with_anchor(base.anchor() + base.direction() * r);
        shift = shift.max(rel(a, integrate_line(gauss, &moved, &spec).unwrap().value));
    }

    let sech = |x: C| 1.0 / (x * PI).cosh();
    let at = |h: f64| integrate_real_line(sech, &QuadratureSpec::new(12.0, h, 1e-15).unwrap()).unwrap().value;
    let steps = [1.0, 0.5, 0.25, 0.125];
    let vals: Vec<C> = steps.iter().map(|&h| at(h)).collect();
    let diffs: Vec<f64> = vals.windows(2).map(|w| (w[0] - w[1]).norm()).collect();
    // geometric: each difference at least 20x smaller until the rounding floor
    let geometric = diffs.windows(2).all(|w| w[1] <= w[0] / 20.0 || w[1] <= 1e-14);

    Outcome {
        pass: gauss_err <= 1e-12 && shift <= 1e-12 && geometric,
        detail: format!(
            "Gaussian {gauss_err:.2e} (1e-12), anchor shift {shift:.2e} (1e-12), halving differences {}",
            diffs.iter().map(|d| format!("{d:.1e}")).collect::<Vec<_>>().join(" > ")
        ),
    }
}

fn figure_suite() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let engine = HermiteEngine::default();
    let mut notes = Vec::new();
    let mut pass = true;
    for t in [10.0, 20.0] {
        let mut files = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("t{t}_{run}.ppm"));
            let args =
                ["xray", "--t", &t.to_string(), "--square", "6", "--res", "512", "--out", path.to_str().unwrap()];
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = run_with(args, &mut out, &mut err);
            if code != 0 {
                pass = false;
                notes.push(format!("t={t}: exit {code}"));
            }
            files.push(std::fs::read(&path).unwrap_or_default());
        }
        let same = !files[0].is_empty() && files[0] == files[1];
        pass &= same;
        let coarse = figure_axis_crossings(&engine, t, 6.0, 512, FIGURE_TOL);
        let fine = figure_axis_crossings(&engine, t, 6.0, 1024, FIGURE_TOL);
        match (coarse, fine) {
            (Ok(c), Ok(f)) => {
                let stable = c.0.abs_diff(f.0) <= 1 && c.1.abs_diff(f.1) <= 1;
                pass &= stable;
                notes.push(format!(
                    "t={t}: identical={same}, axis crossings re/im {}/{} at 512, {}/{} at 1024",
                    c.0, c.1, f.0, f.1
                ));
            }
            _ => {
                pass = false;
                notes.push(format!("t={t}: crossing count failed"));
            }
        }
    }
    Outcome { pass, detail: notes.join("; ") }
}

fn zeta_suite() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for s in [C::new(0.5, 0.0), C::new(2.0, 0.0)] {
        let oracle = zeta_euler_maclaurin(s);
        let got = zeta_spec(s, 1e-12).and_then(|spec| zeta_via_r(s, &spec)).map(|r| r.value);
        let d = got.map(|g| (g - oracle).norm()).unwrap_or(f64::INFINITY);
        worst = worst.max(d);
        parts.push(format!("s={}: |diff| {d:.2e}", s.re));
    }
    Outcome { pass: worst <= 1e-6, detail: format!("{} (1e-6)", parts.join(", ")) }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("lemma strip", Duration::from_secs(5), lemma_suite),
        ("proposition angles", Duration::from_secs(30), proposition_suite),
        ("hermite engine", Duration::from_secs(60), hermite_suite),
        ("representation equality", Duration::from_secs(300), representation_suite),
        ("quadrature engine", Duration::from_secs(5), quadrature_suite),
        ("figure reproduction", Duration::from_secs(600), figure_suite),
        ("zeta anchor", Duration::from_secs(30), zeta_suite),
    ];
    let mut failures = 0;
    for (k, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let pass = outcome.pass && elapsed <= *budget;
        if !pass {
            failures += 1;
        }
        println!(
            "{} criterion {}: {name}: {} [{:.2} s of {} s]",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 7 criteria passed");
}
