#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the disc `|z| <= r`.
pub fn disc(rng: &mut ChaCha8Rng, r: f64) -> C {
    loop {
        let z = C::new(rng.gen_range(-r..r), rng.gen_range(-r..r));
        if z.norm() <= r {
            return z;
        }
    }
}

pub fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// `H_n(z)` from `H_{k+1} = 2z H_k - 2k H_{k-1}`.
pub fn hermite_poly(n: usize, z: C) -> C {
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

/// `erfc(x)` for `0 <= x <= 3` from the Maclaurin series of `erf`.
pub fn erfc_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    for n in 1..200 {
        term *= -x * x / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    1.0 - 2.0 / std::f64::consts::PI.sqrt() * sum
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

/// `ζ(s)` by Euler–Maclaurin summation with cut `n = 30`, `s != 1`,
/// accurate to about `1e-14` for `|s| <= 20`.
pub fn zeta_euler_maclaurin(s: C) -> C {
    let n = 30.0f64;
    let mut sum = C::new(0.0, 0.0);
    for k in 1..30 {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * n.ln()).exp();
    sum += n_pow * n / (s - 1.0) + n_pow * 0.5;
    // rising product s(s+1)…(s+2k-2) / (2k)! · N^{-s-2k+1}
    let mut factor = s / n;
    let mut fact = 2.0;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = k + 1;
        sum += n_pow * factor * (*b / fact);
        let m = (2 * k) as f64;
        factor = factor * (s + (m - 1.0)) * (s + m) / (n * n);
        fact *= (m + 1.0) * (m + 2.0);
    }
    sum
}
