//! Exact rational null momenta.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, YmError};
use crate::exact_arith::{Rat, GR};
use crate::ym_complex::Momentum4;

/// `(d, a, b, c)` with `a² + b² + c² = d²`, from the standard
/// four-parameter family; never all zero.
pub fn pythagorean_quadruple(rng: &mut ChaCha8Rng) -> [i64; 4] {
    loop {
        let [m, n, p, q]: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-4..=4));
        let d = m * m + n * n + p * p + q * q;
        if d != 0 {
            return [d, m * m + n * n - p * p - q * q, 2 * (m * q + n * p), 2 * (n * q - m * p)];
        }
    }
}

fn random_scale(rng: &mut ChaCha8Rng) -> GR {
    let mut num = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    GR::real(Rat::new(num, rng.gen_range(1..=3)))
}

/// A random nonzero rational null momentum.
pub fn random_null(rng: &mut ChaCha8Rng) -> Momentum4 {
    let q = pythagorean_quadruple(rng);
    let s = random_scale(rng);
    Momentum4(q.map(|x| &GR::int(x) * &s))
}

/// A random off-shell momentum with small integer components.
pub fn random_offshell(rng: &mut ChaCha8Rng) -> Momentum4 {
    loop {
        let k = Momentum4(std::array::from_fn(|_| GR::int(rng.gen_range(-5..=5))));
        if !k.is_null() {
            return k;
        }
    }
}

/// Squares of all sums over subsets of size `2..n−1`; these are the internal
/// lines of every cubic tree on the legs (planar or not).
pub fn is_generic(ks: &[Momentum4]) -> bool {
    let n = ks.len();
    (1u32..(1 << n)).all(|mask| {
        let size = mask.count_ones() as usize;
        if size < 2 || size + 1 > n {
            return true;
        }
        let mut s = Momentum4::ints([0; 4]);
        for (i, k) in ks.iter().enumerate() {
            if mask & (1 << i) != 0 {
                s = s.add(k);
            }
        }
        !s.is_null()
    })
}

/// `n ≥ 2` null momenta whose total is null and nonzero, generic in the
/// sense of [`is_generic`]. The last one is solved for: with `K` the sum of
/// the others and `k = λ(1, n̂)`, `(K + k)² = 0` fixes `λ = −K²/(2K·(1, n̂))`.
pub fn null_configuration(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Momentum4>> {
    if n < 2 {
        return Err(YmError::Arity(n));
    }
    for _ in 0..1000 {
        let mut ks: Vec<Momentum4> = (0..n - 1).map(|_| random_null(rng)).collect();
        if n == 2 {
            // two null momenta with a null sum are parallel
            let c = random_scale(rng);
            let k = Momentum4(std::array::from_fn(|mu| &ks[0].0[mu] * &c));
            if k.add(&ks[0]).is_zero() {
                continue;
            }
            ks.push(k);
            return Ok(ks);
        }
        let big = ks.iter().fold(Momentum4::ints([0; 4]), |a, k| a.add(k));
        let dir = Momentum4(pythagorean_quadruple(rng).map(GR::int));
        let den = &GR::int(2) * &big.dot(&dir);
        if den.is_zero() {
            continue;
        }
        let lambda = &(-big.square()) / &den;
        if lambda.is_zero() {
            continue;
        }
        ks.push(Momentum4(std::array::from_fn(|mu| &dir.0[mu] * &lambda)));
        let total = ks.iter().fold(Momentum4::ints([0; 4]), |a, k| a.add(k));
        if !total.is_zero() && is_generic(&ks) {
            debug_assert!(total.is_null() && ks.iter().all(Momentum4::is_null));
            return Ok(ks);
        }
    }
    Err(YmError::NotFound(format!("generic null configuration with {n} legs")))
}
