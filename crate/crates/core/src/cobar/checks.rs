//! Seeded certification of the strict structure on `A`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::algebra::Cobar;
use crate::error::{Result, YmError};
use super::coalgebra::CoOp;
use crate::exact_arith::{PolyKP, GR};
use crate::gerstenhaber::{DecoratedGenerator, GElement, GWord};
use crate::ym_complex::DIM;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCount {
    pub checked: usize,
    pub failed: usize,
}

impl CheckCount {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobarReport {
    pub max_letters: usize,
    pub samples: usize,
    pub seed: u64,
    pub d_squared: CheckCount,
    pub h_squared: CheckCount,
    pub dh_plus_hd_is_box: CheckCount,
    pub equivariance: CheckCount,
    pub gerstenhaber_axioms: CheckCount,
    pub second_order: CheckCount,
    pub bracket_from_h: CheckCount,
    pub kinematic_jacobi: CheckCount,
    pub inclusion: CheckCount,
    pub coderivation_square: CheckCount,
}

impl CobarReport {
    pub fn counts(&self) -> [(&'static str, &CheckCount); 10] {
        [
            ("d_squared", &self.d_squared),
            ("h_squared", &self.h_squared),
            ("dh_plus_hd_is_box", &self.dh_plus_hd_is_box),
            ("equivariance", &self.equivariance),
            ("gerstenhaber_axioms", &self.gerstenhaber_axioms),
            ("second_order", &self.second_order),
            ("bracket_from_h", &self.bracket_from_h),
            ("kinematic_jacobi", &self.kinematic_jacobi),
            ("inclusion", &self.inclusion),
            ("coderivation_square", &self.coderivation_square),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.counts().iter().all(|(_, c)| c.failed == 0 && c.checked > 0)
    }

    fn merge(&mut self, o: &CobarReport) {
        let pairs: [(&mut CheckCount, &CheckCount); 10] = [
            (&mut self.d_squared, &o.d_squared),
            (&mut self.h_squared, &o.h_squared),
            (&mut self.dh_plus_hd_is_box, &o.dh_plus_hd_is_box),
            (&mut self.equivariance, &o.equivariance),
            (&mut self.gerstenhaber_axioms, &o.gerstenhaber_axioms),
            (&mut self.second_order, &o.second_order),
            (&mut self.bracket_from_h, &o.bracket_from_h),
            (&mut self.kinematic_jacobi, &o.kinematic_jacobi),
            (&mut self.inclusion, &o.inclusion),
            (&mut self.coderivation_square, &o.coderivation_square),
        ];
        for (a, b) in pairs {
            a.checked += b.checked;
            a.failed += b.failed;
        }
    }
}

fn sgn(e: i32) -> GR {
    GR::one().signed(e as i64)
}

/// A random C-letter with exactly `n` V-letters.
pub fn random_cletter(cb: &Cobar, rng: &mut ChaCha8Rng, n: usize) -> GWord {
    loop {
        let mut ls: Vec<u32> = (0..n)
            .map(|_| {
                let mut k = [0; 4];
                if rng.gen_bool(0.3) {
                    k[rng.gen_range(0..4)] = 1;
                }
                DecoratedGenerator { basis: rng.gen_range(0..DIM), kexp: k }.encode()
            })
            .collect();
        ls.sort_unstable();
        let s = cb.cofree().sector(&ls);
        if !s.is_empty() {
            return s[rng.gen_range(0..s.len())].clone();
        }
    }
}

/// A nonzero homogeneous word-of-words with `budget` V-letters, built from
/// up to three C-letters by products and brackets.
pub fn random_element(cb: &Cobar, rng: &mut ChaCha8Rng, budget: usize) -> GElement {
    loop {
        let parts = rng.gen_range(1..=budget.min(3));
        let mut sizes = vec![1; parts];
        for _ in parts..budget {
            let i = rng.gen_range(0..parts);
            sizes[i] += 1;
        }
        let mut x = cb.letter(&random_cletter(cb, rng, sizes[0]));
        for s in &sizes[1..] {
            let y = cb.letter(&random_cletter(cb, rng, *s));
            x = if rng.gen_bool(0.5) { cb.alg.mul(&x, &y) } else { cb.alg.bracket(&x, &y) };
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// Three elements with at most `budget` V-letters in total, preferring
/// ones not killed by `h_A` so the kinematic identity is exercised.
fn random_triple(cb: &Cobar, rng: &mut ChaCha8Rng, budget: usize) -> (GElement, GElement, GElement) {
    let mut last = None;
    for _ in 0..16 {
        let mut n = [1usize; 3];
        for _ in 3..rng.gen_range(3..=budget) {
            n[rng.gen_range(0..3)] += 1;
        }
        let t = (random_element(cb, rng, n[0]), random_element(cb, rng, n[1]), random_element(cb, rng, n[2]));
        if [&t.0, &t.1, &t.2].iter().all(|x| !cb.h_a(x).is_zero()) {
            return t;
        }
        last = Some(t);
    }
    last.expect("at least one draw")
}

fn deg(cb: &Cobar, x: &GElement) -> i32 {
    cb.alg.word_deg(x.terms.keys().next().expect("nonzero"))
}

/// Linear functional from a hash of each word.
fn functional(cb: &Cobar, x: &GElement) -> PolyKP {
    let mut acc = PolyKP::zero();
    for (w, c) in &x.terms {
        let mut hs = DefaultHasher::new();
        cb.alg.word_sexpr(w).hash(&mut hs);
        acc.add_scaled(c, &GR::int((hs.finish() % 7) as i64 - 3));
    }
    acc
}

fn seven_term(cb: &Cobar, x: &GElement, y: &GElement, z: &GElement) -> GElement {
    let (a, b) = (deg(cb, x), deg(cb, y));
    let m = |p: &GElement, q: &GElement| cb.alg.mul(p, q);
    let h = |p: &GElement| cb.h_a(p);
    let mut s = h(&m(&m(x, y), z));
    s.add_scaled(&m(&h(&m(x, y)), z), &GR::int(-1));
    s.add_scaled(&m(x, &h(&m(y, z))), &-sgn(a));
    s.add_scaled(&m(y, &h(&m(x, z))), &-sgn((a + 1) * b));
    s.add_assign(&m(&m(&h(x), y), z));
    s.add_scaled(&m(&m(x, &h(y)), z), &sgn(a));
    s.add_scaled(&m(&m(x, y), &h(z)), &sgn(a + b));
    s
}

fn sample(cb: &Cobar, max_letters: usize, seed: u64) -> CobarReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = CobarReport::default();
    let n = rng.gen_range(1..=max_letters);
    let x = random_element(cb, &mut rng, n);
    let (dx, hx) = (cb.d_a(&x), cb.h_a(&x));
    r.d_squared.record(cb.d_a(&dx).is_zero());
    r.h_squared.record(cb.h_a(&hx).is_zero());
    let mut c = cb.d_a(&hx);
    c.add_assign(&cb.h_a(&dx));
    r.dh_plus_hd_is_box.record(c == cb.box_a(&x));
    let mu = rng.gen_range(0..4);
    let px = cb.momentum(mu, &x);
    r.equivariance.record(cb.d_a(&px) == cb.momentum(mu, &dx) && cb.h_a(&px) == cb.momentum(mu, &hx));

    if max_letters >= 3 {
        let (x, y, z) = random_triple(cb, &mut rng, max_letters);
        let (a, b, cz) = (deg(cb, &x), deg(cb, &y), deg(cb, &z));
        let br = |p: &GElement, q: &GElement| cb.alg.bracket(p, q);
        let m = |p: &GElement, q: &GElement| cb.alg.mul(p, q);
        let mut jac = br(&x, &br(&y, &z));
        jac.add_scaled(&br(&br(&x, &y), &z), &GR::int(-1));
        jac.add_scaled(&br(&y, &br(&x, &z)), &-sgn((a - 1) * (b - 1)));
        let mut poi = br(&x, &m(&y, &z));
        poi.add_scaled(&m(&br(&x, &y), &z), &GR::int(-1));
        poi.add_scaled(&m(&y, &br(&x, &z)), &-sgn((a - 1) * b));
        r.gerstenhaber_axioms.record(jac.is_zero() && poi.is_zero());
        r.second_order.record(seven_term(cb, &x, &y, &z).is_zero());
        // [x,y] = (−1)^x h(xy) − (−1)^x h(x)y − x h(y)
        let mut rhs = cb.h_a(&m(&x, &y)).scale(&sgn(a));
        rhs.add_scaled(&m(&cb.h_a(&x), &y), &-sgn(a));
        rhs.add_scaled(&m(&x, &cb.h_a(&y)), &GR::int(-1));
        r.bracket_from_h.record(br(&x, &y) == rhs);
        // kinematic Jacobi on x, y, z ∈ im h ⊂ ker h with ℓ = ℓ₀∘h
        let (hx, hy, hz) = (cb.h_a(&x), cb.h_a(&y), cb.h_a(&z));
        if !(hx.is_zero() || hy.is_zero() || hz.is_zero()) {
            let (a, b, c) = (a - 1, b - 1, cz - 1);
            let l = |p: &GElement| functional(cb, &cb.h_a(p));
            let t1 = l(&m(&cb.h_a(&m(&hx, &hy)), &hz));
            let t2 = l(&m(&cb.h_a(&m(&hy, &hz)), &hx));
            let t3 = l(&m(&cb.h_a(&m(&hz, &hx)), &hy));
            let s2 = if (a * (b + c)).rem_euclid(2) == 1 { -1 } else { 1 };
            let s3 = if (c * (a + b)).rem_euclid(2) == 1 { -1 } else { 1 };
            let mut tot = t1;
            tot.add_scaled(&t2, &GR::int(s2));
            tot.add_scaled(&t3, &GR::int(s3));
            r.kinematic_jacobi.record(tot.is_zero());
        }
    }

    // inclusion of V and the transposed coderivation identity on C-letters
    let cf = cb.cofree();
    let g = random_cletter(cb, &mut rng, 1);
    let gl = cb.letter(&g);
    let d_expect = lin(cb, cf.apply_transpose(CoOp::Delta, &g));
    let h_expect = lin(cb, cf.apply_transpose(CoOp::H, &g));
    r.inclusion.record(cb.d_a(&gl) == d_expect && cb.h_a(&gl) == h_expect);
    let nw = rng.gen_range(1..=max_letters);
    let w = random_cletter(cb, &mut rng, nw);
    r.coderivation_square.record(coderivation_square(cb, &w).is_empty());
    r
}

fn lin(cb: &Cobar, terms: Vec<(GWord, GR)>) -> GElement {
    let mut out = GElement::zero();
    for (u, c) in terms {
        out.add_scaled(&cb.letter(&u), &c);
    }
    out
}

/// `δ¹δ¹ c + β^T δ¹ c + δ¹ β^T c` on a C-letter, the transpose of
/// `½[D, D] = −[β, D]`; returns the nonzero terms.
pub fn coderivation_square(cb: &Cobar, w: &GWord) -> Vec<(GWord, GR)> {
    let cf = cb.cofree();
    let mut acc: std::collections::BTreeMap<GWord, GR> = Default::default();
    let mut push = |terms: Vec<(GWord, GR)>, s: &GR| {
        for (u, c) in terms {
            let e = acc.entry(u).or_insert_with(GR::zero);
            *e += &(&c * s);
        }
    };
    for (a, ca) in cf.apply_transpose(CoOp::Delta, w) {
        push(cf.apply_transpose(CoOp::Delta, &a), &ca);
        push(cf.apply_transpose(CoOp::Beta, &a), &ca);
    }
    for (a, ca) in cf.apply_transpose(CoOp::Beta, w) {
        push(cf.apply_transpose(CoOp::Delta, &a), &ca);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Runs `samples` independent seeded samples in parallel.
pub fn run_checks(cb: &Cobar, max_letters: usize, samples: usize, seed: u64) -> Result<CobarReport> {
    let budget = cb.cofree().max_letters();
    if max_letters > budget {
        return Err(YmError::LetterBudgetExceeded { letters: max_letters, budget });
    }
    let parts: Vec<CobarReport> =
        (0..samples as u64).into_par_iter().map(|i| sample(cb, max_letters, seed.wrapping_mul(1_000_003).wrapping_add(i))).collect();
    let mut r = CobarReport { max_letters, samples, seed, ..Default::default() };
    for p in &parts {
        r.merge(p);
    }
    Ok(r)
}
