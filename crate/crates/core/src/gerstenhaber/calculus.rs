//! Seeded sampling of the operator identities on `G V*`: nilpotency of α, β,
//! γ; `αγ + γα = ½n(n−1)` on ndeg-n words; `αβ + βα + K = □`; Γ as a
//! contraction of `d_α = [α, −]`; Γ commuting with ndeg-0 derivations.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::element::GElement;
use super::vstar::{big_gamma, commutator, curvature, dgen, gen, valg, VDerivation, VOp};
use crate::exact_arith::{PolyKP, GR};
use crate::ym_complex::DIM;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.failed += usize::from(!ok);
    }

    fn merge(self, o: Tally) -> Tally {
        Tally { checked: self.checked + o.checked, failed: self.failed + o.failed }
    }

    pub fn pass(&self, at_least: usize) -> bool {
        self.failed == 0 && self.checked >= at_least
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalculusReport {
    pub samples: usize,
    pub seed: u64,
    /// α² = β² = γ² = 0, one count per operator and sample.
    pub squares: Tally,
    /// `αγ + γα = ½n(n−1)` at ndeg n = 1..4.
    pub kappa_scaling: [Tally; 4],
    /// `αβ + βα + K = □`.
    pub box_identity: Tally,
    /// `[α, Γδ] + Γ[α, δ] = δ` for derivations of positive ndeg.
    pub gamma_contraction: Tally,
    /// `Γ[δ, ε] = (−1)^δ [δ, Γε]` for ndeg-0 derivations δ.
    pub gamma_equivariance: Tally,
}

impl CalculusReport {
    pub fn all_pass(&self) -> bool {
        let n = self.samples;
        self.squares.pass(3 * n)
            && self.kappa_scaling.iter().all(|t| t.pass(n))
            && self.box_identity.pass(n)
            && self.gamma_contraction.pass(n)
            && self.gamma_equivariance.pass(n)
    }

    fn merge(mut self, o: CalculusReport) -> CalculusReport {
        self.squares = self.squares.merge(o.squares);
        for (a, b) in self.kappa_scaling.iter_mut().zip(o.kappa_scaling) {
            *a = a.merge(b);
        }
        self.box_identity = self.box_identity.merge(o.box_identity);
        self.gamma_contraction = self.gamma_contraction.merge(o.gamma_contraction);
        self.gamma_equivariance = self.gamma_equivariance.merge(o.gamma_equivariance);
        self
    }
}

/// A generator, decorated by one momentum component 30% of the time.
pub fn random_generator(rng: &mut ChaCha8Rng) -> GElement {
    let b = rng.gen_range(0..DIM);
    let mut k = [0; 4];
    if rng.gen_bool(0.3) {
        k[rng.gen_range(0..4)] = 1;
    }
    dgen(b, k)
}

pub fn random_coefficient(rng: &mut ChaCha8Rng) -> GR {
    [GR::one(), GR::int(-1), GR::int(2), GR::i(), GR::ratio(1, 2)][rng.gen_range(0..5)].clone()
}

/// A nonzero scaled product of generators and two-generator brackets with
/// total ndeg exactly `n`.
pub fn random_word(rng: &mut ChaCha8Rng, n: u32) -> GElement {
    let alg = valg();
    loop {
        let mut x = GElement::word(Default::default(), PolyKP::int(1));
        let mut left = n;
        while left > 0 {
            let item = if left >= 2 && rng.gen_bool(0.4) {
                left -= 2;
                alg.bracket(&random_generator(rng), &random_generator(rng))
            } else {
                left -= 1;
                random_generator(rng)
            };
            x = alg.mul(&x, &item);
        }
        if !x.is_zero() {
            return x.scale(&random_coefficient(rng));
        }
    }
}

/// A derivation of ndeg `n` and degree `shift` whose generator images are
/// short sums drawn from a pool of random undecorated words.
pub fn random_derivation(rng: &mut ChaCha8Rng, n: u32, shift: i32, pool_size: usize) -> VDerivation {
    let alg = valg();
    let mut pool: HashMap<i32, Vec<GElement>> = HashMap::new();
    for _ in 0..pool_size {
        let mut x = GElement::word(Default::default(), PolyKP::int(1));
        let mut left = n;
        while left > 0 {
            let item = if left >= 2 && rng.gen_bool(0.4) {
                left -= 2;
                alg.bracket(&gen(rng.gen_range(0..DIM)), &gen(rng.gen_range(0..DIM)))
            } else {
                left -= 1;
                gen(rng.gen_range(0..DIM))
            };
            x = alg.mul(&x, &item);
        }
        if let Some(w) = x.terms.keys().next() {
            let d = alg.word_deg(w);
            pool.entry(d).or_default().push(x.scale(&random_coefficient(rng)));
        }
    }
    let images = (0..DIM)
        .map(|b| {
            let want = alg.alphabet().deg[b] + shift;
            let mut v = GElement::zero();
            if let Some(p) = pool.get(&want) {
                for _ in 0..2 {
                    v.add_assign(&p[rng.gen_range(0..p.len())]);
                }
            }
            v
        })
        .collect();
    VDerivation::new(shift, n as i32 - 1, images)
}

fn op(o: &VOp<'_>, x: &GElement) -> GElement {
    o.apply(valg(), x)
}

fn sign(e: i32) -> GR {
    GR::one().signed(e as i64)
}

fn one_sample(seed: u64) -> CalculusReport {
    let alg = valg();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = CalculusReport::default();
    let len = rng.gen_range(1..=3);
    let x = random_word(&mut rng, len);
    for o in [VOp::Alpha, VOp::Beta, VOp::Gamma] {
        r.squares.record(op(&o, &op(&o, &x)).is_zero());
    }
    for (i, t) in r.kappa_scaling.iter_mut().enumerate() {
        let n = i as i64 + 1;
        let w = random_word(&mut rng, n as u32);
        let mut ag = op(&VOp::Alpha, &op(&VOp::Gamma, &w));
        ag.add_assign(&op(&VOp::Gamma, &op(&VOp::Alpha, &w)));
        t.record(ag == w.scale(&GR::ratio(n * (n - 1), 2)));
    }
    let mut ab = op(&VOp::Alpha, &op(&VOp::Beta, &x));
    ab.add_assign(&op(&VOp::Beta, &op(&VOp::Alpha, &x)));
    ab.add_assign(&curvature(alg).apply(alg, &x));
    r.box_identity.record(ab == alg.apply_box(&x));

    let (n, shift) = [(2, 1), (2, 2), (3, 1), (3, 2)][rng.gen_range(0..4)];
    let delta = random_derivation(&mut rng, n, shift, 24);
    let a = commutator(alg, &VOp::Alpha, &VOp::Der(&big_gamma(alg, &delta)));
    let b = big_gamma(alg, &commutator(alg, &VOp::Alpha, &VOp::Der(&delta)));
    r.gamma_contraction.record(a.add(&b).images == delta.images);

    let lshift = [1, -1][rng.gen_range(0..2)];
    let lin = random_derivation(&mut rng, 1, lshift, 24);
    let lin = VDerivation::new(lshift, 0, lin.images);
    let (en, es) = [(2, 1), (3, 1), (3, 2)][rng.gen_range(0..3)];
    let eps = random_derivation(&mut rng, en, es, 24);
    let lhs = big_gamma(alg, &commutator(alg, &VOp::Der(&lin), &VOp::Der(&eps)));
    let rhs = commutator(alg, &VOp::Der(&lin), &VOp::Der(&big_gamma(alg, &eps))).scale(&sign(lshift));
    r.gamma_equivariance.record(lhs.images == rhs.images);
    r
}

/// Runs `samples` independent seeded samples of every identity.
pub fn sample_calculus(samples: usize, seed: u64) -> CalculusReport {
    let mut r = (0..samples)
        .into_par_iter()
        .map(|i| one_sample(seed.wrapping_mul(1_000_003).wrapping_add(i as u64)))
        .reduce(CalculusReport::default, CalculusReport::merge);
    r.samples = samples;
    r.seed = seed;
    r
}
