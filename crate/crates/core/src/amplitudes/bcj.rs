//! The BCJ relations: identities of `S` as polynomials in symbolic leg
//! momenta, chain-map and exactness properties of `S_n`, and vanishing of
//! `p∘S_n∘i^{⊗n}` on one-particle states.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::amplitude::{on_homology, ExternalLeg};
use super::kinematics::{null_configuration, random_offshell};
use super::trees::{is_zero, plane_wave, square, wave_scale, wave_sum, Machine};
use crate::bv_infinity::Wave;
use crate::error::Result;
use crate::exact_arith::GR;
use crate::ym_complex::{basis_vec, StructureTables, DIM};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentityCount {
    pub checked: usize,
    /// Basis tuples where the identity fails.
    pub failures: Vec<Vec<usize>>,
}

impl IdentityCount {
    fn from(checked: usize, failures: Vec<Vec<usize>>) -> Self {
        Self { checked, failures }
    }

    pub fn pass(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

/// Lemma-level properties of `S` on all basis tuples, with symbolic
/// momenta on every leg.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SIdentities {
    pub degree: IdentityCount,
    pub symmetry: IdentityCount,
    pub chain: IdentityCount,
    pub four_first: IdentityCount,
    pub four_second: IdentityCount,
}

impl SIdentities {
    pub fn all_pass(&self) -> bool {
        [&self.degree, &self.symmetry, &self.chain, &self.four_first, &self.four_second].iter().all(|c| c.pass())
    }
}

fn sg(e: i32) -> GR {
    GR::one().signed(e as i64)
}

fn combo(terms: Vec<(GR, Wave)>) -> Wave {
    let mut it = terms.into_iter();
    let (c, w) = it.next().expect("nonempty");
    it.fold(wave_scale(&w, &c), |acc, (c, w)| wave_sum(&acc, &wave_scale(&w, &c)))
}

fn in_range(t: &StructureTables, degs: &[usize], shift: i32) -> bool {
    (0..=3).contains(&(degs.iter().map(|i| t.unshifted(*i)).sum::<i32>() + shift))
}

fn collect<F: Fn(&[usize]) -> Option<bool> + Sync>(arity: u32, f: F) -> IdentityCount {
    let res: Vec<(Vec<usize>, bool)> = (0..DIM.pow(arity))
        .into_par_iter()
        .filter_map(|n| {
            let tuple: Vec<usize> = (0..arity).rev().map(|p| (n / DIM.pow(p)) % DIM).collect();
            f(&tuple).map(|ok| (tuple, ok))
        })
        .collect();
    let checked = res.len();
    IdentityCount::from(checked, res.into_iter().filter(|r| !r.1).map(|r| r.0).collect())
}

/// Degree −1, graded symmetry, the chain identity and both four-argument
/// identities of `S`, each on every basis tuple whose output degree is in
/// range. Leg `j` carries the symbolic momentum `(q_{j0}, …, q_{j3})`.
pub fn s_identities(m: &Machine<'_>) -> SIdentities {
    let t = m.t;
    let leg = |i: usize, j: usize| Wave::leg(t, i, j);
    let degree = collect(3, |a| {
        let s = m.s(&leg(a[0], 0), &leg(a[1], 1), &leg(a[2], 2));
        Some((0..DIM).all(|o| s.v[o].is_zero() || t.unshifted(o) == s.deg))
    });
    let symmetry = collect(3, |a| {
        if !in_range(t, a, -1) {
            return None;
        }
        let (x, y, z) = (leg(a[0], 0), leg(a[1], 1), leg(a[2], 2));
        let s = m.s(&x, &y, &z);
        let s1 = wave_scale(&m.s(&y, &x, &z), &sg(x.deg * y.deg));
        let s2 = wave_scale(&m.s(&x, &z, &y), &sg(y.deg * z.deg));
        Some(s.v == s1.v && s.v == s2.v)
    });
    let chain = collect(3, |a| {
        if !in_range(t, a, 0) {
            return None;
        }
        let (x, y, z) = (leg(a[0], 0), leg(a[1], 1), leg(a[2], 2));
        let lhs = m.d(&m.s(&x, &y, &z));
        let rhs = combo(vec![
            (GR::int(-1), m.s(&m.d(&x), &y, &z)),
            (-sg(x.deg), m.s(&x, &m.d(&y), &z)),
            (-sg(x.deg + y.deg), m.s(&x, &y, &m.d(&z))),
        ]);
        Some(lhs.v == rhs.v)
    });
    let four_first = collect(4, |a| {
        if !in_range(t, a, -1) {
            return None;
        }
        let (x, y, u, v) = (leg(a[0], 0), leg(a[1], 1), leg(a[2], 2), leg(a[3], 3));
        let (dx, dy) = (x.deg, y.deg);
        let r = combo(vec![
            (sg(dx), x.mul(t, &m.s(&y, &u, &v))),
            (-sg(dx * dy + dy), y.mul(t, &m.s(&x, &u, &v))),
            (GR::one(), m.s(&x, &y.mul(t, &u), &v)),
            (-sg(dx * dy), m.s(&y, &x.mul(t, &u), &v)),
        ]);
        Some(is_zero(&r))
    });
    let four_second = collect(4, |a| {
        if !in_range(t, a, -1) {
            return None;
        }
        let (x, y, u, v) = (leg(a[0], 0), leg(a[1], 1), leg(a[2], 2), leg(a[3], 3));
        let r = combo(vec![
            (GR::one(), m.s(&x.mul(t, &y), &u, &v)),
            (GR::int(-1), m.s(&x, &y.mul(t, &u), &v)),
            (GR::one(), m.s(&x, &y, &u.mul(t, &v))),
            (-sg(x.deg * (y.deg + u.deg + v.deg)), m.s(&y, &u, &v.mul(t, &x))),
        ]);
        Some(is_zero(&r))
    });
    SIdentities { degree, symmetry, chain, four_first, four_second }
}

/// Random basis inputs at generic off-shell momenta.
pub fn offshell_inputs(t: &StructureTables, n: usize, rng: &mut ChaCha8Rng) -> Vec<Wave> {
    use rand::Rng;
    loop {
        let ks: Vec<_> = (0..n).map(|_| random_offshell(rng)).collect();
        if !super::kinematics::is_generic(&ks) {
            continue;
        }
        return ks
            .iter()
            .map(|k| {
                let i = rng.gen_range(0..DIM);
                let v: Vec<GR> = basis_vec(i).iter().map(|p| p.as_constant().unwrap()).collect();
                plane_wave(&v, k, t.unshifted(i))
            })
            .collect();
    }
}

/// `dS_n − Σ ± S_n(…dx_i…)` and `S_n − dT_n − Σ ± T_n(…dx_i…)` on `samples`
/// random inputs; returns the numbers of failures.
pub fn chain_and_exactness(m: &Machine<'_>, n: usize, samples: usize, seed: u64) -> Result<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut chain, mut exact) = (0, 0);
    for _ in 0..samples {
        let xs = offshell_inputs(m.t, n, &mut rng);
        let s = m.s_n(&xs)?;
        let rhs = m.d_inputs(&xs, |ys| m.s_n(ys))?.expect("n ≥ 1");
        chain += usize::from(m.d(&s).v != rhs.v);
        if m.theta3.is_some() {
            let tn = m.t_n(&xs)?;
            let r = wave_sum(&m.d(&tn), &m.d_inputs(&xs, |ys| m.t_n(ys))?.expect("n ≥ 1"));
            exact += usize::from(s.v != r.v);
        }
    }
    Ok((chain, exact))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingVerdict {
    pub n: usize,
    pub momenta: Vec<crate::ym_complex::Momentum4>,
    /// Leg classes (basis indices) tried.
    pub combinations: usize,
    pub nonzero: Vec<Vec<usize>>,
}

impl VanishingVerdict {
    pub fn pass(&self) -> bool {
        self.combinations > 0 && self.nonzero.is_empty()
    }
}

/// `p∘S_n∘i^{⊗n}` on all basis classes of `H¹` at `configs` random null
/// configurations.
pub fn homology_vanishing(m: &Machine<'_>, n: usize, configs: usize, seed: u64) -> Result<Vec<VanishingVerdict>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..configs {
        let ks = null_configuration(n, &mut rng)?;
        let mut nonzero = Vec::new();
        let combos = 1usize << n;
        for c in 0..combos {
            let js: Vec<usize> = (0..n).map(|i| (c >> i) & 1).collect();
            let legs: Vec<ExternalLeg> = ks.iter().zip(&js).map(|(k, j)| ExternalLeg::basis(k.clone(), *j)).collect();
            let v = on_homology(m, &legs, |xs| m.s_n(xs))?;
            if v.iter().any(|x| !x.is_zero()) {
                nonzero.push(js);
            }
        }
        out.push(VanishingVerdict { n, momenta: ks, combinations: combos, nonzero });
    }
    Ok(out)
}

/// `dh + hd = k²` and `h² = 0` on every basis element at a symbolic
/// momentum; equivalently `dh♯ + h♯d = 1` and `h♯² = 0` off shell.
pub fn propagator_identities(m: &Machine<'_>) -> bool {
    (0..DIM).all(|i| {
        let x = Wave::leg(m.t, i, 0);
        let k2 = square(&x.k);
        let dh = m.d(&x.h(m.h));
        let hd = m.d(&x).h(m.h);
        let lhs = wave_sum(&dh, &hd);
        let boxed = x.with(x.v.iter().map(|c| c * &k2).collect(), x.deg);
        lhs.v == boxed.v && is_zero(&x.h(m.h).h(m.h))
    })
}
