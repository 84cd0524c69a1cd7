//! The A/B/C families of the BV∞^□ axioms, evaluated on generators.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::theta::{bracket, convolve, q_of, BvData};
use crate::exact_arith::GR;
use crate::gerstenhaber::{big_gamma, commutator, curvature, valg, VDerivation, VOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomKind {
    A,
    B,
    C,
    /// `Γ B_k = 0`, the reduced form.
    GammaB,
    /// `Γ ν_k = θ_k`.
    GammaNu,
    /// `b_k = −[d, θ_k] + q_k = 0`, the equation θ_k is solved from.
    Solve,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub kind: AxiomKind,
    pub arity: usize,
    pub component: i32,
    pub pass: bool,
    /// First generator (0-based) with a nonzero image.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub nmax: usize,
    pub verdicts: Vec<AxiomVerdict>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomVerdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }
}

fn verdict(kind: AxiomKind, arity: usize, component: i32, x: &VDerivation) -> AxiomVerdict {
    let witness = x.images.iter().position(|g| !g.is_zero());
    AxiomVerdict { kind, arity, component, pass: witness.is_none(), witness }
}

fn half() -> GR {
    GR::ratio(1, 2)
}

fn op_bracket(x: VOp<'_>, y: &VDerivation) -> VDerivation {
    commutator(valg(), &x, &VOp::Der(y))
}

/// The axiom combination `(kind, k, comp)` as a derivation; zero when it holds.
pub fn axiom(data: &BvData, kind: AxiomKind, k: usize, comp: i32) -> VDerivation {
    let (d, h) = (&data.d, &data.h);
    let (th, nu, mu) = (&data.theta, &data.nu, &data.mu);
    match (kind, k, comp) {
        (AxiomKind::A, 1, 2) => bracket(d, d).scale(&half()),
        (AxiomKind::A, 1, 0) => bracket(d, h).add(&curvature(valg()).scale(&GR::int(-1))),
        (AxiomKind::A, 1, -2) => bracket(h, h).scale(&half()),
        (AxiomKind::A, _, 2) => op_bracket(VOp::Beta, &nu[k])
            .add(&bracket(d, &mu[k]))
            .add(&convolve(k, mu, mu, 2, k as i32 - 1).scale(&half())),
        (AxiomKind::A, _, 0) => bracket(h, &mu[k]),
        (AxiomKind::B, _, 2) => bracket(d, &nu[k]).add(&convolve(k, mu, nu, 2, k as i32 - 1)),
        (AxiomKind::B, _, 0) => op_bracket(VOp::Alpha, &mu[k]).add(&bracket(h, &nu[k])),
        (AxiomKind::C, _, 2) => convolve(k, nu, nu, 2, k as i32 - 1).scale(&half()),
        (AxiomKind::C, _, 0) => op_bracket(VOp::Alpha, &nu[k]),
        (AxiomKind::GammaB, _, 2) => big_gamma(valg(), &axiom(data, AxiomKind::B, k, 2)),
        (AxiomKind::GammaB, _, 0) => big_gamma(valg(), &axiom(data, AxiomKind::B, k, 0)),
        (AxiomKind::GammaNu, _, _) => big_gamma(valg(), &nu[k]).add(&th[k].scale(&GR::int(-1))),
        (AxiomKind::Solve, _, _) => bracket(d, &th[k]).scale(&GR::int(-1)).add(&q_of(k, mu, nu)),
        _ => panic!("no axiom {kind:?} at arity {k}, component {comp}"),
    }
}

/// Every checked `(kind, arity, component)` through `nmax`.
pub fn axiom_list(nmax: usize) -> Vec<(AxiomKind, usize, i32)> {
    let mut v = vec![(AxiomKind::A, 1, 2), (AxiomKind::A, 1, 0), (AxiomKind::A, 1, -2)];
    for k in 2..=nmax {
        for kind in [AxiomKind::A, AxiomKind::B, AxiomKind::C, AxiomKind::GammaB] {
            v.push((kind, k, 2));
            v.push((kind, k, 0));
        }
        v.push((AxiomKind::GammaNu, k, 0));
        if k >= 3 {
            v.push((AxiomKind::Solve, k, 2));
        }
    }
    // C at arity nmax+1 needs only ν up to nmax
    v.push((AxiomKind::C, nmax + 1, 2));
    v
}

pub fn verify_all(data: &BvData) -> AxiomReport {
    let nmax = data.nmax();
    let verdicts = axiom_list(nmax)
        .into_par_iter()
        .map(|(kind, k, comp)| verdict(kind, k, comp, &axiom(data, kind, k, comp)))
        .collect();
    AxiomReport { nmax, verdicts }
}
