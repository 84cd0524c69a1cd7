//! The 8×3 matrix `W` over `A` of degree one, and the Λ-submodule model of
//! the Case 2 module.

use serde::{Deserialize, Serialize};

use super::modules::{case_module, case_two_relations, degree, self_dual_relations, wedge, Case, FreeVec, Mono};
use crate::exact_arith::dense::{rank, zeros};
use crate::exact_arith::GR;

/// Entry `c·e^μ` or zero.
pub type WEntry = Option<(GR, usize)>;
pub type WMatrix = Vec<[WEntry; 3]>;

pub fn w_matrix() -> WMatrix {
    let e = |mu: usize| Some((GR::one(), mu));
    let ie = |mu: usize| Some((GR::i(), mu));
    let me = |mu: usize| Some((-GR::one(), mu));
    vec![
        [e(0), ie(3), None],
        [e(3), ie(0), None],
        [None, e(0), ie(1)],
        [None, e(1), ie(0)],
        [ie(2), None, e(0)],
        [ie(0), None, e(2)],
        [e(1), me(2), None],
        [None, e(2), me(3)],
    ]
}

/// Rank of `W : (M⁰)³ → (M¹)^8` for the module `M` of the given case.
pub fn w_rank(case: Case, w: &WMatrix) -> (usize, usize, usize) {
    let m = case_module(case, 1);
    let gens: Vec<usize> = (0..m.dim()).filter(|b| m.deg(*b) == 0).collect();
    let ones: Vec<usize> = (0..m.dim()).filter(|b| m.deg(*b) == 1).collect();
    let pos = |b: usize| ones.iter().position(|x| *x == b).expect("degree one");
    let (domain, codomain) = (3 * gens.len(), w.len() * ones.len());
    let mut mat = zeros(codomain, domain);
    for (r, row) in w.iter().enumerate() {
        for (i, entry) in row.iter().enumerate() {
            let Some((c, mu)) = entry else { continue };
            for (s, g) in gens.iter().enumerate() {
                for (b, x) in m.act(*mu, *g) {
                    mat[r * ones.len() + pos(b)][i * gens.len() + s] += &(c * &x);
                }
            }
        }
    }
    (rank(&mat), domain, codomain)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WVerdict {
    pub case1: (usize, usize, usize),
    pub case2: (usize, usize, usize),
}

impl WVerdict {
    /// Full column rank in both cases.
    pub fn injective(&self) -> bool {
        self.case1.0 == self.case1.1 && self.case2.0 == self.case2.1
    }
}

pub fn w_injectivity() -> WVerdict {
    let w = w_matrix();
    WVerdict { case1: w_rank(Case::One, &w), case2: w_rank(Case::Two, &w) }
}

/// The anti-self-dual elements `e⁰e¹ + ie²e³`, `e⁰e² + ie³e¹`,
/// `e⁰e³ + ie¹e²` of `Λ`.
pub fn anti_self_dual() -> [Vec<(Mono, GR)>; 3] {
    self_dual_relations(0).map(|rel| rel.into_iter().map(|(m, c)| (m, if c == GR::one() { c } else { -c })).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleModel {
    /// Graded dimensions of the Λ-submodule generated by the three elements,
    /// from degree 2.
    pub dims: Vec<usize>,
    /// The self-dual relations annihilate the generators.
    pub is_a_module: bool,
    /// The eight relations vanish with `g_s` sent to the `s`-th element.
    pub relations_vanish: bool,
}

fn mul(a: Mono, v: &[(Mono, GR)]) -> Vec<(Mono, GR)> {
    v.iter().filter_map(|(m, c)| wedge(a, *m).map(|(p, neg)| (p, if neg { -c } else { c.clone() }))).collect()
}

fn to_dense(v: &[(Mono, GR)]) -> Vec<GR> {
    let mut out = vec![GR::zero(); 16];
    for (m, c) in v {
        out[*m as usize] += c;
    }
    out
}

/// The Case 2 module realized inside `Λ` (one block) after a shift by two.
pub fn submodule_model() -> SubmoduleModel {
    let s = anti_self_dual();
    let mut dims = Vec::new();
    for d in 2..=4 {
        let rows: Vec<Vec<GR>> = (0..16u32)
            .filter(|m| degree(*m) == d - 2)
            .flat_map(|m| s.iter().map(move |g| to_dense(&mul(m, g))))
            .collect();
        dims.push(rank(&rows));
    }
    let is_a_module = self_dual_relations(0).iter().all(|e| {
        s.iter().all(|g| {
            let mut acc = vec![GR::zero(); 16];
            for (m, c) in e {
                for (x, y) in acc.iter_mut().zip(to_dense(&mul(*m, g))) {
                    *x += &(c * &y);
                }
            }
            acc.iter().all(GR::is_zero)
        })
    });
    let image = |rel: &FreeVec| -> Vec<GR> {
        let mut acc = vec![GR::zero(); 16];
        for (m, g, c) in rel {
            for (x, y) in acc.iter_mut().zip(to_dense(&mul(*m, &s[*g]))) {
                *x += &(c * &y);
            }
        }
        acc
    };
    let relations_vanish = case_two_relations(0).iter().all(|r| image(r).iter().all(GR::is_zero));
    SubmoduleModel { dims, is_a_module, relations_vanish }
}
