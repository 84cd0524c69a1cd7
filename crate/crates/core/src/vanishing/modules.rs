//! Graded modules over the exterior algebra `Λ_n` on `e^μ_j` (μ = 0..3,
//! j = 1..n), presented as quotients of free modules by homogeneous
//! relations.
//!
//! Generator `e^μ_j` is bit `4(j−1) + μ` of a monomial mask; monomials list
//! their generators in ascending bit order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::exact_arith::dense::{rref, zeros};
use crate::exact_arith::GR;

pub type Mono = u32;

/// A free-module element: `Σ c · m g_s` as `(m, s, c)`.
pub type FreeVec = Vec<(Mono, usize, GR)>;

pub fn gen(mu: usize, j: usize) -> Mono {
    1 << (4 * j + mu)
}

pub fn degree(m: Mono) -> usize {
    m.count_ones() as usize
}

/// `a ∧ b` as a signed monomial, or `None` if they share a generator.
pub fn wedge(a: Mono, b: Mono) -> Option<(Mono, bool)> {
    if a & b != 0 {
        return None;
    }
    // one transposition per pair (x ∈ a, y ∈ b) with x > y
    let mut swaps = 0;
    let mut rest = a;
    while rest != 0 {
        let x = rest.trailing_zeros();
        swaps += (b & ((1u32 << x) - 1)).count_ones();
        rest &= rest - 1;
    }
    Some((a | b, swaps % 2 == 1))
}

/// `f : U_n → U`, `e^μ_j ↦ e^μ`, on generator bits.
pub fn f_bit(bit: usize) -> usize {
    bit % 4
}

/// The self-dual relations `e⁰e¹ − ie²e³`, `e⁰e² − ie³e¹`, `e⁰e³ − ie¹e²`
/// in block `j`, as linear combinations of monomials.
pub fn self_dual_relations(j: usize) -> [Vec<(Mono, GR)>; 3] {
    let e = |mu| gen(mu, j);
    let pair = |a: usize, b: usize, c: &GR| -> (Mono, GR) {
        let (m, neg) = wedge(e(a), e(b)).expect("distinct");
        (m, if neg { -c } else { c.clone() })
    };
    let mi = -GR::i();
    [
        vec![pair(0, 1, &GR::one()), pair(2, 3, &mi)],
        vec![pair(0, 2, &GR::one()), pair(3, 1, &mi)],
        vec![pair(0, 3, &GR::one()), pair(1, 2, &mi)],
    ]
}

/// A finite-dimensional graded quotient `Λ_n^{⊕r} / N` with a chosen
/// monomial basis and normal forms for every free basis element.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub n: usize,
    pub rank: usize,
    /// Basis elements `m g_s` of the quotient.
    pub basis: Vec<(Mono, usize)>,
    pub index: HashMap<(Mono, usize), usize>,
    /// Normal form of each free basis element `m g_s` (absent if zero).
    normal: HashMap<(Mono, usize), Vec<(usize, GR)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hilbert(pub Vec<usize>);

impl GradedModule {
    /// `Λ_n^{⊕r}` modulo the left submodule generated by `relations`.
    pub fn quotient(n: usize, rank: usize, relations: &[FreeVec]) -> Self {
        let bits = 4 * n;
        let all: Vec<Mono> = (0..(1u32 << bits)).collect();
        let mut basis = Vec::new();
        let mut normal = HashMap::new();
        for d in 0..=bits {
            let cols: Vec<(Mono, usize)> =
                all.iter().filter(|m| degree(**m) == d).flat_map(|m| (0..rank).map(move |s| (*m, s))).collect();
            let col_of: HashMap<(Mono, usize), usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            let mut rows: Mat = Vec::new();
            for rel in relations {
                let dr = rel.first().map_or(0, |t| degree(t.0));
                if dr > d {
                    continue;
                }
                for m in all.iter().filter(|m| degree(**m) == d - dr) {
                    let mut row = vec![GR::zero(); cols.len()];
                    let mut any = false;
                    for (a, s, c) in rel {
                        if let Some((p, neg)) = wedge(*m, *a) {
                            let x = &mut row[col_of[&(p, *s)]];
                            *x += &(if neg { -c } else { c.clone() });
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
            let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows) };
            let start = basis.len();
            let free: Vec<usize> = (0..cols.len()).filter(|c| !pivots.contains(c)).collect();
            let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(i, c)| (*c, start + i)).collect();
            for c in &free {
                basis.push(cols[*c]);
                normal.insert(cols[*c], vec![(pos[c], GR::one())]);
            }
            // a pivot row reads e_p + Σ r_q e_q ∈ N
            for (r, p) in pivots.iter().enumerate() {
                let nf: Vec<(usize, GR)> =
                    free.iter().filter(|q| !rows[r][**q].is_zero()).map(|q| (pos[q], -&rows[r][*q])).collect();
                if !nf.is_empty() {
                    normal.insert(cols[*p], nf);
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        Self { n, rank, basis, index, normal }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn deg(&self, b: usize) -> usize {
        degree(self.basis[b].0)
    }

    pub fn hilbert(&self) -> Hilbert {
        let mut h = vec![0; 4 * self.n + 1];
        for b in 0..self.dim() {
            h[self.deg(b)] += 1;
        }
        while h.len() > 1 && h.last() == Some(&0) {
            h.pop();
        }
        Hilbert(h)
    }

    pub fn normal_form(&self, m: Mono, s: usize) -> &[(usize, GR)] {
        self.normal.get(&(m, s)).map_or(&[], Vec::as_slice)
    }

    /// `e_bit · basis[b]` in basis coordinates.
    pub fn act(&self, bit: usize, b: usize) -> Vec<(usize, GR)> {
        let (m, s) = self.basis[b];
        match wedge(1 << bit, m) {
            None => Vec::new(),
            Some((p, neg)) => {
                self.normal_form(p, s).iter().map(|(i, c)| (*i, if neg { -c } else { c.clone() })).collect()
            }
        }
    }

    /// Reduces a free-module vector to basis coordinates.
    pub fn reduce(&self, v: &FreeVec) -> Vec<GR> {
        let mut out = vec![GR::zero(); self.dim()];
        for (m, s, c) in v {
            for (i, x) in self.normal_form(*m, *s) {
                out[*i] += &(c * x);
            }
        }
        out
    }
}

type Mat = crate::exact_arith::dense::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// `M = Ag`, free of rank one.
    One,
    /// `M = (Ag₁ ⊕ Ag₂ ⊕ Ag₃)/S`.
    Two,
}

impl Case {
    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(Case::One),
            2 => Some(Case::Two),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
        }
    }
}

/// `Λ_n` itself.
pub fn exterior(n: usize) -> GradedModule {
    GradedModule::quotient(n, 1, &[])
}

fn block_relations(n: usize, rank: usize) -> Vec<FreeVec> {
    let mut out = Vec::new();
    for j in 0..n {
        for rel in self_dual_relations(j) {
            for s in 0..rank {
                out.push(rel.iter().map(|(m, c)| (*m, s, c.clone())).collect());
            }
        }
    }
    out
}

/// The eight relations of `S` on `g₁, g₂, g₃` (here `g₀, g₁, g₂`), written
/// with the generators of block `j`.
pub fn case_two_relations(j: usize) -> Vec<FreeVec> {
    let e = |mu| gen(mu, j);
    let one = GR::one;
    let i = GR::i;
    vec![
        vec![(e(1), 0, one()), (e(2), 1, -one())],
        vec![(e(1), 0, one()), (e(3), 2, -one())],
        vec![(e(1), 1, one()), (e(2), 0, one())],
        vec![(e(2), 2, one()), (e(3), 1, one())],
        vec![(e(3), 0, one()), (e(1), 2, one())],
        vec![(e(0), 0, one()), (e(2), 2, i())],
        vec![(e(0), 1, one()), (e(3), 0, i())],
        vec![(e(0), 2, one()), (e(1), 1, i())],
    ]
}

/// `A_n = Λ_n/J` as a module over itself.
pub fn a_n(n: usize) -> GradedModule {
    GradedModule::quotient(n, 1, &block_relations(n, 1))
}

/// `M` (for `n = 1`) or `M_n` in the given case.
pub fn case_module(case: Case, n: usize) -> GradedModule {
    match case {
        Case::One => a_n(n),
        Case::Two => {
            let mut rels = block_relations(n, 3);
            rels.extend(case_two_relations(0));
            GradedModule::quotient(n, 3, &rels)
        }
    }
}

/// Coefficients of a product of polynomials given by coefficient lists.
pub fn series_product(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The stated Hilbert series of `M_n`.
pub fn expected_hilbert(case: Case, n: usize) -> Vec<usize> {
    let mut h = match case {
        Case::One => vec![1, 4, 3],
        Case::Two => vec![3, 4, 1],
    };
    for _ in 1..n {
        h = series_product(&h, &[1, 4, 3]);
    }
    h
}

/// Dense matrix of `e_bit` acting on a module, `out[row][col]`.
pub fn action_matrix(m: &GradedModule, bit: usize) -> Mat {
    let mut a = zeros(m.dim(), m.dim());
    for b in 0..m.dim() {
        for (i, c) in m.act(bit, b) {
            a[i][b] = c;
        }
    }
    a
}
