//! The operations θₙ on `G V*`: θ₂ from the product, θₙ (n ≥ 3) from an
//! ansatz fixed by a linear solve.

use std::collections::HashMap;

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::error::{Result, YmError};
use crate::exact_arith::{param_sym, solve_affine, LinearSystem, PolyKP, Sym, GR};
use crate::gerstenhaber::{big_gamma, commutator, dgen, gen, valg, GElement, VDerivation, VOp};
use crate::ym_complex::{HSolution, PolyMat, StructureTables, DIM};

/// Dual of a primal matrix linear in k: `x*_j ↦ Σ_i M[j][i](∂) x*_i`.
pub fn dual_of_matrix(m: &PolyMat, deg: i32) -> VDerivation {
    let images = (0..DIM)
        .map(|j| {
            let mut v = GElement::zero();
            for (i, entry) in m[j].iter().enumerate() {
                for (mono, c) in entry.terms() {
                    let mut kexp = [0u32; 4];
                    for mu in 0..4 {
                        kexp[mu] = mono.exp(mu as Sym);
                    }
                    assert_eq!(mono.degree(), kexp.iter().sum::<u32>(), "matrix must depend on k only");
                    v.add_scaled(&dgen(i, kexp), c);
                }
            }
            v
        })
        .collect();
    VDerivation::new(deg, 0, images)
}

/// The differential on `G V*`.
pub fn d_star(t: &StructureTables) -> VDerivation {
    dual_of_matrix(&t.dmatrix(&crate::ym_complex::tables::symbolic_k()), 1)
}

/// The homotopy on `G V*`.
pub fn h_star(h: &HSolution) -> VDerivation {
    dual_of_matrix(&h.matrix, -1)
}

/// `x*_o ↦ Σ prod(o,a,b) x*_a x*_b`.
pub fn theta2(t: &StructureTables) -> VDerivation {
    let alg = valg();
    let mut images = vec![GElement::zero(); DIM];
    for (o, a, b, c) in &t.prod_entries {
        images[*o].add_scaled(&alg.mul(&gen(*a), &gen(*b)), c);
    }
    VDerivation::new(2, 1, images)
}

/// Admissible ansatz tuples for target `o` at arity `n`: non-decreasing,
/// no repeated odd letter, `Σ deg + 2 = deg o`, `Σ rdeg = rdeg o`.
pub fn ansatz_words(t: &StructureTables, o: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(t: &StructureTables, o: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            let deg: i32 = cur.iter().map(|i| t.deg[*i]).sum();
            let rdeg: i32 = cur.iter().map(|i| t.rdeg[*i]).sum();
            if deg + 2 == t.deg[o] && rdeg == t.rdeg[o] {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..DIM {
            if cur.last() == Some(&i) && t.deg[i].rem_euclid(2) == 1 {
                continue;
            }
            cur.push(i);
            rec(t, o, n, i, cur, out);
            cur.pop();
        }
    }
    rec(t, o, n, 0, &mut cur, &mut out);
    out
}

/// θₙ with one fresh parameter per (target, word), numbered from `first`.
pub fn theta_ansatz(t: &StructureTables, n: usize, first: usize) -> (VDerivation, Vec<Sym>) {
    let alg = valg();
    let mut params = Vec::new();
    let images = (0..DIM)
        .map(|o| {
            let mut v = GElement::zero();
            for w in ansatz_words(t, o, n) {
                let mut x = gen(w[0]);
                for i in &w[1..] {
                    x = alg.mul(&x, &gen(*i));
                }
                let (word, c) = x.terms.into_iter().next().expect("admissible words are nonzero");
                let p = param_sym(first + params.len());
                params.push(p);
                v.add_term(word, &(&c * &PolyKP::var(p)));
            }
            v
        })
        .collect();
    (VDerivation::new(2, n as i32 - 1, images), params)
}

/// Commutator of two derivations.
pub fn bracket(x: &VDerivation, y: &VDerivation) -> VDerivation {
    commutator(valg(), &VOp::Der(x), &VOp::Der(y))
}

/// `ν = d_α θ = [α, θ]`.
pub fn nu_of(theta: &VDerivation) -> VDerivation {
    commutator(valg(), &VOp::Alpha, &VOp::Der(theta))
}

/// `μ = −Γ[h, ν]`.
pub fn mu_of(h: &VDerivation, nu: &VDerivation) -> VDerivation {
    big_gamma(valg(), &bracket(h, nu)).scale(&GR::int(-1))
}

/// Σ_{n=2}^{k−1} [xₖ₊₁₋ₙ, yₙ] over arity-indexed tables (index = arity).
pub fn convolve(k: usize, x: &[VDerivation], y: &[VDerivation], deg: i32, ndeg: i32) -> VDerivation {
    let parts: Vec<VDerivation> = (2..k).into_par_iter().map(|n| bracket(&x[k + 1 - n], &y[n])).collect();
    let mut acc = VDerivation::zero(deg, ndeg);
    for p in &parts {
        acc = acc.add(p);
    }
    acc
}

/// Result of the linear solve at one arity.
#[derive(Clone, Debug)]
pub struct ThetaSolve {
    pub arity: usize,
    pub theta: VDerivation,
    pub unknowns: usize,
    pub equations: usize,
    /// Parameters left undetermined; nonempty means the solve is not unique.
    pub free: Vec<Sym>,
}

/// All operations through a given arity, indexed by arity (entries 0 and 1
/// are placeholders).
#[derive(Clone, Debug)]
pub struct BvData {
    pub d: VDerivation,
    pub h: VDerivation,
    pub theta: Vec<VDerivation>,
    pub nu: Vec<VDerivation>,
    pub mu: Vec<VDerivation>,
    pub solves: Vec<ThetaSolve>,
}

impl BvData {
    pub fn nmax(&self) -> usize {
        self.theta.len() - 1
    }
}

/// `q_k = Γ Σ_{n=2}^{k−1} [μ_{k+1−n}, ν_n]`.
pub fn q_of(k: usize, mu: &[VDerivation], nu: &[VDerivation]) -> VDerivation {
    let c = convolve(k, mu, nu, 2, k as i32 - 1);
    big_gamma(valg(), &c)
}

fn coefficient_equations(x: &VDerivation) -> Vec<PolyKP> {
    x.images.iter().flat_map(|g| g.coefficients().cloned()).collect()
}

/// Solves `b_k = −[d, θ_k] + q_k = 0` for the ansatz parameters.
pub fn solve_theta(t: &StructureTables, data: &BvData, k: usize) -> Result<ThetaSolve> {
    assert_eq!(data.nmax() + 1, k, "arities must be solved in order");
    let (ansatz, params) = theta_ansatz(t, k, 0);
    let q = q_of(k, &data.mu, &data.nu);
    let b = bracket(&data.d, &ansatz).scale(&GR::int(-1)).add(&q);
    let mut sys = LinearSystem::new(params.clone());
    for e in coefficient_equations(&b) {
        sys.push(e);
    }
    let equations = sys.equations.len();
    let sol = solve_affine(&sys).map_err(|e| match e {
        YmError::Inconsistent(m) => YmError::Inconsistent(format!("theta_{k}: {m}")),
        e => e,
    })?;
    let mut bind = sol.bindings();
    for f in &sol.free {
        bind.insert(*f, PolyKP::zero());
    }
    let theta = ansatz.map_coeffs(|c| c.substitute_poly(&bind));
    Ok(ThetaSolve { arity: k, theta, unknowns: params.len(), equations, free: sol.free })
}

/// Solves θ₃, …, θ_nmax and derives ν, μ at each arity.
pub fn build(t: &StructureTables, h: &HSolution, nmax: usize) -> Result<BvData> {
    let d = d_star(t);
    let hs = h_star(h);
    let z = VDerivation::zero(0, 0);
    let th2 = theta2(t);
    let nu2 = nu_of(&th2);
    let mu2 = mu_of(&hs, &nu2);
    let mut data = BvData {
        d,
        h: hs,
        theta: vec![z.clone(), z.clone(), th2],
        nu: vec![z.clone(), z.clone(), nu2],
        mu: vec![z.clone(), z, mu2],
        solves: Vec::new(),
    };
    for k in 3..=nmax {
        let s = solve_theta(t, &data, k)?;
        let nu = nu_of(&s.theta);
        let mu = mu_of(&data.h, &nu);
        data.theta.push(s.theta.clone());
        data.nu.push(nu);
        data.mu.push(mu);
        data.solves.push(s);
    }
    Ok(data)
}

/// Word of a pure product as sorted basis indices with its coefficient.
pub fn product_terms(x: &GElement) -> Vec<(Vec<usize>, PolyKP)> {
    let alg = valg();
    x.terms
        .iter()
        .map(|(w, c)| {
            let idx: SmallVec<[usize; 6]> = w
                .iter()
                .map(|a| {
                    assert!(alg.atoms.ndeg(*a) == 1, "not a pure product");
                    crate::gerstenhaber::DecoratedGenerator::decode(*a).basis
                })
                .collect();
            (idx.to_vec(), c.clone())
        })
        .collect()
}

/// Number of ansatz parameters per arity, for reporting.
pub fn ansatz_size(t: &StructureTables, n: usize) -> HashMap<usize, usize> {
    (0..DIM).map(|o| (o, ansatz_words(t, o, n).len())).collect()
}
