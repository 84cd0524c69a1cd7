//! θₙ as multilinear maps on the fiber and the identities they satisfy
//! there.

use std::collections::HashMap;

use super::theta::product_terms;
use crate::exact_arith::{leg_sym, PolyKP, GR};
use crate::gerstenhaber::VDerivation;
use crate::ym_complex::fiber::{apply_matrix, fiber_add, fiber_product, fiber_scale, fiber_sub, fiber_zero};
use crate::ym_complex::{basis_vec, FiberVec, HSolution, StructureTables, DIM};

/// Momentum-independent n-ary map `e_{a₁}⊗…⊗e_{aₙ} ↦ Σ_o T e_o`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PrimalMap {
    pub arity: usize,
    pub table: HashMap<Vec<usize>, Vec<(usize, GR)>>,
}

fn odd(t: &StructureTables, i: usize) -> bool {
    t.deg[i].rem_euclid(2) == 1
}

/// Distinct orderings of `w` with their Koszul signs relative to `w`.
fn signed_orderings(t: &StructureTables, w: &[usize]) -> Vec<(Vec<usize>, bool)> {
    let mut perm: Vec<usize> = (0..w.len()).collect();
    let mut out: HashMap<Vec<usize>, bool> = HashMap::new();
    loop {
        let mut neg = false;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] && odd(t, w[perm[i]]) && odd(t, w[perm[j]]) {
                    neg = !neg;
                }
            }
        }
        out.entry(perm.iter().map(|p| w[*p]).collect()).or_insert(neg);
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out.into_iter().collect()
}

impl PrimalMap {
    /// Transpose of a derivation whose generator images are pure products:
    /// a word coefficient is spread evenly over the distinct orderings.
    pub fn from_dual(t: &StructureTables, x: &VDerivation, arity: usize) -> Self {
        let mut table: HashMap<Vec<usize>, Vec<(usize, GR)>> = HashMap::new();
        for (o, img) in x.images.iter().enumerate() {
            for (w, c) in product_terms(img) {
                assert_eq!(w.len(), arity);
                let c = c.as_constant().expect("numeric coefficient");
                let ords = signed_orderings(t, &w);
                let share = &c / &GR::int(ords.len() as i64);
                for (ord, neg) in ords {
                    let v = if neg { -&share } else { share.clone() };
                    table.entry(ord).or_default().push((o, v));
                }
            }
        }
        Self { arity, table }
    }

    pub fn on_basis(&self, args: &[usize]) -> FiberVec {
        let mut v = fiber_zero();
        if let Some(es) = self.table.get(args) {
            for (o, c) in es {
                v[*o] = &v[*o] + &PolyKP::constant(c.clone());
            }
        }
        v
    }

    /// Multilinear extension to fiber vectors.
    pub fn eval(&self, args: &[&[PolyKP]]) -> FiberVec {
        assert_eq!(args.len(), self.arity);
        let mut out = fiber_zero();
        for (idx, es) in &self.table {
            let mut c = PolyKP::int(1);
            for (a, i) in args.iter().zip(idx) {
                if a[*i].is_zero() {
                    c = PolyKP::zero();
                    break;
                }
                c = &c * &a[*i];
            }
            if c.is_zero() {
                continue;
            }
            for (o, x) in es {
                out[*o] = &out[*o] + &c.scale(x);
            }
        }
        out
    }
}

/// θ₃ normalized so that `S = dθ₃ ∓ θ₃d` holds: 3/2 times the even spread
/// of the dual θ₃.
pub fn theta3_primal(t: &StructureTables, theta3: &VDerivation) -> PrimalMap {
    let mut p = PrimalMap::from_dual(t, theta3, 3);
    let s = GR::ratio(3, 2);
    for es in p.table.values_mut() {
        for e in es.iter_mut() {
            e.1 = &e.1 * &s;
        }
    }
    p
}

/// Homogeneous fiber element at a momentum.
#[derive(Clone, Debug)]
pub struct Wave {
    pub v: FiberVec,
    pub k: [PolyKP; 4],
    /// Degree in the dgca.
    pub deg: i32,
}

impl Wave {
    pub fn basis(t: &StructureTables, i: usize, k: [PolyKP; 4]) -> Self {
        Self { v: basis_vec(i), k, deg: t.unshifted(i) }
    }

    /// `e_i` at the symbolic momentum of leg `j`.
    pub fn leg(t: &StructureTables, i: usize, j: usize) -> Self {
        Self::basis(t, i, std::array::from_fn(|mu| PolyKP::var(leg_sym(j, mu))))
    }

    pub fn mul(&self, t: &StructureTables, o: &Wave) -> Wave {
        Wave {
            v: fiber_product(t, &self.v, &o.v),
            k: std::array::from_fn(|mu| &self.k[mu] + &o.k[mu]),
            deg: self.deg + o.deg,
        }
    }

    pub fn d(&self, t: &StructureTables) -> Wave {
        Wave { v: apply_matrix(&t.dmatrix(&self.k), &self.v), k: self.k.clone(), deg: self.deg + 1 }
    }

    pub fn h(&self, h: &HSolution) -> Wave {
        Wave { v: apply_matrix(&h.at(&self.k), &self.v), k: self.k.clone(), deg: self.deg - 1 }
    }

    pub fn with(&self, v: FiberVec, deg: i32) -> Wave {
        Wave { v, k: self.k.clone(), deg }
    }
}

pub(crate) fn sgn(e: i32) -> PolyKP {
    PolyKP::int(if e.rem_euclid(2) == 1 { -1 } else { 1 })
}

/// The failure of `h` to be second order on three homogeneous waves.
pub fn s_map(t: &StructureTables, h: &HSolution, x: &Wave, y: &Wave, z: &Wave) -> FiberVec {
    let (a, b) = (x.deg, y.deg);
    let xy = x.mul(t, y);
    let yz = y.mul(t, z);
    let xz = x.mul(t, z);
    let terms: [(PolyKP, FiberVec); 7] = [
        (sgn(0), xy.mul(t, z).h(h).v),
        (sgn(1), xy.h(h).mul(t, z).v),
        (sgn(a + 1), x.mul(t, &yz.h(h)).v),
        (sgn((a + 1) * b + 1), y.mul(t, &xz.h(h)).v),
        (sgn(0), x.h(h).mul(t, &yz).v),
        (sgn(a), x.mul(t, &y.h(h)).mul(t, z).v),
        (sgn(a + b), xy.mul(t, &z.h(h)).v),
    ];
    let mut out = fiber_zero();
    for (s, v) in terms {
        out = fiber_add(&out, &fiber_scale(&v, &s));
    }
    out
}

/// `dθ₃(x,y,z) − θ₃(dx,y,z) − (−1)^x θ₃(x,dy,z) − (−1)^{x+y} θ₃(x,y,dz)`.
pub fn d_theta3(t: &StructureTables, th: &PrimalMap, x: &Wave, y: &Wave, z: &Wave) -> FiberVec {
    let tot: [PolyKP; 4] = std::array::from_fn(|mu| &(&x.k[mu] + &y.k[mu]) + &z.k[mu]);
    let v = th.eval(&[&x.v, &y.v, &z.v]);
    let mut out = apply_matrix(&t.dmatrix(&tot), &v);
    out = fiber_sub(&out, &th.eval(&[&x.d(t).v, &y.v, &z.v]));
    out = fiber_sub(&out, &fiber_scale(&th.eval(&[&x.v, &y.d(t).v, &z.v]), &sgn(x.deg)));
    fiber_sub(&out, &fiber_scale(&th.eval(&[&x.v, &y.v, &z.d(t).v]), &sgn(x.deg + y.deg)))
}

/// The two four-argument identities of θ₃ on basis vectors.
pub fn identity4(t: &StructureTables, th: &PrimalMap, x: usize, y: usize, u: usize, v: usize) -> [FiberVec; 2] {
    let e = basis_vec;
    let p = |a: &[PolyKP], b: &[PolyKP]| fiber_product(t, a, b);
    let (dx, dy, du, dv) = (t.unshifted(x), t.unshifted(y), t.unshifted(u), t.unshifted(v));
    let mut first = p(&e(x), &th.eval(&[&e(y), &e(u), &e(v)]));
    first = fiber_sub(&first, &fiber_scale(&p(&e(y), &th.eval(&[&e(x), &e(u), &e(v)])), &sgn(dx * dy)));
    first = fiber_add(&first, &th.eval(&[&e(x), &p(&e(y), &e(u)), &e(v)]));
    first = fiber_sub(&first, &fiber_scale(&th.eval(&[&e(y), &p(&e(x), &e(u)), &e(v)]), &sgn(dx * dy)));
    let mut second = th.eval(&[&p(&e(x), &e(y)), &e(u), &e(v)]);
    second = fiber_sub(&second, &th.eval(&[&e(x), &p(&e(y), &e(u)), &e(v)]));
    second = fiber_add(&second, &th.eval(&[&e(x), &e(y), &p(&e(u), &e(v))]));
    second = fiber_sub(&second, &fiber_scale(&th.eval(&[&e(y), &e(u), &p(&e(v), &e(x))]), &sgn(dx * (dy + du + dv))));
    [first, second]
}

/// Graded symmetry `θ(…, a, b, …) = (−1)^{ab} θ(…, b, a, …)` on all basis tuples.
pub fn is_graded_symmetric(t: &StructureTables, th: &PrimalMap) -> bool {
    th.table.keys().all(|args| {
        (0..args.len() - 1).all(|i| {
            let mut sw = args.clone();
            sw.swap(i, i + 1);
            let s = sgn(t.unshifted(args[i]) * t.unshifted(args[i + 1]));
            th.on_basis(args) == fiber_scale(&th.on_basis(&sw), &s)
        })
    })
}

/// All generator triples `(a,b,c)` where Eq. `S = dθ₃ ∓ θ₃d` fails, with legs 0,1,2.
pub fn exactness_failures(t: &StructureTables, h: &HSolution, th: &PrimalMap) -> Vec<(usize, usize, usize)> {
    use rayon::prelude::*;
    (0..DIM * DIM * DIM)
        .into_par_iter()
        .filter_map(|n| {
            let (a, b, c) = (n / (DIM * DIM), (n / DIM) % DIM, n % DIM);
            // S has degree −1; both sides vanish outside the fiber's degree range
            if !(0..=3).contains(&(t.unshifted(a) + t.unshifted(b) + t.unshifted(c) - 1)) {
                return None;
            }
            let (x, y, z) = (Wave::leg(t, a, 0), Wave::leg(t, b, 1), Wave::leg(t, c, 2));
            let s = s_map(t, h, &x, &y, &z);
            let r = d_theta3(t, th, &x, &y, &z);
            (s != r).then_some((a, b, c))
        })
        .collect()
}

/// Generator quadruples violating either four-argument identity.
pub fn identity4_failures(t: &StructureTables, th: &PrimalMap) -> Vec<[usize; 4]> {
    use rayon::prelude::*;
    (0..DIM.pow(4))
        .into_par_iter()
        .filter_map(|n| {
            let q = [n / DIM.pow(3), (n / DIM.pow(2)) % DIM, (n / DIM) % DIM, n % DIM];
            if !(0..=3).contains(&(q.iter().map(|i| t.unshifted(*i)).sum::<i32>() - 2)) {
                return None;
            }
            let [a, b] = identity4(t, th, q[0], q[1], q[2], q[3]);
            (!(a.iter().all(|x| x.is_zero()) && b.iter().all(|x| x.is_zero()))).then_some(q)
        })
        .collect()
}
