use std::collections::HashMap;

use super::tables::{StructureTables, DIM};
use crate::error::{Result, YmError};
use crate::exact_arith::{k_sym, PolyKP, Sym, GR};

/// A momentum with exact components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Momentum4(pub [GR; 4]);

impl Momentum4 {
    pub fn ints(v: [i64; 4]) -> Self {
        Momentum4(v.map(GR::int))
    }

    /// −k₀² + k₁² + k₂² + k₃².
    pub fn square(&self) -> GR {
        let mut s = -&(&self.0[0] * &self.0[0]);
        for mu in 1..4 {
            s += &(&self.0[mu] * &self.0[mu]);
        }
        s
    }

    pub fn dot(&self, o: &Momentum4) -> GR {
        let mut s = -&(&self.0[0] * &o.0[0]);
        for mu in 1..4 {
            s += &(&self.0[mu] * &o.0[mu]);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_null(&self) -> bool {
        self.square().is_zero()
    }

    pub fn add(&self, o: &Momentum4) -> Momentum4 {
        Momentum4(std::array::from_fn(|mu| &self.0[mu] + &o.0[mu]))
    }

    pub fn neg(&self) -> Momentum4 {
        Momentum4(std::array::from_fn(|mu| -&self.0[mu]))
    }

    pub fn as_poly(&self) -> [PolyKP; 4] {
        std::array::from_fn(|mu| PolyKP::constant(self.0[mu].clone()))
    }

    /// Binding of the k-symbols to this momentum.
    pub fn bindings(&self) -> HashMap<Sym, GR> {
        (0..4).map(|mu| (k_sym(mu), self.0[mu].clone())).collect()
    }
}

/// Element of the fiber at fixed (possibly symbolic) momentum.
pub type FiberVec = Vec<PolyKP>;

pub fn basis_vec(i: usize) -> FiberVec {
    let mut v = vec![PolyKP::zero(); DIM];
    v[i] = PolyKP::int(1);
    v
}

pub fn fiber_zero() -> FiberVec {
    vec![PolyKP::zero(); DIM]
}

pub fn fiber_is_zero(v: &[PolyKP]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn fiber_add(a: &[PolyKP], b: &[PolyKP]) -> FiberVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn fiber_sub(a: &[PolyKP], b: &[PolyKP]) -> FiberVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn fiber_scale(a: &[PolyKP], c: &PolyKP) -> FiberVec {
    a.iter().map(|x| x * c).collect()
}

/// `out[o] = Σ prod(o,i,j) a[i] b[j]`.
pub fn fiber_product(t: &StructureTables, a: &[PolyKP], b: &[PolyKP]) -> FiberVec {
    let mut out = fiber_zero();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x * y;
            for (o, c) in t.product(i, j) {
                out[*o].add_scaled(&xy, c);
            }
        }
    }
    out
}

/// Matrix–vector product with the primal convention `M e_j = Σ_i M[i][j] e_i`.
pub fn apply_matrix(m: &[Vec<PolyKP>], v: &[PolyKP]) -> FiberVec {
    let mut out = fiber_zero();
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (i, row) in m.iter().enumerate() {
            if !row[j].is_zero() {
                out[i] = &out[i] + &(&row[j] * x);
            }
        }
    }
    out
}

pub fn matmul_poly(a: &[Vec<PolyKP>], b: &[Vec<PolyKP>]) -> Vec<Vec<PolyKP>> {
    let n = a.len();
    let mut out = vec![vec![PolyKP::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

/// Evaluates a matrix of polynomials in k at a numeric momentum.
pub fn eval_matrix(m: &[Vec<PolyKP>], k: &Momentum4) -> Result<Vec<Vec<GR>>> {
    let b = k.bindings();
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| x.eval(&b).ok_or_else(|| YmError::Invalid(format!("unbound symbol in {x}"))))
                .collect()
        })
        .collect()
}

/// Homogeneous component of unshifted degree `p`.
pub fn degree_part(t: &StructureTables, v: &[PolyKP], p: i32) -> FiberVec {
    v.iter()
        .enumerate()
        .map(|(i, x)| if t.unshifted(i) == p { x.clone() } else { PolyKP::zero() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::leg_sym;
    use crate::ym_complex::tables::symbolic_k;

    fn t() -> &'static StructureTables {
        StructureTables::get()
    }

    #[test]
    fn product_examples() {
        let t = t();
        let e0 = basis_vec(1);
        let e1 = basis_vec(2);
        let p = fiber_product(t, &e0, &e1);
        assert_eq!(p[5], PolyKP::constant(GR::ratio(1, 2)));
        for i in 0..DIM {
            assert_eq!(fiber_product(t, &basis_vec(0), &basis_vec(i)), basis_vec(i));
        }
        let p = fiber_product(t, &basis_vec(5), &basis_vec(8));
        assert_eq!(p[15], PolyKP::constant(GR::cint(0, 2)));
    }

    #[test]
    fn associative_and_graded_commutative() {
        let t = t();
        for a in 0..DIM {
            for b in 0..DIM {
                let ab = fiber_product(t, &basis_vec(a), &basis_vec(b));
                let ba = fiber_product(t, &basis_vec(b), &basis_vec(a));
                let s = (t.unshifted(a) * t.unshifted(b)) as i64;
                let ba_signed: FiberVec = ba.iter().map(|x| x.scale(&GR::one().signed(s))).collect();
                assert_eq!(ab, ba_signed, "commutativity {a} {b}");
                for c in 0..DIM {
                    let l = fiber_product(t, &ab, &basis_vec(c));
                    let r = fiber_product(t, &basis_vec(a), &fiber_product(t, &basis_vec(b), &basis_vec(c)));
                    assert_eq!(l, r, "associativity {a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn product_respects_gradings() {
        let t = t();
        for (o, a, b, _) in &t.prod_entries {
            assert_eq!(t.unshifted(*o), t.unshifted(*a) + t.unshifted(*b));
            assert_eq!(t.rdeg[*o], t.rdeg[*a] + t.rdeg[*b]);
        }
    }

    #[test]
    fn differential_square_zero_and_examples() {
        let t = t();
        let d = t.dmatrix(&symbolic_k());
        let dd = matmul_poly(&d, &d);
        assert!(dd.iter().all(|r| r.iter().all(|x| x.is_zero())));
        let d_one = apply_matrix(&d, &basis_vec(0));
        for mu in 0..4 {
            assert_eq!(d_one[1 + mu], PolyKP::k(mu));
        }
        assert_eq!(apply_matrix(&d, &basis_vec(8))[5], PolyKP::int(1));
        for (i, j, _, _) in &t.dmat_entries {
            assert_eq!(t.unshifted(*i), t.unshifted(*j) + 1);
        }
    }

    #[test]
    fn leibniz_symbolic() {
        let t = t();
        let p: [[PolyKP; 4]; 2] = std::array::from_fn(|l| std::array::from_fn(|mu| PolyKP::var(leg_sym(l, mu))));
        let tot: [PolyKP; 4] = std::array::from_fn(|mu| &p[0][mu] + &p[1][mu]);
        let (d1, d2, d12) = (t.dmatrix(&p[0]), t.dmatrix(&p[1]), t.dmatrix(&tot));
        for a in 0..DIM {
            for b in 0..DIM {
                let (x, y) = (basis_vec(a), basis_vec(b));
                let lhs = apply_matrix(&d12, &fiber_product(t, &x, &y));
                let s = GR::one().signed(t.unshifted(a) as i64);
                let r1 = fiber_product(t, &apply_matrix(&d1, &x), &y);
                let r2 = fiber_product(t, &x, &apply_matrix(&d2, &y));
                let rhs = fiber_add(&r1, &fiber_scale(&r2, &PolyKP::constant(s)));
                assert_eq!(lhs, rhs, "Leibniz {a} {b}");
            }
        }
    }
}
