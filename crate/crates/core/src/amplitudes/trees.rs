//! Cubic trees of products, propagators and the ternary maps `S`, `θ₃`.
//!
//! Signs: attach to input `i` a formal parameter `t_i` of parity
//! `1 + |x_i|`, so every `t_i x_i` is odd. On such inputs all trees enter
//! with coefficient `+1`; the signs for general inputs are the Koszul signs
//! of pulling `t₁⋯t_n` to the front, normalized by the sign of pulling them
//! through the whole composite. This reproduces `E(x,y) = h♯(xy)`, `S₃ = S`,
//! the explicit `S₄`, `T₄`, and makes the tree sums d-closed.

use crate::bv_infinity::{s_map, PrimalMap, Wave};
use crate::error::{Result, YmError};
use crate::exact_arith::{PolyKP, GR};
use crate::ym_complex::fiber::{fiber_add, fiber_scale, fiber_zero};
use crate::ym_complex::{HSolution, StructureTables};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf(usize),
    Mul(Box<Node>, Box<Node>),
    /// `h♯ = h/k²`.
    Sharp(Box<Node>),
    S(Box<[Node; 3]>),
    Theta(Box<[Node; 3]>),
}

impl Node {
    fn mul(a: Node, b: Node) -> Node {
        Node::Mul(Box::new(a), Box::new(b))
    }

    fn sharp(a: Node) -> Node {
        Node::Sharp(Box::new(a))
    }

    /// Number of `h♯` in the tree.
    pub fn propagators(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Mul(a, b) => a.propagators() + b.propagators(),
            Node::Sharp(a) => 1 + a.propagators(),
            Node::S(c) | Node::Theta(c) => c.iter().map(Node::propagators).sum(),
        }
    }
}

/// Planar combs `E(x_{l₀}, …)`: `h♯` on internal and output lines.
pub fn e_trees(leaves: &[usize]) -> Vec<Node> {
    if leaves.len() == 1 {
        return vec![Node::Leaf(leaves[0])];
    }
    p_trees(leaves).into_iter().map(Node::sharp).collect()
}

/// As [`e_trees`] with the output line undecorated.
pub fn p_trees(leaves: &[usize]) -> Vec<Node> {
    let mut out = Vec::new();
    for m in 1..leaves.len() {
        for a in e_trees(&leaves[..m]) {
            for b in e_trees(&leaves[m..]) {
                out.push(Node::mul(a.clone(), b));
            }
        }
    }
    out
}

/// `Σ F(E(B₁), E(B₂), E(B₃))` over the decompositions of `ℤ/n` into three
/// nonempty contiguous blocks, with `F` = `S` or `θ₃`.
pub fn ternary_trees(n: usize, theta: bool) -> Vec<Node> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let block = |lo: usize, hi: usize| -> Vec<usize> { (lo..hi).map(|i| i % n).collect() };
                let (b1, b2, b3) = (block(a, b), block(b, c), block(c, a + n));
                for x in e_trees(&b1) {
                    for y in e_trees(&b2) {
                        for z in e_trees(&b3) {
                            let args = Box::new([x.clone(), y.clone(), z]);
                            out.push(if theta { Node::Theta(args) } else { Node::S(args) });
                        }
                    }
                }
            }
        }
    }
    out
}

fn parity(e: i32) -> i32 {
    e.rem_euclid(2)
}

struct Signed {
    w: Wave,
    /// Parity of the collected formal parameters.
    tau: i32,
    sign: i32,
    leaves: Vec<usize>,
}

/// Evaluation context: tables, a homotopy and optionally θ₃.
pub struct Machine<'a> {
    pub t: &'a StructureTables,
    pub h: &'a HSolution,
    pub theta3: Option<&'a PrimalMap>,
}

pub fn wave_sum(a: &Wave, b: &Wave) -> Wave {
    a.with(fiber_add(&a.v, &b.v), a.deg)
}

pub fn wave_scale(a: &Wave, c: &GR) -> Wave {
    a.with(fiber_scale(&a.v, &PolyKP::constant(c.clone())), a.deg)
}

fn total_k(ws: &[&Wave]) -> [PolyKP; 4] {
    std::array::from_fn(|mu| ws.iter().fold(PolyKP::zero(), |acc, w| &acc + &w.k[mu]))
}

/// `−k₀² + k₁² + k₂² + k₃²`.
pub fn square(k: &[PolyKP; 4]) -> PolyKP {
    let mut s = -&(&k[0] * &k[0]);
    for mu in 1..4 {
        s = &s + &(&k[mu] * &k[mu]);
    }
    s
}

impl<'a> Machine<'a> {
    pub fn new(t: &'a StructureTables, h: &'a HSolution) -> Self {
        Self { t, h, theta3: None }
    }

    pub fn with_theta3(mut self, th: &'a PrimalMap) -> Self {
        self.theta3 = Some(th);
        self
    }

    /// `h♯ = h/k²` at a numeric momentum.
    pub fn propagator(&self, x: &Wave) -> Result<Wave> {
        let k2 = square(&x.k)
            .as_constant()
            .ok_or_else(|| YmError::Invalid("the propagator needs a numeric momentum".into()))?;
        if k2.is_zero() {
            return Err(YmError::OnShellPole);
        }
        let hx = x.h(self.h);
        Ok(hx.with(fiber_scale(&hx.v, &PolyKP::constant(k2.inv())), hx.deg))
    }

    pub fn s(&self, x: &Wave, y: &Wave, z: &Wave) -> Wave {
        Wave { v: s_map(self.t, self.h, x, y, z), k: total_k(&[x, y, z]), deg: x.deg + y.deg + z.deg - 1 }
    }

    pub fn theta(&self, x: &Wave, y: &Wave, z: &Wave) -> Result<Wave> {
        let th = self.theta3.ok_or_else(|| YmError::Invalid("θ₃ not supplied".into()))?;
        Ok(Wave { v: th.eval(&[&x.v, &y.v, &z.v]), k: total_k(&[x, y, z]), deg: x.deg + y.deg + z.deg - 1 })
    }

    fn eval_signed(&self, node: &Node, xs: &[Wave]) -> Result<Signed> {
        Ok(match node {
            Node::Leaf(i) => Signed { w: xs[*i].clone(), tau: parity(1 + xs[*i].deg), sign: 0, leaves: vec![*i] },
            Node::Mul(a, b) => {
                let (a, b) = (self.eval_signed(a, xs)?, self.eval_signed(b, xs)?);
                Signed {
                    w: a.w.mul(self.t, &b.w),
                    tau: parity(a.tau + b.tau),
                    sign: a.sign + b.sign + a.w.deg * b.tau,
                    leaves: [a.leaves, b.leaves].concat(),
                }
            }
            Node::Sharp(a) => {
                let a = self.eval_signed(a, xs)?;
                Signed { w: self.propagator(&a.w)?, tau: a.tau, sign: a.sign + a.tau, leaves: a.leaves }
            }
            Node::S(c) | Node::Theta(c) => {
                let [a, b, z] = [&c[0], &c[1], &c[2]].map(|n| self.eval_signed(n, xs));
                let (a, b, z) = (a?, b?, z?);
                let w = match node {
                    Node::S(_) => self.s(&a.w, &b.w, &z.w),
                    _ => self.theta(&a.w, &b.w, &z.w)?,
                };
                let sign =
                    a.sign + b.sign + z.sign + a.tau + b.tau * (1 + a.w.deg) + z.tau * (1 + a.w.deg + b.w.deg);
                Signed { w, tau: parity(a.tau + b.tau + z.tau), sign, leaves: [a.leaves, b.leaves, z.leaves].concat() }
            }
        })
    }

    /// One tree on `xs`, including the sign of restoring the order `t₁⋯t_n`.
    pub fn eval(&self, node: &Node, xs: &[Wave]) -> Result<Wave> {
        let s = self.eval_signed(node, xs)?;
        let mut sign = s.sign;
        // undo pulling the parameters through a map of degree |F| and the
        // preceding inputs, so that the leftmost tree enters with sign +1
        let f = s.w.deg - xs.iter().map(|x| x.deg).sum::<i32>();
        let mut before = 0;
        for x in xs {
            sign += parity(1 + x.deg) * (f + before);
            before += x.deg;
        }
        for i in 0..s.leaves.len() {
            for j in i + 1..s.leaves.len() {
                if s.leaves[i] > s.leaves[j] {
                    sign += parity(1 + xs[s.leaves[i]].deg) * parity(1 + xs[s.leaves[j]].deg);
                }
            }
        }
        Ok(wave_scale(&s.w, &GR::one().signed(sign as i64)))
    }

    pub fn eval_sum(&self, nodes: &[Node], xs: &[Wave]) -> Result<Wave> {
        let mut acc: Option<Wave> = None;
        for n in nodes {
            let w = self.eval(n, xs)?;
            acc = Some(match acc {
                None => w,
                Some(a) => wave_sum(&a, &w),
            });
        }
        acc.ok_or(YmError::Arity(0))
    }

    pub fn e(&self, xs: &[Wave]) -> Result<Wave> {
        self.eval_sum(&e_trees(&(0..xs.len()).collect::<Vec<_>>()), xs)
    }

    /// The tree sum feeding the output line: `Σ E(x₁…x_m) E(x_{m+1}…x_n)`.
    pub fn p(&self, xs: &[Wave]) -> Result<Wave> {
        self.eval_sum(&p_trees(&(0..xs.len()).collect::<Vec<_>>()), xs)
    }

    pub fn s_n(&self, xs: &[Wave]) -> Result<Wave> {
        self.eval_sum(&ternary_trees(xs.len(), false), xs)
    }

    pub fn t_n(&self, xs: &[Wave]) -> Result<Wave> {
        self.eval_sum(&ternary_trees(xs.len(), true), xs)
    }

    /// `S₄` written out term by term.
    pub fn s4(&self, x: &Wave, y: &Wave, u: &Wave, v: &Wave) -> Result<Wave> {
        self.four(x, y, u, v, |a, b, c| Ok(self.s(a, b, c)))
    }

    /// `T₄`: as `S₄` with `θ₃` in place of `S`.
    pub fn t4(&self, x: &Wave, y: &Wave, u: &Wave, v: &Wave) -> Result<Wave> {
        self.four(x, y, u, v, |a, b, c| self.theta(a, b, c))
    }

    fn four(
        &self,
        x: &Wave,
        y: &Wave,
        u: &Wave,
        v: &Wave,
        f: impl Fn(&Wave, &Wave, &Wave) -> Result<Wave>,
    ) -> Result<Wave> {
        let e = |a: &Wave, b: &Wave| self.propagator(&a.mul(self.t, b));
        let sg = |n: i32| GR::one().signed(n as i64);
        let (dx, dy, du, dv) = (x.deg, y.deg, u.deg, v.deg);
        let mut acc = f(&e(x, y)?, u, v)?;
        acc = wave_sum(&acc, &wave_scale(&f(x, &e(y, u)?, v)?, &-sg(dx)));
        acc = wave_sum(&acc, &wave_scale(&f(x, y, &e(u, v)?)?, &sg(dx + dy)));
        let s4 = -sg(dy + du + dx * (dy + du + dv));
        Ok(wave_sum(&acc, &wave_scale(&f(y, u, &e(v, x)?)?, &s4)))
    }

    pub fn d(&self, x: &Wave) -> Wave {
        x.d(self.t)
    }

    /// `F(x₁…dx_i…x_n)` summed with `(−1)^{n + x₁ + … + x_{i−1}}`, the
    /// right-hand side of the chain-map identity for `S_n`, `T_n`.
    pub fn d_inputs(&self, xs: &[Wave], f: impl Fn(&[Wave]) -> Result<Wave>) -> Result<Option<Wave>> {
        let n = xs.len() as i32;
        let mut acc: Option<Wave> = None;
        let mut before = 0;
        for i in 0..xs.len() {
            let mut ys = xs.to_vec();
            ys[i] = self.d(&xs[i]);
            let w = wave_scale(&f(&ys)?, &GR::one().signed((n + before) as i64));
            acc = Some(match acc {
                None => w,
                Some(a) => wave_sum(&a, &w),
            });
            before += xs[i].deg;
        }
        Ok(acc)
    }
}

/// `x` as a fiber-valued plane wave with numeric coefficients.
pub fn plane_wave(v: &[GR], k: &crate::ym_complex::Momentum4, deg: i32) -> Wave {
    Wave { v: v.iter().cloned().map(PolyKP::constant).collect(), k: k.as_poly(), deg }
}

/// Numeric coefficients of `w`; `None` if any is symbolic.
pub fn numeric(w: &Wave) -> Option<Vec<GR>> {
    w.v.iter().map(PolyKP::as_constant).collect()
}

pub fn is_zero(w: &Wave) -> bool {
    w.v.iter().all(PolyKP::is_zero)
}

pub fn zero_like(w: &Wave, deg: i32) -> Wave {
    w.with(fiber_zero(), deg)
}
