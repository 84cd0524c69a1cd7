//! Operators of second order on the free Gerstenhaber algebra: derivations
//! given by their letter action, plus the bracket-type (α) and
//! box/number-type (β, γ) anomalies.

use std::cell::RefCell;
use std::collections::HashMap;

use smallvec::SmallVec;

use super::atoms::{Alphabet, AtomId, Letter, COMPOUND};
use super::element::{FreeGerst, GElement};
use crate::exact_arith::{PolyKP, GR};

/// Action on single letters, extended by the rules of [`OpSpec`].
pub trait LetterAction<A: Alphabet> {
    fn image(&self, alg: &FreeGerst<A>, l: Letter) -> GElement;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulAnomaly {
    None,
    /// `g(a, b) = [a, b]`.
    Bracket,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieAnomaly {
    None,
    /// `h(a, b) = Q(ab) − (Qa)b − a(Qb)`.
    Box,
    /// `h(a, b) = n_a n_b ab`.
    Number,
}

/// `s(ab) = (−1)^a g(a,b) + s(a)b + (−1)^{s·a} a s(b)`,
/// `s([a,b]) = (−1)^a h(a,b) + [s a, b] + (−1)^{s(a−1)} [a, s b]`.
pub struct OpSpec<'a, A: Alphabet> {
    pub deg: i32,
    pub letters: Option<&'a dyn LetterAction<A>>,
    pub mul: MulAnomaly,
    pub lie: LieAnomaly,
}

impl<A: Alphabet> Clone for OpSpec<'_, A> {
    fn clone(&self) -> Self {
        Self { deg: self.deg, letters: self.letters, mul: self.mul, lie: self.lie }
    }
}

impl<'a, A: Alphabet> OpSpec<'a, A> {
    pub fn alpha() -> Self {
        Self { deg: -1, letters: None, mul: MulAnomaly::Bracket, lie: LieAnomaly::None }
    }

    pub fn beta() -> Self {
        Self { deg: 1, letters: None, mul: MulAnomaly::None, lie: LieAnomaly::Box }
    }

    pub fn gamma() -> Self {
        Self { deg: 1, letters: None, mul: MulAnomaly::None, lie: LieAnomaly::Number }
    }

    pub fn derivation(deg: i32, letters: &'a dyn LetterAction<A>) -> Self {
        Self { deg, letters: Some(letters), mul: MulAnomaly::None, lie: LieAnomaly::None }
    }
}

fn sgn(odd: bool) -> GR {
    if odd {
        GR::int(-1)
    } else {
        GR::one()
    }
}

fn odd(x: i32) -> bool {
    x.rem_euclid(2) == 1
}

/// Evaluation context with a per-atom memo.
pub struct Evaluator<'a, A: Alphabet> {
    pub alg: &'a FreeGerst<A>,
    pub op: OpSpec<'a, A>,
    atom_cache: RefCell<HashMap<AtomId, GElement>>,
}

impl<'a, A: Alphabet> Evaluator<'a, A> {
    pub fn new(alg: &'a FreeGerst<A>, op: OpSpec<'a, A>) -> Self {
        Self { alg, op, atom_cache: RefCell::new(HashMap::new()) }
    }

    fn letter_image(&self, l: Letter) -> GElement {
        match self.op.letters {
            Some(f) => f.image(self.alg, l),
            None => GElement::zero(),
        }
    }

    fn lie_anomaly(&self, a: &GElement, b: &GElement) -> GElement {
        match self.op.lie {
            LieAnomaly::None => GElement::zero(),
            LieAnomaly::Box => self.alg.box_anomaly(a, b),
            LieAnomaly::Number => {
                let na = self.alg.max_ndeg(a) as i64;
                let nb = self.alg.max_ndeg(b) as i64;
                self.alg.mul(a, b).scale(&GR::int(na * nb))
            }
        }
    }

    /// (R, s R) for the right-normed bracket of `order`.
    fn eval_right_normed(&self, order: &[Letter]) -> (GElement, GElement) {
        let x = order[0];
        let xe = GElement::atom(x);
        let sx = self.letter_image(x);
        if order.len() == 1 {
            return (xe, sx);
        }
        let (r, sr) = self.eval_right_normed(&order[1..]);
        let dx = self.alg.alphabet().deg(x);
        let mut out = self.lie_anomaly(&xe, &r).scale(&sgn(odd(dx)));
        out.add_assign(&self.alg.bracket(&sx, &r));
        out.add_scaled(&self.alg.bracket(&xe, &sr), &sgn(odd(self.op.deg * (dx - 1))));
        (self.alg.bracket(&xe, &r), out)
    }

    pub fn eval_atom(&self, a: AtomId) -> GElement {
        if a < COMPOUND {
            return self.letter_image(a);
        }
        if let Some(v) = self.atom_cache.borrow().get(&a) {
            return v.clone();
        }
        let order = self.alg.atoms.order(a);
        let (_, v) = self.eval_right_normed(&order);
        self.atom_cache.borrow_mut().insert(a, v.clone());
        v
    }

    pub fn eval_word(&self, w: &[AtomId]) -> GElement {
        let mut out = GElement::zero();
        let mut before = 0;
        for i in 0..w.len() {
            let s = sgn(odd(self.op.deg * before));
            let sa = self.eval_atom(w[i]);
            if !sa.is_zero() {
                out.add_assign(&self.alg.sandwich(&w[..i], &sa, &w[i + 1..], &s));
            }
            let da = self.alg.atoms.deg(w[i]);
            if self.op.mul == MulAnomaly::Bracket && i + 1 < w.len() {
                let g = self.alg.bracket_words(&w[i..i + 1], &w[i + 1..]);
                let s2 = sgn(odd(self.op.deg * before + da));
                out.add_assign(&self.alg.sandwich(&w[..i], &g, &[], &s2));
            }
            before += da;
        }
        out
    }

    pub fn eval(&self, x: &GElement) -> GElement {
        let mut out = GElement::zero();
        for (w, c) in &x.terms {
            let v = self.eval_word(w);
            out.add_poly_scaled(&v, c);
        }
        out
    }
}

/// Evaluates `op` on `x` with a fresh memo.
pub fn eval_operator<A: Alphabet>(alg: &FreeGerst<A>, op: &OpSpec<'_, A>, x: &GElement) -> GElement {
    Evaluator::new(alg, op.clone()).eval(x)
}

/// Letter action given by a closure.
pub struct FnAction<F>(pub F);

impl<A: Alphabet, F: Fn(&FreeGerst<A>, Letter) -> GElement> LetterAction<A> for FnAction<F> {
    fn image(&self, alg: &FreeGerst<A>, l: Letter) -> GElement {
        (self.0)(alg, l)
    }
}

/// The curvature-type derivation `K`: `g ↦ Q g` on letters.
pub struct BoxAction;

impl<A: Alphabet> LetterAction<A> for BoxAction {
    fn image(&self, alg: &FreeGerst<A>, l: Letter) -> GElement {
        alg.apply_box(&GElement::atom(l))
    }
}

/// Scalar multiple `c · x` for a polynomial coefficient.
pub fn scale_poly(x: &GElement, c: &PolyKP) -> GElement {
    let mut out = GElement::zero();
    out.add_poly_scaled(x, c);
    out
}

/// Atom sequence helper.
pub fn seq(a: &[AtomId]) -> SmallVec<[AtomId; 8]> {
    SmallVec::from_slice(a)
}
