//! `A`: the free Gerstenhaber algebra on `C[−2]`, with `d_A` and `h_A`.

use crate::error::{Result, YmError};
use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use super::coalgebra::{CoOp, Cofree};
use crate::exact_arith::GR;
use crate::gerstenhaber::{
    Alphabet, Evaluator, FreeGerst, GElement, GWord, Letter, LetterAction, LieAnomaly, MulAnomaly, OpSpec,
};

/// Interned C-letters; ids are A-letters.
pub struct CAlphabet {
    pub cofree: Arc<Cofree>,
    words: RwLock<(Vec<GWord>, HashMap<GWord, Letter>)>,
    partials: RwLock<HashMap<(usize, Letter), Vec<(Letter, GR)>>>,
}

impl CAlphabet {
    pub fn new(cofree: Arc<Cofree>) -> Self {
        Self { cofree, words: RwLock::new((Vec::new(), HashMap::new())), partials: RwLock::new(HashMap::new()) }
    }

    pub fn intern(&self, w: &GWord) -> Letter {
        if let Some(l) = self.words.read().1.get(w) {
            return *l;
        }
        let mut st = self.words.write();
        if let Some(l) = st.1.get(w) {
            return *l;
        }
        let l = st.0.len() as Letter;
        st.0.push(w.clone());
        st.1.insert(w.clone(), l);
        l
    }

    pub fn word(&self, l: Letter) -> GWord {
        self.words.read().0[l as usize].clone()
    }

    /// Degree of a C-letter in `A`: its degree in `C` plus two.
    fn a_deg(&self, w: &GWord) -> i32 {
        self.cofree.co_deg(w) + 2
    }
}

impl Alphabet for CAlphabet {
    fn deg(&self, l: Letter) -> i32 {
        self.a_deg(&self.word(l))
    }

    fn ndeg(&self, l: Letter) -> u32 {
        self.cofree.letter_count(&self.word(l)) as u32
    }

    /// Transpose of `∂_μ` on `G V*`: lowers decorations.
    fn partial(&self, mu: usize, l: Letter) -> Vec<(Letter, GR)> {
        if let Some(v) = self.partials.read().get(&(mu, l)) {
            return v.clone();
        }
        let v: Vec<(Letter, GR)> = self
            .cofree
            .apply_transpose(CoOp::Partial(mu), &self.word(l))
            .into_iter()
            .map(|(u, c)| (self.intern(&u), c))
            .collect();
        self.partials.write().insert((mu, l), v.clone());
        v
    }

    fn letter_name(&self, l: Letter) -> String {
        format!("{{{}}}", self.cofree.alg().word_sexpr(&self.word(l)))
    }
}

pub type AAlg = FreeGerst<CAlphabet>;

/// The cobar algebra with its two operators.
pub struct Cobar {
    pub alg: AAlg,
    d_cache: RwLock<HashMap<Letter, GElement>>,
    h_cache: RwLock<HashMap<Letter, GElement>>,
}

struct DAction<'a>(&'a Cobar);
struct HAction<'a>(&'a Cobar);

impl LetterAction<CAlphabet> for DAction<'_> {
    fn image(&self, _: &AAlg, l: Letter) -> GElement {
        self.0.d_letter(l)
    }
}

impl LetterAction<CAlphabet> for HAction<'_> {
    fn image(&self, _: &AAlg, l: Letter) -> GElement {
        self.0.h_letter(l)
    }
}

fn sgn(e: i32) -> GR {
    GR::one().signed(e as i64)
}

impl Cobar {
    pub fn new(cofree: Arc<Cofree>) -> Self {
        Self {
            alg: FreeGerst::new(CAlphabet::new(cofree)),
            d_cache: RwLock::new(HashMap::new()),
            h_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn cofree(&self) -> &Cofree {
        &self.alg.alphabet().cofree
    }

    /// The C-letter `w*` as an element of `A`.
    pub fn letter(&self, w: &GWord) -> GElement {
        GElement::atom(self.alg.alphabet().intern(w))
    }

    fn lin(&self, terms: Vec<(GWord, GR)>) -> GElement {
        let mut out = GElement::zero();
        for (u, c) in terms {
            out.add_scaled(&self.letter(&u), &c);
        }
        out
    }

    /// `d_A(c) = β^T c + δ¹ c + (−1)^{c₁} c₁c₂ + (−1)^{z₁−1} [z₁, z₂]`.
    pub fn d_letter(&self, l: Letter) -> GElement {
        if let Some(v) = self.d_cache.read().get(&l) {
            return v.clone();
        }
        let cf = self.cofree();
        let w = self.alg.alphabet().word(l);
        let mut v = self.lin(cf.apply_transpose(CoOp::Beta, &w));
        v.add_assign(&self.lin(cf.apply_transpose(CoOp::Delta, &w)));
        // Δ⁻¹c = c₁⊗c₂ feeds the product, Δ⁰c = z₁⊗z₂ the bracket
        for (c1, c2, c) in cf.delta_m1(&w) {
            let p = self.alg.mul(&self.letter(&c1), &self.letter(&c2));
            v.add_scaled(&p, &(&c * &sgn(cf.co_deg(&c1))));
        }
        for (z1, z2, c) in cf.delta0(&w) {
            let b = self.alg.bracket(&self.letter(&z1), &self.letter(&z2));
            v.add_scaled(&b, &(&c * &sgn(cf.co_deg(&z1) - 1)));
        }
        self.d_cache.write().insert(l, v.clone());
        v
    }

    /// `h_A(c) = α^T c + δ⁻¹ c`.
    pub fn h_letter(&self, l: Letter) -> GElement {
        if let Some(v) = self.h_cache.read().get(&l) {
            return v.clone();
        }
        let cf = self.cofree();
        let w = self.alg.alphabet().word(l);
        let mut v = self.lin(cf.apply_transpose(CoOp::Alpha, &w));
        v.add_assign(&self.lin(cf.apply_transpose(CoOp::H, &w)));
        self.h_cache.write().insert(l, v.clone());
        v
    }

    /// `d_A`: a derivation of the product with the □-anomaly on brackets.
    pub fn d_a(&self, x: &GElement) -> GElement {
        let act = DAction(self);
        let spec = OpSpec { deg: 1, letters: Some(&act), mul: MulAnomaly::None, lie: LieAnomaly::Box };
        Evaluator::new(&self.alg, spec).eval(x)
    }

    /// `h_A`: second order, `h_A(ab) = (−1)^a [a,b] + h_A(a) b + (−1)^a a h_A(b)`.
    pub fn h_a(&self, x: &GElement) -> GElement {
        let act = HAction(self);
        let spec = OpSpec { deg: -1, letters: Some(&act), mul: MulAnomaly::Bracket, lie: LieAnomaly::None };
        Evaluator::new(&self.alg, spec).eval(x)
    }

    /// Errors when `x` has more V-letters than the truncation is exact for.
    pub fn check_budget(&self, x: &GElement) -> Result<()> {
        let letters = self.alg.max_ndeg(x) as usize;
        let budget = self.cofree().max_letters();
        if letters > budget {
            return Err(YmError::LetterBudgetExceeded { letters, budget });
        }
        Ok(())
    }

    pub fn try_d_a(&self, x: &GElement) -> Result<GElement> {
        self.check_budget(x)?;
        Ok(self.d_a(x))
    }

    pub fn try_h_a(&self, x: &GElement) -> Result<GElement> {
        self.check_budget(x)?;
        Ok(self.h_a(x))
    }

    pub fn box_a(&self, x: &GElement) -> GElement {
        self.alg.apply_box(x)
    }

    pub fn momentum(&self, mu: usize, x: &GElement) -> GElement {
        self.alg.apply_momentum(mu, x)
    }
}
