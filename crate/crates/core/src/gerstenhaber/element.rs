use std::collections::BTreeMap;
use std::fmt::Write as _;

use smallvec::SmallVec;

use super::atoms::{Alphabet, AtomId, AtomTable, Letter};
use crate::exact_arith::{PolyKP, Sym, GR};

/// Graded-commutative product of atoms, sorted by id.
pub type GWord = SmallVec<[AtomId; 4]>;

/// Finite sum of words with polynomial coefficients; no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct GElement {
    pub terms: BTreeMap<GWord, PolyKP>,
}

impl GElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: GWord, c: PolyKP) -> Self {
        let mut e = Self::zero();
        e.add_term(w, &c);
        e
    }

    pub fn atom(a: AtomId) -> Self {
        Self::word(SmallVec::from_slice(&[a]), PolyKP::int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: GWord, c: &PolyKP) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_term_scaled(&mut self, w: GWord, c: &PolyKP, s: &GR) {
        if s.is_zero() || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                e.add_scaled(c, s);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.scale(s));
            }
        }
    }

    pub fn add_assign(&mut self, o: &GElement) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, o: &GElement, s: &GR) {
        for (w, c) in &o.terms {
            self.add_term_scaled(w.clone(), c, s);
        }
    }

    pub fn add_poly_scaled(&mut self, o: &GElement, p: &PolyKP) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), &(c * p));
        }
    }

    pub fn scale(&self, s: &GR) -> GElement {
        let mut e = GElement::zero();
        e.add_scaled(self, s);
        e
    }

    pub fn sub(&self, o: &GElement) -> GElement {
        let mut e = self.clone();
        e.add_scaled(o, &GR::int(-1));
        e
    }

    pub fn plus(&self, o: &GElement) -> GElement {
        let mut e = self.clone();
        e.add_assign(o);
        e
    }

    pub fn map_coeffs(&self, f: impl Fn(&PolyKP) -> PolyKP) -> GElement {
        let mut e = GElement::zero();
        for (w, c) in &self.terms {
            e.add_term(w.clone(), &f(c));
        }
        e
    }

    pub fn substitute(&self, bind: &std::collections::HashMap<Sym, PolyKP>) -> GElement {
        self.map_coeffs(|c| c.substitute_poly(bind))
    }

    /// All coefficients, for turning `x = 0` into scalar equations.
    pub fn coefficients(&self) -> impl Iterator<Item = &PolyKP> {
        self.terms.values()
    }
}

fn parity(x: i32) -> bool {
    x.rem_euclid(2) == 1
}

/// The free Gerstenhaber algebra on an alphabet.
pub struct FreeGerst<A: Alphabet> {
    pub atoms: AtomTable<A>,
}

impl<A: Alphabet> FreeGerst<A> {
    pub fn new(alphabet: A) -> Self {
        Self { atoms: AtomTable::new(alphabet) }
    }

    pub fn alphabet(&self) -> &A {
        &self.atoms.alphabet
    }

    pub fn letter(&self, l: Letter) -> GElement {
        GElement::atom(l)
    }

    pub fn word_deg(&self, w: &[AtomId]) -> i32 {
        w.iter().map(|a| self.atoms.deg(*a)).sum()
    }

    pub fn word_ndeg(&self, w: &[AtomId]) -> u32 {
        w.iter().map(|a| self.atoms.ndeg(*a)).sum()
    }

    /// Sorts an atom sequence into a word with the Koszul sign; `None` when
    /// an odd atom repeats.
    pub fn normalize_seq(&self, seq: &[AtomId]) -> Option<(GWord, bool)> {
        let mut v: GWord = SmallVec::from_slice(seq);
        let odd: SmallVec<[bool; 8]> = v.iter().map(|a| parity(self.atoms.deg(*a))).collect();
        let mut odd = odd;
        let mut neg = false;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                if odd[j - 1] && odd[j] {
                    neg = !neg;
                }
                v.swap(j - 1, j);
                odd.swap(j - 1, j);
                j -= 1;
            }
        }
        for i in 1..v.len() {
            if v[i] == v[i - 1] && odd[i] {
                return None;
            }
        }
        Some((v, neg))
    }

    fn push_seq(&self, out: &mut GElement, seq: &[AtomId], c: &PolyKP, s: &GR) {
        if let Some((w, neg)) = self.normalize_seq(seq) {
            let s = if neg { -s } else { s.clone() };
            out.add_term_scaled(w, c, &s);
        }
    }

    pub fn mul(&self, x: &GElement, y: &GElement) -> GElement {
        let mut out = GElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let mut seq: SmallVec<[AtomId; 8]> = SmallVec::from_slice(a);
                seq.extend_from_slice(b);
                self.push_seq(&mut out, &seq, &(ca * cb), &GR::one());
            }
        }
        out
    }

    /// `prefix · x · suffix` for atom sequences.
    pub fn sandwich(&self, prefix: &[AtomId], x: &GElement, suffix: &[AtomId], s: &GR) -> GElement {
        let mut out = GElement::zero();
        for (w, c) in &x.terms {
            let mut seq: SmallVec<[AtomId; 8]> = SmallVec::from_slice(prefix);
            seq.extend_from_slice(w);
            seq.extend_from_slice(suffix);
            self.push_seq(&mut out, &seq, c, s);
        }
        out
    }

    /// Bracket of two words by the Poisson rule in both slots.
    pub fn bracket_words(&self, a: &[AtomId], b: &[AtomId]) -> GElement {
        let mut out = GElement::zero();
        let da: SmallVec<[i32; 8]> = a.iter().map(|x| self.atoms.deg(*x)).collect();
        let db: SmallVec<[i32; 8]> = b.iter().map(|x| self.atoms.deg(*x)).collect();
        for i in 0..a.len() {
            let after: i32 = da[i + 1..].iter().sum();
            let s1 = parity(da[i] * after);
            let mut before_b = 0;
            for j in 0..b.len() {
                let s2 = parity((da[i] - 1) * before_b);
                let s = if s1 ^ s2 { GR::int(-1) } else { GR::one() };
                for (t, c) in self.atoms.bracket(a[i], b[j]) {
                    let mut seq: SmallVec<[AtomId; 8]> = SmallVec::new();
                    seq.extend(a.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| *x));
                    seq.extend_from_slice(&b[..j]);
                    seq.push(t);
                    seq.extend_from_slice(&b[j + 1..]);
                    self.push_seq(&mut out, &seq, &PolyKP::constant(c), &s);
                }
                before_b += db[j];
            }
        }
        out
    }

    pub fn bracket(&self, x: &GElement, y: &GElement) -> GElement {
        let mut out = GElement::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let c = ca * cb;
                out.add_poly_scaled(&self.bracket_words(a, b), &c);
            }
        }
        out
    }

    /// Applies a letter-linear, degree-0 map by Leibniz over atoms and
    /// letters (the Hopf action of a primitive element).
    pub fn map_letters(&self, x: &GElement, f: &dyn Fn(Letter) -> Vec<(Letter, GR)>) -> GElement {
        let mut out = GElement::zero();
        for (w, c) in &x.terms {
            for i in 0..w.len() {
                for (t, ct) in self.atoms.map_letters(w[i], f) {
                    let mut seq: SmallVec<[AtomId; 8]> = SmallVec::from_slice(w);
                    seq[i] = t;
                    self.push_seq(&mut out, &seq, c, &ct);
                }
            }
        }
        out
    }

    /// `∂_mu x`.
    pub fn apply_momentum(&self, mu: usize, x: &GElement) -> GElement {
        let al = self.alphabet();
        self.map_letters(x, &|l| al.partial(mu, l))
    }

    /// `Q x = −∂₀²x + ∂₁²x + ∂₂²x + ∂₃²x`.
    pub fn apply_box(&self, x: &GElement) -> GElement {
        let mut out = GElement::zero();
        for mu in 0..4 {
            let y = self.apply_momentum(mu, &self.apply_momentum(mu, x));
            out.add_scaled(&y, &GR::int(if mu == 0 { -1 } else { 1 }));
        }
        out
    }

    /// `Q(ab) − (Qa)b − a(Qb) = 2 Σ_μ η_μμ (∂_μ a)(∂_μ b)`.
    pub fn box_anomaly(&self, a: &GElement, b: &GElement) -> GElement {
        let mut out = GElement::zero();
        for mu in 0..4 {
            let p = self.mul(&self.apply_momentum(mu, a), &self.apply_momentum(mu, b));
            out.add_scaled(&p, &GR::int(if mu == 0 { -2 } else { 2 }));
        }
        out
    }

    /// Right-normed bracket of letters as an element.
    pub fn right_normed(&self, order: &[Letter]) -> GElement {
        let mut r = GElement::atom(*order.last().expect("nonempty"));
        for &l in order[..order.len() - 1].iter().rev() {
            r = self.bracket(&GElement::atom(l), &r);
        }
        r
    }

    pub fn word_sexpr(&self, w: &[AtomId]) -> String {
        if w.len() == 1 {
            return self.atoms.sexpr(w[0]);
        }
        let mut s = String::from("(mul");
        for a in w {
            let _ = write!(s, " {}", self.atoms.sexpr(*a));
        }
        s.push(')');
        s
    }

    /// Stable s-expression: terms sorted by their rendered word.
    pub fn sexpr(&self, x: &GElement) -> String {
        let mut items: Vec<(String, String)> =
            x.terms.iter().map(|(w, c)| (self.word_sexpr(w), c.to_string())).collect();
        items.sort();
        let mut s = String::from("(+");
        for (w, c) in items {
            let _ = write!(s, " (* {c} {w})");
        }
        s.push(')');
        s
    }

    /// Sorted letter multiset of a word.
    pub fn word_letters(&self, w: &[AtomId]) -> Vec<Letter> {
        let mut v: Vec<Letter> = w.iter().flat_map(|a| self.atoms.letters(*a)).collect();
        v.sort_unstable();
        v
    }

    /// All normal words whose letter multiset is `letters` (sorted).
    pub fn sector_basis(&self, letters: &[Letter]) -> Vec<GWord> {
        let mut words = std::collections::BTreeSet::new();
        for part in set_partitions(letters.len()) {
            let mut seqs: Vec<SmallVec<[AtomId; 8]>> = vec![SmallVec::new()];
            for block in &part {
                let mut ls: Vec<Letter> = block.iter().map(|i| letters[*i]).collect();
                ls.sort_unstable();
                let atoms = self.atoms.block_atoms(&ls);
                seqs = seqs
                    .iter()
                    .flat_map(|s| {
                        atoms.iter().map(move |a| {
                            let mut s = s.clone();
                            s.push(*a);
                            s
                        })
                    })
                    .collect();
            }
            for s in seqs {
                if let Some((w, _)) = self.normalize_seq(&s) {
                    words.insert(w);
                }
            }
        }
        words.into_iter().collect()
    }

    /// Maximal letter count over the terms.
    pub fn max_ndeg(&self, x: &GElement) -> u32 {
        x.terms.keys().map(|w| self.word_ndeg(w)).max().unwrap_or(0)
    }

    /// Terms of letter count exactly `n`.
    pub fn ndeg_part(&self, x: &GElement, n: u32) -> GElement {
        let mut out = GElement::zero();
        for (w, c) in &x.terms {
            if self.word_ndeg(w) == n {
                out.add_term(w.clone(), c);
            }
        }
        out
    }
}

/// Set partitions of `0..n`, blocks in increasing order of their minima.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in set_partitions(n - 1) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].push(n - 1);
            out.push(q);
        }
        let mut q = p;
        q.push(vec![n - 1]);
        out.push(q);
    }
    out
}
