//! Lie atoms: a basis of the free degree −1 Lie algebra on an alphabet,
//! realized through the graded PBW embedding into the tensor algebra.

use std::collections::{BTreeMap, HashMap};

use parking_lot::RwLock;
use smallvec::SmallVec;

use crate::exact_arith::GR;

pub type Letter = u32;
pub type AtomId = u32;

/// Ids at or above this value denote compound atoms; smaller ids are letters.
pub const COMPOUND: AtomId = 1 << 31;

pub type TWord = SmallVec<[Letter; 6]>;
pub type Tensor = HashMap<TWord, GR>;

/// Grading and Hopf action of a generating alphabet.
pub trait Alphabet: Send + Sync {
    /// Degree in the Gerstenhaber algebra.
    fn deg(&self, l: Letter) -> i32;
    /// Number of underlying generator letters.
    fn ndeg(&self, l: Letter) -> u32;
    /// Action of `∂_mu` on a letter.
    fn partial(&self, mu: usize, l: Letter) -> Vec<(Letter, GR)>;
    fn letter_name(&self, l: Letter) -> String;
}

#[derive(Clone, Debug)]
pub struct AtomInfo {
    /// Sorted letter multiset.
    pub letters: Vec<Letter>,
    /// Right-normed bracket `[o₀,[o₁,[…,o_m]]]`.
    pub order: Vec<Letter>,
    pub deg: i32,
    pub ndeg: u32,
    pub tensor: Tensor,
}

#[derive(Clone, Debug, Default)]
struct EchelonRow {
    pivot: TWord,
    vec: Tensor,
    /// Row as a combination of block atoms (indices into `Block::atoms`).
    expr: Vec<(usize, GR)>,
}

#[derive(Clone, Debug, Default)]
struct Block {
    atoms: Vec<AtomId>,
    rows: Vec<EchelonRow>,
}

impl Block {
    /// Reduces `v` against the rows; returns the residual and the
    /// coefficients of the subtracted part over block atoms.
    fn reduce(&self, v: &mut Tensor) -> BTreeMap<usize, GR> {
        let mut coeffs: BTreeMap<usize, GR> = BTreeMap::new();
        for r in &self.rows {
            let Some(c) = v.get(&r.pivot).cloned() else { continue };
            for (w, x) in &r.vec {
                let e = v.entry(w.clone()).or_insert_with(GR::zero);
                *e -= &(&c * x);
                if e.is_zero() {
                    v.remove(w);
                }
            }
            for (i, x) in &r.expr {
                let e = coeffs.entry(*i).or_insert_with(GR::zero);
                *e += &(&c * x);
            }
        }
        coeffs.retain(|_, x| !x.is_zero());
        coeffs
    }
}

#[derive(Default)]
struct Store {
    info: Vec<AtomInfo>,
    blocks: HashMap<Vec<Letter>, Block>,
    brackets: HashMap<(AtomId, AtomId), Vec<(AtomId, GR)>>,
}

/// Interning table for Lie atoms over an alphabet.
pub struct AtomTable<A: Alphabet> {
    pub alphabet: A,
    store: RwLock<Store>,
}

fn parity(x: i32) -> bool {
    x.rem_euclid(2) == 1
}

pub(crate) fn tensor_add(acc: &mut Tensor, w: TWord, c: GR) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w.clone()).or_insert_with(GR::zero);
    *e += &c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

/// `[x, y]` in the tensor algebra with Lie parities `px`, `py` (degree − 1).
pub(crate) fn tensor_bracket(x: &Tensor, px: bool, y: &Tensor, py: bool) -> Tensor {
    let mut out = Tensor::new();
    let sign = if px && py { GR::one() } else { GR::int(-1) };
    for (a, ca) in x {
        for (b, cb) in y {
            let c = ca * cb;
            let mut ab: TWord = a.clone();
            ab.extend_from_slice(b);
            tensor_add(&mut out, ab, c.clone());
            let mut ba: TWord = b.clone();
            ba.extend_from_slice(a);
            tensor_add(&mut out, ba, &c * &sign);
        }
    }
    out
}

fn next_permutation(v: &mut [Letter]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl<A: Alphabet> AtomTable<A> {
    pub fn new(alphabet: A) -> Self {
        Self { alphabet, store: RwLock::new(Store::default()) }
    }

    pub fn is_letter(id: AtomId) -> bool {
        id < COMPOUND
    }

    /// Info of a compound atom.
    pub fn info(&self, id: AtomId) -> AtomInfo {
        debug_assert!(id >= COMPOUND);
        self.store.read().info[(id - COMPOUND) as usize].clone()
    }

    pub fn deg(&self, id: AtomId) -> i32 {
        if id < COMPOUND {
            self.alphabet.deg(id)
        } else {
            self.store.read().info[(id - COMPOUND) as usize].deg
        }
    }

    pub fn ndeg(&self, id: AtomId) -> u32 {
        if id < COMPOUND {
            self.alphabet.ndeg(id)
        } else {
            self.store.read().info[(id - COMPOUND) as usize].ndeg
        }
    }

    /// Right-normed letter sequence of an atom.
    pub fn order(&self, id: AtomId) -> Vec<Letter> {
        if id < COMPOUND {
            vec![id]
        } else {
            self.store.read().info[(id - COMPOUND) as usize].order.clone()
        }
    }

    pub fn letters(&self, id: AtomId) -> Vec<Letter> {
        if id < COMPOUND {
            vec![id]
        } else {
            self.store.read().info[(id - COMPOUND) as usize].letters.clone()
        }
    }

    pub fn tensor(&self, id: AtomId) -> Tensor {
        if id < COMPOUND {
            let mut t = Tensor::new();
            t.insert(SmallVec::from_slice(&[id]), GR::one());
            t
        } else {
            self.store.read().info[(id - COMPOUND) as usize].tensor.clone()
        }
    }

    fn lie_deg(&self, letters: &[Letter]) -> i32 {
        letters.iter().map(|l| self.alphabet.deg(*l)).sum::<i32>() - (letters.len() as i32 - 1)
    }

    fn right_normed_tensor(&self, order: &[Letter]) -> Tensor {
        let last = *order.last().expect("nonempty");
        let mut t = Tensor::new();
        t.insert(SmallVec::from_slice(&[last]), GR::one());
        let mut d = self.alphabet.deg(last);
        for &l in order[..order.len() - 1].iter().rev() {
            let dl = self.alphabet.deg(l);
            let mut lt = Tensor::new();
            lt.insert(SmallVec::from_slice(&[l]), GR::one());
            t = tensor_bracket(&lt, parity(dl - 1), &t, parity(d - 1));
            d = d + dl - 1;
        }
        t
    }

    fn ensure_block(&self, letters: &[Letter]) {
        if self.store.read().blocks.contains_key(letters) {
            return;
        }
        let mut perm = letters.to_vec();
        let deg = self.lie_deg(letters);
        let ndeg = letters.iter().map(|l| self.alphabet.ndeg(*l)).sum();
        let mut block = Block::default();
        let mut fresh: Vec<AtomInfo> = Vec::new();
        loop {
            let t = self.right_normed_tensor(&perm);
            let mut v = t.clone();
            let coeffs = block.reduce(&mut v);
            if !v.is_empty() {
                let idx = fresh.len();
                let pivot = v.keys().min().expect("nonempty").clone();
                let inv = v[&pivot].inv();
                let vec: Tensor = v.into_iter().map(|(w, c)| (w, &c * &inv)).collect();
                let mut expr = vec![(idx, inv.clone())];
                expr.extend(coeffs.into_iter().map(|(i, c)| (i, -(&c * &inv))));
                block.rows.push(EchelonRow { pivot, vec, expr });
                fresh.push(AtomInfo { letters: letters.to_vec(), order: perm.clone(), deg, ndeg, tensor: t });
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let mut st = self.store.write();
        if st.blocks.contains_key(letters) {
            return;
        }
        let base = st.info.len() as AtomId + COMPOUND;
        block.atoms = (0..fresh.len() as AtomId).map(|i| base + i).collect();
        st.info.extend(fresh);
        st.blocks.insert(letters.to_vec(), block);
    }

    /// Expresses a tensor that is a Lie element on the letter multiset
    /// `letters` over the atom basis.
    pub fn decompose(&self, letters: &[Letter], t: &Tensor) -> Vec<(AtomId, GR)> {
        if t.is_empty() {
            return Vec::new();
        }
        if letters.len() == 1 {
            let c = t.values().next().cloned().unwrap_or_else(GR::zero);
            return vec![(letters[0], c)];
        }
        self.ensure_block(letters);
        let st = self.store.read();
        let block = &st.blocks[letters];
        let mut v = t.clone();
        let coeffs = block.reduce(&mut v);
        assert!(v.is_empty(), "tensor is not a Lie element over its letters");
        coeffs.into_iter().map(|(i, c)| (block.atoms[i], c)).collect()
    }

    /// Atom basis of a letter multiset.
    pub fn block_atoms(&self, letters: &[Letter]) -> Vec<AtomId> {
        if letters.len() == 1 {
            return vec![letters[0]];
        }
        self.ensure_block(letters);
        self.store.read().blocks[letters].atoms.clone()
    }

    /// `[a, b]` over the atom basis.
    pub fn bracket(&self, a: AtomId, b: AtomId) -> Vec<(AtomId, GR)> {
        if let Some(r) = self.store.read().brackets.get(&(a, b)) {
            return r.clone();
        }
        let mut letters = self.letters(a);
        letters.extend(self.letters(b));
        letters.sort_unstable();
        let t = tensor_bracket(&self.tensor(a), parity(self.deg(a) - 1), &self.tensor(b), parity(self.deg(b) - 1));
        let r = self.decompose(&letters, &t);
        self.store.write().brackets.insert((a, b), r.clone());
        r
    }

    /// Applies a letter-linear map to every letter of the atom (derivation
    /// of degree 0 on the Lie algebra) and re-expands.
    pub fn map_letters(&self, a: AtomId, f: &dyn Fn(Letter) -> Vec<(Letter, GR)>) -> Vec<(AtomId, GR)> {
        let t = self.tensor(a);
        let mut groups: BTreeMap<Vec<Letter>, Tensor> = BTreeMap::new();
        for (w, c) in &t {
            for q in 0..w.len() {
                for (l2, c2) in f(w[q]) {
                    let mut w2 = w.clone();
                    w2[q] = l2;
                    let mut key: Vec<Letter> = w2.to_vec();
                    key.sort_unstable();
                    tensor_add(groups.entry(key).or_default(), w2, c * &c2);
                }
            }
        }
        let mut out = Vec::new();
        for (letters, t) in groups {
            out.extend(self.decompose(&letters, &t));
        }
        out
    }

    /// s-expression of an atom.
    pub fn sexpr(&self, a: AtomId) -> String {
        let order = self.order(a);
        let mut s = self.alphabet.letter_name(*order.last().unwrap());
        for l in order[..order.len() - 1].iter().rev() {
            s = format!("(lie {} {})", self.alphabet.letter_name(*l), s);
        }
        s
    }

    pub fn atom_count(&self) -> usize {
        self.store.read().info.len()
    }
}
