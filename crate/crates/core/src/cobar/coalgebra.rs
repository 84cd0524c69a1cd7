//! The cofree coalgebra `C`: dual basis of normal words of `G V*`, with every
//! structure map obtained as an exact transpose.
//!
//! A transpose `X^T(w*) = Σ_u ⟨w, X u⟩ u*` is computed sector by sector: the
//! letter multisets `L'` whose image under `X` can reach the multiset `L` of
//! `w` are enumerated from the shape of `X`, and `X` is applied to every basis
//! word of each `L'`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use parking_lot::RwLock;
use smallvec::SmallVec;

use crate::bv_infinity::BvData;
use crate::exact_arith::GR;
use crate::gerstenhaber::{valg, AtomId, DecoratedGenerator, GElement, GWord, Letter, VAlg, VDerivation, VOp};
use crate::ym_complex::DIM;

/// Sparse transpose of one sector: `w ↦ [(u, ⟨w, X u⟩)]`.
pub type SectorTranspose = HashMap<GWord, Vec<(GWord, GR)>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoOp {
    Alpha,
    Beta,
    Partial(usize),
    /// Transpose of `h`.
    H,
    /// Transpose of `d + Σ μ_k + Σ ν_k`.
    Delta,
}

/// `(bases of an image word, sorted) ↦ [(generator, total decoration)]`.
type Support = HashMap<Vec<usize>, Vec<(usize, [u32; 4])>>;

fn support(x: &VDerivation) -> Support {
    let alg = valg();
    let mut s: Support = HashMap::new();
    for (b, img) in x.images.iter().enumerate() {
        for w in img.terms.keys() {
            let mut bases = Vec::new();
            let mut dec = [0u32; 4];
            for l in alg.word_letters(w) {
                let g = DecoratedGenerator::decode(l);
                bases.push(g.basis);
                for mu in 0..4 {
                    dec[mu] += g.kexp[mu];
                }
            }
            bases.sort_unstable();
            let e = s.entry(bases).or_default();
            if !e.contains(&(b, dec)) {
                e.push((b, dec));
            }
        }
    }
    s
}

/// The coalgebra together with the operators it transposes.
pub struct Cofree {
    /// `D_n`: the part of `d + Σμ + Σν` sending one letter to `n` letters.
    pub d_parts: Vec<VDerivation>,
    pub h: VDerivation,
    supports: Vec<Support>,
    h_support: Support,
    /// `(n, b, shape)`: `D_n` (`n = 0` for `h`) keeping only the terms of
    /// the image of `x*_b` whose letters have bases `shape`. Decorating
    /// preserves bases, so these are the only terms a sector can receive.
    restricted: RwLock<HashMap<(usize, usize, Vec<usize>), Arc<VDerivation>>>,
    sectors: RwLock<HashMap<Vec<Letter>, Arc<Vec<GWord>>>>,
    transposes: RwLock<HashMap<(CoOp, Vec<Letter>), Arc<SectorTranspose>>>,
}

/// Letters of a preimage sector, the `D_n` arity tag, and for a replacement
/// the basis of the new letter and the bases of the letters it produces.
type Preimage = (Vec<Letter>, usize, usize, Vec<usize>);

fn decoration_sub(a: [u32; 4], b: [u32; 4]) -> Option<[u32; 4]> {
    let mut out = [0; 4];
    for mu in 0..4 {
        out[mu] = a[mu].checked_sub(b[mu])?;
    }
    Some(out)
}

/// Distinct sub-multisets of `letters` of size `n`, each with its complement.
fn sub_multisets(letters: &[Letter], n: usize) -> Vec<(Vec<Letter>, Vec<Letter>)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let m = letters.len();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let (mut t, mut rest) = (Vec::new(), Vec::new());
        for (i, l) in letters.iter().enumerate() {
            if mask & (1 << i) != 0 {
                t.push(*l);
            } else {
                rest.push(*l);
            }
        }
        if seen.insert(t.clone()) {
            out.push((t, rest));
        }
    }
    out
}

fn with_letter(mut rest: Vec<Letter>, l: Letter) -> Vec<Letter> {
    rest.push(l);
    rest.sort_unstable();
    rest
}

impl Cofree {
    /// Uses ν, μ through the arity of `data`; exact for C-letters with at most
    /// `data.nmax()` V-letters.
    pub fn new(data: &BvData) -> Self {
        let mut d_parts = vec![VDerivation::zero(1, 0), data.d.clone()];
        for n in 2..=data.nmax() {
            d_parts.push(data.mu[n].add(&data.nu[n]));
        }
        let supports = d_parts.iter().map(support).collect();
        let h_support = support(&data.h);
        Self {
            d_parts,
            h: data.h.clone(),
            supports,
            h_support,
            restricted: RwLock::new(HashMap::new()),
            sectors: RwLock::new(HashMap::new()),
            transposes: RwLock::new(HashMap::new()),
        }
    }

    pub fn max_letters(&self) -> usize {
        self.d_parts.len() - 1
    }

    pub fn alg(&self) -> &'static VAlg {
        valg()
    }

    pub fn sector(&self, letters: &[Letter]) -> Arc<Vec<GWord>> {
        if let Some(s) = self.sectors.read().get(letters) {
            return s.clone();
        }
        let s = Arc::new(valg().sector_basis(letters));
        self.sectors.write().insert(letters.to_vec(), s.clone());
        s
    }

    /// Letter multisets `L'` with the arity tag and replaced basis (if any)
    /// of the operator to apply on them.
    fn preimages(&self, op: CoOp, letters: &[Letter]) -> Vec<Preimage> {
        let mut out: Vec<Preimage> = Vec::new();
        let replace = |out: &mut Vec<Preimage>, sup: &Support, n: usize, tag: usize| {
            for (t, rest) in sub_multisets(letters, n) {
                let mut bases = Vec::new();
                let mut dec = [0u32; 4];
                for l in &t {
                    let g = DecoratedGenerator::decode(*l);
                    bases.push(g.basis);
                    for mu in 0..4 {
                        dec[mu] += g.kexp[mu];
                    }
                }
                bases.sort_unstable();
                for (b, shift) in sup.get(&bases).into_iter().flatten() {
                    if let Some(kexp) = decoration_sub(dec, *shift) {
                        let l = DecoratedGenerator { basis: *b, kexp }.encode();
                        out.push((with_letter(rest.clone(), l), tag, *b, bases.clone()));
                    }
                }
            }
        };
        match op {
            CoOp::Alpha => out.push((letters.to_vec(), 0, 0, Vec::new())),
            CoOp::Partial(mu) => {
                for (t, rest) in sub_multisets(letters, 1) {
                    let mut g = DecoratedGenerator::decode(t[0]);
                    if g.kexp[mu] > 0 {
                        g.kexp[mu] -= 1;
                        out.push((with_letter(rest, g.encode()), 0, 0, Vec::new()));
                    }
                }
            }
            CoOp::Beta => {
                for (t, rest) in sub_multisets(letters, 2) {
                    for mu in 0..4 {
                        let mut g: Vec<DecoratedGenerator> = t.iter().map(|l| DecoratedGenerator::decode(*l)).collect();
                        if g.iter().all(|g| g.kexp[mu] > 0) {
                            let mut l2 = rest.clone();
                            for g in g.iter_mut() {
                                g.kexp[mu] -= 1;
                                l2.push(g.encode());
                            }
                            l2.sort_unstable();
                            out.push((l2, 0, 0, Vec::new()));
                        }
                    }
                }
            }
            CoOp::H => replace(&mut out, &self.h_support, 1, 0),
            CoOp::Delta => {
                for n in 1..=letters.len().min(self.max_letters()) {
                    replace(&mut out, &self.supports[n], n, n);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn restricted(&self, tag: usize, b: usize, shape: &[usize]) -> Arc<VDerivation> {
        let key = (tag, b, shape.to_vec());
        if let Some(x) = self.restricted.read().get(&key) {
            return x.clone();
        }
        let alg = valg();
        let base = if tag == 0 { &self.h } else { &self.d_parts[tag] };
        let mut img = GElement::zero();
        for (w, c) in &base.images[b].terms {
            let mut bs: Vec<usize> = alg.word_letters(w).iter().map(|l| DecoratedGenerator::decode(*l).basis).collect();
            bs.sort_unstable();
            if bs == shape {
                img.terms.insert(w.clone(), c.clone());
            }
        }
        let images = (0..DIM).map(|i| if i == b { img.clone() } else { GElement::zero() }).collect();
        let x = Arc::new(VDerivation::new(base.deg, base.ndeg, images));
        self.restricted.write().insert(key, x.clone());
        x
    }

    fn apply_on_word(&self, op: CoOp, (_, tag, b, shape): &Preimage, u: &GWord) -> GElement {
        let alg = valg();
        let x = GElement::word(u.clone(), crate::exact_arith::PolyKP::int(1));
        match op {
            CoOp::Alpha => VOp::Alpha.apply(alg, &x),
            CoOp::Beta => VOp::Beta.apply(alg, &x),
            CoOp::Partial(mu) => alg.apply_momentum(mu, &x),
            CoOp::H | CoOp::Delta => self.restricted(*tag, *b, shape).apply(alg, &x),
        }
    }

    /// Transpose of `op` on the sector of `letters` (sorted).
    pub fn transpose(&self, op: CoOp, letters: &[Letter]) -> Arc<SectorTranspose> {
        let key = (op, letters.to_vec());
        if let Some(t) = self.transposes.read().get(&key) {
            return t.clone();
        }
        let alg = valg();
        let mut out: SectorTranspose = HashMap::new();
        for pre in self.preimages(op, letters) {
            for u in self.sector(&pre.0).iter() {
                for (w, c) in self.apply_on_word(op, &pre, u).terms {
                    if alg.word_letters(&w) == letters {
                        let c = c.as_constant().expect("numeric coefficient");
                        out.entry(w).or_default().push((u.clone(), c));
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.transposes.write().insert(key, out.clone());
        out
    }

    /// `X^T(w*)` as a list of dual basis words.
    pub fn apply_transpose(&self, op: CoOp, w: &GWord) -> Vec<(GWord, GR)> {
        let letters = valg().word_letters(w);
        self.transpose(op, &letters).get(w).cloned().unwrap_or_default()
    }

    /// Degree of `w*` in `C` (the negative of the degree of `w`).
    pub fn co_deg(&self, w: &GWord) -> i32 {
        -valg().word_deg(w)
    }

    /// Transpose of the product: `Σ ⟨w, u·v⟩ u*⊗v*` over nonempty `u`, `v`.
    pub fn delta0(&self, w: &GWord) -> Vec<(GWord, GWord, GR)> {
        let alg = valg();
        let m = w.len();
        let mut seen: BTreeMap<(GWord, GWord), GR> = BTreeMap::new();
        for mask in 1u32..((1 << m) - 1) {
            let (u, v) = split(w, mask);
            let (Some((u, _)), Some((v, _))) = (alg.normalize_seq(&u), alg.normalize_seq(&v)) else { continue };
            if seen.contains_key(&(u.clone(), v.clone())) {
                continue;
            }
            let p = alg.mul(&GElement::word(u.clone(), one()), &GElement::word(v.clone(), one()));
            let c = coeff(&p, w);
            seen.insert((u, v), c);
        }
        seen.into_iter().filter(|(_, c)| !c.is_zero()).map(|((u, v), c)| (u, v, c)).collect()
    }

    /// Transpose of the bracket: `Σ ⟨w, [u, v]⟩ u*⊗v*`.
    pub fn delta_m1(&self, w: &GWord) -> Vec<(GWord, GWord, GR)> {
        let alg = valg();
        let mut seen: BTreeMap<(GWord, GWord), GR> = BTreeMap::new();
        for p in 0..w.len() {
            let lt = alg.atoms.letters(w[p]);
            if lt.len() < 2 {
                continue;
            }
            let rest: GWord = w.iter().enumerate().filter(|(i, _)| *i != p).map(|(_, a)| *a).collect();
            for n1 in 1..lt.len() {
                for (s1, s2) in sub_multisets(&lt, n1) {
                    let (b1, b2) = (alg.atoms.block_atoms(&s1), alg.atoms.block_atoms(&s2));
                    for mask in 0u32..(1 << rest.len()) {
                        let (ru, rv) = split(&rest, mask);
                        for a in &b1 {
                            for b in &b2 {
                                let mut us = ru.clone();
                                us.push(*a);
                                let mut vs = rv.clone();
                                vs.push(*b);
                                let (Some((u, _)), Some((v, _))) = (alg.normalize_seq(&us), alg.normalize_seq(&vs))
                                else {
                                    continue;
                                };
                                if seen.contains_key(&(u.clone(), v.clone())) {
                                    continue;
                                }
                                let c = coeff(&alg.bracket_words(&u, &v), w);
                                seen.insert((u, v), c);
                            }
                        }
                    }
                }
            }
        }
        seen.into_iter().filter(|(_, c)| !c.is_zero()).map(|((u, v), c)| (u, v, c)).collect()
    }

    /// V-letter count of `w*`.
    pub fn letter_count(&self, w: &GWord) -> usize {
        valg().word_ndeg(w) as usize
    }

    /// Undecorated generators `x_i`, as C-letters.
    pub fn generator(&self, i: usize, kexp: [u32; 4]) -> GWord {
        assert!(i < DIM);
        SmallVec::from_slice(&[DecoratedGenerator { basis: i, kexp }.encode()])
    }
}

fn one() -> crate::exact_arith::PolyKP {
    crate::exact_arith::PolyKP::int(1)
}

fn split(w: &[AtomId], mask: u32) -> (SmallVec<[AtomId; 8]>, SmallVec<[AtomId; 8]>) {
    let (mut u, mut v) = (SmallVec::new(), SmallVec::new());
    for (i, a) in w.iter().enumerate() {
        if mask & (1 << i) != 0 {
            u.push(*a);
        } else {
            v.push(*a);
        }
    }
    (u, v)
}

fn coeff(x: &GElement, w: &GWord) -> GR {
    x.terms.get(w).map_or_else(GR::zero, |c| c.as_constant().expect("numeric coefficient"))
}
