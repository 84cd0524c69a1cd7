//! The alphabet of momentum-decorated dual generators and equivariant
//! derivations on it.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

use super::atoms::{Alphabet, Letter};
use super::element::{FreeGerst, GElement};
use super::ops::{Evaluator, LetterAction, OpSpec};
use crate::exact_arith::{PolyKP, GR};
use crate::ym_complex::{StructureTables, DIM};

/// Maximal total decoration degree of a letter.
pub const DECORATION_CAP: u32 = 12;

/// Packed `(basis, kexp)`; numeric order is lexicographic in
/// `(basis, k₀, k₁, k₂, k₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedGenerator {
    pub basis: usize,
    pub kexp: [u32; 4],
}

impl DecoratedGenerator {
    pub fn plain(basis: usize) -> Self {
        Self { basis, kexp: [0; 4] }
    }

    pub fn encode(&self) -> Letter {
        assert!(self.basis < DIM && self.kexp.iter().all(|e| *e < 16));
        ((self.basis as u32) << 16) | (self.kexp[0] << 12) | (self.kexp[1] << 8) | (self.kexp[2] << 4) | self.kexp[3]
    }

    pub fn decode(l: Letter) -> Self {
        Self {
            basis: (l >> 16) as usize,
            kexp: [(l >> 12) & 15, (l >> 8) & 15, (l >> 4) & 15, l & 15],
        }
    }

    pub fn decoration(&self) -> u32 {
        self.kexp.iter().sum()
    }
}

/// Dual generators of the fiber with degrees `−deg` and the Hopf action
/// that increments decorations.
#[derive(Clone)]
pub struct VStar {
    pub deg: [i32; DIM],
    pub names: Vec<String>,
}

impl VStar {
    pub fn new(t: &StructureTables) -> Self {
        Self { deg: t.deg.map(|d| -d), names: t.names.clone() }
    }
}

impl Alphabet for VStar {
    fn deg(&self, l: Letter) -> i32 {
        self.deg[DecoratedGenerator::decode(l).basis]
    }

    fn ndeg(&self, _: Letter) -> u32 {
        1
    }

    fn partial(&self, mu: usize, l: Letter) -> Vec<(Letter, GR)> {
        let mut g = DecoratedGenerator::decode(l);
        g.kexp[mu] += 1;
        assert!(g.decoration() <= DECORATION_CAP, "decoration cap {DECORATION_CAP} exceeded");
        vec![(g.encode(), GR::one())]
    }

    fn letter_name(&self, l: Letter) -> String {
        let g = DecoratedGenerator::decode(l);
        let mut s = format!("{}*", self.names[g.basis]);
        for (mu, e) in g.kexp.iter().enumerate() {
            for _ in 0..*e {
                s.push_str(&format!("k{mu}"));
            }
        }
        s
    }
}

pub type VAlg = FreeGerst<VStar>;

/// The shared algebra on `V*` built from the embedded tables.
pub fn valg() -> &'static VAlg {
    static A: OnceLock<VAlg> = OnceLock::new();
    A.get_or_init(|| FreeGerst::new(VStar::new(StructureTables::get())))
}

pub fn gen(basis: usize) -> GElement {
    GElement::atom(DecoratedGenerator::plain(basis).encode())
}

pub fn dgen(basis: usize, kexp: [u32; 4]) -> GElement {
    GElement::atom(DecoratedGenerator { basis, kexp }.encode())
}

/// Applies the decoration `kexp` to an element (∂^kexp, Leibniz).
pub fn decorate(alg: &VAlg, x: &GElement, kexp: [u32; 4]) -> GElement {
    let mut y = x.clone();
    for (mu, e) in kexp.iter().enumerate() {
        for _ in 0..*e {
            y = alg.apply_momentum(mu, &y);
        }
    }
    y
}

/// Equivariant derivation of `G V*`, fixed by its images of the sixteen
/// undecorated generators.
pub struct VDerivation {
    pub deg: i32,
    pub ndeg: i32,
    pub images: Vec<GElement>,
    cache: RwLock<HashMap<Letter, GElement>>,
}

impl Clone for VDerivation {
    fn clone(&self) -> Self {
        Self::new(self.deg, self.ndeg, self.images.clone())
    }
}

impl std::fmt::Debug for VDerivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VDerivation(deg={}, ndeg={})", self.deg, self.ndeg)
    }
}

impl LetterAction<VStar> for VDerivation {
    fn image(&self, alg: &VAlg, l: Letter) -> GElement {
        let g = DecoratedGenerator::decode(l);
        if g.decoration() == 0 {
            return self.images[g.basis].clone();
        }
        if let Some(v) = self.cache.read().get(&l) {
            return v.clone();
        }
        let v = decorate(alg, &self.images[g.basis], g.kexp);
        self.cache.write().insert(l, v.clone());
        v
    }
}

impl VDerivation {
    pub fn new(deg: i32, ndeg: i32, images: Vec<GElement>) -> Self {
        assert_eq!(images.len(), DIM);
        Self { deg, ndeg, images, cache: RwLock::new(HashMap::new()) }
    }

    pub fn zero(deg: i32, ndeg: i32) -> Self {
        Self::new(deg, ndeg, vec![GElement::zero(); DIM])
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|x| x.is_zero())
    }

    pub fn spec(&self) -> OpSpec<'_, VStar> {
        OpSpec::derivation(self.deg, self)
    }

    pub fn apply(&self, alg: &VAlg, x: &GElement) -> GElement {
        Evaluator::new(alg, self.spec()).eval(x)
    }

    pub fn scale(&self, c: &GR) -> Self {
        Self::new(self.deg, self.ndeg, self.images.iter().map(|x| x.scale(c)).collect())
    }

    pub fn add(&self, o: &VDerivation) -> Self {
        Self::new(self.deg, self.ndeg, self.images.iter().zip(&o.images).map(|(a, b)| a.plus(b)).collect())
    }

    /// `Σ cᵢ δᵢ` (degrees taken from the first summand).
    pub fn sum(parts: &[(GR, &VDerivation)]) -> Self {
        let (deg, ndeg) = parts.first().map_or((0, 0), |p| (p.1.deg, p.1.ndeg));
        let mut images = vec![GElement::zero(); DIM];
        for (c, d) in parts {
            for (acc, x) in images.iter_mut().zip(&d.images) {
                acc.add_scaled(x, c);
            }
        }
        Self::new(deg, ndeg, images)
    }

    pub fn map_coeffs(&self, f: impl Fn(&PolyKP) -> PolyKP) -> Self {
        Self::new(self.deg, self.ndeg, self.images.iter().map(|x| x.map_coeffs(&f)).collect())
    }

    pub fn into_arc(self) -> Arc<VDerivation> {
        Arc::new(self)
    }
}

/// Operators on `G V*` in the form needed for commutators.
#[derive(Clone)]
pub enum VOp<'a> {
    Alpha,
    Beta,
    Gamma,
    Der(&'a VDerivation),
}

impl<'a> VOp<'a> {
    pub fn deg(&self) -> i32 {
        match self {
            VOp::Alpha => -1,
            VOp::Beta | VOp::Gamma => 1,
            VOp::Der(d) => d.deg,
        }
    }

    pub fn ndeg(&self) -> i32 {
        match self {
            VOp::Der(d) => d.ndeg,
            _ => 0,
        }
    }

    pub fn spec(&self) -> OpSpec<'a, VStar> {
        match self {
            VOp::Alpha => OpSpec::alpha(),
            VOp::Beta => OpSpec::beta(),
            VOp::Gamma => OpSpec::gamma(),
            VOp::Der(d) => d.spec(),
        }
    }

    pub fn apply(&self, alg: &VAlg, x: &GElement) -> GElement {
        Evaluator::new(alg, self.spec()).eval(x)
    }
}

/// Graded commutator `[x, y] = xy − (−1)^{xy} yx`, as the derivation fixed by
/// its action on generators.
pub fn commutator(alg: &VAlg, x: &VOp<'_>, y: &VOp<'_>) -> VDerivation {
    let ex = Evaluator::new(alg, x.spec());
    let ey = Evaluator::new(alg, y.spec());
    let s = if (x.deg() * y.deg()).rem_euclid(2) == 1 { GR::one() } else { GR::int(-1) };
    let images = (0..DIM)
        .map(|b| {
            let g = gen(b);
            let mut v = ex.eval(&ey.eval(&g));
            v.add_scaled(&ey.eval(&ex.eval(&g)), &s);
            v
        })
        .collect();
    VDerivation::new(x.deg() + y.deg(), x.ndeg() + y.ndeg(), images)
}

/// `Γ δ`: zero for `ndeg 0`, otherwise `2/((n+1)n) · γ ∘ δ` on generators.
pub fn big_gamma(alg: &VAlg, d: &VDerivation) -> VDerivation {
    let n = d.ndeg as i64;
    if n == 0 {
        return VDerivation::zero(d.deg + 1, d.ndeg);
    }
    let c = GR::ratio(2, (n + 1) * n);
    let eg = Evaluator::new(alg, OpSpec::gamma());
    VDerivation::new(d.deg + 1, d.ndeg, d.images.iter().map(|x| eg.eval(x).scale(&c)).collect())
}

/// `K`: `g ↦ Q g`.
pub fn curvature(alg: &VAlg) -> VDerivation {
    VDerivation::new(0, 0, (0..DIM).map(|b| alg.apply_box(&gen(b))).collect())
}
