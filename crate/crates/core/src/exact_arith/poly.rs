use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::gaussian::GR;

/// Polynomial variable. `0..4` are the momentum components k₀..k₃,
/// `4..LEG_END` are per-leg momentum components, `PARAM_BASE..` are
/// unknowns introduced by ansätze.
pub type Sym = u32;

pub const LEG_END: Sym = 4 + 4 * 60;
pub const PARAM_BASE: Sym = 256;

pub fn k_sym(mu: usize) -> Sym {
    debug_assert!(mu < 4);
    mu as Sym
}

/// Component `mu` of the momentum of leg `j`.
pub fn leg_sym(j: usize, mu: usize) -> Sym {
    assert!(j < 60 && mu < 4);
    4 + 4 * j as Sym + mu as Sym
}

pub fn param_sym(n: usize) -> Sym {
    PARAM_BASE + n as Sym
}

pub fn is_param(s: Sym) -> bool {
    s >= PARAM_BASE
}

pub fn sym_name(s: Sym) -> String {
    if s < 4 {
        format!("k{s}")
    } else if s < LEG_END {
        format!("p{}_{}", (s - 4) / 4, (s - 4) % 4)
    } else if s >= PARAM_BASE {
        format!("u{}", s - PARAM_BASE)
    } else {
        format!("s{s}")
    }
}

/// Sparse monomial: strictly increasing symbols, positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub SmallVec<[(Sym, u32); 4]>);

impl Mono {
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    pub fn var(s: Sym) -> Mono {
        let mut v = SmallVec::new();
        v.push((s, 1));
        Mono(v)
    }

    pub fn from_pairs(pairs: &[(Sym, u32)]) -> Mono {
        let mut v: SmallVec<[(Sym, u32); 4]> = SmallVec::new();
        for &(s, e) in pairs {
            if e > 0 {
                v.push((s, e));
            }
        }
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Sym, u32); 4]> = SmallVec::new();
        for (s, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == s => last.1 += e,
                _ => out.push((s, e)),
            }
        }
        Mono(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exp(&self, s: Sym) -> u32 {
        self.0.iter().find(|p| p.0 == s).map_or(0, |p| p.1)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        if self.0.is_empty() {
            return o.clone();
        }
        if o.0.is_empty() {
            return self.clone();
        }
        let mut out = SmallVec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, b) = (self.0[i], o.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Mono(out)
    }

    /// Splits into (part on symbols satisfying `pred`, rest).
    pub fn split(&self, pred: impl Fn(Sym) -> bool) -> (Mono, Mono) {
        let mut a = SmallVec::new();
        let mut b = SmallVec::new();
        for &p in &self.0 {
            if pred(p.0) {
                a.push(p);
            } else {
                b.push(p);
            }
        }
        (Mono(a), Mono(b))
    }
}

impl Ord for Mono {
    /// Graded lexicographic with k₀ > k₁ > … .
    fn cmp(&self, o: &Self) -> Ordering {
        match self.degree().cmp(&o.degree()) {
            Ordering::Equal => {}
            c => return c,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => {
                    if a.0 != b.0 {
                        return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
                    }
                    if a.1 != b.1 {
                        return a.1.cmp(&b.1);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (s, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{}", sym_name(*s))?;
            } else {
                write!(f, "{}^{}", sym_name(*s), e)?;
            }
        }
        Ok(())
    }
}

/// Polynomial over ℚ(i) in momentum and parameter symbols.
///
/// Terms are sorted ascending in the graded lexicographic monomial order and
/// carry no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyKP {
    terms: Vec<(Mono, GR)>,
}

impl PolyKP {
    pub fn zero() -> Self {
        PolyKP { terms: Vec::new() }
    }

    pub fn constant(c: GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyKP { terms: vec![(Mono::one(), c)] }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GR::int(n))
    }

    pub fn var(s: Sym) -> Self {
        PolyKP { terms: vec![(Mono::var(s), GR::one())] }
    }

    pub fn k(mu: usize) -> Self {
        Self::var(k_sym(mu))
    }

    pub fn monomial(m: Mono, c: GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyKP { terms: vec![(m, c)] }
    }

    /// Builds from arbitrary terms, merging and sorting.
    pub fn from_terms(mut terms: Vec<(Mono, GR)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, GR)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        PolyKP { terms: out }
    }

    /// −k₀² + k₁² + k₂² + k₃².
    pub fn box_k() -> Self {
        Self::box_of(|mu| Mono::from_pairs(&[(k_sym(mu), 2)]))
    }

    /// Square of the momentum whose components are `comp(mu)` (each a
    /// single symbol).
    pub fn box_of(sq: impl Fn(usize) -> Mono) -> Self {
        Self::from_terms((0..4).map(|mu| (sq(mu), GR::int(if mu == 0 { -1 } else { 1 }))).collect())
    }

    pub fn terms(&self) -> &[(Mono, GR)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, GR)> {
        self.terms
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

    /// Value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GR> {
        match self.terms.as_slice() {
            [] => Some(GR::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// Maximal total degree in the symbols satisfying `pred`.
    pub fn degree_in(&self, pred: impl Fn(Sym) -> bool) -> u32 {
        self.terms
            .iter()
            .map(|t| t.0 .0.iter().filter(|p| pred(p.0)).map(|p| p.1).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.terms.iter().flat_map(|t| t.0 .0.iter().map(|p| p.0)).collect()
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        PolyKP { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // grlex is a monomial order, so the product stays sorted
        PolyKP { terms: self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect() }
    }

    pub fn add_assign_ref(&mut self, o: &PolyKP) {
        if o.terms.is_empty() {
            return;
        }
        if self.terms.is_empty() {
            self.terms = o.terms.clone();
            return;
        }
        *self = &*self + o;
    }

    /// `self += c · o`.
    pub fn add_scaled(&mut self, o: &PolyKP, c: &GR) {
        if c.is_zero() || o.is_zero() {
            return;
        }
        if self.terms.is_empty() {
            *self = o.scale(c);
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = o.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (m, x) = b.next().unwrap();
                    out.push((m.clone(), x * c));
                }
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => out.push(a.next().unwrap()),
                    Ordering::Greater => {
                        let (m, x) = b.next().unwrap();
                        out.push((m.clone(), x * c));
                    }
                    Ordering::Equal => {
                        let (m, mut x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        x += &(y * c);
                        if !x.is_zero() {
                            out.push((m, x));
                        }
                    }
                },
            }
        }
        self.terms = out;
    }

    /// Exact substitution of values for a subset of symbols.
    pub fn substitute(&self, bind: &HashMap<Sym, GR>) -> Self {
        if bind.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest: SmallVec<[(Sym, u32); 4]> = SmallVec::new();
            for &(s, e) in &m.0 {
                match bind.get(&s) {
                    Some(v) => coeff = &coeff * &v.pow(e),
                    None => rest.push((s, e)),
                }
            }
            if !coeff.is_zero() {
                out.push((Mono(rest), coeff));
            }
        }
        Self::from_terms(out)
    }

    /// Substitution of polynomials for a subset of symbols.
    pub fn substitute_poly(&self, bind: &HashMap<Sym, PolyKP>) -> Self {
        if bind.is_empty() || !self.terms.iter().any(|t| t.0 .0.iter().any(|p| bind.contains_key(&p.0))) {
            return self.clone();
        }
        let mut acc = PolyKP::zero();
        for (m, c) in &self.terms {
            let mut term = PolyKP::constant(c.clone());
            let mut rest: SmallVec<[(Sym, u32); 4]> = SmallVec::new();
            for &(s, e) in &m.0 {
                match bind.get(&s) {
                    Some(v) => {
                        for _ in 0..e {
                            term = &term * v;
                        }
                    }
                    None => rest.push((s, e)),
                }
            }
            let term = term.mul_mono(&Mono(rest), &GR::one());
            acc.add_assign_ref(&term);
        }
        acc
    }

    /// Full evaluation; every symbol must be bound.
    pub fn eval(&self, bind: &HashMap<Sym, GR>) -> Option<GR> {
        self.substitute(bind).as_constant()
    }

    /// Groups terms by their monomial in the symbols *not* satisfying
    /// `keep`; each group is a polynomial in the `keep` symbols.
    pub fn collect_by(&self, keep: impl Fn(Sym) -> bool) -> Vec<(Mono, PolyKP)> {
        let mut groups: HashMap<Mono, Vec<(Mono, GR)>> = HashMap::new();
        for (m, c) in &self.terms {
            let (inner, outer) = m.split(&keep);
            groups.entry(outer).or_default().push((inner, c.clone()));
        }
        let mut out: Vec<(Mono, PolyKP)> =
            groups.into_iter().map(|(o, t)| (o, PolyKP::from_terms(t))).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// ∂/∂s.
    pub fn derivative(&self, s: Sym) -> Self {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(s);
            if e == 0 {
                continue;
            }
            let pairs: Vec<(Sym, u32)> =
                m.0.iter().map(|&(t, f)| if t == s { (t, f - 1) } else { (t, f) }).collect();
            out.push((Mono::from_pairs(&pairs), c * &GR::int(e as i64)));
        }
        Self::from_terms(out)
    }
}

impl<'a> Add<&'a PolyKP> for &'a PolyKP {
    type Output = PolyKP;
    fn add(self, o: &PolyKP) -> PolyKP {
        let mut r = self.clone();
        r.add_scaled(o, &GR::one());
        r
    }
}

impl<'a> Sub<&'a PolyKP> for &'a PolyKP {
    type Output = PolyKP;
    fn sub(self, o: &PolyKP) -> PolyKP {
        let mut r = self.clone();
        r.add_scaled(o, &GR::int(-1));
        r
    }
}

impl<'a> Mul<&'a PolyKP> for &'a PolyKP {
    type Output = PolyKP;
    fn mul(self, o: &PolyKP) -> PolyKP {
        if self.is_zero() || o.is_zero() {
            return PolyKP::zero();
        }
        if let [(m, c)] = self.terms.as_slice() {
            return o.mul_mono(m, c);
        }
        if let [(m, c)] = o.terms.as_slice() {
            return self.mul_mono(m, c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                terms.push((a.mul(b), x * y));
            }
        }
        PolyKP::from_terms(terms)
    }
}

impl Neg for &PolyKP {
    type Output = PolyKP;
    fn neg(self) -> PolyKP {
        PolyKP { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for PolyKP {
    type Output = PolyKP;
    fn add(self, o: PolyKP) -> PolyKP {
        &self + &o
    }
}

impl Sub for PolyKP {
    type Output = PolyKP;
    fn sub(self, o: PolyKP) -> PolyKP {
        &self - &o
    }
}

impl Mul for PolyKP {
    type Output = PolyKP;
    fn mul(self, o: PolyKP) -> PolyKP {
        &self * &o
    }
}

impl Neg for PolyKP {
    type Output = PolyKP;
    fn neg(self) -> PolyKP {
        -&self
    }
}

impl From<GR> for PolyKP {
    fn from(c: GR) -> Self {
        PolyKP::constant(c)
    }
}

impl fmt::Display for PolyKP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyKP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    m: Vec<(Sym, u32)>,
    c: GR,
}

impl Serialize for PolyKP {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermJson> =
            self.terms.iter().map(|(m, c)| TermJson { m: m.0.to_vec(), c: c.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyKP {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(d)?;
        Ok(PolyKP::from_terms(v.into_iter().map(|t| (Mono::from_pairs(&t.m), t.c)).collect()))
    }
}
