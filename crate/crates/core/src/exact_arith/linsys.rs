use std::collections::{BTreeMap, HashMap};

use super::gaussian::GR;
use super::poly::{Mono, PolyKP, Sym};
use crate::error::YmError;

/// Equations `eq = 0`, affine in `unknowns` once every monomial in the
/// remaining symbols is split off as its own scalar equation.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub unknowns: Vec<Sym>,
    pub equations: Vec<PolyKP>,
}

impl LinearSystem {
    pub fn new(unknowns: Vec<Sym>) -> Self {
        Self { unknowns, equations: Vec::new() }
    }

    pub fn push(&mut self, eq: PolyKP) {
        if !eq.is_zero() {
            self.equations.push(eq);
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AffineSolution {
    /// Pivot unknowns expressed through free unknowns.
    pub solution: BTreeMap<Sym, PolyKP>,
    pub free: Vec<Sym>,
}

impl AffineSolution {
    pub fn bindings(&self) -> HashMap<Sym, PolyKP> {
        self.solution.iter().map(|(s, p)| (*s, p.clone())).collect()
    }

    pub fn apply(&self, p: &PolyKP) -> PolyKP {
        p.substitute_poly(&self.bindings())
    }
}

#[derive(Clone, Debug)]
struct Row {
    cols: Vec<(usize, GR)>,
    konst: GR,
}

impl Row {
    fn get(&self, c: usize) -> Option<&GR> {
        self.cols.binary_search_by_key(&c, |e| e.0).ok().map(|i| &self.cols[i].1)
    }

    /// `self += f · o`.
    fn axpy(&mut self, f: &GR, o: &Row) {
        let mut out = Vec::with_capacity(self.cols.len() + o.cols.len());
        let (mut i, mut j) = (0, 0);
        while i < self.cols.len() || j < o.cols.len() {
            let a = self.cols.get(i);
            let b = o.cols.get(j);
            match (a, b) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    let v = &x.1 + &(f * &y.1);
                    if !v.is_zero() {
                        out.push((x.0, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    out.push(x.clone());
                    i += 1;
                }
                (Some(x), None) => {
                    out.push(x.clone());
                    i += 1;
                }
                (_, Some(y)) => {
                    out.push((y.0, f * &y.1));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.cols = out;
        self.konst = &self.konst + &(f * &o.konst);
    }
}

/// Incremental reduced row echelon form over ℚ(i); pivot = smallest column.
#[derive(Clone, Debug, Default)]
pub struct Rref {
    rows: Vec<Row>,
    pivot_of: BTreeMap<usize, usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ coef·x_col + konst = 0`. Errors if it reduces to `c = 0`, c ≠ 0.
    pub fn insert(&mut self, cols: Vec<(usize, GR)>, konst: GR) -> Result<bool, YmError> {
        let mut acc: BTreeMap<usize, GR> = BTreeMap::new();
        for (c, v) in cols {
            let e = acc.entry(c).or_insert_with(GR::zero);
            *e += &v;
        }
        acc.retain(|_, v| !v.is_zero());
        let mut r = Row { cols: acc.into_iter().collect(), konst };
        let hits: Vec<(usize, GR)> =
            r.cols.iter().filter(|(c, _)| self.pivot_of.contains_key(c)).cloned().collect();
        for (c, v) in hits {
            let pr = &self.rows[self.pivot_of[&c]];
            r.axpy(&-v, pr);
        }
        let Some(&(p, ref lead)) = r.cols.first() else {
            if r.konst.is_zero() {
                return Ok(false);
            }
            return Err(YmError::Inconsistent(format!("0 = {}", r.konst)));
        };
        let inv = lead.inv();
        for e in r.cols.iter_mut() {
            e.1 = &e.1 * &inv;
        }
        r.konst = &r.konst * &inv;
        for row in self.rows.iter_mut() {
            if let Some(v) = row.get(p).cloned() {
                row.axpy(&-v, &r);
            }
        }
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push(r);
        Ok(true)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_of.keys().copied().collect()
    }

    /// For each pivot column: (column, −konst, [(free col, −coef)]).
    pub fn solved(&self) -> Vec<(usize, GR, Vec<(usize, GR)>)> {
        self.pivot_of
            .iter()
            .map(|(&p, &ri)| {
                let r = &self.rows[ri];
                let rest = r.cols.iter().filter(|e| e.0 != p).map(|(c, v)| (*c, -v)).collect();
                (p, -&r.konst, rest)
            })
            .collect()
    }
}

/// Splits a polynomial equation into scalar affine rows over `unknowns`.
pub(crate) fn expand_rows(
    eq: &PolyKP,
    index: &HashMap<Sym, usize>,
) -> Result<Vec<(Vec<(usize, GR)>, GR)>, YmError> {
    let mut out = Vec::new();
    for (_, inner) in eq.collect_by(|s| index.contains_key(&s)) {
        let mut cols = Vec::new();
        let mut konst = GR::zero();
        for (m, c) in inner.terms() {
            match m.0.as_slice() {
                [] => konst = c.clone(),
                [(s, 1)] => cols.push((index[s], c.clone())),
                _ => return Err(YmError::NotAffine(format!("{m}"))),
            }
        }
        out.push((cols, konst));
    }
    Ok(out)
}

/// Solves an affine system by RREF with pivots in unknown-list order.
pub fn solve_affine(sys: &LinearSystem) -> Result<AffineSolution, YmError> {
    let index: HashMap<Sym, usize> = sys.unknowns.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut rref = Rref::default();
    for eq in &sys.equations {
        for (cols, konst) in expand_rows(eq, &index)? {
            rref.insert(cols, konst)?;
        }
    }
    let mut solution = BTreeMap::new();
    let mut pivot = vec![false; sys.unknowns.len()];
    for (p, konst, rest) in rref.solved() {
        pivot[p] = true;
        let mut terms = vec![(Mono::one(), konst)];
        terms.extend(rest.into_iter().map(|(c, v)| (Mono::var(sys.unknowns[c]), v)));
        solution.insert(sys.unknowns[p], PolyKP::from_terms(terms));
    }
    let free = sys.unknowns.iter().zip(pivot).filter(|(_, p)| !p).map(|(s, _)| *s).collect();
    Ok(AffineSolution { solution, free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::poly::param_sym;

    #[test]
    fn small_systems() {
        let (x, y) = (param_sym(0), param_sym(1));
        let mut sys = LinearSystem::new(vec![x, y]);
        sys.push(&PolyKP::var(x) + &PolyKP::var(y).scale(&GR::i()));
        sys.push(&PolyKP::var(y) - &PolyKP::int(2));
        let sol = solve_affine(&sys).unwrap();
        assert_eq!(sol.solution[&x], PolyKP::constant(GR::cint(0, -2)));
        assert_eq!(sol.solution[&y], PolyKP::int(2));
        assert!(sol.free.is_empty());

        let mut sys = LinearSystem::new(vec![x]);
        sys.equations.push(&PolyKP::var(x) - &PolyKP::var(x));
        let sol = solve_affine(&sys).unwrap();
        assert_eq!(sol.free, vec![x]);
    }

    #[test]
    fn inconsistent_and_k_expansion() {
        let x = param_sym(0);
        let mut sys = LinearSystem::new(vec![x]);
        // k0·x − k0 = 0 and k1·x = 0 → x = 1 and x = 0
        sys.push(&(&PolyKP::k(0) * &PolyKP::var(x)) - &PolyKP::k(0));
        sys.push(&PolyKP::k(1) * &PolyKP::var(x));
        assert!(matches!(solve_affine(&sys), Err(YmError::Inconsistent(_))));
    }
}
