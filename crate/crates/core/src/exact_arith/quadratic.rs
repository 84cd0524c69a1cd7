use std::collections::{BTreeSet, HashMap};

use super::gaussian::GR;
use super::linsys::{solve_affine, LinearSystem};
use super::poly::{PolyKP, Sym};
use super::rational::Rat;
use crate::error::YmError;

/// Candidate values tried, in order, for each free unknown.
pub fn default_candidates() -> Vec<GR> {
    vec![
        GR::zero(),
        GR::one(),
        GR::int(-1),
        GR::i(),
        GR::cint(0, -1),
        GR::ratio(1, 2),
        GR::cint(0, 2),
        GR::cint(0, -2),
        GR::int(2),
        GR::int(-2),
    ]
}

#[derive(Clone, Debug)]
pub struct FindInstanceOptions {
    pub candidates: Vec<GR>,
    /// Upper bound on search nodes before giving up with `NotFound`.
    pub max_nodes: usize,
}

impl Default for FindInstanceOptions {
    fn default() -> Self {
        Self { candidates: default_candidates(), max_nodes: 200_000 }
    }
}

struct Search<'a> {
    unknowns: &'a [Sym],
    opts: &'a FindInstanceOptions,
    nodes: usize,
}

type Bindings = Vec<(Sym, PolyKP)>;

impl Search<'_> {
    /// Repeatedly solves the affine subset and substitutes it back.
    fn propagate(&self, mut eqs: Vec<PolyKP>, binds: &mut Bindings) -> Option<Vec<PolyKP>> {
        loop {
            let mut lin = Vec::new();
            for e in &eqs {
                if let Some(c) = e.as_constant() {
                    if !c.is_zero() {
                        return None;
                    }
                } else if e.total_degree() <= 1 {
                    lin.push(e.clone());
                }
            }
            if lin.is_empty() {
                return Some(eqs);
            }
            let vars: BTreeSet<Sym> = lin.iter().flat_map(|e| e.symbols()).collect();
            let order: Vec<Sym> = self.unknowns.iter().copied().filter(|s| vars.contains(s)).collect();
            let sol = solve_affine(&LinearSystem { unknowns: order, equations: lin }).ok()?;
            let b = sol.bindings();
            binds.extend(sol.solution.into_iter());
            eqs = eqs.iter().map(|e| e.substitute_poly(&b)).filter(|e| !e.is_zero()).collect();
        }
    }

    fn run(&mut self, eqs: Vec<PolyKP>, binds: &mut Bindings) -> Option<()> {
        self.nodes += 1;
        if self.nodes > self.opts.max_nodes {
            return None;
        }
        let mark = binds.len();
        let Some(eqs) = self.propagate(eqs, binds) else {
            binds.truncate(mark);
            return None;
        };
        let live: BTreeSet<Sym> = eqs.iter().flat_map(|e| e.symbols()).collect();
        let Some(&v) = self.unknowns.iter().find(|s| live.contains(s)) else {
            return Some(());
        };
        for c in &self.opts.candidates {
            let m: HashMap<Sym, GR> = [(v, c.clone())].into_iter().collect();
            let next: Vec<PolyKP> = eqs.iter().map(|e| e.substitute(&m)).filter(|e| !e.is_zero()).collect();
            let inner = binds.len();
            binds.push((v, PolyKP::constant(c.clone())));
            if self.run(next, binds).is_some() {
                return Some(());
            }
            binds.truncate(inner);
        }
        binds.truncate(mark);
        None
    }
}

/// Finds an exact solution of polynomial equations (total degree ≤ 2 in
/// `unknowns`) by backtracking over candidate values with affine propagation.
/// Unknowns left unconstrained are set to zero.
pub fn find_instance(
    equations: &[PolyKP],
    unknowns: &[Sym],
    opts: &FindInstanceOptions,
) -> Result<HashMap<Sym, GR>, YmError> {
    let unk: BTreeSet<Sym> = unknowns.iter().copied().collect();
    let mut scalar = Vec::new();
    for e in equations {
        if e.degree_in(|s| unk.contains(&s)) > 2 {
            return Err(YmError::NotAffine(format!("degree > 2: {e}")));
        }
        for (_, inner) in e.collect_by(|s| unk.contains(&s)) {
            scalar.push(inner);
        }
    }
    let mut search = Search { unknowns, opts, nodes: 0 };
    let mut binds = Vec::new();
    if search.run(scalar, &mut binds).is_none() {
        return Err(YmError::NotFound(format!("after {} search nodes", search.nodes)));
    }
    let mut values: HashMap<Sym, GR> = HashMap::new();
    let bound: BTreeSet<Sym> = binds.iter().map(|b| b.0).collect();
    for s in unknowns {
        if !bound.contains(s) {
            values.insert(*s, GR::zero());
        }
    }
    for (s, expr) in binds.iter().rev() {
        let v = expr.substitute(&values);
        let v = v.as_constant().unwrap_or_else(|| {
            // symbols introduced later and never constrained are zero
            let zeros: HashMap<Sym, GR> = v.symbols().into_iter().map(|t| (t, GR::zero())).collect();
            v.substitute(&zeros).as_constant().expect("constant after zeroing")
        });
        values.insert(*s, v);
    }
    Ok(values)
}

/// Convenience for the rational candidate `n/d`.
pub fn rat(n: i64, d: i64) -> GR {
    GR::real(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::poly::param_sym;

    #[test]
    fn examples() {
        let (u, v) = (param_sym(0), param_sym(1));
        let pu = PolyKP::var(u);
        let eq = &(&pu * &pu) - &PolyKP::int(1);
        let s = find_instance(&[eq], &[u], &FindInstanceOptions::default()).unwrap();
        assert_eq!(s[&u], GR::one());

        let e1 = &(&pu * &PolyKP::var(v)) - &PolyKP::constant(GR::cint(0, 2));
        let e2 = &pu - &PolyKP::int(1);
        let s = find_instance(&[e1, e2], &[u, v], &FindInstanceOptions::default()).unwrap();
        assert_eq!(s[&u], GR::one());
        assert_eq!(s[&v], GR::cint(0, 2));
    }

    #[test]
    fn not_found() {
        let u = param_sym(0);
        let pu = PolyKP::var(u);
        let eq = &(&pu * &pu) - &PolyKP::int(3);
        assert!(matches!(
            find_instance(&[eq], &[u], &FindInstanceOptions::default()),
            Err(YmError::NotFound(_))
        ));
    }
}
