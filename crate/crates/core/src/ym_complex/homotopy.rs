use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::fiber::matmul_poly;
use super::tables::{symbolic_k, StructureTables, DIM};
use crate::error::{Result, YmError};
use crate::exact_arith::poly::{is_param, sym_name};
use crate::exact_arith::{
    find_instance, param_sym, solve_affine, FindInstanceOptions, LinearSystem, PolyKP, Sym, GR,
};

pub type PolyMat = Vec<Vec<PolyKP>>;

/// Parametric homotopy: entry (i,j) nonzero only when `deg i = deg j − 1`;
/// Σ_μ u·k_μ on a diagonal row step, a bare `u` one row down, zero otherwise.
pub fn h_ansatz(t: &StructureTables) -> (PolyMat, Vec<Sym>) {
    let mut m = vec![vec![PolyKP::zero(); DIM]; DIM];
    let mut params = Vec::new();
    let mut fresh = || {
        let s = param_sym(params.len());
        params.push(s);
        s
    };
    for i in 0..DIM {
        for j in 0..DIM {
            if t.deg[i] != t.deg[j] - 1 {
                continue;
            }
            match t.rdeg[i] - t.rdeg[j] {
                0 => {
                    for mu in 0..4 {
                        m[i][j] = &m[i][j] + &(&PolyKP::var(fresh()) * &PolyKP::k(mu));
                    }
                }
                -1 => m[i][j] = PolyKP::var(fresh()),
                _ => {}
            }
        }
    }
    (m, params)
}

/// A resolved homotopy `h` with `h² = 0` and `dh + hd = □`.
#[derive(Clone, Debug, PartialEq)]
pub struct HSolution {
    /// Primal matrix: `h e_j = Σ_i matrix[i][j] e_i`, linear in k.
    pub matrix: PolyMat,
    pub assignment: BTreeMap<Sym, GR>,
}

#[derive(Serialize, Deserialize)]
struct HJson {
    format: String,
    fixture_sha256: String,
    matrix_sha256: String,
    assignment: BTreeMap<String, GR>,
    entries: Vec<(usize, usize, PolyKP)>,
}

impl HSolution {
    fn entries(&self) -> Vec<(usize, usize, PolyKP)> {
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in 0..DIM {
                if !self.matrix[i][j].is_zero() {
                    out.push((i + 1, j + 1, self.matrix[i][j].clone()));
                }
            }
        }
        out
    }

    /// SHA-256 of the canonical entry list.
    pub fn digest(&self) -> String {
        let s = serde_json::to_string(&self.entries()).expect("serializable");
        hex::encode(Sha256::digest(s.as_bytes()))
    }

    pub fn to_json(&self, t: &StructureTables) -> String {
        let j = HJson {
            format: "h/1".into(),
            fixture_sha256: t.checksum.clone(),
            matrix_sha256: self.digest(),
            assignment: self.assignment.iter().map(|(s, v)| (sym_name(*s), v.clone())).collect(),
            entries: self.entries(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: HJson = serde_json::from_str(text).map_err(|e| YmError::Certificate(e.to_string()))?;
        let mut matrix = vec![vec![PolyKP::zero(); DIM]; DIM];
        for (i, jj, p) in j.entries {
            if i == 0 || jj == 0 || i > DIM || jj > DIM {
                return Err(YmError::Certificate(format!("entry index ({i},{jj})")));
            }
            matrix[i - 1][jj - 1] = p;
        }
        let assignment = j
            .assignment
            .into_iter()
            .map(|(k, v)| {
                let n: usize = k
                    .strip_prefix('u')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| YmError::Certificate(format!("parameter name {k}")))?;
                Ok((param_sym(n), v))
            })
            .collect::<Result<_>>()?;
        let h = HSolution { matrix, assignment };
        if h.digest() != j.matrix_sha256 {
            return Err(YmError::ChecksumMismatch { expected: j.matrix_sha256, actual: h.digest() });
        }
        Ok(h)
    }

    /// `h` at momentum with components `k`.
    pub fn at(&self, k: &[PolyKP; 4]) -> PolyMat {
        let bind: HashMap<Sym, PolyKP> = (0..4).map(|mu| (mu as Sym, k[mu].clone())).collect();
        self.matrix.iter().map(|r| r.iter().map(|x| x.substitute_poly(&bind)).collect()).collect()
    }
}

fn box_identity_residual(d: &PolyMat, h: &PolyMat) -> PolyMat {
    let dh = matmul_poly(d, h);
    let hd = matmul_poly(h, d);
    let q = PolyKP::box_k();
    let mut r = vec![vec![PolyKP::zero(); DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            r[i][j] = &dh[i][j] + &hd[i][j];
            if i == j {
                r[i][j] = &r[i][j] - &q;
            }
        }
    }
    r
}

/// Solves the ansatz: affine part `dh + hd = □` then `h² = 0` by instance
/// search.
pub fn solve_h(t: &StructureTables, opts: &FindInstanceOptions) -> Result<HSolution> {
    let (h, params) = h_ansatz(t);
    let d = t.dmatrix(&symbolic_k());
    let mut sys = LinearSystem::new(params.clone());
    for row in box_identity_residual(&d, &h) {
        for e in row {
            sys.push(e);
        }
    }
    let sol = solve_affine(&sys)?;
    let binds = sol.bindings();
    let h1: PolyMat = h.iter().map(|r| r.iter().map(|x| x.substitute_poly(&binds)).collect()).collect();
    let sq = matmul_poly(&h1, &h1);
    let eqs: Vec<PolyKP> = sq.into_iter().flatten().filter(|e| !e.is_zero()).collect();
    let inst = find_instance(&eqs, &sol.free, opts)?;
    let mut assignment: BTreeMap<Sym, GR> = inst.clone().into_iter().collect();
    for (s, expr) in &sol.solution {
        let v = expr.substitute(&inst).as_constant().ok_or_else(|| YmError::NotFound("unresolved pivot".into()))?;
        assignment.insert(*s, v);
    }
    let full: HashMap<Sym, GR> = assignment.iter().map(|(s, v)| (*s, v.clone())).collect();
    let matrix = h.iter().map(|r| r.iter().map(|x| x.substitute(&full)).collect()).collect();
    Ok(HSolution { matrix, assignment })
}

/// Candidate order used for the second, independent homotopy.
pub fn alternate_candidates() -> Vec<GR> {
    let mut c = crate::exact_arith::default_candidates();
    c.rotate_left(1);
    c
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HReport {
    pub square_zero: bool,
    pub homotopy: bool,
    pub pattern: bool,
}

impl HReport {
    pub fn all_pass(&self) -> bool {
        self.square_zero && self.homotopy && self.pattern
    }
}

/// Checks `h² = 0`, `dh + hd = □` symbolically in k and the sparsity/degree
/// pattern of the ansatz.
pub fn verify_h(t: &StructureTables, h: &PolyMat) -> HReport {
    let d = t.dmatrix(&symbolic_k());
    let square_zero = matmul_poly(h, h).iter().flatten().all(|x| x.is_zero());
    let homotopy = box_identity_residual(&d, h).iter().flatten().all(|x| x.is_zero());
    let mut pattern = true;
    for i in 0..DIM {
        for j in 0..DIM {
            let x = &h[i][j];
            if x.is_zero() {
                continue;
            }
            let ok = t.deg[i] == t.deg[j] - 1
                && !x.symbols().iter().any(|s| is_param(*s))
                && match t.rdeg[i] - t.rdeg[j] {
                    0 => x.terms().iter().all(|(m, _)| m.degree() == 1 && m.0.iter().all(|p| p.0 < 4)),
                    -1 => x.as_constant().is_some(),
                    _ => false,
                };
            pattern &= ok;
        }
    }
    HReport { square_zero, homotopy, pattern }
}
