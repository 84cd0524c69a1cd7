use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, YmError};
use crate::exact_arith::{PolyKP, GR};

pub const DIM: usize = 16;

const FIXTURE: &str = include_str!("../../data/ym16.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ProdEntry {
    o: usize,
    a: usize,
    b: usize,
    c: GR,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DEntry {
    i: usize,
    j: usize,
    c: GR,
    k: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawTables {
    names: Vec<String>,
    deg: Vec<i32>,
    rdeg: Vec<i32>,
    prod: Vec<ProdEntry>,
    dmat: Vec<DEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Fixture {
    format: String,
    sha256: String,
    tables: serde_json::Value,
}

/// Structure constants of the fiber model, 0-based.
///
/// `prod[(a, b)]` lists `(o, c)` with `e_a · e_b = Σ c e_o`;
/// `dmat` lists `(i, j, c, mu)` with `d e_j ∋ c · k_mu · e_i` (`mu = None`
/// for a constant entry).
#[derive(Clone, Debug)]
pub struct StructureTables {
    pub names: Vec<String>,
    /// Shifted degree of each basis vector (degree in `V`).
    pub deg: [i32; DIM],
    pub rdeg: [i32; DIM],
    pub prod_entries: Vec<(usize, usize, usize, GR)>,
    prod: Vec<Vec<(usize, GR)>>,
    pub dmat_entries: Vec<(usize, usize, GR, Option<usize>)>,
    pub checksum: String,
}

impl StructureTables {
    pub fn from_json(text: &str) -> Result<Self> {
        let fx: Fixture = serde_json::from_str(text).map_err(|e| YmError::Fixture(e.to_string()))?;
        let body = serde_json::to_string(&fx.tables).map_err(|e| YmError::Fixture(e.to_string()))?;
        let actual = hex::encode(Sha256::digest(body.as_bytes()));
        if actual != fx.sha256 {
            return Err(YmError::ChecksumMismatch { expected: fx.sha256, actual });
        }
        let raw: RawTables = serde_json::from_value(fx.tables).map_err(|e| YmError::Fixture(e.to_string()))?;
        if raw.names.len() != DIM || raw.deg.len() != DIM || raw.rdeg.len() != DIM {
            return Err(YmError::Fixture("basis length".into()));
        }
        let mut prod = vec![Vec::new(); DIM * DIM];
        let mut prod_entries = Vec::new();
        for e in &raw.prod {
            let (o, a, b) = (e.o - 1, e.a - 1, e.b - 1);
            prod[a * DIM + b].push((o, e.c.clone()));
            prod_entries.push((o, a, b, e.c.clone()));
        }
        let dmat_entries = raw.dmat.iter().map(|e| (e.i - 1, e.j - 1, e.c.clone(), e.k)).collect();
        Ok(StructureTables {
            names: raw.names,
            deg: raw.deg.try_into().unwrap(),
            rdeg: raw.rdeg.try_into().unwrap(),
            prod_entries,
            prod,
            dmat_entries,
            checksum: actual,
        })
    }

    /// The embedded fixture, parsed once.
    pub fn get() -> &'static StructureTables {
        static T: OnceLock<StructureTables> = OnceLock::new();
        T.get_or_init(|| load_structure_tables().expect("embedded fixture is valid"))
    }

    /// Degree in the dgca (`deg + 2`).
    pub fn unshifted(&self, i: usize) -> i32 {
        self.deg[i] + 2
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `e_a · e_b`.
    pub fn product(&self, a: usize, b: usize) -> &[(usize, GR)] {
        &self.prod[a * DIM + b]
    }

    pub fn prod_coeff(&self, o: usize, a: usize, b: usize) -> GR {
        self.product(a, b).iter().find(|e| e.0 == o).map_or_else(GR::zero, |e| e.1.clone())
    }

    /// Primal matrix of `d` at momentum `k` (components may be symbolic).
    pub fn dmatrix(&self, k: &[PolyKP; 4]) -> Vec<Vec<PolyKP>> {
        let mut m = vec![vec![PolyKP::zero(); DIM]; DIM];
        for (i, j, c, mu) in &self.dmat_entries {
            let v = match mu {
                Some(mu) => k[*mu].scale(c),
                None => PolyKP::constant(c.clone()),
            };
            m[*i][*j].add_assign_ref(&v);
        }
        m
    }

    /// Basis indices of unshifted degree `p`.
    pub fn of_degree(&self, p: i32) -> Vec<usize> {
        (0..DIM).filter(|&i| self.unshifted(i) == p).collect()
    }
}

pub fn load_structure_tables() -> Result<StructureTables> {
    StructureTables::from_json(FIXTURE)
}

pub fn fixture_text() -> &'static str {
    FIXTURE
}

/// The symbolic momentum (k₀, k₁, k₂, k₃).
pub fn symbolic_k() -> [PolyKP; 4] {
    [PolyKP::k(0), PolyKP::k(1), PolyKP::k(2), PolyKP::k(3)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_entries() {
        let t = StructureTables::get();
        assert_eq!(t.prod_entries.len(), 81);
        assert_eq!(t.dmat_entries.len(), 35);
        assert_eq!(t.prod_coeff(15, 5, 8), GR::cint(0, 2));
        assert_eq!(t.prod_coeff(5, 1, 2), GR::ratio(1, 2));
        let d = t.dmatrix(&symbolic_k());
        assert_eq!(d[1][0], PolyKP::k(0));
        assert_eq!(t.deg, [-2, -1, -1, -1, -1, 0, 0, 0, -1, -1, -1, 0, 0, 0, 0, 1]);
        assert_eq!(t.rdeg, [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn corrupted_fixture_is_rejected() {
        let bad = FIXTURE.replacen("\"1/2\"", "\"1/3\"", 1);
        assert!(matches!(StructureTables::from_json(&bad), Err(YmError::ChecksumMismatch { .. })));
    }
}
