//! `theta.json`: the solved θ tables with the h they depend on and the
//! axiom verdicts.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::axioms::{verify_all, AxiomReport};
use super::theta::{d_star, h_star, mu_of, nu_of, product_terms, theta2, BvData};
use crate::error::{Result, YmError};
use crate::exact_arith::GR;
use crate::gerstenhaber::{gen, valg, GElement, VDerivation};
use crate::ym_complex::{HSolution, StructureTables, DIM};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    /// 1-based basis indices, non-decreasing.
    pub word: Vec<usize>,
    pub c: GR,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImageJson {
    pub target: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArityJson {
    pub arity: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub free: usize,
    pub images: Vec<ImageJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaCertificate {
    pub format: String,
    pub tool_version: String,
    pub fixture_sha256: String,
    pub h_sha256: String,
    pub nmax: usize,
    pub arities: Vec<ArityJson>,
    pub theta_sha256: String,
    pub verdicts: AxiomReport,
}

fn images_json(t: &StructureTables, x: &VDerivation) -> Vec<ImageJson> {
    x.images
        .iter()
        .enumerate()
        .map(|(o, img)| ImageJson {
            target: t.names[o].clone(),
            terms: product_terms(img)
                .into_iter()
                .map(|(w, c)| TermJson {
                    word: w.iter().map(|i| i + 1).collect(),
                    c: c.as_constant().expect("numeric coefficient"),
                })
                .collect(),
        })
        .collect()
}

fn tables_digest(arities: &[ArityJson]) -> String {
    let images: Vec<&Vec<ImageJson>> = arities.iter().map(|a| &a.images).collect();
    hex::encode(Sha256::digest(serde_json::to_string(&images).expect("serializable").as_bytes()))
}

impl ThetaCertificate {
    pub fn new(t: &StructureTables, h: &HSolution, data: &BvData, verdicts: AxiomReport) -> Self {
        let arities: Vec<ArityJson> = data
            .solves
            .iter()
            .map(|s| ArityJson {
                arity: s.arity,
                unknowns: s.unknowns,
                equations: s.equations,
                free: s.free.len(),
                images: images_json(t, &s.theta),
            })
            .collect();
        Self {
            format: "theta/1".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            fixture_sha256: t.checksum.clone(),
            h_sha256: h.digest(),
            nmax: data.nmax(),
            theta_sha256: tables_digest(&arities),
            arities,
            verdicts,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text).map_err(|e| YmError::Certificate(e.to_string()))?;
        if c.format != "theta/1" {
            return Err(YmError::Certificate(format!("format {}", c.format)));
        }
        let actual = tables_digest(&c.arities);
        if actual != c.theta_sha256 {
            return Err(YmError::ChecksumMismatch { expected: c.theta_sha256.clone(), actual });
        }
        Ok(c)
    }

    /// Rebuilds ν, μ from the stored θ tables and the given h.
    pub fn to_data(&self, t: &StructureTables, h: &HSolution) -> Result<BvData> {
        if self.fixture_sha256 != t.checksum {
            return Err(YmError::ChecksumMismatch { expected: self.fixture_sha256.clone(), actual: t.checksum.clone() });
        }
        if self.h_sha256 != h.digest() {
            return Err(YmError::ChecksumMismatch { expected: self.h_sha256.clone(), actual: h.digest() });
        }
        let alg = valg();
        let d = d_star(t);
        let hs = h_star(h);
        let z = VDerivation::zero(0, 0);
        let th2 = theta2(t);
        let nu2 = nu_of(&th2);
        let mu2 = mu_of(&hs, &nu2);
        let mut data = BvData {
            d,
            h: hs,
            theta: vec![z.clone(), z.clone(), th2],
            nu: vec![z.clone(), z.clone(), nu2],
            mu: vec![z.clone(), z, mu2],
            solves: Vec::new(),
        };
        for (i, a) in self.arities.iter().enumerate() {
            if a.arity != i + 3 || a.images.len() != DIM {
                return Err(YmError::Certificate(format!("arity block {i}")));
            }
            let images = a
                .images
                .iter()
                .map(|img| {
                    let mut v = GElement::zero();
                    for term in &img.terms {
                        if term.word.len() != a.arity || term.word.iter().any(|i| *i == 0 || *i > DIM) {
                            return Err(YmError::Certificate(format!("word {:?}", term.word)));
                        }
                        let mut x = gen(term.word[0] - 1);
                        for i in &term.word[1..] {
                            x = alg.mul(&x, &gen(i - 1));
                        }
                        v.add_scaled(&x, &term.c);
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            let theta = VDerivation::new(2, a.arity as i32 - 1, images);
            let nu = nu_of(&theta);
            let mu = mu_of(&data.h, &nu);
            data.theta.push(theta);
            data.nu.push(nu);
            data.mu.push(mu);
        }
        Ok(data)
    }

    /// Re-evaluates every axiom from the stored tables; the stored verdicts
    /// must agree.
    pub fn recheck(&self, t: &StructureTables, h: &HSolution) -> Result<AxiomReport> {
        let data = self.to_data(t, h)?;
        let report = verify_all(&data);
        if report != self.verdicts {
            return Err(YmError::Certificate("recomputed verdicts differ from the certificate".into()));
        }
        Ok(report)
    }
}
