use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::axioms::*;
use super::certificate::ThetaCertificate;
use super::primal::*;
use super::theta::*;
use crate::exact_arith::{FindInstanceOptions, PolyKP};
use crate::gerstenhaber::{valg, VDerivation};
use crate::ym_complex::homotopy::alternate_candidates;
use crate::ym_complex::{basis_vec, fiber_product, solve_h, HSolution, StructureTables, DIM};

fn pipeline() -> &'static (HSolution, BvData) {
    static P: OnceLock<(HSolution, BvData)> = OnceLock::new();
    P.get_or_init(|| {
        let t = StructureTables::get();
        let h = solve_h(t, &FindInstanceOptions::default()).unwrap();
        let data = build(t, &h, 3).unwrap();
        (h, data)
    })
}

fn pure_products(x: &VDerivation) -> bool {
    let alg = valg();
    x.images.iter().all(|g| g.terms.keys().all(|w| w.iter().all(|a| alg.atoms.ndeg(*a) == 1)))
}

/// Words with exactly one two-letter bracket and otherwise letters.
fn one_bracket(x: &VDerivation) -> bool {
    let alg = valg();
    x.images.iter().all(|g| {
        g.terms.keys().all(|w| {
            let n: Vec<u32> = w.iter().map(|a| alg.atoms.ndeg(*a)).collect();
            n.iter().filter(|k| **k == 2).count() == 1 && n.iter().all(|k| *k <= 2)
        })
    })
}

#[test]
fn theta2_is_the_product() {
    let t = StructureTables::get();
    let (_, data) = pipeline();
    let th2 = &data.theta[2];
    assert_eq!((th2.deg, th2.ndeg), (2, 1));
    let p2 = PrimalMap::from_dual(t, th2, 2);
    for a in 0..DIM {
        for b in 0..DIM {
            assert_eq!(p2.on_basis(&[a, b]), fiber_product(t, &basis_vec(a), &basis_vec(b)));
        }
    }
    let nu2 = &data.nu[2];
    assert!(nu_of(nu2).is_zero(), "d_α ν₂ = 0");
    assert!(bracket(nu2, nu2).is_zero(), "associativity");
    assert!(bracket(&data.d, nu2).is_zero(), "Leibniz");
    assert!(q_of(2, &data.mu, &data.nu).is_zero());
}

#[test]
fn ansatz_matches_brute_force() {
    let t = StructureTables::get();
    for o in 0..DIM {
        let mut brute = BTreeSet::new();
        for n in 0..DIM.pow(3) {
            let mut w = vec![n / (DIM * DIM), (n / DIM) % DIM, n % DIM];
            w.sort_unstable();
            let odd_repeat = w.windows(2).any(|p| p[0] == p[1] && t.deg[p[0]] % 2 != 0);
            let deg: i32 = w.iter().map(|i| t.deg[*i]).sum();
            let rdeg: i32 = w.iter().map(|i| t.rdeg[*i]).sum();
            if !odd_repeat && deg + 2 == t.deg[o] && rdeg == t.rdeg[o] {
                brute.insert(w);
            }
        }
        let words = ansatz_words(t, o, 3);
        assert_eq!(words.iter().cloned().collect::<BTreeSet<_>>(), brute);
        assert_eq!(words.len(), brute.len(), "no duplicates");
    }
    let (th, params) = theta_ansatz(t, 3, 0);
    assert_eq!(params.len(), (0..DIM).map(|o| ansatz_words(t, o, 3).len()).sum::<usize>());
    assert!(th.images.iter().all(|g| g.terms.keys().all(|w| w.len() == 3)));
}

#[test]
fn theta3_unique_and_sectors() {
    let t = StructureTables::get();
    let (_, data) = pipeline();
    let s = &data.solves[0];
    assert_eq!(s.arity, 3);
    assert!(s.free.is_empty(), "θ₃ is unique");
    assert!(!data.theta[3].is_zero());
    for k in 2..=3 {
        assert!(pure_products(&data.mu[k]), "μ_{k} lands in products of letters");
        assert!(one_bracket(&data.nu[k]), "ν_{k} has one bracket");
        assert_eq!(crate::gerstenhaber::big_gamma(valg(), &data.nu[k]).images, data.theta[k].images);
    }
    assert!(pure_products(&q_of(3, &data.mu, &data.nu)));
    assert!(bracket(&data.d, &q_of(3, &data.mu, &data.nu)).is_zero(), "[d, q₃] = 0");
    // row typing of the solved table
    for (o, img) in data.theta[3].images.iter().enumerate() {
        for (w, _) in product_terms(img) {
            assert_eq!(w.iter().map(|i| t.rdeg[*i]).sum::<i32>(), t.rdeg[o]);
            assert_eq!(w.iter().map(|i| t.deg[*i]).sum::<i32>() + 2, t.deg[o]);
        }
    }
}

#[test]
fn axioms_hold_through_arity_three() {
    let (_, data) = pipeline();
    let r = verify_all(data);
    assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    assert!(r.verdicts.len() >= 20);
}

#[test]
fn theta3_on_the_fiber() {
    let t = StructureTables::get();
    let (h, data) = pipeline();
    let p3 = theta3_primal(t, &data.theta[3]);
    assert!(is_graded_symmetric(t, &p3));
    assert!(exactness_failures(t, h, &p3).is_empty());
    assert!(identity4_failures(t, &p3).is_empty());
    // the normalization is forced: the even spread alone fails
    let raw = PrimalMap::from_dual(t, &data.theta[3], 3);
    assert!(!exactness_failures(t, h, &raw).is_empty());
}

#[test]
fn tampered_theta3_fails_with_witness() {
    let (_, data) = pipeline();
    let mut bad = data.clone();
    let o = bad.theta[3].images.iter().position(|g| !g.is_zero()).unwrap();
    let mut img = bad.theta[3].images[o].clone();
    let w = img.terms.keys().next().unwrap().clone();
    img.add_term(w, &PolyKP::int(1));
    let mut images = bad.theta[3].images.clone();
    images[o] = img;
    bad.theta[3] = VDerivation::new(2, 2, images);
    bad.nu[3] = nu_of(&bad.theta[3]);
    bad.mu[3] = mu_of(&bad.h, &bad.nu[3]);
    let r = verify_all(&bad);
    let f: Vec<_> = r.failures().collect();
    assert!(!f.is_empty());
    assert!(f.iter().all(|v| v.witness.is_some()));
}

#[test]
fn second_homotopy_also_certifies() {
    let t = StructureTables::get();
    let (h1, _) = pipeline();
    let opts = FindInstanceOptions { candidates: alternate_candidates(), ..Default::default() };
    let h2 = solve_h(t, &opts).unwrap();
    assert_ne!(h2.matrix, h1.matrix);
    let data2 = build(t, &h2, 3).unwrap();
    assert!(data2.solves[0].free.is_empty());
    assert!(verify_all(&data2).all_pass());
    let p3 = theta3_primal(t, &data2.theta[3]);
    assert!(exactness_failures(t, &h2, &p3).is_empty());
    assert!(identity4_failures(t, &p3).is_empty());
}

#[test]
fn certificate_round_trip_and_recheck() {
    let t = StructureTables::get();
    let (h, data) = pipeline();
    let cert = ThetaCertificate::new(t, h, data, verify_all(data));
    let text = cert.to_json();
    let back = ThetaCertificate::from_json(&text).unwrap();
    assert_eq!(back, cert);
    assert!(back.recheck(t, h).unwrap().all_pass());
    let rebuilt = back.to_data(t, h).unwrap();
    assert_eq!(rebuilt.theta[3].images, data.theta[3].images);
    // a perturbed coefficient breaks the table digest
    let tampered = text.replacen("\"re\": \"", "\"re\": \"1", 1);
    assert!(ThetaCertificate::from_json(&tampered).is_err());
}

#[test]
fn arity_four_unique_and_axioms() {
    let t = StructureTables::get();
    let (h, _) = pipeline();
    let data = build(t, h, 4).unwrap();
    assert!(data.solves.iter().all(|s| s.free.is_empty()));
    let r = verify_all(&data);
    assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
}
