use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::checks::{coderivation_square, random_cletter};
use super::*;
use crate::bv_infinity::build;
use crate::exact_arith::{FindInstanceOptions, PolyKP, GR};
use crate::gerstenhaber::{valg, DecoratedGenerator, GElement, GWord};
use crate::ym_complex::{solve_h, HSolution, StructureTables, DIM};

fn h() -> &'static HSolution {
    static H: OnceLock<HSolution> = OnceLock::new();
    H.get_or_init(|| solve_h(StructureTables::get(), &FindInstanceOptions::default()).unwrap())
}

/// Exact for words-of-words with at most four V-letters.
fn cobar() -> &'static Cobar {
    static C: OnceLock<Cobar> = OnceLock::new();
    C.get_or_init(|| {
        let data = build(StructureTables::get(), h(), 4).unwrap();
        Cobar::new(Arc::new(Cofree::new(&data)))
    })
}

type Pairs = BTreeMap<(GWord, GWord), GR>;

/// `⟨w, op(u, v)⟩` over all basis words `u`, `v` splitting the letters of `w`.
fn brute_coproduct(w: &GWord, op: impl Fn(&GWord, &GWord) -> GElement) -> Pairs {
    let alg = valg();
    let cf = cobar().cofree();
    let letters = alg.word_letters(w);
    let m = letters.len();
    let mut out = Pairs::new();
    for mask in 1u32..((1 << m) - 1) {
        let pick = |inside: bool| -> Vec<u32> {
            (0..m).filter(|i| (mask & (1 << i) != 0) == inside).map(|i| letters[i]).collect()
        };
        for u in cf.sector(&pick(true)).iter() {
            for v in cf.sector(&pick(false)).iter() {
                if let Some(c) = op(u, v).terms.get(w) {
                    out.insert((u.clone(), v.clone()), c.as_constant().unwrap());
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn as_pairs(v: Vec<(GWord, GWord, GR)>) -> Pairs {
    v.into_iter().map(|(a, b, c)| ((a, b), c)).collect()
}

#[test]
fn coproducts_match_brute_force() {
    let cb = cobar();
    let cf = cb.cofree();
    let alg = valg();
    let word = |u: &GWord| GElement::word(u.clone(), PolyKP::int(1));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut n0, mut n1) = (0, 0);
    for n in 1..=4 {
        for _ in 0..12 {
            let w = random_cletter(cb, &mut rng, n);
            let d0 = as_pairs(cf.delta0(&w));
            let d1 = as_pairs(cf.delta_m1(&w));
            assert_eq!(d0, brute_coproduct(&w, |u, v| alg.mul(&word(u), &word(v))));
            assert_eq!(d1, brute_coproduct(&w, |u, v| alg.bracket(&word(u), &word(v))));
            if n == 1 {
                assert!(d0.is_empty() && d1.is_empty());
            }
            n0 += d0.len();
            n1 += d1.len();
        }
    }
    assert!(n0 > 0 && n1 > 0);
}

#[test]
fn product_of_two_generators_splits() {
    let cf = cobar().cofree();
    let alg = valg();
    let (a, b) = (DecoratedGenerator::plain(1).encode(), DecoratedGenerator::plain(2).encode());
    let x = alg.mul(&GElement::atom(a), &GElement::atom(b));
    let (w, _) = x.terms.iter().next().unwrap();
    let d0 = cf.delta0(w);
    assert_eq!(d0.len(), 2);
    assert!(d0.iter().all(|(u, v, c)| u.len() == 1 && v.len() == 1 && (*c == GR::one() || *c == -GR::one())));
    assert!(cf.delta_m1(w).is_empty());
}

/// `c·k_μ` (μ = Some) or a constant `c`, read off a linear entry.
fn linear_parts(p: &PolyKP) -> Vec<(Option<usize>, GR)> {
    p.terms()
        .iter()
        .map(|(m, c)| match m.0.as_slice() {
            [] => (None, c.clone()),
            [(s, 1)] if (*s as usize) < 4 => (Some(*s as usize), c.clone()),
            _ => panic!("nonlinear entry"),
        })
        .collect()
}

/// On a one-letter C-letter `(∂^κ x*_j)*`, `d_A` and `h_A` lower through the
/// primal matrix entries: `M[j][i] ∋ c·k_μ` gives `c·(∂^{κ−μ} x*_i)*`.
fn lowered(entries: &[(usize, usize, Option<usize>, GR)], g: DecoratedGenerator) -> GElement {
    let cb = cobar();
    let mut out = GElement::zero();
    for (j, i, mu, c) in entries {
        if *i != g.basis {
            continue;
        }
        let mut kexp = g.kexp;
        if let Some(mu) = mu {
            if kexp[*mu] == 0 {
                continue;
            }
            kexp[*mu] -= 1;
        }
        out.add_scaled(&cb.letter(&cb.cofree().generator(*j, kexp)), c);
    }
    out
}

#[test]
fn single_letters_lower_through_the_matrices() {
    let t = StructureTables::get();
    let cb = cobar();
    let d_entries: Vec<_> = t.dmat_entries.iter().map(|(i, j, c, mu)| (*i, *j, *mu, c.clone())).collect();
    let mut h_entries = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            for (mu, c) in linear_parts(&h().matrix[i][j]) {
                h_entries.push((i, j, mu, c));
            }
        }
    }
    let mut nonzero = 0;
    for basis in 0..DIM {
        for kexp in [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 1]] {
            let g = DecoratedGenerator { basis, kexp };
            let c = cb.letter(&cb.cofree().generator(basis, kexp));
            let d = cb.d_a(&c);
            assert_eq!(d, lowered(&d_entries, g), "d_A on {g:?}");
            assert_eq!(cb.h_a(&c), lowered(&h_entries, g), "h_A on {g:?}");
            nonzero += usize::from(!d.is_zero());
        }
    }
    assert!(nonzero > 20);
}

#[test]
fn beta_term_is_needed_for_the_coderivation_square() {
    let cb = cobar();
    let cf = cb.cofree();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut saw_beta = false;
    for _ in 0..40 {
        let w = random_cletter(cb, &mut rng, 3);
        assert!(coderivation_square(cb, &w).is_empty());
        let mut sq = GElement::zero();
        for (a, c) in cf.apply_transpose(CoOp::Delta, &w) {
            for (b, c2) in cf.apply_transpose(CoOp::Delta, &a) {
                sq.add_scaled(&cb.letter(&b), &(&c * &c2));
            }
        }
        saw_beta |= !sq.is_zero();
    }
    assert!(saw_beta, "δ¹δ¹ vanished on every sample");
}

#[test]
fn strict_structure_at_four_letters() {
    let r = run_checks(cobar(), 4, 200, 2024).unwrap();
    for (name, c) in r.counts() {
        assert_eq!(c.failed, 0, "{name}");
    }
    assert!(r.all_pass());
    assert!(r.kinematic_jacobi.checked >= 100);
    let back: CobarReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn dual_products_carry_the_differential() {
    // d_A of a product is not just the Leibniz part: the A-product of two
    // letters receives the Δ⁻¹ terms of longer letters.
    let cb = cobar();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut products = 0;
    for _ in 0..30 {
        let w = random_cletter(cb, &mut rng, 2);
        let d = cb.d_a(&cb.letter(&w));
        products += d.terms.keys().filter(|u| u.len() == 2).count();
    }
    assert!(products > 0);
}

#[test]
fn budget_is_enforced() {
    let cb = cobar();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = cb.alg.mul(&cb.letter(&random_cletter(cb, &mut rng, 3)), &cb.letter(&random_cletter(cb, &mut rng, 2)));
    assert_eq!(cb.try_d_a(&x), Err(crate::error::YmError::LetterBudgetExceeded { letters: 5, budget: 4 }));
    assert!(cb.try_h_a(&x).is_err());
    assert!(run_checks(cb, 5, 1, 0).is_err());
}

/// `⟨w, h u⟩` over all `u` whose letters are those of `w` with one letter
/// replaced; `h` sends a letter to one letter of equal or one higher
/// decoration.
#[test]
fn h_transpose_on_three_letters() {
    let cb = cobar();
    let cf = cb.cofree();
    let alg = valg();
    let hs = crate::bv_infinity::h_star(h());
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut seen = 0;
    for _ in 0..15 {
        let w = random_cletter(cb, &mut rng, 3);
        let letters = alg.word_letters(&w);
        let mut expect: BTreeMap<GWord, GR> = BTreeMap::new();
        let mut pres = std::collections::BTreeSet::new();
        for p in 0..3 {
            let g = DecoratedGenerator::decode(letters[p]);
            let mut decs = vec![g.kexp];
            for mu in 0..4 {
                if g.kexp[mu] > 0 {
                    let mut k = g.kexp;
                    k[mu] -= 1;
                    decs.push(k);
                }
            }
            for kexp in decs {
                for basis in 0..DIM {
                    let mut l = letters.clone();
                    l[p] = DecoratedGenerator { basis, kexp }.encode();
                    l.sort_unstable();
                    pres.insert(l);
                }
            }
        }
        for l in pres {
            for u in cf.sector(&l).iter() {
                let img = hs.apply(alg, &GElement::word(u.clone(), PolyKP::int(1)));
                if let Some(c) = img.terms.get(&w) {
                    *expect.entry(u.clone()).or_insert_with(GR::zero) += &c.as_constant().unwrap();
                }
            }
        }
        expect.retain(|_, c| !c.is_zero());
        let mut got: BTreeMap<GWord, GR> = BTreeMap::new();
        for (u, c) in cf.apply_transpose(CoOp::H, &w) {
            *got.entry(u).or_insert_with(GR::zero) += &c;
        }
        got.retain(|_, c| !c.is_zero());
        assert_eq!(got, expect);
        seen += got.len();
    }
    assert!(seen > 0);
}

#[test]
fn three_even_letters_recombine_with_symmetry_factor() {
    let cf = cobar().cofree();
    let alg = valg();
    let t = StructureTables::get();
    let even: Vec<usize> = (0..DIM).filter(|i| t.deg[*i] % 2 == 0).take(3).collect();
    let mut x = GElement::atom(DecoratedGenerator::plain(even[0]).encode());
    for b in &even[1..] {
        x = alg.mul(&x, &GElement::atom(DecoratedGenerator::plain(*b).encode()));
    }
    let (w, _) = x.terms.iter().next().unwrap();
    let split = cf.delta0(w);
    assert_eq!(split.len(), 6);
    let mut back = GElement::zero();
    for (u, v, c) in split {
        let p = alg.mul(&GElement::word(u, PolyKP::int(1)), &GElement::word(v, PolyKP::int(1)));
        back.add_scaled(&p, &c);
    }
    assert_eq!(back, x.scale(&GR::int(6)));
}
