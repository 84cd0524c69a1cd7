use super::modules::{action_matrix, expected_hilbert, f_bit, gen, series_product, Hilbert};
use super::*;
use super::wmatrix as modules_w;
use crate::exact_arith::dense::{is_zero, matmul};
use crate::exact_arith::GR;

#[test]
fn hilbert_series_match() {
    for n in [1, 2] {
        let binom: Vec<usize> = (0..=4 * n).map(|k| (0..k).fold(1, |acc, i| acc * (4 * n - i) / (i + 1))).collect();
        assert_eq!(exterior(n).hilbert(), Hilbert(binom));
        let mut a = vec![1];
        for _ in 0..n {
            a = series_product(&a, &[1, 4, 3]);
        }
        assert_eq!(a_n(n).hilbert(), Hilbert(a.clone()));
        assert_eq!(case_module(Case::One, n).hilbert(), Hilbert(a));
        assert_eq!(case_module(Case::Two, n).hilbert(), Hilbert(expected_hilbert(Case::Two, n)));
    }
    assert_eq!(case_module(Case::Two, 1).hilbert(), Hilbert(vec![3, 4, 1]));
    assert_eq!(case_module(Case::Two, 2).dim(), 64);
}

#[test]
fn generators_square_to_zero_and_anticommute() {
    let m = case_module(Case::Two, 2);
    let d = m.dim();
    for a in 0..8 {
        let ea = action_matrix(&m, a);
        assert!(is_zero(&matmul(&ea, &ea, d, d)));
        for b in a + 1..8 {
            let eb = action_matrix(&m, b);
            let (x, y) = (matmul(&ea, &eb, d, d), matmul(&eb, &ea, d, d));
            assert!(x.iter().zip(&y).all(|(r, s)| r.iter().zip(s).all(|(p, q)| (p + q).is_zero())));
        }
    }
}

#[test]
fn f_forgets_the_block() {
    for j in 0..2 {
        for mu in 0..4 {
            assert_eq!(1u32 << f_bit((gen(mu, j)).trailing_zeros() as usize), gen(mu, 0));
        }
    }
}

#[test]
fn self_dual_relations_hold_in_a() {
    let a = a_n(1);
    let lhs = a.reduce(&vec![(gen(0, 0) | gen(1, 0), 0, GR::one())]);
    let rhs = a.reduce(&vec![(gen(2, 0) | gen(3, 0), 0, GR::i())]);
    assert_eq!(lhs, rhs);
    assert!(lhs.iter().any(|c| !c.is_zero()));
}

#[test]
fn x0_dimension_is_the_hom_count() {
    // oracle: Σ_p dim M_n^p · dim M^{p+ℓ} from the Hilbert data alone
    for case in [Case::One, Case::Two] {
        for n in [1, 2] {
            let src = expected_hilbert(case, n);
            let tgt = expected_hilbert(case, 1);
            for ell in -5..=1 {
                let count: usize = (0..src.len())
                    .filter_map(|p| usize::try_from(p as i32 + ell).ok().and_then(|q| tgt.get(q)).map(|t| src[p] * t))
                    .sum();
                let cx = build_complex(case, n, ell);
                assert_eq!(cx.spaces[0].dim(), count, "case {case:?} n {n} ℓ {ell}");
                assert_eq!(cx.spaces[1].dim(), 4 * n * complex::hom_basis(&cx.source, &cx.target, ell + 1).len());
            }
        }
    }
}

#[test]
fn consecutive_differentials_compose_to_zero() {
    for case in [Case::One, Case::Two] {
        for ell in -3..=1 {
            let cx = build_complex(case, 1, ell);
            assert!(cx.d1.annihilates(&cx.d0), "case {case:?} ℓ {ell}");
        }
    }
    let cx = build_complex(Case::One, 1, -1);
    assert!(cx.d0.nnz() > 0);
}

#[test]
fn theorem_range_at_one_block() {
    for case in [Case::One, Case::Two] {
        for ell in -6..=-1 {
            let r = check_vanishing(case, 1, ell);
            assert!(r.pass(), "{r:?}");
        }
    }
    assert_eq!(check_vanishing(Case::One, 1, -2).dim_h0, 0);
    assert_eq!(check_vanishing(Case::One, 1, -2).dim_h1, 0);
}

#[test]
fn theorem_range_at_two_blocks() {
    for (case, ell) in [(Case::Two, -3), (Case::One, -2), (Case::Two, -2), (Case::One, -1)] {
        let r = check_vanishing(case, 2, ell);
        assert!(r.pass(), "{r:?}");
        assert!(r.dims[1] > 0);
    }
}

#[test]
fn outside_the_range_the_guard_is_off() {
    // ℓ = 0: H⁰ contains the module map g ↦ g, so it is not zero
    let r = check_vanishing(Case::One, 1, 0);
    assert!(!r.h0_claimed && !r.h1_claimed);
    assert!(r.dim_h0 > 0);
    assert!(r.pass());
}

#[test]
fn w_is_injective_in_both_cases() {
    let v = w_injectivity();
    assert_eq!(v.case1, (3, 3, 32));
    assert_eq!(v.case2, (9, 9, 32));
    assert!(v.injective());
}

fn injective(w: &modules_w::WMatrix) -> bool {
    [Case::One, Case::Two].iter().all(|k| {
        let (rk, dom, _) = w_rank(*k, w);
        rk == dom
    })
}

#[test]
fn single_entry_mutations_keep_w_injective() {
    // W has slack: no single zeroed entry drops the rank in either case
    let w = w_matrix();
    for r in 0..8 {
        for c in 0..3 {
            let mut m = w.clone();
            m[r][c] = None;
            assert!(injective(&m), "entry ({r}, {c})");
        }
    }
}

#[test]
fn zeroing_a_w_column_breaks_injectivity() {
    for c in 0..3 {
        let mut m = w_matrix();
        for row in m.iter_mut() {
            row[c] = None;
        }
        assert!(!injective(&m));
        assert_eq!(w_rank(Case::One, &m).0, 2);
        assert_eq!(w_rank(Case::Two, &m).0, 6);
    }
}

#[test]
fn case_two_module_sits_inside_the_exterior_algebra() {
    let s = submodule_model();
    assert_eq!(s.dims, expected_hilbert(Case::Two, 1));
    assert!(s.is_a_module && s.relations_vanish);
}

