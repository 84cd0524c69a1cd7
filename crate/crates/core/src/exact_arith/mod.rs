//! Exact arithmetic over ℚ(i): scalars, sparse polynomials in momentum and
//! parameter symbols, affine elimination and a small quadratic instance
//! search.

pub mod dense;
pub mod gaussian;
pub mod linsys;
pub mod poly;
pub mod quadratic;
pub mod rational;

pub use gaussian::{GaussianRational, GR};
pub use linsys::{solve_affine, AffineSolution, LinearSystem, Rref};
pub use poly::{k_sym, leg_sym, param_sym, Mono, PolyKP, Sym};
pub use quadratic::{default_candidates, find_instance, FindInstanceOptions};
pub use rational::Rat;

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_gr() -> impl Strategy<Value = GR> {
        (-4i64..5, 1i64..4, -4i64..5).prop_map(|(a, d, b)| GR::new(Rat::new(a, d), Rat::int(b)))
    }

    fn poly() -> impl Strategy<Value = PolyKP> {
        let mono = prop::collection::vec((0u32..3, 1u32..3), 0..3).prop_map(|v| Mono::from_pairs(&v));
        prop::collection::vec((mono, small_gr()), 0..5).prop_map(PolyKP::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn json_round_trip(a in poly()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<PolyKP>(&s).unwrap(), a);
        }

        #[test]
        fn affine_solution_satisfies(rows in prop::collection::vec(prop::collection::vec(small_gr(), 4), 1..5)) {
            let unk: Vec<Sym> = (0..3).map(param_sym).collect();
            let mut sys = LinearSystem::new(unk.clone());
            for r in &rows {
                let mut p = PolyKP::constant(r[3].clone());
                for (j, s) in unk.iter().enumerate() {
                    p = &p + &PolyKP::var(*s).scale(&r[j]);
                }
                sys.push(p);
            }
            if let Ok(sol) = solve_affine(&sys) {
                for e in &sys.equations {
                    prop_assert!(sol.apply(e).is_zero());
                }
            }
        }
    }
}
