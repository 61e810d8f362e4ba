//! Randomized laws for the algebraic kernel: field axioms, polynomial ring
//! identities, integer lattice normal forms, progression set algebra, the
//! automorphism action, relation lattices, spreads, decomposition round
//! trips, and the parser/renderer pair.

use num_bigint::BigInt;
use proptest::prelude::*;

use dfield::cli::expr::parse_expression;
use dfield::constants::{constant_generators, is_constant, laurent_monomial};
use dfield::explattice::{eval_power, exponent_lattice};
use dfield::field::{sigma_apply, sigma_poly, FieldElement, MultiPoly, RatFunc, SigmaSpec};
use dfield::lattice::{reduce_mod_lattice, IntMatrix, Progression};
use dfield::orbital::{orbital_decompose, recompose};
use dfield::spread::spread;
use dfield::summability::{delta, is_summable, SummabilityOutcome};
use dfield::Config;

fn rational() -> impl Strategy<Value = FieldElement> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| FieldElement::from_fraction(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = FieldElement> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

/// Multipliers from a fixed multiplicative family, so relation lattices stay
/// small and exact.
fn multiplier() -> impl Strategy<Value = FieldElement> {
    (-2i64..=2, -2i64..=2, prop::bool::ANY).prop_map(|(e2, e3, neg)| {
        let two = FieldElement::from_integer(2).pow(e2);
        let three = FieldElement::from_integer(3).pow(e3);
        let sign = FieldElement::from_integer(if neg { -1 } else { 1 });
        &(&two * &three) * &sign
    })
}

fn poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..=2, nvars), rational()),
        1..=max_terms,
    )
    .prop_map(move |terms| MultiPoly::from_terms(nvars, terms))
}

fn nonzero_poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    poly(nvars, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc(nvars: usize) -> impl Strategy<Value = RatFunc> {
    (poly(nvars, 3), poly(nvars, 2)).prop_map(|(num, den)| {
        // den^2 + 1 is never the zero polynomial over the rationals
        let den = &(&den * &den) + &MultiPoly::one(den.nvars());
        RatFunc::new(num, den).unwrap()
    })
}

/// Rational functions with binomial denominators; products of these stay
/// cheap to reduce, which matters for laws that multiply them.
fn lean_ratfunc(nvars: usize) -> impl Strategy<Value = RatFunc> {
    (poly(nvars, 2), prop::collection::vec(0u32..=2, nvars), nonzero_rational()).prop_map(
        move |(num, exps, c)| {
            let mut den = &MultiPoly::monomial(nvars, exps, c) + &MultiPoly::one(nvars);
            if den.is_zero() {
                den = MultiPoly::one(nvars);
            }
            RatFunc::new(num, den).unwrap()
        },
    )
}

fn progression() -> impl Strategy<Value = Progression> {
    prop_oneof![
        Just(Progression::Empty),
        (-8i64..=8).prop_map(Progression::single),
        ((-8i64..=8), (1i64..=6)).prop_map(|(o, s)| Progression::arith(o, s)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_elements_form_a_field(a in rational(), b in rational(), c in nonzero_rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&c * &c.inv(), FieldElement::one());
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn polynomial_multiplication_distributes(
        p in poly(2, 3),
        q in poly(2, 3),
        r in poly(2, 3),
    ) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn hnf_is_a_normal_form(rows in prop::collection::vec(
        prop::collection::vec(-9i64..=9, 3), 1..=3)
    ) {
        let m = IntMatrix::from_i64_rows(&rows);
        let h = m.hnf();
        prop_assert_eq!(h.hnf(), h.clone());
        // every kernel vector really annihilates the columns
        for k in m.transpose().kernel() {
            let image = m.transpose().mul_vec(&k);
            prop_assert!(image.iter().all(|x| x == &BigInt::from(0)));
        }
    }

    #[test]
    fn lattice_reduction_is_idempotent_and_sound(
        rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..=2),
        v in prop::collection::vec(-9i64..=9, 3),
    ) {
        let basis = IntMatrix::from_i64_rows(&rows).row_basis();
        let v: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
        let r = reduce_mod_lattice(&v, &basis);
        prop_assert_eq!(reduce_mod_lattice(&r, &basis), r.clone());
        // v - r must lie in the lattice: adjoining it must not grow the HNF
        let diff: Vec<BigInt> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        let mut rows_big = basis.clone();
        rows_big.push(diff);
        let n = 3;
        let flat_old: Vec<BigInt> = basis.iter().flatten().cloned().collect();
        let flat_new: Vec<BigInt> = rows_big.iter().flatten().cloned().collect();
        let old = IntMatrix::new(basis.len(), n, flat_old).row_basis();
        let new = IntMatrix::new(rows_big.len(), n, flat_new).row_basis();
        prop_assert_eq!(old, new);
    }

    #[test]
    fn progressions_intersect_pointwise(a in progression(), b in progression()) {
        let both = a.intersect(&b);
        for k in -40..=40 {
            prop_assert_eq!(both.contains(k), a.contains(k) && b.contains(k), "at {}", k);
        }
    }

    #[test]
    fn sigma_is_a_field_automorphism(
        f in lean_ratfunc(2),
        g in lean_ratfunc(2),
        l1 in multiplier(),
        l2 in multiplier(),
        k in -3i64..=3,
    ) {
        let spec = SigmaSpec::new(vec![l1, l2]).unwrap();
        prop_assert_eq!(
            sigma_apply(&(&f * &g), &spec, k),
            &sigma_apply(&f, &spec, k) * &sigma_apply(&g, &spec, k)
        );
        prop_assert_eq!(
            sigma_apply(&(&f + &g), &spec, k),
            &sigma_apply(&f, &spec, k) + &sigma_apply(&g, &spec, k)
        );
        prop_assert_eq!(sigma_apply(&sigma_apply(&f, &spec, k), &spec, -k), f);
    }

    #[test]
    fn relation_lattice_membership_matches_evaluation(
        l1 in multiplier(),
        l2 in multiplier(),
        v in prop::collection::vec(-3i64..=3, 2),
    ) {
        let lambdas = vec![l1, l2];
        let lat = exponent_lattice(&lambdas, &Config::default()).unwrap();
        prop_assert!(lat.is_exact());
        let v: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
        prop_assert_eq!(lat.contains(&v), eval_power(&lambdas, &v).is_one());
    }

    #[test]
    fn constant_generators_are_fixed_monomials(
        l1 in multiplier(),
        l2 in multiplier(),
        v in prop::collection::vec(-3i64..=3, 2),
    ) {
        let spec = SigmaSpec::new(vec![l1.clone(), l2.clone()]).unwrap();
        let desc = constant_generators(&spec, &Config::default()).unwrap();
        for i in 0..desc.rank() {
            prop_assert!(is_constant(&desc.generator_ratfunc(i), &spec));
        }
        let v: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
        let mono = laurent_monomial(2, &v);
        prop_assert_eq!(is_constant(&mono, &spec), eval_power(&[l1, l2], &v).is_one());
    }

    #[test]
    fn rendered_expressions_parse_back(f in ratfunc(3)) {
        let names: Vec<String> = vec!["a1".into(), "a2".into(), "a3".into()];
        let text = f.render(&["a1", "a2", "a3"]);
        let back = parse_expression(&text, &names, None).unwrap();
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn spreads_are_cosets_of_the_self_spread(
        p in nonzero_poly(2, 3),
        u in nonzero_rational(),
        k in -4i64..=4,
        l1 in multiplier(),
        l2 in multiplier(),
    ) {
        let spec = SigmaSpec::new(vec![l1, l2]).unwrap();
        let cfg = Config::default();
        let own = spread(&p, &p, &spec, &cfg).unwrap();
        prop_assert!(own.exact);
        // the self spread is a subgroup: 0 in it, and closed in a window
        prop_assert!(own.set.contains(0));
        for x in -6..=6 {
            for y in -6..=6 {
                if own.set.contains(x) && own.set.contains(y) {
                    prop_assert!(own.set.contains(x + y));
                    prop_assert!(own.set.contains(-x));
                }
            }
        }
        // q = u * sigma^k(p) puts k into Spr(q, p), which is then a coset
        let q = sigma_poly(&p, &spec, k).scale(&u);
        let cross = spread(&q, &p, &spec, &cfg).unwrap();
        prop_assert!(cross.set.contains(-k));
        for x in -6..=6 {
            let expect = own.set.contains(x + k);
            prop_assert_eq!(cross.set.contains(x), expect, "shift {}", x);
        }
    }

    #[test]
    fn decomposition_reconstructs_the_input(
        num in poly(2, 3),
        d1 in -3i64..=3,
        d2 in -3i64..=3,
        e in 0u32..=2,
        l1 in multiplier(),
        l2 in multiplier(),
    ) {
        let spec = SigmaSpec::new(vec![l1, l2]).unwrap();
        // denominator: a shifted product of a1-type and a2-type linear factors
        let lin1 = &MultiPoly::var(2, 0) - &MultiPoly::constant(2, FieldElement::from_integer(2));
        let lin2 = &MultiPoly::var(2, 1) - &MultiPoly::one(2);
        let den = &(&sigma_poly(&lin1, &spec, d1) * &sigma_poly(&lin2, &spec, d2))
            * &MultiPoly::var(2, 1).pow(e);
        let f = RatFunc::new(num, den).unwrap();
        let dec = orbital_decompose(&f, &spec, &Config::default()).unwrap();
        prop_assert_eq!(recompose(&dec, &spec), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn constructed_telescopes_are_recognized(
        g in ratfunc(1),
        l in multiplier(),
        c in nonzero_rational(),
    ) {
        let spec = SigmaSpec::new(vec![l]).unwrap();
        let f = delta(&g, &c, &spec);
        match is_summable(&f, &c, &spec, &Config::default()).unwrap() {
            SummabilityOutcome::Summable(w) => {
                prop_assert_eq!(delta(&w, &c, &spec), f);
            }
            other => prop_assert!(false, "expected a witness, got {:?}", other),
        }
    }
}
