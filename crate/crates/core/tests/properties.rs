//! Cross-module invariants, mostly randomized: field axioms on small towers,
//! digit round trips, coset partition facts, and polynomial identities.

use bch_atlas::*;
use proptest::prelude::*;

fn towers() -> Vec<FieldTower> {
    vec![
        build_tower(2, 1, 6).unwrap(),
        build_tower(3, 1, 4).unwrap(),
        build_tower(2, 2, 3).unwrap(), // GF(4) mid level exercised
        build_tower(5, 1, 3).unwrap(),
    ]
}

proptest! {
    #[test]
    fn digit_round_trip(t in 0u64..100_000, q in 2u64..7, extra in 0u32..3) {
        let mut m = 0u32;
        let mut v = t;
        while v > 0 {
            v /= q;
            m += 1;
        }
        let m = m.max(1) + extra;
        let digits = q_digits(t, q, m).unwrap();
        prop_assert_eq!(digits.len(), m as usize);
        let back = digits.iter().fold(0u64, |acc, &d| acc * q + d);
        prop_assert_eq!(back, t);
    }

    #[test]
    fn field_axioms(seed_a in 0u64..10_000, seed_b in 0u64..10_000, seed_c in 0u64..10_000) {
        for tower in towers() {
            let o = tower.order();
            let el = |s: u64| tower.element(FieldLevel::Top, s % o).unwrap();
            let (a, b, c) = (el(seed_a), el(seed_b), el(seed_c));
            let ab = tower.mul(a, b).unwrap();
            let ba = tower.mul(b, a).unwrap();
            prop_assert_eq!(ab, ba);
            let left = tower.mul(a, tower.add(b, c).unwrap()).unwrap();
            let right = tower.add(tower.mul(a, b).unwrap(), tower.mul(a, c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            if a.code != 0 {
                let inv = tower.inv(a).unwrap();
                prop_assert_eq!(tower.mul(a, inv).unwrap().code, 1);
            }
        }
    }

    #[test]
    fn poly_remainder_identity(ca in proptest::collection::vec(0u64..3, 1..8),
                               cb in proptest::collection::vec(0u64..3, 1..5)) {
        let tower = build_tower(3, 1, 4).unwrap();
        let a = Poly::new(FieldLevel::Mid, ca);
        let b = Poly::new(FieldLevel::Mid, cb);
        prop_assume!(!b.is_zero());
        let r = tower.poly_rem(&a, &b).unwrap();
        prop_assert!(r.degree().unwrap_or(0) < b.coeffs.len().max(1));
        // a - r is divisible by b.
        let mut diff = a.coeffs.clone();
        diff.resize(diff.len().max(r.coeffs.len()), 0);
        for (i, &rc) in r.coeffs.iter().enumerate() {
            diff[i] = (diff[i] + 3 - rc) % 3;
        }
        let diff = Poly::new(FieldLevel::Mid, diff);
        if !diff.is_zero() {
            prop_assert!(tower.poly_divides(&b, &diff).unwrap());
        }
    }

    #[test]
    fn leader_minimality(t in 0u64..341) {
        let ctx = CosetContext::new(2, 341).unwrap();
        let l = leader_of(&ctx, t).unwrap();
        prop_assert!(l <= t);
        prop_assert_eq!(leader_of(&ctx, l).unwrap(), l);
        prop_assert!(coset_of(&ctx, t).unwrap().elements.contains(&l));
    }

    #[test]
    fn dual_set_complement_size(delta in 2u64..63, b in 1u64..3) {
        let ctx = CosetContext::new(2, 63).unwrap();
        prop_assume!(b + delta - 2 <= 62);
        let t = defining_set(&ctx, delta, b).unwrap();
        let d = dualize(&t);
        prop_assert_eq!(d.len(), 63 - t.len());
    }
}

#[test]
fn lcm_of_minimal_polynomials_is_the_generator() {
    // lcm over the root range equals the product over distinct cosets.
    let tower = build_tower(2, 1, 6).unwrap();
    let ctx = CosetContext::new(2, 63).unwrap();
    for delta in [5u64, 9, 27] {
        let code = bch_code(FamilyTag::Primitive, 2, 6, delta, 1).unwrap();
        let g = generator_polynomial(&code, &tower).unwrap();
        let mut lcm = Poly::one(FieldLevel::Mid);
        for i in 1..=delta - 1 {
            lcm = tower.poly_lcm(&lcm, &tower.minimal_polynomial(63, i).unwrap()).unwrap();
        }
        assert_eq!(g, lcm, "delta = {delta}");
        assert_eq!(g.degree().unwrap() as u64, 63 - code.dimension);
        let _ = ctx;
    }
}

#[test]
fn minimal_polynomial_degree_equals_coset_size() {
    let tower = build_tower(3, 1, 4).unwrap();
    let ctx = CosetContext::new(3, 80).unwrap();
    for i in 0..80 {
        let mi = tower.minimal_polynomial(80, i).unwrap();
        let c = coset_of(&ctx, i).unwrap();
        assert_eq!(mi.degree().unwrap() as u64, c.size, "residue {i}");
    }
}

#[test]
fn alpha_has_full_order_on_every_tower() {
    for tower in towers() {
        let group = tower.order() - 1;
        assert_eq!(tower.pow(tower.alpha(), group as u128).code, 1);
        for (p, _) in numutil::factorize(group) {
            assert_ne!(tower.pow(tower.alpha(), (group / p) as u128).code, 1);
        }
    }
}
