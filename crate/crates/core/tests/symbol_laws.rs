use genus1_core::arith::{pow_mod, primes_between};
use genus1_core::brauer::{
    degree_shift_invariant, solve_symbol, symbol_invariant, tame_hilbert_symbol, BrauerClass,
};
use genus1_core::kummer::{KummerClass, TameContext};
use proptest::prelude::*;

fn smallest_prime(n: u64) -> u64 {
    primes_between(5, 1000)
        .into_iter()
        .find(|p| p % n == 1)
        .unwrap()
}

/// Direct evaluation of the tame symbol from integer data.
fn symbol_by_hand(p: u64, n: u64, a: &KummerClass, b: &KummerClass) -> u64 {
    let (va, vb) = (a.v(), b.v());
    let ua = a.u().index();
    let ub = b.u().index();
    let ub_inv = pow_mod(ub, p - 2, p);
    let sign = if (va * vb) % 2 == 1 { p - 1 } else { 1 };
    let inner = sign * pow_mod(ua, vb, p) % p * pow_mod(ub_inv, va, p) % p;
    pow_mod(inner, (p - 1) / n, p)
}

#[test]
fn tame_symbol_matches_hand_evaluation() {
    for n in [3u64, 4, 5] {
        let p = smallest_prime(n);
        let ctx = TameContext::new(p, n, 1).unwrap();
        let classes = ctx.all_classes();
        for a in &classes {
            for b in &classes {
                assert_eq!(
                    tame_hilbert_symbol(a, b).unwrap().index(),
                    symbol_by_hand(p, n, a, b)
                );
            }
        }
    }
}

#[test]
fn uniformizer_against_units() {
    for p in primes_between(5, 50) {
        for n in [2u64, 3, 4, 5, 6] {
            if (p - 1) % n != 0 {
                continue;
            }
            let ctx = TameContext::new(p, n, 1).unwrap();
            let pi = ctx.uniformizer();
            for u in 1..p as i64 {
                let b = ctx.class(0, u).unwrap();
                let s = tame_hilbert_symbol(&pi, &b).unwrap();
                let residue = pow_mod(u as u64, (p - 1) / n, p) == 1;
                assert_eq!(s.is_one(), residue, "p = {p}, n = {n}, u = {u}");
                let swapped = tame_hilbert_symbol(&b, &pi).unwrap();
                assert_eq!(swapped.index(), pow_mod(u as u64, (p - 1) / n, p));
            }
        }
    }
}

#[test]
fn bilinear_alternating_exhaustive() {
    for n in [2u64, 3, 4, 5] {
        let p = smallest_prime(n);
        let ctx = TameContext::new(p, n, 1).unwrap();
        let classes = ctx.all_classes();
        for a in &classes {
            assert!(symbol_invariant(a, a).unwrap().times(2).is_zero());
            assert!(symbol_invariant(&ctx.trivial(), a).unwrap().is_zero());
            for b in &classes {
                let ab = symbol_invariant(a, b).unwrap();
                assert_eq!(ab + symbol_invariant(b, a).unwrap(), BrauerClass::ZERO);
                assert!(ab.times(n as i64).is_zero());
                for c in &classes {
                    assert_eq!(
                        symbol_invariant(&a.mul(c), b).unwrap(),
                        ab + symbol_invariant(c, b).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn steinberg_relation() {
    for n in [3u64, 5, 7] {
        let p = smallest_prime(n);
        let ctx = TameContext::new(p, n, 1).unwrap();
        let minus_one = ctx.class(0, -1).unwrap();
        for a in ctx.all_classes() {
            let neg = a.mul(&minus_one);
            assert!(tame_hilbert_symbol(&a, &neg).unwrap().is_one());
        }
    }
}

#[test]
fn invariant_is_onto_for_n_three() {
    let ctx = TameContext::new(7, 3, 1).unwrap();
    let classes = ctx.all_classes();
    assert_eq!(classes.len(), 9);
    let mut image: Vec<BrauerClass> = classes
        .iter()
        .flat_map(|a| classes.iter().map(move |b| symbol_invariant(a, b).unwrap()))
        .collect();
    image.sort();
    image.dedup();
    assert_eq!(
        image,
        vec![
            BrauerClass::ZERO,
            BrauerClass::new(1, 3),
            BrauerClass::new(2, 3)
        ]
    );
}

#[test]
fn uniformizer_pairing_is_onto() {
    for n in 2..=7u64 {
        let ctx = TameContext::new(smallest_prime(n), n, 1).unwrap();
        let pi = ctx.uniformizer();
        let mut image: Vec<BrauerClass> = ctx
            .unit_representatives()
            .iter()
            .map(|u| symbol_invariant(&pi, &ctx.reduce(0, u).unwrap()).unwrap())
            .collect();
        image.sort();
        image.dedup();
        assert_eq!(image.len() as u64, n);
    }
}

#[test]
fn degree_shift_two_to_four() {
    for p in [5u64, 13, 17, 29] {
        let ctx = TameContext::new(p, 2, 1).unwrap();
        for a in ctx.all_classes() {
            for b in ctx.all_classes() {
                let low = symbol_invariant(&a, &b).unwrap();
                assert_eq!(degree_shift_invariant(&a, &b, 2).unwrap(), low);
                assert_eq!(degree_shift_invariant(&a, &b, 1).unwrap(), low);
            }
            assert!(degree_shift_invariant(&ctx.trivial(), &a, 2)
                .unwrap()
                .is_zero());
        }
    }
}

#[test]
fn degree_shift_three_to_six_and_nine() {
    let ctx = TameContext::new(19, 3, 1).unwrap();
    for a in ctx.all_classes() {
        for b in ctx.all_classes() {
            let low = symbol_invariant(&a, &b).unwrap();
            assert_eq!(degree_shift_invariant(&a, &b, 2).unwrap(), low);
            assert_eq!(degree_shift_invariant(&a, &b, 3).unwrap(), low);
        }
    }
}

#[test]
fn every_target_is_solved() {
    for n in 2..=7u64 {
        let ctx = TameContext::new(smallest_prime(n), n, 1).unwrap();
        for k in 0..n {
            let target = BrauerClass::new(k as i64, n);
            let (a, b) = solve_symbol(target, &ctx).unwrap();
            assert_eq!(symbol_invariant(&a, &b).unwrap(), target);
        }
        let g = ctx.reduce(0, ctx.generator()).unwrap();
        let (a, b) = solve_symbol(BrauerClass::new(1, n), &ctx).unwrap();
        assert_eq!(a, ctx.uniformizer());
        // the witness is a power of the canonical generator
        assert!((1..n as i64).any(|k| g.pow(k) == b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sampled_bilinearity(idx in 0usize..3, v in proptest::array::uniform3(0i64..50), u in proptest::array::uniform3(1i64..10_000)) {
        let (p, n) = [(11u64, 5u64), (29, 7), (43, 7)][idx];
        let ctx = TameContext::new(p, n, 1).unwrap();
        let cls: Vec<_> = (0..3).map(|i| ctx.class(v[i], u[i] % (p as i64 - 1) + 1).unwrap()).collect();
        let lhs = symbol_invariant(&cls[0].mul(&cls[1]), &cls[2]).unwrap();
        let rhs = symbol_invariant(&cls[0], &cls[2]).unwrap() + symbol_invariant(&cls[1], &cls[2]).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(symbol_invariant(&cls[0], &cls[0]).unwrap().is_zero() || n % 2 == 0);
    }

    #[test]
    fn fraction_group_laws(a in -100i64..100, b in -100i64..100, d in 1u64..60) {
        let (x, y) = (BrauerClass::new(a, d), BrauerClass::new(b, d));
        prop_assert_eq!(x + y, BrauerClass::new(a + b, d));
        prop_assert_eq!(x - x, BrauerClass::ZERO);
        prop_assert_eq!(x.to_string().parse::<BrauerClass>().unwrap(), x);
        prop_assert!(x.numerator() < x.denominator());
    }
}
