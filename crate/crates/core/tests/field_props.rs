mod common;

use genus1_core::ff::{FfError, FieldDesc, FieldElem, FieldOp, Operand};
use genus1_core::kummer::TameContext;
use proptest::prelude::*;

const FIELDS: [(u64, u32); 6] = [(5, 1), (7, 2), (11, 3), (13, 1), (3, 4), (101, 2)];

fn field_and_elems() -> impl Strategy<Value = (FieldDesc, u64, u64, u64)> {
    (0..FIELDS.len(), any::<u64>(), any::<u64>(), any::<u64>()).prop_map(|(i, a, b, c)| {
        let (p, r) = FIELDS[i];
        let f = FieldDesc::new(p, r).unwrap();
        let q = f.order();
        (f, a % q, b % q, c % q)
    })
}

proptest! {
    #[test]
    fn ring_axioms((f, a, b, c) in field_and_elems()) {
        let (a, b, c) = (f.from_index(a), f.from_index(b), f.from_index(c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
            prop_assert!(a.pow_u64(f.order() - 1).is_one());
        }
    }

    #[test]
    fn frobenius_is_additive_and_periodic((f, a, b, _c) in field_and_elems()) {
        let (a, b) = (f.from_index(a), f.from_index(b));
        prop_assert_eq!((&a + &b).frobenius(1), &a.frobenius(1) + &b.frobenius(1));
        prop_assert_eq!(a.frobenius(f.degree()), a.clone());
        prop_assert_eq!(a.frobenius(1), a.pow_u64(f.characteristic()));
    }

    #[test]
    fn index_round_trip((f, a, _b, _c) in field_and_elems()) {
        let x = f.from_index(a);
        prop_assert_eq!(x.index(), a);
        prop_assert_eq!(f.from_coeffs(x.coeffs()).unwrap(), x);
    }

    #[test]
    fn square_roots((f, a, _b, _c) in field_and_elems()) {
        let x = f.from_index(a);
        let sq = &x * &x;
        let root = sq.sqrt().unwrap();
        prop_assert_eq!(&root * &root, sq);
    }

    #[test]
    fn kummer_classes_form_a_group(p_idx in 0usize..4, v in 0i64..20, u in 1i64..1000, w in 1i64..1000) {
        let (p, n) = [(7u64, 3u64), (13, 4), (31, 5), (29, 7)][p_idx];
        let ctx = TameContext::new(p, n, 1).unwrap();
        let (u, w) = (u % p as i64, w % p as i64);
        prop_assume!(u != 0 && w != 0);
        let a = ctx.class(v, u).unwrap();
        let b = ctx.class(v + 1, w).unwrap();
        prop_assert!(a.mul(&a.inverse()).is_trivial());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.pow(n as i64).is_trivial());
        prop_assert_eq!(ctx.class(v + n as i64, u).unwrap(), a);
    }
}

#[test]
fn moduli_are_lexicographically_smallest() {
    // x^2 + 1 splits over F_5 but not over F_7
    assert_eq!(FieldDesc::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
    assert_eq!(FieldDesc::new(7, 2).unwrap().modulus(), &[1, 0, 1]);
    assert_eq!(FieldDesc::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
}

#[test]
fn unity_root_is_the_smallest_of_exact_order() {
    for (p, r, n) in [
        (7u64, 1u32, 3u64),
        (13, 1, 4),
        (5, 2, 3),
        (31, 1, 5),
        (7, 2, 8),
    ] {
        let f = FieldDesc::new(p, r).unwrap();
        let z = f.unity_root(n).unwrap();
        let brute = f.units().find(|u| u.mult_order() == n).unwrap();
        assert_eq!(z, brute);
    }
    let f = FieldDesc::prime(5).unwrap();
    assert!(matches!(
        f.unity_root(3),
        Err(FfError::NoRootOfUnity { .. })
    ));
}

#[test]
fn checked_operations() {
    let f = FieldDesc::prime(7).unwrap();
    let g = FieldDesc::prime(11).unwrap();
    let (a, b) = (f.from_int(3), g.from_int(3));
    assert_eq!(
        FieldElem::apply(FieldOp::Add, &a, Operand::Elem(&b)).unwrap_err(),
        FfError::FieldMismatch
    );
    assert_eq!(
        FieldElem::apply(FieldOp::Inv, &f.zero(), Operand::None).unwrap_err(),
        FfError::ZeroInverse
    );
    assert_eq!(
        FieldElem::apply(FieldOp::Pow, &a, Operand::Int(-1)).unwrap(),
        a.inv()
    );
    assert!(matches!(FieldDesc::new(8, 1), Err(FfError::NotPrime(8))));
    assert!(matches!(
        FieldDesc::new(2, 63),
        Err(FfError::TooLarge { .. })
    ));
}

#[test]
fn nth_powers_match_image_of_power_map() {
    for (p, n) in [(13u64, 3u64), (31, 5), (29, 7)] {
        let f = FieldDesc::prime(p).unwrap();
        let image = common::power_image(&f, n);
        for u in f.units() {
            assert_eq!(
                u.is_nth_power(n),
                image.contains(&u.index()),
                "p = {p}, u = {u}"
            );
        }
    }
}

#[test]
fn serialization_format() {
    let f = FieldDesc::new(7, 2).unwrap();
    let x = f.from_index(3 + 2 * 7);
    assert_eq!(x.to_string(), "7^2:[3,2]");
}
