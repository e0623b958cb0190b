#![allow(dead_code)]
//! Independent oracles shared by the integration tests.

use genus1_core::ec::{Curve, Point};
use genus1_core::ff::{FieldDesc, FieldElem};

/// `(x, y)` of an affine point.
fn xy(p: &Point) -> (&FieldElem, &FieldElem) {
    match p {
        Point::Affine(x, y) => (x, y),
        Point::Infinity => panic!("affine point expected"),
    }
}

/// Line through `a` and `b` (tangent if equal), and vertical through `a + b`,
/// both evaluated at `r`; `None` if either vanishes.
fn line_ratio(e: &Curve, a: &Point, b: &Point, r: &Point) -> Option<FieldElem> {
    let f = e.field();
    if a.is_infinity() || b.is_infinity() {
        return Some(f.one());
    }
    let (xr, yr) = xy(r);
    let (x1, y1) = xy(a);
    let (x2, y2) = xy(b);
    let sum = e.add(a, b);
    let (num, den) = if sum.is_infinity() {
        (xr - x1, f.one())
    } else {
        let lambda = if a == b {
            &(&f.from_int(3) * &(x1 * x1)) + e.a4()
        } else {
            y2 - y1
        };
        let denom = if a == b { y1 + y1 } else { x2 - x1 };
        // (y - y1)·denom - lambda·(x - x1), scaled to avoid an inversion
        let line = &(&(yr - y1) * &denom) - &(&lambda * &(xr - x1));
        let (x3, _) = xy(&sum);
        (line, &(xr - x3) * &denom)
    };
    if num.is_zero() || den.is_zero() {
        None
    } else {
        Some(&num * &den.inv())
    }
}

/// `f_{n,P}(r)` by the linear recursion `f_{j+1} = f_j · l_{jP,P} / v_{(j+1)P}`.
pub fn linear_miller(e: &Curve, n: u64, p: &Point, r: &Point) -> Option<FieldElem> {
    let mut acc = e.field().one();
    let mut jp = p.clone();
    for _ in 1..n {
        acc = &acc * &line_ratio(e, &jp, p, r)?;
        jp = e.add(&jp, p);
    }
    Some(acc)
}

/// `e_n(P, Q) = f_P(Q+S) f_Q(-S) / (f_P(S) f_Q(P-S))`, first admissible `S`.
pub fn divisor_pairing(e: &Curve, p: &Point, q: &Point, n: u64) -> FieldElem {
    let f = e.field();
    if p.is_infinity() || q.is_infinity() {
        return f.one();
    }
    for s in e.points().unwrap() {
        if s.is_infinity() {
            continue;
        }
        let pts = [e.add(q, &s), s.clone(), e.neg(&s), e.sub(p, &s)];
        if pts.iter().any(|x| x.is_infinity()) {
            continue;
        }
        let vals = (
            linear_miller(e, n, p, &pts[0]),
            linear_miller(e, n, p, &pts[1]),
            linear_miller(e, n, q, &pts[2]),
            linear_miller(e, n, q, &pts[3]),
        );
        if let (Some(a), Some(b), Some(c), Some(d)) = vals {
            return &(&a * &c) * &(&b * &d).inv();
        }
    }
    panic!("no shift point available");
}

/// `#E(F_q)` from the definition.
pub fn naive_count(e: &Curve) -> u64 {
    let f = e.field();
    let mut total = 1;
    for x in f.elements() {
        for y in f.elements() {
            if &y * &y == e.rhs(&x) {
                total += 1;
            }
        }
    }
    total
}

/// Every element of `F` raised to `exp`, as a multiset of indices.
pub fn power_image(f: &FieldDesc, exp: u64) -> Vec<u64> {
    let mut out: Vec<u64> = f.units().map(|u| u.pow_u64(exp).index()).collect();
    out.sort();
    out.dedup();
    out
}
