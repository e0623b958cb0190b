#![allow(dead_code)]
//! Reference computations for the acceptance suite. Nothing here calls the
//! pairing, symbol or Miller code of the library.

use genus1_core::arith::pow_mod;
use genus1_core::brauer::BrauerClass;
use genus1_core::ec::{Curve, Point};
use genus1_core::ff::{FieldDesc, FieldElem};
use genus1_core::kummer::KummerClass;

/// Affine point or `None` at infinity.
pub type Pt = Option<(FieldElem, FieldElem)>;

pub fn from_point(p: &Point) -> Pt {
    match p {
        Point::Affine(x, y) => Some((x.clone(), y.clone())),
        Point::Infinity => None,
    }
}

/// Chord-and-tangent addition on `y² = x³ + a4·x + a6`.
pub fn add(a4: &FieldElem, p: &Pt, q: &Pt) -> Pt {
    let (Some((x1, y1)), Some((x2, y2))) = (p, q) else {
        return p.clone().or_else(|| q.clone());
    };
    let f = x1.field();
    let lambda = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return None;
        }
        &(&(&f.from_int(3) * &(x1 * x1)) + a4) * &(y1 + y1).inv()
    } else {
        &(y2 - y1) * &(x2 - x1).inv()
    };
    let x3 = &(&(&lambda * &lambda) - x1) - x2;
    let y3 = &(&lambda * &(x1 - &x3)) - y1;
    Some((x3, y3))
}

pub fn neg(p: &Pt) -> Pt {
    p.as_ref().map(|(x, y)| (x.clone(), -y))
}

pub fn times(a4: &FieldElem, k: u64, p: &Pt) -> Pt {
    (0..k).fold(None, |acc, _| add(a4, &acc, p))
}

/// Every point, by trying all `(x, y)`.
pub fn all_points(e: &Curve) -> Vec<Pt> {
    let f = e.field();
    let mut out = vec![None];
    for x in f.elements() {
        let rhs = &(&(&(&x * &x) * &x) + &(e.a4() * &x)) + e.a6();
        for y in f.elements() {
            if &y * &y == rhs {
                out.push(Some((x.clone(), y)));
            }
        }
    }
    out
}

/// `l_{A,B}(R) / v_{A+B}(R)`; `None` when `R` hits a zero or pole.
fn line_ratio(a4: &FieldElem, a: &Pt, b: &Pt, r: &Pt) -> Option<FieldElem> {
    let (Some((x1, y1)), Some((x2, y2))) = (a, b) else {
        let f = r.as_ref().map(|(x, _)| x.field().clone())?;
        return Some(f.one());
    };
    let (xr, yr) = r.as_ref()?;
    let f = x1.field();
    let sum = add(a4, a, b);
    let (num, den) = match &sum {
        None => (xr - x1, f.one()),
        Some((x3, _)) => {
            let (slope_num, slope_den) = if a == b {
                (&(&f.from_int(3) * &(x1 * x1)) + a4, y1 + y1)
            } else {
                (y2 - y1, x2 - x1)
            };
            let line = &(&(yr - y1) * &slope_den) - &(&slope_num * &(xr - x1));
            (line, &(xr - x3) * &slope_den)
        }
    };
    if num.is_zero() || den.is_zero() {
        None
    } else {
        Some(&num * &den.inv())
    }
}

/// `f_{n,P}(R)` by the linear recursion over `P, 2P, …`.
fn miller_linear(a4: &FieldElem, n: u64, p: &Pt, r: &Pt) -> Option<FieldElem> {
    let f = r.as_ref()?.0.field().clone();
    let mut acc = f.one();
    let mut jp = p.clone();
    for _ in 1..n {
        acc = &acc * &line_ratio(a4, &jp, p, r)?;
        jp = add(a4, &jp, p);
    }
    Some(acc)
}

/// Weil pairing from divisors shifted by the first admissible point `S`:
/// `f_P(Q+S) f_Q(-S) / (f_P(S) f_Q(P-S))`.
pub fn weil_by_divisors(e: &Curve, points: &[Pt], p: &Pt, q: &Pt, n: u64) -> FieldElem {
    let a4 = e.a4();
    if p.is_none() || q.is_none() {
        return e.field().one();
    }
    for s in points.iter().filter(|s| s.is_some()) {
        let shifted = [add(a4, q, s), s.clone(), neg(s), add(a4, p, &neg(s))];
        if shifted.iter().any(|x| x.is_none()) {
            continue;
        }
        let vals = (
            miller_linear(a4, n, p, &shifted[0]),
            miller_linear(a4, n, p, &shifted[1]),
            miller_linear(a4, n, q, &shifted[2]),
            miller_linear(a4, n, q, &shifted[3]),
        );
        if let (Some(a), Some(b), Some(c), Some(d)) = vals {
            return &(&a * &c) * &(&b * &d).inv();
        }
    }
    panic!("no admissible shift");
}

/// Smallest generator of `F_p^×`, by orders.
pub fn primitive_root(p: u64) -> u64 {
    (2..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// `((−1)^{v(a)v(b)} a^{v(b)} b^{−v(a)})^{(p−1)/n}` from the integer data.
pub fn hand_symbol(p: u64, n: u64, va: u64, ua: u64, vb: u64, ub: u64) -> u64 {
    let sign = if (va * vb) % 2 == 1 { p - 1 } else { 1 };
    let ub_inv = pow_mod(ub, p - 2, p);
    let inner = sign * pow_mod(ua, vb, p) % p * pow_mod(ub_inv, va, p) % p;
    pow_mod(inner, (p - 1) / n, p)
}

pub fn symbol_of(a: &KummerClass, b: &KummerClass) -> u64 {
    let ctx = a.ctx();
    hand_symbol(ctx.p(), ctx.n(), a.v(), a.u().index(), b.v(), b.u().index())
}

/// Invariant `k/n` with `(a, b) = η^k`, `η = (π, g)` for the smallest generator `g`.
pub fn invariant(a: &KummerClass, b: &KummerClass) -> BrauerClass {
    let ctx = a.ctx();
    let (p, n) = (ctx.p(), ctx.n());
    let eta = hand_symbol(p, n, 1, 1, 0, primitive_root(p));
    let s = symbol_of(a, b);
    let mut acc = 1;
    for k in 0..n {
        if acc == s {
            return BrauerClass::new(k as i64, n);
        }
        acc = acc * eta % p;
    }
    panic!("symbol value {s} is not a power of {eta}");
}

/// `c` with `e_n(T, S) = ζ^c`, for `ζ` the smallest element of exact order `n`.
pub fn pairing_exponent(f: &FieldDesc, value: &FieldElem, n: u64) -> u64 {
    let zeta = f.units().find(|u| u.mult_order() == n).expect("root of unity");
    (0..n).find(|&c| &zeta.pow_u64(c) == value).expect("value in μ_n")
}

/// Cyclic subgroups of `(Z/p²)^4` counted by order.
pub fn cyclic_subgroup_count(p: u64) -> u64 {
    let p4 = p.pow(4);
    1 + (p4 - 1) / (p - 1) + (p.pow(8) - p4) / (p * (p - 1))
}
