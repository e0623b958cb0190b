//! Weil pairing via Miller's algorithm.
//!
//! The primary route evaluates normalized Miller functions directly,
//! `e_n(P, Q) = (-1)^n f_{n,P}(Q) / f_{n,Q}(P)`, which never meets a zero or
//! pole once `Q ∉ <P>` and `P ∉ <Q>`; dependent pairs pair to 1. The
//! shifted-divisor route `f_P(Q+S) f_Q(-S) / (f_P(S) f_Q(P-S))` walks a
//! deterministic sequence of shift points `S` and serves as a cross-check.

use super::{Curve, EcError, Point};
use crate::ff::FieldElem;

/// Evaluation hit a zero or pole of an intermediate line.
#[derive(Debug)]
struct Degenerate;

/// Numerator/denominator pair, so the loop needs a single inversion.
struct Frac {
    num: FieldElem,
    den: FieldElem,
}

impl Frac {
    fn mul(&mut self, num: FieldElem, den: FieldElem) -> Result<(), Degenerate> {
        if num.is_zero() || den.is_zero() {
            return Err(Degenerate);
        }
        self.num = &self.num * &num;
        self.den = &self.den * &den;
        Ok(())
    }
}

impl Curve {
    /// `(l_{T,U}(R), v_{T+U}(R))`: line through `T, U` and the vertical at `T + U`.
    fn line_and_vertical(&self, t: &Point, u: &Point, r: &Point) -> (FieldElem, FieldElem) {
        let one = self.field.one();
        let (xr, yr) = match r {
            Point::Affine(x, y) => (x, y),
            Point::Infinity => unreachable!("evaluation points are affine"),
        };
        match (t, u) {
            (Point::Infinity, _) | (_, Point::Infinity) => (one.clone(), one),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                if x1 == x2 && (y1 + y2).is_zero() {
                    return (xr - x1, one);
                }
                let slope = if x1 == x2 {
                    &(&(&self.field.from_int(3) * &(x1 * x1)) + &self.a4) * &(y1 + y1).inv()
                } else {
                    &(y2 - y1) * &(x2 - x1).inv()
                };
                let line = &(yr - y1) - &(&slope * &(xr - x1));
                let x3 = self.add(t, u).x().cloned().expect("T + U is affine here");
                (line, xr - &x3)
            }
        }
    }

    fn miller_eval(&self, n: u64, p: &Point, r: &Point) -> Result<FieldElem, Degenerate> {
        let mut f = Frac {
            num: self.field.one(),
            den: self.field.one(),
        };
        if n <= 1 {
            return Ok(f.num);
        }
        if r.is_infinity() {
            return Err(Degenerate);
        }
        let mut t = p.clone();
        let bits = 64 - n.leading_zeros();
        for i in (0..bits - 1).rev() {
            let (l, v) = self.line_and_vertical(&t, &t, r);
            f.num = &f.num * &f.num;
            f.den = &f.den * &f.den;
            f.mul(l, v)?;
            t = self.add(&t, &t);
            if (n >> i) & 1 == 1 {
                let (l, v) = self.line_and_vertical(&t, p, r);
                f.mul(l, v)?;
                t = self.add(&t, p);
            }
        }
        Ok(&f.num * &f.den.inv())
    }

    /// Value at `r` of the normalized function with divisor `n(P) - n(O)`.
    /// `None` when `r` meets the support of an intermediate line.
    pub fn miller_function(&self, n: u64, p: &Point, r: &Point) -> Option<FieldElem> {
        self.miller_eval(n, p, r).ok()
    }

    fn in_span(&self, p: &Point, q: &Point, n: u64) -> bool {
        let mut acc = Point::Infinity;
        for _ in 0..n {
            if &acc == q {
                return true;
            }
            acc = self.add(&acc, p);
        }
        false
    }

    fn check_torsion(&self, p: &Point, q: &Point, n: u64) -> Result<(), EcError> {
        if n == 0 {
            return Err(EcError::NotTorsion(0));
        }
        if !self.contains(p) || !self.contains(q) {
            return Err(EcError::OffCurve);
        }
        let ch = self.field.characteristic();
        if n % ch == 0 {
            return Err(EcError::WildLevel { n, p: ch });
        }
        if !self.mul(n as i64, p).is_infinity() || !self.mul(n as i64, q).is_infinity() {
            return Err(EcError::NotTorsion(n));
        }
        Ok(())
    }

    /// `e_n(P, Q) ∈ μ_n`.
    pub fn weil_pairing(&self, p: &Point, q: &Point, n: u64) -> Result<FieldElem, EcError> {
        self.check_torsion(p, q, n)?;
        let one = self.field.one();
        if p.is_infinity() || q.is_infinity() || self.in_span(p, q, n) || self.in_span(q, p, n) {
            return Ok(one);
        }
        let fp = self.miller_eval(n, p, q).map_err(|_| degenerate())?;
        let fq = self.miller_eval(n, q, p).map_err(|_| degenerate())?;
        let ratio = &fp * &fq.inv();
        Ok(if n % 2 == 1 { -&ratio } else { ratio })
    }
}

fn degenerate() -> EcError {
    EcError::Internal("Miller evaluation met a line through an independent point".into())
}

/// Shifted-divisor Weil pairing; shift points are tried in increasing order
/// and the first one avoiding every intermediate zero and pole is used.
pub fn weil_pairing_shifted(
    curve: &Curve,
    p: &Point,
    q: &Point,
    n: u64,
) -> Result<FieldElem, EcError> {
    curve.check_torsion(p, q, n)?;
    let one = curve.field.one();
    if p.is_infinity() || q.is_infinity() || curve.in_span(p, q, n) || curve.in_span(q, p, n) {
        return Ok(one);
    }
    for x in curve.field.elements() {
        for s in curve.lift_x(&x) {
            let attempt = || -> Result<FieldElem, Degenerate> {
                let a = curve.miller_eval(n, p, &curve.add(q, &s))?;
                let b = curve.miller_eval(n, p, &s)?;
                let c = curve.miller_eval(n, q, &curve.neg(&s))?;
                let d = curve.miller_eval(n, q, &curve.sub(p, &s))?;
                for z in [&a, &b, &c, &d] {
                    if z.is_zero() {
                        return Err(Degenerate);
                    }
                }
                Ok(&(&a * &c) * &(&b * &d).inv())
            };
            if let Ok(value) = attempt() {
                return Ok(value);
            }
        }
    }
    Err(EcError::Internal(
        "no admissible shift point over the base field".into(),
    ))
}
