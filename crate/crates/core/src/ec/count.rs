//! Point counting: brute force for small fields, baby-step/giant-step with
//! Mestre's twist trick inside the Hasse interval above that.

use std::collections::HashMap;

use super::{Curve, EcError, Point};
use crate::arith::{lcm, mul_mod};

/// Largest field order counted by direct enumeration.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;
/// Largest field order accepted by the baby-step/giant-step route.
pub const BSGS_LIMIT: u64 = 1 << 52;

/// How [`Curve::group_order_bsgs`] reached its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountRoute {
    Bsgs,
    /// The Hasse interval held several candidates; resolved by enumeration.
    BruteForceFallback,
}

/// Counts points on `y^2 = x^3 + a4 x + a6` over a fixed prime field using a
/// table of square-root counts; shared across the curves of a search.
pub struct PrimeFieldCounter {
    p: u64,
    roots: Vec<u8>,
}

impl PrimeFieldCounter {
    pub fn new(p: u64) -> Self {
        assert!(
            p <= BRUTE_FORCE_LIMIT,
            "prime too large for a residue table"
        );
        let mut roots = vec![0u8; p as usize];
        for y in 0..p {
            roots[mul_mod(y, y, p) as usize] += 1;
        }
        PrimeFieldCounter { p, roots }
    }

    pub fn count(&self, a4: u64, a6: u64) -> u64 {
        let p = self.p;
        let mut total = 1u64;
        for x in 0..p {
            let rhs = (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(a4, x, p) + a6) % p;
            total += self.roots[rhs as usize] as u64;
        }
        total
    }
}

fn hasse_interval(q: u64) -> (u64, u64) {
    let width = isqrt(4 * q as u128) as u64;
    (q + 1 - width, q + 1 + width)
}

fn isqrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl Curve {
    /// `#E(F_q)`: enumeration up to [`BRUTE_FORCE_LIMIT`], BSGS above.
    pub fn group_order(&self) -> Result<u64, EcError> {
        if self.field.order() <= BRUTE_FORCE_LIMIT {
            Ok(self.group_order_brute())
        } else {
            self.group_order_bsgs().map(|(n, _)| n)
        }
    }

    /// Counts `1 + #{(x, y)}` by enumeration; no size check.
    pub fn group_order_brute(&self) -> u64 {
        if self.field.degree() == 1 {
            return PrimeFieldCounter::new(self.field.characteristic())
                .count(self.a4.coeffs()[0], self.a6.coeffs()[0]);
        }
        let mut total = 1u64;
        for x in self.field.elements() {
            let rhs = self.rhs(&x);
            total += if rhs.is_zero() {
                1
            } else if rhs.is_square() {
                2
            } else {
                0
            };
        }
        total
    }

    /// BSGS inside the Hasse interval, combining point orders on `E` and its
    /// quadratic twist until a single group order is consistent with both.
    pub fn group_order_bsgs(&self) -> Result<(u64, CountRoute), EcError> {
        let q = self.field.order();
        if q > BSGS_LIMIT {
            return Err(EcError::FieldTooLarge(q));
        }
        let (lo, hi) = hasse_interval(q);
        let d = self.field.non_square().expect("odd characteristic");
        let twist = self.quadratic_twist(&d)?;
        let mut exp_e = 1u64;
        let mut exp_t = 1u64;
        let candidates = |exp_e: u64, exp_t: u64| -> Vec<u64> {
            (lo..=hi)
                .filter(|&n| n % exp_e == 0 && (2 * q + 2 - n) % exp_t == 0)
                .collect()
        };
        let mut xs = self.field.elements();
        let mut attempts = 0;
        while attempts < 64 {
            let Some(x) = xs.next() else { break };
            for (curve, exp) in [(self, &mut exp_e), (&twist, &mut exp_t)] {
                if let Some(point) = curve.lift_x(&x).into_iter().next() {
                    attempts += 1;
                    let m = curve.bsgs_multiple(&point, lo, hi);
                    *exp = lcm(*exp, curve.order_dividing(&point, m));
                }
            }
            let c = candidates(exp_e, exp_t);
            if c.len() == 1 {
                return Ok((c[0], CountRoute::Bsgs));
            }
        }
        if q <= BRUTE_FORCE_LIMIT {
            return Ok((self.group_order_brute(), CountRoute::BruteForceFallback));
        }
        Err(EcError::AmbiguousOrder)
    }

    /// Some `m` in `[lo, hi]` with `mP = O`.
    fn bsgs_multiple(&self, point: &Point, lo: u64, hi: u64) -> u64 {
        let span = hi - lo + 1;
        let w = isqrt(span as u128) as u64 + 1;
        let mut baby: HashMap<Point, u64> = HashMap::with_capacity(w as usize);
        let mut acc = Point::Infinity;
        for j in 0..w {
            baby.entry(acc.clone()).or_insert(j);
            acc = self.add(&acc, point);
        }
        let step = self.mul(w as i64, point);
        let mut giant = self.mul(lo as i64, point);
        for i in 0..=w {
            if let Some(&j) = baby.get(&self.neg(&giant)) {
                let m = lo + i * w + j;
                if m <= hi || self.mul(m as i64, point).is_infinity() {
                    return m;
                }
            }
            giant = self.add(&giant, &step);
        }
        unreachable!("#E(F_q) lies in the Hasse interval")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldDesc;

    #[test]
    fn small_known_count() {
        // y^2 = x^3 + x over F_5: x=0 -> 1 point, x=2 -> 2, x=3 -> 2, plus O
        let e = Curve::over_prime(5, 1, 0).unwrap();
        assert_eq!(e.group_order().unwrap(), 4);
    }

    #[test]
    fn hasse_bound_over_f7() {
        for a4 in 0..7 {
            for a6 in 0..7 {
                if let Ok(e) = Curve::over_prime(7, a4, a6) {
                    let n = e.group_order().unwrap();
                    assert!((3..=13).contains(&n), "{n}");
                }
            }
        }
    }

    #[test]
    fn extension_field_count_matches_points() {
        let f = FieldDesc::new(5, 2).unwrap();
        let e = Curve::new(f.from_int(1), &f.variable() + &f.one()).unwrap();
        assert_eq!(e.group_order().unwrap(), e.points().unwrap().len() as u64);
    }

    #[test]
    fn bsgs_on_a_large_prime() {
        let p = 1_000_003;
        let e = Curve::over_prime(p, 3, 7).unwrap();
        let (n, route) = e.group_order_bsgs().unwrap();
        assert_eq!(route, CountRoute::Bsgs);
        assert_eq!(n, e.group_order_brute());
    }
}
