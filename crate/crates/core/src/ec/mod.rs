//! Elliptic curves `y^2 = x^3 + a4 x + a6` over `F_q`, residue characteristic > 3.

mod count;
mod level;
mod pairing;

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ff::{FieldDesc, FieldElem};

pub use count::{CountRoute, PrimeFieldCounter, BRUTE_FORCE_LIMIT, BSGS_LIMIT};
pub use level::{full_level_search, LevelRecord, LevelStructure, SearchOptions, TorsionBasis};
pub use pairing::weil_pairing_shifted;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EcError {
    #[error("short Weierstrass form needs residue characteristic > 3 (got {0})")]
    SmallCharacteristic(u64),
    #[error("singular curve: 4a4^3 + 27a6^2 = 0")]
    Singular,
    #[error("coefficients live in different fields")]
    FieldMismatch,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("point is not {0}-torsion")]
    NotTorsion(u64),
    #[error("n = {n} is divisible by the characteristic {p}")]
    WildLevel { n: u64, p: u64 },
    #[error("E[{0}](F_q) is not isomorphic to (Z/{0})^2")]
    FullTorsionAbsent(u64),
    #[error("field of order {0} exceeds the point-counting budget")]
    FieldTooLarge(u64),
    #[error("point order could not be pinned down inside the Hasse interval")]
    AmbiguousOrder,
    #[error("twisting element must be a nonzero non-square")]
    BadTwist,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(FieldElem, FieldElem),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&FieldElem> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }
}

/// Infinity first, then affine points by `(x, y)` in canonical element order.
impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => Ordering::Equal,
            (Point::Infinity, _) => Ordering::Less,
            (_, Point::Infinity) => Ordering::Greater,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1).cmp(&(x2, y2)),
        }
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Point::Infinity => serializer.serialize_str("O"),
            Point::Affine(x, y) => [x, y].serialize(serializer),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Curve {
    field: FieldDesc,
    a4: FieldElem,
    a6: FieldElem,
}

impl Curve {
    pub fn new(a4: FieldElem, a6: FieldElem) -> Result<Self, EcError> {
        if a4.field() != a6.field() {
            return Err(EcError::FieldMismatch);
        }
        let field = a4.field().clone();
        if field.characteristic() <= 3 {
            return Err(EcError::SmallCharacteristic(field.characteristic()));
        }
        let disc = &(&field.from_int(4) * &a4.pow_u64(3)) + &(&field.from_int(27) * &a6.pow_u64(2));
        if disc.is_zero() {
            return Err(EcError::Singular);
        }
        Ok(Curve { field, a4, a6 })
    }

    /// Curve over a prime field from integer coefficients.
    pub fn over_prime(p: u64, a4: i64, a6: i64) -> Result<Self, EcError> {
        let field = FieldDesc::prime(p).map_err(|_| EcError::SmallCharacteristic(p))?;
        Curve::new(field.from_int(a4), field.from_int(a6))
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn a4(&self) -> &FieldElem {
        &self.a4
    }

    pub fn a6(&self) -> &FieldElem {
        &self.a6
    }

    /// `x^3 + a4 x + a6`.
    pub fn rhs(&self, x: &FieldElem) -> FieldElem {
        let x2 = x * x;
        &(&(&x2 * x) + &(&self.a4 * x)) + &self.a6
    }

    pub fn contains(&self, point: &Point) -> bool {
        match point {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                x.field() == &self.field && y.field() == &self.field && &(y * y) == &self.rhs(x)
            }
        }
    }

    pub fn point(&self, x: FieldElem, y: FieldElem) -> Result<Point, EcError> {
        let p = Point::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(EcError::OffCurve)
        }
    }

    pub fn neg(&self, point: &Point) -> Point {
        match point {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y),
        }
    }

    /// Chord-and-tangent addition; inputs are trusted to lie on the curve.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        match (p, q) {
            (Point::Infinity, _) => q.clone(),
            (_, Point::Infinity) => p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                let slope = if x1 == x2 {
                    if (y1 + y2).is_zero() {
                        return Point::Infinity;
                    }
                    let num = &(&self.field.from_int(3) * &(x1 * x1)) + &self.a4;
                    &num * &(y1 + y1).inv()
                } else {
                    &(y2 - y1) * &(x2 - x1).inv()
                };
                let x3 = &(&(&slope * &slope) - x1) - x2;
                let y3 = &(&slope * &(x1 - &x3)) - y1;
                Point::Affine(x3, y3)
            }
        }
    }

    pub fn try_add(&self, p: &Point, q: &Point) -> Result<Point, EcError> {
        if !self.contains(p) || !self.contains(q) {
            return Err(EcError::OffCurve);
        }
        Ok(self.add(p, q))
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Point {
        self.add(p, &self.neg(q))
    }

    /// Double-and-add; negative multipliers negate first.
    pub fn mul(&self, m: i64, point: &Point) -> Point {
        let mut base = if m < 0 {
            self.neg(point)
        } else {
            point.clone()
        };
        let mut k = m.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn try_mul(&self, m: i64, point: &Point) -> Result<Point, EcError> {
        if !self.contains(point) {
            return Err(EcError::OffCurve);
        }
        Ok(self.mul(m, point))
    }

    /// Exact order of a point known to be killed by `multiple`.
    pub fn order_dividing(&self, point: &Point, multiple: u64) -> u64 {
        let mut order = multiple;
        for &l in crate::arith::factorize(multiple).keys() {
            while order % l == 0 && self.mul((order / l) as i64, point).is_infinity() {
                order /= l;
            }
        }
        order
    }

    /// Affine points with the given x-coordinate, in increasing y order.
    pub fn lift_x(&self, x: &FieldElem) -> Vec<Point> {
        let rhs = self.rhs(x);
        match rhs.sqrt() {
            None => vec![],
            Some(y) if y.is_zero() => vec![Point::Affine(x.clone(), y)],
            Some(y) => {
                let neg = -&y;
                let (lo, hi) = if y < neg { (y, neg) } else { (neg, y) };
                vec![Point::Affine(x.clone(), lo), Point::Affine(x.clone(), hi)]
            }
        }
    }

    /// Every rational point, infinity first, then lexicographic.
    pub fn points(&self) -> Result<Vec<Point>, EcError> {
        if self.field.order() > BRUTE_FORCE_LIMIT {
            return Err(EcError::FieldTooLarge(self.field.order()));
        }
        let mut out = vec![Point::Infinity];
        for x in self.field.elements() {
            out.extend(self.lift_x(&x));
        }
        Ok(out)
    }

    /// `y^2 = x^3 + d^2 a4 x + d^3 a6` for a non-square `d`.
    pub fn quadratic_twist(&self, d: &FieldElem) -> Result<Curve, EcError> {
        if d.field() != &self.field {
            return Err(EcError::FieldMismatch);
        }
        if d.is_zero() || d.is_square() {
            return Err(EcError::BadTwist);
        }
        let d2 = d * d;
        let d3 = &d2 * d;
        Curve::new(&d2 * &self.a4, &d3 * &self.a6)
    }

    /// Same curve over `F_q`? Compared through the j-invariant class: two
    /// curves are isomorphic iff `a4' = u^4 a4`, `a6' = u^6 a6` for a unit `u`.
    pub fn is_isomorphic(&self, other: &Curve) -> bool {
        if self.field != other.field {
            return false;
        }
        self.field.units().any(|u| {
            let u2 = &u * &u;
            let u4 = &u2 * &u2;
            let u6 = &u4 * &u2;
            &u4 * &self.a4 == other.a4 && &u6 * &self.a6 == other.a6
        })
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + {} x + {}", self.a4, self.a6)
    }
}

impl Serialize for Curve {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Curve", 2)?;
        s.serialize_field("a4", &self.a4)?;
        s.serialize_field("a6", &self.a6)?;
        s.end()
    }
}
