//! `Br(Q_p) ≅ Q/Z` through Hasse invariants of tame symbol algebras.
//!
//! With `μ_n ⊂ Q_p` (that is `n | p - 1`) the symbol algebra `(a, b)_n` has
//! invariant read off the tame symbol
//!
//! ```text
//! (a, b) = ( (-1)^{v(a) v(b)} a^{v(b)} b^{-v(a)} )^{(p-1)/n}  mod p,
//! ```
//!
//! an element of `μ_n(F_p)`. Its discrete logarithm in base
//! `η_n = (p, g)`, with `g` the smallest generator of `F_p^×`, divided by `n` is
//! the invariant. This fixes `inv(p, g) = 1/n` at every degree, and since
//! `η_{nm}^m = η_n` the orientation is compatible with change of degree.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{gcd, modulo};
use crate::ff::FieldElem;
use crate::kummer::{KummerClass, KummerError, TameContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrauerError {
    #[error("tame symbols need n | p - 1 over Q_p (p = {p}, n = {n}, f = {f})")]
    ContextViolation { p: u64, n: u64, f: u32 },
    #[error("classes belong to different contexts")]
    ContextMismatch,
    #[error("target {0} has denominator not dividing n = {1}")]
    BadTarget(BrauerClass, u64),
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("cannot parse {0:?} as num/den")]
    Parse(String),
    #[error(transparent)]
    Kummer(#[from] KummerError),
}

/// Element of `Q/Z` as a reduced fraction in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerClass {
    num: u64,
    den: u64,
}

impl BrauerClass {
    pub const ZERO: BrauerClass = BrauerClass { num: 0, den: 1 };

    /// The class of `num/den`, reduced modulo 1.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let num = modulo(num, den);
        let g = gcd(num, den);
        if num == 0 {
            return Self::ZERO;
        }
        BrauerClass {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    /// Period, which equals the index over a local field.
    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `m · self`.
    pub fn times(&self, m: i64) -> Self {
        let k = (modulo(m, self.den) as u128 * self.num as u128 % self.den as u128) as i64;
        BrauerClass::new(k, self.den)
    }

    /// `self / 2` for odd denominators.
    pub fn halve(&self) -> Option<Self> {
        let inv2 = crate::arith::inv_mod(2, self.den)?;
        Some(self.times(inv2 as i64))
    }
}

impl Add for BrauerClass {
    type Output = BrauerClass;

    fn add(self, rhs: BrauerClass) -> BrauerClass {
        let den = self.den / gcd(self.den, rhs.den) * rhs.den;
        let a = self.num as u128 * (den / self.den) as u128;
        let b = rhs.num as u128 * (den / rhs.den) as u128;
        BrauerClass::new(((a + b) % den as u128) as i64, den)
    }
}

impl Neg for BrauerClass {
    type Output = BrauerClass;

    fn neg(self) -> BrauerClass {
        BrauerClass::new(-(self.num as i64), self.den)
    }
}

impl Sub for BrauerClass {
    type Output = BrauerClass;

    fn sub(self, rhs: BrauerClass) -> BrauerClass {
        self + (-rhs)
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BrauerClass {
    type Err = BrauerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BrauerError::Parse(s.to_string());
        let (num, den) = s.split_once('/').ok_or_else(bad)?;
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(BrauerClass::new(num, den))
    }
}

impl Serialize for BrauerClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn check_symbol_context(ctx: &TameContext) -> Result<(), BrauerError> {
    if ctx.f() != 1 || (ctx.p() - 1) % ctx.n() != 0 {
        return Err(BrauerError::ContextViolation {
            p: ctx.p(),
            n: ctx.n(),
            f: ctx.f(),
        });
    }
    Ok(())
}

fn check_pair(a: &KummerClass, b: &KummerClass) -> Result<(), BrauerError> {
    if a.ctx() != b.ctx() {
        return Err(BrauerError::ContextMismatch);
    }
    check_symbol_context(a.ctx())
}

/// Tame norm-residue symbol `(a, b)_n ∈ μ_n(F_p)`.
pub fn tame_hilbert_symbol(a: &KummerClass, b: &KummerClass) -> Result<FieldElem, BrauerError> {
    check_pair(a, b)?;
    let ctx = a.ctx();
    let (va, vb) = (a.v() as i64, b.v() as i64);
    let sign = if (va * vb) % 2 == 0 { 1 } else { -1 };
    let inner = &(&ctx.residue_field().from_int(sign) * &a.u().pow(vb)) * &b.u().pow(-va);
    Ok(inner.pow_u64((ctx.p() - 1) / ctx.n()))
}

/// `η_n = (p, g)_n`, the base of the invariant logarithm.
fn orientation_root(ctx: &TameContext) -> FieldElem {
    let g = ctx.generator();
    g.pow(-(((ctx.p() - 1) / ctx.n()) as i64))
}

/// Hasse invariant of the symbol algebra `(a, b)_n`.
pub fn symbol_invariant(a: &KummerClass, b: &KummerClass) -> Result<BrauerClass, BrauerError> {
    let value = tame_hilbert_symbol(a, b)?;
    let n = a.ctx().n();
    let eta = orientation_root(a.ctx());
    let mut power = a.ctx().residue_field().one();
    for k in 0..n {
        if power == value {
            return Ok(BrauerClass::new(k as i64, n));
        }
        power = &power * &eta;
    }
    Err(BrauerError::IdentityViolated(format!(
        "{value} is not in μ_{n}"
    )))
}

/// Evaluates `[χ_a, b)_n` and `[m∘χ_a, b)_{nm}` independently and checks they
/// agree. Under Kummer duality `m∘χ_a` is the class of `a^m` modulo
/// `nm`-th powers.
pub fn degree_shift_invariant(
    a: &KummerClass,
    b: &KummerClass,
    m: u64,
) -> Result<BrauerClass, BrauerError> {
    check_pair(a, b)?;
    let ctx = a.ctx();
    let low = symbol_invariant(a, b)?;
    if m == 1 {
        return Ok(low);
    }
    let big = TameContext::new(ctx.p(), ctx.n() * m, 1)?;
    check_symbol_context(&big)?;
    let a_shift = big.reduce((a.v() * m) as i64, &a.u().pow_u64(m))?;
    let b_lift = big.reduce(b.v() as i64, b.u())?;
    let high = symbol_invariant(&a_shift, &b_lift)?;
    if high != low {
        return Err(BrauerError::IdentityViolated(format!(
            "degree {} gives {high}, degree {} gives {low}",
            big.n(),
            ctx.n()
        )));
    }
    Ok(high)
}

/// A pair `(p-class, unit class)` whose symbol has the requested invariant.
pub fn solve_symbol(
    target: BrauerClass,
    ctx: &TameContext,
) -> Result<(KummerClass, KummerClass), BrauerError> {
    check_symbol_context(ctx)?;
    if ctx.n() % target.denominator() != 0 {
        return Err(BrauerError::BadTarget(target, ctx.n()));
    }
    if target.is_zero() {
        return Ok((ctx.trivial(), ctx.trivial()));
    }
    let pi = ctx.uniformizer();
    for u in ctx.unit_representatives() {
        let b = ctx.reduce(0, &u)?;
        if symbol_invariant(&pi, &b)? == target {
            return Ok((pi, b));
        }
    }
    Err(BrauerError::IdentityViolated(format!(
        "no unit realizes {target}"
    )))
}
