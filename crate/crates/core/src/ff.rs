//! Exact arithmetic in finite fields `F_p` and `F_{p^r}`.
//!
//! A field is described by a [`FieldDesc`], a cheap shared handle holding the
//! characteristic, the degree and a monic irreducible modulus. The modulus is
//! always the lexicographically smallest monic irreducible polynomial of the
//! requested degree (coefficients compared from `x^{r-1}` down to `x^0`), so
//! two independent runs build bit-identical fields and serialized elements
//! stay portable.
//!
//! Sizes are bounded by `p^r < 2^62`: every coefficient product fits in a
//! `u128` and every field order fits in an `i64` exponent.
//!
//! Elements are ordered by their integer encoding `c_0 + c_1 p + ... +
//! c_{r-1} p^{r-1}`. "Smallest" anywhere in this crate refers to that order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

use crate::arith::{self, checked_pow_below, factorize, gcd, is_prime, mul_mod, pow_mod};

/// Exclusive upper bound on field orders.
pub const MAX_FIELD_ORDER: u64 = 1 << 62;

type Coeffs = SmallVec<[u64; 12]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the 2^62 word budget")]
    TooLarge { p: u64, r: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{n} does not divide the unit group order {units}")]
    NoRootOfUnity { n: u64, units: u64 },
    #[error("expected {expected} coefficients, got {got}")]
    BadCoefficients { expected: usize, got: usize },
}

struct Inner {
    p: u64,
    r: u32,
    order: u64,
    /// Monic modulus, little-endian, length `r + 1`.
    modulus: Vec<u64>,
    /// Factorization of `order - 1`.
    unit_factors: BTreeMap<u64, usize>,
    /// Row `j` holds the coefficients of `(x^j)^p`.
    frobenius: OnceLock<Vec<Vec<u64>>>,
    generator: OnceLock<Coeffs>,
}

/// Shared descriptor of `F_{p^r}`.
#[derive(Clone)]
pub struct FieldDesc(Arc<Inner>);

impl FieldDesc {
    /// Builds `F_{p^r}` with the lexicographically smallest monic irreducible
    /// modulus of degree `r`.
    pub fn new(p: u64, r: u32) -> Result<Self, FfError> {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        if r == 0 {
            return Err(FfError::ZeroDegree);
        }
        let order = checked_pow_below(p, r, MAX_FIELD_ORDER).ok_or(FfError::TooLarge { p, r })?;
        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, r as usize)
        };
        Ok(FieldDesc(Arc::new(Inner {
            p,
            r,
            order,
            modulus,
            unit_factors: factorize(order - 1),
            frobenius: OnceLock::new(),
            generator: OnceLock::new(),
        })))
    }

    /// Shorthand for the prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, FfError> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.r
    }

    /// Number of elements `q = p^r`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Little-endian coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn unit_group_factors(&self) -> &BTreeMap<u64, usize> {
        &self.0.unit_factors
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            desc: self.clone(),
            coeffs: SmallVec::from_elem(0, self.0.r as usize),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// Image of an integer under `Z -> F_p ⊂ F_q`.
    pub fn from_int(&self, value: i64) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = arith::modulo(value, self.0.p);
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem, FfError> {
        if coeffs.len() != self.0.r as usize {
            return Err(FfError::BadCoefficients {
                expected: self.0.r as usize,
                got: coeffs.len(),
            });
        }
        Ok(FieldElem {
            desc: self.clone(),
            coeffs: coeffs.iter().map(|c| c % self.0.p).collect(),
        })
    }

    /// Element with integer encoding `index` (reduced modulo `q`).
    pub fn from_index(&self, index: u64) -> FieldElem {
        let mut rest = index % self.0.order;
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = rest % self.0.p;
            rest /= self.0.p;
        }
        e
    }

    /// All elements in increasing canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.0.order).map(move |i| self.from_index(i))
    }

    /// All nonzero elements in increasing canonical order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.0.order).map(move |i| self.from_index(i))
    }

    /// The polynomial variable `x` (a generator of the extension when `r > 1`).
    pub fn variable(&self) -> FieldElem {
        if self.0.r == 1 {
            // x ≡ 0 modulo the modulus x
            return self.zero();
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    /// Smallest element of exact multiplicative order `n`.
    pub fn unity_root(&self, n: u64) -> Result<FieldElem, FfError> {
        let units = self.0.order - 1;
        if n == 0 || units % n != 0 {
            return Err(FfError::NoRootOfUnity { n, units });
        }
        if n == 1 {
            return Ok(self.one());
        }
        // Few roots of order n for small n: enumerate the powers of one of them.
        // For large n they are dense among the units and a direct scan is cheaper.
        if n <= 1 << 20 && (n as u128) * (n as u128) < units as u128 {
            let cofactor = units / n;
            let seed = self
                .units()
                .map(|x| x.pow_u64(cofactor))
                .find(|y| y.has_order(n))
                .expect("the unit group is cyclic");
            let mut best: Option<FieldElem> = None;
            let mut power = seed.clone();
            for k in 1..=n {
                if gcd(k, n) == 1 && best.as_ref().map_or(true, |b| power.index() < b.index()) {
                    best = Some(power.clone());
                }
                power = &power * &seed;
            }
            return Ok(best.expect("phi(n) >= 1"));
        }
        Ok(self
            .units()
            .find(|x| x.has_order(n))
            .expect("the unit group is cyclic"))
    }

    /// Smallest generator of the unit group.
    pub fn generator(&self) -> FieldElem {
        let coeffs = self.0.generator.get_or_init(|| {
            self.unity_root(self.0.order - 1)
                .expect("q - 1 divides q - 1")
                .coeffs
        });
        FieldElem {
            desc: self.clone(),
            coeffs: coeffs.clone(),
        }
    }

    /// Smallest non-square; `None` in characteristic 2.
    pub fn non_square(&self) -> Option<FieldElem> {
        if self.0.p == 2 {
            return None;
        }
        self.units().find(|x| !x.is_square())
    }

    fn same(&self, other: &FieldDesc) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.r, self.0.modulus)
    }
}

/// Operations exposed through the checked entry point [`FieldElem::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

/// Second operand of [`FieldElem::apply`].
#[derive(Debug, Clone)]
pub enum Operand<'a> {
    Elem(&'a FieldElem),
    Int(i64),
    None,
}

/// Element of `F_{p^r}`, stored as `r` coefficients in `[0, p)` of a
/// polynomial reduced by the field modulus.
#[derive(Clone)]
pub struct FieldElem {
    desc: FieldDesc,
    coeffs: Coeffs,
}

impl FieldElem {
    pub fn field(&self) -> &FieldDesc {
        &self.desc
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Integer encoding `sum c_i p^i`; the canonical element order.
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.desc.0.p + c)
    }

    /// Checked arithmetic: reports descriptor mismatches and zero inversion
    /// instead of panicking.
    pub fn apply(op: FieldOp, x: &FieldElem, y: Operand<'_>) -> Result<FieldElem, FfError> {
        let other = |y: Operand<'_>| match y {
            Operand::Elem(e) if e.desc == x.desc => Ok(e.clone()),
            Operand::Elem(_) => Err(FfError::FieldMismatch),
            Operand::Int(v) => Ok(x.desc.from_int(v)),
            Operand::None => Err(FfError::BadCoefficients {
                expected: 1,
                got: 0,
            }),
        };
        match op {
            FieldOp::Add => Ok(x + &other(y)?),
            FieldOp::Sub => Ok(x - &other(y)?),
            FieldOp::Mul => Ok(x * &other(y)?),
            FieldOp::Inv => x.try_inv(),
            FieldOp::Pow => match y {
                Operand::Int(e) => x.try_pow(e),
                _ => Err(FfError::BadCoefficients {
                    expected: 1,
                    got: 0,
                }),
            },
        }
    }

    pub fn try_inv(&self) -> Result<FieldElem, FfError> {
        if self.is_zero() {
            return Err(FfError::ZeroInverse);
        }
        if self.desc.0.r == 1 {
            let p = self.desc.0.p;
            let inv = arith::inv_mod(self.coeffs[0], p).expect("nonzero residue modulo a prime");
            return Ok(self.desc.from_int(inv as i64));
        }
        // x^{-1} = x^{p + ... + p^{r-1}} / N(x), and the norm lies in F_p
        let mut conj = self.frobenius(1);
        for k in 2..self.desc.0.r {
            conj = &conj * &self.frobenius(k);
        }
        let norm = (self * &conj).coeffs[0];
        let p = self.desc.0.p;
        let scale = arith::inv_mod(norm, p).expect("norm of a nonzero element is nonzero");
        Ok(&conj * &self.desc.from_int(scale as i64))
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> FieldElem {
        self.try_inv().expect("inverse of zero")
    }

    /// `self^e` for any integer exponent; negative exponents need `self != 0`.
    pub fn try_pow(&self, e: i64) -> Result<FieldElem, FfError> {
        if e >= 0 {
            Ok(self.pow_u64(e as u64))
        } else {
            let inv = self.try_inv()?;
            Ok(inv.pow_u64(e.unsigned_abs()))
        }
    }

    pub fn pow(&self, e: i64) -> FieldElem {
        self.try_pow(e).expect("negative power of zero")
    }

    /// Square-and-multiply.
    pub fn pow_u64(&self, mut e: u64) -> FieldElem {
        if self.desc.0.r == 1 {
            let p = self.desc.0.p;
            return self.desc.from_int(pow_mod(self.coeffs[0], e, p) as i64);
        }
        let mut acc = self.desc.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `x -> x^{p^k}`, applied as an `F_p`-linear map.
    pub fn frobenius(&self, k: u32) -> FieldElem {
        let inner = &self.desc.0;
        let steps = k % inner.r;
        if steps == 0 {
            return self.clone();
        }
        let p = inner.p;
        let table = inner.frobenius.get_or_init(|| {
            let xp = self.desc.variable().pow_u64(p);
            let mut rows = Vec::with_capacity(inner.r as usize);
            let mut img = self.desc.one();
            for _ in 0..inner.r {
                rows.push(img.coeffs.to_vec());
                img = &img * &xp;
            }
            rows
        });
        let mut coeffs = self.coeffs.clone();
        for _ in 0..steps {
            let mut next: Coeffs = SmallVec::from_elem(0, coeffs.len());
            for (&c, row) in coeffs.iter().zip(table) {
                if c == 0 {
                    continue;
                }
                for (acc, &t) in next.iter_mut().zip(row) {
                    *acc = if p < 1 << 32 {
                        (*acc + c * t % p) % p
                    } else {
                        ((*acc as u128 + mul_mod(c, t, p) as u128) % p as u128) as u64
                    };
                }
            }
            coeffs = next;
        }
        FieldElem {
            desc: self.desc.clone(),
            coeffs,
        }
    }

    /// Exact multiplicative order.
    pub fn try_mult_order(&self) -> Result<u64, FfError> {
        if self.is_zero() {
            return Err(FfError::ZeroInverse);
        }
        let mut order = self.desc.0.order - 1;
        for (&l, _) in self.desc.0.unit_factors.iter() {
            while order % l == 0 && self.pow_u64(order / l).is_one() {
                order /= l;
            }
        }
        Ok(order)
    }

    pub fn mult_order(&self) -> u64 {
        self.try_mult_order().expect("order of zero")
    }

    fn has_order(&self, n: u64) -> bool {
        if !self.pow_u64(n).is_one() {
            return false;
        }
        factorize(n).keys().all(|&l| !self.pow_u64(n / l).is_one())
    }

    /// Whether `self` lies in `(F_q^×)^n` (zero is never an n-th power here).
    pub fn is_nth_power(&self, n: u64) -> bool {
        if self.is_zero() {
            return false;
        }
        let units = self.desc.0.order - 1;
        self.pow_u64(units / gcd(n, units)).is_one()
    }

    pub fn is_square(&self) -> bool {
        self.is_zero() || self.desc.0.p == 2 || self.is_nth_power(2)
    }

    /// A square root (Tonelli–Shanks), if one exists. Odd characteristic.
    pub fn sqrt(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let q = self.desc.0.order;
        if self.desc.0.p == 2 {
            return Some(self.pow_u64(q / 2));
        }
        if !self.is_square() {
            return None;
        }
        let mut s = 0u32;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self.desc.non_square().expect("odd characteristic");
        let mut m = s;
        let mut c = z.pow_u64(t);
        let mut x = self.pow_u64((t + 1) / 2);
        let mut b = self.pow_u64(t);
        while !b.is_one() {
            let mut i = 0u32;
            let mut probe = b.clone();
            while !probe.is_one() {
                probe = &probe * &probe;
                i += 1;
            }
            let mut shift = c.clone();
            for _ in 0..(m - i - 1) {
                shift = &shift * &shift;
            }
            x = &x * &shift;
            c = &shift * &shift;
            b = &b * &c;
            m = i;
        }
        Some(x)
    }

    fn check(&self, other: &FieldElem) {
        assert!(self.desc == other.desc, "{}", FfError::FieldMismatch);
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.desc == other.desc && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.desc.0.p.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.iter().rev().cmp(other.coeffs.iter().rev())
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:[", self.desc.0.p, self.desc.0.r)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        let p = self.desc.0.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FieldElem {
            desc: self.desc.clone(),
            coeffs,
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        let p = self.desc.0.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(rhs.coeffs.iter())
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        FieldElem {
            desc: self.desc.clone(),
            coeffs,
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        let p = self.desc.0.p;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| if a == 0 { 0 } else { p - a })
            .collect();
        FieldElem {
            desc: self.desc.clone(),
            coeffs,
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        let inner = &self.desc.0;
        let p = inner.p;
        if inner.r == 1 {
            let mut coeffs = Coeffs::new();
            coeffs.push(mul_mod(self.coeffs[0], rhs.coeffs[0], p));
            return FieldElem {
                desc: self.desc.clone(),
                coeffs,
            };
        }
        let r = inner.r as usize;
        let mut prod: SmallVec<[u64; 16]> = SmallVec::from_elem(0, 2 * r - 1);
        if p < 1 << 32 {
            // each reduced product is below 2^32, so a row of r of them cannot overflow
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    prod[i + j] += a * b % p;
                }
            }
            for c in prod.iter_mut() {
                *c %= p;
            }
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    let c = &mut prod[i + j];
                    *c = ((*c as u128 + a as u128 * b as u128) % p as u128) as u64;
                }
            }
        }
        reduce_in_place(&mut prod, &inner.modulus, p);
        FieldElem {
            desc: self.desc.clone(),
            coeffs: prod.into_iter().collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -(&self)
    }
}

/// Reduces a little-endian polynomial modulo a monic `modulus`, in place.
fn reduce_in_place<A: smallvec::Array<Item = u64>>(
    poly: &mut SmallVec<A>,
    modulus: &[u64],
    p: u64,
) {
    let r = modulus.len() - 1;
    while poly.len() > r {
        let lead = poly.pop().expect("len > r");
        if lead == 0 {
            continue;
        }
        let shift = poly.len() - r;
        for (i, &m) in modulus[..r].iter().enumerate() {
            let t = mul_mod(lead, m, p);
            let c = &mut poly[shift + i];
            *c = if *c >= t { *c - t } else { *c + p - t };
        }
    }
    poly.resize(r, 0);
}

// Dense polynomials over F_p used only while choosing a modulus.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut prod: SmallVec<[u64; 16]> = SmallVec::from_elem(0, a.len() + b.len() - 1);
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    reduce_in_place(&mut prod, modulus, p);
    prod.into_vec()
}

/// `x^{p^k} mod f`, via `k` successive p-th powers.
fn x_pow_p_iter(modulus: &[u64], p: u64, k: usize) -> Vec<u64> {
    let r = modulus.len() - 1;
    let mut x = vec![0u64; r];
    if r == 1 {
        x[0] = (p - modulus[0]) % p;
    } else {
        x[1] = 1;
    }
    for _ in 0..k {
        let mut acc = {
            let mut one = vec![0u64; r];
            one[0] = 1;
            one
        };
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, modulus, p);
            }
            base = poly_mulmod(&base, &base, modulus, p);
            e >>= 1;
        }
        x = acc;
    }
    x
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let lead_inv = arith::inv_mod(*b.last().unwrap(), p).expect("nonzero leading coefficient");
    let mut a = trim(a.to_vec());
    while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
        let coef = mul_mod(*a.last().unwrap(), lead_inv, p);
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            let t = mul_mod(coef, bi, p);
            a[shift + i] = (a[shift + i] + p - t) % p;
        }
        a = trim(a);
        if a.len() < b.len() {
            break;
        }
    }
    a
}

fn poly_gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1 && a[0] != 0
}

/// Rabin's irreducibility test for a monic polynomial of degree `r`.
pub(crate) fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let r = modulus.len() - 1;
    if r == 1 {
        return true;
    }
    let mut x = vec![0u64; r];
    x[1] = 1;
    if x_pow_p_iter(modulus, p, r) != x {
        return false;
    }
    for &l in factorize(r as u64).keys() {
        let mut h = x_pow_p_iter(modulus, p, r / l as usize);
        h[1] = (h[1] + p - 1) % p;
        if !poly_gcd_is_one(modulus, &h, p) {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, r: usize) -> Vec<u64> {
    // Lex order from the x^{r-1} coefficient down: the index below encodes
    // c_{r-1} as the most significant digit.
    let mut digits = vec![0u64; r];
    loop {
        let mut modulus: Vec<u64> = digits.clone();
        modulus.push(1);
        if modulus[0] != 0 && is_irreducible(&modulus, p) {
            return modulus;
        }
        // increment c_0 fastest
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < r, "an irreducible polynomial of every degree exists");
        }
    }
}
