//! Exact scalar arithmetic for the three coefficient fields the workbench
//! supports: the rationals `Q`, the cyclotomic field `Q(zeta_3)`, and prime
//! fields `F_p` with `p = 1 (mod 3)`.
//!
//! All arithmetic is exact. Cyclotomic elements are stored on the basis
//! `{1, zeta}` with `zeta^2 = -1 - zeta`, so products never leave the basis.
//! Prime fields choose the smallest residue `g` with `g^3 = 1`, `g != 1` as
//! their primitive cube root, which keeps every derived table reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Errors raised while building or using a field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no cube root of unity: {0} is not congruent to 1 mod 3")]
    NoCubeRoot(u64),
    #[error("cannot specialize {0} modulo {1}: denominator vanishes")]
    BadSpecialization(String, u64),
    #[error("unknown field spec `{0}` (expected q, qzeta, or fp:<p>)")]
    UnknownSpec(String),
}

/// Errors raised while parsing a scalar from text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar `{text}` at offset {offset}: {reason}")]
pub struct ParseScalarError {
    pub text: String,
    pub offset: usize,
    pub reason: String,
}

impl ParseScalarError {
    fn new(text: &str, offset: usize, reason: impl Into<String>) -> Self {
        ParseScalarError { text: text.to_string(), offset, reason: reason.into() }
    }
}

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Cyclotomic3,
    Prime(u64),
}

impl FieldSpec {
    /// Parse `q`, `qzeta`, or `fp:<p>`.
    pub fn parse(s: &str) -> Result<FieldSpec, FieldError> {
        match s {
            "q" => Ok(FieldSpec::Rationals),
            "qzeta" => Ok(FieldSpec::Cyclotomic3),
            _ => match s.strip_prefix("fp:") {
                Some(num) => match num.parse::<u64>() {
                    Ok(p) => Ok(FieldSpec::Prime(p)),
                    Err(_) => Err(FieldError::UnknownSpec(s.to_string())),
                },
                None => Err(FieldError::UnknownSpec(s.to_string())),
            },
        }
    }

    /// Check the field exists: primes must be prime and 1 mod 3 so that a
    /// primitive cube root of unity is available.
    pub fn validate(&self) -> Result<(), FieldError> {
        match *self {
            FieldSpec::Rationals | FieldSpec::Cyclotomic3 => Ok(()),
            FieldSpec::Prime(p) => {
                if !is_prime(p) {
                    Err(FieldError::NotPrime(p))
                } else if p % 3 != 1 {
                    Err(FieldError::NoCubeRoot(p))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Cyclotomic3 => write!(f, "qzeta"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// A validated field handle, as produced by [`make_field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Cyclotomic3,
    Prime(u64),
}

/// Validate a [`FieldSpec`] and return the corresponding handle.
pub fn make_field(spec: FieldSpec) -> Result<Field, FieldError> {
    spec.validate()?;
    Ok(match spec {
        FieldSpec::Rationals => Field::Rationals,
        FieldSpec::Cyclotomic3 => Field::Cyclotomic3,
        FieldSpec::Prime(p) => Field::Prime(p),
    })
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The smallest residue `g` with `g^3 = 1 mod p` and `g != 1`.
/// Requires `p` prime with `p = 1 (mod 3)`.
pub fn primitive_cube_root_mod(p: u64) -> u64 {
    debug_assert!(is_prime(p) && p % 3 == 1);
    // Any h with h^((p-1)/3) != 1 yields a nontrivial cube root; the three
    // cube roots of 1 are {1, r, r^2}, so the smallest nontrivial one is
    // min(r, r^2).
    let e = (p - 1) / 3;
    for h in 2..p {
        let r = pow_mod(h, e, p);
        if r != 1 {
            return r.min(mul_mod(r, r, p));
        }
    }
    unreachable!("a prime p = 1 mod 3 has a non-cube residue");
}

/// Common interface of the supported exact coefficient fields.
///
/// `Ctx` carries whatever data the field needs to construct elements: nothing
/// for the characteristic-0 fields, the modulus for `F_p`.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// The field's chosen primitive cube root of unity, if it has one.
    fn zeta(ctx: &Self::Ctx) -> Option<Self>;
    fn parse_scalar(ctx: &Self::Ctx, s: &str) -> Result<Self, ParseScalarError>;
    fn field_name(ctx: &Self::Ctx) -> String;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---- Q ----

impl Scalar for BigRational {
    type Ctx = ();

    fn from_int(_ctx: &(), n: i64) -> Self {
        big(n)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() { None } else { Some(self.recip()) }
    }

    fn zeta(_ctx: &()) -> Option<Self> {
        None
    }

    fn parse_scalar(_ctx: &(), s: &str) -> Result<Self, ParseScalarError> {
        let (c0, c1) = parse_rational_pair(s)?;
        if !c1.is_zero() {
            return Err(ParseScalarError::new(s, 0, "w is not an element of q"));
        }
        Ok(c0)
    }

    fn field_name(_ctx: &()) -> String {
        "q".to_string()
    }
}

// ---- Q(zeta_3) ----

/// An element `c0 + c1*zeta` of `Q(zeta_3)`, with `zeta^2 = -1 - zeta`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QZeta3 {
    pub c0: BigRational,
    pub c1: BigRational,
}

impl QZeta3 {
    pub fn new(c0: BigRational, c1: BigRational) -> Self {
        QZeta3 { c0, c1 }
    }

    pub fn from_rational(r: BigRational) -> Self {
        QZeta3 { c0: r, c1: BigRational::zero() }
    }

    pub fn int(n: i64) -> Self {
        QZeta3::from_rational(big(n))
    }

    /// The generator zeta itself.
    pub fn gen_zeta() -> Self {
        QZeta3 { c0: BigRational::zero(), c1: BigRational::one() }
    }

    /// Field norm `c0^2 - c0*c1 + c1^2`; zero only at zero.
    pub fn norm(&self) -> BigRational {
        &self.c0 * &self.c0 - &self.c0 * &self.c1 + &self.c1 * &self.c1
    }
}

impl Add for QZeta3 {
    type Output = QZeta3;
    fn add(self, rhs: QZeta3) -> QZeta3 {
        QZeta3 { c0: self.c0 + rhs.c0, c1: self.c1 + rhs.c1 }
    }
}

impl Sub for QZeta3 {
    type Output = QZeta3;
    fn sub(self, rhs: QZeta3) -> QZeta3 {
        QZeta3 { c0: self.c0 - rhs.c0, c1: self.c1 - rhs.c1 }
    }
}

impl Neg for QZeta3 {
    type Output = QZeta3;
    fn neg(self) -> QZeta3 {
        QZeta3 { c0: -self.c0, c1: -self.c1 }
    }
}

impl Mul for QZeta3 {
    type Output = QZeta3;
    fn mul(self, rhs: QZeta3) -> QZeta3 {
        // (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2, and z^2 = -1 - z.
        let ac = &self.c0 * &rhs.c0;
        let bd = &self.c1 * &rhs.c1;
        let ad_bc = &self.c0 * &rhs.c1 + &self.c1 * &rhs.c0;
        QZeta3 { c0: ac - &bd, c1: ad_bc - bd }
    }
}

impl Zero for QZeta3 {
    fn zero() -> Self {
        QZeta3 { c0: BigRational::zero(), c1: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }
}

impl One for QZeta3 {
    fn one() -> Self {
        QZeta3 { c0: BigRational::one(), c1: BigRational::zero() }
    }
}

impl fmt::Display for QZeta3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            return write!(f, "{}", self.c0);
        }
        if self.c0.is_zero() {
            return write!(f, "{}*w", self.c1);
        }
        if self.c1.is_negative() {
            write!(f, "{}-{}*w", self.c0, -self.c1.clone())
        } else {
            write!(f, "{}+{}*w", self.c0, self.c1)
        }
    }
}

impl Scalar for QZeta3 {
    type Ctx = ();

    fn from_int(_ctx: &(), n: i64) -> Self {
        QZeta3::int(n)
    }

    fn inv(&self) -> Option<Self> {
        // 1/(a + b z) = (a - b - b z)/norm, since (a + b z)(a - b - b z) = norm.
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let ninv = n.recip();
        Some(QZeta3 {
            c0: (&self.c0 - &self.c1) * &ninv,
            c1: -self.c1.clone() * ninv,
        })
    }

    fn zeta(_ctx: &()) -> Option<Self> {
        Some(QZeta3::gen_zeta())
    }

    fn parse_scalar(_ctx: &(), s: &str) -> Result<Self, ParseScalarError> {
        let (c0, c1) = parse_rational_pair(s)?;
        Ok(QZeta3 { c0, c1 })
    }

    fn field_name(_ctx: &()) -> String {
        "qzeta".to_string()
    }
}

// ---- F_p ----

/// A residue in `F_p`. The additive and multiplicative identities carry no
/// modulus (`m = 0`) until they combine with a bound element, so that
/// `Zero::zero()` and `One::one()` stay context-free. Unbound values are
/// integer constants stored as wrapping `u64` (two's complement for the
/// negatives that subtraction produces); binding lifts them signed, which
/// is exact for any constant below `2^63` in magnitude.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    v: u64,
    m: u64,
}

impl Fp {
    pub fn new(p: u64, v: i64) -> Self {
        debug_assert!(p > 1);
        let r = v.rem_euclid(p as i64) as u64;
        Fp { v: r, m: p }
    }

    pub fn residue(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Signed lift of an unbound constant into `Z/m`.
    fn bind(v: u64, m: u64) -> u64 {
        ((v as i64) as i128).rem_euclid(m as i128) as u64
    }

    fn unify(a: Fp, b: Fp) -> (u64, u64, u64) {
        match (a.m, b.m) {
            (0, 0) => (a.v, b.v, 0),
            (0, m) => (Fp::bind(a.v, m), b.v % m, m),
            (m, 0) => (a.v % m, Fp::bind(b.v, m), m),
            (m1, m2) => {
                assert_eq!(m1, m2, "mixed moduli {m1} and {m2}");
                (a.v % m1, b.v % m1, m1)
            }
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Fp) -> bool {
        let (a, b, _) = Fp::unify(*self, *other);
        a == b
    }
}

impl Eq for Fp {}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, m) = Fp::unify(self, rhs);
        if m == 0 { Fp { v: a.wrapping_add(b), m: 0 } } else { Fp { v: (a + b) % m, m } }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (a, b, m) = Fp::unify(self, rhs);
        if m == 0 {
            Fp { v: a.wrapping_sub(b), m: 0 }
        } else {
            Fp { v: (a + m - b) % m, m }
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.m == 0 {
            Fp { v: self.v.wrapping_neg(), m: 0 }
        } else {
            Fp { v: (self.m - self.v % self.m) % self.m, m: self.m }
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, m) = Fp::unify(self, rhs);
        if m == 0 { Fp { v: a.wrapping_mul(b), m: 0 } } else { Fp { v: mul_mod(a, b, m), m } }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, m: 0 }
    }
    fn is_zero(&self) -> bool {
        if self.m == 0 { self.v == 0 } else { self.v % self.m == 0 }
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, m: 0 }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 0 {
            write!(f, "{}", self.v as i64)
        } else {
            write!(f, "{}", self.v)
        }
    }
}

impl Scalar for Fp {
    type Ctx = u64;

    fn from_int(ctx: &u64, n: i64) -> Self {
        Fp::new(*ctx, n)
    }

    fn inv(&self) -> Option<Self> {
        let m = self.m;
        assert!(
            m != 0 || self.v <= 1 || self.v == u64::MAX,
            "inverse of unbound residue"
        );
        if self.is_zero() {
            return None;
        }
        if m == 0 {
            return Some(*self); // unbound 1 or -1, each its own inverse
        }
        // Fermat: v^(p-2) mod p.
        Some(Fp { v: pow_mod(self.v, m - 2, m), m })
    }

    fn zeta(ctx: &u64) -> Option<Self> {
        if *ctx % 3 == 1 { Some(Fp { v: primitive_cube_root_mod(*ctx), m: *ctx }) } else { None }
    }

    fn parse_scalar(ctx: &u64, s: &str) -> Result<Self, ParseScalarError> {
        let t = s.trim();
        let (neg, digits) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseScalarError::new(s, 0, "expected a decimal residue"));
        }
        let v: u128 = digits
            .parse()
            .map_err(|_| ParseScalarError::new(s, 0, "residue out of range"))?;
        let r = (v % *ctx as u128) as u64;
        let r = if neg { (*ctx - r) % *ctx } else { r };
        Ok(Fp { v: r, m: *ctx })
    }

    fn field_name(ctx: &u64) -> String {
        format!("fp:{ctx}")
    }
}

/// Map `Q(zeta_3) -> F_p` sending `zeta` to the chosen cube root mod `p`.
/// Fails when a denominator vanishes mod `p`.
pub fn specialize(x: &QZeta3, p: u64) -> Result<Fp, FieldError> {
    let g = Fp { v: primitive_cube_root_mod(p), m: p };
    let c0 = specialize_rational(&x.c0, p)?;
    let c1 = specialize_rational(&x.c1, p)?;
    Ok(c0 + c1 * g)
}

fn specialize_rational(r: &BigRational, p: u64) -> Result<Fp, FieldError> {
    let pb = BigInt::from(p);
    let num = r.numer().clone() % &pb;
    let den = r.denom().clone() % &pb;
    let to_res = |b: BigInt| -> u64 {
        let mut v = b % &pb;
        if v.is_negative() {
            v += &pb;
        }
        u64::try_from(v).expect("reduced residue fits")
    };
    let dres = Fp { v: to_res(den), m: p };
    let nres = Fp { v: to_res(num), m: p };
    match dres.inv() {
        Some(di) => Ok(nres * di),
        None => Err(FieldError::BadSpecialization(r.to_string(), p)),
    }
}

// ---- scalar text format ----

/// Parse the shared characteristic-0 scalar syntax into `(c0, c1)` with the
/// value `c0 + c1*w`: accepts `u`, `u/v`, `u+v*w`, `u/v*w`, sign variants,
/// and `w` itself.
fn parse_rational_pair(s: &str) -> Result<(BigRational, BigRational), ParseScalarError> {
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let mut c0 = BigRational::zero();
    let mut c1 = BigRational::zero();
    let mut seen_plain = false;
    let mut seen_w = false;

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(ParseScalarError::new(s, pos, "empty scalar"));
    }
    let mut first = true;
    while pos < bytes.len() {
        skip_ws(&mut pos);
        // Sign (mandatory between terms, optional before the first).
        let mut sign = 1i64;
        if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(ParseScalarError::new(s, pos, "expected + or - between terms"));
        }
        first = false;

        // Either a bare `w` or a rational optionally followed by `*w`.
        if pos < bytes.len() && bytes[pos] == b'w' {
            pos += 1;
            if seen_w {
                return Err(ParseScalarError::new(s, pos, "repeated w term"));
            }
            seen_w = true;
            c1 += big(sign);
            skip_ws(&mut pos);
            continue;
        }

        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == start {
            return Err(ParseScalarError::new(s, pos, "expected a number or w"));
        }
        let numer: BigInt = s[start..pos].parse().expect("digits");
        let mut value = BigRational::from_integer(numer);
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'/' {
            pos += 1;
            skip_ws(&mut pos);
            let dstart = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == dstart {
                return Err(ParseScalarError::new(s, pos, "expected a denominator"));
            }
            let denom: BigInt = s[dstart..pos].parse().expect("digits");
            if denom.is_zero() {
                return Err(ParseScalarError::new(s, dstart, "zero denominator"));
            }
            value /= BigRational::from_integer(denom);
            skip_ws(&mut pos);
        }
        if sign < 0 {
            value = -value;
        }
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'w' {
                pos += 1;
                if seen_w {
                    return Err(ParseScalarError::new(s, pos, "repeated w term"));
                }
                seen_w = true;
                c1 += value;
                skip_ws(&mut pos);
                continue;
            }
            return Err(ParseScalarError::new(s, pos, "expected w after *"));
        }
        if seen_plain {
            return Err(ParseScalarError::new(s, pos, "repeated constant term"));
        }
        seen_plain = true;
        c0 += value;
        skip_ws(&mut pos);
    }
    Ok((c0, c1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_checks_congruence() {
        assert!(make_field(FieldSpec::Prime(7)).is_ok());
        assert_eq!(make_field(FieldSpec::Prime(5)), Err(FieldError::NoCubeRoot(5)));
        assert_eq!(make_field(FieldSpec::Prime(9)), Err(FieldError::NotPrime(9)));
        assert!(make_field(FieldSpec::Cyclotomic3).is_ok());
    }

    #[test]
    fn cube_roots_are_smallest() {
        // Exhaustive search oracles for the deterministic choice.
        let smallest = |p: u64| (2..p).find(|g| pow_mod(*g, 3, p) == 1).unwrap();
        for p in [7u64, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97, 103] {
            assert_eq!(primitive_cube_root_mod(p), smallest(p), "p = {p}");
        }
        assert_eq!(primitive_cube_root_mod(7), 2);
        assert_eq!(primitive_cube_root_mod(13), 3);
    }

    #[test]
    fn zeta_relations_hold() {
        let z = QZeta3::gen_zeta();
        assert_eq!(z.clone() * z.clone() * z.clone(), QZeta3::one());
        assert_ne!(z, QZeta3::one());
        let zsq = z.clone() * z.clone();
        assert_eq!(QZeta3::one() + z + zsq, QZeta3::zero());

        let g = <Fp as Scalar>::zeta(&7).unwrap();
        assert_eq!(g.residue(), 2);
        assert!( (g * g * g) == Fp::new(7, 1));
        assert_eq!(Fp::new(7, 1) + g + g * g, Fp::new(7, 0));
    }

    #[test]
    fn specialization_examples() {
        let z = QZeta3::gen_zeta();
        assert_eq!(specialize(&z, 7).unwrap(), Fp::new(7, 2));
        let one_plus = QZeta3::one() + QZeta3::gen_zeta();
        assert_eq!(specialize(&one_plus, 7).unwrap(), Fp::new(7, 3));
        let half = QZeta3::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(specialize(&half, 7).unwrap(), Fp::new(7, 4));
        let seventh = QZeta3::from_rational(BigRational::new(BigInt::from(1), BigInt::from(7)));
        assert!(specialize(&seventh, 7).is_err());
    }

    #[test]
    fn parse_and_print_round_trip() {
        let cases = ["0", "5", "-3", "1/2", "-7/3", "1+1*w", "1/2-2/3*w", "2*w", "-1*w"];
        for c in cases {
            let x = QZeta3::parse_scalar(&(), c).unwrap();
            let printed = x.to_string();
            let back = QZeta3::parse_scalar(&(), &printed).unwrap();
            assert_eq!(x, back, "case {c} printed as {printed}");
        }
        assert_eq!(QZeta3::parse_scalar(&(), "w").unwrap(), QZeta3::gen_zeta());
        assert_eq!(QZeta3::parse_scalar(&(), "1+w").unwrap(), QZeta3::one() + QZeta3::gen_zeta());
        assert!(QZeta3::parse_scalar(&(), "1*").is_err());
        assert!(QZeta3::parse_scalar(&(), "1/0").is_err());
        assert!(QZeta3::parse_scalar(&(), "w+w").is_err());
        assert!(<BigRational as Scalar>::parse_scalar(&(), "1+1*w").is_err());
        assert_eq!(<Fp as Scalar>::parse_scalar(&7, "12").unwrap(), Fp::new(7, 5));
    }

    #[test]
    fn fp_field_ops() {
        let p = 13u64;
        for a in 0..p {
            let fa = Fp::new(p, a as i64);
            if a != 0 {
                let i = fa.inv().unwrap();
                assert_eq!(fa * i, Fp::new(p, 1));
            }
            assert_eq!(fa - fa, Fp::new(p, 0));
            assert!((fa + (-fa)).is_zero());
        }
        // Unbound identities combine with bound values.
        assert_eq!(Fp::zero() + Fp::new(7, 3), Fp::new(7, 3));
        assert_eq!(Fp::one() * Fp::new(7, 3), Fp::new(7, 3));
    }

    #[test]
    fn qzeta_inverse() {
        let x = QZeta3::new(big(3), big(-2));
        let i = x.inv().unwrap();
        assert_eq!(x * i, QZeta3::one());
        assert_eq!(QZeta3::zero().inv(), None);
    }
}
