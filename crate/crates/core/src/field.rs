//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! A [`FieldElement`] always sits in canonical form: rationals are reduced
//! fractions with a positive denominator, residues live in `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest modulus accepted by [`FieldSpec::prime`].
pub const DEFAULT_MODULUS_LIMIT: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("operands belong to different fields ({0} vs {1})")]
    MixedField(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires positive characteristic")]
    CharacteristicZero,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {modulus} exceeds the configured limit {limit}")]
    ModulusTooLarge { modulus: u64, limit: u64 },
}

/// The coefficient field: ℚ or 𝔽_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(modulus: u64) -> Result<Self, FieldError> {
        Self::prime_with_limit(modulus, DEFAULT_MODULUS_LIMIT)
    }

    pub fn prime_with_limit(modulus: u64, limit: u64) -> Result<Self, FieldError> {
        if modulus > limit {
            return Err(FieldError::ModulusTooLarge { modulus, limit });
        }
        if !is_prime(modulus) {
            return Err(FieldError::NotPrime(modulus));
        }
        Ok(FieldSpec::PrimeField(modulus))
    }

    /// `0` for characteristic zero (`--char 0`), otherwise the prime field.
    pub fn from_characteristic(chi: u64) -> Result<Self, FieldError> {
        if chi == 0 {
            Ok(FieldSpec::Rationals)
        } else {
            Self::prime(chi)
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    pub fn zero(self) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::zero()),
            FieldSpec::PrimeField(p) => FieldElement::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(v.into())),
            FieldSpec::PrimeField(p) => FieldElement::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElement::Residue { value: r.to_u64().unwrap(), modulus: p }
            }
        }
    }

    /// Builds `num/den`; fails when `den` vanishes in this field.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Result<FieldElement, FieldError> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        n.try_div(&d)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    /// True when the value is stored in canonical form.
    pub fn is_canonical(&self) -> bool {
        match self {
            FieldElement::Rational(r) => {
                r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
            }
            FieldElement::Residue { value, modulus } => value < modulus,
        }
    }

    /// Checked binary arithmetic, the entry point used by callers that hold
    /// scalars of unknown provenance.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
            ArithOp::Div => return self.try_div(other),
        })
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.spec() != other.spec() {
            return Err(FieldError::MixedField(self.spec(), other.spec()));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        match self {
            FieldElement::Rational(r) => {
                if r.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(FieldElement::Rational(r.recip()))
                }
            }
            FieldElement::Residue { value, modulus } => {
                if *value == 0 {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(FieldElement::Residue {
                    value: pow_mod(*value, *modulus - 2, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.spec().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The unique `r` with `r^(χ^ν) = self`. On a prime field Frobenius is
    /// the identity, so this returns `self`.
    pub fn frobenius_root(&self, _nu: u32) -> Result<Self, FieldError> {
        match self {
            FieldElement::Rational(_) => Err(FieldError::CharacteristicZero),
            FieldElement::Residue { .. } => Ok(self.clone()),
        }
    }

    /// Signed integer view, if the value is an integer (residues use the
    /// symmetric range `(-p/2, p/2]`).
    pub fn as_signed_display(&self) -> (bool, String) {
        match self {
            FieldElement::Rational(r) => {
                let neg = r.is_negative();
                let a = r.abs();
                let s = if a.is_integer() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                };
                (neg, s)
            }
            FieldElement::Residue { value, modulus } => {
                if *value > modulus / 2 {
                    (true, (modulus - value).to_string())
                } else {
                    (false, value.to_string())
                }
            }
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, s) = self.as_signed_display();
        if neg {
            write!(f, "-{s}")
        } else {
            write!(f, "{s}")
        }
    }
}

// The operator impls assume both operands share a field; the polynomial
// layer checks contexts once up front and then uses these directly.

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, modulus: m2 },
            ) => {
                debug_assert_eq!(modulus, m2);
                FieldElement::Residue { value: (a + b) % modulus, modulus: *modulus }
            }
            _ => panic!("mixed-field addition"),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, modulus: m2 },
            ) => {
                debug_assert_eq!(modulus, m2);
                FieldElement::Residue { value: (a + modulus - b) % modulus, modulus: *modulus }
            }
            _ => panic!("mixed-field subtraction"),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (
                FieldElement::Residue { value: a, modulus },
                FieldElement::Residue { value: b, modulus: m2 },
            ) => {
                debug_assert_eq!(modulus, m2);
                FieldElement::Residue { value: a * b % modulus, modulus: *modulus }
            }
            _ => panic!("mixed-field multiplication"),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}
