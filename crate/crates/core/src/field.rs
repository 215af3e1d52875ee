//! Exact scalar fields: the rationals and the Gaussian rationals.
//!
//! Elimination, polynomial arithmetic and every algorithm on cycles are
//! written once against [`Field`]; only the scalar operations differ.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::ParseScalarError;

/// An exact, computable field.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Tag used in documents: `"Q"` or `"Q(i)"`.
    const TAG: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self -= a * b`, the inner step of every elimination loop.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.sub_ref(&a.mul_ref(b));
    }

    /// Parse the textual form used in cycle documents.
    fn parse_scalar(s: &str) -> Result<Self, ParseScalarError>;

    /// A small "integer" of the field drawn from `-bound..=bound`
    /// (both parts, for Gaussian rationals).
    fn sample_small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self;
}

/// An element of ℚ, always in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are kept inline and
/// combined in 128-bit arithmetic; everything else falls back to big
/// integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

/// Invariant: `Small` exactly when both parts lie in `-i64::MAX..=i64::MAX`.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

const SMALL_LIMIT: i128 = i64::MAX as i128;

fn fits(x: i128) -> bool {
    (-SMALL_LIMIT..=SMALL_LIMIT).contains(&x)
}

impl Rational {
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if den < 0 {
            num = -num;
            den = -den;
        }
        if fits(num) && fits(den) {
            Rational(Repr::Small { num: num as i64, den: den as i64 })
        } else {
            Rational(Repr::Big(BigRational::new_raw(BigInt::from(num), BigInt::from(den))))
        }
    }

    fn from_big_rational(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(num), Some(den)) if num != i64::MIN && den != i64::MIN => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(b)),
        }
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Self::from_big_rational(BigRational::new(num, den)))
        }
    }

    pub fn to_big_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg_ref()
        } else {
            self.clone()
        }
    }

    fn big_op(&self, rhs: &Self, op: impl FnOnce(BigRational, BigRational) -> BigRational) -> Self {
        Self::from_big_rational(op(self.to_big_rational(), rhs.to_big_rational()))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big_rational().cmp(&other.to_big_rational()),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::new(n, 1)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

fn parse_bigint(s: &str, whole: &str) -> Result<BigInt, ParseScalarError> {
    let s = s.trim();
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::Malformed(whole.to_string()));
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s))
        .map_err(|_| ParseScalarError::Malformed(whole.to_string()))
}

fn parse_rational(s: &str, whole: &str) -> Result<Rational, ParseScalarError> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(Rational::from_big_rational(BigRational::from_integer(parse_bigint(s, whole)?))),
        Some((n, d)) => {
            let num = parse_bigint(n, whole)?;
            let den = parse_bigint(d, whole)?;
            Rational::from_big(num, den).ok_or_else(|| ParseScalarError::ZeroDenominator(whole.to_string()))
        }
    }
}

impl FromStr for Rational {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s, s)
    }
}

impl Field for Rational {
    const TAG: &'static str = "Q";

    fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }
    fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }
    fn from_i64(n: i64) -> Self {
        n.into()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    Self::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Self::from_i128(*a as i128 * *d as i128 + *c as i128 * *b as i128, *b as i128 * *d as i128)
                }
            }
            _ => self.big_op(rhs, |x, y| x + y),
        }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => self.big_op(rhs, |x, y| x * y),
        }
    }
    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
            Repr::Big(b) => Rational(Repr::Big(-b)),
        }
    }
    fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small { num: 0, .. } => None,
            Repr::Small { num, den } if *num < 0 => Some(Rational(Repr::Small { num: -den, den: -num })),
            Repr::Small { num, den } => Some(Rational(Repr::Small { num: *den, den: *num })),
            Repr::Big(b) => Some(Self::from_big_rational(b.recip())),
        }
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }
    fn parse_scalar(s: &str) -> Result<Self, ParseScalarError> {
        s.parse()
    }
    fn sample_small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        Rational::from(rng.gen_range(-bound..=bound))
    }
}

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), self.im.neg_ref())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::new(n.into(), Rational::zero())
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_text = |im: &Rational| {
            if im.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", im)
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", im_text(&self.im.abs()))
                } else {
                    write!(f, "{}", im_text(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}", self.re, sign, im_text(&self.im.abs()))
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let whole = s;
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(parse_rational(&s, whole)?.into());
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // The real/imaginary split is the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (parse_rational(&body[..i], whole)?, &body[i..]),
            None => (Rational::zero(), body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => Rational::from(-1),
            other => parse_rational(other, whole)?,
        };
        Ok(GaussianRational::new(re, im))
    }
}

impl Field for GaussianRational {
    const TAG: &'static str = "Q(i)";

    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        n.into()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        GaussianRational::new(self.re.add_ref(&rhs.re), self.im.add_ref(&rhs.im))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        GaussianRational::new(self.re.sub_ref(&rhs.re), self.im.sub_ref(&rhs.im))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let re = self.re.mul_ref(&rhs.re).sub_ref(&self.im.mul_ref(&rhs.im));
        let im = self.re.mul_ref(&rhs.im).add_ref(&self.im.mul_ref(&rhs.re));
        GaussianRational::new(re, im)
    }
    fn neg_ref(&self) -> Self {
        GaussianRational::new(self.re.neg_ref(), self.im.neg_ref())
    }
    fn inv(&self) -> Option<Self> {
        let norm = self.re.mul_ref(&self.re).add_ref(&self.im.mul_ref(&self.im));
        let norm_inv = norm.inv()?;
        Some(GaussianRational::new(
            self.re.mul_ref(&norm_inv),
            self.im.neg_ref().mul_ref(&norm_inv),
        ))
    }
    fn parse_scalar(s: &str) -> Result<Self, ParseScalarError> {
        s.parse()
    }
    fn sample_small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let re = rng.gen_range(-bound..=bound);
        let im = rng.gen_range(-bound..=bound);
        GaussianRational::new(re.into(), im.into())
    }
}

macro_rules! field_ops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                self.add_ref(&rhs)
            }
        }
        impl<'a> Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &'a $ty) -> $ty {
                self.add_ref(rhs)
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                self.sub_ref(&rhs)
            }
        }
        impl<'a> Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &'a $ty) -> $ty {
                self.sub_ref(rhs)
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                self.mul_ref(&rhs)
            }
        }
        impl<'a> Mul<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn mul(self, rhs: &'a $ty) -> $ty {
                self.mul_ref(rhs)
            }
        }
        /// Panics on division by zero, like the integer types.
        impl Div for $ty {
            type Output = $ty;
            fn div(self, rhs: $ty) -> $ty {
                self.div_ref(&rhs).expect("division by zero")
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self.neg_ref()
            }
        }
    };
}

field_ops!(Rational);
field_ops!(GaussianRational);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalized() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), BigInt::from(2));
        assert_eq!("4/-8".parse::<Rational>().unwrap().to_string(), "-1/2");
        assert_eq!("12".parse::<Rational>().unwrap(), Rational::from(12));
    }

    #[test]
    fn overflow_moves_to_big_integers_and_back() {
        let big = Rational::from(i64::MAX);
        let square = big.mul_ref(&big);
        assert_eq!(square.to_string(), "85070591730234615847396907784232501249");
        let back = square.div_ref(&big).unwrap();
        assert_eq!(back, big);
        assert_eq!(back.add_ref(&Rational::from(1)).sub_ref(&Rational::from(1)), big);
        let tiny = Rational::new(1, i64::MAX).mul_ref(&Rational::new(1, 3));
        assert_eq!(tiny.inv().unwrap().mul_ref(&tiny), Rational::one());
        assert!(tiny < Rational::new(1, i64::MAX) && -tiny.clone() < tiny);
        assert_eq!("-9223372036854775808".parse::<Rational>().unwrap().add_ref(&Rational::from(1)), Rational::from(i64::MIN + 1));
    }

    #[test]
    fn rational_parse_errors() {
        assert!(matches!("1/0".parse::<Rational>(), Err(ParseScalarError::ZeroDenominator(_))));
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1/".parse::<Rational>().is_err());
    }

    #[test]
    fn gaussian_parse_and_display() {
        let cases = [
            ("3", "3"),
            ("i", "i"),
            ("-i", "-i"),
            ("1/2+3/4*i", "1/2+3/4*i"),
            ("1-i", "1-i"),
            ("-2/3*i", "-2/3*i"),
            ("-1/2-5*i", "-1/2-5*i"),
            ("2*i", "2*i"),
        ];
        for (text, shown) in cases {
            let g: GaussianRational = text.parse().unwrap();
            assert_eq!(g.to_string(), shown, "{text}");
            assert_eq!(g.to_string().parse::<GaussianRational>().unwrap(), g);
        }
        assert!("1/0+i".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn gaussian_inverse() {
        let z: GaussianRational = "1+2*i".parse().unwrap();
        let w = z.inv().unwrap();
        assert_eq!(w.to_string(), "1/5-2/5*i");
        assert!(z.mul_ref(&w).is_one());
        assert!(GaussianRational::zero().inv().is_none());
        let i = GaussianRational::i();
        assert_eq!(i.mul_ref(&i), GaussianRational::from(-1));
    }
}
