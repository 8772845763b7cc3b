//! Exact arithmetic: arbitrary-precision rationals and expressions of the form
//! `a + b·√q`, together with the sign predicates that every geometric decision
//! in this crate reduces to.
//!
//! Nothing in here ever rounds. Comparisons involving square roots are
//! decided by repeated squaring with explicit sign bookkeeping, so exact
//! equalities (tangencies) come out as [`Sign::Zero`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("negative radicand {0}")]
    NegativeRadicand(Rat),
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Exact sign of a quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative = -1,
    Zero = 0,
    Positive = 1,
}

impl Sign {
    pub fn of_rat(r: &Rat) -> Sign {
        Sign::from(r.0.cmp(&BigRational::zero()))
    }

    pub fn to_i8(self) -> i8 {
        self as i8
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Rat {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_int(v: i64) -> Rat {
        Rat(BigRational::from_integer(v.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Rat {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn sign(&self) -> Sign {
        Sign::of_rat(self)
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn square(&self) -> Rat {
        Rat(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn pow(&self, e: u32) -> Rat {
        (0..e).fold(Rat::one(), |acc, _| &acc * self)
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Exact rational square root, if `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rat::from_bigints(n, d))
        } else {
            None
        }
    }

    pub fn is_perfect_square(&self) -> bool {
        self.sqrt_exact().is_some()
    }

    pub fn min(self, other: Rat) -> Rat {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Lossy conversion for display purposes only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Nearest rational with the given denominator. Used only to lay out
    /// approximate positions that are subsequently treated as exact data.
    pub fn approximate(value: f64, denom: i64) -> Rat {
        Rat::new((value * denom as f64).round() as i64, denom)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(v)
    }
}

impl From<BigRational> for Rat {
    fn from(v: BigRational) -> Self {
        Rat(v)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    /// Accepts `"p/q"` and plain integers `"p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExactError::Parse(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rat::from_bigints(n, d))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat((&self.0).$m(rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

fn check_radicand(q: &Rat) -> Result<(), ExactError> {
    if q.is_negative() {
        Err(ExactError::NegativeRadicand(q.clone()))
    } else {
        Ok(())
    }
}

/// Exact sign of `a + b·√q`.
pub fn sign_single_radical(a: &Rat, b: &Rat, q: &Rat) -> Result<Sign, ExactError> {
    check_radicand(q)?;
    let sa = a.sign();
    if b.is_zero() || q.is_zero() {
        return Ok(sa);
    }
    let sb = b.sign();
    if sa == Sign::Zero || sa == sb {
        return Ok(sb);
    }
    // Opposite signs: the larger magnitude wins. |a| vs |b|·√q via squares.
    Ok(match a.square().cmp(&(b.square() * q)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Sign::Zero,
    })
}

/// Exact sign of `a + b·√u + c·√v`.
pub fn sign_two_radicals(a: &Rat, b: &Rat, u: &Rat, c: &Rat, v: &Rat) -> Result<Sign, ExactError> {
    check_radicand(u)?;
    check_radicand(v)?;
    // Fold perfect squares into the rational part first.
    let (a, b, u) = {
        let r = RadExpr::new(a.clone(), b.clone(), u.clone())?;
        (r.a, r.b, r.q)
    };
    let (a, c, v) = {
        let r = RadExpr::new(a, c.clone(), v.clone())?;
        (r.a, r.b, r.q)
    };
    if c.is_zero() {
        return sign_single_radical(&a, &b, &u);
    }
    if b.is_zero() {
        return sign_single_radical(&a, &c, &v);
    }
    if u == v {
        return sign_single_radical(&a, &(&b + &c), &u);
    }
    // value = A + C with A = a + b√u and C = c√v.
    let sa = sign_single_radical(&a, &b, &u)?;
    let sc = c.sign();
    if sa == Sign::Zero || sa == sc {
        return Ok(sc);
    }
    // Opposite signs: compare A² = a² + b²u + 2ab√u against C² = c²v.
    let cmp = sign_single_radical(
        &(a.square() + b.square() * &u - c.square() * &v),
        &(Rat::from_int(2) * &a * &b),
        &u,
    )?;
    Ok(match cmp {
        Sign::Positive => sa,
        Sign::Negative => sc,
        Sign::Zero => Sign::Zero,
    })
}

/// The exact number `a + b·√q`, normalized so that a rational value is always
/// stored as `(a, 0, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RadExpr {
    a: Rat,
    b: Rat,
    q: Rat,
}

impl RadExpr {
    pub fn new(a: Rat, b: Rat, q: Rat) -> Result<RadExpr, ExactError> {
        check_radicand(&q)?;
        Ok(RadExpr { a, b, q }.normalized())
    }

    pub fn rational(a: Rat) -> RadExpr {
        RadExpr {
            a,
            b: Rat::zero(),
            q: Rat::zero(),
        }
    }

    pub fn zero() -> RadExpr {
        RadExpr::rational(Rat::zero())
    }

    /// `√q` itself.
    pub fn sqrt(q: Rat) -> Result<RadExpr, ExactError> {
        RadExpr::new(Rat::zero(), Rat::one(), q)
    }

    pub fn normalized(self) -> RadExpr {
        if self.b.is_zero() || self.q.is_zero() {
            return RadExpr::rational(self.a);
        }
        match self.q.sqrt_exact() {
            Some(s) => RadExpr::rational(self.a + self.b * s),
            None => self,
        }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    pub fn sign(&self) -> Sign {
        // q ≥ 0 is a construction invariant.
        sign_single_radical(&self.a, &self.b, &self.q).expect("radicand checked at construction")
    }

    /// Two expressions can be combined without leaving single-radical form.
    fn compatible(&self, other: &RadExpr) -> bool {
        self.is_rational() || other.is_rational() || self.q == other.q
    }

    fn shared_radicand(&self, other: &RadExpr) -> Rat {
        if self.is_rational() {
            other.q.clone()
        } else {
            self.q.clone()
        }
    }

    pub fn add(&self, other: &RadExpr) -> Result<RadExpr, ExactError> {
        if !self.compatible(other) {
            return Err(ExactError::UnsupportedForm(format!(
                "adding √{} and √{}",
                self.q, other.q
            )));
        }
        Ok(RadExpr {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            q: self.shared_radicand(other),
        }
        .normalized())
    }

    pub fn sub(&self, other: &RadExpr) -> Result<RadExpr, ExactError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RadExpr) -> Result<RadExpr, ExactError> {
        if !self.compatible(other) {
            return Err(ExactError::UnsupportedForm(format!(
                "multiplying √{} and √{}",
                self.q, other.q
            )));
        }
        let q = self.shared_radicand(other);
        Ok(RadExpr {
            a: &self.a * &other.a + &self.b * &other.b * &q,
            b: &self.a * &other.b + &self.b * &other.a,
            q,
        }
        .normalized())
    }

    pub fn square(&self) -> RadExpr {
        self.mul(self).expect("an expression is compatible with itself")
    }

    pub fn scale(&self, k: &Rat) -> RadExpr {
        RadExpr {
            a: &self.a * k,
            b: &self.b * k,
            q: self.q.clone(),
        }
        .normalized()
    }

    pub fn add_rat(&self, k: &Rat) -> RadExpr {
        RadExpr {
            a: &self.a + k,
            b: self.b.clone(),
            q: self.q.clone(),
        }
    }

    pub fn neg(&self) -> RadExpr {
        self.scale(&-Rat::one())
    }

    /// Exact ordering of two expressions, with or without a shared radicand.
    pub fn compare(&self, other: &RadExpr) -> Ordering {
        let sign = if self.compatible(other) {
            self.sub(other).expect("compatible").sign()
        } else {
            sign_two_radicals(
                &(&self.a - &other.a),
                &self.b,
                &self.q,
                &-&other.b,
                &other.q,
            )
            .expect("radicands checked at construction")
        };
        sign.to_ordering()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.q.to_f64().sqrt()
    }
}

impl fmt::Display for RadExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}·√({})", self.a, self.b, self.q)
        }
    }
}

pub fn rad_add(x: &RadExpr, y: &RadExpr) -> Result<RadExpr, ExactError> {
    x.add(y)
}

pub fn rad_scale(x: &RadExpr, k: &Rat) -> RadExpr {
    x.scale(k)
}

pub fn rad_compare(x: &RadExpr, y: &RadExpr) -> Ordering {
    x.compare(y)
}

/// A coordinate value: either rational or `c·√q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Coord {
    Rational(Rat),
    PureSqrt { c: Rat, q: Rat },
}

impl Coord {
    pub fn rat(v: Rat) -> Coord {
        Coord::Rational(v)
    }

    /// `c·√q`, collapsed to a rational when `q` is a perfect square.
    pub fn pure_sqrt(c: Rat, q: Rat) -> Result<Coord, ExactError> {
        check_radicand(&q)?;
        if c.is_zero() || q.is_zero() {
            return Ok(Coord::Rational(Rat::zero()));
        }
        Ok(match q.sqrt_exact() {
            Some(s) => Coord::Rational(c * s),
            None => Coord::PureSqrt { c, q },
        })
    }

    pub fn to_rad(&self) -> RadExpr {
        match self {
            Coord::Rational(r) => RadExpr::rational(r.clone()),
            Coord::PureSqrt { c, q } => RadExpr {
                a: Rat::zero(),
                b: c.clone(),
                q: q.clone(),
            },
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Coord::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Coord::Rational(r) => Some(r),
            Coord::PureSqrt { .. } => None,
        }
    }

    /// `(self − other)²` as a single-radical expression. Two pure square
    /// roots with different radicands combine under `√(q₁q₂)`.
    pub fn diff_squared(&self, other: &Coord) -> RadExpr {
        match (self, other) {
            (Coord::Rational(x), Coord::Rational(y)) => RadExpr::rational((x - y).square()),
            (Coord::PureSqrt { c, q }, Coord::Rational(y))
            | (Coord::Rational(y), Coord::PureSqrt { c, q }) => RadExpr {
                a: c.square() * q + y.square(),
                b: Rat::from_int(-2) * c * y,
                q: q.clone(),
            }
            .normalized(),
            (Coord::PureSqrt { c: c1, q: q1 }, Coord::PureSqrt { c: c2, q: q2 }) => {
                if q1 == q2 {
                    RadExpr::rational((c1 - c2).square() * q1)
                } else {
                    RadExpr {
                        a: c1.square() * q1 + c2.square() * q2,
                        b: Rat::from_int(-2) * c1 * c2,
                        q: q1 * q2,
                    }
                    .normalized()
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rad().to_f64()
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Rational(r) => write!(f, "{r}"),
            Coord::PureSqrt { c, q } => write!(f, "{c}·√({q})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoordRepr {
    Rational { rat: Rat },
    PureSqrt { c: Rat, q: Rat },
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Coord::Rational(r) => CoordRepr::Rational { rat: r.clone() },
            Coord::PureSqrt { c, q } => CoordRepr::PureSqrt {
                c: c.clone(),
                q: q.clone(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match CoordRepr::deserialize(d)? {
            CoordRepr::Rational { rat } => Ok(Coord::Rational(rat)),
            CoordRepr::PureSqrt { c, q } => Coord::pure_sqrt(c, q).map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn rat_is_canonical() {
        assert_eq!(r(2, -4).to_string(), "-1/2");
        assert_eq!(Rat::zero().to_string(), "0/1");
        assert_eq!("6/4".parse::<Rat>().unwrap(), r(3, 2));
        assert_eq!("7".parse::<Rat>().unwrap(), r(7, 1));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn single_radical_examples() {
        assert_eq!(sign_single_radical(&r(1, 1), &r(-1, 1), &r(2, 1)).unwrap(), Sign::Negative);
        assert_eq!(sign_single_radical(&r(-1, 1), &r(1, 1), &r(1, 1)).unwrap(), Sign::Zero);
        assert_eq!(sign_single_radical(&r(3, 1), &r(-2, 1), &r(2, 1)).unwrap(), Sign::Positive);
        assert!(matches!(
            sign_single_radical(&r(1, 1), &r(1, 1), &r(-1, 1)),
            Err(ExactError::NegativeRadicand(_))
        ));
    }

    #[test]
    fn two_radical_examples() {
        let s = |a, b, u, c, v| {
            sign_two_radicals(&r(a, 1), &r(b, 1), &r(u, 1), &r(c, 1), &r(v, 1)).unwrap()
        };
        assert_eq!(s(0, 1, 2, -1, 2), Sign::Zero);
        assert_eq!(s(-3, 1, 2, 1, 3), Sign::Positive);
        assert_eq!(s(10, -1, 2, -1, 3), Sign::Positive);
        // √8 − 2√2 folds to zero only through the squaring chain.
        assert_eq!(s(0, 1, 8, -2, 2), Sign::Zero);
        assert!(sign_two_radicals(&r(0, 1), &r(1, 1), &r(2, 1), &r(1, 1), &r(-3, 1)).is_err());
    }

    #[test]
    fn rad_ops_examples() {
        let x = RadExpr::new(r(1, 1), r(2, 1), r(3, 1)).unwrap();
        let y = RadExpr::new(r(4, 1), r(5, 1), r(3, 1)).unwrap();
        assert_eq!(rad_add(&x, &y).unwrap(), RadExpr::new(r(5, 1), r(7, 1), r(3, 1)).unwrap());

        let two = RadExpr::new(r(2, 1), r(0, 1), r(0, 1)).unwrap();
        let one_root2 = RadExpr::new(r(1, 1), r(1, 1), r(2, 1)).unwrap();
        assert_eq!(rad_compare(&two, &one_root2), Ordering::Less);
        assert_eq!(rad_scale(&one_root2, &Rat::zero()), RadExpr::zero());

        let root3 = RadExpr::sqrt(r(3, 1)).unwrap();
        assert!(matches!(
            rad_add(&one_root2, &root3),
            Err(ExactError::UnsupportedForm(_))
        ));
    }

    #[test]
    fn perfect_squares_collapse() {
        let e = RadExpr::new(r(1, 1), r(3, 1), r(4, 9)).unwrap();
        assert_eq!(e, RadExpr::rational(r(3, 1)));
        assert_eq!(Coord::pure_sqrt(r(2, 1), r(9, 4)).unwrap(), Coord::Rational(r(3, 1)));
        assert!(Coord::pure_sqrt(r(1, 1), r(-1, 1)).is_err());
    }

    #[test]
    fn diff_squared_of_mixed_coords() {
        // (√2 − 1)² = 3 − 2√2
        let a = Coord::pure_sqrt(r(1, 1), r(2, 1)).unwrap();
        let b = Coord::rat(r(1, 1));
        assert_eq!(a.diff_squared(&b), RadExpr::new(r(3, 1), r(-2, 1), r(2, 1)).unwrap());
        // (√2 − √3)² = 5 − 2√6
        let c = Coord::pure_sqrt(r(1, 1), r(3, 1)).unwrap();
        assert_eq!(a.diff_squared(&c), RadExpr::new(r(5, 1), r(-2, 1), r(6, 1)).unwrap());
    }

    #[test]
    fn coord_json_shapes() {
        let a = Coord::rat(r(11, 10));
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"rat":"11/10"}"#);
        let b = Coord::pure_sqrt(r(-1, 1), r(3, 4)).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"c":"-1/1","q":"3/4"}"#);
        assert_eq!(serde_json::from_str::<Coord>(&s).unwrap(), b);
    }
}
