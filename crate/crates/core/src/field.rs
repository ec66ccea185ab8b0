//! Exact scalar fields: arbitrary-precision rationals and prime fields.
//!
//! A [`Field`] is a small context value (a zero-sized marker for ℚ, the
//! modulus for 𝔽_p) that knows how to create elements. Elements implement
//! [`Scalar`] and carry enough information to do arithmetic on their own,
//! so algebra can be written with ordinary operators.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{bareiss_rank_kernel, gauss_rank_kernel, Matrix, RankKernel};

/// Default modulus for prime-field experiments.
pub const DEFAULT_PRIME: u64 = 10007;

/// Random rationals are drawn as integers in `[-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND]`.
pub const RATIONAL_SAMPLE_BOUND: i64 = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not an odd prime below 2^63")]
    NotPrime(u64),
    #[error("cannot parse {input:?} as an element of {field}")]
    Parse { input: String, field: String },
    #[error("unknown field selector {0:?} (expected `q` or `fp:PRIME`)")]
    Selector(String),
}

/// Element of an exact field.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// The multiplicative identity of the field `self` belongs to.
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self {
        self.clone() - self.clone()
    }
}

/// Field context.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Scalar;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// A random element; uniform over 𝔽_p, a bounded random integer over ℚ.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Canonical text encoding (`num/den` or `num` over ℚ, residue over 𝔽_p).
    fn encode(&self, x: &Self::Elem) -> String;
    fn decode(&self, s: &str) -> Result<Self::Elem, FieldError>;
    fn spec(&self) -> FieldSpec;

    /// Rank and kernel of a matrix over this field.
    fn rank_kernel(m: &Matrix<Self>) -> RankKernel<Self::Elem> {
        gauss_rank_kernel(m)
    }

    fn random_nonzero(&self, rng: &mut dyn RngCore) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64> {
        match self.spec() {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(p),
        }
    }
}

/// Serializable field selector, also the CLI's `--field` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldSpec::Rational);
        }
        if let Some(rest) = t.strip_prefix("fp:").or_else(|| t.strip_prefix("FP:")) {
            let p: u64 = rest.parse().map_err(|_| FieldError::Selector(s.to_string()))?;
            PrimeField::new(p)?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(FieldError::Selector(s.to_string()))
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = FieldError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

// ---------------------------------------------------------------------------
// ℚ

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        Rational(self.0 + o.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        Rational(self.0 - o.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        Rational(self.0 * o.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn one_like(&self) -> Self {
        Rational(BigRational::one())
    }
    fn zero_like(&self) -> Self {
        Rational(BigRational::zero())
    }
}

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational(BigRational::zero())
    }
    fn one(&self) -> Rational {
        Rational(BigRational::one())
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_int(v)
    }
    fn random(&self, rng: &mut dyn RngCore) -> Rational {
        Rational::from_int(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn encode(&self, x: &Rational) -> String {
        x.0.to_string()
    }
    fn decode(&self, s: &str) -> Result<Rational, FieldError> {
        let err = || FieldError::Parse {
            input: s.to_string(),
            field: "q".into(),
        };
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn rank_kernel(m: &Matrix<Self>) -> RankKernel<Rational> {
        bareiss_rank_kernel(m)
    }
}

// ---------------------------------------------------------------------------
// 𝔽_p

/// The prime field 𝔽_p for an odd prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(3..1 << 63).contains(&p) || !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp {
            v: v % self.p,
            p: self.p,
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

/// Residue in `[0, p)` tagged with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }
    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p, "mixed prime fields");
        let s = self.v + o.v;
        Fp {
            v: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p, "mixed prime fields");
        Fp {
            v: if self.v >= o.v {
                self.v - o.v
            } else {
                self.v + self.p - o.v
            },
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.p, o.p, "mixed prime fields");
        Fp {
            v: mulmod(self.v, o.v, self.p),
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(Fp {
                v: powmod(self.v, self.p - 2, self.p),
                p: self.p,
            })
        }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        Fp { v: 0, p: self.p }
    }
    fn one(&self) -> Fp {
        Fp { v: 1, p: self.p }
    }
    fn from_i64(&self, v: i64) -> Fp {
        let r = v.rem_euclid(self.p as i64) as u64;
        Fp { v: r, p: self.p }
    }
    fn random(&self, rng: &mut dyn RngCore) -> Fp {
        Fp {
            v: rng.gen_range(0..self.p),
            p: self.p,
        }
    }
    fn encode(&self, x: &Fp) -> String {
        x.v.to_string()
    }
    fn decode(&self, s: &str) -> Result<Fp, FieldError> {
        let t = s.trim();
        let v: BigInt = t.parse().map_err(|_| FieldError::Parse {
            input: s.to_string(),
            field: self.spec().to_string(),
        })?;
        let p = BigInt::from(self.p);
        let mut r = v % &p;
        if r.is_negative() {
            r += &p;
        }
        let r: u64 = r.try_into().expect("residue fits in u64");
        Ok(Fp { v: r, p: self.p })
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rationals_are_reduced() {
        let q = Rationals.decode("6/-4").unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(Rationals.encode(&q), "-3/2");
        assert_eq!(Rationals.encode(&Rationals.from_i64(5)), "5");
        assert!(Rationals.decode("1/0").is_err());
    }

    #[test]
    fn prime_field_residues_are_canonical() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1).value(), 6);
        assert_eq!(f.decode("-15").unwrap().value(), 6);
        let a = f.from_i64(3);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert_eq!((-f.zero()).value(), 0);
    }

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(10005).is_err());
        assert!(PrimeField::new(10007).is_ok());
        assert!(PrimeField::new((1 << 61) - 1).is_ok());
        assert!(PrimeField::new(u64::MAX).is_err());
    }

    #[test]
    fn field_selector_roundtrip() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert_eq!("fp:101".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(101));
        assert!("fp:100".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(101).to_string(), "fp:101");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = f.random(&mut rng);
        let mut acc = f.one();
        for e in 0..9 {
            assert_eq!(x.pow(e), acc);
            acc = acc * x;
        }
        assert_eq!(Rationals.zero().pow(0), Rationals.one());
        assert_eq!(Rational::new(2, 3).pow(3), Rational::new(8, 27));
    }

    #[test]
    fn fermat_in_prime_field() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let x = f.random_nonzero(&mut rng);
            assert!(x.pow(10006).is_one());
        }
    }
}
