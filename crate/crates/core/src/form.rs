//! Dense homogeneous forms in two variables `s0, s1`.
//!
//! Coefficient `j` of a degree-`d` form multiplies `s0^(d-j) * s1^j`.

use std::fmt;

use rand::RngCore;
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("forms live over different fields")]
    FieldMismatch,
    #[error("division is not exact; remainder coefficients {remainder:?}")]
    Remainder { remainder: Vec<String> },
    #[error("division by the zero form")]
    ZeroDivisor,
    #[error("gcd of two zero forms is undefined")]
    BothZero,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A point of ℙ¹ as a homogeneous pair `(s0, s1)`.
pub type P1Point<E> = [E; 2];

#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match d - j {
                0 => {}
                1 => write!(f, "*s0")?,
                e => write!(f, "*s0^{e}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "*s1")?,
                e => write!(f, "*s1^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [deg {d}]")
    }
}

impl<F: Field> BinaryForm<F> {
    /// Builds a form from its coefficient vector; the degree is `coeffs.len() - 1`.
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { field, coeffs }
    }

    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, c)
    }

    pub fn zero(field: F, degree: usize) -> Self {
        let coeffs = vec![field.zero(); degree + 1];
        BinaryForm { field, coeffs }
    }

    /// Independent random coefficients.
    pub fn random(field: F, degree: usize, rng: &mut dyn RngCore) -> Self {
        let coeffs = (0..=degree).map(|_| field.random(rng)).collect();
        BinaryForm { field, coeffs }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        BinaryForm {
            field,
            coeffs: vec![c],
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::constant(field, one)
    }

    /// `c * s0^(degree - j) * s1^j`.
    pub fn monomial(field: F, degree: usize, j: usize, c: F::Elem) -> Self {
        assert!(j <= degree);
        let mut f = Self::zero(field, degree);
        f.coeffs[j] = c;
        f
    }

    /// `a * s0 + b * s1`.
    pub fn linear(field: F, a: F::Elem, b: F::Elem) -> Self {
        BinaryForm {
            field,
            coeffs: vec![a, b],
        }
    }

    pub fn s0(field: F) -> Self {
        let (o, z) = (field.one(), field.zero());
        Self::linear(field, o, z)
    }

    pub fn s1(field: F) -> Self {
        let (o, z) = (field.one(), field.zero());
        Self::linear(field, z, o)
    }

    /// The linear form `P1 * s0 - P0 * s1` vanishing at the point `P = (P0 : P1)`.
    pub fn vanishing_at(field: F, p: &P1Point<F::Elem>) -> Self {
        Self::linear(field, p[1].clone(), -p[0].clone())
    }

    /// Product of the linear forms vanishing at each of `points`.
    pub fn vanishing_at_all<'a, I>(field: F, points: I) -> Self
    where
        I: IntoIterator<Item = &'a P1Point<F::Elem>>,
    {
        points.into_iter().fold(Self::one(field.clone()), |acc, p| {
            acc.mul(&Self::vanishing_at(field.clone(), p))
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &F::Elem {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Multiplicity of `s1` as a factor (`None` for the zero form).
    pub fn s1_multiplicity(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplicity of `s0` as a factor (`None` for the zero form).
    pub fn s0_multiplicity(&self) -> Option<usize> {
        self.coeffs.iter().rev().position(|c| !c.is_zero())
    }

    fn check_same_field(&self, other: &Self) -> Result<(), FormError> {
        if self.field != other.field {
            Err(FormError::FieldMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FormError> {
        self.check_same_field(other)?;
        if self.degree() != other.degree() {
            return Err(FormError::DegreeMismatch(self.degree(), other.degree()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(BinaryForm {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// Sum of two forms of equal degree. Panics on mismatched degrees.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("form addition")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    fn map_coeffs(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        BinaryForm {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Product by convolution of coefficient vectors.
    pub fn try_mul(&self, other: &Self) -> Result<Self, FormError> {
        self.check_same_field(other)?;
        let mut coeffs = vec![self.field.zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(BinaryForm {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("form multiplication over a single field")
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.field.clone()), |acc, _| acc.mul(self))
    }

    /// Value at `(x0, x1)`.
    pub fn eval(&self, p: &P1Point<F::Elem>) -> F::Elem {
        let d = self.degree();
        let mut acc = self.field.zero();
        let mut pow1 = self.field.one();
        let mut pow0 = vec![self.field.one(); d + 1];
        for i in 1..=d {
            pow0[i] = pow0[i - 1].clone() * p[0].clone();
        }
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + c.clone() * pow0[d - j].clone() * pow1.clone();
            }
            pow1 = pow1 * p[1].clone();
        }
        acc
    }

    /// Substitutes `s0 := t0, s1 := t1` for two forms of a common degree `k`.
    pub fn compose(&self, t0: &Self, t1: &Self) -> Self {
        assert_eq!(t0.degree(), t1.degree(), "substituted forms need equal degrees");
        let d = self.degree();
        let k = t0.degree();
        let pows0: Vec<Self> = powers(t0, d);
        let pows1: Vec<Self> = powers(t1, d);
        let mut out = Self::zero(self.field.clone(), d * k);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = pows0[d - j].mul(&pows1[j]).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// Substitutes `s0 := a s0 + b s1, s1 := c s0 + d s1`.
    pub fn substitute_linear(&self, m: &[[F::Elem; 2]; 2]) -> Self {
        let f = self.field.clone();
        let t0 = Self::linear(f.clone(), m[0][0].clone(), m[0][1].clone());
        let t1 = Self::linear(f, m[1][0].clone(), m[1][1].clone());
        self.compose(&t0, &t1)
    }

    /// Partial derivative with respect to `s0`.
    pub fn d_s0(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(self.field.clone(), 0);
        }
        let coeffs = (0..d)
            .map(|j| self.coeffs[j].clone() * self.field.from_i64((d - j) as i64))
            .collect();
        Self::new(self.field.clone(), coeffs)
    }

    /// Partial derivative with respect to `s1`.
    pub fn d_s1(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(self.field.clone(), 0);
        }
        let coeffs = (1..=d)
            .map(|j| self.coeffs[j].clone() * self.field.from_i64(j as i64))
            .collect();
        Self::new(self.field.clone(), coeffs)
    }

    /// Returns `c` with `other = c * self` when the two forms are proportional
    /// and `self` is nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<F::Elem> {
        if self.degree() != other.degree() || self.field != other.field {
            return None;
        }
        let j = self.coeffs.iter().position(|c| !c.is_zero())?;
        let c = other.coeffs[j].div(&self.coeffs[j])?;
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| a.clone() * c.clone() == *b)
            .then_some(c)
    }

    /// Same form with the trivial factor removed so that its first nonzero
    /// coefficient is one.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree(),
            "coeffs": self.coeffs.iter().map(|c| self.field.encode(c)).collect::<Vec<_>>(),
        })
    }

    fn encoded(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.field.encode(c)).collect()
    }
}

fn powers<F: Field>(f: &BinaryForm<F>, up_to: usize) -> Vec<BinaryForm<F>> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(BinaryForm::one(f.field.clone()));
    for i in 1..=up_to {
        let next = out[i - 1].mul(f);
        out.push(next);
    }
    out
}

/// Product `f * g`.
pub fn form_mul<F: Field>(f: &BinaryForm<F>, g: &BinaryForm<F>) -> Result<BinaryForm<F>, FormError> {
    f.try_mul(g)
}

/// Exact quotient `f / g`, or the nonzero remainder when `g` does not divide `f`.
pub fn form_divide_exact<F: Field>(
    f: &BinaryForm<F>,
    g: &BinaryForm<F>,
) -> Result<BinaryForm<F>, FormError> {
    f.check_same_field(g)?;
    let lead = g.s1_multiplicity().ok_or(FormError::ZeroDivisor)?;
    let (m, e) = (f.degree(), g.degree());
    if m < e {
        // No quotient of negative degree exists; the dividend is the remainder.
        return Err(FormError::Remainder {
            remainder: f.encoded(),
        });
    }
    let field = f.field.clone();
    let qdeg = m - e;
    // Power-series division in s1 after stripping s1^lead from g.
    let g0_inv = g.coeffs[lead].inv().expect("nonzero leading coefficient");
    let mut q: Vec<F::Elem> = Vec::with_capacity(qdeg + 1);
    for i in 0..=qdeg {
        let mut acc = if i + lead <= m {
            f.coeffs[i + lead].clone()
        } else {
            field.zero()
        };
        for t in 1..=i.min(e - lead) {
            acc = acc - g.coeffs[lead + t].clone() * q[i - t].clone();
        }
        q.push(acc * g0_inv.clone());
    }
    let q = BinaryForm::new(field, q);
    let rem = f.sub(&g.mul(&q));
    if rem.is_zero() {
        Ok(q)
    } else {
        Err(FormError::Remainder {
            remainder: rem.encoded(),
        })
    }
}

/// Monic greatest common divisor.
///
/// Works on the dehomogenizations `f(x, 1)` and tracks the power of `s1`
/// separately; the result is normalized so that its highest power of `s0`
/// (or its `s1^l` term if it is a pure power of `s1`) has coefficient one.
pub fn form_gcd<F: Field>(f: &BinaryForm<F>, g: &BinaryForm<F>) -> Result<BinaryForm<F>, FormError> {
    f.check_same_field(g)?;
    let field = f.field.clone();
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(FormError::BothZero),
        (true, false) => return Ok(make_monic(g)),
        (false, true) => return Ok(make_monic(f)),
        _ => {}
    }
    let l = f.s1_multiplicity().unwrap().min(g.s1_multiplicity().unwrap());
    let uf = dehomogenize(f);
    let ug = dehomogenize(g);
    let h = upoly::gcd(&field, uf, ug);
    // h is monic in x of degree r; homogenize to degree r and multiply by s1^l.
    let r = h.len() - 1;
    let coeffs: Vec<F::Elem> = (0..=r).map(|j| h[r - j].clone()).collect();
    let core = BinaryForm::new(field.clone(), coeffs);
    Ok(core.mul(&BinaryForm::s1(field).pow(l as u32)))
}

fn make_monic<F: Field>(f: &BinaryForm<F>) -> BinaryForm<F> {
    let l = f.s1_multiplicity().expect("nonzero form");
    // leading x coefficient of f(x,1) sits at index l
    f.scale(&f.coeffs[l].inv().expect("nonzero"))
}

/// `f(x, 1)` as ascending coefficients in `x = s0`, trimmed.
fn dehomogenize<F: Field>(f: &BinaryForm<F>) -> Vec<F::Elem> {
    let d = f.degree();
    let mut v: Vec<F::Elem> = (0..=d).map(|i| f.coeffs[d - i].clone()).collect();
    upoly::trim(&mut v);
    v
}

/// Resultant of two binary forms via the Sylvester determinant.
pub fn form_resultant<F: Field>(f: &BinaryForm<F>, g: &BinaryForm<F>) -> F::Elem {
    let field = f.field.clone();
    let (m, e) = (f.degree(), g.degree());
    let n = m + e;
    if n == 0 {
        return field.one();
    }
    let mut mat = Matrix::zeros(field, n, n);
    for r in 0..e {
        for (j, c) in f.coeffs.iter().enumerate() {
            mat.set(r, r + j, c.clone());
        }
    }
    for r in 0..m {
        for (j, c) in g.coeffs.iter().enumerate() {
            mat.set(e + r, r + j, c.clone());
        }
    }
    mat.determinant()
}

/// Univariate dense polynomial helpers (ascending coefficients).
pub(crate) mod upoly {
    use crate::field::{Field, Scalar};

    pub fn trim<E: Scalar>(v: &mut Vec<E>) {
        while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    }

    pub fn is_zero<E: Scalar>(v: &[E]) -> bool {
        v.iter().all(|c| c.is_zero())
    }

    /// Remainder of `a` modulo nonzero `b`.
    pub fn rem<E: Scalar>(a: &[E], b: &[E]) -> Vec<E> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = b[db].inv().expect("trimmed divisor");
        while r.len() > db && !is_zero(&r) {
            let dr = r.len() - 1;
            let c = r[dr].clone() * lead_inv.clone();
            for i in 0..=db {
                let k = dr - db + i;
                r[k] = r[k].clone() - c.clone() * b[i].clone();
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    /// Monic gcd of two polynomials, not both zero.
    pub fn gcd<F: Field>(field: &F, a: Vec<F::Elem>, b: Vec<F::Elem>) -> Vec<F::Elem> {
        let (mut a, mut b) = (a, b);
        trim(&mut a);
        trim(&mut b);
        while !is_zero(&b) {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        if is_zero(&a) {
            return vec![field.one()];
        }
        let lead = a.last().unwrap().inv().unwrap();
        a.into_iter().map(|c| c * lead.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(c: &[i64]) -> BinaryForm<Rationals> {
        BinaryForm::from_ints(Rationals, c)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(form_mul(&q(&[1, 0]), &q(&[0, 1])).unwrap(), q(&[0, 1, 0]));
        assert_eq!(form_mul(&q(&[1, -1]), &q(&[1, 1])).unwrap(), q(&[1, 0, -1]));
        // (s0 - 2 s1)(s0 - 3 s1) = s0^2 - 5 s0 s1 + 6 s1^2, expanded by hand
        assert_eq!(form_mul(&q(&[1, -2]), &q(&[1, -3])).unwrap(), q(&[1, -5, 6]));
    }

    #[test]
    fn mul_rejects_mixed_fields() {
        let a = BinaryForm::from_ints(PrimeField::new(7).unwrap(), &[1, 1]);
        let b = BinaryForm::from_ints(PrimeField::new(11).unwrap(), &[1, 1]);
        assert_eq!(form_mul(&a, &b), Err(FormError::FieldMismatch));
    }

    #[test]
    fn divide_examples() {
        assert_eq!(form_divide_exact(&q(&[1, 0, -1]), &q(&[1, -1])).unwrap(), q(&[1, 1]));
        assert!(matches!(
            form_divide_exact(&q(&[1, 0, 1]), &q(&[1, -1])),
            Err(FormError::Remainder { .. })
        ));
        assert_eq!(
            form_divide_exact(&q(&[1, 0]), &q(&[0, 0])),
            Err(FormError::ZeroDivisor)
        );
        // s0 does not divide s1
        assert!(form_divide_exact(&q(&[0, 1]), &q(&[1, 0])).is_err());
        assert_eq!(form_divide_exact(&q(&[0, 1]), &q(&[0, 1])).unwrap(), q(&[1]));
    }

    #[test]
    fn divide_extracts_residual_factor() {
        // N = s1 * s0 (s0 - s1)(s0 - 2 s1)(s0 - 3 s1); f = N * (2 s1)
        let n = [q(&[0, 1]), q(&[1, 0]), q(&[1, -1]), q(&[1, -2]), q(&[1, -3])]
            .iter()
            .fold(q(&[1]), |acc, l| acc.mul(l));
        let f = n.mul(&q(&[0, 2]));
        assert_eq!(form_divide_exact(&f, &n).unwrap(), q(&[0, 2]));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(form_gcd(&q(&[0, 1, 0]), &q(&[0, 0, 1])).unwrap(), q(&[0, 1]));
        assert_eq!(form_gcd(&q(&[1, -1]), &q(&[1, 1])).unwrap(), q(&[1]));
        assert_eq!(form_gcd(&q(&[1, -5, 6]), &q(&[1, -2])).unwrap(), q(&[1, -2]));
        assert_eq!(form_gcd(&q(&[0, 0]), &q(&[0, 3])).unwrap(), q(&[0, 1]));
        assert_eq!(form_gcd(&q(&[0]), &q(&[0, 0])), Err(FormError::BothZero));
        // s0^2 s1 and s0 s1^2 share s0 s1
        assert_eq!(form_gcd(&q(&[0, 1, 0, 0]), &q(&[0, 0, 1, 0])).unwrap(), q(&[0, 1, 0]));
    }

    #[test]
    fn compose_and_eval_agree() {
        let f = q(&[1, -5, 6]);
        let t0 = q(&[2, 1]);
        let t1 = q(&[0, 3]);
        let c = f.compose(&t0, &t1);
        for (a, b) in [(1, 0), (0, 1), (3, -2), (5, 7)] {
            let p = [Rationals.from_i64(a), Rationals.from_i64(b)];
            let inner = [t0.eval(&p), t1.eval(&p)];
            assert_eq!(c.eval(&p), f.eval(&inner));
        }
    }

    #[test]
    fn derivatives_follow_euler() {
        // s0 * df/ds0 + s1 * df/ds1 = deg * f
        let f = q(&[3, -1, 4, 1, -5]);
        let lhs = f.d_s0().mul(&q(&[1, 0])).add(&f.d_s1().mul(&q(&[0, 1])));
        assert_eq!(lhs, f.scale(&Rationals.from_i64(4)));
    }

    #[test]
    fn resultant_detects_common_root() {
        assert!(form_resultant(&q(&[1, -5, 6]), &q(&[1, -2])).is_zero());
        assert!(!form_resultant(&q(&[1, -5, 6]), &q(&[1, -4])).is_zero());
        // Res(s0 - a s1, s0 - b s1) = a - b up to sign
        let r = form_resultant(&q(&[1, -2]), &q(&[1, -7]));
        assert_eq!(r, Rationals.from_i64(-5));
    }
}
