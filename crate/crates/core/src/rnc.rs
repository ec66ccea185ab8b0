//! Frames, rational normal curves through a frame, quadrics, projections.
//!
//! The standard frame in ℙⁿ is `e_0, ..., e_n, (1:...:1)`. A rational normal
//! curve through it is determined by parameters `a_0 = 0, a_1 = 1, a_2..a_n`
//! and has coordinates `x_j = ∏_{i≠j}(s0 - a_i s1)`.

use rand::RngCore;
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::form::{form_divide_exact, form_gcd, BinaryForm, P1Point};
use crate::matrix::Matrix;
use crate::sampling::run_trials;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RncError {
    #[error("points are not in linear general position; subset {subset:?} is dependent")]
    Degenerate { subset: Vec<usize> },
    #[error("frame needs n + 2 points of length n + 1 with n >= 1")]
    FrameShape,
    #[error("quadric does not vanish on the standard frame: {violations:?}")]
    NotThroughFrame { violations: Vec<String> },
    #[error("the zero quadric has no residual")]
    ZeroQuadric,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("curve parameters must be pairwise distinct and differ from 0 and 1")]
    BadParams,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("projection center {index} is not on the curve")]
    CenterNotOnCurve { index: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// `n + 2` points of ℙⁿ, every `n + 1` of them independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame<F: Field> {
    field: F,
    points: Vec<Vec<F::Elem>>,
}

impl<F: Field> Frame<F> {
    pub fn new(field: F, points: Vec<Vec<F::Elem>>) -> Result<Self, RncError> {
        let m = points.len();
        if m < 3 || points.iter().any(|p| p.len() != m - 1) {
            return Err(RncError::FrameShape);
        }
        if let Some(skip) = (0..m).rev().find(|&skip| {
            let cols: Vec<Vec<F::Elem>> = (0..m).filter(|&i| i != skip).map(|i| points[i].clone()).collect();
            Matrix::from_cols(field.clone(), &cols).rank() < m - 1
        }) {
            return Err(RncError::Degenerate {
                subset: (0..m).filter(|&i| i != skip).collect(),
            });
        }
        Ok(Frame { field, points })
    }

    pub fn standard(field: F, n: usize) -> Self {
        let mut points: Vec<Vec<F::Elem>> = (0..=n)
            .map(|j| (0..=n).map(|i| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        points.push(vec![field.one(); n + 1]);
        Frame { field, points }
    }

    pub fn random(field: F, n: usize, rng: &mut dyn RngCore) -> Self {
        loop {
            let pts = (0..n + 2)
                .map(|_| (0..=n).map(|_| field.random(rng)).collect())
                .collect();
            if let Ok(f) = Frame::new(field.clone(), pts) {
                return f;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.points.len() - 2
    }
    pub fn points(&self) -> &[Vec<F::Elem>] {
        &self.points
    }
    pub fn field(&self) -> &F {
        &self.field
    }
}

/// An invertible matrix `T` with `T P_j ∝ e_j` for `j <= n` and `T P_{n+1} ∝ (1:...:1)`.
pub fn frame_transform<F: Field>(frame: &Frame<F>) -> Result<Matrix<F>, RncError> {
    let n = frame.n();
    let field = frame.field.clone();
    let a = Matrix::from_cols(field.clone(), &frame.points[..=n]);
    let lambda = a.solve(&frame.points[n + 1]).ok_or(RncError::Degenerate {
        subset: (0..=n).collect(),
    })?;
    if let Some(j) = lambda.iter().position(|l| l.is_zero()) {
        return Err(RncError::Degenerate {
            subset: (0..=n + 1).filter(|&i| i != j).collect(),
        });
    }
    let mut b = a;
    for (c, l) in lambda.iter().enumerate() {
        for r in 0..=n {
            let v = b.get(r, c).clone() * l.clone();
            b.set(r, c, v);
        }
    }
    b.inverse().ok_or_else(|| RncError::Internal("frame matrix not invertible".into()))
}

/// Is `v` a nonzero multiple of `w`?
pub fn proportional<E: Scalar>(v: &[E], w: &[E]) -> bool {
    if v.len() != w.len() || v.iter().all(Scalar::is_zero) || w.iter().all(Scalar::is_zero) {
        return false;
    }
    (0..v.len()).all(|i| (i..v.len()).all(|j| v[i].clone() * w[j].clone() == v[j].clone() * w[i].clone()))
}

/// A curve `ℙ¹ → ℙⁿ` given by `n + 1` forms of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamCurve<F: Field> {
    coords: Vec<BinaryForm<F>>,
}

impl<F: Field> ParamCurve<F> {
    pub fn new(coords: Vec<BinaryForm<F>>) -> Result<Self, RncError> {
        let Some(first) = coords.first() else {
            return Err(RncError::Shape("no coordinates".into()));
        };
        if coords.iter().any(|c| c.degree() != first.degree()) {
            return Err(RncError::Shape("coordinate degrees differ".into()));
        }
        Ok(ParamCurve { coords })
    }

    pub fn coords(&self) -> &[BinaryForm<F>] {
        &self.coords
    }
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }
    pub fn degree(&self) -> usize {
        self.coords[0].degree()
    }
    pub fn field(&self) -> &F {
        self.coords[0].field()
    }

    pub fn eval(&self, s: &P1Point<F::Elem>) -> Vec<F::Elem> {
        self.coords.iter().map(|c| c.eval(s)).collect()
    }

    /// Rows are coordinates, columns monomials.
    pub fn coefficient_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(
            self.field().clone(),
            self.coords.iter().map(|c| c.coeffs().to_vec()).collect(),
        )
    }

    /// The image spans ℙⁿ.
    pub fn is_nondegenerate(&self) -> bool {
        self.coefficient_matrix().rank() == self.n() + 1
    }

    /// `T ∘ curve`.
    pub fn transform(&self, t: &Matrix<F>) -> Self {
        let f = self.field().clone();
        let coords = (0..t.rows())
            .map(|r| {
                (0..t.cols()).fold(BinaryForm::zero(f.clone(), self.degree()), |acc, c| {
                    acc.add(&self.coords[c].scale(t.get(r, c)))
                })
            })
            .collect();
        ParamCurve { coords }
    }

    /// Same curve after `s0 := m00 s0 + m01 s1, s1 := m10 s0 + m11 s1`.
    pub fn reparametrize(&self, m: &[[F::Elem; 2]; 2]) -> Self {
        ParamCurve {
            coords: self.coords.iter().map(|c| c.substitute_linear(m)).collect(),
        }
    }

    /// Coordinates are pairwise proportional with one common ratio.
    pub fn same_map(&self, other: &Self) -> bool {
        if self.coords.len() != other.coords.len() || self.degree() != other.degree() {
            return false;
        }
        let flat = |c: &Self| c.coords.iter().flat_map(|f| f.coeffs().to_vec()).collect::<Vec<_>>();
        proportional(&flat(self), &flat(other))
    }

    /// Removes the common factor of all coordinates.
    pub fn reduced(&self) -> Self {
        let g = self.common_factor();
        if g.degree() == 0 {
            return self.clone();
        }
        ParamCurve {
            coords: self
                .coords
                .iter()
                .map(|c| form_divide_exact(c, &g).expect("gcd divides"))
                .collect(),
        }
    }

    pub fn common_factor(&self) -> BinaryForm<F> {
        let mut g = self.coords[0].clone();
        for c in &self.coords[1..] {
            if g.is_zero() {
                g = c.clone();
            } else if !c.is_zero() {
                g = form_gcd(&g, c).expect("same field");
            }
        }
        if g.is_zero() {
            BinaryForm::one(self.field().clone())
        } else {
            g
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "degree": self.degree(),
            "coords": self.coords.iter().map(BinaryForm::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Rational normal curve through the standard frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardRNC<F: Field> {
    field: F,
    n: usize,
    params: Vec<F::Elem>,
}

impl<F: Field> StandardRNC<F> {
    /// `params = (a_2, ..., a_n)`.
    pub fn new(field: F, params: Vec<F::Elem>) -> Result<Self, RncError> {
        let n = params.len() + 1;
        let c = StandardRNC { field, n, params };
        let all = c.all_params();
        for i in 0..all.len() {
            for j in 0..i {
                if all[i] == all[j] {
                    return Err(RncError::BadParams);
                }
            }
        }
        Ok(c)
    }

    pub fn from_ints(field: F, params: &[i64]) -> Result<Self, RncError> {
        let p = params.iter().map(|&x| field.from_i64(x)).collect();
        Self::new(field, p)
    }

    pub fn random(field: F, n: usize, rng: &mut dyn RngCore) -> Self {
        assert!(n >= 2);
        loop {
            let params = (0..n - 1).map(|_| field.random(rng)).collect();
            if let Ok(c) = Self::new(field.clone(), params) {
                return c;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn params(&self) -> &[F::Elem] {
        &self.params
    }

    /// `(0, 1, a_2, ..., a_n)`.
    pub fn all_params(&self) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(), self.field.one()];
        v.extend(self.params.iter().cloned());
        v
    }

    /// Parameter of the preimage of frame point `j`; `(1:0)` for the unit point.
    pub fn frame_parameter(&self, j: usize) -> P1Point<F::Elem> {
        if j <= self.n {
            [self.all_params()[j].clone(), self.field.one()]
        } else {
            [self.field.one(), self.field.zero()]
        }
    }

    fn linear_factors(&self) -> Vec<BinaryForm<F>> {
        self.all_params()
            .into_iter()
            .map(|a| BinaryForm::linear(self.field.clone(), self.field.one(), -a))
            .collect()
    }

    pub fn coordinate_forms(&self) -> Vec<BinaryForm<F>> {
        let lin = self.linear_factors();
        (0..=self.n)
            .map(|j| product_except(&self.field, &lin, &[j]))
            .collect()
    }

    pub fn curve(&self) -> ParamCurve<F> {
        ParamCurve::new(self.coordinate_forms()).expect("equal degrees")
    }

    pub fn evaluate(&self, s: &P1Point<F::Elem>) -> Vec<F::Elem> {
        self.coordinate_forms().iter().map(|c| c.eval(s)).collect()
    }

    /// `s1 ∏_{i=0}^n (s0 - a_i s1)`, vanishing at the preimages of all frame points.
    pub fn node_product(&self) -> BinaryForm<F> {
        let lin = self.linear_factors();
        product_except(&self.field, &lin, &[]).mul(&BinaryForm::s1(self.field.clone()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "params": self.params.iter().map(|x| self.field.encode(x)).collect::<Vec<_>>(),
            "field": self.field.spec().to_string(),
        })
    }
}

fn product_except<F: Field>(field: &F, lin: &[BinaryForm<F>], skip: &[usize]) -> BinaryForm<F> {
    lin.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .fold(BinaryForm::one(field.clone()), |acc, (_, l)| acc.mul(l))
}

/// `q(x) = Σ g_ij x_i x_j` with a symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric<F: Field> {
    gram: Matrix<F>,
}

/// Which random quadrics through the standard frame to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricKind {
    /// Uniform over the linear space of quadrics through the frame.
    Any,
    /// Rank exactly 3 or 4, frame away from the singular locus.
    Rank(usize),
}

impl<F: Field> Quadric<F> {
    pub fn new(gram: Matrix<F>) -> Result<Self, RncError> {
        if gram.rows() != gram.cols() || gram.rows() < 2 {
            return Err(RncError::Shape("Gram matrix must be square".into()));
        }
        if gram.transpose() != gram {
            return Err(RncError::NotSymmetric);
        }
        Ok(Quadric { gram })
    }

    /// From terms `c x_i x_j`; off-diagonal coefficients are split evenly.
    pub fn from_monomials(field: F, n: usize, terms: &[(usize, usize, i64)]) -> Self {
        let half = field.from_i64(2).inv().expect("odd characteristic");
        let mut g = Matrix::zeros(field.clone(), n + 1, n + 1);
        for &(i, j, c) in terms {
            let c = field.from_i64(c);
            if i == j {
                let v = g.get(i, i).clone() + c;
                g.set(i, i, v);
            } else {
                let h = c * half.clone();
                let v = g.get(i, j).clone() + h.clone();
                g.set(i, j, v.clone());
                g.set(j, i, v);
            }
        }
        Quadric { gram: g }
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }
    pub fn n(&self) -> usize {
        self.gram.rows() - 1
    }
    pub fn field(&self) -> &F {
        self.gram.field()
    }
    pub fn rank(&self) -> usize {
        self.gram.rank()
    }
    pub fn is_zero(&self) -> bool {
        (0..=self.n()).all(|r| self.gram.row(r).iter().all(Scalar::is_zero))
    }

    pub fn eval(&self, x: &[F::Elem]) -> F::Elem {
        let gx = self.gram.mul_vec(x);
        x.iter()
            .zip(gx)
            .fold(self.field().zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    /// `q(c_0, ..., c_n)` for forms of a common degree.
    pub fn compose(&self, coords: &[BinaryForm<F>]) -> BinaryForm<F> {
        let f = self.field().clone();
        let n = self.n();
        let two = f.from_i64(2);
        let mut out = BinaryForm::zero(f, 2 * coords[0].degree());
        for i in 0..=n {
            for j in i..=n {
                let g = self.gram.get(i, j);
                if g.is_zero() {
                    continue;
                }
                let c = if i == j { g.clone() } else { g.clone() * two.clone() };
                out = out.add(&coords[i].mul(&coords[j]).scale(&c));
            }
        }
        out
    }

    /// The `n + 2` linear conditions for vanishing on the standard frame:
    /// `g_jj = 0` and `Σ_{ij} g_ij = 0`.
    pub fn frame_violations(&self) -> Vec<String> {
        let mut v: Vec<String> = (0..=self.n())
            .filter(|&j| !self.gram.get(j, j).is_zero())
            .map(|j| format!("q(e_{j}) != 0"))
            .collect();
        let ones = vec![self.field().one(); self.n() + 1];
        if !self.eval(&ones).is_zero() {
            v.push("q(1,...,1) != 0".into());
        }
        v
    }

    pub fn through_standard_frame(&self) -> bool {
        self.frame_violations().is_empty()
    }

    /// Indices of frame points lying in the singular locus `ker(G)`.
    pub fn singular_frame_points(&self, frame: &Frame<F>) -> Vec<usize> {
        frame
            .points()
            .iter()
            .enumerate()
            .filter(|(_, p)| self.gram.mul_vec(p).iter().all(Scalar::is_zero))
            .map(|(i, _)| i)
            .collect()
    }

    /// The quadric `q ∘ T⁻¹`, i.e. the image of `{q = 0}` under `x ↦ T x`.
    pub fn transformed(&self, t: &Matrix<F>) -> Option<Self> {
        let ti = t.inverse()?;
        Some(Quadric {
            gram: ti.transpose().mul(&self.gram).mul(&ti),
        })
    }

    pub fn random_through_standard_frame(
        field: F,
        n: usize,
        kind: QuadricKind,
        rng: &mut dyn RngCore,
    ) -> Result<Self, RncError> {
        match kind {
            QuadricKind::Any => loop {
                let mut g = Matrix::zeros(field.clone(), n + 1, n + 1);
                let mut total = field.zero();
                for i in 0..=n {
                    for j in i + 1..=n {
                        if (i, j) == (n - 1, n) {
                            continue;
                        }
                        let x = field.random(rng);
                        total = total + x.clone();
                        g.set(i, j, x.clone());
                        g.set(j, i, x);
                    }
                }
                // The last pair absorbs the sum condition.
                g.set(n - 1, n, -total.clone());
                g.set(n, n - 1, -total);
                let q = Quadric { gram: g };
                if !q.is_zero() {
                    return Ok(q);
                }
            },
            QuadricKind::Rank(r) => random_rank_quadric(field, n, r, rng),
        }
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        json!({
            "n": self.n(),
            "gram": (0..=self.n())
                .map(|r| self.gram.row(r).iter().map(|x| f.encode(x)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "field": f.spec().to_string(),
        })
    }
}

fn random_rank_quadric<F: Field>(
    field: F,
    n: usize,
    r: usize,
    rng: &mut dyn RngCore,
) -> Result<Quadric<F>, RncError> {
    if !(r == 3 || r == 4) || r > n + 1 {
        return Err(RncError::Shape(format!("rank {r} quadric in P^{n}")));
    }
    // Model: x0 x1 - x2 x3 (rank 4) or x0 x1 - x2^2 (rank 3).
    let model = if r == 4 {
        Quadric::from_monomials(field.clone(), n, &[(0, 1, 1), (2, 3, -1)])
    } else {
        Quadric::from_monomials(field.clone(), n, &[(0, 1, 1), (2, 2, -1)])
    };
    loop {
        let pts: Vec<Vec<F::Elem>> = (0..n + 2)
            .map(|_| {
                let mut v: Vec<F::Elem> = (0..=n).map(|_| field.random(rng)).collect();
                let (a, b) = (field.random(rng), field.random(rng));
                if r == 4 {
                    let (c, d) = (field.random(rng), field.random(rng));
                    v[0] = a.clone() * c.clone();
                    v[1] = b.clone() * d.clone();
                    v[2] = a * d;
                    v[3] = b * c;
                } else {
                    v[0] = a.clone() * a.clone();
                    v[1] = b.clone() * b.clone();
                    v[2] = a * b;
                }
                v
            })
            .collect();
        let Ok(frame) = Frame::new(field.clone(), pts) else { continue };
        if !model.singular_frame_points(&frame).is_empty() {
            continue;
        }
        let t = frame_transform(&frame)?;
        let q = model
            .transformed(&t)
            .ok_or_else(|| RncError::Internal("frame transform singular".into()))?;
        debug_assert!(q.through_standard_frame());
        return Ok(q);
    }
}

/// `p` with `q(φ(s)) = s1 ∏_i (s0 - a_i s1) · p(s)`; the curve lies on the
/// quadric iff `p = 0`.
pub fn residual_polynomial<F: Field>(
    q: &Quadric<F>,
    c: &StandardRNC<F>,
) -> Result<BinaryForm<F>, RncError> {
    check_pair(q, c)?;
    let composite = q.compose(&c.coordinate_forms());
    form_divide_exact(&composite, &c.node_product()).map_err(|e| RncError::Internal(e.to_string()))
}

fn check_pair<F: Field>(q: &Quadric<F>, c: &StandardRNC<F>) -> Result<(), RncError> {
    if q.n() != c.n() {
        return Err(RncError::Shape(format!("quadric in P^{} vs curve in P^{}", q.n(), c.n())));
    }
    if q.is_zero() {
        return Err(RncError::ZeroQuadric);
    }
    let violations = q.frame_violations();
    if !violations.is_empty() {
        return Err(RncError::NotThroughFrame { violations });
    }
    Ok(())
}

/// Jacobian of the coefficients of `p` with respect to `(a_2, ..., a_n)`,
/// computed from exact derivatives of the composite and the node product.
/// Row `r` is coefficient `r` of `p`, column `m - 2` is `∂/∂a_m`.
pub fn residual_jacobian<F: Field>(
    q: &Quadric<F>,
    c: &StandardRNC<F>,
) -> Result<Matrix<F>, RncError> {
    let p = residual_polynomial(q, c)?;
    let f = c.field().clone();
    let n = c.n();
    let phi = c.coordinate_forms();
    let lin = c.linear_factors();
    let node = c.node_product();
    let s1 = BinaryForm::s1(f.clone());
    let neg_s1 = s1.neg();
    let two = f.from_i64(2);
    let mut jac = Matrix::zeros(f.clone(), n - 1, n - 1);
    for m in 2..=n {
        // ∂φ_j/∂a_m = -s1 ∏_{i≠j,m} (s0 - a_i s1), zero for j = m.
        let dphi: Vec<BinaryForm<F>> = (0..=n)
            .map(|j| {
                if j == m {
                    BinaryForm::zero(f.clone(), n)
                } else {
                    neg_s1.mul(&product_except(&f, &lin, &[j, m]))
                }
            })
            .collect();
        let mut dcomp = BinaryForm::zero(f.clone(), 2 * n);
        for i in 0..=n {
            for j in 0..=n {
                let g = q.gram().get(i, j);
                if !g.is_zero() {
                    dcomp = dcomp.add(&dphi[i].mul(&phi[j]).scale(&(g.clone() * two.clone())));
                }
            }
        }
        let dnode = neg_s1.mul(&s1).mul(&product_except(&f, &lin, &[m]));
        let num = dcomp.sub(&dnode.mul(&p));
        let dp = form_divide_exact(&num, &node).map_err(|e| RncError::Internal(e.to_string()))?;
        for (r, v) in dp.coeffs().iter().enumerate() {
            jac.set(r, m - 2, v.clone());
        }
    }
    Ok(jac)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitenessRank {
    pub rank: usize,
    pub expected: usize,
    /// Rank below `n - 1`: the sample says nothing about finiteness.
    pub non_generic: bool,
}

pub fn rnc_finiteness_rank<F: Field>(
    q: &Quadric<F>,
    c: &StandardRNC<F>,
) -> Result<FinitenessRank, RncError> {
    let rank = residual_jacobian(q, c)?.rank();
    let expected = c.n() - 1;
    Ok(FinitenessRank {
        rank,
        expected,
        non_generic: rank < expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RncTrial {
    pub trial: usize,
    pub quadric_rank: usize,
    pub residual_degree: usize,
    pub factorization_exact: bool,
    pub jacobian_rank: usize,
}

/// Random quadric through the frame and random curve, per trial.
pub fn rnc_experiment<F: Field>(
    field: &F,
    n: usize,
    kind: QuadricKind,
    seed: u64,
    trials: usize,
) -> Result<Vec<RncTrial>, RncError> {
    run_trials(seed, trials, |rng, trial| {
        let q = Quadric::random_through_standard_frame(field.clone(), n, kind, rng)?;
        let c = StandardRNC::random(field.clone(), n, rng);
        let p = residual_polynomial(&q, &c)?;
        let exact = p.mul(&c.node_product()) == q.compose(&c.coordinate_forms());
        Ok(RncTrial {
            trial,
            quadric_rank: q.rank(),
            residual_degree: p.degree(),
            factorization_exact: exact,
            jacobian_rank: rnc_finiteness_rank(&q, &c)?.rank,
        })
    })
    .into_iter()
    .collect()
}

/// Projects a curve through the standard frame from frame point `j`
/// (`j = n + 1` is the unit point). The image passes through the standard
/// frame of ℙ^{n-1}.
pub fn project_from_frame_point<F: Field>(
    curve: &ParamCurve<F>,
    j: usize,
) -> Result<ParamCurve<F>, RncError> {
    let n = curve.n();
    if j > n + 1 || n < 2 {
        return Err(RncError::Shape(format!("frame index {j} in P^{n}")));
    }
    let coords: Vec<BinaryForm<F>> = if j <= n {
        (0..=n).filter(|&i| i != j).map(|i| curve.coords()[i].clone()).collect()
    } else {
        (0..n).map(|i| curve.coords()[i].sub(&curve.coords()[n])).collect()
    };
    let image = ParamCurve::new(coords)?;
    if image.coords().iter().all(BinaryForm::is_zero) || image.common_factor().degree() == 0 {
        return Err(RncError::CenterNotOnCurve { index: j });
    }
    Ok(image.reduced())
}
