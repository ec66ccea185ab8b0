//! Curves inside a scroll `F(a_1, ..., a_d)` in bihomogeneous coordinates.
//!
//! A point of the scroll is a pair `(y, t)` with `t ∈ k² \ 0`, `y ∈ k^d \ 0`,
//! modulo `t ↦ λ t, y_i ↦ μ λ^{-a_i} y_i`. The embedding into ℙⁿ uses the
//! monomials `t0^b t1^c y_i` with `b + c = a_i`, ordered by `i` then by
//! decreasing `b`.

use rand::RngCore;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::families::{dim_curves_in_scroll, FamilyDim, FamilyError, ScrollType};
use crate::field::{Field, FieldSpec, Scalar};
use crate::form::{form_gcd, BinaryForm, P1Point};
use crate::matrix::Matrix;
use crate::rnc::{Frame, ParamCurve};
use crate::sampling::run_trials;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScrollError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("curve data inconsistent with the scroll: {0}")]
    Invalid(String),
    #[error("t0 and t1 share a factor; the ruling map has lower degree")]
    NotCoprime,
    #[error("the y forms share a zero; the curve is not defined everywhere")]
    BaseLocus,
    #[error("invalid scroll point: {0}")]
    InvalidPoint(String),
    #[error("points do not impose independent conditions (dependent subset {0:?})")]
    DependentConditions(Vec<usize>),
    #[error("the family is empty")]
    EmptyFamily,
    #[error("degeneration needs a donor entry >= 1 and distinct donor and recipient")]
    BadDegeneration,
    #[error("lambda must be nonzero")]
    ZeroLambda,
}

/// A point `(y, t)` of a scroll.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollPoint<E> {
    pub y: Vec<E>,
    pub t: P1Point<E>,
}

impl<E: Scalar> ScrollPoint<E> {
    fn validate(&self, d: usize) -> Result<(), ScrollError> {
        if self.y.len() != d {
            return Err(ScrollError::InvalidPoint(format!("{} y-coordinates, expected {d}", self.y.len())));
        }
        if self.t.iter().all(Scalar::is_zero) {
            return Err(ScrollError::InvalidPoint("t = (0, 0)".into()));
        }
        if self.y.iter().all(Scalar::is_zero) {
            return Err(ScrollError::InvalidPoint("y = 0".into()));
        }
        Ok(())
    }
}

fn pow<E: Scalar>(x: &E, e: u32, one: &E) -> E {
    if e == 0 {
        one.clone()
    } else {
        x.pow(e)
    }
}

/// Image of a scroll point in ℙⁿ.
pub fn scroll_point_image<F: Field>(field: &F, a: &[u32], p: &ScrollPoint<F::Elem>) -> Vec<F::Elem> {
    let one = field.one();
    let mut out = Vec::new();
    for (i, &ai) in a.iter().enumerate() {
        for b in (0..=ai).rev() {
            out.push(pow(&p.t[0], b, &one) * pow(&p.t[1], ai - b, &one) * p.y[i].clone());
        }
    }
    out
}

pub fn random_scroll_point<F: Field>(field: &F, d: usize, rng: &mut dyn RngCore) -> ScrollPoint<F::Elem> {
    ScrollPoint {
        y: (0..d).map(|_| field.random_nonzero(rng)).collect(),
        t: [field.random_nonzero(rng), field.random_nonzero(rng)],
    }
}

/// A map `ℙ¹ → F(a)`, `s ↦ (y(s), t(s))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInScroll<F: Field> {
    scroll: ScrollType,
    k: u32,
    t: [BinaryForm<F>; 2],
    ys: Vec<BinaryForm<F>>,
}

impl<F: Field> CurveInScroll<F> {
    pub fn new(
        scroll: ScrollType,
        k: u32,
        t0: BinaryForm<F>,
        t1: BinaryForm<F>,
        ys: Vec<BinaryForm<F>>,
    ) -> Result<Self, ScrollError> {
        if k == 0 || k > scroll.d() {
            return Err(ScrollError::Invalid(format!("k = {k} outside 1..=d")));
        }
        if t0.degree() != k as usize || t1.degree() != k as usize {
            return Err(ScrollError::Invalid("t0, t1 must have degree k".into()));
        }
        if ys.len() != scroll.d() as usize {
            return Err(ScrollError::Invalid("need one y form per summand".into()));
        }
        let n = scroll.n() as i64;
        for (y, &ai) in ys.iter().zip(scroll.a()) {
            let e = n - k as i64 * ai as i64;
            if e < 0 {
                return Err(ScrollError::Invalid(format!("n - k a_i = {e} < 0")));
            }
            if y.degree() as i64 != e {
                return Err(ScrollError::Invalid(format!("deg y_i = {} but n - k a_i = {e}", y.degree())));
            }
        }
        if t0.is_zero() && t1.is_zero() || common_degree(&[t0.clone(), t1.clone()]) > 0 {
            return Err(ScrollError::NotCoprime);
        }
        if ys.iter().all(BinaryForm::is_zero) || common_degree(&ys) > 0 {
            return Err(ScrollError::BaseLocus);
        }
        Ok(CurveInScroll { scroll, k, t: [t0, t1], ys })
    }

    /// Random coefficients, resampled until the invariants hold.
    pub fn random(field: &F, scroll: &ScrollType, k: u32, rng: &mut dyn RngCore) -> Result<Self, ScrollError> {
        if dim_curves_in_scroll(scroll, k)?.is_empty() {
            return Err(ScrollError::EmptyFamily);
        }
        let n = scroll.n();
        loop {
            let t0 = BinaryForm::random(field.clone(), k as usize, rng);
            let t1 = BinaryForm::random(field.clone(), k as usize, rng);
            let ys = scroll
                .a()
                .iter()
                .map(|&ai| BinaryForm::random(field.clone(), (n - k * ai) as usize, rng))
                .collect();
            if let Ok(c) = Self::new(scroll.clone(), k, t0, t1, ys) {
                return Ok(c);
            }
        }
    }

    pub fn scroll(&self) -> &ScrollType {
        &self.scroll
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn t(&self) -> &[BinaryForm<F>; 2] {
        &self.t
    }
    pub fn ys(&self) -> &[BinaryForm<F>] {
        &self.ys
    }
    pub fn field(&self) -> &F {
        self.t[0].field()
    }

    pub fn point_at(&self, s: &P1Point<F::Elem>) -> ScrollPoint<F::Elem> {
        ScrollPoint {
            y: self.ys.iter().map(|y| y.eval(s)).collect(),
            t: [self.t[0].eval(s), self.t[1].eval(s)],
        }
    }

    /// Number of coefficients in this model: `Σ (n - k a_i + 1) + 2 (k + 1)`.
    pub fn coefficient_count(&self) -> usize {
        self.ys.iter().map(|y| y.degree() + 1).sum::<usize>() + 2 * (self.k as usize + 1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.scroll.a(),
            "n": self.scroll.n(),
            "k": self.k,
            "t": [self.t[0].to_json(), self.t[1].to_json()],
            "ys": self.ys.iter().map(BinaryForm::to_json).collect::<Vec<_>>(),
        })
    }
}

fn common_degree<F: Field>(forms: &[BinaryForm<F>]) -> usize {
    let mut g: Option<BinaryForm<F>> = None;
    for f in forms.iter().filter(|f| !f.is_zero()) {
        g = Some(match g {
            None => f.clone(),
            Some(h) => form_gcd(&h, f).expect("same field"),
        });
    }
    g.map_or(0, |g| g.degree())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushForward<F: Field> {
    pub curve: ParamCurve<F>,
    pub rank: usize,
    /// Coefficient rank below `n + 1`: the image is not a rational normal curve.
    pub degenerate: bool,
}

pub fn push_forward<F: Field>(c: &CurveInScroll<F>) -> PushForward<F> {
    let coords = pushforward_forms(c.scroll.a(), &c.t, &c.ys);
    let curve = ParamCurve::new(coords).expect("all coordinates have degree n");
    let rank = curve.coefficient_matrix().rank();
    let degenerate = rank < c.scroll.n() as usize + 1;
    PushForward { curve, rank, degenerate }
}

fn pushforward_forms<F: Field>(a: &[u32], t: &[BinaryForm<F>; 2], ys: &[BinaryForm<F>]) -> Vec<BinaryForm<F>> {
    let maxa = a.iter().copied().max().unwrap_or(0);
    let p0 = powers(&t[0], maxa);
    let p1 = powers(&t[1], maxa);
    let mut out = Vec::new();
    for (i, &ai) in a.iter().enumerate() {
        for b in (0..=ai).rev() {
            out.push(p0[b as usize].mul(&p1[(ai - b) as usize]).mul(&ys[i]));
        }
    }
    out
}

fn powers<F: Field>(f: &BinaryForm<F>, e: u32) -> Vec<BinaryForm<F>> {
    let mut v = vec![BinaryForm::one(f.field().clone())];
    for i in 1..=e as usize {
        v.push(v[i - 1].mul(f));
    }
    v
}

/// A section of `|mL + M|` on a scroll with (possibly unsorted) index `a`:
/// `Σ comp_i(t) y_i` with `deg comp_i = a_i + m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollSection<F: Field> {
    a: Vec<u32>,
    m: i64,
    comps: Vec<BinaryForm<F>>,
}

impl<F: Field> ScrollSection<F> {
    pub fn new(a: Vec<u32>, m: i64, comps: Vec<BinaryForm<F>>) -> Result<Self, ScrollError> {
        if a.len() != comps.len() {
            return Err(ScrollError::Invalid("one component per summand".into()));
        }
        for (c, &ai) in comps.iter().zip(&a) {
            if ai as i64 + m < 0 || c.degree() as i64 != ai as i64 + m {
                return Err(ScrollError::Invalid(format!(
                    "component of degree {} in class {m}L + M over a_i = {ai}",
                    c.degree()
                )));
            }
        }
        Ok(ScrollSection { a, m, comps })
    }

    pub fn zero(field: F, a: Vec<u32>, m: i64) -> Result<Self, ScrollError> {
        let comps = a
            .iter()
            .map(|&ai| BinaryForm::zero(field.clone(), (ai as i64 + m).max(0) as usize))
            .collect();
        Self::new(a, m, comps)
    }

    /// Section whose component coefficients are listed block by block.
    pub fn from_coefficients(field: F, a: Vec<u32>, m: i64, coeffs: &[F::Elem]) -> Result<Self, ScrollError> {
        let mut it = coeffs.iter().cloned();
        let comps = a
            .iter()
            .map(|&ai| {
                let e = (ai as i64 + m).max(0) as usize;
                BinaryForm::new(field.clone(), it.by_ref().take(e + 1).collect())
            })
            .collect();
        Self::new(a, m, comps)
    }

    /// Dimension of the space of such sections.
    pub fn space_dimension(a: &[u32], m: i64) -> usize {
        a.iter().map(|&ai| (ai as i64 + m + 1).max(0) as usize).sum()
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }
    pub fn m(&self) -> i64 {
        self.m
    }
    pub fn comps(&self) -> &[BinaryForm<F>] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(BinaryForm::is_zero)
    }

    pub fn evaluate(&self, p: &ScrollPoint<F::Elem>) -> Result<F::Elem, ScrollError> {
        p.validate(self.a.len())?;
        let f = self.comps[0].field();
        Ok(self
            .comps
            .iter()
            .zip(&p.y)
            .fold(f.zero(), |acc, (c, y)| acc + c.eval(&p.t) * y.clone()))
    }

    /// `Σ comp_i(t0(s), t1(s)) y_i(s)`, of degree `k m + n`.
    pub fn pullback(&self, c: &CurveInScroll<F>) -> Result<BinaryForm<F>, ScrollError> {
        if c.scroll.a() != self.a.as_slice() {
            return Err(ScrollError::Invalid("section and curve live on different scrolls".into()));
        }
        let deg = (c.k as i64 * self.m + c.scroll.n() as i64) as usize;
        let mut out = BinaryForm::zero(c.field().clone(), deg);
        for (comp, y) in self.comps.iter().zip(&c.ys) {
            if !comp.is_zero() {
                out = out.add(&comp.compose(&c.t[0], &c.t[1]).mul(y));
            }
        }
        Ok(out)
    }

    /// Multiplies `y_i` by `c` in the section, i.e. scales component `i`.
    pub fn scale_variable(&self, i: usize, c: &F::Elem) -> Self {
        let mut s = self.clone();
        s.comps[i] = s.comps[i].scale(c);
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a,
            "m": self.m,
            "comps": self.comps.iter().map(BinaryForm::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Monomials `s0^(e-l) s1^l` at a point, `l = 0..=e`.
fn monomials_at<E: Scalar>(e: usize, s: &P1Point<E>, one: &E) -> Vec<E> {
    (0..=e)
        .map(|l| pow(&s[0], (e - l) as u32, one) * pow(&s[1], l as u32, one))
        .collect()
}

/// Result of [`interpolate_unisecant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnisecantOutcome<F: Field> {
    Unique {
        curve: CurveInScroll<F>,
        /// Dimension of the space of `|L + M|` sections through the points.
        sections_through_points: usize,
        /// Every such section pulls back to the zero form on the curve.
        sections_vanish: bool,
    },
    None {
        reason: NoneReason,
    },
    PositiveFamily {
        dim: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NoneReason {
    /// Two points on the same ruling.
    NotInjective,
    /// The linear system has no nonzero solution.
    NoSolution,
    /// Solutions exist but vanish at a point or have a base point.
    OnlyDegenerateSolutions,
}

impl<F: Field> UnisecantOutcome<F> {
    pub fn label(&self) -> &'static str {
        match self {
            UnisecantOutcome::Unique { .. } => "UNIQUE",
            UnisecantOutcome::None { .. } => "NONE",
            UnisecantOutcome::PositiveFamily { .. } => "POSITIVE_FAMILY",
        }
    }
}

/// The unique curve with `Γ·L = 1` through `n + 2` points of `F(a)`, if any.
///
/// The curve is parametrized by `t` itself, so the unknowns are the
/// coefficients of `y_i` (degree `n - a_i`); each point contributes the
/// cross-multiplied conditions `y_i(t_j) Y_{j,i'} = y_{i'}(t_j) Y_{j,i}`.
pub fn interpolate_unisecant<F: Field>(
    field: &F,
    scroll: &ScrollType,
    points: &[ScrollPoint<F::Elem>],
) -> Result<UnisecantOutcome<F>, ScrollError> {
    let n = scroll.n() as usize;
    let d = scroll.d() as usize;
    let a = scroll.a();
    if points.len() != n + 2 {
        return Err(ScrollError::Invalid(format!("{} points, expected n + 2 = {}", points.len(), n + 2)));
    }
    for p in points {
        p.validate(d)?;
    }
    let images: Vec<Vec<F::Elem>> = points.iter().map(|p| scroll_point_image(field, a, p)).collect();
    if let Err(e) = Frame::new(field.clone(), images) {
        return Err(match e {
            crate::rnc::RncError::Degenerate { subset } => ScrollError::DependentConditions(subset),
            other => ScrollError::Invalid(other.to_string()),
        });
    }
    let injective = distinct_t(points);

    let one = field.one();
    let degs: Vec<usize> = a.iter().map(|&ai| n - ai as usize).collect();
    let offsets: Vec<usize> = degs
        .iter()
        .scan(0, |acc, &e| {
            let o = *acc;
            *acc += e + 1;
            Some(o)
        })
        .collect();
    let unknowns = degs.iter().map(|e| e + 1).sum::<usize>();
    let mut sys = Matrix::zeros(field.clone(), 0, unknowns);
    for p in points {
        let mons: Vec<Vec<F::Elem>> = degs.iter().map(|&e| monomials_at(e, &p.t, &one)).collect();
        for i in 0..d {
            for i2 in i + 1..d {
                let mut row = vec![field.zero(); unknowns];
                for (l, m) in mons[i].iter().enumerate() {
                    row[offsets[i] + l] = m.clone() * p.y[i2].clone();
                }
                for (l, m) in mons[i2].iter().enumerate() {
                    row[offsets[i2] + l] = -(m.clone() * p.y[i].clone());
                }
                sys.push_row(row);
            }
        }
    }
    let kernel = sys.rank_kernel().kernel;
    if !injective {
        // any solution through two points of one ruling meets that ruling twice
        return Ok(UnisecantOutcome::None { reason: NoneReason::NotInjective });
    }
    if kernel.is_empty() {
        return Ok(UnisecantOutcome::None { reason: NoneReason::NoSolution });
    }
    if kernel.len() >= 2 {
        return Ok(UnisecantOutcome::PositiveFamily { dim: kernel.len() });
    }
    let ys: Vec<BinaryForm<F>> = (0..d)
        .map(|i| BinaryForm::new(field.clone(), kernel[0][offsets[i]..offsets[i] + degs[i] + 1].to_vec()))
        .collect();
    let curve = match CurveInScroll::new(scroll.clone(), 1, BinaryForm::s0(field.clone()), BinaryForm::s1(field.clone()), ys) {
        Ok(c) => c,
        Err(ScrollError::BaseLocus) => return Ok(UnisecantOutcome::None { reason: NoneReason::OnlyDegenerateSolutions }),
        Err(e) => return Err(e),
    };
    let passes = points.iter().all(|p| {
        let q = curve.point_at(&p.t);
        !q.y.iter().all(Scalar::is_zero)
    });
    if !passes {
        return Ok(UnisecantOutcome::None { reason: NoneReason::OnlyDegenerateSolutions });
    }
    let (count, vanish) = sections_through_vanish(field, scroll, points, &curve, 1)?;
    Ok(UnisecantOutcome::Unique {
        curve,
        sections_through_points: count,
        sections_vanish: vanish,
    })
}

/// Sections of `|mL + M|` through the points, and whether all of them
/// vanish identically on the curve.
pub fn sections_through_vanish<F: Field>(
    field: &F,
    scroll: &ScrollType,
    points: &[ScrollPoint<F::Elem>],
    curve: &CurveInScroll<F>,
    m: i64,
) -> Result<(usize, bool), ScrollError> {
    let basis = sections_through(field, scroll.a(), m, points)?;
    let mut all = true;
    for s in &basis {
        all &= s.pullback(curve)?.is_zero();
    }
    Ok((basis.len(), all))
}

/// Basis of the sections of `|mL + M|` vanishing at every point.
pub fn sections_through<F: Field>(
    field: &F,
    a: &[u32],
    m: i64,
    points: &[ScrollPoint<F::Elem>],
) -> Result<Vec<ScrollSection<F>>, ScrollError> {
    let one = field.one();
    let dim = ScrollSection::<F>::space_dimension(a, m);
    let mut eval = Matrix::zeros(field.clone(), 0, dim);
    for p in points {
        p.validate(a.len())?;
        let mut row = Vec::with_capacity(dim);
        for (i, &ai) in a.iter().enumerate() {
            let e = ai as i64 + m;
            if e >= 0 {
                row.extend(monomials_at(e as usize, &p.t, &one).into_iter().map(|x| x * p.y[i].clone()));
            }
        }
        eval.push_row(row);
    }
    eval.rank_kernel()
        .kernel
        .iter()
        .map(|v| ScrollSection::from_coefficients(field.clone(), a.to_vec(), m, v))
        .collect()
}

fn distinct_t<E: Scalar>(pts: &[ScrollPoint<E>]) -> bool {
    (0..pts.len()).all(|j| {
        (0..j).all(|i| {
            let (s, t) = (&pts[i].t, &pts[j].t);
            s[0].clone() * t[1].clone() != s[1].clone() * t[0].clone()
        })
    })
}

/// A lifted frame: `n + 2` random points of `F(a)` whose images are in general position.
/// With `repeat_t`, points 0 and 1 share their `t`-value; otherwise all `t`-values are distinct.
pub fn random_lifted_frame<F: Field>(
    field: &F,
    scroll: &ScrollType,
    repeat_t: bool,
    rng: &mut dyn RngCore,
) -> Vec<ScrollPoint<F::Elem>> {
    let n = scroll.n() as usize;
    loop {
        let mut pts: Vec<_> = (0..n + 2).map(|_| random_scroll_point(field, scroll.d() as usize, rng)).collect();
        if repeat_t {
            pts[1].t = pts[0].t.clone();
        } else if !distinct_t(&pts) {
            continue;
        }
        let imgs = pts.iter().map(|p| scroll_point_image(field, scroll.a(), p)).collect();
        if Frame::new(field.clone(), imgs).is_ok() {
            return pts;
        }
    }
}

/// Rank data for one sampled curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceTrial {
    pub trial: usize,
    /// Rank of the differential of coefficients ↦ affine image points.
    pub rank: usize,
    /// `rank + 1 - 5`: the t-rescaling is invisible in affine values, the
    /// remaining group directions are subtracted.
    pub measured: i64,
    /// Rank of the differential of (coefficients, parameters) ↦ image points in ℙⁿ.
    pub incidence_rank: usize,
    /// `dim I_k - incidence_rank` with `dim I_k = predicted + n + 2`.
    pub fiber_dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub family: &'static str,
    pub a: Vec<u32>,
    pub n: u32,
    pub k: u32,
    pub predicted: i64,
    pub coefficient_count: usize,
    pub group_correction: i64,
    pub measured_ranks: Vec<usize>,
    pub trials: Vec<IncidenceTrial>,
    pub matches: usize,
    pub seed: u64,
    pub field: FieldSpec,
}

pub const GROUP_CORRECTION: i64 = 5;

/// Samples curves with ruling degree `k` in `F(a)` and measures the dimension
/// of the family through the rank of an exact differential.
pub fn incidence_dimension_estimate<F: Field>(
    field: &F,
    scroll: &ScrollType,
    k: u32,
    trials: usize,
    seed: u64,
) -> Result<DimensionReport, ScrollError> {
    let predicted = match dim_curves_in_scroll(scroll, k)? {
        FamilyDim::Empty => return Err(ScrollError::EmptyFamily),
        FamilyDim::Dim(v) => v,
    };
    let n = scroll.n() as usize;
    let results: Vec<Result<IncidenceTrial, ScrollError>> = run_trials(seed, trials, |rng, trial| {
        let c = CurveInScroll::random(field, scroll, k, rng)?;
        let params = distinct_params(field, n + 2, rng);
        let (rank, incidence_rank) = incidence_ranks(&c, &params);
        Ok(IncidenceTrial {
            trial,
            rank,
            measured: rank as i64 + 1 - GROUP_CORRECTION,
            incidence_rank,
            fiber_dim: predicted + n as i64 + 2 - incidence_rank as i64,
        })
    });
    let trials: Vec<IncidenceTrial> = results.into_iter().collect::<Result<_, _>>()?;
    let coefficient_count = scroll.a().iter().map(|&ai| n - (k * ai) as usize + 1).sum::<usize>() + 2 * (k as usize + 1);
    Ok(DimensionReport {
        family: "CURVES_IN_SCROLL",
        a: scroll.a().to_vec(),
        n: scroll.n(),
        k,
        predicted,
        coefficient_count,
        group_correction: GROUP_CORRECTION,
        measured_ranks: trials.iter().map(|t| t.rank).collect(),
        matches: trials.iter().filter(|t| t.measured == predicted).count(),
        trials,
        seed,
        field: field.spec(),
    })
}

fn distinct_params<F: Field>(field: &F, m: usize, rng: &mut dyn RngCore) -> Vec<P1Point<F::Elem>> {
    let mut out: Vec<F::Elem> = Vec::with_capacity(m);
    while out.len() < m {
        let x = field.random(rng);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out.into_iter().map(|x| [x, field.one()]).collect()
}

/// `(rank of d(coeffs ↦ affine values), rank of d(coeffs, σ ↦ projective points))`.
fn incidence_ranks<F: Field>(c: &CurveInScroll<F>, params: &[P1Point<F::Elem>]) -> (usize, usize) {
    let field = c.field().clone();
    let one = field.one();
    let a = c.scroll.a();
    let k = c.k as usize;
    let ncoef = c.coefficient_count();
    let npar = params.len();
    let forms = pushforward_forms(a, &c.t, &c.ys);
    let dforms: Vec<BinaryForm<F>> = forms.iter().map(BinaryForm::d_s0).collect();
    let mut affine = Matrix::zeros(field.clone(), 0, ncoef);
    let mut proj = Matrix::zeros(field.clone(), 0, ncoef + npar);
    for (j, s) in params.iter().enumerate() {
        let t0 = c.t[0].eval(s);
        let t1 = c.t[1].eval(s);
        let mk = monomials_at(k, s, &one);
        // One row per coordinate: derivatives with respect to t0, t1, then each y block.
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        let mut yoff = 2 * (k + 1);
        for (i, &ai) in a.iter().enumerate() {
            let yv = c.ys[i].eval(s);
            let my = monomials_at(c.ys[i].degree(), s, &one);
            for b in (0..=ai).rev() {
                let cb = ai - b;
                let mut row = vec![field.zero(); ncoef];
                if b > 0 {
                    let g = field.from_i64(b as i64) * pow(&t0, b - 1, &one) * pow(&t1, cb, &one) * yv.clone();
                    for l in 0..=k {
                        row[l] = g.clone() * mk[l].clone();
                    }
                }
                if cb > 0 {
                    let g = field.from_i64(cb as i64) * pow(&t0, b, &one) * pow(&t1, cb - 1, &one) * yv.clone();
                    for l in 0..=k {
                        row[k + 1 + l] = g.clone() * mk[l].clone();
                    }
                }
                let g = pow(&t0, b, &one) * pow(&t1, cb, &one);
                for (l, m) in my.iter().enumerate() {
                    row[yoff + l] = g.clone() * m.clone();
                }
                rows.push(row);
            }
            yoff += my.len();
        }
        let vals: Vec<F::Elem> = forms.iter().map(|f| f.eval(s)).collect();
        let dvals: Vec<F::Elem> = dforms.iter().map(|f| f.eval(s)).collect();
        let h = vals.iter().position(|v| !v.is_zero()).expect("image point is nonzero");
        for i in 0..rows.len() {
            if i == h {
                continue;
            }
            // d(V_i / V_h) scaled by V_h².
            let mut row: Vec<F::Elem> = (0..ncoef)
                .map(|col| rows[i][col].clone() * vals[h].clone() - vals[i].clone() * rows[h][col].clone())
                .collect();
            row.extend((0..npar).map(|jj| {
                if jj == j {
                    dvals[i].clone() * vals[h].clone() - vals[i].clone() * dvals[h].clone()
                } else {
                    field.zero()
                }
            }));
            proj.push_row(row);
        }
        for r in rows {
            affine.push_row(r);
        }
    }
    (affine.rank(), proj.rank())
}

/// A linear map between scrolls, `y'_r = Σ_l E_rl(t) x_l`, fiberwise over ℙ¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollMap<F: Field> {
    pub source: Vec<u32>,
    pub target: Vec<u32>,
    /// `target.len() × source.len()`, `None` for zero entries.
    pub entries: Vec<Vec<Option<BinaryForm<F>>>>,
}

impl<F: Field> ScrollMap<F> {
    /// Components of the pulled-back section, one per source variable.
    pub fn pullback(&self, s: &ScrollSection<F>) -> Vec<BinaryForm<F>> {
        let field = s.comps[0].field().clone();
        (0..self.source.len())
            .map(|l| {
                let deg = (self.source[l] as i64 + s.m).max(0) as usize;
                let mut acc = BinaryForm::zero(field.clone(), deg);
                for (r, comp) in s.comps.iter().enumerate() {
                    if let Some(e) = &self.entries[r][l] {
                        if !comp.is_zero() && !e.is_zero() {
                            acc = acc.add(&comp.mul(e));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn kills(&self, s: &ScrollSection<F>) -> bool {
        self.pullback(s).iter().all(BinaryForm::is_zero)
    }
}

/// The pieces of a one-step degeneration `F(a) ⇝ F(.., a_p - 1, .., a_r + 1, ..)`
/// inside the auxiliary scroll `F(.., a_p - 1, .., 1)` of one dimension more.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneration<F: Field> {
    pub a: Vec<u32>,
    pub donor: usize,
    pub recipient: usize,
    /// Index of the auxiliary scroll, `a` with `a_p - 1` and a trailing 1.
    pub aux: Vec<u32>,
    /// `a` with `a_p - 1` and `a_r + 1`.
    pub degenerate: Vec<u32>,
    /// `F(a) → aux`: `x_p ↦ (t0 x_p, t1^{a_p - 1} x_p)`.
    pub phi1: ScrollMap<F>,
    /// `F(degenerate) → aux`: `x_r ↦ (t0 x_r, t1^{a_r} x_r)`.
    pub phi2: ScrollMap<F>,
}

impl<F: Field> Degeneration<F> {
    /// Defaults: donor is the first entry `>= 1`, recipient the last entry.
    pub fn new(field: &F, a: Vec<u32>, donor: Option<usize>, recipient: Option<usize>) -> Result<Self, ScrollError> {
        let d = a.len();
        let donor = match donor {
            Some(p) => p,
            None => a.iter().position(|&x| x >= 1).ok_or(ScrollError::BadDegeneration)?,
        };
        let recipient = recipient.unwrap_or(d.saturating_sub(1));
        if d < 2 || donor >= d || recipient >= d || donor == recipient || a[donor] == 0 {
            return Err(ScrollError::BadDegeneration);
        }
        ScrollType::from_index(a.clone())?;
        let mut aux = a.clone();
        aux[donor] -= 1;
        aux.push(1);
        let mut degenerate = a.clone();
        degenerate[donor] -= 1;
        degenerate[recipient] += 1;

        let t0 = BinaryForm::s0(field.clone());
        let t1 = BinaryForm::s1(field.clone());
        let one = BinaryForm::one(field.clone());
        let identity_except = |special: usize| -> Vec<Vec<Option<BinaryForm<F>>>> {
            (0..=d)
                .map(|r| (0..d).map(|l| (r == l && l != special && r < d).then(|| one.clone())).collect())
                .collect()
        };
        let mut e1 = identity_except(donor);
        e1[donor][donor] = Some(t0.clone());
        e1[d][donor] = Some(t1.pow(a[donor] - 1));
        let mut e2 = identity_except(recipient);
        e2[recipient][recipient] = Some(t0.clone());
        e2[d][recipient] = Some(t1.pow(a[recipient]));
        Ok(Degeneration {
            phi1: ScrollMap { source: a.clone(), target: aux.clone(), entries: e1 },
            phi2: ScrollMap { source: degenerate.clone(), target: aux.clone(), entries: e2 },
            a,
            donor,
            recipient,
            aux,
            degenerate,
        })
    }

    /// `t0 y_{d+1} - λ t1^{a_p - 1} y_p - t1^{a_r} y_r`, a section of `|M'|`.
    pub fn member(&self, field: &F, lambda: &F::Elem) -> ScrollSection<F> {
        let d = self.a.len();
        let t1 = BinaryForm::s1(field.clone());
        let mut comps: Vec<BinaryForm<F>> = self.aux.iter().map(|&x| BinaryForm::zero(field.clone(), x as usize)).collect();
        comps[d] = BinaryForm::s0(field.clone());
        comps[self.donor] = t1.pow(self.a[self.donor] - 1).scale(&-lambda.clone());
        comps[self.recipient] = t1.pow(self.a[self.recipient]).neg();
        ScrollSection::new(self.aux.clone(), 0, comps).expect("degrees match the auxiliary scroll")
    }

    /// `t0 y_{d+1} - t1^{a_p - 1} y_p`, cutting out the image of `phi1`.
    pub fn phi1_section(&self, field: &F) -> ScrollSection<F> {
        let mut s = self.member(field, &field.one());
        s.comps[self.recipient] = BinaryForm::zero(field.clone(), self.a[self.recipient] as usize);
        s
    }
}

pub fn degeneration_member<F: Field>(
    field: &F,
    a: Vec<u32>,
    lambda: &F::Elem,
) -> Result<ScrollSection<F>, ScrollError> {
    Ok(Degeneration::new(field, a, None, None)?.member(field, lambda))
}

/// Does `y_p ↦ λ y_p` carry the `λ = 1` member onto the `λ` member?
pub fn degeneration_equivalence_check<F: Field>(
    field: &F,
    deg: &Degeneration<F>,
    lambda: &F::Elem,
) -> Result<bool, ScrollError> {
    if lambda.is_zero() {
        return Err(ScrollError::ZeroLambda);
    }
    let base = deg.member(field, &field.one());
    Ok(base.scale_variable(deg.donor, lambda) == deg.member(field, lambda))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationReport {
    pub a: Vec<u32>,
    pub donor: usize,
    pub recipient: usize,
    pub aux: Vec<u32>,
    pub degenerate: Vec<u32>,
    /// The `λ = 0` member vanishes identically on `phi2`'s image.
    pub lambda0_is_phi2_image: bool,
    /// `phi1` lands in `{t0 y_{d+1} = t1^{a_p-1} y_p}`.
    pub phi1_identity: bool,
    /// The `λ ≠ 0` members do not contain `phi2`'s image.
    pub nonzero_members_differ: bool,
    pub lambdas: Vec<String>,
    pub equivalences: Vec<bool>,
}

impl DegenerationReport {
    pub fn all_pass(&self) -> bool {
        self.lambda0_is_phi2_image && self.phi1_identity && self.nonzero_members_differ && self.equivalences.iter().all(|&x| x)
    }
}

pub fn degeneration_checks<F: Field>(
    field: &F,
    a: Vec<u32>,
    donor: Option<usize>,
    recipient: Option<usize>,
    lambdas: &[F::Elem],
) -> Result<DegenerationReport, ScrollError> {
    let deg = Degeneration::new(field, a, donor, recipient)?;
    let zero = deg.member(field, &field.zero());
    let equivalences = lambdas
        .iter()
        .map(|l| degeneration_equivalence_check(field, &deg, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DegenerationReport {
        lambda0_is_phi2_image: deg.phi2.kills(&zero),
        phi1_identity: deg.phi1.kills(&deg.phi1_section(field)),
        nonzero_members_differ: lambdas.iter().all(|l| !deg.phi2.kills(&deg.member(field, l))),
        lambdas: lambdas.iter().map(|l| field.encode(l)).collect(),
        equivalences,
        a: deg.a,
        donor: deg.donor,
        recipient: deg.recipient,
        aux: deg.aux,
        degenerate: deg.degenerate,
    })
}
