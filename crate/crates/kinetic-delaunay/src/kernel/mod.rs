//! Exact geometric and kinetic predicates.
//!
//! Every predicate in this module is decided in arbitrary-precision rational
//! arithmetic constructed losslessly from the `f64` input coordinates, so
//! signs and event times are error-free. Fast floating-point filters (see
//! [`filter`]) are used as a first pass where they are provably
//! semantics-preserving; whenever a filter cannot certify a sign, the rational
//! path decides.
//!
//! Sign conventions, fixed artifact-wide:
//! * [`orient2d`] is `Positive` for counterclockwise triples.
//! * [`incircle_at`] is `Positive` when the query point lies strictly outside
//!   the orthoball of the (ccw) triangle at the given time, i.e. it does not
//!   encroach.
//! * The raw determinant behind [`incircle_at`] is linear in the time
//!   parameter; [`flip_time`] solves it exactly.

pub mod filter;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Errors from kernel predicates with preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    /// `incircle_at` requires its first three points in ccw order.
    #[error("triangle is not counterclockwise")]
    NotCcw,
    /// `circumball` requires three non-collinear points.
    #[error("points are collinear")]
    Collinear,
}

/// The sign of an exactly evaluated quantity. Never rounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(r: &BigRational) -> Sign {
        match r.numer().sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }

    /// Sign of an `f64` known to be exact (no rounding happened).
    pub fn of_f64(v: f64) -> Sign {
        match v.partial_cmp(&0.0).expect("finite value") {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

/// A point of the plane. Coordinates are finite IEEE-754 doubles; all exact
/// arithmetic downstream is constructed losslessly from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    /// Builds a point, canonicalizing `-0.0` to `0.0`.
    ///
    /// Panics on non-finite coordinates; IO layers validate before
    /// constructing.
    pub fn new(x: f64, y: f64) -> Point {
        assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Point {
            x: x + 0.0,
            y: y + 0.0,
        }
    }

    pub fn sq_dist_f64(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

impl Eq for Point {}

// Coordinates are finite with -0.0 canonicalized, so IEEE total order agrees
// with the numeric order and Ord is safe to derive by hand.
impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.y.total_cmp(&other.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Weight class of a vertex. Input vertices have squared weight `t` at time
/// `t`; Steiner and Box vertices always have weight zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightClass {
    Input,
    Steiner,
    Box,
}

impl WeightClass {
    /// Whether the squared weight grows with the time parameter.
    pub fn grows(self) -> bool {
        matches!(self, WeightClass::Input)
    }
}

/// An arbitrary-precision rational, exact under `+`, `-`, `*`, `/` and
/// comparison. Constructed losslessly from input coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> ExactScalar {
        ExactScalar(BigRational::zero())
    }

    pub fn from_int(v: i64) -> ExactScalar {
        ExactScalar(BigRational::from_integer(BigInt::from(v)))
    }

    /// Exact rational `num/den`.
    pub fn ratio(num: i64, den: i64) -> ExactScalar {
        assert!(den != 0, "zero denominator");
        ExactScalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Lossless conversion from a finite double.
    pub fn from_f64(v: f64) -> ExactScalar {
        ExactScalar(BigRational::from_f64(v).expect("finite value"))
    }

    /// Parses a plain decimal like `-12.75` exactly (denominator a power of
    /// ten), or a `numerator/denominator` pair.
    pub fn parse(s: &str) -> Option<ExactScalar> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            return Some(ExactScalar(BigRational::new(n, d)));
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if frac_part.is_empty() {
            let n: BigInt = int_part.parse().ok()?;
            return Some(ExactScalar(BigRational::from_integer(n)));
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.trim_start().starts_with('-');
        let digits = format!("{}{}", int_part, frac_part);
        let n: BigInt = digits.parse().ok()?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut r = BigRational::new(n, den);
        // "-0.5" keeps its sign through the digit concatenation above except
        // when the integer part is "-0"; fix that case up.
        if negative && !r.is_negative() && !r.is_zero() {
            r = -r;
        }
        if negative && int_part.trim_start() == "-0" {
            r = -r.abs();
        }
        Some(ExactScalar(r))
    }

    pub fn sign(&self) -> Sign {
        Sign::of_rational(&self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> ExactScalar {
        ExactScalar(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn from_rational(r: BigRational) -> ExactScalar {
        ExactScalar(r)
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    /// Midpoint of two scalars, exact.
    pub fn midpoint(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        ExactScalar((&a.0 + &b.0) / BigRational::from_integer(BigInt::from(2)))
    }
}

impl fmt::Display for ExactScalar {
    /// Always `numerator/denominator`, reduced, denominator positive.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar((self.0).$method(rhs.0))
            }
        }
        impl std::ops::$trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
        impl std::ops::$trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar((self.0).$method(&rhs.0))
            }
        }
        impl std::ops::$trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl std::ops::Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero");
        ExactScalar(self.0 / rhs.0)
    }
}

impl std::ops::Div<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero");
        ExactScalar(&self.0 / &rhs.0)
    }
}

impl std::ops::Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl std::ops::Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

/// Outcome of solving a potential flip's determinant for its root in time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventTime {
    /// The determinant vanishes at this strictly positive time.
    At(ExactScalar),
    /// No future root: the coefficient structure admits no event after the
    /// start time.
    NoEvent,
    /// The determinant is identically zero in the time parameter.
    AlwaysDegenerate,
}

/// A ball with exact rational center and squared radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: (ExactScalar, ExactScalar),
    pub radius_sq: ExactScalar,
}

fn rat(v: f64) -> BigRational {
    BigRational::from_f64(v).expect("finite coordinate")
}

fn orient_det_exact(a: Point, b: Point, c: Point) -> BigRational {
    let acx = rat(a.x) - rat(c.x);
    let acy = rat(a.y) - rat(c.y);
    let bcx = rat(b.x) - rat(c.x);
    let bcy = rat(b.y) - rat(c.y);
    acx * bcy - acy * bcx
}

/// Orientation of the triple `(a, b, c)`: `Positive` iff counterclockwise,
/// `Zero` iff collinear. Exact; a floating-point filter handles the common
/// case.
pub fn orient2d(a: Point, b: Point, c: Point) -> Sign {
    match filter::orient2d_fast(a, b, c) {
        Some(sign) => sign,
        None => orient2d_exact(a, b, c),
    }
}

/// Orientation decided purely in rational arithmetic. Used by tests as the
/// reference for the filtered path.
pub fn orient2d_exact(a: Point, b: Point, c: Point) -> Sign {
    Sign::of_rational(&orient_det_exact(a, b, c))
}

/// Height of `p` on the paraboloid shifted by the time-dependent squared
/// weight: `|p|^2 - t` for Input points, `|p|^2` otherwise.
pub fn lifted_height(p: Point, kind: WeightClass, t: &ExactScalar) -> ExactScalar {
    debug_assert!(!t.is_negative(), "time must be nonnegative");
    let sq = rat(p.x) * rat(p.x) + rat(p.y) * rat(p.y);
    if kind.grows() {
        ExactScalar(sq - t.as_rational())
    } else {
        ExactScalar(sq)
    }
}

/// The pieces of the incircle determinant that the kinetic machinery works
/// with. For labeled points `(p_i, k_i)` the determinant at time `t` is
///
/// ```text
/// det(t) = sum_i cof[i] * h_i(t) = alpha * t + beta
/// ```
///
/// where `h_i(t)` is the lifted height, `cof[i]` is the (signed) cofactor of
/// the height column, `alpha = -sum over growing i of cof[i]` and
/// `beta = sum_i cof[i] * |p_i|^2`. With `(p1, p2, p3)` counterclockwise,
/// `det(t) > 0` means `p4` lies strictly outside the orthoball of the first
/// three.
pub struct IncircleParts {
    pub cof: [BigRational; 4],
    pub alpha: BigRational,
    pub beta: BigRational,
}

pub fn incircle_parts(pts: &[Point; 4], kinds: &[WeightClass; 4]) -> IncircleParts {
    let [a, b, c, d] = *pts;
    // Signed cofactors of the lifted-height column; see module docs for the
    // sign convention (positive determinant = fourth point outside).
    let cof = [
        -orient_det_exact(b, c, d),
        orient_det_exact(a, c, d),
        -orient_det_exact(a, b, d),
        orient_det_exact(a, b, c),
    ];
    let mut alpha = BigRational::zero();
    let mut beta = BigRational::zero();
    for i in 0..4 {
        let p = pts[i];
        let sq = rat(p.x) * rat(p.x) + rat(p.y) * rat(p.y);
        beta += &cof[i] * sq;
        if kinds[i].grows() {
            alpha -= &cof[i];
        }
    }
    IncircleParts { cof, alpha, beta }
}

/// Raw incircle determinant at time `t` (see [`IncircleParts`]). The sign is
/// meaningful relative to the orientation of the first three points; no ccw
/// check is performed here.
pub fn incircle_det(
    pts: &[Point; 4],
    kinds: &[WeightClass; 4],
    t: &ExactScalar,
) -> ExactScalar {
    let parts = incircle_parts(pts, kinds);
    ExactScalar(parts.alpha * t.as_rational() + parts.beta)
}

/// Linear coefficients `(alpha, beta)` of the incircle determinant in the
/// time parameter.
pub fn incircle_linear(
    pts: &[Point; 4],
    kinds: &[WeightClass; 4],
) -> (ExactScalar, ExactScalar) {
    let parts = incircle_parts(pts, kinds);
    (ExactScalar(parts.alpha), ExactScalar(parts.beta))
}

/// Power in-circle test at time `t` against the orthoball of the ccw triangle
/// `(a, b, c)`: `Positive` iff `d` lies strictly outside (does not encroach),
/// `Zero` iff orthogonal or degenerate. Exact.
pub fn incircle_at(
    a: (Point, WeightClass),
    b: (Point, WeightClass),
    c: (Point, WeightClass),
    d: (Point, WeightClass),
    t: &ExactScalar,
) -> Result<Sign, KernelError> {
    if orient2d(a.0, b.0, c.0) != Sign::Positive {
        return Err(KernelError::NotCcw);
    }
    Ok(incircle_det(&[a.0, b.0, c.0, d.0], &[a.1, b.1, c.1, d.1], t).sign())
}

/// Solves the incircle determinant `alpha * t + beta = 0` exactly.
///
/// Returns `At(-beta/alpha)` when the root is strictly positive; roots at or
/// before the start time resolve to `NoEvent` (degeneracies at `t = 0` are the
/// business of the symbolic tiebreak, not of flips). A determinant identically
/// zero in `t` is `AlwaysDegenerate`.
pub fn flip_time(labeled: &[(Point, WeightClass); 4]) -> EventTime {
    let pts = [labeled[0].0, labeled[1].0, labeled[2].0, labeled[3].0];
    let kinds = [labeled[0].1, labeled[1].1, labeled[2].1, labeled[3].1];
    let parts = incircle_parts(&pts, &kinds);
    if parts.alpha.is_zero() {
        if parts.beta.is_zero() {
            return EventTime::AlwaysDegenerate;
        }
        return EventTime::NoEvent;
    }
    let root = -&parts.beta / &parts.alpha;
    if root.is_positive() {
        EventTime::At(ExactScalar(root))
    } else {
        EventTime::NoEvent
    }
}

/// Circumball of three non-collinear points: exact center equidistant from
/// all three and the squared circumradius.
pub fn circumball(a: Point, b: Point, c: Point) -> Result<Ball, KernelError> {
    let det = orient_det_exact(a, b, c);
    if det.is_zero() {
        return Err(KernelError::Collinear);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let d = two * det;
    let (ax, ay) = (rat(a.x), rat(a.y));
    let (bx, by) = (rat(b.x), rat(b.y));
    let (cx, cy) = (rat(c.x), rat(c.y));
    let asq = &ax * &ax + &ay * &ay;
    let bsq = &bx * &bx + &by * &by;
    let csq = &cx * &cx + &cy * &cy;
    let ux = (&asq * (&by - &cy) + &bsq * (&cy - &ay) + &csq * (&ay - &by)) / &d;
    let uy = (&asq * (&cx - &bx) + &bsq * (&ax - &cx) + &csq * (&bx - &ax)) / &d;
    let dx = &ax - &ux;
    let dy = &ay - &uy;
    let radius_sq = &dx * &dx + &dy * &dy;
    Ok(Ball {
        center: (ExactScalar(ux), ExactScalar(uy)),
        radius_sq: ExactScalar(radius_sq),
    })
}

/// Exact squared Euclidean distance.
pub fn sq_dist_exact(a: Point, b: Point) -> ExactScalar {
    let dx = rat(a.x) - rat(b.x);
    let dy = rat(a.y) - rat(b.y);
    ExactScalar(&dx * &dx + &dy * &dy)
}

/// Tie-broken in-circle sign "just after" time `t`.
///
/// Ties are resolved by a fixed symbolic perturbation so every predicate is
/// total and deterministic:
/// 1. the exact determinant at `t`;
/// 2. if zero, the sign of the time derivative (the configuration the growing
///    weights are moving toward);
/// 3. if still zero, a simulation-of-simplicity term: the vertex with id `i`
///    conceptually receives an extra squared weight `eps^(i+1)`, so the first
///    nonzero height cofactor in increasing id order decides.
///
/// Engine and brute-force oracle both call this function, which is what makes
/// their outputs comparable on degenerate inputs.
pub fn incircle_future_sign(
    pts: &[Point; 4],
    kinds: &[WeightClass; 4],
    ids: &[u64; 4],
    t: &ExactScalar,
) -> Sign {
    let parts = incircle_parts(pts, kinds);
    let value = &parts.alpha * t.as_rational() + &parts.beta;
    let s = Sign::of_rational(&value);
    if s != Sign::Zero {
        return s;
    }
    perturbed_zero_sign(&parts, ids)
}

/// Same as [`incircle_future_sign`] at `t = 0`, with the unweighted
/// floating-point filter on the front. This is the hot path of Delaunay
/// construction and of the brute-force oracle.
pub fn incircle_future_sign_t0(
    pts: &[Point; 4],
    kinds: &[WeightClass; 4],
    ids: &[u64; 4],
) -> Sign {
    // At t = 0 every squared weight is zero, so the plain incircle filter
    // applies. It reports "inside", we report "outside": flip.
    if let Some(s) = filter::incircle_fast(pts) {
        return s.flip();
    }
    let parts = incircle_parts(pts, kinds);
    let s = Sign::of_rational(&parts.beta);
    if s != Sign::Zero {
        return s;
    }
    perturbed_zero_sign(&parts, ids)
}

fn perturbed_zero_sign(parts: &IncircleParts, ids: &[u64; 4]) -> Sign {
    let s = Sign::of_rational(&parts.alpha);
    if s != Sign::Zero {
        return s;
    }
    // Order the perturbation terms by increasing id: smaller ids carry larger
    // eps powers and dominate.
    let mut order = [0usize, 1, 2, 3];
    order.sort_by_key(|&i| ids[i]);
    for &i in &order {
        if !parts.cof[i].is_zero() {
            // Height i drops by eps^(id+1), so the determinant moves by
            // -eps^(id+1) * cof[i].
            return Sign::of_rational(&(-&parts.cof[i]));
        }
    }
    debug_assert!(false, "all four points collinear in a perturbed predicate");
    Sign::Zero
}

/// Interval-filtered variant of [`incircle_future_sign`] for a fixed rational
/// time: a conservative floating-point interval evaluation certifies most
/// signs, the exact path decides the rest. `t_iv` must enclose `t`.
pub fn incircle_future_sign_filtered(
    pts: &[Point; 4],
    kinds: &[WeightClass; 4],
    ids: &[u64; 4],
    t: &ExactScalar,
    t_iv: filter::Interval,
) -> Sign {
    if let Some(s) = filter::incircle_at_fast(pts, kinds, t_iv) {
        return s;
    }
    incircle_future_sign(pts, kinds, ids, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    const I: WeightClass = WeightClass::Input;
    const S: WeightClass = WeightClass::Steiner;

    #[test]
    fn orient2d_examples() {
        assert_eq!(orient2d(p(0., 0.), p(1., 0.), p(0., 1.)), Sign::Positive);
        assert_eq!(orient2d(p(0., 0.), p(1., 1.), p(2., 2.)), Sign::Zero);
        assert_eq!(orient2d(p(0., 0.), p(0., 1.), p(1., 0.)), Sign::Negative);
    }

    #[test]
    fn lifted_height_examples() {
        let t5 = ExactScalar::from_int(5);
        assert_eq!(lifted_height(p(1., 1.), S, &t5), ExactScalar::from_int(2));
        assert_eq!(lifted_height(p(1., 1.), I, &t5), ExactScalar::from_int(-3));
        assert_eq!(
            lifted_height(p(0., 0.), I, &ExactScalar::zero()),
            ExactScalar::zero()
        );
    }

    #[test]
    fn incircle_at_cocircular_square() {
        let t0 = ExactScalar::zero();
        let s = incircle_at(
            (p(0., 0.), S),
            (p(1., 0.), S),
            (p(1., 1.), S),
            (p(0., 1.), S),
            &t0,
        )
        .unwrap();
        assert_eq!(s, Sign::Zero);
    }

    #[test]
    fn incircle_at_weighted_quad() {
        // The circumball of {(0,0), (2,0), (1,1/2)} has center (1, -3/4) and
        // squared radius 25/16; (1,-1) sits at squared distance 1/16 and so
        // encroaches at t = 0. The event time is 1/2: after it the sign flips.
        let ball = circumball(p(0., 0.), p(2., 0.), p(1., 0.5)).unwrap();
        assert_eq!(ball.center.0, ExactScalar::from_int(1));
        assert_eq!(ball.center.1, ExactScalar::ratio(-3, 4));
        assert_eq!(ball.radius_sq, ExactScalar::ratio(25, 16));
        assert_eq!(
            sq_dist_exact(p(1., -1.), p(1., -0.75)),
            ExactScalar::ratio(1, 16)
        );

        let a = (p(0., 0.), I);
        let b = (p(2., 0.), I);
        let c = (p(1., 0.5), S);
        let d = (p(1., -1.), S);
        assert_eq!(
            incircle_at(a, b, c, d, &ExactScalar::zero()).unwrap(),
            Sign::Negative
        );
        assert_eq!(
            incircle_at(a, b, c, d, &ExactScalar::from_int(1)).unwrap(),
            Sign::Positive
        );
        assert_eq!(
            incircle_at(a, b, c, d, &ExactScalar::ratio(1, 2)).unwrap(),
            Sign::Zero
        );
    }

    #[test]
    fn incircle_at_rejects_cw() {
        let t0 = ExactScalar::zero();
        let err = incircle_at(
            (p(0., 0.), S),
            (p(0., 1.), S),
            (p(1., 0.), S),
            (p(0.5, 0.5), S),
            &t0,
        )
        .unwrap_err();
        assert_eq!(err, KernelError::NotCcw);
    }

    #[test]
    fn flip_time_weighted_quad() {
        let quad = [
            (p(0., 0.), I),
            (p(2., 0.), I),
            (p(1., 0.5), S),
            (p(1., -1.), S),
        ];
        assert_eq!(flip_time(&quad), EventTime::At(ExactScalar::ratio(1, 2)));
        // Independent confirmation: the raw determinant vanishes at 1/2.
        let det = incircle_det(
            &[p(0., 0.), p(2., 0.), p(1., 0.5), p(1., -1.)],
            &[I, I, S, S],
            &ExactScalar::ratio(1, 2),
        );
        assert!(det.is_zero());
    }

    #[test]
    fn flip_time_all_steiner_not_cocircular() {
        let quad = [
            (p(0., 0.), S),
            (p(3., 0.), S),
            (p(0., 3.), S),
            (p(1., 1.), S),
        ];
        assert_eq!(flip_time(&quad), EventTime::NoEvent);
    }

    #[test]
    fn flip_time_negative_root() {
        let quad = [
            (p(0., 0.), I),
            (p(1., 0.), I),
            (p(0.5, 1.), I),
            (p(0.5, -1.), S),
        ];
        // The linear solve puts the root at -3/2, which is not a future event.
        let (alpha, beta) = incircle_linear(
            &[p(0., 0.), p(1., 0.), p(0.5, 1.), p(0.5, -1.)],
            &[I, I, I, S],
        );
        assert_eq!(-beta / alpha, ExactScalar::ratio(-3, 2));
        assert_eq!(flip_time(&quad), EventTime::NoEvent);
    }

    #[test]
    fn flip_time_cocircular_steiner_square() {
        let quad = [
            (p(0., 0.), S),
            (p(1., 0.), S),
            (p(1., 1.), S),
            (p(0., 1.), S),
        ];
        assert_eq!(flip_time(&quad), EventTime::AlwaysDegenerate);
    }

    #[test]
    fn flip_time_scaling_covariance_doubling() {
        // Scaling all four points by 2 about the origin maps At(1/2) to At(2).
        let quad = [
            (p(0., 0.), I),
            (p(4., 0.), I),
            (p(2., 1.), S),
            (p(2., -2.), S),
        ];
        assert_eq!(flip_time(&quad), EventTime::At(ExactScalar::from_int(2)));
    }

    #[test]
    fn circumball_examples() {
        let b = circumball(p(0., 0.), p(1., 0.), p(0., 1.)).unwrap();
        assert_eq!(b.center.0, ExactScalar::ratio(1, 2));
        assert_eq!(b.center.1, ExactScalar::ratio(1, 2));
        assert_eq!(b.radius_sq, ExactScalar::ratio(1, 2));

        let b = circumball(p(0., 0.), p(2., 0.), p(1., 1.)).unwrap();
        assert_eq!(b.center.0, ExactScalar::from_int(1));
        assert_eq!(b.center.1, ExactScalar::zero());
        assert_eq!(b.radius_sq, ExactScalar::from_int(1));

        assert_eq!(
            circumball(p(0., 0.), p(1., 1.), p(2., 2.)).unwrap_err(),
            KernelError::Collinear
        );
    }

    #[test]
    fn exact_scalar_parse_and_display() {
        assert_eq!(ExactScalar::parse("3").unwrap(), ExactScalar::from_int(3));
        assert_eq!(
            ExactScalar::parse("2.5").unwrap(),
            ExactScalar::ratio(5, 2)
        );
        assert_eq!(
            ExactScalar::parse("-0.25").unwrap(),
            ExactScalar::ratio(-1, 4)
        );
        assert_eq!(
            ExactScalar::parse("7/4").unwrap(),
            ExactScalar::ratio(7, 4)
        );
        assert!(ExactScalar::parse("1/0").is_none());
        assert_eq!(ExactScalar::ratio(1, 2).to_string(), "1/2");
        assert_eq!(ExactScalar::from_int(3).to_string(), "3/1");
        assert_eq!(ExactScalar::ratio(-2, 4).to_string(), "-1/2");
    }

    #[test]
    fn future_sign_tiebreaks_are_total() {
        // Cocircular all-Steiner square: determinant and slope vanish, so the
        // id-based term decides, deterministically.
        let pts = [p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)];
        let kinds = [S, S, S, S];
        let t0 = ExactScalar::zero();
        let s1 = incircle_future_sign(&pts, &kinds, &[0, 1, 2, 3], &t0);
        assert_ne!(s1, Sign::Zero);
        assert_eq!(s1, incircle_future_sign(&pts, &kinds, &[0, 1, 2, 3], &t0));
        // Mixed kinds on the same square: the slope term decides first.
        let kinds_mixed = [I, S, I, S];
        let s2 = incircle_future_sign(&pts, &kinds_mixed, &[0, 1, 2, 3], &t0);
        assert_ne!(s2, Sign::Zero);
    }
}
