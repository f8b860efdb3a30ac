//! Floating-point fast paths for the exact predicates.
//!
//! Each filter either certifies a sign that the rational evaluation would
//! agree with, or returns `None` and the caller falls through to exact
//! arithmetic. Error bounds follow Shewchuk's semi-static "A" tests; inputs
//! small enough to risk underflow are routed straight to the exact path.

use super::{Point, Sign, WeightClass};

// 2^-53, the unit roundoff for f64.
const EPSILON: f64 = 1.110_223_024_625_156_5e-16;
const CCWERRBOUND_A: f64 = (3.0 + 16.0 * EPSILON) * EPSILON;
const ICCERRBOUND_A: f64 = (10.0 + 96.0 * EPSILON) * EPSILON;

// Below this magnitude sum the error bounds no longer dominate potential
// underflow in intermediate products, so the filters abstain.
const UNDERFLOW_GUARD: f64 = 1e-250;

fn checked_sign(det: f64, errbound: f64) -> Option<Sign> {
    if !det.is_finite() || !errbound.is_finite() {
        return None;
    }
    if det >= errbound {
        Some(Sign::Positive)
    } else if -det >= errbound {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// Filtered orientation test. `Some(sign)` is guaranteed to equal the exact
/// rational sign.
pub fn orient2d_fast(a: Point, b: Point, c: Point) -> Option<Sign> {
    let detleft = (a.x - c.x) * (b.y - c.y);
    let detright = (a.y - c.y) * (b.x - c.x);
    let det = detleft - detright;
    let detsum = detleft.abs() + detright.abs();
    if !(detsum >= UNDERFLOW_GUARD) {
        return None;
    }
    checked_sign(det, CCWERRBOUND_A * detsum)
}

/// Filtered unweighted in-circle test, Shewchuk's convention: positive when
/// the fourth point is strictly inside the circumcircle of the first three
/// (taken counterclockwise). `Some(sign)` matches the exact sign.
pub fn incircle_fast(pts: &[Point; 4]) -> Option<Sign> {
    let [a, b, c, d] = *pts;
    let adx = a.x - d.x;
    let ady = a.y - d.y;
    let bdx = b.x - d.x;
    let bdy = b.y - d.y;
    let cdx = c.x - d.x;
    let cdy = c.y - d.y;

    let bdxcdy = bdx * cdy;
    let cdxbdy = cdx * bdy;
    let alift = adx * adx + ady * ady;

    let cdxady = cdx * ady;
    let adxcdy = adx * cdy;
    let blift = bdx * bdx + bdy * bdy;

    let adxbdy = adx * bdy;
    let bdxady = bdx * ady;
    let clift = cdx * cdx + cdy * cdy;

    let det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    let permanent = (bdxcdy.abs() + cdxbdy.abs()) * alift
        + (cdxady.abs() + adxcdy.abs()) * blift
        + (adxbdy.abs() + bdxady.abs()) * clift;
    if !(permanent >= UNDERFLOW_GUARD) {
        return None;
    }
    checked_sign(det, ICCERRBOUND_A * permanent)
}

/// A closed f64 interval guaranteed to contain an exact real value.
///
/// Every operation widens the computed endpoints by one ulp, which dominates
/// the half-ulp rounding of the underlying f64 arithmetic.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn exact(v: f64) -> Interval {
        Interval { lo: v, hi: v }
    }

    pub fn new(lo: f64, hi: f64) -> Interval {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    fn widen(lo: f64, hi: f64) -> Interval {
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval::widen(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn sub(self, o: Interval) -> Interval {
        Interval::widen(self.lo - o.hi, self.hi - o.lo)
    }

    pub fn mul(self, o: Interval) -> Interval {
        let p1 = self.lo * o.lo;
        let p2 = self.lo * o.hi;
        let p3 = self.hi * o.lo;
        let p4 = self.hi * o.hi;
        let lo = p1.min(p2).min(p3).min(p4);
        let hi = p1.max(p2).max(p3).max(p4);
        if lo.is_nan() || hi.is_nan() {
            return Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        Interval::widen(lo, hi)
    }

    pub fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    /// `Some(sign)` when the interval certifies one.
    pub fn sign(self) -> Option<Sign> {
        if !self.lo.is_finite() || !self.hi.is_finite() {
            None
        } else if self.lo > 0.0 {
            Some(Sign::Positive)
        } else if self.hi < 0.0 {
            Some(Sign::Negative)
        } else if self.lo == 0.0 && self.hi == 0.0 {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    /// An interval verified (in exact arithmetic) to contain `t`.
    pub fn enclosing(t: &super::ExactScalar) -> Interval {
        let approx = t.to_f64();
        if !approx.is_finite() {
            return Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        let mut lo = approx.next_down();
        let mut hi = approx.next_up();
        for _ in 0..64 {
            let lo_ok = super::ExactScalar::from_f64(lo) <= *t;
            let hi_ok = *t <= super::ExactScalar::from_f64(hi);
            if lo_ok && hi_ok {
                return Interval { lo, hi };
            }
            if !lo_ok {
                lo = (lo * 2.0 - hi).next_down();
            }
            if !hi_ok {
                hi = (hi * 2.0 - lo).next_up();
            }
            if !lo.is_finite() || !hi.is_finite() {
                break;
            }
        }
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }
}

fn orient_iv(p: Point, q: Point, r: Point) -> Interval {
    let px = Interval::exact(p.x).sub(Interval::exact(r.x));
    let py = Interval::exact(p.y).sub(Interval::exact(r.y));
    let qx = Interval::exact(q.x).sub(Interval::exact(r.x));
    let qy = Interval::exact(q.y).sub(Interval::exact(r.y));
    px.mul(qy).sub(py.mul(qx))
}

/// Interval evaluation of the time-parameterized incircle determinant in the
/// artifact's sign convention (positive = fourth point outside). `t_iv` must
/// enclose the exact time.
pub fn incircle_at_fast(
    pts: &[Point; 4],
    kinds: &[WeightClass; 4],
    t_iv: Interval,
) -> Option<Sign> {
    let [a, b, c, d] = *pts;
    let cof = [
        orient_iv(b, c, d).neg(),
        orient_iv(a, c, d),
        orient_iv(a, b, d).neg(),
        orient_iv(a, b, c),
    ];
    let mut det = Interval::exact(0.0);
    for i in 0..4 {
        let x = Interval::exact(pts[i].x);
        let y = Interval::exact(pts[i].y);
        let mut h = x.mul(x).add(y.mul(y));
        if kinds[i].grows() {
            h = h.sub(t_iv);
        }
        det = det.add(cof[i].mul(h));
    }
    match det.sign() {
        // An exactly-zero interval cannot arise from nontrivial widened
        // arithmetic; treat only certified nonzero signs as conclusive.
        Some(Sign::Zero) | None => None,
        s => s,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{
        incircle_parts, orient2d_exact, ExactScalar, Point, Sign, WeightClass,
    };
    use super::*;
    use num_traits::Zero;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orient_filter_agrees_with_exact_near_degeneracy() {
        // Collinear base plus one-ulp vertical nudges.
        let base = p(12.3456789, 12.3456789);
        for k in 0..200 {
            let eps = (k as f64 - 100.0) * f64::EPSILON;
            let c = p(24.6913578, 24.6913578 + eps);
            let exact = orient2d_exact(p(0.0, 0.0), base, c);
            if let Some(fast) = orient2d_fast(p(0.0, 0.0), base, c) {
                assert_eq!(fast, exact);
            }
        }
    }

    #[test]
    fn incircle_filter_agrees_with_exact() {
        let pts = [p(0., 0.), p(2., 0.), p(1., 0.5), p(1., -1.)];
        let fast = incircle_fast(&pts).unwrap();
        // Exact determinant at t = 0 in the artifact convention is -3/2
        // (inside), which is +3/2 in Shewchuk's convention.
        assert_eq!(fast, Sign::Positive);
    }

    #[test]
    fn interval_encloses_rational_times() {
        for (n, d) in [(1i64, 3i64), (2, 7), (-5, 9), (1, 1), (0, 1), (10, 3)] {
            let t = ExactScalar::ratio(n, d);
            let iv = Interval::enclosing(&t);
            assert!(ExactScalar::from_f64(iv.lo) <= t);
            assert!(t <= ExactScalar::from_f64(iv.hi));
        }
    }

    #[test]
    fn interval_incircle_matches_exact_sign() {
        let pts = [p(0., 0.), p(2., 0.), p(1., 0.5), p(1., -1.)];
        let kinds = [
            WeightClass::Input,
            WeightClass::Input,
            WeightClass::Steiner,
            WeightClass::Steiner,
        ];
        for (n, d) in [(0i64, 1i64), (1, 4), (1, 2), (3, 4), (5, 1)] {
            let t = ExactScalar::ratio(n, d);
            let iv = Interval::enclosing(&t);
            let parts = incircle_parts(&pts, &kinds);
            let exact_val = &parts.alpha * t.as_rational() + &parts.beta;
            let exact = if exact_val.is_zero() {
                Sign::Zero
            } else {
                Sign::of_rational(&exact_val)
            };
            match incircle_at_fast(&pts, &kinds, iv) {
                Some(s) => assert_eq!(s, exact),
                None => assert_eq!(exact, Sign::Zero, "filter must only abstain near zero"),
            }
        }
    }
}
