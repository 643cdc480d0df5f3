//! Derivative bounds, Taylor remainders, analytic radius estimates and the
//! growth-class check behind uniqueness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::evolution::TimeEvolution;
use crate::graph::{VertexId, WeightedGraph};

/// Largest `n` for which `n!` is computed as a product rather than via `ln_gamma`.
pub const EXACT_FACTORIAL_LIMIT: u32 = 170;

fn check_interval(a: f64, b: f64) -> Result<f64> {
    if !(b > a) || !(b - a).is_finite() {
        return Err(Error::EmptyInterval { a, b });
    }
    Ok(b - a)
}

/// `sup |f'| <= 2 M0 / (b - a) + (b - a) M2` on `[a, b]`.
pub fn first_derivative_bound(m0: f64, m2: f64, a: f64, b: f64) -> Result<f64> {
    let len = check_interval(a, b)?;
    Ok(2.0 * m0 / len + len * m2)
}

/// [`first_derivative_bound`] in exact arithmetic, with `len = b - a`.
pub fn first_derivative_bound_exact(m0: &BigRational, m2: &BigRational, len: &BigRational) -> Result<BigRational> {
    if *len <= BigRational::zero() {
        return Err(Error::InvalidParameter("interval length must be positive".into()));
    }
    let two = BigRational::from_integer(2.into());
    Ok(two * m0 / len + len * m2)
}

/// `K(i, n) = 2^i n^2 (n^2 - 1) ... (n^2 - (i-1)^2) / (1 * 3 * 5 ... (2i - 1))`.
pub fn ore_k(i: u32, n: u32) -> Result<BigRational> {
    if i == 0 || i > n {
        return Err(Error::InvalidOreIndex { i, n });
    }
    let n2 = BigInt::from(n) * n;
    let mut num = BigInt::one() << i as usize;
    let mut den = BigInt::one();
    for j in 0..i {
        num *= &n2 - BigInt::from(j) * j;
        den *= 2 * j + 1;
    }
    Ok(BigRational::new(num, den))
}

fn factorial_ratio(n: u32) -> BigRational {
    BigRational::from_integer((1..=n).fold(BigInt::one(), |acc, v| acc * v))
}

/// `sup |f^(i)| <= K(i,n) / (b-a)^i * (M0 + (b-a)^(n+1) / (n+1)! * M_top)`,
/// with `M_top = sup |f^(n+1)|`.
pub fn intermediate_derivative_bound(m0: f64, m_top: f64, a: f64, b: f64, i: u32, n: u32) -> Result<f64> {
    let k = ore_k(i, n)?;
    let len = check_interval(a, b)?;
    let k = ratio_to_f64(&k);
    let n1 = i32::try_from(n + 1).unwrap_or(i32::MAX);
    let fact = (1..=n + 1).map(f64::from).product::<f64>();
    Ok(k / len.powi(i as i32) * (m0 + len.powi(n1) / fact * m_top))
}

/// [`intermediate_derivative_bound`] in exact arithmetic.
pub fn intermediate_derivative_bound_exact(
    m0: &BigRational,
    m_top: &BigRational,
    len: &BigRational,
    i: u32,
    n: u32,
) -> Result<BigRational> {
    let k = ore_k(i, n)?;
    if *len <= BigRational::zero() {
        return Err(Error::InvalidParameter("interval length must be positive".into()));
    }
    let pow = |e: u32| (0..e).fold(BigRational::one(), |acc, _| acc * len);
    Ok(k / pow(i) * (m0 + pow(n + 1) / factorial_ratio(n + 1) * m_top))
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn check_class_exponent(alpha: f64, a1: f64) -> Result<()> {
    if !(a1 >= 0.0 && a1 <= 2.0 - alpha) {
        return Err(Error::ExponentOutOfRange { a1, alpha });
    }
    Ok(())
}

/// Time horizon of a class certificate. Serializes as a number or `"unbounded"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Horizon {
    Finite(f64),
    Unbounded,
}

impl Serialize for Horizon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Horizon::Finite(v) => s.serialize_f64(*v),
            Horizon::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassSample {
    pub t: f64,
    pub x: VertexId,
    pub distance: u32,
    /// `|u(t, x)|`, saturating at `f64::MAX`.
    pub abs_u: f64,
    /// `C d^(A1 d)`, saturating.
    pub bound: f64,
    pub ln_abs_u: f64,
    pub ln_bound: f64,
}

/// Sample-based check of `|u(t,x)| <= C d(x,p)^(A1 d(x,p))`. Only the listed
/// samples are examined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassCertificate {
    pub p: VertexId,
    pub alpha: f64,
    pub c: f64,
    pub a1: f64,
    pub horizon: Horizon,
    pub samples: Vec<ClassSample>,
    pub holds: bool,
    /// `min (ln bound - ln |u|)` over the samples; negative where the bound fails.
    pub worst_margin: f64,
    pub worst_sample: Option<(f64, VertexId)>,
}

pub fn certify_class_membership(
    u: &dyn TimeEvolution,
    g: &WeightedGraph,
    p: VertexId,
    alpha: f64,
    a1: f64,
    c: f64,
    horizon: Horizon,
    grid: &[(f64, VertexId)],
) -> Result<ClassCertificate> {
    check_class_exponent(alpha, a1)?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("class constant C must be positive, got {c}")));
    }
    g.measure(p)?;
    let ln_c = c.ln();
    let mut samples = Vec::with_capacity(grid.len());
    let mut worst_margin = f64::INFINITY;
    let mut worst_sample = None;
    for &(t, x) in grid {
        if x == p {
            return Err(Error::InvalidParameter(format!("class samples must exclude the base point {p}")));
        }
        if let Horizon::Finite(limit) = horizon {
            if !(t.abs() < limit) {
                return Err(Error::InvalidParameter(format!("sample time {t} outside (-{limit}, {limit})")));
            }
        }
        let d = g
            .distance(x, p)?
            .finite()
            .ok_or_else(|| Error::InvalidParameter(format!("vertex {x} is not connected to {p}")))?;
        let df = f64::from(d);
        let ln_bound = ln_c + a1 * df * df.ln();
        let ln_abs_u = u.ln_abs_value(t, x)?;
        let margin = ln_bound - ln_abs_u;
        if margin < worst_margin || worst_sample.is_none() {
            worst_margin = margin;
            worst_sample = Some((t, x));
        }
        samples.push(ClassSample {
            t,
            x,
            distance: d,
            abs_u: saturating_exp(ln_abs_u),
            bound: saturating_exp(ln_bound),
            ln_abs_u,
            ln_bound,
        });
    }
    Ok(ClassCertificate {
        p,
        alpha,
        c,
        a1,
        horizon,
        holds: samples.iter().all(|s| s.ln_abs_u <= s.ln_bound),
        samples,
        worst_margin,
        worst_sample,
    })
}

fn saturating_exp(x: f64) -> f64 {
    x.exp().min(f64::MAX)
}

/// Serializes as a number or `"unbounded"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    Finite(f64),
    Unbounded,
}

impl Serialize for Radius {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Radius::Finite(v) => s.serialize_f64(*v),
            Radius::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemainderBound {
    pub k: u32,
    pub ln_value: f64,
    /// `exp(ln_value)`; `inf` or `0` once outside the `f64` range.
    pub value: f64,
}

/// Parameters of a remainder trace attached to a [`RadiusReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceParams {
    pub c: f64,
    pub d: u32,
    pub dt: f64,
    pub k_max: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusReport {
    #[serde(rename = "D")]
    pub d_const: f64,
    pub alpha: f64,
    #[serde(rename = "A1")]
    pub a1: f64,
    pub eps: f64,
    pub radius: Radius,
    pub trace: Option<TraceParams>,
    pub remainder_trace: Vec<RemainderBound>,
    /// Smallest `k` from which the trace is strictly decreasing to `k_max`.
    pub decreasing_from: Option<u32>,
    /// Smallest `k` from which the trace is strictly increasing to `k_max`.
    pub increasing_from: Option<u32>,
}

/// `r >= (1/e) sqrt(2/D)` when `A1 = 2 - alpha`; unbounded when `A1 < 2 - alpha`.
pub fn analytic_radius_lower_bound(d_const: f64, alpha: f64, a1: f64) -> Result<RadiusReport> {
    if !(d_const > 0.0 && d_const.is_finite()) {
        return Err(Error::InvalidParameter(format!("D must be positive, got {d_const}")));
    }
    if !(0.0..=2.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("alpha must lie in [0, 2], got {alpha}")));
    }
    check_class_exponent(alpha, a1)?;
    let eps = 2.0 - alpha - a1;
    let radius = if eps > 0.0 {
        Radius::Unbounded
    } else {
        Radius::Finite((-1.0f64).exp() * (2.0 / d_const).sqrt())
    };
    Ok(RadiusReport {
        d_const,
        alpha,
        a1,
        eps,
        radius,
        trace: None,
        remainder_trace: Vec::new(),
        decreasing_from: None,
        increasing_from: None,
    })
}

impl RadiusReport {
    /// Attaches the even-order remainder bounds for `k = 1..=k_max`.
    pub fn with_trace(mut self, params: TraceParams) -> Result<Self> {
        let trace = (1..=params.k_max)
            .map(|k| taylor_remainder_bound(k, self.d_const, self.alpha, self.a1, params.c, params.d, params.dt))
            .collect::<Result<Vec<_>>>()?;
        let ln: Vec<f64> = trace.iter().map(|b| b.ln_value).collect();
        self.decreasing_from = monotone_tail(&ln, |a, b| b < a);
        self.increasing_from = monotone_tail(&ln, |a, b| b > a);
        self.remainder_trace = trace;
        self.trace = Some(params);
        Ok(self)
    }
}

/// First `k` (1-based) such that `step` holds between all consecutive entries from there on.
fn monotone_tail(values: &[f64], step: impl Fn(f64, f64) -> bool) -> Option<u32> {
    if values.len() < 2 || !step(values[values.len() - 2], values[values.len() - 1]) {
        return None;
    }
    let mut start = values.len() - 2;
    while start > 0 && step(values[start - 1], values[start]) {
        start -= 1;
    }
    Some(start as u32 + 1)
}

/// `ln n!`: a product for `n <= 170`, `ln_gamma(n + 1)` beyond (relative accuracy about `1e-15`).
pub fn ln_factorial(n: u32) -> f64 {
    if n <= EXACT_FACTORIAL_LIMIT {
        (1..=n).map(f64::from).product::<f64>().ln()
    } else {
        ln_gamma(f64::from(n) + 1.0)
    }
}

/// `x ln x` with `0 ln 0 = 0`.
fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `ln` of the bound `2^j D^j (j+d)^(alpha j) C (j+d)^(A1 (j+d))` on `|Delta^j u|`.
fn ln_power_bound(j: u32, d_const: f64, alpha: f64, a1: f64, c: f64, d: u32) -> f64 {
    let jf = f64::from(j);
    let jd = f64::from(j + d);
    let ln_jd = if jd > 0.0 { jd.ln() } else { 0.0 };
    jf * std::f64::consts::LN_2 + jf * d_const.ln() + alpha * jf * ln_jd + c.ln() + a1 * xlnx(jd)
}

fn check_remainder_params(d_const: f64, c: f64, dt: f64) -> Result<()> {
    if !(d_const > 0.0) {
        return Err(Error::InvalidParameter(format!("D must be positive, got {d_const}")));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("C must be positive, got {c}")));
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    Ok(())
}

/// Even-order Taylor remainder bound
/// `2^k D^k (k+d)^(alpha k) C (k+d)^(A1 (k+d)) / (2k)! * dt^(2k)`, in log space.
pub fn taylor_remainder_bound(k: u32, d_const: f64, alpha: f64, a1: f64, c: f64, d: u32, dt: f64) -> Result<RemainderBound> {
    if k == 0 {
        return Err(Error::InvalidParameter("remainder order k must be at least 1".into()));
    }
    check_remainder_params(d_const, c, dt)?;
    let ln_value = ln_power_bound(k, d_const, alpha, a1, c, d) - ln_factorial(2 * k) + 2.0 * f64::from(k) * dt.ln();
    Ok(RemainderBound { k, ln_value, value: ln_value.exp() })
}

/// Odd-order remainder bound: `|d_t^(2k-1) u| <= (2/T) B_(k-1) + T B_k` on a
/// window of length `T`, times `dt^(2k-1) / (2k-1)!`.
pub fn taylor_remainder_bound_odd(
    k: u32,
    d_const: f64,
    alpha: f64,
    a1: f64,
    c: f64,
    d: u32,
    dt: f64,
    window: f64,
) -> Result<RemainderBound> {
    if k == 0 {
        return Err(Error::InvalidParameter("remainder order k must be at least 1".into()));
    }
    check_remainder_params(d_const, c, dt)?;
    if !(window > 0.0) {
        return Err(Error::InvalidParameter(format!("window length must be positive, got {window}")));
    }
    let lo = (2.0 / window).ln() + ln_power_bound(k - 1, d_const, alpha, a1, c, d);
    let hi = window.ln() + ln_power_bound(k, d_const, alpha, a1, c, d);
    let ln_sum = lo.max(hi) + (-(lo - hi).abs()).exp().ln_1p();
    let ln_value = ln_sum - ln_factorial(2 * k - 1) + f64::from(2 * k - 1) * dt.ln();
    Ok(RemainderBound { k, ln_value, value: ln_value.exp() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaylorReconstruction {
    pub value: f64,
    /// Magnitude of the last term in the partial sum.
    pub truncation_tail: f64,
}

/// `sum_{k <= n} d_t^k u(t0, x0) / k! * (t - t0)^k`.
pub fn taylor_reconstruct(sol: &dyn TimeEvolution, x0: VertexId, t0: f64, n: u32, t: f64) -> Result<TaylorReconstruction> {
    let h = t - t0;
    let mut coeff = 1.0;
    let mut value = 0.0;
    let mut last = 0.0;
    for k in 0..=n {
        if k > 0 {
            coeff *= h / f64::from(k);
        }
        last = sol.time_derivative(t0, x0, k)? * coeff;
        value += last;
    }
    Ok(TaylorReconstruction { value, truncation_tail: last.abs() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniquenessStatus {
    HypothesesMet,
    HypothesesUnmet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub status: UniquenessStatus,
    /// `max |u - v|` over the grid.
    pub gap: f64,
    pub gap_at: Option<(f64, VertexId)>,
    /// `max` over grid vertices of `|u(0,x) - v(0,x)|` and `|u_t(0,x) - v_t(0,x)|`.
    pub data_gap: f64,
    pub data_agree: bool,
    pub class_u: bool,
    pub class_v: bool,
    pub reasons: Vec<String>,
}

/// Compares two solutions on `grid`. The status is `HypothesesMet` only when
/// both class certificates hold and the data agree to `data_tol`.
pub fn uniqueness_gap(
    u: &dyn TimeEvolution,
    v: &dyn TimeEvolution,
    cert_u: &ClassCertificate,
    cert_v: &ClassCertificate,
    grid: &[(f64, VertexId)],
    data_tol: f64,
) -> Result<UniquenessReport> {
    let mut xs: Vec<VertexId> = grid.iter().map(|&(_, x)| x).collect();
    xs.sort_unstable();
    xs.dedup();
    let mut data_gap = 0.0_f64;
    for &x in &xs {
        for order in 0..2 {
            let du = u.time_derivative(0.0, x, order)?;
            let dv = v.time_derivative(0.0, x, order)?;
            data_gap = data_gap.max((du - dv).abs());
        }
    }
    let mut gap = 0.0_f64;
    let mut gap_at = None;
    for &(t, x) in grid {
        let diff = (u.value(t, x)? - v.value(t, x)?).abs();
        if diff > gap || gap_at.is_none() {
            gap = diff;
            gap_at = Some((t, x));
        }
    }
    let data_agree = data_gap <= data_tol;
    let mut reasons = Vec::new();
    if !cert_u.holds {
        reasons.push(format!("{} fails the growth class check", u.label()));
    }
    if !cert_v.holds {
        reasons.push(format!("{} fails the growth class check", v.label()));
    }
    if !data_agree {
        reasons.push(format!("initial data differ by {data_gap:e}"));
    }
    let status = if reasons.is_empty() { UniquenessStatus::HypothesesMet } else { UniquenessStatus::HypothesesUnmet };
    Ok(UniquenessReport {
        status,
        gap,
        gap_at,
        data_gap,
        data_agree,
        class_u: cert_u.holds,
        class_v: cert_v.holds,
        reasons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::ZeroSolution;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn first_derivative_examples() {
        assert_eq!(first_derivative_bound(1.0, 0.0, 0.0, 1.0).unwrap(), 2.0);
        assert_eq!(first_derivative_bound(0.0, 0.0, -3.0, 1.0).unwrap(), 0.0);
        assert!(first_derivative_bound(1.0, 1.0, 1.0, 1.0).is_err());
        // sin(10x) on [0, 1]: sampled max |f'| = 10 against the bound 102.
        let sampled = (0..=1000).map(|j| (10.0 * (10.0 * f64::from(j) / 1000.0).cos()).abs()).fold(0.0, f64::max);
        let bound = first_derivative_bound(1.0, 100.0, 0.0, 1.0).unwrap();
        assert_eq!(bound, 102.0);
        assert!(sampled <= bound && (sampled - 10.0).abs() < 1e-12);
    }

    #[test]
    fn ore_constants() {
        for n in 1..6 {
            assert_eq!(ore_k(1, n).unwrap(), r(2 * i64::from(n * n), 1));
        }
        assert_eq!(ore_k(2, 2).unwrap(), r(16, 1));
        assert_eq!(ore_k(1, 3).unwrap(), r(18, 1));
        assert_eq!(ore_k(3, 3).unwrap(), r(8 * 9 * 8 * 5, 15));
        assert!(matches!(ore_k(0, 2), Err(Error::InvalidOreIndex { i: 0, n: 2 })));
        assert!(ore_k(3, 2).is_err());
    }

    #[test]
    fn intermediate_bound_examples() {
        assert_eq!(intermediate_derivative_bound(0.0, 0.0, 0.0, 2.0, 2, 3).unwrap(), 0.0);
        // x^3 on [0, 1], i = 1, n = 2: M0 = 1, M3 = 6.
        let b = intermediate_derivative_bound(1.0, 6.0, 0.0, 1.0, 1, 2).unwrap();
        assert!(b >= 3.0);
        assert!((b - 8.0 * (1.0 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn first_order_identity_is_exact() {
        for (m0, m2, len) in [(r(1, 1), r(0, 1), r(1, 1)), (r(7, 3), r(5, 11), r(2, 9)), (r(0, 1), r(13, 2), r(17, 4))] {
            let first = first_derivative_bound_exact(&m0, &m2, &len).unwrap();
            let ore = intermediate_derivative_bound_exact(&m0, &m2, &len, 1, 1).unwrap();
            assert_eq!(first, ore);
        }
    }

    #[test]
    fn radius_examples() {
        let rep = analytic_radius_lower_bound(2.0, 0.0, 2.0).unwrap();
        assert_eq!(rep.eps, 0.0);
        match rep.radius {
            Radius::Finite(r) => assert!((r - (-1.0f64).exp()).abs() < 1e-15),
            Radius::Unbounded => panic!("expected finite radius"),
        }
        assert_eq!(analytic_radius_lower_bound(2.0, 0.0, 0.0).unwrap().radius, Radius::Unbounded);
        match analytic_radius_lower_bound(8.0, 0.5, 1.5).unwrap().radius {
            Radius::Finite(r) => assert!((r - 0.5 * (-1.0f64).exp()).abs() < 1e-15),
            Radius::Unbounded => panic!("expected finite radius"),
        }
        assert!(matches!(analytic_radius_lower_bound(2.0, 0.0, 2.5), Err(Error::ExponentOutOfRange { .. })));
        assert!(analytic_radius_lower_bound(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn remainder_matches_direct_evaluation_for_small_k() {
        let (d_const, alpha, a1, c, d, dt) = (3.0f64, 0.5, 1.0, 2.0, 2u32, 0.4f64);
        for k in 1..8u32 {
            let kf = f64::from(k);
            let kd = f64::from(k + d);
            let fact: f64 = (1..=2 * k).map(f64::from).product();
            let direct = 2f64.powf(kf) * d_const.powf(kf) * kd.powf(alpha * kf) * c * kd.powf(a1 * kd) / fact * dt.powf(2.0 * kf);
            let b = taylor_remainder_bound(k, d_const, alpha, a1, c, d, dt).unwrap();
            assert!((b.value - direct).abs() <= 1e-12 * direct, "k = {k}");
        }
        assert!(taylor_remainder_bound(0, 2.0, 0.0, 2.0, 1.0, 0, 0.3).is_err());
        assert!(taylor_remainder_bound(3, 2.0, 0.0, 2.0, 1.0, 0, 0.0).is_err());
    }

    #[test]
    fn ln_factorial_switches_smoothly() {
        let exact = ln_factorial(170);
        let gamma = ln_gamma(171.0);
        assert!((exact - gamma).abs() < 1e-12 * exact);
        assert!((ln_factorial(171) - exact - 171f64.ln()).abs() < 1e-10);
        assert_eq!(ln_factorial(0), 0.0);
    }

    #[test]
    fn trace_monotonicity() {
        let base = analytic_radius_lower_bound(2.0, 0.0, 2.0).unwrap();
        let below = base.clone().with_trace(TraceParams { c: 1.0, d: 0, dt: 0.3, k_max: 200 }).unwrap();
        assert_eq!(below.decreasing_from, Some(1));
        assert_eq!(below.increasing_from, None);
        let above = base.with_trace(TraceParams { c: 1.0, d: 0, dt: 0.8, k_max: 200 }).unwrap();
        assert!(above.increasing_from.is_some());
        assert!(above.remainder_trace.last().unwrap().ln_value > 100.0);
        // eps > 0: every dt eventually decreases.
        let eps = analytic_radius_lower_bound(2.0, 0.0, 1.0).unwrap();
        let far = eps.with_trace(TraceParams { c: 1.0, d: 3, dt: 5.0, k_max: 200 }).unwrap();
        assert!(far.decreasing_from.is_some());
    }

    #[test]
    fn odd_remainder_uses_both_neighbours() {
        let even_lo = taylor_remainder_bound(2, 2.0, 0.0, 2.0, 1.0, 0, 0.3).unwrap();
        let odd = taylor_remainder_bound_odd(3, 2.0, 0.0, 2.0, 1.0, 0, 0.3, 1.0).unwrap();
        // B_2 = 4^2 * 2^4 = 256, B_3 = 4^3 * 3^6 = 46656.
        let direct = (2.0 * 256.0 + 46656.0) / 120.0 * 0.3f64.powi(5);
        assert!((odd.value - direct).abs() < 1e-12 * direct);
        assert!(even_lo.value > 0.0);
        assert!(taylor_remainder_bound_odd(1, 2.0, 0.0, 2.0, 1.0, 0, 0.3, 0.0).is_err());
    }

    #[test]
    fn zero_solution_reconstructs_and_certifies() {
        let rec = taylor_reconstruct(&ZeroSolution, 0, 0.0, 10, 1.0).unwrap();
        assert_eq!(rec.value, 0.0);
        let g = WeightedGraph::line_window(5).unwrap();
        let grid: Vec<(f64, VertexId)> = [1, 2, 3, -4].iter().map(|&x| (0.5, x)).collect();
        let cert = certify_class_membership(&ZeroSolution, &g, 0, 0.0, 2.0, 1.0, Horizon::Unbounded, &grid).unwrap();
        assert!(cert.holds);
        assert!(certify_class_membership(&ZeroSolution, &g, 0, 0.0, 2.5, 1.0, Horizon::Unbounded, &grid).is_err());
        assert!(certify_class_membership(&ZeroSolution, &g, 0, 0.0, 1.0, 1.0, Horizon::Unbounded, &[(0.0, 0)]).is_err());
        let rep = uniqueness_gap(&ZeroSolution, &ZeroSolution, &cert, &cert, &grid, 1e-12).unwrap();
        assert_eq!(rep.status, UniquenessStatus::HypothesesMet);
        assert_eq!(rep.gap, 0.0);
    }
}
