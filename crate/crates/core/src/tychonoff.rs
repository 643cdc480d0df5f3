//! The non-uniqueness counterexample on the unit-weight line `Z`.
//!
//! With the flat bump `g(t) = exp(-t^-beta)` for `t > 0` (and `0` otherwise),
//!
//! ```text
//! u(t, x) = sum_{k=0}^{x} g^(m k)(t) / (2k)! * (x+k)(x+k-1)...(x-k+1),   x >= 0
//! u(t, x) = u(t, -x-1),                                                   x <= -1
//! ```
//!
//! solves `d_t^m u = Delta u` on `R x Z` with every time derivative vanishing
//! at `t = 0`. The spatial factor is the binomial `C(x+k, 2k)`, whose second
//! difference in `x` is `C(x+k-1, 2k-2)`; that identity is what makes the
//! series an exact solution.
//!
//! Derivatives of `g` are carried exactly: `g^(k)(t) = Q_k(1/t) g(t)` with
//! integer polynomials `Q_0 = 1`, `Q_{k+1}(s) = beta s^(beta+1) Q_k(s) - s^2 Q_k'(s)`.
//! A time `t` given as `f64` is an exact dyadic rational, so every Laurent
//! factor is evaluated exactly and only `exp(-t^-beta)` and the final
//! rounding are inexact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::TimeEvolution;
use crate::graph::VertexId;
use crate::hp::{ratio_from_f64, Approx, BigFloat};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Extra bits carried through intermediate steps.
const GUARD: u32 = 24;

/// Claimed relative accuracy of every evaluation is `2^(ACCURACY_LOSS_BITS - precision)`.
pub const ACCURACY_LOSS_BITS: u32 = 8;

/// Polynomial in `s = 1/t` with integer coefficients, `coeffs[j]` multiplying `s^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn one() -> Self {
        LaurentPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        LaurentPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// `beta s^(beta+1) Q(s) - s^2 Q'(s)`.
    fn differentiate(&self, beta: u32) -> Self {
        let shift = beta as usize + 1;
        let mut out = vec![BigInt::zero(); self.coeffs.len() + shift];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[j + shift] += c * beta;
            if j > 0 {
                // s^2 * j c s^(j-1) = j c s^(j+1)
                out[j + 1] -= c * j;
            }
        }
        LaurentPoly::from_coeffs(out)
    }

    pub fn eval(&self, s: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * s + BigRational::from_integer(c.clone()))
    }
}

/// Exact derivative table of the flat bump for an integer exponent `beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BumpTable {
    beta: u32,
    polys: Vec<LaurentPoly>,
}

pub fn build_bump_table(beta: u32, k_max: u32) -> Result<BumpTable> {
    if beta == 0 {
        return Err(Error::InvalidBeta);
    }
    let mut polys = Vec::with_capacity(k_max as usize + 1);
    polys.push(LaurentPoly::one());
    for k in 0..k_max as usize {
        let next = polys[k].differentiate(beta);
        polys.push(next);
    }
    Ok(BumpTable { beta, polys })
}

impl BumpTable {
    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// Highest derivative order available (`K_max`).
    pub fn depth(&self) -> u32 {
        (self.polys.len() - 1) as u32
    }

    pub fn q(&self, k: u32) -> Result<&LaurentPoly> {
        self.polys
            .get(k as usize)
            .ok_or(Error::TableTooShallow { requested: k, depth: self.depth() })
    }

    /// Checks `Q_{k+1} = beta s^(beta+1) Q_k - s^2 Q_k'` at every level.
    pub fn recurrence_holds(&self) -> bool {
        self.polys[0] == LaurentPoly::one()
            && self.polys.windows(2).all(|w| w[0].differentiate(self.beta) == w[1])
    }
}

/// Parameter-free view of `t > 0`: the exact value `s = 1/t` and the factor
/// `exp(-s^beta)` to working precision.
#[derive(Debug, Clone)]
struct BumpJet {
    /// `Q_k(1/t) = numerators[k] / denominator`.
    numerators: Vec<BigInt>,
    denominator: BigInt,
    factor: BigFloat,
}

impl BumpJet {
    fn new(table: &BumpTable, t: &BigRational, precision: u32) -> Result<Self> {
        debug_assert!(t.is_positive());
        let s = t.recip();
        let (num, den) = (s.numer().clone(), s.denom().clone());
        let max_degree = table.polys.iter().map(LaurentPoly::degree).max().unwrap_or(0);
        let mut num_pows = Vec::with_capacity(max_degree + 1);
        let mut den_pows = Vec::with_capacity(max_degree + 1);
        num_pows.push(BigInt::one());
        den_pows.push(BigInt::one());
        for j in 1..=max_degree {
            num_pows.push(&num_pows[j - 1] * &num);
            den_pows.push(&den_pows[j - 1] * &den);
        }
        // Q(num/den) = sum c_j num^j den^(D-j) / den^D
        let numerators = table
            .polys
            .iter()
            .map(|p| {
                p.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| c * &num_pows[j] * &den_pows[max_degree - j])
                    .sum()
            })
            .collect();
        let denominator = den_pows[max_degree].clone();

        let beta = table.beta as usize;
        let s_beta = BigRational::new(num_pows.get(beta).cloned().unwrap_or_else(|| num.pow(table.beta)), den.pow(table.beta));
        let int_bits = s_beta.to_integer().bits() as u32;
        let wp = precision + GUARD + int_bits;
        let factor = BigFloat::from_ratio(&-s_beta, wp).exp(precision + GUARD)?;
        Ok(BumpJet { numerators, denominator, factor })
    }

    /// Rounds `factor * numerator / denominator` to `precision` bits.
    fn scale(&self, numerator: &BigInt, precision: u32) -> Approx {
        if numerator.is_zero() {
            return Approx::zero();
        }
        let ratio = BigRational::new(numerator.clone(), self.denominator.clone());
        let value = self.factor.mul_ratio(&ratio, precision + GUARD).rounded(precision);
        Approx::with_relative_error(value, precision - ACCURACY_LOSS_BITS)
    }
}

fn exact_time(t: f64) -> Result<BigRational> {
    ratio_from_f64(t)
}

/// `g^(k)(t)` to `precision` bits; exactly zero for `t <= 0`.
pub fn bump_derivative(table: &BumpTable, k: u32, t: f64, precision: u32) -> Result<Approx> {
    table.q(k)?;
    let t = exact_time(t)?;
    if !t.is_positive() {
        return Ok(Approx::zero());
    }
    let single = BumpTable { beta: table.beta, polys: table.polys[..=k as usize].to_vec() };
    let jet = BumpJet::new(&single, &t, precision)?;
    Ok(jet.scale(&jet.numerators[k as usize], precision))
}

/// The product of the `2k` integers `x-k+1, ..., x+k`; `1` for `k = 0`.
pub fn spatial_product(x: i64, k: u32) -> BigInt {
    let k = i64::from(k);
    (x - k + 1..=x + k).fold(BigInt::one(), |acc, v| acc * v)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, v| acc * v)
}

/// `spatial_product(x, k) / (2k)!` for `x >= 0`, which is the binomial `C(x+k, 2k)`.
fn spatial_coefficient(x: i64, k: u32) -> BigInt {
    let (q, r) = spatial_product(x, k).div_rem(&factorial(2 * k));
    debug_assert!(r.is_zero());
    q
}

/// Reflects `x <= -1` onto `-x-1 >= 0`.
fn mirror(x: i64) -> i64 {
    if x < 0 {
        -x - 1
    } else {
        x
    }
}

/// The counterexample `u` for equation order `m` and bump exponent `beta`.
#[derive(Debug, Clone)]
pub struct CounterexampleSolution {
    beta: u32,
    m: u32,
    precision: u32,
    table: BumpTable,
}

impl CounterexampleSolution {
    pub fn new(beta: u32, m: u32, precision: u32, k_max: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidOrder(m));
        }
        if precision < 2 * ACCURACY_LOSS_BITS + 16 {
            return Err(Error::InvalidParameter(format!("precision must be at least 32 bits, got {precision}")));
        }
        Ok(CounterexampleSolution { beta, m, precision, table: build_bump_table(beta, k_max)? })
    }

    /// Table depth needed to evaluate `d_t^order u(., x)` and the residual at `x`.
    pub fn required_depth(m: u32, x: i64, order: u32) -> u32 {
        m * mirror(x) as u32 + order
    }

    /// Table depth needed for [`pde_residual`] at `x` (touches `x - 1` and `x + 1`).
    pub fn residual_depth(m: u32, x: i64) -> u32 {
        let span = mirror(x).max(mirror(x + 1)).max(mirror(x - 1));
        m * span as u32 + m
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn table(&self) -> &BumpTable {
        &self.table
    }

    /// Validates `eps > 0`, `beta > 2/eps` and `x >= 2` for [`growth_ratio`].
    pub fn check_growth_params(&self, x: i64, eps: f64) -> Result<()> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::NonPositiveEps(eps));
        }
        if !(f64::from(self.beta) * eps > 2.0) {
            return Err(Error::BetaTooSmall { beta: self.beta, eps });
        }
        if x < 2 {
            return Err(Error::GrowthPointTooSmall(x));
        }
        Ok(())
    }

    /// Evaluation state at a fixed time; reuse it across many `x`.
    pub fn at(&self, t: f64) -> Result<CounterexampleSlice<'_>> {
        let t_exact = exact_time(t)?;
        let jet = if t_exact.is_positive() {
            Some(BumpJet::new(&self.table, &t_exact, self.precision)?)
        } else {
            None
        };
        Ok(CounterexampleSlice { sol: self, t, jet })
    }
}

/// [`CounterexampleSolution`] frozen at one time `t`.
#[derive(Debug, Clone)]
pub struct CounterexampleSlice<'a> {
    sol: &'a CounterexampleSolution,
    t: f64,
    jet: Option<BumpJet>,
}

impl CounterexampleSlice<'_> {
    pub fn t(&self) -> f64 {
        self.t
    }

    fn check_depth(&self, needed: u32) -> Result<()> {
        let depth = self.sol.table.depth();
        if needed > depth {
            return Err(Error::TableTooShallow { requested: needed, depth });
        }
        Ok(())
    }

    /// Exact numerator of `d_t^order u(t, x) / exp(-t^-beta)` over the jet's denominator.
    fn numerator(&self, jet: &BumpJet, x: i64, order: u32) -> BigInt {
        let x = mirror(x);
        let m = self.sol.m;
        (0..=x as u32)
            .map(|k| spatial_coefficient(x, k) * &jet.numerators[(m * k + order) as usize])
            .sum()
    }

    /// `d_t^order u(t, x)`. Exactly zero for `t <= 0`.
    pub fn eval(&self, x: i64, order: u32) -> Result<Approx> {
        self.check_depth(CounterexampleSolution::required_depth(self.sol.m, x, order))?;
        match &self.jet {
            None => Ok(Approx::zero()),
            Some(jet) => Ok(jet.scale(&self.numerator(jet, x, order), self.sol.precision)),
        }
    }

    /// `d_t^m u(t,x) - [u(t,x+1) + u(t,x-1) - 2u(t,x)]`, combined from the four
    /// rounded values at working precision. The error bound collects theirs.
    pub fn pde_residual(&self, x: i64) -> Result<Approx> {
        self.check_depth(CounterexampleSolution::residual_depth(self.sol.m, x))?;
        let prec = self.sol.precision + GUARD;
        let lhs = self.eval(x, self.sol.m)?;
        let right = self.eval(x + 1, 0)?;
        let left = self.eval(x - 1, 0)?;
        let centre = self.eval(x, 0)?;
        let lap = right.value.add(&left.value, prec).sub(&centre.value.mul_pow2(1), prec);
        let value = lhs.value.sub(&lap, prec);
        // 2^a + 2^a + 2^a + 2 * 2^a < 2^(a+3), plus the combination rounding.
        let err = [lhs.err_log2, right.err_log2, left.err_log2, centre.err_log2.map(|e| e + 1)]
            .into_iter()
            .flatten()
            .max()
            .map(|e| e + 3);
        Ok(Approx { value, err_log2: err })
    }

    /// `|u(t, x)| exp(-(2 + eps) x ln x)`, see [`growth_ratio`].
    pub fn growth_ratio(&self, x: i64, eps: f64) -> Result<Approx> {
        self.sol.check_growth_params(x, eps)?;
        let u = self.eval(x, 0)?;
        if u.value.is_zero() {
            return Ok(u);
        }
        let precision = self.sol.precision;
        let prec = precision + GUARD;
        let ln_x = BigFloat::from_int(x).ln(prec + 16)?;
        let exponent = BigFloat::from_f64(2.0 + eps)?.mul(&BigFloat::from_int(x), prec + 16).mul(&ln_x, prec + 16);
        let weight = exponent.neg().exp(prec)?;
        let value = u.value.abs().mul(&weight, prec).rounded(precision);
        Ok(Approx::with_relative_error(value, precision - ACCURACY_LOSS_BITS - 1))
    }

    /// The residual's Laurent numerator in exact arithmetic: zero iff the
    /// series satisfies the equation identically at `(t, x)`.
    pub fn exact_residual_numerator(&self, x: i64) -> Result<BigInt> {
        self.check_depth(CounterexampleSolution::residual_depth(self.sol.m, x))?;
        Ok(match &self.jet {
            None => BigInt::zero(),
            Some(jet) => {
                let m = self.sol.m;
                self.numerator(jet, x, m)
                    - (self.numerator(jet, x + 1, 0) + self.numerator(jet, x - 1, 0) - self.numerator(jet, x, 0) * 2)
            }
        })
    }
}

/// `d_t^order u(t, x)`.
pub fn counterexample_eval(sol: &CounterexampleSolution, t: f64, x: i64, order: u32) -> Result<Approx> {
    sol.at(t)?.eval(x, order)
}

/// `d_t^m u - Delta u` at `(t, x)`.
pub fn pde_residual(sol: &CounterexampleSolution, t: f64, x: i64) -> Result<Approx> {
    sol.at(t)?.pde_residual(x)
}

/// `|u(t, x)| exp(-(2 + eps) x ln x)`; requires `eps > 0`, `beta > 2/eps`, `x >= 2`.
pub fn growth_ratio(sol: &CounterexampleSolution, t: f64, x: i64, eps: f64) -> Result<Approx> {
    sol.check_growth_params(x, eps)?;
    sol.at(t)?.growth_ratio(x, eps)
}

/// Evidence that `u(., x)` is not analytic at `t = 0`: a flat jet at zero and
/// a nonzero value at a later time.
#[derive(Debug, Clone, Serialize)]
pub struct NonAnalyticityReport {
    pub x: i64,
    pub max_order: u32,
    /// Every `d_t^k u(0, x)` for `k <= max_order` is exactly zero.
    pub flat_jet: bool,
    pub t_probe: f64,
    /// Decimal value of `u(t_probe, x)`.
    pub probe_value: String,
    /// `|u(t_probe, x)|` exceeds its error bound.
    pub probe_nonzero: bool,
    pub certified: bool,
}

pub fn nonanalyticity_certificate(
    sol: &CounterexampleSolution,
    x: i64,
    max_order: u32,
    t_probe: f64,
) -> Result<NonAnalyticityReport> {
    if !(t_probe > 0.0) {
        return Err(Error::InvalidParameter(format!("probe time must be positive, got {t_probe}")));
    }
    let at_zero = sol.at(0.0)?;
    let mut flat = true;
    for k in 0..=max_order {
        flat &= at_zero.eval(x, k)?.is_exact_zero();
    }
    let probe = counterexample_eval(sol, t_probe, x, 0)?;
    let bound = BigFloat::one().mul_pow2(probe.err_log2.unwrap_or(i64::MIN / 2));
    let nonzero = probe.value.abs().cmp_value(&bound).is_gt();
    Ok(NonAnalyticityReport {
        x,
        max_order,
        flat_jet: flat,
        t_probe,
        probe_value: probe.value.to_sci_string(sol.precision / 3),
        probe_nonzero: nonzero,
        certified: flat && nonzero,
    })
}

impl TimeEvolution for CounterexampleSolution {
    fn value(&self, t: f64, x: VertexId) -> Result<f64> {
        Ok(counterexample_eval(self, t, x, 0)?.to_f64())
    }

    fn time_derivative(&self, t: f64, x: VertexId, order: u32) -> Result<f64> {
        Ok(counterexample_eval(self, t, x, order)?.to_f64())
    }

    fn ln_abs_value(&self, t: f64, x: VertexId) -> Result<f64> {
        Ok(counterexample_eval(self, t, x, 0)?.value.ln_abs_f64())
    }

    fn label(&self) -> String {
        format!("counterexample (beta = {}, m = {})", self.beta, self.m)
    }
}

/// Estimated `floor(log2 |u(t,x)|)` helper for precision planning.
pub fn magnitude_log2(value: &Approx) -> Option<i64> {
    value.value.log2_floor()
}

/// Convenience: `u` as `f64`, saturating.
pub fn approx_to_f64(value: &Approx) -> f64 {
    value.value.to_f64()
}

/// `C(x+k, 2k)` as `u64` when it fits; exposed for tests of the spatial identity.
pub fn binomial_coefficient(x: i64, k: u32) -> Option<u64> {
    if x < 0 {
        return None;
    }
    spatial_coefficient(x, k).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: &LaurentPoly) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    /// `e^-1` from the exact partial sum of `sum (-1)^k / k!`.
    fn e_inv_ratio() -> BigRational {
        let mut sum = BigRational::zero();
        let mut term = BigRational::one();
        for k in 1..80 {
            sum += &term;
            term = -term / BigRational::from_integer(k.into());
        }
        sum
    }

    fn close_to(a: &Approx, r: &BigRational, tol_log2: i64) -> bool {
        let diff = (a.value.to_ratio() - r).abs();
        diff <= BigRational::new(BigInt::one(), BigInt::one() << (-tol_log2) as u64)
    }

    #[test]
    fn low_order_polynomials_beta_one() {
        let t = build_bump_table(1, 3).unwrap();
        assert_eq!(coeffs(t.q(0).unwrap()), vec![1]);
        assert_eq!(coeffs(t.q(1).unwrap()), vec![0, 0, 1]);
        assert_eq!(coeffs(t.q(2).unwrap()), vec![0, 0, 0, -2, 1]);
        assert!(t.recurrence_holds());
        assert!(matches!(t.q(4), Err(Error::TableTooShallow { requested: 4, depth: 3 })));
        assert!(build_bump_table(0, 3).is_err());
    }

    #[test]
    fn coefficient_count_grows_linearly() {
        let t = build_bump_table(3, 12).unwrap();
        for k in 1..=12u32 {
            let p = t.q(k).unwrap();
            assert_eq!(p.degree(), (4 * k) as usize);
            assert!(p.term_count() <= k as usize);
        }
    }

    #[test]
    fn second_derivative_matches_central_differences() {
        // Independent route: finite differences of exp(-1/t) at t = 1 in f64.
        let g = |t: f64| (-1.0 / t).exp();
        let h = 1e-3;
        let fd = (g(1.0 + h) - 2.0 * g(1.0) + g(1.0 - h)) / (h * h);
        let table = build_bump_table(1, 2).unwrap();
        let exact = bump_derivative(&table, 2, 1.0, 128).unwrap().to_f64();
        assert!((fd - exact).abs() < 1e-6);
        assert!((exact + (-1.0f64).exp()).abs() < 1e-15);
        let first = bump_derivative(&table, 1, 0.5, 128).unwrap().to_f64();
        assert!((first - 4.0 * (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn bump_values() {
        let table = build_bump_table(1, 4).unwrap();
        let g1 = bump_derivative(&table, 0, 1.0, 256).unwrap();
        assert!(close_to(&g1, &e_inv_ratio(), -248));
        let g2 = bump_derivative(&table, 2, 1.0, 256).unwrap();
        assert!(close_to(&g2, &-e_inv_ratio(), -248));
        for k in 0..=4 {
            assert!(bump_derivative(&table, k, -0.5, 256).unwrap().is_exact_zero());
            assert!(bump_derivative(&table, k, 0.0, 256).unwrap().is_exact_zero());
        }
        assert!(bump_derivative(&table, 5, 1.0, 256).is_err());
    }

    #[test]
    fn spatial_products() {
        assert_eq!(spatial_product(1, 1), BigInt::from(2));
        assert_eq!(spatial_product(3, 5), BigInt::zero());
        assert_eq!(spatial_product(2, 2), BigInt::from(24));
        assert_eq!(spatial_product(7, 0), BigInt::one());
        assert_eq!(binomial_coefficient(5, 2), Some(35));
    }

    #[test]
    fn binomial_second_difference() {
        for x in 0..15i64 {
            for k in 1..8u32 {
                let c = |x: i64, k: u32| spatial_coefficient(mirror(x), k);
                let lap = c(x + 1, k) + c(x - 1, k) - c(x, k) * 2;
                assert_eq!(lap, c(x, k - 1), "x = {x}, k = {k}");
            }
        }
    }

    #[test]
    fn point_values() {
        let sol = CounterexampleSolution::new(1, 2, 256, 30).unwrap();
        let u11 = counterexample_eval(&sol, 1.0, 1, 0).unwrap();
        assert!(u11.is_exact_zero());
        let u10 = counterexample_eval(&sol, 1.0, 0, 0).unwrap();
        assert!(close_to(&u10, &e_inv_ratio(), -248));
        for x in -4..=4 {
            for k in 0..5 {
                assert!(counterexample_eval(&sol, -0.3, x, k).unwrap().is_exact_zero());
            }
        }
    }

    #[test]
    fn symmetry_about_minus_half() {
        let sol = CounterexampleSolution::new(2, 2, 128, 30).unwrap();
        let slice = sol.at(0.8).unwrap();
        for x in -8..=-1 {
            for k in 0..3 {
                assert_eq!(slice.eval(x, k).unwrap(), slice.eval(-x - 1, k).unwrap());
            }
        }
    }

    #[test]
    fn residual_vanishes_for_wave_and_higher_orders() {
        for (m, x) in [(2u32, 4i64), (3, 3), (4, 2), (2, -3), (2, 0)] {
            let depth = CounterexampleSolution::residual_depth(m, x);
            let sol = CounterexampleSolution::new(3, m, 256, depth).unwrap();
            let slice = sol.at(0.7).unwrap();
            assert!(slice.exact_residual_numerator(x).unwrap().is_zero(), "m = {m}, x = {x}");
            let r = slice.pde_residual(x).unwrap();
            let bound = BigFloat::one().mul_pow2(-200);
            assert!(r.value.abs().cmp_value(&bound).is_le(), "m = {m}, x = {x}: {}", r.value);
        }
        let sol = CounterexampleSolution::new(3, 2, 256, 10).unwrap();
        assert!(pde_residual(&sol, -1.0, 2).unwrap().is_exact_zero());
    }

    #[test]
    fn shallow_table_is_reported() {
        let sol = CounterexampleSolution::new(3, 2, 128, 5).unwrap();
        match counterexample_eval(&sol, 1.0, 3, 0).unwrap_err() {
            Error::TableTooShallow { requested, depth } => assert_eq!((requested, depth), (6, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(CounterexampleSolution::new(3, 1, 128, 5).is_err());
    }

    #[test]
    fn growth_ratio_guards() {
        let sol = CounterexampleSolution::new(1, 2, 128, 20).unwrap();
        assert!(matches!(growth_ratio(&sol, 1.0, 5, 1.0), Err(Error::BetaTooSmall { .. })));
        let sol = CounterexampleSolution::new(3, 2, 128, 20).unwrap();
        assert!(matches!(growth_ratio(&sol, 1.0, 5, 0.0), Err(Error::NonPositiveEps(_))));
        assert!(matches!(growth_ratio(&sol, 1.0, 1, 1.0), Err(Error::GrowthPointTooSmall(1))));
        assert!(growth_ratio(&sol, -1.0, 5, 1.0).unwrap().is_exact_zero());
    }

    #[test]
    fn flat_jet_certificates() {
        let sol = CounterexampleSolution::new(1, 2, 256, 40).unwrap();
        let cert = nonanalyticity_certificate(&sol, 0, 20, 1.0).unwrap();
        assert!(cert.flat_jet && cert.probe_nonzero && cert.certified);
        assert!(cert.probe_value.starts_with("3.678794411714423215955237701614608674458111310317678345078368016974614957"), "{}", cert.probe_value);
        assert!(cert.probe_value.ends_with("e-1"));
        let sol = CounterexampleSolution::new(3, 2, 256, 30).unwrap();
        let cert = nonanalyticity_certificate(&sol, 5, 10, 1.0).unwrap();
        assert!(cert.flat_jet);
    }
}
