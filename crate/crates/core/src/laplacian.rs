//! The graph Laplacian `Delta f(x) = sum_{y~x} (omega_xy/mu_x)(f(y) - f(x))`,
//! its powers, and the supremum bounds
//! `|Delta^k f(x)| <= (2 sup_{B_k(x)} Deg)^k sup_{B_k(x)} |f|`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet, WeightedGraph};
use crate::hp::ratio_from_f64;

/// Real function on a finite support. Reading outside the support is an error.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction {
    support: VertexSet,
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(support: VertexSet, values: Vec<f64>) -> Result<Self> {
        if support.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "support has {} vertices but {} values were given",
                support.len(),
                values.len()
            )));
        }
        Ok(VertexFunction { support, values })
    }

    pub fn from_fn(support: VertexSet, f: impl Fn(VertexId) -> f64) -> Self {
        let values = support.iter().map(f).collect();
        VertexFunction { support, values }
    }

    pub fn constant(support: VertexSet, c: f64) -> Self {
        Self::from_fn(support, |_| c)
    }

    pub fn zero(support: VertexSet) -> Self {
        Self::constant(support, 0.0)
    }

    /// Extends by zero onto `domain`, which must contain the current support.
    pub fn extend_by_zero(&self, domain: &VertexSet) -> Result<Self> {
        if let Some(x) = self.support.iter().find(|&x| !domain.contains(x)) {
            return Err(Error::OutsideSupport(x));
        }
        Ok(Self::from_fn(domain.clone(), |x| {
            self.support.position(x).map_or(0.0, |i| self.values[i])
        }))
    }

    pub fn support(&self) -> &VertexSet {
        &self.support
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: VertexId) -> Result<f64> {
        self.support
            .position(x)
            .map(|i| self.values[i])
            .ok_or(Error::OutsideSupport(x))
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.support.iter().zip(self.values.iter().copied())
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Supremum of `|f|` over `set`, which must lie inside the support.
    pub fn sup_over(&self, set: &VertexSet) -> Result<f64> {
        set.iter().try_fold(0.0_f64, |m, x| Ok(m.max(self.get(x)?.abs())))
    }

    /// Pointwise linear combination `a*self + b*other` on a shared support.
    pub fn combine(&self, a: f64, other: &VertexFunction, b: f64) -> Result<Self> {
        if self.support != other.support {
            return Err(Error::InvalidParameter("supports differ".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(VertexFunction { support: self.support.clone(), values })
    }
}

/// `Delta f(x)`; needs `B_1(x)` inside the support.
pub fn apply_laplacian(g: &WeightedGraph, f: &VertexFunction, x: VertexId) -> Result<f64> {
    let fx = f.get(x)?;
    let mu = g.measure(x)?;
    let mut acc = 0.0;
    for (y, w) in g.neighbors(x)? {
        let fy = f.get(y).map_err(|_| Error::InsufficientSupport { vertex: x, k: 1, missing: y })?;
        acc += w / mu * (fy - fx);
    }
    Ok(acc)
}

/// `Delta^k f(x)` by repeated application over the shrinking balls
/// `B_k(x), B_{k-1}(x), ..., B_0(x)`.
pub fn apply_laplacian_power(g: &WeightedGraph, f: &VertexFunction, x: VertexId, k: u32) -> Result<f64> {
    if k == 0 {
        return f.get(x);
    }
    let outer = g.ball(&[x], k)?;
    let mut current: HashMap<VertexId, f64> = HashMap::with_capacity(outer.len());
    for y in outer.iter() {
        let v = f.get(y).map_err(|_| Error::InsufficientSupport { vertex: x, k, missing: y })?;
        current.insert(y, v);
    }
    for step in 1..=k {
        let inner = g.ball(&[x], k - step)?;
        let mut next = HashMap::with_capacity(inner.len());
        for y in inner.iter() {
            let fy = current[&y];
            let mu = g.measure(y)?;
            let lap: f64 = g.neighbors(y)?.map(|(z, w)| w / mu * (current[&z] - fy)).sum();
            next.insert(y, lap);
        }
        current = next;
    }
    Ok(current[&x])
}

/// Right-hand side of the power bound together with what entered it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerBound {
    pub value: f64,
    pub max_degree: f64,
    /// The ball `B_k(x)` contains a truncated window vertex; the bound then
    /// speaks about the window graph rather than the infinite one.
    pub truncation_warning: bool,
}

/// `(2 sup_{y in B_k(x)} Deg(y))^k * sup_f`.
pub fn laplacian_power_bound(g: &WeightedGraph, x: VertexId, k: u32, sup_f: f64) -> Result<PowerBound> {
    if !(sup_f >= 0.0) {
        return Err(Error::InvalidParameter(format!("sup_f must be nonnegative, got {sup_f}")));
    }
    let ball = g.ball(&[x], k)?;
    let mut max_degree = 0.0_f64;
    let mut warn = false;
    for y in ball.iter() {
        max_degree = max_degree.max(g.degree(y)?);
        warn |= g.is_truncated(y);
    }
    let exponent = i32::try_from(k).map_err(|_| Error::InvalidParameter("k too large".into()))?;
    Ok(PowerBound {
        value: (2.0 * max_degree).powi(exponent) * sup_f,
        max_degree,
        truncation_warning: warn,
    })
}

/// Relative slack absorbing floating rounding in [`verify_power_bound`].
pub const POWER_BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerBoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub truncation_warning: bool,
}

/// Compares `|Delta^k f(x)|` against the power bound with the actual supremum of `f`.
pub fn verify_power_bound(g: &WeightedGraph, f: &VertexFunction, x: VertexId, k: u32) -> Result<PowerBoundCheck> {
    let lhs = apply_laplacian_power(g, f, x, k)?.abs();
    let sup_f = f.sup_over(&g.ball(&[x], k)?)?;
    let bound = laplacian_power_bound(g, x, k, sup_f)?;
    Ok(PowerBoundCheck {
        lhs,
        rhs: bound.value,
        holds: lhs <= bound.value * (1.0 + POWER_BOUND_SLACK),
        truncation_warning: bound.truncation_warning,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactPowerBoundCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

/// The same check in exact rational arithmetic. Every finite `f64` weight,
/// measure and value is read as the rational it denotes, so no slack is used.
pub fn verify_power_bound_exact(
    g: &WeightedGraph,
    f: &VertexFunction,
    x: VertexId,
    k: u32,
) -> Result<ExactPowerBoundCheck> {
    let outer = g.ball(&[x], k)?;
    let mut current: HashMap<VertexId, BigRational> = HashMap::new();
    let mut sup_f = BigRational::zero();
    for y in outer.iter() {
        let v = f.get(y).map_err(|_| Error::InsufficientSupport { vertex: x, k, missing: y })?;
        let v = ratio_from_f64(v)?;
        if v.abs() > sup_f {
            sup_f = v.abs();
        }
        current.insert(y, v);
    }
    let mut max_degree = BigRational::zero();
    let mut coeffs: HashMap<VertexId, Vec<(VertexId, BigRational)>> = HashMap::new();
    for y in outer.iter() {
        let mu = ratio_from_f64(g.measure(y)?)?;
        let mut deg = BigRational::zero();
        let mut row = Vec::new();
        for (z, w) in g.neighbors(y)? {
            let c = ratio_from_f64(w)? / &mu;
            deg += &c;
            row.push((z, c));
        }
        if deg > max_degree {
            max_degree = deg;
        }
        coeffs.insert(y, row);
    }
    for step in 1..=k {
        let inner = g.ball(&[x], k - step)?;
        let mut next = HashMap::new();
        for y in inner.iter() {
            let fy = &current[&y];
            let mut lap = BigRational::zero();
            for (z, c) in &coeffs[&y] {
                lap += c * (&current[z] - fy);
            }
            next.insert(y, lap);
        }
        current = next;
    }
    let lhs = current[&x].abs();
    let two = BigRational::from_integer(2.into());
    let mut rhs = sup_f;
    let base = two * max_degree;
    let mut factor = BigRational::one();
    for _ in 0..k {
        factor *= &base;
    }
    rhs *= factor;
    Ok(ExactPowerBoundCheck { holds: lhs <= rhs, lhs, rhs })
}
