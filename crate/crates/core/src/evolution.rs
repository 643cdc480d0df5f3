//! Pointwise-evaluable time evolutions `u(t, x)` shared by the spectral
//! solver, the counterexample, and the analyticity tools.

use crate::error::{Error, Result};
use crate::graph::VertexId;

pub trait TimeEvolution: Send + Sync {
    fn value(&self, t: f64, x: VertexId) -> Result<f64>;

    /// `d^order/dt^order u(t, x)`.
    fn time_derivative(&self, t: f64, x: VertexId, order: u32) -> Result<f64>;

    /// `ln |u(t, x)|`. Override when `u` can leave the `f64` range.
    fn ln_abs_value(&self, t: f64, x: VertexId) -> Result<f64> {
        Ok(self.value(t, x)?.abs().ln())
    }

    fn label(&self) -> String;
}

/// The solution `u = 0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroSolution;

impl TimeEvolution for ZeroSolution {
    fn value(&self, _t: f64, _x: VertexId) -> Result<f64> {
        Ok(0.0)
    }

    fn time_derivative(&self, _t: f64, _x: VertexId, _order: u32) -> Result<f64> {
        Ok(0.0)
    }

    fn label(&self) -> String {
        "zero".into()
    }
}

/// Reads a Dirichlet solution as a function on the whole graph by
/// extension with zero outside the closure of its domain.
#[derive(Debug, Clone)]
pub struct ZeroExtended<S>(pub S);

impl<S: TimeEvolution> TimeEvolution for ZeroExtended<S> {
    fn value(&self, t: f64, x: VertexId) -> Result<f64> {
        match self.0.value(t, x) {
            Err(Error::OutsideClosure(_)) => Ok(0.0),
            other => other,
        }
    }

    fn time_derivative(&self, t: f64, x: VertexId, order: u32) -> Result<f64> {
        match self.0.time_derivative(t, x, order) {
            Err(Error::OutsideClosure(_)) => Ok(0.0),
            other => other,
        }
    }

    fn ln_abs_value(&self, t: f64, x: VertexId) -> Result<f64> {
        match self.0.ln_abs_value(t, x) {
            Err(Error::OutsideClosure(_)) => Ok(f64::NEG_INFINITY),
            other => other,
        }
    }

    fn label(&self) -> String {
        format!("{} (zero-extended)", self.0.label())
    }
}

impl<T: TimeEvolution + ?Sized> TimeEvolution for &T {
    fn value(&self, t: f64, x: VertexId) -> Result<f64> {
        (**self).value(t, x)
    }

    fn time_derivative(&self, t: f64, x: VertexId, order: u32) -> Result<f64> {
        (**self).time_derivative(t, x, order)
    }

    fn ln_abs_value(&self, t: f64, x: VertexId) -> Result<f64> {
        (**self).ln_abs_value(t, x)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}
