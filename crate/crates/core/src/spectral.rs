//! Dirichlet wave problems on a finite vertex set `Omega`, solved exactly by
//! eigen-expansion:
//!
//! ```text
//! u(t,x) = sum_i [ a_i cos(t sqrt(l_i)) + b_i sin(t sqrt(l_i)) / sqrt(l_i) ] psi_i(x)
//! ```
//!
//! where `(l_i, psi_i)` are the eigenpairs of `-Delta` with zero boundary
//! values on `delta Omega`, orthonormal in `l^2(Omega, mu)`.

use std::sync::Arc;

use crate::eigen::{jacobi_eigen, DenseMatrix};
use crate::error::{Error, Result};
use crate::evolution::TimeEvolution;
use crate::graph::{VertexId, VertexSet, WeightedGraph};
use crate::laplacian::VertexFunction;

/// Default off-diagonal tolerance for the eigensolver.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;

/// Matrix of `-Delta` restricted to `Omega` with zero boundary data, and its
/// symmetrization `S = M^{1/2} L M^{-1/2}`.
#[derive(Debug, Clone)]
pub struct DirichletMatrix {
    pub omega: VertexSet,
    pub boundary: VertexSet,
    pub mu: Vec<f64>,
    /// `L[x][x] = Deg(x)`, `L[x][y] = -omega_xy / mu_x`.
    pub laplacian: DenseMatrix,
    /// `S[x][y] = -omega_xy / sqrt(mu_x mu_y)`.
    pub symmetric: DenseMatrix,
}

pub fn dirichlet_matrix(g: &WeightedGraph, omega: &VertexSet) -> Result<DirichletMatrix> {
    if omega.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let boundary = g.vertex_boundary(omega)?;
    // Each component of Omega must see the boundary, else 0 is an eigenvalue.
    for comp in g.components_within(omega) {
        let mut touches = false;
        for x in comp.iter() {
            if g.neighbors(x)?.any(|(y, _)| !omega.contains(y)) {
                touches = true;
                break;
            }
        }
        if !touches {
            return Err(Error::NoBoundary(comp.as_slice()[0]));
        }
    }
    let n = omega.len();
    let mu: Vec<f64> = omega.iter().map(|x| g.measure(x)).collect::<Result<_>>()?;
    let mut laplacian = DenseMatrix::zeros(n);
    let mut symmetric = DenseMatrix::zeros(n);
    for (i, x) in omega.iter().enumerate() {
        let deg = g.degree(x)?;
        laplacian.set(i, i, deg);
        symmetric.set(i, i, deg);
        for (y, w) in g.neighbors(x)? {
            if let Some(j) = omega.position(y) {
                laplacian.set(i, j, -w / mu[i]);
                symmetric.set(i, j, -w / (mu[i] * mu[j]).sqrt());
            }
        }
    }
    Ok(DirichletMatrix { omega: omega.clone(), boundary, mu, laplacian, symmetric })
}

/// Dirichlet eigenpairs on `Omega`.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub omega: VertexSet,
    pub boundary: VertexSet,
    pub mu: Vec<f64>,
    /// Ascending, strictly positive.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i][j] = psi_i(omega[j])`.
    pub eigenvectors: Vec<Vec<f64>>,
}

/// Diagonalizes the symmetrized Dirichlet matrix and maps the eigenvectors
/// back through `M^{-1/2}`, renormalized in the `mu` inner product.
pub fn eigendecompose(dm: &DirichletMatrix, tol: f64) -> Result<SpectralData> {
    let eig = jacobi_eigen(&dm.symmetric, tol)?;
    let eigenvectors = eig
        .vectors
        .iter()
        .map(|v| {
            let mut psi: Vec<f64> = v.iter().zip(&dm.mu).map(|(c, m)| c / m.sqrt()).collect();
            let norm = psi.iter().zip(&dm.mu).map(|(p, m)| m * p * p).sum::<f64>().sqrt();
            psi.iter_mut().for_each(|p| *p /= norm);
            psi
        })
        .collect();
    if let Some(&l) = eig.values.first() {
        if !(l > 0.0) {
            return Err(Error::NoBoundary(dm.omega.as_slice()[0]));
        }
    }
    Ok(SpectralData {
        omega: dm.omega.clone(),
        boundary: dm.boundary.clone(),
        mu: dm.mu.clone(),
        eigenvalues: eig.values,
        eigenvectors,
    })
}

impl SpectralData {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `max |<psi_i, psi_j>_mu - delta_ij|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (i, a) in self.eigenvectors.iter().enumerate() {
            for (j, b) in self.eigenvectors.iter().enumerate() {
                let dot: f64 = a.iter().zip(b).zip(&self.mu).map(|((x, y), m)| m * x * y).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// `max_i || -Delta_Omega psi_i - l_i psi_i ||_inf` with `psi_i` extended by zero.
    pub fn eigen_residual(&self, g: &WeightedGraph) -> Result<f64> {
        let mut worst = 0.0_f64;
        for (lam, psi) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for (j, x) in self.omega.iter().enumerate() {
                let mu = self.mu[j];
                let mut lap = 0.0;
                for (y, w) in g.neighbors(x)? {
                    let py = self.omega.position(y).map_or(0.0, |k| psi[k]);
                    lap += w / mu * (py - psi[j]);
                }
                worst = worst.max((-lap - lam * psi[j]).abs());
            }
        }
        Ok(worst)
    }

    /// Coefficients `c_i = sum_x mu_x f(x) psi_i(x)` of a function on `Omega`.
    pub fn project(&self, f: &VertexFunction) -> Result<Vec<f64>> {
        let values: Vec<f64> = self.omega.iter().map(|x| f.get(x)).collect::<Result<_>>()?;
        Ok(self.project_values(&values))
    }

    fn project_values(&self, values: &[f64]) -> Vec<f64> {
        self.eigenvectors
            .iter()
            .map(|psi| psi.iter().zip(values).zip(&self.mu).map(|((p, v), m)| m * p * v).sum())
            .collect()
    }
}

/// Homogeneous wave problem on `Omega` with value data `g0` and velocity data `h0`.
#[derive(Debug, Clone)]
pub struct DirichletProblem {
    graph: Arc<WeightedGraph>,
    omega: VertexSet,
    boundary: VertexSet,
    initial_value: VertexFunction,
    initial_velocity: VertexFunction,
}

impl DirichletProblem {
    pub fn new(
        graph: Arc<WeightedGraph>,
        omega: VertexSet,
        initial_value: VertexFunction,
        initial_velocity: VertexFunction,
    ) -> Result<Self> {
        if omega.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if let Some(x) = omega.iter().find(|&x| !graph.contains(x)) {
            return Err(Error::UnknownVertex(x));
        }
        for f in [&initial_value, &initial_velocity] {
            if f.support() != &omega {
                return Err(Error::InvalidParameter("initial data must be supported exactly on Omega".into()));
            }
        }
        let boundary = graph.vertex_boundary(&omega)?;
        Ok(DirichletProblem { graph, omega, boundary, initial_value, initial_velocity })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn omega(&self) -> &VertexSet {
        &self.omega
    }

    pub fn boundary(&self) -> &VertexSet {
        &self.boundary
    }

    pub fn initial_value(&self) -> &VertexFunction {
        &self.initial_value
    }

    pub fn initial_velocity(&self) -> &VertexFunction {
        &self.initial_velocity
    }

    /// True when `Omega` or its boundary contains a truncated window vertex,
    /// so the problem lives on the window rather than the infinite graph.
    pub fn touches_truncation(&self) -> bool {
        self.omega.iter().chain(self.boundary.iter()).any(|x| self.graph.is_truncated(x))
    }
}

/// `d^n/dtheta^n cos(theta)` and `d^n/dtheta^n sin(theta)`.
fn trig_derivatives(theta: f64, n: u32) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    match n % 4 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

/// Evaluator of the eigen-expansion of a [`DirichletProblem`].
#[derive(Debug, Clone)]
pub struct WaveSolution {
    problem: DirichletProblem,
    spectral: SpectralData,
    a: Vec<f64>,
    b: Vec<f64>,
    freq: Vec<f64>,
}

pub fn solve_wave(problem: &DirichletProblem, tol: f64) -> Result<WaveSolution> {
    let dm = dirichlet_matrix(problem.graph(), problem.omega())?;
    let spectral = eigendecompose(&dm, tol)?;
    let a = spectral.project(problem.initial_value())?;
    let b = spectral.project(problem.initial_velocity())?;
    WaveSolution::from_parts(problem.clone(), spectral, a, b)
}

impl WaveSolution {
    /// Assembles a solution from explicit coefficients; used for perturbation studies.
    pub fn from_parts(problem: DirichletProblem, spectral: SpectralData, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != spectral.len() || b.len() != spectral.len() {
            return Err(Error::InvalidParameter("coefficient count must match the spectrum".into()));
        }
        let freq = spectral.eigenvalues.iter().map(|l| l.sqrt()).collect();
        Ok(WaveSolution { problem, spectral, a, b, freq })
    }

    pub fn problem(&self) -> &DirichletProblem {
        &self.problem
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    pub fn value_coefficients(&self) -> &[f64] {
        &self.a
    }

    pub fn velocity_coefficients(&self) -> &[f64] {
        &self.b
    }

    /// `u(t, x)`; exactly zero on the boundary.
    pub fn evaluate(&self, t: f64, x: VertexId) -> Result<f64> {
        self.derivative(t, x, 0)
    }

    /// Termwise `d^order/dt^order` of the expansion.
    pub fn derivative(&self, t: f64, x: VertexId, order: u32) -> Result<f64> {
        let Some(j) = self.spectral.omega.position(x) else {
            return if self.spectral.boundary.contains(x) {
                Ok(0.0)
            } else {
                Err(Error::OutsideClosure(x))
            };
        };
        Ok(self.modal_derivatives(t, order).iter().zip(&self.spectral.eigenvectors).map(|(m, psi)| m * psi[j]).sum())
    }

    /// Time factor of each mode, differentiated `order` times.
    fn modal_derivatives(&self, t: f64, order: u32) -> Vec<f64> {
        let n = i32::try_from(order).unwrap_or(i32::MAX);
        self.freq
            .iter()
            .zip(self.a.iter().zip(&self.b))
            .map(|(&w, (&a, &b))| {
                let (c, s) = trig_derivatives(w * t, order);
                a * w.powi(n) * c + b * w.powi(n - 1) * s
            })
            .collect()
    }

    /// `d^order/dt^order u(t, .)` on `Omega`, in `Omega` order.
    pub fn slice(&self, t: f64, order: u32) -> Vec<f64> {
        let modes = self.modal_derivatives(t, order);
        (0..self.spectral.omega.len())
            .map(|j| modes.iter().zip(&self.spectral.eigenvectors).map(|(m, psi)| m * psi[j]).sum())
            .collect()
    }

    /// `Delta u(t, x)` for `x` in `Omega` with zero boundary values, from a slice.
    fn laplacian_of_slice(&self, slice: &[f64], j: usize, x: VertexId) -> Result<f64> {
        let g = self.problem.graph();
        let mu = self.spectral.mu[j];
        let mut lap = 0.0;
        for (y, w) in g.neighbors(x)? {
            let uy = self.spectral.omega.position(y).map_or(0.0, |k| slice[k]);
            lap += w / mu * (uy - slice[j]);
        }
        Ok(lap)
    }

    /// `max |d_t^2 u - Delta u|` over `t_samples` and `Omega`.
    pub fn residual(&self, t_samples: &[f64]) -> Result<f64> {
        let mut worst = 0.0_f64;
        for &t in t_samples {
            let u = self.slice(t, 0);
            let utt = self.slice(t, 2);
            for (j, x) in self.spectral.omega.iter().enumerate() {
                worst = worst.max((utt[j] - self.laplacian_of_slice(&u, j, x)?).abs());
            }
        }
        Ok(worst)
    }

    /// Sup-norm defects of `sum a_i psi_i = g0` and `sum b_i psi_i = h0`.
    pub fn reconstruction_defect(&self) -> (f64, f64) {
        let defect = |coef: &[f64], f: &VertexFunction| {
            self.spectral
                .omega
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    let rec: f64 = coef.iter().zip(&self.spectral.eigenvectors).map(|(c, psi)| c * psi[j]).sum();
                    (rec - f.get(x).unwrap_or(0.0)).abs()
                })
                .fold(0.0, f64::max)
        };
        (
            defect(&self.a, self.problem.initial_value()),
            defect(&self.b, self.problem.initial_velocity()),
        )
    }

    /// `E(t) = 1/2 sum mu (d_t u)^2 + 1/4 sum_{x, y ~ x} omega_xy (u(y) - u(x))^2`,
    /// over ordered pairs with `x` in `Omega` and `u = 0` on the boundary.
    pub fn energy(&self, t: f64) -> Result<f64> {
        let g = self.problem.graph();
        let u = self.slice(t, 0);
        let ut = self.slice(t, 1);
        let omega = &self.spectral.omega;
        let mut kinetic = 0.0;
        let mut potential = 0.0;
        for (j, x) in omega.iter().enumerate() {
            kinetic += 0.5 * self.spectral.mu[j] * ut[j] * ut[j];
            for (y, w) in g.neighbors(x)? {
                let uy = omega.position(y).map_or(0.0, |k| u[k]);
                let d2 = w * (uy - u[j]).powi(2);
                // Edges into the boundary appear once among ordered pairs from Omega.
                potential += if omega.contains(y) { 0.25 * d2 } else { 0.5 * d2 };
            }
        }
        Ok(kinetic + potential)
    }
}

impl TimeEvolution for WaveSolution {
    fn value(&self, t: f64, x: VertexId) -> Result<f64> {
        self.evaluate(t, x)
    }

    fn time_derivative(&self, t: f64, x: VertexId, order: u32) -> Result<f64> {
        self.derivative(t, x, order)
    }

    fn label(&self) -> String {
        format!("spectral Dirichlet solution on {} vertices", self.spectral.omega.len())
    }
}

/// Time-dependent source `f(t, x)` on `Omega`.
pub type Forcing = Arc<dyn Fn(f64, VertexId) -> f64 + Send + Sync>;

/// Wave solution with a source term, added mode by mode through the Duhamel
/// integral `int_0^t sin((t-s) w_i)/w_i f_i(s) ds` by composite Simpson.
#[derive(Clone)]
pub struct ForcedWaveSolution {
    base: WaveSolution,
    forcing: Forcing,
    step: f64,
}

impl std::fmt::Debug for ForcedWaveSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ForcedWaveSolution").field("base", &self.base).field("step", &self.step).finish()
    }
}

pub fn solve_wave_forced(problem: &DirichletProblem, forcing: Forcing, step: f64, tol: f64) -> Result<ForcedWaveSolution> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::NonPositiveStep(step));
    }
    Ok(ForcedWaveSolution { base: solve_wave(problem, tol)?, forcing, step })
}

impl ForcedWaveSolution {
    pub fn base(&self) -> &WaveSolution {
        &self.base
    }

    fn modal_forcing(&self, s: f64) -> Vec<f64> {
        let spec = &self.base.spectral;
        let values: Vec<f64> = spec.omega.iter().map(|x| (self.forcing)(s, x)).collect();
        spec.project_values(&values)
    }

    /// Per mode: `(int sin((t-s)w)/w f_i, int cos((t-s)w) f_i)` over `[0, t]`.
    fn duhamel(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let n_modes = self.base.freq.len();
        let mut sin_part = vec![0.0; n_modes];
        let mut cos_part = vec![0.0; n_modes];
        if t == 0.0 {
            return (sin_part, cos_part);
        }
        let mut intervals = ((t.abs() / self.step).ceil() as usize).max(2);
        intervals += intervals % 2;
        let h = t / intervals as f64;
        for k in 0..=intervals {
            let s = h * k as f64;
            let weight = if k == 0 || k == intervals {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let fs = self.modal_forcing(s);
            for (i, &w) in self.base.freq.iter().enumerate() {
                let (sn, cs) = ((t - s) * w).sin_cos();
                sin_part[i] += weight * sn / w * fs[i];
                cos_part[i] += weight * cs * fs[i];
            }
        }
        let scale = h / 3.0;
        sin_part.iter_mut().chain(cos_part.iter_mut()).for_each(|v| *v *= scale);
        (sin_part, cos_part)
    }

    /// Time derivatives of order 0, 1 and 2 on `Omega`.
    pub fn slice(&self, t: f64, order: u32) -> Result<Vec<f64>> {
        let spec = &self.base.spectral;
        let mut out = self.base.slice(t, order);
        let (sin_part, cos_part) = self.duhamel(t);
        let modal: Vec<f64> = match order {
            0 => sin_part,
            1 => cos_part,
            2 => {
                let ft = self.modal_forcing(t);
                ft.iter().zip(&sin_part).zip(&spec.eigenvalues).map(|((f, s), l)| f - l * s).collect()
            }
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "forced solutions support time derivatives up to order 2, got {order}"
                )))
            }
        };
        for (j, o) in out.iter_mut().enumerate() {
            *o += modal.iter().zip(&spec.eigenvectors).map(|(m, psi)| m * psi[j]).sum::<f64>();
        }
        Ok(out)
    }

    pub fn derivative(&self, t: f64, x: VertexId, order: u32) -> Result<f64> {
        let spec = &self.base.spectral;
        match spec.omega.position(x) {
            Some(j) => Ok(self.slice(t, order)?[j]),
            None if spec.boundary.contains(x) => Ok(0.0),
            None => Err(Error::OutsideClosure(x)),
        }
    }

    pub fn evaluate(&self, t: f64, x: VertexId) -> Result<f64> {
        self.derivative(t, x, 0)
    }

    /// `max |d_t^2 u - Delta u - f|` over `t_samples` and `Omega`.
    pub fn residual(&self, t_samples: &[f64]) -> Result<f64> {
        let mut worst = 0.0_f64;
        for &t in t_samples {
            let u = self.slice(t, 0)?;
            let utt = self.slice(t, 2)?;
            for (j, x) in self.base.spectral.omega.iter().enumerate() {
                let lap = self.base.laplacian_of_slice(&u, j, x)?;
                worst = worst.max((utt[j] - lap - (self.forcing)(t, x)).abs());
            }
        }
        Ok(worst)
    }
}

impl TimeEvolution for ForcedWaveSolution {
    fn value(&self, t: f64, x: VertexId) -> Result<f64> {
        self.evaluate(t, x)
    }

    fn time_derivative(&self, t: f64, x: VertexId, order: u32) -> Result<f64> {
        self.derivative(t, x, order)
    }

    fn label(&self) -> String {
        "forced spectral Dirichlet solution".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    fn line_problem(r: u32, omega: &[VertexId], g0: impl Fn(VertexId) -> f64, h0: impl Fn(VertexId) -> f64) -> DirichletProblem {
        let g = Arc::new(WeightedGraph::line_window(r).unwrap());
        let omega = VertexSet::new(&g, omega.iter().copied()).unwrap();
        let gv = VertexFunction::from_fn(omega.clone(), g0);
        let hv = VertexFunction::from_fn(omega.clone(), h0);
        DirichletProblem::new(g, omega, gv, hv).unwrap()
    }

    #[test]
    fn dirichlet_matrices() {
        let g = WeightedGraph::line_window(5).unwrap();
        let dm = dirichlet_matrix(&g, &VertexSet::new(&g, [0]).unwrap()).unwrap();
        assert_eq!(dm.laplacian.rows(), vec![vec![2.0]]);
        assert_eq!(dm.symmetric.rows(), vec![vec![2.0]]);
        let dm = dirichlet_matrix(&g, &VertexSet::new(&g, [0, 1]).unwrap()).unwrap();
        assert_eq!(dm.symmetric.rows(), vec![vec![2.0, -1.0], vec![-1.0, 2.0]]);
        let star = WeightedGraph::star(3, 1.0).unwrap();
        let dm = dirichlet_matrix(&star, &VertexSet::new(&star, [0]).unwrap()).unwrap();
        assert_eq!(dm.laplacian.rows(), vec![vec![3.0]]);
    }

    #[test]
    fn whole_component_is_rejected() {
        let g = WeightedGraph::line_window(2).unwrap();
        assert!(matches!(dirichlet_matrix(&g, &g.all_vertices()), Err(Error::NoBoundary(-2))));
        assert!(matches!(dirichlet_matrix(&g, &VertexSet::empty()), Err(Error::EmptyDomain)));
    }

    #[test]
    fn single_mode_closed_forms() {
        let p = line_problem(3, &[0], |_| 1.0, |_| 0.0);
        let s = solve_wave(&p, DEFAULT_EIGEN_TOL).unwrap();
        for k in 0..20 {
            let t = -3.0 + 0.37 * k as f64;
            assert!((s.evaluate(t, 0).unwrap() - (SQRT_2 * t).cos()).abs() < 1e-12);
        }
        assert!((s.evaluate(PI / SQRT_2, 0).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(s.evaluate(2.0, 1).unwrap(), 0.0);
        assert!(matches!(s.evaluate(2.0, 3), Err(Error::OutsideClosure(3))));

        let p = line_problem(3, &[0], |_| 0.0, |_| 1.0);
        let s = solve_wave(&p, DEFAULT_EIGEN_TOL).unwrap();
        for k in 0..20 {
            let t = 0.41 * k as f64;
            assert!((s.evaluate(t, 0).unwrap() - (SQRT_2 * t).sin() / SQRT_2).abs() < 1e-12);
        }
        assert!((s.derivative(0.0, 0, 1).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_data_gives_zero() {
        let p = line_problem(4, &[-1, 0, 1], |_| 0.0, |_| 0.0);
        let s = solve_wave(&p, DEFAULT_EIGEN_TOL).unwrap();
        assert_eq!(s.evaluate(1.3, 0).unwrap(), 0.0);
        assert_eq!(s.residual(&[0.5, 2.0]).unwrap(), 0.0);
    }

    #[test]
    fn perturbed_coefficients_keep_the_pde_but_break_the_data() {
        let p = line_problem(6, &[-2, -1, 0, 1, 2], |x| 1.0 / (1.0 + (x * x) as f64), |_| 0.0);
        let s = solve_wave(&p, DEFAULT_EIGEN_TOL).unwrap();
        let mut a = s.value_coefficients().to_vec();
        a[0] += 0.1;
        let bent = WaveSolution::from_parts(p.clone(), s.spectral().clone(), a, s.velocity_coefficients().to_vec()).unwrap();
        assert!(bent.residual(&[0.3, 1.7]).unwrap() < 1e-12);
        assert!(bent.reconstruction_defect().0 > 1e-3);
        assert!(s.reconstruction_defect().0 < 1e-12);
    }

    #[test]
    fn forced_zero_source_matches_homogeneous() {
        let p = line_problem(5, &[-1, 0, 1, 2], |x| x as f64, |x| 0.5 - x as f64);
        let plain = solve_wave(&p, DEFAULT_EIGEN_TOL).unwrap();
        let forced = solve_wave_forced(&p, Arc::new(|_, _| 0.0), 0.05, DEFAULT_EIGEN_TOL).unwrap();
        for (t, x) in [(0.3, 0), (-1.2, 1), (2.5, -1), (4.0, 2)] {
            assert!((plain.evaluate(t, x).unwrap() - forced.evaluate(t, x).unwrap()).abs() < 1e-12);
        }
        assert!(matches!(
            solve_wave_forced(&p, Arc::new(|_, _| 0.0), 0.0, DEFAULT_EIGEN_TOL),
            Err(Error::NonPositiveStep(_))
        ));
    }

    #[test]
    fn forced_constant_source_single_mode() {
        let p = line_problem(3, &[0], |_| 0.0, |_| 0.0);
        let c = 0.8;
        let forced = solve_wave_forced(&p, Arc::new(move |_, _| c), 0.01, DEFAULT_EIGEN_TOL).unwrap();
        for t in [0.2, 1.0, 2.7, -1.5] {
            let exact = 0.5 * c * (1.0 - (SQRT_2 * t).cos());
            assert!((forced.evaluate(t, 0).unwrap() - exact).abs() < 1e-9, "t = {t}");
        }
        assert!(forced.residual(&[0.5, 1.5]).unwrap() < 1e-9);
    }

    #[test]
    fn forced_quadrature_converges_at_fourth_order() {
        // Single mode with w = sqrt(2), f = sin(s):
        // int_0^t sin((t-s)w)/w sin(s) ds = (w sin t - sin(w t)) / (w (w^2 - 1)).
        let p = line_problem(3, &[0], |_| 0.0, |_| 0.0);
        let t = 2.0f64;
        let w = SQRT_2;
        let exact = (w * t.sin() - (w * t).sin()) / (w * (w * w - 1.0));
        let err = |step: f64| {
            let s = solve_wave_forced(&p, Arc::new(|s: f64, _| s.sin()), step, DEFAULT_EIGEN_TOL).unwrap();
            (s.evaluate(t, 0).unwrap() - exact).abs()
        };
        let coarse = err(0.1);
        let fine = err(0.05);
        assert!(coarse / fine > 12.0, "ratio {}", coarse / fine);
    }
}
