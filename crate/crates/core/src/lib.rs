//! Wave equations on weighted graphs: Laplacian bounds, spectral Dirichlet
//! solutions, the flat-bump non-uniqueness series, and time-analyticity tools.

pub mod analyticity;
pub mod eigen;
pub mod error;
pub mod evolution;
pub mod graph;
pub mod hp;
pub mod laplacian;
pub mod spectral;
pub mod tychonoff;
pub mod verify;

pub use analyticity::{
    analytic_radius_lower_bound, certify_class_membership, first_derivative_bound, intermediate_derivative_bound, ore_k,
    taylor_reconstruct, taylor_remainder_bound, uniqueness_gap, ClassCertificate, Horizon, Radius, RadiusReport,
    TraceParams, UniquenessReport, UniquenessStatus,
};
pub use error::{Error, Result};
pub use evolution::{TimeEvolution, ZeroExtended, ZeroSolution};
pub use graph::{Distance, GrowthCertificate, VertexId, VertexSet, WeightedGraph};
pub use hp::{Approx, BigFloat};
pub use laplacian::{apply_laplacian, apply_laplacian_power, laplacian_power_bound, verify_power_bound, VertexFunction};
pub use spectral::{solve_wave, solve_wave_forced, DirichletProblem, Forcing, ForcedWaveSolution, WaveSolution};
pub use tychonoff::{
    build_bump_table, counterexample_eval, growth_ratio, nonanalyticity_certificate, pde_residual, BumpTable,
    CounterexampleSolution,
};
pub use verify::{verify_suite, PropertyResult, Suite, VerifyReport};
