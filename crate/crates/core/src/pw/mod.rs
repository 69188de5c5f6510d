//! Quantized boundary conditions: `u` becomes a matrix of commuting operators
//! on `L²(U(2))`, realized in a truncated Peter–Weyl basis.

/// Frozen parameters of the topology-dynamics scenarios.
pub mod golden {
    pub const TAU: f64 = 0.3;
    pub const DELTA: f64 = 1.5;
    pub const P_MAX: u32 = 8;
    pub const TWO_J_MAX: u32 = 8;
    pub const HEAVY_INERTIA: f64 = 200.0;
    pub const LIGHT_INERTIA: f64 = 1.0;
    /// Tilt scenario: constant `V = −v Re tr(u_b† û)`.
    pub const TILT_INERTIA: f64 = 3.0;
    pub const TILT_STRENGTH: f64 = 1.0;
    pub const HORIZON: f64 = 10.0;
}

pub mod basis;
pub mod evolve;
pub mod operators;
pub mod packet;
pub mod quadrature;
pub mod wigner;

pub use basis::{build_basis, casimir, Label, PwBasis};
pub use evolve::{born_oppenheimer_potential, evolve, particle_level, propagate, EvolutionRow, EvolutionTrace, Hamiltonian, Method};
pub use operators::{algebra_residuals, generators, AlgebraReport, kinetic_diagonal, lie_generators, tilt_potential, u_operator, SparseMatrix};
pub use packet::{coherent_packet, heat_kernel_ball_fraction, topology_distribution, PeterWeylState, TopologyCenters, TopologyDistribution};
pub use quadrature::{ball_mass, ball_volume, total_mass, BallRule, EulerRule};
