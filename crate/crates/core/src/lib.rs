//! Exact analytics and discrete-event simulation for parallel-server systems
//! under graph-based redundancy scheduling with cancel-on-completion.
//!
//! Jobs of type `S` (a non-empty server subset) arrive Poisson at rate
//! `Nλp_S` and replicate to every server in `S`; the first finished replica
//! completes the job and cancels the rest. The central-queue occupancy is a
//! Markov process with a product-form stationary law, which this crate
//! evaluates exactly (stationary weights, normalization constant, generating
//! function, occupancy distributions), checks for stability and local
//! resource pooling, probes in the heavy- and light-traffic regimes, and
//! cross-validates with a next-event simulator.
//!
//! Modules:
//! - [`model`]: system parameterization, Markov state, standard graph
//!   families (complete, ring, sparse examples).
//! - [`modelfile`]: the TOML model-file schema.
//! - [`stability`]: subset-enumeration stability and local-stability checks
//!   with slack reports.
//! - [`product_form`]: stationary weights, generating function, occupancy
//!   distributions, per-type means.
//! - [`simulator`]: reproducible continuous-time simulation with job tagging
//!   for sojourn and waiting times.
//! - [`asymptotics`]: heavy-traffic collapse probes, light-traffic α
//!   coefficients, four-server closed forms, stochastic dominance.

pub mod asymptotics;
pub mod error;
pub mod model;
pub mod modelfile;
mod numeric;
pub mod product_form;
pub mod simulator;
pub mod stability;

pub use error::{Error, Result};
pub use model::{CompatibilityModel, JobType, ServerSet, SystemState, TypeOrderVector};
pub use product_form::{OccupancyOptions, PgfEvaluation, PgfOptions};
pub use simulator::{SimulationEstimate, SimulationParams};
pub use stability::{StabilityOptions, StabilityReport, StabilityVerdict};
