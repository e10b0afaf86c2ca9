//! System parameterization for redundancy scheduling with compatibility
//! constraints.
//!
//! A [`CompatibilityModel`] holds `N` servers with speeds `μ_1..μ_N`, a set of
//! job types (non-empty server subsets `S` with selection probabilities
//! `p_S > 0`) and a normalized arrival rate `λ` (jobs arrive Poisson at total
//! rate `N·λ`; a type-`S` job arrives at rate `λ_S = N·λ·p_S` and places one
//! replica on every server in `S`). Replicas have independent unit-mean
//! exponential sizes and the first finished replica completes the job
//! (cancel-on-completion); each server works FCFS on its compatible jobs.
//!
//! The Markov state is the ordered sequence of job types in the system,
//! oldest first ([`SystemState`]). All types here are immutable after
//! construction and safe to share across threads.

use crate::error::{Error, Result};
use std::fmt;

/// Tolerance for the job-type probability sum. Inputs within this distance of
/// 1 are renormalized; anything further off is rejected.
pub const PROB_SUM_TOLERANCE: f64 = 1e-12;

/// A subset of servers, stored as a bitmask. Server indices are 1-based in
/// the public API and bit positions internally; models are capped at 64
/// servers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ServerSet(u64);

impl ServerSet {
    pub const EMPTY: ServerSet = ServerSet(0);

    /// Builds a set from 1-based server indices.
    pub fn from_servers<I: IntoIterator<Item = usize>>(servers: I) -> Result<Self> {
        let mut bits = 0u64;
        for s in servers {
            if s == 0 || s > 64 {
                return Err(Error::ServerOutOfRange { server: s, count: 64 });
            }
            bits |= 1u64 << (s - 1);
        }
        Ok(ServerSet(bits))
    }

    /// The full set `{1..n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            ServerSet(u64::MAX)
        } else {
            ServerSet((1u64 << n) - 1)
        }
    }

    pub(crate) fn from_bits(bits: u64) -> Self {
        ServerSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, server: usize) -> bool {
        (1..=64).contains(&server) && self.0 & (1u64 << (server - 1)) != 0
    }

    pub fn union(self, other: ServerSet) -> ServerSet {
        ServerSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ServerSet) -> ServerSet {
        ServerSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: ServerSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: ServerSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement within `{1..n}`.
    pub fn complement_within(self, n: usize) -> ServerSet {
        ServerSet(!self.0 & Self::full(n).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Ascending 1-based server indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }
}

impl fmt::Display for ServerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ServerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One job type: the servers its replicas go to and its selection probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JobType {
    pub servers: ServerSet,
    pub prob: f64,
}

/// The full system parameterization. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatibilityModel {
    speeds: Vec<f64>,
    types: Vec<JobType>,
    lambda: f64,
    total_speed: f64,
}

impl CompatibilityModel {
    /// Validates and builds a model. Probabilities must sum to 1 within
    /// [`PROB_SUM_TOLERANCE`] (they are then renormalized), every subset must
    /// be non-empty and within `{1..N}`, duplicates are rejected, and the
    /// average speed must be strictly positive.
    pub fn new(speeds: Vec<f64>, types: Vec<(ServerSet, f64)>, lambda: f64) -> Result<Self> {
        let n = speeds.len();
        if n == 0 || n > 64 {
            return Err(Error::ServerCount { count: n });
        }
        for (i, &mu) in speeds.iter().enumerate() {
            if !mu.is_finite() || mu < 0.0 {
                return Err(Error::NegativeSpeed {
                    server: i + 1,
                    speed: mu,
                });
            }
        }
        let total_speed: f64 = speeds.iter().sum();
        if total_speed <= 0.0 {
            return Err(Error::ZeroAverageSpeed);
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::NonPositiveLambda { lambda });
        }

        let full = ServerSet::full(n);
        let mut seen = std::collections::HashSet::new();
        let mut sum = 0.0;
        for (i, &(set, p)) in types.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyTypeSubset { index: i });
            }
            if !set.is_subset_of(full) {
                let bad = set.iter().find(|&s| s > n).unwrap_or(0);
                return Err(Error::ServerOutOfRange {
                    server: bad,
                    count: n,
                });
            }
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::NonPositiveProbability { index: i, prob: p });
            }
            if !seen.insert(set.bits()) {
                return Err(Error::DuplicateTypeSubset {
                    subset: set.to_string(),
                });
            }
            sum += p;
        }
        if types.is_empty() || (sum - 1.0).abs() > PROB_SUM_TOLERANCE {
            return Err(Error::ProbabilitySum {
                sum,
                tol: PROB_SUM_TOLERANCE,
            });
        }

        let types = types
            .into_iter()
            .map(|(servers, p)| JobType {
                servers,
                prob: p / sum,
            })
            .collect();
        Ok(CompatibilityModel {
            speeds,
            types,
            lambda,
            total_speed,
        })
    }

    pub fn server_count(&self) -> usize {
        self.speeds.len()
    }

    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    pub fn job_types(&self) -> &[JobType] {
        &self.types
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    /// Normalized (per-server) arrival rate λ.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Average speed μ = (1/N) Σ μ_n.
    pub fn mu(&self) -> f64 {
        self.total_speed / self.server_count() as f64
    }

    /// Aggregate speed N·μ.
    pub fn total_speed(&self) -> f64 {
        self.total_speed
    }

    /// Load ρ = λ/μ.
    pub fn load(&self) -> f64 {
        self.lambda / self.mu()
    }

    /// Total arrival rate N·λ.
    pub fn total_arrival_rate(&self) -> f64 {
        self.server_count() as f64 * self.lambda
    }

    /// Arrival rate λ_S = N·λ·p_S of the given type.
    pub fn arrival_rate(&self, type_index: usize) -> f64 {
        self.total_arrival_rate() * self.types[type_index].prob
    }

    /// Replica share q_n = Σ_{S ∋ n} p_S: the probability that an arriving
    /// job places a replica on server `n` (1-based).
    pub fn replica_share(&self, server: usize) -> f64 {
        self.types
            .iter()
            .filter(|t| t.servers.contains(server))
            .map(|t| t.prob)
            .sum()
    }

    /// Average replication degree d = Σ_S p_S·|S|.
    pub fn replication_degree(&self) -> f64 {
        self.types
            .iter()
            .map(|t| t.prob * t.servers.len() as f64)
            .sum()
    }

    /// True when every job type covers exactly two servers (edges of a graph
    /// on the servers).
    pub fn is_graph_model(&self) -> bool {
        self.types.iter().all(|t| t.servers.len() == 2)
    }

    pub fn speeds_identical(&self) -> bool {
        self.speeds.iter().all(|&s| s == self.speeds[0])
    }

    /// Sum of speeds over a server subset.
    pub fn speed_of(&self, set: ServerSet) -> f64 {
        set.iter().map(|s| self.speeds[s - 1]).sum()
    }

    /// Servers with strictly positive speed.
    pub fn positive_speed_set(&self) -> ServerSet {
        let mut bits = 0u64;
        for (i, &mu) in self.speeds.iter().enumerate() {
            if mu > 0.0 {
                bits |= 1u64 << i;
            }
        }
        ServerSet::from_bits(bits)
    }

    pub fn full_set(&self) -> ServerSet {
        ServerSet::full(self.server_count())
    }

    /// Union of the servers of the given types.
    pub fn union_of(&self, type_indices: &[usize]) -> ServerSet {
        type_indices
            .iter()
            .fold(ServerSet::EMPTY, |acc, &i| acc.union(self.types[i].servers))
    }

    /// Aggregate speed μ(c_1,…,c_i) of all servers compatible with at least
    /// one of the given types (the denominator factors of the stationary
    /// weights).
    pub fn active_service_rate(&self, prefix_types: &[usize]) -> Result<f64> {
        if prefix_types.is_empty() {
            return Err(Error::EmptyPrefix);
        }
        for &i in prefix_types {
            if i >= self.types.len() {
                return Err(Error::InvalidTypeIndex {
                    index: i,
                    count: self.types.len(),
                });
            }
        }
        Ok(self.speed_of(self.union_of(prefix_types)))
    }

    /// Per-server replica counts R_n = Σ_{S ∋ n} Q_S for the given per-type
    /// counts.
    pub fn replica_counts(&self, per_type_counts: &[u64]) -> Vec<u64> {
        assert_eq!(per_type_counts.len(), self.types.len());
        let mut out = vec![0u64; self.server_count()];
        for (t, &q) in self.types.iter().zip(per_type_counts) {
            for s in t.servers.iter() {
                out[s - 1] += q;
            }
        }
        out
    }

    /// Same model with a different arrival rate.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::NonPositiveLambda { lambda });
        }
        let mut m = self.clone();
        m.lambda = lambda;
        Ok(m)
    }

    /// Same model with λ = load·μ.
    pub fn with_load(&self, load: f64) -> Result<Self> {
        self.with_lambda(load * self.mu())
    }

    /// Index of the type with the given server set, if present.
    pub fn type_index_of(&self, servers: ServerSet) -> Option<usize> {
        self.types.iter().position(|t| t.servers == servers)
    }
}

/// Ordered central-queue occupancy `c = (c_1,…,c_M)`, oldest job first. Each
/// entry is an index into the model's job types. The empty sequence is a
/// valid state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SystemState {
    types: Vec<usize>,
}

impl SystemState {
    pub fn empty() -> Self {
        SystemState { types: Vec::new() }
    }

    pub fn from_types(types: Vec<usize>) -> Self {
        SystemState { types }
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    /// Checks that every entry references an existing job type.
    pub fn validate(&self, model: &CompatibilityModel) -> Result<()> {
        for &i in &self.types {
            if i >= model.type_count() {
                return Err(Error::InvalidTypeIndex {
                    index: i,
                    count: model.type_count(),
                });
            }
        }
        Ok(())
    }
}

/// An ordered vector of distinct job types: the unit of the generating
/// function enumeration (first-occurrence order of types in a state).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeOrderVector {
    types: Vec<usize>,
}

impl TypeOrderVector {
    pub fn new(types: Vec<usize>) -> Self {
        debug_assert!({
            let mut t = types.clone();
            t.sort_unstable();
            t.dedup();
            t.len() == types.len()
        });
        TypeOrderVector { types }
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Uniform complete graph: every pair of servers is a type with probability
/// `1/C(N,2)` (the power-of-two policy).
pub fn uniform_complete(n: usize, speeds: Vec<f64>, lambda: f64) -> Result<CompatibilityModel> {
    if n < 2 {
        return Err(Error::FamilyShape {
            family: "uniform complete",
            requirement: "N >= 2",
            n,
        });
    }
    let edges = (n * (n - 1) / 2) as f64;
    let mut types = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            types.push((ServerSet::from_servers([i, j])?, 1.0 / edges));
        }
    }
    CompatibilityModel::new(speeds, types, lambda)
}

/// Ring graph with alternating edge probabilities: edge `{i, i+1 mod N}` gets
/// `ε·2/N` for even `i` and `(1−ε)·2/N` for odd `i`. `ε = 1/2` is the
/// homogeneous ring (all probabilities `1/N`).
pub fn ring(n: usize, epsilon: f64, speeds: Vec<f64>, lambda: f64) -> Result<CompatibilityModel> {
    if n < 3 || !n.is_multiple_of(2) {
        return Err(Error::FamilyShape {
            family: "ring",
            requirement: "even N >= 4",
            n,
        });
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let mut types = Vec::with_capacity(n);
    for i in 1..=n {
        let j = i % n + 1;
        let p = if i % 2 == 0 {
            epsilon * 2.0 / n as f64
        } else {
            (1.0 - epsilon) * 2.0 / n as f64
        };
        types.push((ServerSet::from_servers([i, j])?, p));
    }
    CompatibilityModel::new(speeds, types, lambda)
}

/// Sparse example: singletons `p_n = (1−ε)/N` plus the edges of the path
/// `1-2-…-N` each with probability `ε/(N−1)`. At ε = 0 the edges vanish and
/// the system is N independent single-server queues.
pub fn path_tree_example(n: usize, epsilon: f64, mu: f64, lambda: f64) -> Result<CompatibilityModel> {
    if n < 2 {
        return Err(Error::FamilyShape {
            family: "tree",
            requirement: "N >= 2",
            n,
        });
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let mut types = Vec::new();
    for i in 1..=n {
        if epsilon < 1.0 {
            types.push((ServerSet::from_servers([i])?, (1.0 - epsilon) / n as f64));
        }
    }
    if epsilon > 0.0 {
        for i in 1..n {
            types.push((
                ServerSet::from_servers([i, i + 1])?,
                epsilon / (n - 1) as f64,
            ));
        }
    }
    CompatibilityModel::new(vec![mu; n], types, lambda)
}

/// Sparse example: singletons `p_n = (N−1−ε)/(N(N−1))` plus the full set
/// `{1..N}` with probability `ε/(N−1)`.
pub fn singleton_fullset_example(
    n: usize,
    epsilon: f64,
    mu: f64,
    lambda: f64,
) -> Result<CompatibilityModel> {
    if n < 2 {
        return Err(Error::FamilyShape {
            family: "singleton+fullset",
            requirement: "N >= 2",
            n,
        });
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let mut types = Vec::new();
    for i in 1..=n {
        types.push((
            ServerSet::from_servers([i])?,
            (n as f64 - 1.0 - epsilon) / (n as f64 * (n as f64 - 1.0)),
        ));
    }
    if epsilon > 0.0 {
        types.push((ServerSet::full(n), epsilon / (n as f64 - 1.0)));
    }
    CompatibilityModel::new(vec![mu; n], types, lambda)
}

/// The worked four-server ring example: unit speeds and edge probabilities
/// p_{1,2} = 1/8, p_{2,3} = 3/8, p_{3,4} = 1/8, p_{1,4} = 3/8.
pub fn fig1_ring(lambda: f64) -> Result<CompatibilityModel> {
    CompatibilityModel::new(
        vec![1.0; 4],
        vec![
            (ServerSet::from_servers([1, 2])?, 1.0 / 8.0),
            (ServerSet::from_servers([2, 3])?, 3.0 / 8.0),
            (ServerSet::from_servers([3, 4])?, 1.0 / 8.0),
            (ServerSet::from_servers([1, 4])?, 3.0 / 8.0),
        ],
        lambda,
    )
}
