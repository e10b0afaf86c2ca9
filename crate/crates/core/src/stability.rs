//! Stability and local-stability (resource pooling) checks.
//!
//! The system is stable iff for every non-empty family of job types the total
//! arrival rate stays below the aggregate speed of the servers that can help:
//!
//! ```text
//! Nλ Σ_{S∈𝒯} p_S  <  Σ_{n ∈ ∪𝒯} μ_n        for all non-empty 𝒯 ⊆ 𝒮,
//! ```
//!
//! or equivalently, per server subset,
//!
//! ```text
//! Nλ Σ_{S⊆U} p_S  <  Σ_{n∈U} μ_n            for all non-empty U ⊆ {1..N}.
//! ```
//!
//! The local (load-independent) conditions divide out the arrival rate and
//! require strict inequality for every strict subset, which guarantees that
//! as λ ↑ μ only the global capacity constraint becomes tight:
//!
//! ```text
//! Σ_{S∈𝒯} p_S  <  (1/Nμ) Σ_{n ∈ ∪𝒯} μ_n    (∪𝒯 not covering all servers)
//! Σ_{S⊆U} p_S  <  (1/Nμ) Σ_{n∈U} μ_n        (strict non-empty U)
//! ```
//!
//! Both have equivalent rewritings over complements (`𝒯′ = 𝒮∖𝒯`,
//! `U′ = U^c`), evaluated independently here as a cross-check of the algebra.
//!
//! Zero-speed servers contribute no capacity; the subset enumerations for the
//! local conditions run over the positive-speed servers only, and a subset
//! with neither capacity nor exclusively-assigned arrivals imposes no
//! constraint. A job type whose servers all have zero speed can never be
//! served and fails every check.

use crate::error::{Error, Result};
use crate::model::{CompatibilityModel, ServerSet};

/// Dimensionless strictness threshold: a slack within this distance of zero
/// (relative to the aggregate rate Nμ) counts as "boundary", never as stable.
pub const STRICTNESS_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    /// Tight within tolerance: the strict inequalities do not cover
    /// the boundary, so it is reported as such and never as stable.
    Boundary,
    Unstable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityForm {
    /// Arrival/capacity balance per family of job types.
    TypeSubsets,
    /// Arrival/capacity balance per server subset.
    ServerSubsets,
    /// Local conditions, both primal forms combined.
    LocalPrimal,
    /// Local conditions rewritten over complements.
    LocalDual,
}

/// The subset a slack row refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsetRef {
    Types(Vec<usize>),
    Servers(ServerSet),
}

impl std::fmt::Display for SubsetRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubsetRef::Types(ts) => {
                write!(f, "types[")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
            SubsetRef::Servers(s) => write!(f, "servers{s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SlackRow {
    pub subset: SubsetRef,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs − lhs; the condition asks for slack > 0.
    pub slack: f64,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub verdict: StabilityVerdict,
    pub form: StabilityForm,
    /// The row with minimal slack.
    pub worst: SlackRow,
    /// Rows sorted by ascending slack; truncated to `keep_rows` unless a
    /// full dump was requested.
    pub rows: Vec<SlackRow>,
    /// Number of constraints evaluated (before truncation).
    pub total_constraints: usize,
    /// Absolute tolerance used to classify the verdict.
    pub tolerance: f64,
}

impl StabilityReport {
    pub fn stable(&self) -> bool {
        self.verdict == StabilityVerdict::Stable
    }

    pub fn describe_worst(&self) -> String {
        format!(
            "worst subset {} has lhs {} vs rhs {} (slack {:e})",
            self.worst.subset, self.worst.lhs, self.worst.rhs, self.worst.slack
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct StabilityOptions {
    /// Maximum number of items (job types or servers) whose power set is
    /// enumerated; 2^cap subsets.
    pub subset_cap: usize,
    /// Number of worst rows retained in the report.
    pub keep_rows: usize,
    /// Retain every row instead of the worst `keep_rows`.
    pub full_dump: bool,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        StabilityOptions {
            subset_cap: 20,
            keep_rows: 10,
            full_dump: false,
        }
    }
}

fn classify(min_slack: f64, tol: f64) -> StabilityVerdict {
    if min_slack < -tol {
        StabilityVerdict::Unstable
    } else if min_slack <= tol {
        StabilityVerdict::Boundary
    } else {
        StabilityVerdict::Stable
    }
}

/// (slack, lhs, rhs, subset payload) collected before report assembly.
struct RawRow<K> {
    slack: f64,
    lhs: f64,
    rhs: f64,
    key: K,
}

fn assemble<K>(
    form: StabilityForm,
    mut raw: Vec<RawRow<K>>,
    tol: f64,
    opts: &StabilityOptions,
    to_subset: impl Fn(&K) -> SubsetRef,
) -> StabilityReport {
    assert!(!raw.is_empty(), "no constraints evaluated");
    let total = raw.len();
    raw.sort_unstable_by(|a, b| a.slack.partial_cmp(&b.slack).unwrap());
    let keep = if opts.full_dump {
        total
    } else {
        opts.keep_rows.min(total)
    };
    let rows: Vec<SlackRow> = raw[..keep]
        .iter()
        .map(|r| SlackRow {
            subset: to_subset(&r.key),
            lhs: r.lhs,
            rhs: r.rhs,
            slack: r.slack,
        })
        .collect();
    let worst = rows[0].clone();
    StabilityReport {
        verdict: classify(worst.slack, tol),
        form,
        worst,
        rows,
        total_constraints: total,
        tolerance: tol,
    }
}

fn check_cap(items: usize, cap: usize) -> Result<()> {
    if items > cap {
        return Err(Error::SubsetCapExceeded { items, cap });
    }
    Ok(())
}

fn mask_to_type_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1u64 << i) != 0).collect()
}

/// Per-type probability sums and server unions for every subset of types,
/// indexed by type-subset bitmask.
fn type_subset_tables(model: &CompatibilityModel) -> (Vec<f64>, Vec<u64>) {
    let k = model.type_count();
    let size = 1usize << k;
    let mut psum = vec![0.0f64; size];
    let mut union = vec![0u64; size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        psum[mask] = psum[rest] + model.job_types()[low].prob;
        union[mask] = union[rest] | model.job_types()[low].servers.bits();
    }
    (psum, union)
}

/// Necessary-and-sufficient stability over families of job types.
pub fn check_stability_typesets(
    model: &CompatibilityModel,
    opts: &StabilityOptions,
) -> Result<StabilityReport> {
    check_cap(model.type_count(), opts.subset_cap)?;
    let (psum, union) = type_subset_tables(model);
    let n_lambda = model.total_arrival_rate();
    let tol = STRICTNESS_TOLERANCE * model.total_speed();

    let mut raw = Vec::with_capacity(psum.len() - 1);
    for mask in 1..psum.len() {
        let lhs = n_lambda * psum[mask];
        let rhs = model.speed_of(ServerSet::from_bits(union[mask]));
        raw.push(RawRow {
            slack: rhs - lhs,
            lhs,
            rhs,
            key: mask as u64,
        });
    }
    Ok(assemble(StabilityForm::TypeSubsets, raw, tol, opts, |&m| {
        SubsetRef::Types(mask_to_type_indices(m))
    }))
}

/// Necessary-and-sufficient stability over server subsets. Must agree in
/// verdict with [`check_stability_typesets`]. Subsets with neither capacity
/// nor exclusively-assigned arrivals are vacuous and skipped.
pub fn check_stability_serversets(
    model: &CompatibilityModel,
    opts: &StabilityOptions,
) -> Result<StabilityReport> {
    let n = model.server_count();
    check_cap(n, opts.subset_cap)?;
    let n_lambda = model.total_arrival_rate();
    let tol = STRICTNESS_TOLERANCE * model.total_speed();

    let size = 1usize << n;
    let mut speed = vec![0.0f64; size];
    // Subset-sum recurrence: each mask extends the mask without its lowest
    // set bit, so the loop reads earlier entries while filling later ones.
    #[allow(clippy::needless_range_loop)]
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        speed[mask] = speed[mask & (mask - 1)] + model.speeds()[low];
    }

    let mut raw = Vec::with_capacity(size - 1);
    for (mask, &rhs) in speed.iter().enumerate().skip(1) {
        let u_bits = mask as u64;
        let mut inside = 0.0;
        for t in model.job_types() {
            if t.servers.bits() & !u_bits == 0 {
                inside += t.prob;
            }
        }
        let lhs = n_lambda * inside;
        if lhs == 0.0 && rhs == 0.0 {
            continue;
        }
        raw.push(RawRow {
            slack: rhs - lhs,
            lhs,
            rhs,
            key: u_bits,
        });
    }
    Ok(assemble(StabilityForm::ServerSubsets, raw, tol, opts, |&m| {
        SubsetRef::Servers(ServerSet::from_bits(m))
    }))
}

/// Synthetic failing rows for job types that no positive-speed server can
/// serve; such a model cannot be stable at any load.
fn unservable_type_rows(model: &CompatibilityModel) -> Vec<RawRow<u64>> {
    let pos = model.positive_speed_set();
    model
        .job_types()
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.servers.intersects(pos))
        .map(|(i, t)| RawRow {
            slack: -t.prob,
            lhs: t.prob,
            rhs: 0.0,
            key: 1u64 << i,
        })
        .collect()
}

fn local_typeset_rows(model: &CompatibilityModel) -> Vec<RawRow<u64>> {
    let (psum, union) = type_subset_tables(model);
    let pos = model.positive_speed_set();
    let inv_total = 1.0 / model.total_speed();

    let mut raw = unservable_type_rows(model);
    for mask in 1..psum.len() {
        let u = ServerSet::from_bits(union[mask]);
        if pos.is_subset_of(u) {
            // Covers every contributing server: holds with equality for
            // 𝒯 = 𝒮 by definition of μ, excluded from the local conditions.
            continue;
        }
        let lhs = psum[mask];
        let rhs = model.speed_of(u) * inv_total;
        raw.push(RawRow {
            slack: rhs - lhs,
            lhs,
            rhs,
            key: mask as u64,
        });
    }
    raw
}

fn deposit_bits(index_mask: usize, positions: &[usize]) -> u64 {
    let mut bits = 0u64;
    let mut m = index_mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        bits |= 1u64 << positions[i];
        m &= m - 1;
    }
    bits
}

fn local_serverset_rows(model: &CompatibilityModel) -> Vec<RawRow<u64>> {
    let pos = model.positive_speed_set();
    let positions: Vec<usize> = pos.iter().map(|s| s - 1).collect();
    let kp = positions.len();
    let inv_total = 1.0 / model.total_speed();
    let eff: Vec<u64> = model
        .job_types()
        .iter()
        .map(|t| t.servers.bits() & pos.bits())
        .collect();

    let mut raw = unservable_type_rows(model);
    if kp == 0 {
        return raw;
    }
    let size = 1usize << kp;
    for index_mask in 1..size - 1 {
        let u_bits = deposit_bits(index_mask, &positions);
        let mut lhs = 0.0;
        for (t, &e) in model.job_types().iter().zip(&eff) {
            if e & !u_bits == 0 {
                lhs += t.prob;
            }
        }
        let rhs = model.speed_of(ServerSet::from_bits(u_bits)) * inv_total;
        raw.push(RawRow {
            slack: rhs - lhs,
            lhs,
            rhs,
            key: u_bits,
        });
    }
    raw
}

fn local_caps(model: &CompatibilityModel, opts: &StabilityOptions) -> Result<()> {
    check_cap(model.type_count(), opts.subset_cap)?;
    check_cap(model.positive_speed_set().len(), opts.subset_cap)
}

/// Local stability over type families only (one of the two primal forms).
pub fn local_stability_typesets(
    model: &CompatibilityModel,
    opts: &StabilityOptions,
) -> Result<StabilityReport> {
    local_caps(model, opts)?;
    let raw = local_typeset_rows(model);
    if raw.is_empty() {
        return Ok(trivial_local_report(StabilityForm::LocalPrimal, model));
    }
    Ok(assemble(
        StabilityForm::LocalPrimal,
        raw,
        STRICTNESS_TOLERANCE,
        opts,
        |&m| SubsetRef::Types(mask_to_type_indices(m)),
    ))
}

/// Local stability over server subsets only (the other primal form).
pub fn local_stability_serversets(
    model: &CompatibilityModel,
    opts: &StabilityOptions,
) -> Result<StabilityReport> {
    local_caps(model, opts)?;
    let raw = local_serverset_rows(model);
    if raw.is_empty() {
        return Ok(trivial_local_report(StabilityForm::LocalPrimal, model));
    }
    Ok(assemble(
        StabilityForm::LocalPrimal,
        raw,
        STRICTNESS_TOLERANCE,
        opts,
        |&m| SubsetRef::Servers(ServerSet::from_bits(m)),
    ))
}

/// A degenerate system (one job type covering everything, or a single
/// server) has no strict subsets to constrain: the local conditions hold
/// vacuously.
fn trivial_local_report(form: StabilityForm, model: &CompatibilityModel) -> StabilityReport {
    let row = SlackRow {
        subset: SubsetRef::Types((0..model.type_count()).collect()),
        lhs: 0.0,
        rhs: 1.0,
        slack: 1.0,
    };
    StabilityReport {
        verdict: StabilityVerdict::Stable,
        form,
        worst: row.clone(),
        rows: vec![row],
        total_constraints: 0,
        tolerance: STRICTNESS_TOLERANCE,
    }
}

enum RowKey {
    Types(u64),
    Servers(u64),
}

/// Local stability: evaluates both primal forms; their verdicts agree up to
/// floating point and the combined worst row decides.
pub fn check_local_stability(
    model: &CompatibilityModel,
    opts: &StabilityOptions,
) -> Result<StabilityReport> {
    local_caps(model, opts)?;
    let mut raw: Vec<RawRow<RowKey>> = local_typeset_rows(model)
        .into_iter()
        .map(|r| RawRow {
            slack: r.slack,
            lhs: r.lhs,
            rhs: r.rhs,
            key: RowKey::Types(r.key),
        })
        .collect();
    raw.extend(local_serverset_rows(model).into_iter().map(|r| RawRow {
        slack: r.slack,
        lhs: r.lhs,
        rhs: r.rhs,
        key: RowKey::Servers(r.key),
    }));
    if raw.is_empty() {
        return Ok(trivial_local_report(StabilityForm::LocalPrimal, model));
    }
    Ok(assemble(
        StabilityForm::LocalPrimal,
        raw,
        STRICTNESS_TOLERANCE,
        opts,
        |k| match k {
            RowKey::Types(m) => SubsetRef::Types(mask_to_type_indices(*m)),
            RowKey::Servers(m) => SubsetRef::Servers(ServerSet::from_bits(*m)),
        },
    ))
}

/// Local stability through the complement rewritings: for every non-empty
/// strict `𝒯′` the capacity reserved to servers that only `𝒯 = 𝒮∖𝒯′` cannot
/// use must stay below the arrival share of `𝒯′`, and for every non-empty
/// strict `U′` the capacity of `U′` must stay below the arrival share of
/// types touching it. Verdicts must match [`check_local_stability`].
pub fn local_stability_dual_forms(
    model: &CompatibilityModel,
    opts: &StabilityOptions,
) -> Result<StabilityReport> {
    local_caps(model, opts)?;
    let n = model.server_count();
    let k = model.type_count();
    let inv_total = 1.0 / model.total_speed();
    let (psum, union) = type_subset_tables(model);
    let full_types = (psum.len() - 1) as u64;

    let mut raw: Vec<RawRow<RowKey>> = unservable_type_rows(model)
        .into_iter()
        .map(|r| RawRow {
            slack: r.slack,
            lhs: r.lhs,
            rhs: r.rhs,
            key: RowKey::Types(r.key),
        })
        .collect();

    // 𝒯′-form over non-empty strict complements.
    if k >= 2 {
        for tprime in 1..full_types {
            let t_mask = (!tprime & full_types) as usize;
            let uncovered = ServerSet::from_bits(union[t_mask]).complement_within(n);
            let lhs = model.speed_of(uncovered) * inv_total;
            let rhs = psum[tprime as usize];
            raw.push(RawRow {
                slack: rhs - lhs,
                lhs,
                rhs,
                key: RowKey::Types(tprime),
            });
        }
    }

    // U′-form over non-empty strict subsets of the positive-speed servers.
    let pos = model.positive_speed_set();
    let positions: Vec<usize> = pos.iter().map(|s| s - 1).collect();
    let kp = positions.len();
    if kp >= 1 {
        let size = 1usize << kp;
        for index_mask in 1..size - 1 {
            let u_bits = deposit_bits(index_mask, &positions);
            let lhs = model.speed_of(ServerSet::from_bits(u_bits)) * inv_total;
            let mut rhs = 0.0;
            for t in model.job_types() {
                if t.servers.bits() & u_bits != 0 {
                    rhs += t.prob;
                }
            }
            raw.push(RawRow {
                slack: rhs - lhs,
                lhs,
                rhs,
                key: RowKey::Servers(u_bits),
            });
        }
    }

    if raw.is_empty() {
        return Ok(trivial_local_report(StabilityForm::LocalDual, model));
    }
    Ok(assemble(
        StabilityForm::LocalDual,
        raw,
        STRICTNESS_TOLERANCE,
        opts,
        |key| match key {
            RowKey::Types(m) => SubsetRef::Types(mask_to_type_indices(*m)),
            RowKey::Servers(m) => SubsetRef::Servers(ServerSet::from_bits(*m)),
        },
    ))
}
