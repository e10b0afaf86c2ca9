//! Exact stationary analytics.
//!
//! Under the stability conditions the central-queue occupancy has the
//! product-form stationary law
//!
//! ```text
//! π(c_1,…,c_M) = C · ∏_{i=1}^M  Nλ p_{c_i} / μ(c_1,…,c_i),
//! ```
//!
//! with `μ(c_1,…,c_i)` the aggregate speed of the servers compatible with at
//! least one of the first `i` jobs. Summing π over all states, grouped by the
//! order in which distinct types first occur, gives the joint probability
//! generating function
//!
//! ```text
//! E[∏ z_S^{Q_S}] = f(z)/f(1),
//! f(z) = 1 + Σ_m Σ_{[S_1..S_m]} ∏_j (Nλ p_{S_j} z_{S_j} / μ(S_1..S_j))
//!                               ∏_j (1 − (Nλ/μ(S_1..S_j)) Σ_{i≤j} p_{S_i} z_{S_i})^{-1},
//! ```
//!
//! where the inner sum runs over every ordered vector of `m` distinct job
//! types. The normalization constant is `C = 1/f(1) = P{system empty}`.
//!
//! Terms are accumulated in descending magnitude with compensated summation:
//! near saturation the vectors containing all job types dominate and naive
//! summation loses precision.

use crate::error::{Error, Result};
use crate::model::{CompatibilityModel, ServerSet, SystemState, TypeOrderVector};
use crate::numeric::{compensated_sum_desc, KahanSum};
use crate::stability::{check_stability_typesets, StabilityOptions};

/// Geometric factors closer to zero than this are reported as singular.
pub const SINGULAR_FACTOR_TOLERANCE: f64 = 1e-14;

/// Step for the central-difference derivative of the generating function.
pub const MEAN_DIFF_STEP: f64 = 1e-6;

#[derive(Clone, Copy, Debug)]
pub struct PgfOptions {
    /// Maximum number of job types for the ordered-vector enumeration
    /// (Σ_m m!·C(k,m) terms; 109,600 at k = 8).
    pub type_cap: usize,
}

impl Default for PgfOptions {
    fn default() -> Self {
        PgfOptions { type_cap: 8 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OccupancyOptions {
    /// Maximum number of states visited by the exact per-level summation.
    pub term_budget: u128,
}

impl Default for OccupancyOptions {
    fn default() -> Self {
        OccupancyOptions {
            term_budget: 100_000_000,
        }
    }
}

/// Result of evaluating the normalized generating function.
#[derive(Clone, Debug)]
pub struct PgfEvaluation {
    /// f(z)/f(1).
    pub value: f64,
    /// The argument vector, one entry per job type.
    pub z: Vec<f64>,
    /// Normalized arrival rate of the evaluated model.
    pub lambda: f64,
    /// Number of ordered vectors summed (including the empty one).
    pub term_count: u64,
}

/// Unnormalized stationary weight of a state: `π(c)/C`. The empty state has
/// weight 1. This is a formal product; stability is not required.
pub fn stationary_weight(model: &CompatibilityModel, state: &SystemState) -> f64 {
    let n_lambda = model.total_arrival_rate();
    let mut union = ServerSet::EMPTY;
    let mut w = 1.0;
    for &t in state.types() {
        let ty = &model.job_types()[t];
        union = union.union(ty.servers);
        w *= n_lambda * ty.prob / model.speed_of(union);
    }
    w
}

/// Number of ordered vectors of distinct types: Σ_{m=1..k} m!·C(k,m).
fn ordered_vector_count(k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut falling: u128 = 1;
    for m in 1..=k {
        falling = falling.saturating_mul((k - m + 1) as u128);
        total = total.saturating_add(falling);
    }
    total
}

/// Iterator over every ordered vector of distinct job types, for
/// m = 1..=k, in lexicographic order by (m, indices).
#[derive(Debug)]
pub struct TypeOrderIter {
    k: usize,
    m: usize,
    seq: Vec<usize>,
    fresh: bool,
    done: bool,
}

impl TypeOrderIter {
    fn new(k: usize) -> Self {
        TypeOrderIter {
            k,
            m: 1,
            seq: vec![0],
            fresh: true,
            done: k == 0,
        }
    }

    /// Fills positions `from..m` with the smallest unused indices, ascending.
    fn refill(&mut self, from: usize) {
        let mut used = 0u64;
        for &s in &self.seq[..from] {
            used |= 1 << s;
        }
        let mut next = 0;
        for p in from..self.m {
            while used & (1 << next) != 0 {
                next += 1;
            }
            self.seq[p] = next;
            used |= 1 << next;
            next += 1;
        }
    }

    fn advance(&mut self) -> bool {
        for pos in (0..self.m).rev() {
            let mut used = 0u64;
            for &s in &self.seq[..pos] {
                used |= 1 << s;
            }
            for cand in self.seq[pos] + 1..self.k {
                if used & (1 << cand) == 0 {
                    self.seq[pos] = cand;
                    self.refill(pos + 1);
                    return true;
                }
            }
        }
        self.m += 1;
        if self.m > self.k {
            self.done = true;
            return false;
        }
        self.seq = (0..self.m).collect();
        true
    }
}

impl Iterator for TypeOrderIter {
    type Item = TypeOrderVector;

    fn next(&mut self) -> Option<TypeOrderVector> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            return None;
        }
        Some(TypeOrderVector::new(self.seq.clone()))
    }
}

/// Streams every ordered vector of distinct job types, each exactly once.
pub fn enumerate_type_orders(
    model: &CompatibilityModel,
    opts: &PgfOptions,
) -> Result<TypeOrderIter> {
    let k = model.type_count();
    if k > opts.type_cap {
        return Err(Error::TypeCapExceeded {
            types: k,
            cap: opts.type_cap,
            terms: ordered_vector_count(k),
        });
    }
    Ok(TypeOrderIter::new(k))
}

/// Evaluates f(z) by the ordered-vector sum. Assumes the model is stable;
/// `z` entries may exceed 1 slightly (used by the derivative probes) as long
/// as every geometric factor stays away from zero.
fn evaluate_f(model: &CompatibilityModel, z: &[f64], opts: &PgfOptions) -> Result<f64> {
    let n_lambda = model.total_arrival_rate();
    let types = model.job_types();
    let mut terms: Vec<f64> = Vec::with_capacity(ordered_vector_count(model.type_count()).min(1 << 20) as usize + 1);
    terms.push(1.0);

    for vec in enumerate_type_orders(model, opts)? {
        let mut union = ServerSet::EMPTY;
        let mut pz_sum = 0.0;
        let mut term = 1.0;
        for &t in vec.types() {
            let ty = &types[t];
            union = union.union(ty.servers);
            let mu_prefix = model.speed_of(union);
            pz_sum += ty.prob * z[t];
            let factor = 1.0 - n_lambda / mu_prefix * pz_sum;
            if factor.abs() < SINGULAR_FACTOR_TOLERANCE {
                return Err(Error::SingularPgfFactor {
                    factor,
                    prefix: format!("{:?}", vec.types()),
                });
            }
            term *= n_lambda * ty.prob * z[t] / mu_prefix / factor;
        }
        terms.push(term);
    }
    Ok(compensated_sum_desc(&mut terms))
}

/// Exact evaluation stays strictly away from saturation; the analytic limits
/// live in the asymptotics module.
pub const MAX_EXACT_LOAD: f64 = 1.0 - 1e-6;

fn require_stable(model: &CompatibilityModel) -> Result<()> {
    let report = check_stability_typesets(model, &StabilityOptions::default())?;
    if !report.stable() {
        return Err(Error::Unstable {
            detail: report.describe_worst(),
        });
    }
    if model.load() > MAX_EXACT_LOAD {
        return Err(Error::LoadOutOfRange {
            load: model.load(),
            range: "(0, 1 - 1e-6]",
        });
    }
    Ok(())
}

/// Joint probability generating function E[∏ z_S^{Q_S}] = f(z)/f(1).
pub fn pgf(model: &CompatibilityModel, z: &[f64], opts: &PgfOptions) -> Result<PgfEvaluation> {
    if z.len() != model.type_count() {
        return Err(Error::ZLength {
            expected: model.type_count(),
            got: z.len(),
        });
    }
    for (i, &v) in z.iter().enumerate() {
        if v.is_nan() || v.abs() > 1.0 {
            return Err(Error::ZOutOfRange { index: i, value: v });
        }
    }
    require_stable(model)?;
    let f1 = evaluate_f(model, &vec![1.0; z.len()], opts)?;
    let fz = evaluate_f(model, z, opts)?;
    Ok(PgfEvaluation {
        value: fz / f1,
        z: z.to_vec(),
        lambda: model.lambda(),
        term_count: 1 + ordered_vector_count(model.type_count()) as u64,
    })
}

/// Normalization constant C = 1/f(1) = P{system empty}.
pub fn normalization_constant(model: &CompatibilityModel, opts: &PgfOptions) -> Result<f64> {
    require_stable(model)?;
    Ok(1.0 / evaluate_f(model, &vec![1.0; model.type_count()], opts)?)
}

/// Exact P{Q_total = q} for q = 0..=q_max, by summing the stationary weight
/// of every state in 𝒮^q. The number of visited states is capped by the
/// options' term budget.
pub fn occupancy_distribution(
    model: &CompatibilityModel,
    q_max: usize,
    opts: &OccupancyOptions,
) -> Result<Vec<f64>> {
    require_stable(model)?;
    let k = model.type_count() as u128;
    let mut nodes: u128 = 0;
    let mut level: u128 = 1;
    for _ in 1..=q_max {
        level = level.saturating_mul(k);
        nodes = nodes.saturating_add(level);
    }
    if nodes > opts.term_budget {
        return Err(Error::TermBudgetExceeded {
            required: nodes,
            budget: opts.term_budget,
        });
    }

    let levels = occupancy_level_sums(model, q_max)?;
    let c = auto_normalization(model)?;
    Ok(levels.into_iter().map(|g| c * g).collect())
}

/// Per-level sums Σ_{c ∈ 𝒮^q} π(c)/C by depth-first enumeration with
/// compensated per-level accumulation.
fn occupancy_level_sums(model: &CompatibilityModel, q_max: usize) -> Result<Vec<f64>> {
    let n = model.server_count();
    if n > 20 {
        return Err(Error::SubsetCapExceeded { items: n, cap: 20 });
    }
    let size = 1usize << n;
    let mut inv_speed = vec![0.0f64; size];
    for (mask, slot) in inv_speed.iter_mut().enumerate().skip(1) {
        let speed = model.speed_of(ServerSet::from_bits(mask as u64));
        *slot = if speed > 0.0 {
            model.total_arrival_rate() / speed
        } else {
            f64::INFINITY
        };
    }
    let k = model.type_count();
    let probs: Vec<f64> = model.job_types().iter().map(|t| t.prob).collect();
    let bits: Vec<u64> = model.job_types().iter().map(|t| t.servers.bits()).collect();

    let mut levels = vec![KahanSum::default(); q_max + 1];
    levels[0].add(1.0);
    if q_max == 0 {
        return Ok(levels.iter().map(|a| a.value()).collect());
    }

    let mut child = vec![0usize; q_max + 1];
    let mut mask = vec![0u64; q_max + 1];
    let mut weight = vec![0.0f64; q_max + 1];
    weight[0] = 1.0;
    let mut d = 0usize;
    loop {
        if child[d] < k {
            let t = child[d];
            child[d] += 1;
            let m2 = mask[d] | bits[t];
            let w2 = weight[d] * probs[t] * inv_speed[m2 as usize];
            levels[d + 1].add(w2);
            if d + 1 < q_max {
                d += 1;
                child[d] = 0;
                mask[d] = m2;
                weight[d] = w2;
            }
        } else if d == 0 {
            break;
        } else {
            d -= 1;
        }
    }
    Ok(levels.iter().map(|a| a.value()).collect())
}

/// Exact distribution of the total number of jobs, grouping states by the
/// set of servers their types cover (the stationary weight of a state
/// depends on its type sequence only through these running unions). Much
/// cheaper than the per-state summation and exact for any depth.
pub fn total_queue_distribution(model: &CompatibilityModel, q_max: usize) -> Result<Vec<f64>> {
    require_stable(model)?;
    let levels = union_level_sums(model, q_max)?;
    let c = auto_normalization(model)?;
    Ok(levels.into_iter().map(|g| c * g).collect())
}

fn union_level_sums(model: &CompatibilityModel, q_max: usize) -> Result<Vec<f64>> {
    let n = model.server_count();
    if n > 20 {
        return Err(Error::SubsetCapExceeded { items: n, cap: 20 });
    }
    let size = 1usize << n;
    let mut inv_speed = vec![0.0f64; size];
    for (mask, slot) in inv_speed.iter_mut().enumerate().skip(1) {
        let speed = model.speed_of(ServerSet::from_bits(mask as u64));
        *slot = if speed > 0.0 {
            model.total_arrival_rate() / speed
        } else {
            f64::INFINITY
        };
    }
    let bits: Vec<usize> = model
        .job_types()
        .iter()
        .map(|t| t.servers.bits() as usize)
        .collect();
    let probs: Vec<f64> = model.job_types().iter().map(|t| t.prob).collect();

    let mut cur = vec![0.0f64; size];
    let mut next = vec![0.0f64; size];
    cur[0] = 1.0;
    let mut out = Vec::with_capacity(q_max + 1);
    out.push(1.0);
    for _ in 1..=q_max {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (mask, &w) in cur.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for (t, &tb) in bits.iter().enumerate() {
                let m2 = mask | tb;
                next[m2] += w * probs[t] * inv_speed[m2];
            }
        }
        std::mem::swap(&mut cur, &mut next);
        out.push(cur.iter().sum());
    }
    Ok(out)
}

/// C via the generating function when the type count is within the cap,
/// otherwise by summing the union-grouped level masses with a geometric tail
/// correction.
fn auto_normalization(model: &CompatibilityModel) -> Result<f64> {
    let opts = PgfOptions::default();
    if model.type_count() <= opts.type_cap {
        return Ok(1.0 / evaluate_f(model, &vec![1.0; model.type_count()], &opts)?);
    }
    // The level masses are positive mixtures of geometric sequences; once the
    // ratio settles, the remaining tail is summed in closed form.
    let n = model.server_count();
    if n > 20 {
        return Err(Error::SubsetCapExceeded { items: n, cap: 20 });
    }
    let mut q = 64usize;
    let mut last_ratio = 0.0;
    loop {
        let levels = union_level_sums(model, q)?;
        let mut cum = KahanSum::default();
        for &g in &levels[..levels.len() - 1] {
            cum.add(g);
        }
        let g_last = levels[levels.len() - 1];
        let ratio = g_last / levels[levels.len() - 2];
        if ratio < 1.0 && (ratio - last_ratio).abs() < 1e-12 {
            let total = cum.value() + g_last / (1.0 - ratio);
            return Ok(1.0 / total);
        }
        last_ratio = ratio;
        q *= 2;
        if q > 1 << 22 {
            return Err(Error::TermBudgetExceeded {
                required: q as u128,
                budget: 1 << 22,
            });
        }
    }
}

/// Per-type stationary means E[Q_S] = ∂G/∂z_S at z = 1, by Richardson-
/// extrapolated central differences with step [`MEAN_DIFF_STEP`] on the
/// normalized generating function.
pub fn mean_per_type(model: &CompatibilityModel, opts: &PgfOptions) -> Result<Vec<f64>> {
    require_stable(model)?;
    let k = model.type_count();
    let f1 = evaluate_f(model, &vec![1.0; k], opts)?;
    let h = MEAN_DIFF_STEP;
    let mut means = Vec::with_capacity(k);
    let mut z = vec![1.0; k];
    for t in 0..k {
        let mut central = |step: f64| -> Result<f64> {
            z[t] = 1.0 + step;
            let up = evaluate_f(model, &z, opts)? / f1;
            z[t] = 1.0 - step;
            let down = evaluate_f(model, &z, opts)? / f1;
            z[t] = 1.0;
            Ok((up - down) / (2.0 * step))
        };
        let d_h = central(h)?;
        let d_h2 = central(h / 2.0)?;
        means.push((4.0 * d_h2 - d_h) / 3.0);
    }
    Ok(means)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{fig1_ring, uniform_complete, ring, CompatibilityModel, ServerSet};

    fn mm1(lambda: f64) -> CompatibilityModel {
        CompatibilityModel::new(
            vec![1.0],
            vec![(ServerSet::from_servers([1]).unwrap(), 1.0)],
            lambda,
        )
        .unwrap()
    }

    #[test]
    fn empty_state_weight_is_one() {
        let m = fig1_ring(0.7).unwrap();
        assert_eq!(stationary_weight(&m, &SystemState::empty()), 1.0);
    }

    #[test]
    fn worked_example_weight() {
        // State ({1,2},{1,4},{2,3},{1,4}) at unit speeds:
        // (4λ)^4 · (p12/2)(p14/3)(p23/4)(p14/4).
        let lambda = 0.7;
        let m = fig1_ring(lambda).unwrap();
        let idx = |a: usize, b: usize| {
            m.type_index_of(ServerSet::from_servers([a, b]).unwrap())
                .unwrap()
        };
        let state = SystemState::from_types(vec![idx(1, 2), idx(1, 4), idx(2, 3), idx(1, 4)]);
        let expected = (4.0f64 * lambda).powi(4)
            * (0.125 / 2.0)
            * (0.375 / 3.0)
            * (0.375 / 4.0)
            * (0.375 / 4.0);
        let got = stationary_weight(&m, &state);
        assert!((got - expected).abs() < 1e-15 * expected.abs());
    }

    #[test]
    fn single_type_weight_is_load_power() {
        let m = mm1(0.6);
        for q in 0..6 {
            let state = SystemState::from_types(vec![0; q]);
            let w = stationary_weight(&m, &state);
            assert!((w - 0.6f64.powi(q as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn adjacent_equal_types_commute_and_distinct_types_do_not() {
        let m = fig1_ring(0.7).unwrap();
        let a = SystemState::from_types(vec![1, 1, 3]);
        let b = SystemState::from_types(vec![1, 1, 3]);
        assert_eq!(stationary_weight(&m, &a), stationary_weight(&m, &b));
        // Order matters across distinct types.
        let c = SystemState::from_types(vec![0, 1, 3]);
        let d = SystemState::from_types(vec![1, 0, 3]);
        assert_eq!(
            stationary_weight(&m, &c),
            stationary_weight(&m, &d),
        );
        let e = SystemState::from_types(vec![0, 2, 1]);
        let f = SystemState::from_types(vec![0, 1, 2]);
        assert_ne!(stationary_weight(&m, &e), stationary_weight(&m, &f));
    }

    #[test]
    fn type_order_counts() {
        let two = CompatibilityModel::new(
            vec![1.0, 1.0],
            vec![
                (ServerSet::from_servers([1]).unwrap(), 0.5),
                (ServerSet::from_servers([2]).unwrap(), 0.5),
            ],
            0.3,
        )
        .unwrap();
        let vecs: Vec<_> = enumerate_type_orders(&two, &PgfOptions::default())
            .unwrap()
            .collect();
        assert_eq!(vecs.len(), 4);
        let seqs: Vec<Vec<usize>> = vecs.iter().map(|v| v.types().to_vec()).collect();
        assert_eq!(seqs, vec![vec![0], vec![1], vec![0, 1], vec![1, 0]]);

        let three = uniform_complete(3, vec![1.0; 3], 0.3).unwrap();
        assert_eq!(
            enumerate_type_orders(&three, &PgfOptions::default())
                .unwrap()
                .count(),
            15
        );

        let four = fig1_ring(0.3).unwrap();
        assert_eq!(
            enumerate_type_orders(&four, &PgfOptions::default())
                .unwrap()
                .count(),
            64
        );
    }

    #[test]
    fn type_order_vectors_unique_and_distinct_entries() {
        let m = fig1_ring(0.3).unwrap();
        let mut seen = std::collections::HashSet::new();
        for v in enumerate_type_orders(&m, &PgfOptions::default()).unwrap() {
            let mut s = v.types().to_vec();
            assert!(seen.insert(s.clone()));
            s.sort_unstable();
            s.dedup();
            assert_eq!(s.len(), v.len());
        }
    }

    #[test]
    fn cap_error_names_term_count() {
        let m = uniform_complete(5, vec![1.0; 5], 0.3).unwrap(); // 10 types
        let err = enumerate_type_orders(&m, &PgfOptions::default()).unwrap_err();
        match err {
            Error::TypeCapExceeded { types, terms, .. } => {
                assert_eq!(types, 10);
                // Σ_m m!·C(10,m) = 9,864,100.
                assert_eq!(terms, 9_864_100);
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn pgf_is_one_at_unit_argument() {
        let m = fig1_ring(0.9).unwrap();
        let eval = pgf(&m, &[1.0; 4], &PgfOptions::default()).unwrap();
        assert!((eval.value - 1.0).abs() < 1e-12);
        assert_eq!(eval.term_count, 65);
    }

    #[test]
    fn mm1_pgf_closed_form() {
        let rho = 0.8;
        let m = mm1(rho);
        for z in [0.0, 0.25, 0.5, 0.9, -0.5, -1.0] {
            let eval = pgf(&m, &[z], &PgfOptions::default()).unwrap();
            let expected = (1.0 - rho) / (1.0 - rho * z);
            assert!(
                (eval.value - expected).abs() < 1e-14,
                "z={z}: {} vs {expected}",
                eval.value
            );
        }
    }

    #[test]
    fn pgf_rejects_unstable_model() {
        let m = mm1(1.1);
        let err = pgf(&m, &[0.5], &PgfOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Unstable { .. }));
    }

    #[test]
    fn pgf_rejects_bad_arguments() {
        let m = mm1(0.5);
        assert!(matches!(
            pgf(&m, &[0.5, 0.5], &PgfOptions::default()).unwrap_err(),
            Error::ZLength { .. }
        ));
        assert!(matches!(
            pgf(&m, &[1.5], &PgfOptions::default()).unwrap_err(),
            Error::ZOutOfRange { .. }
        ));
    }

    #[test]
    fn normalization_constants_match_closed_forms() {
        let m = mm1(0.37);
        let c = normalization_constant(&m, &PgfOptions::default()).unwrap();
        assert!((c - 0.63).abs() < 1e-14);

        // Uniform complete, N = 4, λ/μ = 0.8: C = (1/9)(1−ρ)(3−ρ)(3−2ρ).
        let complete = uniform_complete(4, vec![1.0; 4], 0.8).unwrap();
        let c = normalization_constant(&complete, &PgfOptions::default()).unwrap();
        let expected = (1.0 / 9.0) * 0.2 * 2.2 * 1.4;
        assert!((c - expected).abs() < 1e-12, "{c} vs {expected}");

        // Homogeneous ring, N = 4, λ/μ = 0.8: C = (1−ρ)(2−ρ)(3−2ρ)/(6−ρ).
        let hom = ring(4, 0.5, vec![1.0; 4], 0.8).unwrap();
        let c = normalization_constant(&hom, &PgfOptions::default()).unwrap();
        let expected = 0.2 * 1.2 * 1.4 / 5.2;
        assert!((c - expected).abs() < 1e-12, "{c} vs {expected}");
    }

    #[test]
    fn pgf_at_zero_equals_empty_probability() {
        let m = uniform_complete(4, vec![1.0; 4], 0.8).unwrap();
        let eval = pgf(&m, &[0.0; 6], &PgfOptions::default()).unwrap();
        let c = normalization_constant(&m, &PgfOptions::default()).unwrap();
        assert!((eval.value - c).abs() < 1e-14);
        assert!((eval.value - (1.0 / 9.0) * 0.2 * 2.2 * 1.4).abs() < 1e-12);
    }

    #[test]
    fn occupancy_single_type_is_geometric() {
        let rho = 0.55;
        let m = mm1(rho);
        let probs = occupancy_distribution(&m, 20, &OccupancyOptions::default()).unwrap();
        for (q, &p) in probs.iter().enumerate() {
            let expected = (1.0 - rho) * rho.powi(q as i32);
            assert!((p - expected).abs() < 1e-14, "q={q}");
        }
    }

    #[test]
    fn occupancy_head_matches_tail_goldens() {
        let m = uniform_complete(4, vec![1.0; 4], 0.8).unwrap();
        let probs = occupancy_distribution(&m, 4, &OccupancyOptions::default()).unwrap();
        let c = normalization_constant(&m, &PgfOptions::default()).unwrap();
        assert!((probs[0] - c).abs() < 1e-14);
        // P{Q >= 1} from the occupancy data.
        let tail1 = 1.0 - probs[0];
        assert!((tail1 - 0.931555555555556).abs() < 1e-12);
        let tail2 = 1.0 - probs[0] - probs[1];
        assert!((tail2 - 0.822044444444444).abs() < 1e-12);
    }

    #[test]
    fn occupancy_budget_error() {
        let m = uniform_complete(4, vec![1.0; 4], 0.8).unwrap();
        let err = occupancy_distribution(&m, 30, &OccupancyOptions { term_budget: 1000 })
            .unwrap_err();
        assert!(matches!(err, Error::TermBudgetExceeded { .. }));
    }

    #[test]
    fn union_grouping_matches_per_state_enumeration() {
        for model in [
            fig1_ring(0.7).unwrap(),
            uniform_complete(4, vec![1.0; 4], 0.8).unwrap(),
            ring(4, 0.9, vec![1.0; 4], 0.5).unwrap(),
            CompatibilityModel::new(
                vec![2.0, 1.0, 0.5],
                vec![
                    (ServerSet::from_servers([1, 2]).unwrap(), 0.3),
                    (ServerSet::from_servers([3]).unwrap(), 0.2),
                    (ServerSet::from_servers([1, 3]).unwrap(), 0.5),
                ],
                0.4,
            )
            .unwrap(),
        ] {
            let brute = occupancy_distribution(&model, 8, &OccupancyOptions::default()).unwrap();
            let grouped = total_queue_distribution(&model, 8).unwrap();
            for q in 0..=8 {
                assert!(
                    (brute[q] - grouped[q]).abs() < 1e-13,
                    "q={q}: {} vs {}",
                    brute[q],
                    grouped[q]
                );
            }
        }
    }

    #[test]
    fn mean_per_type_matches_mm1() {
        for rho in [0.3, 0.8, 0.95] {
            let m = mm1(rho);
            let means = mean_per_type(&m, &PgfOptions::default()).unwrap();
            let expected = rho / (1.0 - rho);
            assert!(
                (means[0] - expected).abs() < 1e-7 * expected,
                "rho={rho}: {} vs {expected}",
                means[0]
            );
        }
    }

    #[test]
    fn mean_per_type_symmetry() {
        let m = uniform_complete(4, vec![1.0; 4], 0.8).unwrap();
        let means = mean_per_type(&m, &PgfOptions::default()).unwrap();
        for &v in &means {
            assert!((v - means[0]).abs() < 1e-9);
        }
    }
}
