//! Limit-regime analytics: heavy-traffic state-space collapse probes,
//! light-traffic occupancy coefficients, exact four-server closed forms and
//! stochastic-dominance checks.
//!
//! Heavy traffic: when the local stability conditions hold, the scaled
//! per-type occupancy `(1−λ/μ)(Q_S)` converges to `Exp(1)·(p_S)` as λ ↑ μ;
//! its transform `E[exp(−(1−λ/μ) Σ t_S Q_S)]` converges to
//! `(1 + Σ p_S t_S)^{-1}`, the per-server replica counts collapse onto
//! `q_n = Σ_{S∋n} p_S`, and scaled sojourn/waiting times converge to
//! `Exp(Nμ)` scaled by `1/(Nμ)`.
//!
//! Light traffic (graph models, identical speeds): the occupancy satisfies
//! `P{Q = q} = P{Q = 0}·α_q·(Nλ/μ)^q` with the load-free coefficient
//!
//! ```text
//! α_q = Σ_{(c_1..c_q) ∈ 𝒮^q} ∏_i p_{c_i} / |c_1 ∪ … ∪ c_i|,
//! ```
//!
//! so the ratios α*_q/α_q(P) against the uniform complete graph order the
//! replication graphs as the load vanishes. For four servers the total-queue
//! distributions of the complete graph and the (heterogeneous) ring have
//! closed forms as mixtures of geometric terms, used as oracles here.

use crate::error::{Error, Result};
use crate::model::CompatibilityModel;
use crate::numeric::KahanSum;
use crate::product_form::{
    mean_per_type, pgf, total_queue_distribution, OccupancyOptions, PgfOptions,
};
use crate::simulator::{run, SimulationEstimate, SimulationParams};
use crate::stability::{check_local_stability, StabilityOptions};

pub use crate::product_form::MAX_EXACT_LOAD;

/// Width of the window around the removable coefficient singularities of the
/// ring closed form (ε = 1/3, 2/3) where the confluent evaluation is used.
pub const CONFLUENT_WINDOW: f64 = 1e-4;

/// Exact value of the scaled moment generating function
/// `E[exp(−(1−λ/μ) Σ t_S Q_S)]`, evaluated through the generating function at
/// `z_S = exp(−(1−λ/μ)t_S)`. Requires the local stability conditions.
pub fn scaled_mgf(model: &CompatibilityModel, t: &[f64], opts: &PgfOptions) -> Result<f64> {
    if t.len() != model.type_count() {
        return Err(Error::ZLength {
            expected: model.type_count(),
            got: t.len(),
        });
    }
    for (i, &v) in t.iter().enumerate() {
        if v.is_nan() || v < 0.0 {
            return Err(Error::NegativeTestPoint { index: i, value: v });
        }
    }
    require_local_stability(model)?;
    let load = model.load();
    if load > MAX_EXACT_LOAD {
        return Err(Error::LoadOutOfRange {
            load,
            range: "(0, 1 - 1e-6]",
        });
    }
    let z: Vec<f64> = t.iter().map(|&ti| (-(1.0 - load) * ti).exp()).collect();
    Ok(pgf(model, &z, opts)?.value)
}

fn require_local_stability(model: &CompatibilityModel) -> Result<()> {
    let report = check_local_stability(model, &StabilityOptions::default())?;
    if !report.stable() {
        return Err(Error::LocalStabilityRequired {
            detail: report.describe_worst(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct MgfRow {
    pub load: f64,
    pub value: f64,
    pub rel_error: f64,
}

/// Scaled-MGF values along a load grid against the collapse limit
/// `(1 + Σ p_S t_S)^{-1}`.
#[derive(Clone, Debug)]
pub struct HeavyTrafficProbe {
    pub t: Vec<f64>,
    pub limit: f64,
    pub rows: Vec<MgfRow>,
}

pub fn heavy_traffic_probe(
    model: &CompatibilityModel,
    loads: &[f64],
    t: &[f64],
    opts: &PgfOptions,
) -> Result<HeavyTrafficProbe> {
    let weighted: f64 = model
        .job_types()
        .iter()
        .zip(t)
        .map(|(ty, &ti)| ty.prob * ti)
        .sum();
    let limit = 1.0 / (1.0 + weighted);
    let mut rows = Vec::with_capacity(loads.len());
    for &load in loads {
        let m = model.with_load(load)?;
        let value = scaled_mgf(&m, t, opts)?;
        rows.push(MgfRow {
            load,
            value,
            rel_error: (value - limit).abs() / limit,
        });
    }
    Ok(HeavyTrafficProbe {
        t: t.to_vec(),
        limit,
        rows,
    })
}

#[derive(Clone, Debug)]
pub struct ScaledMeanRow {
    pub index: usize,
    pub scaled_mean: f64,
    pub target: f64,
    pub rel_err: f64,
}

#[derive(Clone, Debug)]
pub struct CollapseRow {
    pub load: f64,
    /// (1−λ/μ)E[Q_S] against p_S.
    pub per_type: Vec<ScaledMeanRow>,
    /// (1−λ/μ)E[R_n] against q_n.
    pub per_server: Vec<ScaledMeanRow>,
    /// Kolmogorov distance of the scaled total queue to the unit-mean
    /// exponential limit, taken at the lattice points (1−λ/μ)q of the scaled
    /// variable (which is discrete at any fixed load).
    pub ks_to_exp1: f64,
}

#[derive(Clone, Debug)]
pub struct CollapseReport {
    pub rows: Vec<CollapseRow>,
}

pub fn collapse_report(
    model: &CompatibilityModel,
    loads: &[f64],
    opts: &PgfOptions,
) -> Result<CollapseReport> {
    require_local_stability(model)?;
    let mut rows = Vec::with_capacity(loads.len());
    for &load in loads {
        if load > MAX_EXACT_LOAD {
            return Err(Error::LoadOutOfRange {
                load,
                range: "(0, 1 - 1e-6]",
            });
        }
        let m = model.with_load(load)?;
        let scale = 1.0 - load;
        let means = mean_per_type(&m, opts)?;
        let per_type = means
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let target = m.job_types()[i].prob;
                let scaled = scale * e;
                ScaledMeanRow {
                    index: i,
                    scaled_mean: scaled,
                    target,
                    rel_err: (scaled - target).abs() / target,
                }
            })
            .collect();
        let per_server = (1..=m.server_count())
            .map(|s| {
                let e: f64 = m
                    .job_types()
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| t.servers.contains(s))
                    .map(|(i, _)| means[i])
                    .sum();
                let target = m.replica_share(s);
                let scaled = scale * e;
                ScaledMeanRow {
                    index: s,
                    scaled_mean: scaled,
                    target,
                    rel_err: (scaled - target).abs() / target,
                }
            })
            .collect();
        let ks_to_exp1 = ks_total_queue_vs_unit_exponential(&m)?;
        rows.push(CollapseRow {
            load,
            per_type,
            per_server,
            ks_to_exp1,
        });
    }
    Ok(CollapseReport { rows })
}

/// Kolmogorov distance between the exact law of (1−λ/μ)·Q_total and the
/// unit-mean exponential, at the lattice points of the scaled variable.
fn ks_total_queue_vs_unit_exponential(model: &CompatibilityModel) -> Result<f64> {
    let scale = 1.0 - model.load();
    let mut q_max = 512usize;
    loop {
        let pmf = total_queue_distribution(model, q_max)?;
        let mass: f64 = pmf.iter().sum();
        if 1.0 - mass < 1e-9 {
            let mut cum = KahanSum::default();
            let mut d: f64 = 0.0;
            for (q, &p) in pmf.iter().enumerate() {
                cum.add(p);
                let g = 1.0 - (-scale * q as f64).exp();
                d = d.max((cum.value() - g).abs());
            }
            return Ok(d);
        }
        q_max *= 2;
        if q_max > 1 << 22 {
            return Err(Error::TermBudgetExceeded {
                required: q_max as u128,
                budget: 1 << 22,
            });
        }
    }
}

#[derive(Clone, Debug)]
pub struct SojournTypeRow {
    pub type_index: usize,
    pub completed: u64,
    /// (1−λ/μ)·mean sojourn / waiting time.
    pub scaled_mean_sojourn: f64,
    pub scaled_mean_wait: f64,
    /// Limit 1/(Nμ) for both.
    pub target: f64,
    pub rel_err_sojourn: f64,
    pub rel_err_wait: f64,
    /// Kolmogorov distance of the scaled sojourn sample to Exp(Nμ).
    pub ks_scaled_sojourn: f64,
}

#[derive(Clone, Debug)]
pub struct SojournRow {
    pub load: f64,
    pub per_type: Vec<SojournTypeRow>,
    pub estimate: SimulationEstimate,
}

#[derive(Clone, Debug)]
pub struct SojournReport {
    pub target: f64,
    pub rows: Vec<SojournRow>,
}

/// Empirical check of the scaled sojourn/waiting limits along a load grid.
/// One simulation per load with the given parameters.
pub fn sojourn_limit_check(
    model: &CompatibilityModel,
    loads: &[f64],
    params: &SimulationParams,
) -> Result<SojournReport> {
    require_local_stability(model)?;
    let target = 1.0 / model.total_speed();
    let mut rows = Vec::with_capacity(loads.len());
    for &load in loads {
        let m = model.with_load(load)?;
        let scale = 1.0 - load;
        let estimate = run(&m, params)?;
        let per_type = estimate
            .delays
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let sv = scale * d.mean_sojourn;
                let sw = scale * d.mean_wait;
                SojournTypeRow {
                    type_index: i,
                    completed: d.completed,
                    scaled_mean_sojourn: sv,
                    scaled_mean_wait: sw,
                    target,
                    rel_err_sojourn: (sv - target).abs() / target,
                    rel_err_wait: (sw - target).abs() / target,
                    ks_scaled_sojourn: d
                        .sojourn_hist
                        .ks_vs_exponential(model.total_speed() * scale),
                }
            })
            .collect();
        rows.push(SojournRow {
            load,
            per_type,
            estimate,
        });
    }
    Ok(SojournReport { target, rows })
}

fn require_graph_identical(model: &CompatibilityModel) -> Result<()> {
    if !model.is_graph_model() {
        return Err(Error::NotGraphModel);
    }
    if !model.speeds_identical() {
        return Err(Error::NonIdenticalSpeeds);
    }
    Ok(())
}

/// Exact α_q for q = 0..=q_max by enumeration over 𝒮^q (α_0 = 1). The
/// coefficients are load-free; only the edge probabilities and the running
/// unions enter.
pub fn alpha_profile(
    model: &CompatibilityModel,
    q_max: usize,
    opts: &OccupancyOptions,
) -> Result<Vec<f64>> {
    require_graph_identical(model)?;
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

    let kk = model.type_count();
    let probs: Vec<f64> = model.job_types().iter().map(|t| t.prob).collect();
    let bits: Vec<u64> = model.job_types().iter().map(|t| t.servers.bits()).collect();
    let mut levels = vec![KahanSum::default(); q_max + 1];
    levels[0].add(1.0);
    if q_max == 0 {
        return Ok(vec![1.0]);
    }

    let mut child = vec![0usize; q_max + 1];
    let mut mask = vec![0u64; q_max + 1];
    let mut weight = vec![0.0f64; q_max + 1];
    weight[0] = 1.0;
    let mut d = 0usize;
    loop {
        if child[d] < kk {
            let t = child[d];
            child[d] += 1;
            let m2 = mask[d] | bits[t];
            let w2 = weight[d] * probs[t] / m2.count_ones() as f64;
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

/// Exact α_q by brute force over 𝒮^q.
pub fn alpha(model: &CompatibilityModel, q: usize, opts: &OccupancyOptions) -> Result<f64> {
    Ok(alpha_profile(model, q, opts)?[q])
}

#[derive(Clone, Debug)]
pub struct LightTrafficRow {
    pub q: usize,
    pub alpha_model: f64,
    pub alpha_baseline: f64,
    /// α_q(baseline) / α_q(model): at most 1 for q = 1, 2 when the baseline
    /// is the uniform complete graph (proved); larger q reported as data.
    pub ratio: f64,
    pub proved_bound: bool,
}

#[derive(Clone, Debug)]
pub struct LightTrafficTable {
    pub rows: Vec<LightTrafficRow>,
    pub baseline_is_uniform_complete: bool,
}

fn is_uniform_complete(model: &CompatibilityModel) -> bool {
    let n = model.server_count();
    let edges = n * (n - 1) / 2;
    model.type_count() == edges
        && model.is_graph_model()
        && model
            .job_types()
            .iter()
            .all(|t| (t.prob - 1.0 / edges as f64).abs() < 1e-12)
}

/// Light-traffic comparison of two replication graphs on the same servers:
/// the ratio column is α_q(baseline)/α_q(model), matching the convention of
/// reporting the uniform-complete coefficients relative to a sparser graph.
pub fn light_traffic_ratio(
    model: &CompatibilityModel,
    baseline: &CompatibilityModel,
    q_max: usize,
    opts: &OccupancyOptions,
) -> Result<LightTrafficTable> {
    if model.server_count() != baseline.server_count() {
        return Err(Error::ServerCountMismatch {
            a: model.server_count(),
            b: baseline.server_count(),
        });
    }
    require_graph_identical(model)?;
    require_graph_identical(baseline)?;
    let a_model = alpha_profile(model, q_max, opts)?;
    let a_base = alpha_profile(baseline, q_max, opts)?;
    let rows = (0..=q_max)
        .map(|q| LightTrafficRow {
            q,
            alpha_model: a_model[q],
            alpha_baseline: a_base[q],
            ratio: a_base[q] / a_model[q],
            proved_bound: q <= 2,
        })
        .collect();
    Ok(LightTrafficTable {
        rows,
        baseline_is_uniform_complete: is_uniform_complete(baseline),
    })
}

/// Four-server replication families with closed-form total-queue laws.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum N4Family {
    /// Uniform complete graph on four servers.
    Complete,
    /// Ring with alternating probabilities ε·2/N and (1−ε)·2/N; ε = 1/2 is
    /// the homogeneous ring.
    Ring { epsilon: f64 },
}

/// P{Q = q} as prefactor · Σ coefficient·base^q, with an optional confluent
/// pair near the removable singularities where two geometric bases coalesce.
struct GeomMixture {
    prefactor: f64,
    terms: Vec<(f64, f64)>,
    confluent: Option<ConfluentPair>,
}

/// Contribution (c_pair + c_phi·φ(δ,q))·base^q with
/// φ(δ,q) = ((1−δ/2)^q − 1)/δ, the exact merged form of
/// a1·base^q + a2·(base·(1−δ/2))^q whose coefficients diverge as δ → 0.
struct ConfluentPair {
    c_pair: f64,
    c_phi: f64,
    delta: f64,
    base: f64,
}

fn phi(delta: f64, q: f64) -> f64 {
    if delta == 0.0 {
        -q / 2.0
    } else {
        (q * (-delta / 2.0).ln_1p()).exp_m1() / delta
    }
}

impl ConfluentPair {
    fn pmf_term(&self, q: usize) -> f64 {
        (self.c_pair + self.c_phi * phi(self.delta, q as f64)) * self.base.powi(q as i32)
    }

    /// Σ_{j≥q} of the pair, in a cancellation-free form.
    fn tail_term(&self, q: usize) -> f64 {
        let b = self.base;
        let b2 = b * (1.0 - self.delta / 2.0);
        let bq = b.powi(q as i32);
        let pair = self.c_pair * bq / (1.0 - b);
        let psi =
            bq * ((1.0 - b) * phi(self.delta, q as f64) - b / 2.0) / ((1.0 - b2) * (1.0 - b));
        pair + self.c_phi * psi
    }
}

fn n4_mixture(family: N4Family, load: f64) -> Result<GeomMixture> {
    if load.is_nan() || load <= 0.0 || load >= 1.0 {
        return Err(Error::LoadOutOfRange {
            load,
            range: "(0, 1)",
        });
    }
    let rho = load;
    match family {
        N4Family::Complete => Ok(GeomMixture {
            prefactor: (1.0 / 9.0) * (1.0 - rho) * (3.0 - rho) * (3.0 - 2.0 * rho),
            terms: vec![
                (-4.0, 2.0 * rho / 3.0),
                (0.5, rho / 3.0),
                (4.5, rho),
            ],
            confluent: None,
        }),
        N4Family::Ring { epsilon } => {
            if epsilon.is_nan() || epsilon <= 0.0 || epsilon >= 1.0 {
                return Err(Error::EpsilonOutOfRange { epsilon });
            }
            // The ring with ε and with 1−ε is the same system relabeled.
            let e = if epsilon > 0.5 { 1.0 - epsilon } else { epsilon };
            let prefactor = (1.0 - rho)
                * (1.0 - (1.0 - e) * rho)
                * (1.0 - e * rho)
                * (3.0 - 2.0 * rho)
                / (3.0 - 2.0 * rho + e * (1.0 - e) * rho * rho);
            let a3 = e * e / ((1.0 - e) * (2.0 - 3.0 * e));
            let a4 = (1.0 + e - e * e) / (e * (1.0 - e));
            let mut terms = vec![(a3, e * rho), (a4, rho)];
            let delta = 3.0 * e - 1.0;
            let confluent = if (e - 1.0 / 3.0).abs() < CONFLUENT_WINDOW {
                Some(ConfluentPair {
                    c_pair: (2.0 - delta) * (7.0 + delta) / (3.0 * (delta - 1.0) * (1.0 + delta)),
                    c_phi: (2.0 - delta) * (2.0 - delta) / (3.0 * (1.0 + delta)),
                    delta,
                    base: 2.0 * rho / 3.0,
                })
            } else {
                let a1 = 6.0 * e * (1.0 - e) / (2.0 - 9.0 * e + 9.0 * e * e);
                let a2 = (1.0 - e) * (1.0 - e) / (e * (3.0 * e - 1.0));
                terms.push((a1, 2.0 * rho / 3.0));
                terms.push((a2, (1.0 - e) * rho));
                None
            };
            Ok(GeomMixture {
                prefactor,
                terms,
                confluent,
            })
        }
    }
}

/// Closed-form P{Q = q} for the four-server families.
pub fn closed_form_n4(family: N4Family, load: f64, q: usize) -> Result<f64> {
    let mix = n4_mixture(family, load)?;
    let mut s = 0.0;
    for &(coef, base) in &mix.terms {
        s += coef * base.powi(q as i32);
    }
    if let Some(c) = &mix.confluent {
        s += c.pmf_term(q);
    }
    Ok(mix.prefactor * s)
}

/// Closed-form tail P{Q >= q} for the four-server families.
pub fn closed_form_n4_tail(family: N4Family, load: f64, q: usize) -> Result<f64> {
    let mix = n4_mixture(family, load)?;
    let mut s = 0.0;
    for &(coef, base) in &mix.terms {
        s += coef * base.powi(q as i32) / (1.0 - base);
    }
    if let Some(c) = &mix.confluent {
        s += c.tail_term(q);
    }
    Ok(mix.prefactor * s)
}

/// Normalized tail gap between the homogeneous-ring and complete-graph laws
/// at q = 1 after dividing out common factors; positive for every load in
/// (0, 1).
pub fn dominance_gap_q1(load: f64) -> f64 {
    load * (1.0 - load) * (3.0 - 2.0 * load)
}

#[derive(Clone, Debug)]
pub struct DominanceRow {
    pub load: f64,
    pub q: usize,
    pub tail_complete: f64,
    pub tail_hom_ring: f64,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct EpsilonGapRow {
    pub epsilon: f64,
    pub load: f64,
    /// sup over q of the heterogeneous-ring tail above the complete-graph
    /// tail; grows as ε moves away from 1/2 (reported, not asserted).
    pub max_tail_gap: f64,
}

#[derive(Clone, Debug)]
pub struct DominanceReport {
    pub rows: Vec<DominanceRow>,
    pub violations: usize,
    pub epsilon_observation: Vec<EpsilonGapRow>,
}

/// Verifies P{Q*_4 >= q} <= P{Q^hom_4 >= q} over a load grid and reports the
/// ε-sensitivity of the heterogeneous-ring gap.
pub fn dominance_check(
    loads: &[f64],
    q_max: usize,
    eps_grid: &[f64],
) -> Result<DominanceReport> {
    let mut rows = Vec::with_capacity(loads.len() * (q_max + 1));
    let mut violations = 0;
    for &load in loads {
        for q in 0..=q_max {
            let star = closed_form_n4_tail(N4Family::Complete, load, q)?;
            let hom =
                closed_form_n4_tail(N4Family::Ring { epsilon: 0.5 }, load, q)?;
            let holds = star <= hom + 1e-12;
            if !holds {
                violations += 1;
            }
            rows.push(DominanceRow {
                load,
                q,
                tail_complete: star,
                tail_hom_ring: hom,
                holds,
            });
        }
    }
    let mut epsilon_observation = Vec::new();
    for &eps in eps_grid {
        for &load in loads {
            let mut max_gap: f64 = 0.0;
            for q in 0..=q_max {
                let star = closed_form_n4_tail(N4Family::Complete, load, q)?;
                let het = closed_form_n4_tail(N4Family::Ring { epsilon: eps }, load, q)?;
                max_gap = max_gap.max(het - star);
            }
            epsilon_observation.push(EpsilonGapRow {
                epsilon: eps,
                load,
                max_tail_gap: max_gap,
            });
        }
    }
    Ok(DominanceReport {
        rows,
        violations,
        epsilon_observation,
    })
}
