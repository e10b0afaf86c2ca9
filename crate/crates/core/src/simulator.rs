//! Continuous-time Markov-chain simulation of the central-queue dynamics.
//!
//! Next-event simulation on the embedded jump chain with exponential holding
//! times: arrivals append a job type drawn with probabilities `p_S` at total
//! rate `Nλ`; each busy server completes its current replica at its own speed
//! and the first completed replica removes the whole job (cancel-on-
//! completion). A server always works on the earliest compatible job in the
//! central queue, so arrivals never change existing assignments and a single
//! front-to-back rescan after each departure restores them.
//!
//! State probabilities use time-weighted averaging after a warmup period.
//! Sojourn (`V`) and waiting (`W`) times are recorded for jobs arriving after
//! warmup and completing before the horizon. Replications run on independent
//! streams of a counter-based generator and merge deterministically.

use crate::error::{Error, Result};
use crate::model::{CompatibilityModel, SystemState};
use crate::stability::{check_stability_typesets, StabilityOptions, StabilityVerdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Transform points z for the distributional Little's-law check.
pub const LITTLES_Z_POINTS: [f64; 3] = [0.25, 0.5, 0.75];

/// Completed-job threshold below which per-type delay statistics are
/// reported as insufficient.
pub const MIN_COMPLETED_JOBS: u64 = 1000;

#[derive(Clone, Debug)]
pub struct SimulationParams {
    pub horizon: f64,
    /// Defaults to 10% of the horizon when absent.
    pub warmup: Option<f64>,
    pub seed: u64,
    pub replications: usize,
    /// Accumulate per-state occupancy times (bounded by
    /// `max_tracked_state_len`).
    pub track_states: bool,
    pub max_tracked_state_len: usize,
}

impl Default for SimulationParams {
    fn default() -> Self {
        SimulationParams {
            horizon: 1e5,
            warmup: None,
            seed: 1,
            replications: 1,
            track_states: false,
            max_tracked_state_len: 16,
        }
    }
}

impl SimulationParams {
    pub fn effective_warmup(&self) -> f64 {
        self.warmup.unwrap_or(0.1 * self.horizon)
    }
}

/// One completed job: when it arrived, when its first replica reached a
/// server, and when its first replica finished (completing the job and
/// cancelling the rest).
#[derive(Clone, Copy, Debug)]
pub struct JobRecord {
    pub type_index: usize,
    pub arrival: f64,
    pub service_start: f64,
    pub completion: f64,
}

impl JobRecord {
    /// Waiting time W = start − arrival.
    pub fn waiting(&self) -> f64 {
        self.service_start - self.arrival
    }

    /// Sojourn time V = completion − arrival.
    pub fn sojourn(&self) -> f64 {
        self.completion - self.arrival
    }
}

/// Per-server assignment: the queue position (0-based) each server works on,
/// or `None` when no compatible job is present. Several servers may share a
/// position (replicas in service).
pub fn server_assignment(model: &CompatibilityModel, state: &SystemState) -> Vec<Option<usize>> {
    let n = model.server_count();
    let mut out = vec![None; n];
    let mut avail = crate::model::ServerSet::full(n).bits();
    for (pos, &t) in state.types().iter().enumerate() {
        if avail == 0 {
            break;
        }
        let take = model.job_types()[t].servers.bits() & avail;
        if take != 0 {
            let mut bits = take;
            while bits != 0 {
                let s = bits.trailing_zeros() as usize;
                out[s] = Some(pos);
                bits &= bits - 1;
            }
            avail &= !take;
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct TransitionRates {
    /// Arrival rate per job type: appending type S occurs at rate λ_S.
    pub arrivals: Vec<f64>,
    /// Departure rate per queue position: the aggregate speed of the servers
    /// assigned to that job.
    pub departures: Vec<f64>,
}

pub fn transition_rates(model: &CompatibilityModel, state: &SystemState) -> TransitionRates {
    let arrivals = (0..model.type_count())
        .map(|t| model.arrival_rate(t))
        .collect();
    let assignment = server_assignment(model, state);
    let mut departures = vec![0.0; state.len()];
    for (server, slot) in assignment.iter().enumerate() {
        if let Some(pos) = slot {
            departures[*pos] += model.speeds()[server];
        }
    }
    TransitionRates {
        arrivals,
        departures,
    }
}

/// Fixed-geometry log histogram for positive durations, with an explicit
/// atom at zero (waiting times can be exactly zero).
#[derive(Clone, Debug)]
pub struct Histogram {
    pub zero: u64,
    counts: Vec<u64>,
    pub total: u64,
}

const HIST_LN_MIN: f64 = -25.0;
const HIST_LN_MAX: f64 = 25.0;
const HIST_BINS: usize = 8192;

impl Histogram {
    pub fn new() -> Self {
        Histogram {
            zero: 0,
            counts: vec![0; HIST_BINS],
            total: 0,
        }
    }

    pub fn record(&mut self, x: f64) {
        self.total += 1;
        if x <= 0.0 {
            self.zero += 1;
            return;
        }
        let pos = (x.ln() - HIST_LN_MIN) / (HIST_LN_MAX - HIST_LN_MIN) * HIST_BINS as f64;
        let idx = (pos.floor().max(0.0) as usize).min(HIST_BINS - 1);
        self.counts[idx] += 1;
    }

    pub fn merge(&mut self, other: &Histogram) {
        self.zero += other.zero;
        self.total += other.total;
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    fn edge(idx: usize) -> f64 {
        (HIST_LN_MIN + (HIST_LN_MAX - HIST_LN_MIN) * idx as f64 / HIST_BINS as f64).exp()
    }

    /// Empirical CDF evaluated at the bin edges (exact there).
    pub fn cdf_edges(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let total = self.total.max(1) as f64;
        let mut cum = self.zero;
        (0..HIST_BINS).map(move |i| {
            let at_edge = cum as f64 / total;
            cum += self.counts[i];
            (Self::edge(i), at_edge)
        })
    }

    /// Approximate quantile (upper edge of the bin reaching probability p).
    pub fn quantile(&self, p: f64) -> f64 {
        if self.total == 0 {
            return f64::NAN;
        }
        let target = (p * self.total as f64).ceil() as u64;
        if target <= self.zero {
            return 0.0;
        }
        let mut cum = self.zero;
        for i in 0..HIST_BINS {
            cum += self.counts[i];
            if cum >= target {
                return Self::edge(i + 1);
            }
        }
        f64::INFINITY
    }

    /// Kolmogorov distance between the sample CDF and `Exp(rate)`, taken at
    /// the bin edges.
    pub fn ks_vs_exponential(&self, rate: f64) -> f64 {
        let mut d: f64 = 0.0;
        for (x, f_emp) in self.cdf_edges() {
            let g = 1.0 - (-rate * x).exp();
            d = d.max((f_emp - g).abs());
        }
        d
    }
}

impl Default for Histogram {
    fn default() -> Self {
        Self::new()
    }
}

/// Per-type delay statistics over completed jobs.
#[derive(Clone, Debug)]
pub struct DelayStats {
    pub completed: u64,
    pub mean_sojourn: f64,
    pub sojourn_half_width: f64,
    pub mean_wait: f64,
    pub wait_half_width: f64,
    /// (p, approximate quantile) at p = 0.5, 0.9, 0.99.
    pub sojourn_quantiles: [(f64, f64); 3],
    pub wait_quantiles: [(f64, f64); 3],
    /// Mean of exp(-λ_S (1-z) V) at the fixed z points.
    pub sojourn_laplace: [f64; 3],
    pub sojourn_hist: Histogram,
    pub wait_hist: Histogram,
}

#[derive(Clone, Debug)]
pub struct OccupancyStats {
    /// Time-averaged distribution of the count.
    pub probs: Vec<f64>,
    pub mean: f64,
    /// Half-width of the 95% interval over replications.
    pub mean_half_width: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct StateProbability {
    pub mean: f64,
    /// Sample standard deviation of the per-replication estimates.
    pub std: f64,
}

#[derive(Clone, Debug)]
pub struct SimulationEstimate {
    pub per_type: Vec<OccupancyStats>,
    pub per_server: Vec<OccupancyStats>,
    pub total_probs: Vec<f64>,
    pub delays: Vec<DelayStats>,
    /// Present when state tracking was requested.
    pub state_probs: Option<HashMap<SystemState, StateProbability>>,
    pub horizon: f64,
    pub warmup: f64,
    pub effective_time: f64,
    pub seed: u64,
    pub streams: Vec<u64>,
    pub replications: usize,
    pub events: u64,
    /// Stability verdict of the simulated model (unstable runs are allowed
    /// but flagged); `None` when the check itself was out of cap.
    pub stability: Option<StabilityVerdict>,
}

struct JobTally {
    n: u64,
    sum_v: f64,
    sum_w: f64,
    laplace: [f64; 3],
    v_hist: Histogram,
    w_hist: Histogram,
}

impl JobTally {
    fn new() -> Self {
        JobTally {
            n: 0,
            sum_v: 0.0,
            sum_w: 0.0,
            laplace: [0.0; 3],
            v_hist: Histogram::new(),
            w_hist: Histogram::new(),
        }
    }
}

struct RepResult {
    type_dist: Vec<Vec<f64>>,
    server_dist: Vec<Vec<f64>>,
    total_dist: Vec<f64>,
    state_time: Option<HashMap<Box<[u8]>, f64>>,
    jobs: Vec<JobTally>,
    effective: f64,
    events: u64,
}

fn add_time(dist: &mut Vec<f64>, count: usize, dt: f64) {
    if dist.len() <= count {
        dist.resize(count + 1, 0.0);
    }
    dist[count] += dt;
}

fn run_replication(
    model: &CompatibilityModel,
    params: &SimulationParams,
    stream: u64,
) -> RepResult {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(stream);

    let n = model.server_count();
    let k = model.type_count();
    let horizon = params.horizon;
    let warmup = params.effective_warmup();

    let type_bits: Vec<u64> = model.job_types().iter().map(|t| t.servers.bits()).collect();
    let arrival_rates: Vec<f64> = (0..k).map(|t| model.arrival_rate(t)).collect();
    let total_arrival: f64 = model.total_arrival_rate();
    let lambda_s = &arrival_rates;
    let speeds = model.speeds();
    let speed_of_bits = |bits: u64| -> f64 {
        let mut b = bits;
        let mut s = 0.0;
        while b != 0 {
            let i = b.trailing_zeros() as usize;
            s += speeds[i];
            b &= b - 1;
        }
        s
    };

    // Queue state, oldest first.
    let mut q_type: Vec<u32> = Vec::with_capacity(64);
    let mut q_arrival: Vec<f64> = Vec::with_capacity(64);
    let mut q_start: Vec<f64> = Vec::with_capacity(64);
    let mut q_rate: Vec<f64> = Vec::with_capacity(64);
    let mut busy: u64 = 0;
    let mut total_dep = 0.0;

    let mut counts = vec![0usize; k];
    let mut replica = vec![0usize; n];
    let mut total_count = 0usize;

    let mut type_dist: Vec<Vec<f64>> = vec![Vec::new(); k];
    let mut server_dist: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut total_dist: Vec<f64> = Vec::new();
    let mut type_mark = vec![warmup; k];
    let mut server_mark = vec![warmup; n];
    let mut total_mark = warmup;
    let mut state_time: Option<HashMap<Box<[u8]>, f64>> = if params.track_states {
        Some(HashMap::new())
    } else {
        None
    };
    let mut state_mark = warmup;
    let mut jobs: Vec<JobTally> = (0..k).map(|_| JobTally::new()).collect();

    let mut t = 0.0f64;
    let mut events: u64 = 0;

    macro_rules! flush_state {
        ($now:expr) => {
            if let Some(map) = state_time.as_mut() {
                let dt = $now - state_mark;
                if dt > 0.0 && q_type.len() <= params.max_tracked_state_len {
                    let key: Vec<u8> = q_type.iter().map(|&x| x as u8).collect();
                    match map.get_mut(key.as_slice()) {
                        Some(v) => *v += dt,
                        None => {
                            map.insert(key.into_boxed_slice(), dt);
                        }
                    }
                }
                state_mark = $now;
            }
        };
    }

    loop {
        let rate_total = total_arrival + total_dep;
        let u: f64 = rng.random();
        let dt = -(1.0 - u).ln() / rate_total;
        let t_next = t + dt;
        if t_next >= horizon {
            break;
        }
        t = t_next;
        events += 1;

        let pick: f64 = rng.random::<f64>() * rate_total;
        if pick < total_arrival {
            // Arrival: draw the type, append, hand idle compatible servers
            // to the new job.
            let mut acc = 0.0;
            let mut ty = k - 1;
            for (i, &r) in arrival_rates.iter().enumerate() {
                acc += r;
                if pick < acc {
                    ty = i;
                    break;
                }
            }
            if t > warmup {
                flush_state!(t);
                let dt_t = t - type_mark[ty];
                add_time(&mut type_dist[ty], counts[ty], dt_t);
                type_mark[ty] = t;
                add_time(&mut total_dist, total_count, t - total_mark);
                total_mark = t;
                let mut bits = type_bits[ty];
                while bits != 0 {
                    let s = bits.trailing_zeros() as usize;
                    add_time(&mut server_dist[s], replica[s], t - server_mark[s]);
                    server_mark[s] = t;
                    bits &= bits - 1;
                }
            }

            let take = type_bits[ty] & !busy;
            let rate = if take != 0 { speed_of_bits(take) } else { 0.0 };
            q_type.push(ty as u32);
            q_arrival.push(t);
            q_start.push(if take != 0 { t } else { f64::NAN });
            q_rate.push(rate);
            busy |= take;
            total_dep += rate;

            counts[ty] += 1;
            total_count += 1;
            let mut bits = type_bits[ty];
            while bits != 0 {
                let s = bits.trailing_zeros() as usize;
                replica[s] += 1;
                bits &= bits - 1;
            }
        } else {
            // Departure: pick the position by its aggregate service rate.
            let mut target = pick - total_arrival;
            let mut pos = usize::MAX;
            for (i, &r) in q_rate.iter().enumerate() {
                if r > 0.0 {
                    pos = i;
                    if target < r {
                        break;
                    }
                    target -= r;
                }
            }
            debug_assert!(pos != usize::MAX);
            let ty = q_type[pos] as usize;

            if t > warmup {
                flush_state!(t);
                add_time(&mut type_dist[ty], counts[ty], t - type_mark[ty]);
                type_mark[ty] = t;
                add_time(&mut total_dist, total_count, t - total_mark);
                total_mark = t;
                let mut bits = type_bits[ty];
                while bits != 0 {
                    let s = bits.trailing_zeros() as usize;
                    add_time(&mut server_dist[s], replica[s], t - server_mark[s]);
                    server_mark[s] = t;
                    bits &= bits - 1;
                }
            }

            if q_arrival[pos] >= warmup {
                let record = JobRecord {
                    type_index: ty,
                    arrival: q_arrival[pos],
                    service_start: q_start[pos],
                    completion: t,
                };
                debug_assert!(record.arrival <= record.service_start);
                debug_assert!(record.service_start <= record.completion);
                let (v, w) = (record.sojourn(), record.waiting());
                let tally = &mut jobs[ty];
                tally.n += 1;
                tally.sum_v += v;
                tally.sum_w += w;
                for (slot, &z) in tally.laplace.iter_mut().zip(LITTLES_Z_POINTS.iter()) {
                    *slot += (-lambda_s[ty] * (1.0 - z) * v).exp();
                }
                tally.v_hist.record(v);
                tally.w_hist.record(w);
            }

            counts[ty] -= 1;
            total_count -= 1;
            let mut bits = type_bits[ty];
            while bits != 0 {
                let s = bits.trailing_zeros() as usize;
                replica[s] -= 1;
                bits &= bits - 1;
            }

            q_type.remove(pos);
            q_arrival.remove(pos);
            q_start.remove(pos);
            q_rate.remove(pos);

            // Single front-to-back rescan; newly reached jobs start service.
            busy = 0;
            total_dep = 0.0;
            for i in 0..q_type.len() {
                let take = type_bits[q_type[i] as usize] & !busy;
                let rate = if take != 0 { speed_of_bits(take) } else { 0.0 };
                if take != 0 && q_start[i].is_nan() {
                    q_start[i] = t;
                }
                q_rate[i] = rate;
                busy |= take;
                total_dep += rate;
            }
        }
    }

    // Close all open segments at the horizon.
    if horizon > warmup {
        flush_state!(horizon);
        let _ = state_mark;
        for ty in 0..k {
            add_time(&mut type_dist[ty], counts[ty], horizon - type_mark[ty]);
        }
        for s in 0..n {
            add_time(&mut server_dist[s], replica[s], horizon - server_mark[s]);
        }
        add_time(&mut total_dist, total_count, horizon - total_mark);
    }

    RepResult {
        type_dist,
        server_dist,
        total_dist,
        state_time,
        jobs,
        effective: (horizon - warmup).max(0.0),
        events,
    }
}

fn t_critical_95(df: usize) -> f64 {
    const TABLE: [f64; 30] = [
        12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179,
        2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
        2.060, 2.056, 2.052, 2.048, 2.045, 2.042,
    ];
    if df == 0 {
        f64::INFINITY
    } else if df <= 30 {
        TABLE[df - 1]
    } else {
        1.96
    }
}

fn mean_and_half_width(values: &[f64]) -> (f64, f64) {
    let r = values.len();
    let mean = values.iter().sum::<f64>() / r as f64;
    if r < 2 {
        return (mean, f64::INFINITY);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (r - 1) as f64;
    let hw = t_critical_95(r - 1) * (var / r as f64).sqrt();
    (mean, hw)
}

fn merge_occupancy(reps: &[RepResult], pick: impl Fn(&RepResult) -> &Vec<f64>) -> OccupancyStats {
    let max_len = reps.iter().map(|r| pick(r).len()).max().unwrap_or(0);
    let mut probs = vec![0.0; max_len];
    let mut means = Vec::with_capacity(reps.len());
    for rep in reps {
        let dist = pick(rep);
        let mut mean = 0.0;
        for (count, &time) in dist.iter().enumerate() {
            probs[count] += time / rep.effective / reps.len() as f64;
            mean += count as f64 * time / rep.effective;
        }
        means.push(mean);
    }
    let (mean, hw) = mean_and_half_width(&means);
    OccupancyStats {
        probs,
        mean,
        mean_half_width: hw,
    }
}

/// Runs `replications` independent simulations and merges them.
pub fn run(model: &CompatibilityModel, params: &SimulationParams) -> Result<SimulationEstimate> {
    if params.horizon.is_nan()
        || params.horizon <= 0.0
        || params.effective_warmup() >= params.horizon
    {
        return Err(Error::BadHorizon {
            horizon: params.horizon,
            warmup: params.effective_warmup(),
        });
    }
    if params.replications == 0 {
        return Err(Error::ZeroReplications);
    }

    let stability = check_stability_typesets(model, &StabilityOptions::default())
        .ok()
        .map(|r| r.verdict);

    let streams: Vec<u64> = (0..params.replications as u64).collect();
    let reps: Vec<RepResult> = streams
        .par_iter()
        .map(|&stream| run_replication(model, params, stream))
        .collect();

    let k = model.type_count();
    let n = model.server_count();

    let per_type: Vec<OccupancyStats> = (0..k)
        .map(|t| merge_occupancy(&reps, |r| &r.type_dist[t]))
        .collect();
    let per_server: Vec<OccupancyStats> = (0..n)
        .map(|s| merge_occupancy(&reps, |r| &r.server_dist[s]))
        .collect();
    let total = merge_occupancy(&reps, |r| &r.total_dist);

    let delays: Vec<DelayStats> = (0..k)
        .map(|t| {
            let mut v_hist = Histogram::new();
            let mut w_hist = Histogram::new();
            let mut completed = 0u64;
            let mut laplace_num = [0.0f64; 3];
            let mut v_means = Vec::new();
            let mut w_means = Vec::new();
            for rep in &reps {
                let tally = &rep.jobs[t];
                completed += tally.n;
                v_hist.merge(&tally.v_hist);
                w_hist.merge(&tally.w_hist);
                for (acc, &x) in laplace_num.iter_mut().zip(&tally.laplace) {
                    *acc += x;
                }
                if tally.n > 0 {
                    v_means.push(tally.sum_v / tally.n as f64);
                    w_means.push(tally.sum_w / tally.n as f64);
                }
            }
            let (mean_v, hw_v) = if v_means.is_empty() {
                (f64::NAN, f64::INFINITY)
            } else {
                mean_and_half_width(&v_means)
            };
            let (mean_w, hw_w) = if w_means.is_empty() {
                (f64::NAN, f64::INFINITY)
            } else {
                mean_and_half_width(&w_means)
            };
            let laplace = if completed > 0 {
                [
                    laplace_num[0] / completed as f64,
                    laplace_num[1] / completed as f64,
                    laplace_num[2] / completed as f64,
                ]
            } else {
                [f64::NAN; 3]
            };
            let qs = |h: &Histogram| {
                [
                    (0.5, h.quantile(0.5)),
                    (0.9, h.quantile(0.9)),
                    (0.99, h.quantile(0.99)),
                ]
            };
            DelayStats {
                completed,
                mean_sojourn: mean_v,
                sojourn_half_width: hw_v,
                mean_wait: mean_w,
                wait_half_width: hw_w,
                sojourn_quantiles: qs(&v_hist),
                wait_quantiles: qs(&w_hist),
                sojourn_laplace: laplace,
                sojourn_hist: v_hist,
                wait_hist: w_hist,
            }
        })
        .collect();

    let state_probs = if params.track_states {
        let mut keys: Vec<Box<[u8]>> = reps
            .iter()
            .flat_map(|r| r.state_time.as_ref().unwrap().keys().cloned())
            .collect();
        keys.sort();
        keys.dedup();
        let mut map = HashMap::with_capacity(keys.len());
        for key in keys {
            let vals: Vec<f64> = reps
                .iter()
                .map(|r| {
                    r.state_time
                        .as_ref()
                        .unwrap()
                        .get(&key)
                        .copied()
                        .unwrap_or(0.0)
                        / r.effective
                })
                .collect();
            let (mean, _) = mean_and_half_width(&vals);
            let std = if vals.len() < 2 {
                f64::INFINITY
            } else {
                (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (vals.len() - 1) as f64)
                    .sqrt()
            };
            let state = SystemState::from_types(key.iter().map(|&b| b as usize).collect());
            map.insert(state, StateProbability { mean, std });
        }
        Some(map)
    } else {
        None
    };

    Ok(SimulationEstimate {
        per_type,
        per_server,
        total_probs: total.probs,
        delays,
        state_probs,
        horizon: params.horizon,
        warmup: params.effective_warmup(),
        effective_time: reps.iter().map(|r| r.effective).sum(),
        seed: params.seed,
        streams,
        replications: params.replications,
        events: reps.iter().map(|r| r.events).sum(),
        stability,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LittlesLawStatus {
    Ok,
    InsufficientData,
}

#[derive(Clone, Debug)]
pub struct LittlesLawRow {
    pub type_index: usize,
    pub status: LittlesLawStatus,
    pub completed: u64,
    /// |E[Q_S] − λ_S·E[V_S]| / E[Q_S].
    pub mean_residual: f64,
    /// (z, queue-side value G(z), delay-side value L(λ_S(1−z)), relative
    /// residual) at the fixed z points.
    pub distributional: [(f64, f64, f64, f64); 3],
}

#[derive(Clone, Debug)]
pub struct LittlesLawReport {
    pub rows: Vec<LittlesLawRow>,
}

impl LittlesLawReport {
    pub fn max_mean_residual(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.status == LittlesLawStatus::Ok)
            .map(|r| r.mean_residual)
            .fold(0.0, f64::max)
    }

    pub fn max_distributional_residual(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.status == LittlesLawStatus::Ok)
            .flat_map(|r| r.distributional.iter().map(|d| d.3))
            .fold(0.0, f64::max)
    }
}

/// Compares the empirical per-type queue lengths against the arrival-rate
/// weighted sojourn times: the mean identity `E[Q_S] = λ_S E[V_S]` and the
/// distributional identity `G_{Q_S}(z) = L_{V_S}(λ_S(1−z))` at fixed points.
pub fn littles_law_check(
    estimate: &SimulationEstimate,
    model: &CompatibilityModel,
) -> LittlesLawReport {
    let rows = (0..model.type_count())
        .map(|t| {
            let delays = &estimate.delays[t];
            let occ = &estimate.per_type[t];
            if delays.completed < MIN_COMPLETED_JOBS {
                return LittlesLawRow {
                    type_index: t,
                    status: LittlesLawStatus::InsufficientData,
                    completed: delays.completed,
                    mean_residual: f64::NAN,
                    distributional: [(0.0, f64::NAN, f64::NAN, f64::NAN); 3],
                };
            }
            let lambda_s = model.arrival_rate(t);
            let mean_residual = (occ.mean - lambda_s * delays.mean_sojourn).abs() / occ.mean;
            let mut distributional = [(0.0, 0.0, 0.0, 0.0); 3];
            for (i, &z) in LITTLES_Z_POINTS.iter().enumerate() {
                let g: f64 = occ
                    .probs
                    .iter()
                    .enumerate()
                    .map(|(count, &p)| p * z.powi(count as i32))
                    .sum();
                let l = delays.sojourn_laplace[i];
                distributional[i] = (z, g, l, (g - l).abs() / g);
            }
            LittlesLawRow {
                type_index: t,
                status: LittlesLawStatus::Ok,
                completed: delays.completed,
                mean_residual,
                distributional,
            }
        })
        .collect();
    LittlesLawReport { rows }
}
