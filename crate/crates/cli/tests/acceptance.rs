//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line with the measured numbers. Golden values are frozen reference
//! four-server tail probabilities and alpha-ratio curves; everything else is
//! checked against independent closed forms, cross-route identities, or
//! simulation with fixed seeds.

use redq_core::asymptotics::{
    closed_form_n4, collapse_report, dominance_check, heavy_traffic_probe, sojourn_limit_check,
    N4Family,
};
use redq_core::model::{
    fig1_ring, path_tree_example, ring, singleton_fullset_example, uniform_complete,
    CompatibilityModel, ServerSet,
};
use redq_core::product_form::{
    normalization_constant, occupancy_distribution, pgf, stationary_weight, OccupancyOptions,
    PgfOptions,
};
use redq_core::simulator::{littles_law_check, run, LittlesLawStatus, SimulationParams};
use redq_core::stability::{
    check_local_stability, check_stability_serversets, check_stability_typesets,
    local_stability_dual_forms, StabilityOptions, StabilityVerdict,
};
use redq_core::SystemState;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

// ---------------------------------------------------------------------------
// helpers

fn redq_in(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_redq"))
        .args(args)
        .env("REDQ_OUT_DIR", dir)
        .output()
        .expect("failed to launch redq")
}

fn read_csv_column(path: &Path, column: usize) -> Vec<f64> {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
    text.lines()
        .skip(1)
        .map(|line| {
            line.split(',').nth(column).unwrap().parse::<f64>().unwrap()
        })
        .collect()
}

/// Deterministic 64-bit generator for the randomized-model corpora.
struct SplitMix(u64);

impl SplitMix {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.f64()
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn random_model(rng: &mut SplitMix) -> CompatibilityModel {
    let n = 1 + rng.below(6);
    let want = 1 + rng.below(6);
    let all = (1u64 << n) - 1;
    let mut masks = std::collections::BTreeSet::new();
    while masks.len() < want.min(all as usize) {
        let m = 1 + rng.next_u64() % all;
        masks.insert(m);
    }
    let types: Vec<(ServerSet, f64)> = masks
        .into_iter()
        .map(|m| {
            let set =
                ServerSet::from_servers((0..n).filter(|i| m & (1 << i) != 0).map(|i| i + 1))
                    .unwrap();
            (set, rng.range(0.05, 1.0))
        })
        .collect();
    let total: f64 = types.iter().map(|t| t.1).sum();
    let types: Vec<(ServerSet, f64)> = types
        .into_iter()
        .map(|(s, w)| (s, w / total))
        .collect();
    let speeds: Vec<f64> = (0..n).map(|_| rng.range(0.2, 2.0)).collect();
    let mu = speeds.iter().sum::<f64>() / n as f64;
    let load = rng.range(0.05, 1.25);
    CompatibilityModel::new(speeds, types, load * mu).unwrap()
}

// ---------------------------------------------------------------------------
// criteria

/// Normalization: pgf(1) = 1 within 1e-10 on 50 randomized stable models.
#[test]
fn criterion_01_pgf_normalization() {
    let start = Instant::now();
    let mut rng = SplitMix(0x51ec7);
    let opts = PgfOptions::default();
    let mut accepted = 0;
    let mut attempts = 0;
    let mut worst: f64 = 0.0;
    while accepted < 50 {
        attempts += 1;
        assert!(attempts < 10_000, "could not find 50 stable models");
        let model = random_model(&mut rng);
        let stable = check_stability_typesets(&model, &StabilityOptions::default())
            .unwrap()
            .stable();
        if !stable {
            continue;
        }
        let eval = pgf(&model, &vec![1.0; model.type_count()], &opts).unwrap();
        let err = (eval.value - 1.0).abs();
        assert!(err <= 1e-10, "pgf(1) off by {err}");
        worst = worst.max(err);
        accepted += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 10.0, "took {secs:.2}s (budget 10s)");
    println!(
        "criterion 01: PASS - pgf(1) = 1 within 1e-10 on 50 stable models \
         (worst |err| = {worst:.2e}, {secs:.2}s)"
    );
}

/// Tail-probability goldens at load 0.8 for the four reference four-server
/// replication graphs, through the `exact` command.
#[test]
fn criterion_02_occupancy_tail_goldens() {
    const GOLDEN: [(&str, [f64; 11]); 4] = [
        (
            "uniform-complete-4",
            [
                1.0,
                0.931555555555556,
                0.822044444444444,
                0.700365432098765,
                0.583553580246914,
                0.479374713854595,
                0.390216986337449,
                0.315765053766194,
                0.254529877489407,
                0.204647383482556,
                0.164263933297773,
            ],
        ),
        (
            "hom-ring-4",
            [
                1.0,
                0.935384615384615,
                0.832,
                0.714830769230769,
                0.599958974358974,
                0.495686017094017,
                0.405226265527066,
                0.328926615460589,
                0.265719332143083,
                0.213969240855798,
                0.171926267664631,
            ],
        ),
        (
            "het-ring-4-e07",
            [
                1.0,
                0.938978102189781,
                0.84134306569343,
                0.729648583941605,
                0.618526894403892,
                0.515953069864071,
                0.425463471594268,
                0.347944293517187,
                0.282842049740837,
                0.22891695432166,
                0.184683562391768,
            ],
        ),
        (
            "het-ring-4-e09",
            [
                1.0,
                0.950515916575192,
                0.871341383095499,
                0.778232131723381,
                0.68170254050494,
                0.588289596735602,
                0.501733322395804,
                0.423883198614478,
                0.355359191309418,
                0.296018647364001,
                0.245277129251184,
            ],
        ),
    ];

    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let mut checked = 0;
    for (fixture, tails) in GOLDEN {
        let out = redq_in(
            dir.path(),
            &["exact", "--model", fixture, "--load", "0.8", "--qmax", "10"],
        );
        assert!(out.status.success(), "{fixture}: {out:?}");
        let got = read_csv_column(&dir.path().join("exact.csv"), 2);
        assert_eq!(got.len(), 11);
        for (q, (&g, &want)) in got.iter().zip(tails.iter()).enumerate() {
            assert!(
                (g - want).abs() < 1e-9,
                "{fixture} q={q}: {g} vs {want}"
            );
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 5.0, "took {secs:.2}s (budget 5s)");
    println!(
        "criterion 02: PASS - {checked} reference tail probabilities reproduced \
         within 1e-9 ({secs:.2}s)"
    );
}

/// Alpha-ratio goldens against the uniform complete baseline, through the
/// `light` command: N = 4 up to q = 6, N = 12 up to q = 4 (the enumeration
/// budget caps the complete-graph coefficients there).
#[test]
fn criterion_03_alpha_ratio_goldens() {
    const N4: [(&str, [f64; 7]); 3] = [
        (
            "hom-ring-4",
            [
                1.0,
                1.0,
                0.980392156862745,
                0.96,
                0.943204073638857,
                0.930467762326168,
                0.921194126435824,
            ],
        ),
        (
            "het-ring-4-e07",
            [
                1.0,
                1.0,
                0.971250971250971,
                0.937207122774133,
                0.905504444191747,
                0.878431372549021,
                0.856277088258454,
            ],
        ),
        (
            "het-ring-4-e09",
            [
                1.0,
                1.0,
                0.944822373393802,
                0.874890638670166,
                0.806306009471013,
                0.744710990847219,
                0.691423276153527,
            ],
        ),
    ];
    // (epsilon, ratios for q = 2, 3, 4)
    const N12: [(f64, [f64; 3]); 3] = [
        (0.5, [0.980044345898006, 0.946957652840008, 0.905852280011906]),
        (0.7, [0.976234649704038, 0.936711901044791, 0.887663426664451]),
        (0.9, [0.96498122434722, 0.907263089679475, 0.836822259808823]),
    ];

    let dir = tempfile::tempdir().unwrap();
    let mut checked = 0;
    for (fixture, ratios) in N4 {
        let out = redq_in(dir.path(), &["light", "--model", fixture, "--qmax", "6"]);
        assert!(out.status.success(), "{fixture}: {out:?}");
        let got = read_csv_column(&dir.path().join("light.csv"), 3);
        for (q, (&g, &want)) in got.iter().zip(ratios.iter()).enumerate() {
            assert!((g - want).abs() < 1e-9, "{fixture} q={q}: {g} vs {want}");
            checked += 1;
        }
    }

    let start12 = Instant::now();
    for (eps, ratios) in N12 {
        let model = ring(12, eps, vec![1.0; 12], 0.7).unwrap();
        let path = dir.path().join(format!("ring12-{eps}.toml"));
        std::fs::write(&path, redq_core::modelfile::to_toml(&model)).unwrap();
        let out = redq_in(
            dir.path(),
            &["light", "--model", path.to_str().unwrap(), "--qmax", "4"],
        );
        assert!(out.status.success(), "eps {eps}: {out:?}");
        let got = read_csv_column(&dir.path().join("light.csv"), 3);
        for (i, &want) in ratios.iter().enumerate() {
            let g = got[i + 2];
            assert!(
                (g - want).abs() < 1e-9,
                "N=12 eps={eps} q={}: {g} vs {want}",
                i + 2
            );
            checked += 1;
        }
    }
    let secs12 = start12.elapsed().as_secs_f64();
    assert!(secs12 < 60.0, "N=12 took {secs12:.2}s (budget 60s)");
    println!(
        "criterion 03: PASS - {checked} alpha-ratio goldens reproduced within 1e-9 \
         (N=12 portion {secs12:.2}s)"
    );
}

/// Closed-form four-server laws match the brute-force per-state enumeration
/// to 1e-10 for q <= 12.
#[test]
fn criterion_04_closed_forms_vs_bruteforce() {
    let start = Instant::now();
    let opts = OccupancyOptions {
        term_budget: 4_000_000_000,
    };
    let mut worst: f64 = 0.0;
    for load in [0.2, 0.5, 0.8] {
        let complete = uniform_complete(4, vec![1.0; 4], load).unwrap();
        let brute = occupancy_distribution(&complete, 12, &opts).unwrap();
        for (q, &exact) in brute.iter().enumerate() {
            let cf = closed_form_n4(N4Family::Complete, load, q).unwrap();
            let err = (cf - exact).abs();
            assert!(err < 1e-10, "complete load={load} q={q}: err {err}");
            worst = worst.max(err);
        }
        for eps in [0.5, 0.7, 0.9] {
            let m = ring(4, eps, vec![1.0; 4], load).unwrap();
            let brute = occupancy_distribution(&m, 12, &opts).unwrap();
            for (q, &exact) in brute.iter().enumerate() {
                let cf = closed_form_n4(N4Family::Ring { epsilon: eps }, load, q).unwrap();
                let err = (cf - exact).abs();
                assert!(err < 1e-10, "ring eps={eps} load={load} q={q}: err {err}");
                worst = worst.max(err);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    println!(
        "criterion 04: PASS - closed forms match brute force for q <= 12, \
         4 graphs x 3 loads (worst |err| = {worst:.2e}, {secs:.1}s)"
    );
}

/// Stochastic dominance of the complete graph over the homogeneous ring on
/// the full load grid up to q = 50.
#[test]
fn criterion_05_stochastic_dominance() {
    let loads: Vec<f64> = (1..=19).map(|i| i as f64 * 0.05).collect();
    let report = dominance_check(&loads, 50, &[0.6, 0.7, 0.8, 0.9]).unwrap();
    assert_eq!(report.violations, 0, "dominance violations found");
    println!(
        "criterion 05: PASS - complete-graph tails below homogeneous-ring tails \
         at all {} (load, q) pairs",
        report.rows.len()
    );
}

fn heavy_fixtures() -> Vec<(&'static str, CompatibilityModel)> {
    vec![
        ("fig1-ring", fig1_ring(0.7).unwrap()),
        ("tree-example", path_tree_example(3, 0.5, 1.0, 0.7).unwrap()),
    ]
}

/// Scaled-MGF convergence to the collapse limit and scaled per-type means
/// within 2% of the type probabilities at load 0.999.
#[test]
fn criterion_06_heavy_traffic_collapse() {
    let popts = PgfOptions::default();
    for (name, model) in heavy_fixtures() {
        let t = vec![1.0; model.type_count()];
        let probe = heavy_traffic_probe(&model, &[0.9, 0.99, 0.999], &t, &popts).unwrap();
        assert!(
            probe.rows.windows(2).all(|w| w[1].rel_error < w[0].rel_error),
            "{name}: MGF errors not strictly decreasing: {:?}",
            probe.rows.iter().map(|r| r.rel_error).collect::<Vec<_>>()
        );
        let last = probe.rows.last().unwrap();
        assert!(
            last.rel_error < 0.01,
            "{name}: MGF error {} at load 0.999",
            last.rel_error
        );

        let collapse = collapse_report(&model, &[0.999], &popts).unwrap();
        for row in &collapse.rows[0].per_type {
            assert!(
                row.rel_err < 0.02,
                "{name} type {}: scaled mean {} vs target {}",
                row.index,
                row.scaled_mean,
                row.target
            );
        }
        println!(
            "criterion 06: PASS ({name}) - MGF errors {:?} decreasing, < 1% at 0.999; \
             worst scaled type-mean error {:.2e}",
            probe
                .rows
                .iter()
                .map(|r| format!("{:.2e}", r.rel_error))
                .collect::<Vec<_>>(),
            collapse.rows[0]
                .per_type
                .iter()
                .map(|r| r.rel_err)
                .fold(0.0f64, f64::max)
        );
    }
}

/// Scaled per-server replica means within 2% of q_n at load 0.999.
#[test]
fn criterion_07_server_replica_collapse() {
    let popts = PgfOptions::default();
    for (name, model) in heavy_fixtures() {
        let collapse = collapse_report(&model, &[0.999], &popts).unwrap();
        let mut worst: f64 = 0.0;
        for row in &collapse.rows[0].per_server {
            assert!(
                row.rel_err < 0.02,
                "{name} server {}: scaled mean {} vs q_n {}",
                row.index,
                row.scaled_mean,
                row.target
            );
            worst = worst.max(row.rel_err);
        }
        println!(
            "criterion 07: PASS ({name}) - scaled per-server means within 2% of q_n \
             at load 0.999 (worst {worst:.2e})"
        );
    }
}

/// Enumerates every state whose exact stationary probability is at least the
/// threshold (weights shrink along extensions, so the search can prune).
fn states_above(model: &CompatibilityModel, threshold: f64) -> Vec<(SystemState, f64)> {
    let c = normalization_constant(model, &PgfOptions::default()).unwrap();
    let max_factor: f64 = (0..model.type_count())
        .map(|t| {
            model.total_arrival_rate() * model.job_types()[t].prob
                / model.active_service_rate(&[t]).unwrap()
        })
        .fold(0.0, f64::max);
    assert!(
        max_factor < 1.0,
        "pruning requires every extension factor below one"
    );
    let mut out = Vec::new();
    let mut stack = vec![(Vec::<usize>::new(), 1.0f64)];
    while let Some((types, weight)) = stack.pop() {
        let prob = c * weight;
        if prob < threshold {
            continue;
        }
        out.push((SystemState::from_types(types.clone()), prob));
        for t in 0..model.type_count() {
            let mut next = types.clone();
            next.push(t);
            let w = c * stationary_weight(model, &SystemState::from_types(next.clone()));
            if w >= threshold {
                stack.push((next, w / c));
            }
        }
    }
    out
}

/// Empirical state probabilities match the product-form law within 3
/// standard errors over 20 replications (5% of states may exceed).
#[test]
fn criterion_08_product_form_vs_simulation() {
    let start = Instant::now();
    let model = fig1_ring(0.7).unwrap();
    let targets = states_above(&model, 1e-3);
    assert!(targets.len() > 20, "only {} states above 1e-3", targets.len());

    let est = run(
        &model,
        &SimulationParams {
            horizon: 1e5,
            seed: 90210,
            replications: 20,
            track_states: true,
            ..Default::default()
        },
    )
    .unwrap();
    let states = est.state_probs.as_ref().unwrap();
    let reps = est.replications as f64;

    let mut exceed = 0;
    for (state, exact) in &targets {
        let (mean, std) = states
            .get(state)
            .map(|p| (p.mean, p.std))
            .unwrap_or((0.0, 0.0));
        let se = std / reps.sqrt();
        if (mean - exact).abs() > 3.0 * se {
            exceed += 1;
        }
    }
    let allowed = (0.05 * targets.len() as f64).floor() as usize;
    let secs = start.elapsed().as_secs_f64();
    assert!(
        exceed <= allowed,
        "{exceed} of {} states beyond 3 standard errors (allowed {allowed})",
        targets.len()
    );
    assert!(secs < 120.0, "took {secs:.2}s (budget 120s)");
    println!(
        "criterion 08: PASS - {} states with exact probability >= 1e-3; \
         {exceed} beyond 3 standard errors (allowed {allowed}); {secs:.1}s",
        targets.len()
    );
}

/// Scaled sojourn means within 5% of 1/(N mu) at load 0.99 and scaled-sojourn
/// Kolmogorov distance to Exp(N mu) decreasing from load 0.8 to 0.99.
#[test]
fn criterion_09_sojourn_limits() {
    let start = Instant::now();
    let model = fig1_ring(0.7).unwrap();
    let report = sojourn_limit_check(
        &model,
        &[0.8, 0.99],
        &SimulationParams {
            horizon: 2e6,
            seed: 2027,
            replications: 16,
            ..Default::default()
        },
    )
    .unwrap();
    let at99 = &report.rows[1];
    let mut worst: f64 = 0.0;
    for tr in &at99.per_type {
        assert!(
            tr.rel_err_sojourn < 0.05,
            "type {}: scaled sojourn {} vs {}",
            tr.type_index,
            tr.scaled_mean_sojourn,
            tr.target
        );
        worst = worst.max(tr.rel_err_sojourn);
    }
    for (t8, t99) in report.rows[0].per_type.iter().zip(&at99.per_type) {
        assert!(
            t99.ks_scaled_sojourn < t8.ks_scaled_sojourn,
            "type {}: KS {} at 0.99 not below {} at 0.8",
            t8.type_index,
            t99.ks_scaled_sojourn,
            t8.ks_scaled_sojourn
        );
    }
    let secs = start.elapsed().as_secs_f64();
    println!(
        "criterion 09: PASS - scaled sojourn within 5% of 1/(N mu) at load 0.99 \
         (worst {worst:.3}); KS to Exp(N mu) decreasing 0.8 -> 0.99 per type ({secs:.1}s)"
    );
}

/// Little's law on every bundled fixture at horizon 1e7: mean-form residual
/// below 1%, distributional residual below 2%.
#[test]
fn criterion_10_littles_law() {
    let start = Instant::now();
    let fixtures: Vec<(&str, CompatibilityModel)> = vec![
        ("fig1-ring", fig1_ring(0.7).unwrap()),
        ("uniform-complete-4", uniform_complete(4, vec![1.0; 4], 0.7).unwrap()),
        ("hom-ring-4", ring(4, 0.5, vec![1.0; 4], 0.7).unwrap()),
        ("het-ring-4-e07", ring(4, 0.7, vec![1.0; 4], 0.7).unwrap()),
        ("het-ring-4-e09", ring(4, 0.9, vec![1.0; 4], 0.7).unwrap()),
        ("tree-example", path_tree_example(3, 0.5, 1.0, 0.7).unwrap()),
        ("singleton-fullset", singleton_fullset_example(4, 0.1, 1.0, 0.7).unwrap()),
    ];
    let mut worst_mean: f64 = 0.0;
    let mut worst_dist: f64 = 0.0;
    for (name, model) in fixtures {
        let est = run(
            &model,
            &SimulationParams {
                horizon: 1e7,
                seed: 7,
                replications: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let report = littles_law_check(&est, &model);
        for row in &report.rows {
            assert_eq!(
                row.status,
                LittlesLawStatus::Ok,
                "{name} type {} lacks completions",
                row.type_index
            );
        }
        let mean_res = report.max_mean_residual();
        let dist_res = report.max_distributional_residual();
        assert!(mean_res < 0.01, "{name}: mean residual {mean_res}");
        assert!(dist_res < 0.02, "{name}: distributional residual {dist_res}");
        worst_mean = worst_mean.max(mean_res);
        worst_dist = worst_dist.max(dist_res);
    }
    let secs = start.elapsed().as_secs_f64();
    println!(
        "criterion 10: PASS - 7 fixtures at horizon 1e7: worst mean residual \
         {worst_mean:.2e} (< 1%), worst distributional residual {worst_dist:.2e} \
         (< 2%) ({secs:.1}s)"
    );
}

/// Verdict agreement of the equivalent stability formulations on 200
/// randomized models, plus the sparse fixtures across the ε grid.
#[test]
fn criterion_11_stability_equivalences() {
    let mut rng = SplitMix(0xace5);
    let opts = StabilityOptions::default();
    for i in 0..200 {
        let model = random_model(&mut rng);
        let a = check_stability_typesets(&model, &opts).unwrap();
        let b = check_stability_serversets(&model, &opts).unwrap();
        assert_eq!(a.verdict, b.verdict, "model {i}: stability forms disagree");
        let p = check_local_stability(&model, &opts).unwrap();
        let d = local_stability_dual_forms(&model, &opts).unwrap();
        assert_eq!(p.verdict, d.verdict, "model {i}: local forms disagree");
    }
    for eps in [0.01, 0.1, 0.5] {
        for model in [
            path_tree_example(4, eps, 1.0, 0.5).unwrap(),
            singleton_fullset_example(4, eps, 1.0, 0.5).unwrap(),
        ] {
            let r = check_local_stability(&model, &opts).unwrap();
            assert_eq!(r.verdict, StabilityVerdict::Stable, "eps={eps}");
        }
    }
    for model in [
        path_tree_example(4, 0.0, 1.0, 0.5).unwrap(),
        singleton_fullset_example(4, 0.0, 1.0, 0.5).unwrap(),
    ] {
        let r = check_local_stability(&model, &opts).unwrap();
        assert_eq!(r.verdict, StabilityVerdict::Boundary);
    }
    println!(
        "criterion 11: PASS - 200 random models: type/server and primal/dual verdicts \
         agree; sparse fixtures locally stable for eps > 0 and boundary at eps = 0"
    );
}

/// Identical invocations with identical seeds produce byte-identical data
/// files.
#[test]
fn criterion_12_reproducibility() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let sim_args = [
        "simulate",
        "--model",
        "fig1-ring",
        "--horizon",
        "50000",
        "--seed",
        "9",
        "--replications",
        "3",
        "--track-states",
    ];
    assert!(redq_in(dir_a.path(), &sim_args).status.success());
    assert!(redq_in(dir_b.path(), &sim_args).status.success());
    let mut compared = 0;
    for file in [
        "simulate-types.csv",
        "simulate-servers.csv",
        "simulate-delays.csv",
        "simulate-states.csv",
    ] {
        let a = std::fs::read(dir_a.path().join(file)).unwrap();
        let b = std::fs::read(dir_b.path().join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
        assert!(!a.is_empty());
        compared += 1;
    }
    let exact_args = ["exact", "--model", "het-ring-4-e09", "--load", "0.8"];
    assert!(redq_in(dir_a.path(), &exact_args).status.success());
    assert!(redq_in(dir_b.path(), &exact_args).status.success());
    let a = std::fs::read(dir_a.path().join("exact.csv")).unwrap();
    let b = std::fs::read(dir_b.path().join("exact.csv")).unwrap();
    assert_eq!(a, b, "exact.csv differs between identical runs");
    compared += 1;
    println!(
        "criterion 12: PASS - {compared} data files byte-identical across repeated \
         seeded invocations"
    );
}
