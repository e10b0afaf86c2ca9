//! Light-weight simulator/analytics consistency runs (the acceptance suite
//! repeats these with production horizons).

use redq_core::model::fig1_ring;
use redq_core::product_form::{
    mean_per_type, normalization_constant, stationary_weight, total_queue_distribution,
    PgfOptions,
};
use redq_core::simulator::{littles_law_check, run, LittlesLawStatus, SimulationParams};
use redq_core::SystemState;

#[test]
fn empirical_state_probabilities_track_stationary_weights() {
    let model = fig1_ring(0.6).unwrap();
    let est = run(
        &model,
        &SimulationParams {
            horizon: 3e4,
            seed: 2024,
            replications: 6,
            track_states: true,
            ..Default::default()
        },
    )
    .unwrap();
    let c = normalization_constant(&model, &PgfOptions::default()).unwrap();
    let states = est.state_probs.as_ref().unwrap();

    // Empty state plus all states of length <= 2.
    let mut checked = 0;
    let mut targets = vec![SystemState::empty()];
    for a in 0..4 {
        targets.push(SystemState::from_types(vec![a]));
        for b in 0..4 {
            targets.push(SystemState::from_types(vec![a, b]));
        }
    }
    for state in targets {
        let exact = c * stationary_weight(&model, &state);
        if exact < 5e-3 {
            continue;
        }
        let got = states.get(&state).map(|s| s.mean).unwrap_or(0.0);
        let err = (got - exact).abs() / exact;
        assert!(err < 0.25, "state {:?}: {got} vs {exact}", state.types());
        checked += 1;
    }
    assert!(checked >= 5, "only {checked} states had enough mass");
}

#[test]
fn simulated_type_means_track_exact_means() {
    let model = fig1_ring(0.6).unwrap();
    let est = run(
        &model,
        &SimulationParams {
            horizon: 1e5,
            seed: 7,
            replications: 2,
            ..Default::default()
        },
    )
    .unwrap();
    let exact = mean_per_type(&model, &PgfOptions::default()).unwrap();
    for (t, e) in exact.iter().enumerate() {
        let got = est.per_type[t].mean;
        assert!(
            (got - e).abs() / e < 0.12,
            "type {t}: {got} vs {e}"
        );
    }
}

#[test]
fn simulated_total_distribution_tracks_exact_law() {
    let model = fig1_ring(0.6).unwrap();
    let est = run(
        &model,
        &SimulationParams {
            horizon: 1e5,
            seed: 99,
            replications: 2,
            ..Default::default()
        },
    )
    .unwrap();
    let exact = total_queue_distribution(&model, 6).unwrap();
    for (q, &want) in exact.iter().enumerate().take(5) {
        let got = est.total_probs.get(q).copied().unwrap_or(0.0);
        assert!((got - want).abs() < 0.02, "q={q}: {got} vs {want}");
    }
}

/// The per-server replica distribution is the push-forward of the joint
/// type-count occupancy: rebuild it from the tracked state probabilities.
#[test]
fn replica_distribution_is_pushforward_of_state_law() {
    let model = fig1_ring(0.5).unwrap();
    let est = run(
        &model,
        &SimulationParams {
            horizon: 5e4,
            seed: 31,
            replications: 2,
            track_states: true,
            max_tracked_state_len: 24,
            ..Default::default()
        },
    )
    .unwrap();
    let states = est.state_probs.as_ref().unwrap();
    let tracked_mass: f64 = states.values().map(|p| p.mean).sum();
    assert!(tracked_mass > 0.999, "tracked mass only {tracked_mass}");

    for server in 1..=4usize {
        let mut pushed = vec![0.0f64; est.per_server[server - 1].probs.len()];
        for (state, prob) in states {
            let mut counts = vec![0u64; model.type_count()];
            for &t in state.types() {
                counts[t] += 1;
            }
            let replicas = model.replica_counts(&counts)[server - 1] as usize;
            if replicas < pushed.len() {
                pushed[replicas] += prob.mean;
            }
        }
        for (count, (&a, &b)) in pushed
            .iter()
            .zip(&est.per_server[server - 1].probs)
            .enumerate()
        {
            assert!(
                (a - b).abs() < 1e-3 + (1.0 - tracked_mass),
                "server {server} count {count}: pushforward {a} vs direct {b}"
            );
        }
    }
}

#[test]
fn littles_law_residuals_shrink() {
    let model = fig1_ring(0.6).unwrap();
    let est = run(
        &model,
        &SimulationParams {
            horizon: 2e5,
            seed: 5,
            replications: 2,
            ..Default::default()
        },
    )
    .unwrap();
    let report = littles_law_check(&est, &model);
    for row in &report.rows {
        assert_eq!(row.status, LittlesLawStatus::Ok);
    }
    assert!(report.max_mean_residual() < 0.03);
    assert!(report.max_distributional_residual() < 0.03);
}

/// Simulated busy probability on the four-server complete graph at load 0.8
/// agrees with the exact value 0.9315555...
#[test]
fn simulated_busy_probability_matches_exact_value() {
    let model = redq_core::model::uniform_complete(4, vec![1.0; 4], 0.8).unwrap();
    let est = run(
        &model,
        &SimulationParams {
            horizon: 2e5,
            seed: 17,
            replications: 4,
            ..Default::default()
        },
    )
    .unwrap();
    let busy = 1.0 - est.total_probs[0];
    assert!(
        (busy - 0.931555555555556).abs() < 0.006,
        "P{{Q >= 1}} = {busy}"
    );
}

/// The scaled gap between sojourn and waiting times shrinks as the load
/// grows (the residual service piece is bounded by one service time).
#[test]
fn scaled_sojourn_wait_gap_vanishes() {
    let model = fig1_ring(0.7).unwrap();
    let mut gaps = Vec::new();
    for load in [0.7, 0.95] {
        let m = model.with_load(load).unwrap();
        let est = run(
            &m,
            &SimulationParams {
                horizon: 2e5,
                seed: 23,
                replications: 2,
                ..Default::default()
            },
        )
        .unwrap();
        let gap = est
            .delays
            .iter()
            .map(|d| (1.0 - load) * (d.mean_sojourn - d.mean_wait))
            .fold(0.0f64, f64::max);
        gaps.push(gap);
    }
    assert!(
        gaps[1] < gaps[0] / 2.0,
        "scaled V-W gap did not shrink: {gaps:?}"
    );
}

#[test]
fn too_few_jobs_reported_as_insufficient() {
    let model = fig1_ring(0.5).unwrap();
    let est = run(
        &model,
        &SimulationParams {
            horizon: 200.0,
            warmup: Some(10.0),
            seed: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let report = littles_law_check(&est, &model);
    assert!(report
        .rows
        .iter()
        .any(|r| r.status == LittlesLawStatus::InsufficientData));
}
