use crate::manifest::RunManifest;
use crate::output::{parse_f64_list, write_csv};
use crate::{fixtures, Cli, CliError, Command, ModelArgs};
use redq_core::asymptotics::{
    collapse_report, dominance_check, heavy_traffic_probe, light_traffic_ratio,
    sojourn_limit_check,
};
use redq_core::model::{fig1_ring, uniform_complete, CompatibilityModel};
use redq_core::product_form::{
    normalization_constant, occupancy_distribution, pgf, stationary_weight, OccupancyOptions,
    PgfOptions,
};
use redq_core::simulator::{run, SimulationParams};
use redq_core::stability::{
    check_local_stability, check_stability_serversets, check_stability_typesets,
    local_stability_dual_forms, StabilityOptions, StabilityReport, StabilityVerdict,
};
use redq_core::{modelfile, SystemState};
use std::path::{Path, PathBuf};
use std::time::Instant;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct ResolvedModel {
    model: CompatibilityModel,
    name: String,
    content: String,
}

fn resolve_named_model(name_or_path: &str, load: Option<f64>) -> Result<ResolvedModel, CliError> {
    let (name, content) = match fixtures::lookup(name_or_path) {
        Some(text) => (name_or_path.to_string(), text.to_string()),
        None => {
            let content = std::fs::read_to_string(name_or_path).map_err(|e| {
                usage(format!(
                    "cannot read model file '{name_or_path}' \
                     (bundled fixtures: {}): {e}",
                    fixtures::names().join(", ")
                ))
            })?;
            (name_or_path.to_string(), content)
        }
    };
    let mut model = modelfile::parse_model(&content, &name)?;
    if let Some(load) = load {
        if !load.is_finite() || load <= 0.0 {
            return Err(usage(format!("--load {load} must be a positive number")));
        }
        model = model.with_load(load)?;
    }
    Ok(ResolvedModel {
        model,
        name,
        content,
    })
}

fn resolve_model(args: &ModelArgs) -> Result<ResolvedModel, CliError> {
    resolve_named_model(&args.model, args.load)
}

fn out_dir(cli: &Cli) -> PathBuf {
    cli.out_dir
        .clone()
        .or_else(|| std::env::var_os("REDQ_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn resolve_output(cli: &Cli, explicit: &Option<PathBuf>, default_name: &str) -> PathBuf {
    explicit
        .clone()
        .unwrap_or_else(|| out_dir(cli).join(default_name))
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Usage(format!("cannot write {}: {e}", path.display()))
}

fn verdict_name(v: StabilityVerdict) -> &'static str {
    match v {
        StabilityVerdict::Stable => "stable",
        StabilityVerdict::Boundary => "boundary",
        StabilityVerdict::Unstable => "unstable",
    }
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    match &cli.command {
        Command::Stability {
            model,
            full,
            output,
        } => cmd_stability(&cli, model, *full, output, started),
        Command::Exact {
            model,
            qmax,
            budget,
            output,
        } => cmd_exact(&cli, model, *qmax, *budget, output, started),
        Command::Pgf { model, z, output } => cmd_pgf(&cli, model, z, output, started),
        Command::Constant { model, output } => cmd_constant(&cli, model, output, started),
        Command::Simulate {
            model,
            horizon,
            warmup,
            seed,
            replications,
            track_states,
            output,
        } => cmd_simulate(
            &cli,
            model,
            *horizon,
            *warmup,
            *seed,
            *replications,
            *track_states,
            output,
            started,
        ),
        Command::Heavy {
            model,
            loads,
            t,
            sim,
            sim_horizon,
            sim_seed,
            sim_replications,
            output,
        } => cmd_heavy(
            &cli,
            model,
            loads,
            *t,
            *sim,
            *sim_horizon,
            *sim_seed,
            *sim_replications,
            output,
            started,
        ),
        Command::Light {
            model,
            qmax,
            baseline,
            budget,
            output,
        } => cmd_light(&cli, model, *qmax, baseline, *budget, output, started),
        Command::Dominance {
            loads,
            qmax,
            eps,
            output,
        } => cmd_dominance(&cli, loads, *qmax, eps, output, started),
        Command::Demo { load } => cmd_demo(*load),
    }
}

fn stability_rows(check: &str, report: &StabilityReport, rows: &mut Vec<String>) {
    for row in &report.rows {
        rows.push(format!(
            "{check},{},{},{},{}",
            row.subset, row.lhs, row.rhs, row.slack
        ));
    }
}

fn cmd_stability(
    cli: &Cli,
    margs: &ModelArgs,
    full: bool,
    output: &Option<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    let resolved = resolve_model(margs)?;
    let model = &resolved.model;
    let opts = StabilityOptions {
        full_dump: full,
        ..StabilityOptions::default()
    };
    let typesets = check_stability_typesets(model, &opts)?;
    let serversets = check_stability_serversets(model, &opts)?;
    let local = check_local_stability(model, &opts)?;
    let dual = local_stability_dual_forms(model, &opts)?;

    let path = resolve_output(cli, output, "stability.csv");
    let mut rows = Vec::new();
    stability_rows("eq-typesets", &typesets, &mut rows);
    stability_rows("eq-serversets", &serversets, &mut rows);
    stability_rows("local-primal", &local, &mut rows);
    stability_rows("local-dual", &dual, &mut rows);
    write_csv(&path, "check,subset,lhs,rhs,slack", rows).map_err(|e| io_err(&path, e))?;

    let mut manifest = RunManifest::new("stability");
    manifest.set_model(&resolved.name, &resolved.content);
    manifest.param("load", model.load());
    manifest.param("full", full);
    manifest.record_output(&path);
    manifest.duration_secs = started.elapsed().as_secs_f64();
    manifest.write(&path).map_err(|e| io_err(&path, e))?;

    println!(
        "model {} at load {} (lambda = {})",
        resolved.name,
        model.load(),
        model.lambda()
    );
    for (name, report) in [
        ("stability (type families)  ", &typesets),
        ("stability (server subsets) ", &serversets),
        ("local stability (primal)   ", &local),
        ("local stability (dual)     ", &dual),
    ] {
        println!(
            "{name}: {:9} | worst {} | lhs {:.6} rhs {:.6} slack {:.3e} | {} constraints",
            verdict_name(report.verdict),
            report.worst.subset,
            report.worst.lhs,
            report.worst.rhs,
            report.worst.slack,
            report.total_constraints,
        );
    }
    println!("rows written to {}", path.display());
    Ok(())
}

fn cmd_exact(
    cli: &Cli,
    margs: &ModelArgs,
    qmax: usize,
    budget: u128,
    output: &Option<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    let resolved = resolve_model(margs)?;
    let model = &resolved.model;
    let probs = occupancy_distribution(model, qmax, &OccupancyOptions { term_budget: budget })?;

    let path = resolve_output(cli, output, "exact.csv");
    let mut rows = Vec::with_capacity(probs.len());
    let mut below = 0.0;
    for (q, &p) in probs.iter().enumerate() {
        rows.push(format!("{q},{p},{}", 1.0 - below));
        below += p;
    }
    write_csv(&path, "q,probability,tail", rows).map_err(|e| io_err(&path, e))?;

    let mut manifest = RunManifest::new("exact");
    manifest.set_model(&resolved.name, &resolved.content);
    manifest.param("load", model.load());
    manifest.param("qmax", qmax);
    manifest.param("budget", budget);
    manifest.record_output(&path);
    manifest.duration_secs = started.elapsed().as_secs_f64();
    manifest.write(&path).map_err(|e| io_err(&path, e))?;

    println!(
        "model {} at load {}: P{{empty}} = {}, mass covered up to q = {qmax}: {}",
        resolved.name,
        model.load(),
        probs[0],
        below
    );
    println!("rows written to {}", path.display());
    Ok(())
}

fn cmd_pgf(
    cli: &Cli,
    margs: &ModelArgs,
    z_text: &str,
    output: &Option<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    let resolved = resolve_model(margs)?;
    let model = &resolved.model;
    let z_values = parse_f64_list(z_text, "z").map_err(usage)?;
    let z = match z_values.len() {
        1 => vec![z_values[0]; model.type_count()],
        n if n == model.type_count() => z_values,
        n => {
            return Err(usage(format!(
                "--z has {n} entries, model has {} job types",
                model.type_count()
            )))
        }
    };
    let eval = pgf(model, &z, &PgfOptions::default())?;

    let path = resolve_output(cli, output, "pgf.csv");
    write_csv(
        &path,
        "value,term_count,lambda",
        [format!("{},{},{}", eval.value, eval.term_count, eval.lambda)],
    )
    .map_err(|e| io_err(&path, e))?;

    let mut manifest = RunManifest::new("pgf");
    manifest.set_model(&resolved.name, &resolved.content);
    manifest.param("load", model.load());
    manifest.param("z", z_text);
    manifest.record_output(&path);
    manifest.duration_secs = started.elapsed().as_secs_f64();
    manifest.write(&path).map_err(|e| io_err(&path, e))?;

    println!(
        "pgf = {} ({} ordered-vector terms) at load {}",
        eval.value,
        eval.term_count,
        model.load()
    );
    println!("row written to {}", path.display());
    Ok(())
}

fn cmd_constant(
    cli: &Cli,
    margs: &ModelArgs,
    output: &Option<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    let resolved = resolve_model(margs)?;
    let model = &resolved.model;
    let c = normalization_constant(model, &PgfOptions::default())?;

    let path = resolve_output(cli, output, "constant.csv");
    write_csv(&path, "constant", [format!("{c}")]).map_err(|e| io_err(&path, e))?;

    let mut manifest = RunManifest::new("constant");
    manifest.set_model(&resolved.name, &resolved.content);
    manifest.param("load", model.load());
    manifest.record_output(&path);
    manifest.duration_secs = started.elapsed().as_secs_f64();
    manifest.write(&path).map_err(|e| io_err(&path, e))?;

    println!(
        "C = P{{empty}} = {c} for {} at load {}",
        resolved.name,
        model.load()
    );
    println!("row written to {}", path.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    cli: &Cli,
    margs: &ModelArgs,
    horizon: f64,
    warmup: Option<f64>,
    seed: u64,
    replications: usize,
    track_states: bool,
    output: &Option<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    let resolved = resolve_model(margs)?;
    let model = &resolved.model;
    let params = SimulationParams {
        horizon,
        warmup,
        seed,
        replications,
        track_states,
        ..Default::default()
    };
    let est = run(model, &params)?;

    let stem = resolve_output(cli, output, "simulate");
    let stem_str = stem.display().to_string();
    let types_path = PathBuf::from(format!("{stem_str}-types.csv"));
    let servers_path = PathBuf::from(format!("{stem_str}-servers.csv"));
    let delays_path = PathBuf::from(format!("{stem_str}-delays.csv"));

    let mut type_rows = Vec::new();
    for (t, occ) in est.per_type.iter().enumerate() {
        for (count, &p) in occ.probs.iter().enumerate() {
            type_rows.push(format!(
                "{t},{},{count},{p}",
                model.job_types()[t].servers
            ));
        }
    }
    write_csv(&types_path, "type,servers,count,probability", type_rows)
        .map_err(|e| io_err(&types_path, e))?;

    let mut server_rows = Vec::new();
    for (s, occ) in est.per_server.iter().enumerate() {
        for (count, &p) in occ.probs.iter().enumerate() {
            server_rows.push(format!("{},{count},{p}", s + 1));
        }
    }
    write_csv(&servers_path, "server,count,probability", server_rows)
        .map_err(|e| io_err(&servers_path, e))?;

    let delay_rows: Vec<String> = est
        .delays
        .iter()
        .enumerate()
        .map(|(t, d)| {
            format!(
                "{t},{},{},{},{},{},{},{},{},{},{},{},{}",
                model.job_types()[t].servers,
                d.completed,
                d.mean_sojourn,
                d.sojourn_half_width,
                d.mean_wait,
                d.wait_half_width,
                d.sojourn_quantiles[0].1,
                d.sojourn_quantiles[1].1,
                d.sojourn_quantiles[2].1,
                d.wait_quantiles[0].1,
                d.wait_quantiles[1].1,
                d.wait_quantiles[2].1,
            )
        })
        .collect();
    write_csv(
        &delays_path,
        "type,servers,completed,mean_sojourn,sojourn_hw95,mean_wait,wait_hw95,\
         sojourn_p50,sojourn_p90,sojourn_p99,wait_p50,wait_p90,wait_p99",
        delay_rows,
    )
    .map_err(|e| io_err(&delays_path, e))?;

    let mut outputs = vec![types_path.clone(), servers_path, delays_path];
    if let Some(states) = &est.state_probs {
        let states_path = PathBuf::from(format!("{stem_str}-states.csv"));
        let mut entries: Vec<(&SystemState, f64, f64)> = states
            .iter()
            .map(|(s, p)| (s, p.mean, p.std))
            .collect();
        entries.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .unwrap()
                .then_with(|| a.0.types().cmp(b.0.types()))
        });
        let rows: Vec<String> = entries
            .iter()
            .map(|(s, mean, std)| {
                let key: Vec<String> = s.types().iter().map(|t| t.to_string()).collect();
                format!("{},{mean},{std}", key.join(" "))
            })
            .collect();
        write_csv(&states_path, "state,probability,std", rows)
            .map_err(|e| io_err(&states_path, e))?;
        outputs.push(states_path);
    }

    let mut manifest = RunManifest::new("simulate");
    manifest.set_model(&resolved.name, &resolved.content);
    manifest.param("load", model.load());
    manifest.param("horizon", horizon);
    manifest.param("warmup", est.warmup);
    manifest.param("replications", replications);
    manifest.param("track_states", track_states);
    manifest.seeds = vec![seed];
    manifest.param(
        "streams",
        est.streams
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    for p in &outputs {
        manifest.record_output(p);
    }
    manifest.duration_secs = started.elapsed().as_secs_f64();
    manifest.write(&types_path).map_err(|e| io_err(&types_path, e))?;

    let flag = est
        .stability
        .map(verdict_name)
        .unwrap_or("unknown (cap exceeded)");
    println!(
        "simulated {} at load {}: {} events over {} replications x horizon {} (stability: {flag})",
        resolved.name,
        model.load(),
        est.events,
        replications,
        horizon
    );
    println!("P{{empty}} estimate: {}", est.total_probs.first().unwrap_or(&0.0));
    for p in &outputs {
        println!("written {}", p.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_heavy(
    cli: &Cli,
    margs: &ModelArgs,
    loads_text: &str,
    t: f64,
    sim: bool,
    sim_horizon: f64,
    sim_seed: u64,
    sim_replications: usize,
    output: &Option<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    let resolved = resolve_model(margs)?;
    let model = &resolved.model;
    let loads = parse_f64_list(loads_text, "loads").map_err(usage)?;
    let popts = PgfOptions::default();
    let tvec = vec![t; model.type_count()];

    let probe = heavy_traffic_probe(model, &loads, &tvec, &popts)?;
    let collapse = collapse_report(model, &loads, &popts)?;

    let path = resolve_output(cli, output, "heavy.csv");
    let mut rows = Vec::new();
    for r in &probe.rows {
        rows.push(format!(
            "{},mgf,,{},{},{}",
            r.load, r.value, probe.limit, r.rel_error
        ));
    }
    for row in &collapse.rows {
        for tr in &row.per_type {
            rows.push(format!(
                "{},type_mean,{},{},{},{}",
                row.load,
                model.job_types()[tr.index].servers,
                tr.scaled_mean,
                tr.target,
                tr.rel_err
            ));
        }
        for sr in &row.per_server {
            rows.push(format!(
                "{},server_mean,{},{},{},{}",
                row.load, sr.index, sr.scaled_mean, sr.target, sr.rel_err
            ));
        }
        rows.push(format!("{},ks_exp1,,{},,", row.load, row.ks_to_exp1));
    }
    write_csv(&path, "load,metric,key,value,target,rel_err", rows)
        .map_err(|e| io_err(&path, e))?;
    let mut outputs = vec![path.clone()];

    if sim {
        let params = SimulationParams {
            horizon: sim_horizon,
            seed: sim_seed,
            replications: sim_replications,
            ..Default::default()
        };
        let sojourn = sojourn_limit_check(model, &loads, &params)?;
        let sim_path = resolve_output(cli, &None, "heavy-sim.csv");
        let mut rows = Vec::new();
        for row in &sojourn.rows {
            for tr in &row.per_type {
                rows.push(format!(
                    "{},{},{},{},{},{},{},{},{}",
                    row.load,
                    tr.type_index,
                    tr.completed,
                    tr.scaled_mean_sojourn,
                    tr.scaled_mean_wait,
                    tr.target,
                    tr.rel_err_sojourn,
                    tr.rel_err_wait,
                    tr.ks_scaled_sojourn
                ));
            }
        }
        write_csv(
            &sim_path,
            "load,type,completed,scaled_mean_sojourn,scaled_mean_wait,target,\
             rel_err_sojourn,rel_err_wait,ks_scaled_sojourn",
            rows,
        )
        .map_err(|e| io_err(&sim_path, e))?;
        outputs.push(sim_path);
    }

    let mut manifest = RunManifest::new("heavy");
    manifest.set_model(&resolved.name, &resolved.content);
    manifest.param("loads", loads_text);
    manifest.param("t", t);
    manifest.param("sim", sim);
    if sim {
        manifest.seeds = vec![sim_seed];
        manifest.param("sim_horizon", sim_horizon);
        manifest.param("sim_replications", sim_replications);
    }
    for p in &outputs {
        manifest.record_output(p);
    }
    manifest.duration_secs = started.elapsed().as_secs_f64();
    manifest.write(&path).map_err(|e| io_err(&path, e))?;

    let last = probe.rows.last().unwrap();
    println!(
        "mgf at t = {t}: limit {}, error {:.3e} at load {} (strictly decreasing: {})",
        probe.limit,
        last.rel_error,
        last.load,
        probe
            .rows
            .windows(2)
            .all(|w| w[1].rel_error < w[0].rel_error)
    );
    let worst = collapse
        .rows
        .last()
        .map(|r| {
            r.per_type
                .iter()
                .map(|x| x.rel_err)
                .fold(0.0f64, f64::max)
        })
        .unwrap_or(f64::NAN);
    println!(
        "worst scaled per-type mean error at load {}: {:.3e}",
        collapse.rows.last().map(|r| r.load).unwrap_or(f64::NAN),
        worst
    );
    for p in &outputs {
        println!("written {}", p.display());
    }
    Ok(())
}

fn cmd_light(
    cli: &Cli,
    margs: &ModelArgs,
    qmax: usize,
    baseline: &Option<String>,
    budget: u128,
    output: &Option<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    let resolved = resolve_model(margs)?;
    let model = &resolved.model;
    let (baseline_model, baseline_name) = match baseline {
        Some(name) => {
            let b = resolve_named_model(name, None)?;
            (b.model, b.name)
        }
        None => (
            uniform_complete(
                model.server_count(),
                model.speeds().to_vec(),
                model.lambda(),
            )?,
            "uniform-complete".to_string(),
        ),
    };
    let table = light_traffic_ratio(
        model,
        &baseline_model,
        qmax,
        &OccupancyOptions {
            term_budget: budget,
        },
    )?;

    let path = resolve_output(cli, output, "light.csv");
    let rows: Vec<String> = table
        .rows
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{},{}",
                r.q, r.alpha_model, r.alpha_baseline, r.ratio, r.proved_bound
            )
        })
        .collect();
    write_csv(&path, "q,alpha_model,alpha_baseline,ratio,proved_bound", rows)
        .map_err(|e| io_err(&path, e))?;

    let mut manifest = RunManifest::new("light");
    manifest.set_model(&resolved.name, &resolved.content);
    manifest.param("qmax", qmax);
    manifest.param("budget", budget);
    manifest.param("baseline", &baseline_name);
    manifest.record_output(&path);
    manifest.duration_secs = started.elapsed().as_secs_f64();
    manifest.write(&path).map_err(|e| io_err(&path, e))?;

    let bound_ok = table
        .rows
        .iter()
        .filter(|r| r.proved_bound && r.q >= 1)
        .all(|r| r.ratio <= 1.0 + 1e-12);
    println!(
        "alpha ratios vs {baseline_name} up to q = {qmax} \
         (baseline uniform complete: {}, bound for q <= 2 holds: {bound_ok})",
        table.baseline_is_uniform_complete
    );
    for r in &table.rows {
        println!("  q = {}: ratio = {}", r.q, r.ratio);
    }
    println!("rows written to {}", path.display());
    Ok(())
}

fn cmd_dominance(
    cli: &Cli,
    loads_text: &str,
    qmax: usize,
    eps_text: &str,
    output: &Option<PathBuf>,
    started: Instant,
) -> Result<(), CliError> {
    let loads = parse_f64_list(loads_text, "loads").map_err(usage)?;
    let eps = parse_f64_list(eps_text, "eps").map_err(usage)?;
    let report = dominance_check(&loads, qmax, &eps)?;

    let path = resolve_output(cli, output, "dominance.csv");
    let rows: Vec<String> = report
        .rows
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{},{}",
                r.load, r.q, r.tail_complete, r.tail_hom_ring, r.holds
            )
        })
        .collect();
    write_csv(&path, "load,q,tail_complete,tail_hom_ring,holds", rows)
        .map_err(|e| io_err(&path, e))?;

    let eps_path = resolve_output(cli, &None, "dominance-eps.csv");
    let eps_rows: Vec<String> = report
        .epsilon_observation
        .iter()
        .map(|r| format!("{},{},{}", r.epsilon, r.load, r.max_tail_gap))
        .collect();
    write_csv(&eps_path, "epsilon,load,max_tail_gap", eps_rows)
        .map_err(|e| io_err(&eps_path, e))?;

    let mut manifest = RunManifest::new("dominance");
    manifest.param("loads", loads_text);
    manifest.param("qmax", qmax);
    manifest.param("eps", eps_text);
    manifest.record_output(&path);
    manifest.record_output(&eps_path);
    manifest.duration_secs = started.elapsed().as_secs_f64();
    manifest.write(&path).map_err(|e| io_err(&path, e))?;

    println!(
        "complete-graph tails below homogeneous-ring tails: {} violations over {} loads, q <= {qmax}",
        report.violations,
        loads.len()
    );
    println!("rows written to {} and {}", path.display(), eps_path.display());
    Ok(())
}

fn cmd_demo(load: f64) -> Result<(), CliError> {
    if load.is_nan() || load <= 0.0 || load >= 1.0 {
        return Err(usage(format!("--load {load} must be in (0, 1)")));
    }
    let model = fig1_ring(load)?;
    let idx = |a: usize, b: usize| {
        model
            .type_index_of(redq_core::ServerSet::from_servers([a, b]).unwrap())
            .unwrap()
    };
    let state = SystemState::from_types(vec![idx(1, 2), idx(1, 4), idx(2, 3), idx(1, 4)]);
    let weight = stationary_weight(&model, &state);
    let c = normalization_constant(&model, &PgfOptions::default())?;

    println!("four identical unit-speed servers on a ring, edge probabilities");
    println!("  p{{1,2}} = 1/8   p{{2,3}} = 3/8   p{{3,4}} = 1/8   p{{1,4}} = 3/8");
    println!("arrival rate: 4*lambda with lambda = {} (load {load})", model.lambda());
    println!();
    println!("state c = ({{1,2}}, {{1,4}}, {{2,3}}, {{1,4}})  -- oldest job first");
    println!("servers work on their earliest compatible job:");
    println!("  server 1 -> job 1, server 2 -> job 1, server 3 -> job 3, server 4 -> job 2");
    println!();
    println!("stationary probability:");
    println!("  pi(c) = C * (4*lambda/mu)^4 * (p{{1,2}}/2) * (p{{1,4}}/3) * (p{{2,3}}/4) * (p{{1,4}}/4)");
    println!("  unnormalized weight pi(c)/C = {weight}");
    println!("  C = P{{empty}}            = {c}");
    println!("  pi(c)                    = {}", c * weight);
    Ok(())
}
