//! Each `eval` subcommand, run as a subprocess, against the library call.

mod common;

use adaptstream_core::models::{
    buffering_latency, combined_loss, connectivity_probability, effective_bitrate,
    effective_latency, fec_effective_loss, net_bitrate, optimal_gop, raw_bitrate,
    select_interface, selection_distribution, CompressionParams, CorrectionParams, GopParams,
    LinkMetrics, ReliabilityParams, SelectionContext, SelectionMode, VideoProfile,
};
use adaptstream_core::scenario::{
    active_connections, baseline_cost, district_population, offload_ratio, offloaded_volume,
    persons_per_tower, reduced_cost, CostModel, District, OffloadConfig, SocialProfile,
};
use common::{adaptstream, eval_values};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check(args: &[&str], name: &str, expected: &[f64]) -> String {
    let mut full = vec!["eval"];
    full.extend_from_slice(args);
    let out = adaptstream(&full);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    let (got_name, values) = eval_values(&out.stdout);
    assert_eq!(got_name, name);
    assert_eq!(values, expected, "{args:?}");
    out.stdout.lines().nth(1).unwrap().to_owned()
}

#[test]
fn bitrate_chain() {
    let raw = raw_bitrate(&VideoProfile::new(1920, 1080, 30, 24));
    let line = check(
        &["raw-bitrate", "--width", "1920", "--height", "1080", "--fps", "30", "--depth", "24"],
        "raw_bitrate_bps",
        &[raw],
    );
    assert_eq!(line, "raw bitrate = 1492.99 Mbps");

    let p = CompressionParams {
        eta: 150.0,
        overhead: 0.0,
        retransmission_loss: 0.0,
    };
    let line = check(
        &["effective-bitrate", "--raw-mbps", "1500", "--eta", "150"],
        "effective_bitrate_bps",
        &[effective_bitrate(1500e6, &p).unwrap()],
    );
    assert_eq!(line, "effective bitrate = 10.00 Mbps");

    let p = CompressionParams {
        eta: 150.0,
        overhead: 0.10,
        retransmission_loss: 0.05,
    };
    let net = net_bitrate(effective_bitrate(1500e6, &p).unwrap(), &p).unwrap();
    let line = check(
        &["net-bitrate", "--raw-mbps", "1500", "--eta", "150", "--overhead", "0.10", "--loss", "0.05"],
        "net_bitrate_bps",
        &[net],
    );
    assert_eq!(line, "net bitrate = 8.55 Mbps");
}

#[test]
fn connectivity_and_latency() {
    let p = connectivity_probability(0.05, &ReliabilityParams { alpha: 10.0 }).unwrap();
    let line = check(&["connectivity", "--loss", "0.05"], "connectivity_probability", &[p]);
    assert_eq!(line, "P_conn = 0.6065");

    let t = effective_latency(&LinkMetrics::new(20.0, 0.0, 0.0), 5.0);
    let line = check(&["effective-latency", "--rtt", "20", "--proc", "5"], "effective_latency_ms", &[t]);
    assert_eq!(line, "T_eff = 25.00 ms");
}

#[test]
fn selection_paths() {
    let ctx = SelectionContext::from_rtts(&[20.0, 70.0], 5.0);
    let dist = selection_distribution(&ctx).unwrap();
    let line = check(
        &["selection", "--rtts", "20,70", "--proc", "5"],
        "selection_distribution",
        &dist,
    );
    assert_eq!(line, "P = [0.7500, 0.2500]");

    let argmax = select_interface::<ChaCha8Rng>(&ctx, SelectionMode::Deterministic, None).unwrap();
    check(&["select", "--rtts", "20,70", "--proc", "5"], "selected_interface", &[argmax as f64]);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sampled = select_interface(&ctx, SelectionMode::Stochastic, Some(&mut rng)).unwrap();
    check(
        &["select", "--rtts", "20,70", "--proc", "5", "--seed", "11"],
        "selected_interface",
        &[sampled as f64],
    );
}

#[test]
fn loss_correction() {
    let c = CorrectionParams {
        gamma: 2.0,
        beta: 0.0,
        nack_rate: 0.0,
    };
    let l = fec_effective_loss(0.05, &c).unwrap();
    let line = check(&["fec-loss", "--loss", "0.05", "--gamma", "2"], "fec_effective_loss", &[l]);
    assert_eq!(line, "L_eff = 0.0333");

    let c = CorrectionParams {
        gamma: 0.0,
        beta: 0.5,
        nack_rate: 0.04,
    };
    let lc = combined_loss(l, &c).unwrap();
    check(
        &["combined-loss", "--l-eff", &l.to_string(), "--beta", "0.5", "--nack-rate", "0.04"],
        "combined_loss",
        &[lc],
    );
}

#[test]
fn gop_formulas() {
    let params = GopParams {
        t_max: 200.0,
        t_buffer: 200.0,
        frame_rate: 30.0,
        g_min: 1,
        g_max: 30,
    };
    let t = buffering_latency(30, &params);
    let line = check(
        &["buffering-latency", "--gop", "30", "--t-buffer", "200", "--fps", "30"],
        "buffering_latency_ms",
        &[t],
    );
    assert_eq!(line, "T_latency = 1200.00 ms");

    for (t_max, expected) in [("2200", 60u32), ("400", 6), ("210", 5)] {
        let params = GopParams {
            t_max: t_max.parse().unwrap(),
            t_buffer: 200.0,
            frame_rate: 30.0,
            g_min: 5,
            g_max: 60,
        };
        let g = optimal_gop(&params);
        assert_eq!(g, expected);
        check(
            &[
                "optimal-gop", "--t-max", t_max, "--t-buffer", "200", "--fps", "30", "--g-min", "5",
                "--g-max", "60",
            ],
            "optimal_gop_frames",
            &[f64::from(g)],
        );
    }
}

#[test]
fn demography_and_cost() {
    let d = District {
        name: String::new(),
        density: 75_000.0,
        area: 5.0,
        towers: 0,
    };
    let pop = district_population(&d);
    let line = check(
        &["district-population", "--density", "75000", "--area", "5"],
        "population",
        &[pop],
    );
    assert_eq!(line, "population = 375000 persons");

    let ppt = persons_per_tower(pop, 40).unwrap();
    check(
        &["persons-per-tower", "--population", "375000", "--towers", "40"],
        "persons_per_tower",
        &[ppt],
    );

    let social = SocialProfile {
        population: 21e6,
        penetration: 0.9,
        platforms_per_user: 4.0,
    };
    check(
        &["active-connections", "--population", "21000000", "--penetration", "0.9", "--platforms", "4"],
        "active_connections",
        &[active_connections(&social)],
    );

    let cost = CostModel {
        unit_cost: 2.5,
        handled_fraction: 0.9,
        reduction: 0.15,
    };
    let base = baseline_cost(5000.0, &cost);
    check(
        &["baseline-cost", "--volume-mb", "5000", "--handled", "0.9", "--unit-cost", "2.5"],
        "baseline_cost_units",
        &[base],
    );
    let line = check(
        &["reduced-cost", "--baseline", "11250", "--reduction", "0.15"],
        "reduced_cost_units",
        &[reduced_cost(base, &cost)],
    );
    assert_eq!(line, "reduced cost = 9563 units (exact 9562.5)");

    let offload = OffloadConfig {
        ap_count: 50,
        avg_offload_mb: 70.0,
        generated_mb: 5000.0,
    };
    let v = offloaded_volume(&offload);
    check(
        &["offloaded-volume", "--aps", "50", "--avg-mb", "70", "--generated-mb", "5000"],
        "offloaded_mb",
        &[v],
    );
    let line = check(
        &["offload-ratio", "--offloaded", "3500", "--generated", "5000"],
        "offload_ratio",
        &[offload_ratio(v, 5000.0).unwrap()],
    );
    assert_eq!(line, "offload ratio = 0.7000");
}
