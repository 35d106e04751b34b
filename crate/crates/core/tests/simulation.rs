use adaptstream_core::controller::{classify_condition, NetworkCondition, QualityTier};
use adaptstream_core::models::{connectivity_probability, LinkMetrics};
use adaptstream_core::sim::*;
use proptest::prelude::*;

fn no_congestion() -> ScenarioConfig {
    let mut cfg = ScenarioConfig::dhaka_default();
    cfg.name = "no-congestion".into();
    cfg.congestion_windows.clear();
    cfg
}

fn all_congestion() -> ScenarioConfig {
    let mut cfg = ScenarioConfig::dhaka_default();
    cfg.name = "all-congestion".into();
    cfg.congestion_windows = vec![CongestionWindow {
        start_slot: 0,
        end_slot: cfg.slots,
        speed_drop: 0.40,
        rtt_spike_ms: 60.0,
        loss_add: 0.03,
    }];
    cfg
}

fn dominance() -> ScenarioConfig {
    let mut cfg = ScenarioConfig::dhaka_default();
    cfg.name = "dominance".into();
    cfg.slots = 100;
    cfg.noise = NoiseModel::NONE;
    cfg.congestion_windows.clear();
    cfg.interfaces = vec![
        InterfaceSpec {
            name: "weak".into(),
            base: LinkMetrics::new(90.0, 0.05, 5e6),
        },
        InterfaceSpec {
            name: "strong".into(),
            base: LinkMetrics::new(15.0, 0.005, 40e6),
        },
    ];
    cfg
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Independent fold over the journal, written without reference to the
/// engine's aggregation code.
fn check_against_journal(journal: &[SlotRecord], report: &MetricsReport, cfg: &ScenarioConfig) {
    let n = journal.len() as f64;
    let sum = |f: fn(&SlotRecord) -> f64| journal.iter().map(f).sum::<f64>();

    let generated = sum(|r| r.generated_mb);
    let offloaded = sum(|r| r.offloaded_mb);
    assert!(rel_close(report.total_generated_mb, generated));
    assert!(rel_close(report.total_offloaded_mb, offloaded));
    assert!(rel_close(report.total_carried_mb, sum(|r| r.carried_mb)));
    assert!(rel_close(report.offload_ratio, offloaded / generated));

    let baseline = journal
        .iter()
        .map(|r| cfg.cost.unit_cost * r.generated_mb * cfg.cost.handled_fraction)
        .sum::<f64>()
        / n;
    assert!(rel_close(report.baseline_cost_units, baseline));
    assert!(rel_close(report.reduced_cost_units, baseline * (1.0 - cfg.cost.reduction)));
    assert!(rel_close(report.total_cost_units, sum(|r| r.cost_units)));

    assert!(rel_close(report.mean_latency_ms, sum(|r| r.latency_ms) / n));
    assert!(rel_close(report.mean_throughput_mbps, sum(|r| r.net_bitrate_bps / 1e6) / n));

    let mut latencies: Vec<f64> = journal.iter().map(|r| r.latency_ms).collect();
    latencies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let idx = (journal.len() * 95).div_ceil(100).max(1) - 1;
    assert!(rel_close(report.p95_latency_ms, latencies[idx]));

    let connectivity = journal
        .iter()
        .map(|r| (-cfg.reliability.alpha * r.loss).exp())
        .sum::<f64>()
        / n;
    assert!(rel_close(report.mean_connectivity, connectivity));

    let optimal = journal.iter().filter(|r| r.condition == NetworkCondition::Optimal).count();
    assert_eq!(report.condition_breakdown.optimal as usize, optimal);
    assert_eq!(report.condition_breakdown.congested as usize, journal.len() - optimal);
    assert_eq!(report.slots as usize, journal.len());
}

#[test]
fn default_run_reproduces_offload_and_costs() {
    let out = run(&ScenarioConfig::dhaka_default()).unwrap();
    assert_eq!(out.journal.len(), 1000);
    assert_eq!(out.report.offload_ratio, 0.7);
    assert_eq!(out.report.baseline_cost_units, 11_250.0);
    assert_eq!(out.report.reduced_cost_units, 9562.5);
    assert_eq!(out.report.reduced_cost_display, 9563.0);
    assert_eq!(out.report.total_offloaded_mb, 3_500_000.0);
    for r in &out.journal {
        assert_eq!(r.offloaded_mb, 3500.0);
        assert_eq!(r.generated_mb, 5000.0);
    }
}

#[test]
fn no_congestion_run_is_all_optimal() {
    let out = run(&no_congestion()).unwrap();
    assert_eq!(out.report.condition_breakdown.congested, 0);
    assert_eq!(out.report.offload_ratio, 0.7);
    assert_eq!(out.report.reduced_cost_units, 9562.5);
}

#[test]
fn runs_are_deterministic() {
    let cfg = ScenarioConfig::dhaka_default();
    let a = run(&cfg).unwrap();
    let b = run(&cfg).unwrap();
    assert_eq!(
        serde_json::to_string(&a.journal).unwrap(),
        serde_json::to_string(&b.journal).unwrap()
    );
    assert_eq!(a.report, b.report);

    let mut other = cfg.clone();
    other.seed += 1;
    assert_ne!(run(&other).unwrap().journal, a.journal);
}

#[test]
fn single_slot_report_is_that_slot() {
    let mut cfg = no_congestion();
    cfg.slots = 1;
    let out = run(&cfg).unwrap();
    let r = &out.journal[0];
    assert_eq!(out.report.mean_latency_ms, r.latency_ms);
    assert_eq!(out.report.p95_latency_ms, r.latency_ms);
    assert_eq!(out.report.mean_throughput_mbps, r.net_bitrate_bps / 1e6);
    assert_eq!(out.report.total_cost_units, r.cost_units);
    assert_eq!(
        out.report.mean_connectivity,
        connectivity_probability(r.loss, &cfg.reliability).unwrap()
    );
}

#[test]
fn report_matches_journal_fold() {
    for cfg in [ScenarioConfig::dhaka_default(), no_congestion(), all_congestion()] {
        let out = run(&cfg).unwrap();
        check_against_journal(&out.journal, &out.report, &cfg);
    }
}

#[test]
fn all_congestion_run_is_all_congested() {
    let out = run(&all_congestion()).unwrap();
    assert_eq!(out.report.condition_breakdown.optimal, 0);
    assert!(out.journal.iter().all(|r| r.quality_tier == QualityTier::LowLatency));
}

#[test]
fn congestion_windows_classify_via_controller() {
    let cfg = ScenarioConfig::dhaka_default();
    let trace = generate_trace(&cfg).unwrap();
    let out = run(&cfg).unwrap();
    for w in &cfg.congestion_windows {
        for slot in w.start_slot..w.end_slot {
            let r = &out.journal[slot as usize];
            let link = trace.rows[slot as usize][r.interface_chosen];
            let direct = classify_condition(&link, &cfg.thresholds);
            assert_eq!(r.condition, direct);
            if link.loss > cfg.thresholds.max_loss_optimal || link.rtt > cfg.thresholds.max_rtt_optimal {
                assert_eq!(r.condition, NetworkCondition::Congested);
            }
        }
    }
    // and the default windows do push every slot over the thresholds
    let congested: u32 = cfg.congestion_windows.iter().map(|w| w.end_slot - w.start_slot).sum();
    assert_eq!(out.report.condition_breakdown.congested, congested);
}

#[test]
fn slot_invariants_hold() {
    let cfg = ScenarioConfig::dhaka_default();
    for r in run(&cfg).unwrap().journal {
        assert_eq!(r.offloaded_mb + r.carried_mb, r.generated_mb);
        assert!(r.latency_ms >= cfg.gop.t_buffer);
        assert!(r.gop_size >= cfg.gop.g_min && r.gop_size <= cfg.gop.g_max);
    }
}

#[test]
fn frame_journal_accounts_for_every_slot() {
    let mut cfg = ScenarioConfig::dhaka_default();
    cfg.slots = 40;
    cfg.congestion_windows.clear();
    cfg.recording = RecordingConfig {
        enabled: true,
        path: Some("memory".into()),
    };
    let mut sink = MemorySink::default();
    let out = run_recorded(&cfg, &mut sink).unwrap();
    assert_eq!(sink.frames.len(), 40 * 30);
    let footer = sink.footer.unwrap();
    assert_eq!(footer.total_frames, 1200);
    let expected_bits: f64 = out.journal.iter().map(|r| r.net_bitrate_bps).sum();
    assert!(rel_close(footer.total_bits, expected_bits));
    for slot in &out.journal {
        let bits: f64 = sink
            .frames
            .iter()
            .filter(|f| f.slot_index == slot.slot_index)
            .map(|f| f.encoded_size_bits)
            .sum();
        assert!(rel_close(bits, slot.net_bitrate_bps));
    }
}

#[test]
fn recording_disabled_writes_nothing() {
    let mut cfg = no_congestion();
    cfg.slots = 5;
    let mut sink = MemorySink::default();
    run_recorded(&cfg, &mut sink).unwrap();
    assert!(sink.frames.is_empty());
    assert!(sink.footer.is_none());
}

#[test]
fn adaptive_beats_static_on_default() {
    let out = compare_baseline(&ScenarioConfig::dhaka_default()).unwrap();
    let cmp = out.report.comparison.unwrap();
    assert!(out.report.mean_latency_ms <= cmp.baseline_mean_latency_ms);
    assert!(out.report.mean_throughput_mbps >= cmp.baseline_mean_throughput_mbps);
    assert!(cmp.latency_delta_ms > 0.0);
    assert_eq!(out.adaptive.len(), out.baseline.len());
    check_against_journal(&out.baseline, &out.baseline_report, &ScenarioConfig::dhaka_default());
}

#[test]
fn adaptive_matches_static_without_congestion() {
    let cfg = no_congestion();
    let out = compare_baseline(&cfg).unwrap();
    let cmp = out.report.comparison.unwrap();
    // default t_max puts the optimal GOP at g_max, so the two policies agree
    assert_eq!(cmp.latency_delta_ms, 0.0);
    assert_eq!(cmp.throughput_gain_fraction, 0.0);
}

#[test]
fn dominant_interface_wins() {
    let out = compare_baseline(&dominance()).unwrap();
    assert!(out.adaptive.iter().all(|r| r.interface_chosen == 1));
    assert!(out.baseline.iter().all(|r| r.interface_chosen == 0));
    let cmp = out.report.comparison.unwrap();
    assert!(out.report.mean_latency_ms < cmp.baseline_mean_latency_ms);
    assert!(cmp.throughput_gain_fraction > 0.0);
}

fn window(slots: u32) -> impl Strategy<Value = CongestionWindow> {
    (0..slots - 1, 1u32..50, 0.0f64..=1.0, 0.0f64..200.0, 0.0f64..0.3).prop_map(
        move |(start, len, speed_drop, rtt_spike_ms, loss_add)| CongestionWindow {
            start_slot: start,
            end_slot: (start + len).min(slots),
            speed_drop,
            rtt_spike_ms,
            loss_add,
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adaptive_never_worse_with_congestion(
        windows in prop::collection::vec(window(120), 1..4),
        seed in any::<u64>(),
    ) {
        let mut cfg = ScenarioConfig::dhaka_default();
        cfg.slots = 120;
        cfg.seed = seed;
        cfg.congestion_windows = windows;
        let out = compare_baseline(&cfg).unwrap();
        let cmp = out.report.comparison.unwrap();
        prop_assert!(out.report.mean_latency_ms <= cmp.baseline_mean_latency_ms);
        prop_assert!(out.report.mean_throughput_mbps >= cmp.baseline_mean_throughput_mbps);
    }

    #[test]
    fn conservation_holds(ap_count in 0u32..200, avg in 0.0f64..500.0, generated in 0.0f64..20_000.0) {
        let mut cfg = no_congestion();
        cfg.slots = 1;
        cfg.offload.ap_count = ap_count;
        cfg.offload.avg_offload_mb = avg;
        cfg.offload.generated_mb = generated;
        let r = &run(&cfg).unwrap().journal[0];
        prop_assert_eq!(r.offloaded_mb + r.carried_mb, r.generated_mb);
        prop_assert!(r.offloaded_mb <= r.generated_mb);
    }
}
