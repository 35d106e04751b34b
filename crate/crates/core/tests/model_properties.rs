//! Property tests for the closed-form models.

use adaptstream_core::models::*;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn video() -> impl Strategy<Value = VideoProfile> {
    (1u32..=7680, 1u32..=4320, 1u32..=120, 1u32..=48)
        .prop_map(|(w, h, f, d)| VideoProfile::new(w, h, f, d))
}

fn compression() -> impl Strategy<Value = CompressionParams> {
    (1.0f64..1000.0, 0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(eta, overhead, loss)| {
        CompressionParams {
            eta,
            overhead,
            retransmission_loss: loss,
        }
    })
}

fn rtts() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..500.0, 1..8)
}

fn gop_params() -> impl Strategy<Value = GopParams> {
    (0.0f64..20_000.0, 0.0f64..2_000.0, 1.0f64..240.0, 1u32..100, 0u32..200).prop_map(
        |(t_max, t_buffer, frame_rate, g_min, extra)| GopParams {
            t_max,
            t_buffer,
            frame_rate,
            g_min,
            g_max: g_min + extra,
        },
    )
}

fn correction() -> impl Strategy<Value = CorrectionParams> {
    (0.0f64..10.0, 0.0f64..2.0, 0.0f64..=1.0).prop_map(|(gamma, beta, nack_rate)| {
        CorrectionParams {
            gamma,
            beta,
            nack_rate,
        }
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn bitrate_chain_is_monotone(profile in video(), params in compression()) {
        let raw = raw_bitrate(&profile);
        let eff = effective_bitrate(raw, &params).unwrap();
        let net = net_bitrate(eff, &params).unwrap();
        prop_assert!(net <= eff);
        prop_assert!(eff <= raw);
        prop_assert!(net >= 0.0);
    }

    #[test]
    fn connectivity_decreasing(a in 0.0f64..=1.0, b in 0.0f64..=1.0, alpha in 0.01f64..50.0) {
        let params = ReliabilityParams { alpha };
        let pa = connectivity_probability(a, &params).unwrap();
        let pb = connectivity_probability(b, &params).unwrap();
        prop_assert!(pa > 0.0 && pa <= 1.0);
        if a < b {
            prop_assert!(pa > pb);
        }
        prop_assert_eq!(connectivity_probability(0.0, &params).unwrap(), 1.0);
    }

    #[test]
    fn selection_distribution_is_normalized(rtts in rtts(), proc_delay in 0.1f64..50.0) {
        let ctx = SelectionContext::from_rtts(&rtts, proc_delay);
        let dist = selection_distribution(&ctx).unwrap();
        prop_assert_eq!(dist.len(), rtts.len());
        prop_assert!((dist.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        for &p in &dist {
            prop_assert!(p > 0.0);
        }
        for i in 0..rtts.len() {
            for j in 0..rtts.len() {
                if rtts[i] < rtts[j] {
                    prop_assert!(dist[i] > dist[j]);
                }
            }
        }
    }

    #[test]
    fn selection_is_scale_invariant(rtts in rtts(), proc_delay in 0.1f64..50.0, scale in 0.01f64..100.0) {
        let base = selection_distribution(&SelectionContext::from_rtts(&rtts, proc_delay)).unwrap();
        let scaled_rtts: Vec<f64> = rtts.iter().map(|r| r * scale).collect();
        let scaled = selection_distribution(&SelectionContext::from_rtts(&scaled_rtts, proc_delay * scale)).unwrap();
        for (a, b) in base.iter().zip(&scaled) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn deterministic_select_is_argmax(rtts in rtts(), proc_delay in 0.1f64..50.0) {
        let ctx = SelectionContext::from_rtts(&rtts, proc_delay);
        let dist = selection_distribution(&ctx).unwrap();
        let chosen = select_interface::<ChaCha8Rng>(&ctx, SelectionMode::Deterministic, None).unwrap();
        for (i, &p) in dist.iter().enumerate() {
            prop_assert!(dist[chosen] >= p);
            if i < chosen {
                prop_assert!(dist[chosen] > p, "tie must go to lowest index");
            }
        }
    }

    #[test]
    fn fec_loss_bounded_and_monotone(loss in 0.0f64..=1.0, g1 in 0.0f64..20.0, g2 in 0.0f64..20.0) {
        let p = |gamma| CorrectionParams { gamma, beta: 0.0, nack_rate: 0.0 };
        let l1 = fec_effective_loss(loss, &p(g1)).unwrap();
        let l2 = fec_effective_loss(loss, &p(g2)).unwrap();
        prop_assert!((0.0..=loss).contains(&l1));
        if g1 <= g2 {
            prop_assert!(l1 <= l2);
        }
    }

    #[test]
    fn combined_loss_clamped(l_eff in 0.0f64..=1.0, params in correction()) {
        let l = combined_loss(l_eff, &params).unwrap();
        prop_assert!(l >= 0.0);
        prop_assert!(l <= l_eff);
    }

    #[test]
    fn gop_within_bounds_and_monotone(params in gop_params(), bump in 0.0f64..5_000.0) {
        let g = optimal_gop(&params);
        prop_assert!(g >= params.g_min && g <= params.g_max);
        let looser = GopParams { t_max: params.t_max + bump, ..params };
        prop_assert!(optimal_gop(&looser) >= g);
    }

    #[test]
    fn buffering_latency_at_least_buffer(params in gop_params(), gop in 0u32..500) {
        prop_assert!(buffering_latency(gop, &params) >= params.t_buffer);
    }
}
