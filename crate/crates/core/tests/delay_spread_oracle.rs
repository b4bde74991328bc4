//! Delay-spread moments checked against a naive pairwise reference on a
//! random corpus.

use mmwave_core::pdp::{delay_stats, excess_delay_rebase, integrate_power_mw};
use mmwave_core::Pdp;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reference moments computed with plain loops. The variance uses the
/// pairwise form `sum_ij P_i P_j (t_i - t_j)^2 / (2 W^2)`, which never forms
/// the first or second raw moment.
fn reference(powers: &[f64], spacing: f64) -> (f64, f64) {
    let first = powers.iter().position(|&p| p > 0.0).unwrap();
    let mut w = 0.0;
    let mut m1 = 0.0;
    for (k, &p) in powers.iter().enumerate().skip(first) {
        let t = (k - first) as f64 * spacing;
        w += p;
        m1 += p * t;
    }
    let mut pair = 0.0;
    for i in first..powers.len() {
        for j in first..powers.len() {
            let dt = (i as f64 - j as f64) * spacing;
            pair += powers[i] * powers[j] * dt * dt;
        }
    }
    (m1 / w, (pair / (2.0 * w * w)).sqrt())
}

fn corpus(n: usize, seed: u64) -> Vec<Pdp> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let bins = rng.random_range(1..=512);
            let density: f64 = rng.random_range(0.02..1.0);
            let mut powers: Vec<f64> = (0..bins)
                .map(|_| {
                    if rng.random::<f64>() < density {
                        10f64.powf(rng.random_range(-6.0..1.0))
                    } else {
                        0.0
                    }
                })
                .collect();
            if powers.iter().all(|&p| p == 0.0) {
                let k = rng.random_range(0..bins);
                powers[k] = 1.0;
            }
            Pdp::new(2.5, powers, 0.0).unwrap()
        })
        .collect()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()) || (a == 0.0 && b.abs() < 1e-12)
}

#[test]
fn moments_match_pairwise_reference() {
    for pdp in corpus(1000, 0x5eed) {
        let s = delay_stats(&pdp).unwrap();
        let (mean, rms) = reference(pdp.powers_mw(), pdp.bin_spacing_ns());
        assert!(
            rel_close(s.mean_excess_delay_ns, mean, 1e-9),
            "{} vs {mean}",
            s.mean_excess_delay_ns
        );
        assert!(
            rel_close(s.rms_delay_spread_ns, rms, 1e-9),
            "{} vs {rms}",
            s.rms_delay_spread_ns
        );
    }
}

#[test]
fn integration_matches_naive_loop() {
    for pdp in corpus(200, 9) {
        let mut naive = 0.0;
        for p in pdp.powers_mw() {
            naive += p;
        }
        assert!(rel_close(integrate_power_mw(&pdp), naive, 1e-12));
    }
}

#[test]
fn shift_and_scale_invariance() {
    for pdp in corpus(1000, 77) {
        let base = delay_stats(&pdp).unwrap();
        let shifted = delay_stats(&excess_delay_rebase(&pdp).unwrap()).unwrap();
        assert!(rel_close(
            base.rms_delay_spread_ns,
            shifted.rms_delay_spread_ns,
            1e-9
        ));

        let mut padded = vec![0.0; 17];
        padded.extend_from_slice(pdp.powers_mw());
        let delayed = delay_stats(&Pdp::new(2.5, padded, 0.0).unwrap()).unwrap();
        assert!(rel_close(
            base.rms_delay_spread_ns,
            delayed.rms_delay_spread_ns,
            1e-9
        ));

        for c in [1e-6, 0.37, 1e4] {
            let scaled: Vec<f64> = pdp.powers_mw().iter().map(|p| p * c).collect();
            let s = delay_stats(&Pdp::new(2.5, scaled, 0.0).unwrap()).unwrap();
            assert!(rel_close(
                base.mean_excess_delay_ns,
                s.mean_excess_delay_ns,
                1e-9
            ));
            assert!(rel_close(base.second_moment_ns2, s.second_moment_ns2, 1e-9));
            assert!(rel_close(
                base.rms_delay_spread_ns,
                s.rms_delay_spread_ns,
                1e-9
            ));
        }
    }
}
