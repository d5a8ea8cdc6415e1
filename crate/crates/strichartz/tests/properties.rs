//! Property tests: structural invariants over randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use strichartz::admissibility::{
    classify_schrodinger, classify_wave, IntegrabilityPair, Region,
};
use strichartz::grid::{DispersionParams, Field, Grid, Representation};
use strichartz::norms::TimeSampling;
use strichartz::rational::Ratio;
use strichartz::rng::SplitMix64;
use strichartz::{norms, propagator};

fn random_field(grid: Grid, repr: Representation, seed: u64) -> Field {
    let mut rng = SplitMix64::new(seed);
    let values = (0..grid.len()).map(|_| rng.next_complex()).collect();
    Field::from_values(grid, repr, values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn plancherel_and_round_trip(seed in any::<u64>(), m_exp in 3usize..6, n in 2usize..4) {
        let m = 1 << m_exp;
        let grid = Grid::new(n, m, 2.5).unwrap();
        let f = random_field(grid, Representation::Space, seed);
        let hat = f.forward_transform().unwrap();
        prop_assert!((hat.l2_norm() - f.l2_norm()).abs() < 1e-12 * f.l2_norm());
        let back = hat.inverse_transform().unwrap();
        let mut diff = back;
        diff.add_assign_scaled(Complex64::new(-1.0, 0.0), &f).unwrap();
        prop_assert!(diff.l2_norm() < 1e-12 * f.l2_norm());
    }

    #[test]
    fn propagation_is_unitary_group(seed in any::<u64>(), t1 in -3.0f64..3.0, t2 in -3.0f64..3.0, a in 1.0f64..3.0) {
        let grid = Grid::new(2, 16, 2.0).unwrap();
        let u0 = random_field(grid, Representation::Frequency, seed);
        let params = DispersionParams::new(2, a).unwrap();
        let u1 = propagator::propagate(&u0, t1, &params).unwrap();
        prop_assert!((u1.l2_norm() - u0.l2_norm()).abs() < 1e-12 * u0.l2_norm());
        let chained = propagator::propagate(&u1, t2, &params).unwrap();
        let direct = propagator::propagate(&u0, t1 + t2, &params).unwrap();
        for (x, y) in chained.values().iter().zip(direct.values()) {
            prop_assert!((x - y).norm() < 1e-11);
        }
    }

    #[test]
    fn mixed_norms_invariant_under_multiplier_conjugation(seed in any::<u64>()) {
        // the time-reversed (conjugate-sign) evolution has the same mixed
        // norms: conj ∘ propagate ∘ conj flips the phase sign
        let grid = Grid::new(2, 16, 2.0).unwrap();
        let u0 = random_field(grid, Representation::Frequency, seed);
        let params = DispersionParams::new(2, 2.0).unwrap();
        let sampling = TimeSampling::symmetric(0.6, 5).unwrap();
        let forward = norms::mixed_time_norm(&u0, &params, &sampling, 4.0, 4.0, false).unwrap();
        let conj_values: Vec<Complex64> = u0.values().iter().map(|c| c.conj()).collect();
        let u0_conj = Field::from_values(grid, Representation::Frequency, conj_values).unwrap();
        let reversed = norms::mixed_time_norm(&u0_conj, &params, &sampling, 4.0, 4.0, false).unwrap();
        prop_assert!((forward - reversed).abs() < 1e-10 * forward);
    }

    #[test]
    fn spherical_norm_is_positive_definite(seed in any::<u64>()) {
        let grid = Grid::new(2, 16, 8.0).unwrap();
        let u0 = random_field(grid, Representation::Frequency, seed);
        let params = DispersionParams::new(2, 2.0).unwrap();
        let sampling = TimeSampling::symmetric(0.4, 3).unwrap();
        let sg = strichartz::angular::SphericalGrid::circle(24, 6.0, 16).unwrap();
        let value = norms::spherically_averaged_norm(&u0, &params, &sampling, &sg, 2.0, 2.0).unwrap();
        prop_assert!(value > 0.0);
        let zero = Field::zeros(grid, Representation::Frequency);
        let z = norms::spherically_averaged_norm(&zero, &params, &sampling, &sg, 2.0, 2.0).unwrap();
        prop_assert!(z == 0.0);
    }
}

/// Strategy for reciprocals `1/q ∈ [0, 1/2]` with small denominators.
fn inverse_exponent() -> impl Strategy<Value = Ratio> {
    (1i64..=24, 0i64..=200).prop_map(|(den, num_raw)| {
        let num = num_raw % (den + 1);
        // scale into [0, 1/2]
        Ratio::new(num, 2 * den)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn regions_match_independent_range_predicates(
        inv_q in inverse_exponent(),
        inv_p in inverse_exponent(),
        n in 2u32..6,
    ) {
        let pair = IntegrabilityPair::from_inverses(inv_q, inv_p).unwrap();
        let c = classify_schrodinger(&pair, n, Ratio::integer(2)).unwrap();
        // independent re-derivation of the defining inequalities
        let half = Ratio::new(1, 2);
        let gap = half - inv_p;
        let classical = inv_q <= Ratio::new(n as i64, 2) * gap && !inv_p.is_zero();
        let extended = Ratio::new(n as i64, 2) * gap < inv_q
            && inv_q <= Ratio::new(2 * n as i64 - 1, 2) * gap;
        let two_two_inf = n == 2 && inv_q == half && inv_p.is_zero();
        match c.region {
            Region::Classical => prop_assert!(classical),
            Region::Extended => prop_assert!(extended),
            Region::Outside => prop_assert!(two_two_inf || (!classical && !extended)),
        }
        // regions are mutually exclusive by construction of the predicates
        prop_assert!(!(classical && extended));
    }

    #[test]
    fn alpha_sharp_positive_exactly_beyond_classical_line(
        inv_q in inverse_exponent(),
        inv_p in inverse_exponent(),
        n in 2u32..6,
    ) {
        let pair = IntegrabilityPair::from_inverses(inv_q, inv_p).unwrap();
        let c = classify_schrodinger(&pair, n, Ratio::integer(2)).unwrap();
        let line = Ratio::new(n as i64, 2) * (Ratio::new(1, 2) - inv_p);
        if inv_q > line {
            prop_assert!(c.alpha_sharp > Ratio::ZERO);
        } else if inv_q == line {
            prop_assert!(c.alpha_sharp == Ratio::ZERO);
        } else {
            prop_assert!(c.alpha_sharp < Ratio::ZERO);
        }
        if c.region == Region::Extended {
            // invariant: alpha_sharp = 2/q + n/p - n/2 on the extended range
            let want = Ratio::integer(2) * inv_q + Ratio::integer(n as i64) * inv_p
                - Ratio::new(n as i64, 2);
            prop_assert!(c.alpha_sharp == want);
        }
    }

    #[test]
    fn classification_is_scale_free(
        inv_q in inverse_exponent(),
        inv_p in inverse_exponent(),
        n in 2u32..5,
    ) {
        // classification depends only on (1/q, 1/p, n): constructing the pair
        // from exponents or from reciprocals gives identical results
        let via_inverses = IntegrabilityPair::from_inverses(inv_q, inv_p).unwrap();
        let a = classify_schrodinger(&via_inverses, n, Ratio::integer(2)).unwrap();
        if !inv_q.is_zero() && !inv_p.is_zero() {
            let via_exponents =
                IntegrabilityPair::new(inv_q.recip(), inv_p.recip()).unwrap();
            let b = classify_schrodinger(&via_exponents, n, Ratio::integer(2)).unwrap();
            prop_assert_eq!(a, b);
        }
        // wave classification is likewise reciprocal-determined
        let w1 = classify_wave(&via_inverses, n).unwrap();
        let w2 = classify_wave(&via_inverses, n).unwrap();
        prop_assert_eq!(w1, w2);
    }

    #[test]
    fn wave_extended_range_has_strict_upper_boundary(
        inv_p in inverse_exponent(),
        n in 2u32..5,
    ) {
        // on the upper line 1/q = (n-1)(1/2 - 1/p) the wave pair is outside
        let line = Ratio::integer(n as i64 - 1) * (Ratio::new(1, 2) - inv_p);
        if line > Ratio::ZERO && line <= Ratio::new(1, 2) && !inv_p.is_zero() {
            let pair = IntegrabilityPair::from_inverses(line, inv_p).unwrap();
            let c = classify_wave(&pair, n).unwrap();
            prop_assert!(c.region != Region::Extended);
        }
    }
}
