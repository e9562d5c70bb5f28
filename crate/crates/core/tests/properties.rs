use blipfield::observables::energy_expectation;
use blipfield::states::{gaussian_packet, inner_product};
use blipfield::{
    boost_state, evolve, shift_oracle, Channel, Complex64, Direction, EvolutionLaw, Lattice, PacketSpec, PhaseGauge,
    PhysicalConstants, Polarization, StateKind, StateVector,
};
use proptest::prelude::*;

const NAT: PhysicalConstants = PhysicalConstants::NATURAL;

fn lattice() -> Lattice {
    Lattice::new(1024, 200.0).unwrap()
}

fn channel() -> impl Strategy<Value = Channel> {
    (any::<bool>(), any::<bool>()).prop_map(|(r, h)| {
        Channel::new(
            if r { Direction::Right } else { Direction::Left },
            if h { Polarization::H } else { Polarization::V },
        )
    })
}

fn law() -> impl Strategy<Value = EvolutionLaw> {
    prop_oneof![Just(EvolutionLaw::Blip), Just(EvolutionLaw::Standard)]
}

/// Gaussian packets well inside the box and the band.
fn packet(kind: StateKind) -> impl Strategy<Value = StateVector> {
    (channel(), -20.0..20.0f64, 1.0..4.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(move |(ch, c, w, k, phi)| {
        gaussian_packet(&PacketSpec::gaussian(ch, c, w, k).with_phase(phi), &lattice(), kind).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evolution_is_a_group(st in packet(StateKind::SingleExcitation), t1 in -30.0..30.0f64, t2 in -30.0..30.0f64, law in law()) {
        let two = evolve(&evolve(&st, t1, law, &NAT), t2, law, &NAT);
        let one = evolve(&st, t1 + t2, law, &NAT);
        prop_assert!(two.max_abs_diff(&one).unwrap() < 1e-12);
        prop_assert!((one.norm_squared() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evolution_commutes_with_translation(st in packet(StateKind::SingleExcitation), sites in -200i64..200, t in 0.0..40.0f64, law in law()) {
        let a = shift_oracle(&evolve(&st, t, law, &NAT), sites).unwrap();
        let b = evolve(&shift_oracle(&st, sites).unwrap(), t, law, &NAT);
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
    }

    #[test]
    fn blip_law_is_a_rigid_shift(st in packet(StateKind::SingleExcitation), sites in -300i64..300) {
        let lat = lattice();
        let t = sites as f64 * lat.dx() / NAT.c;
        let moved = evolve(&st, t, EvolutionLaw::Blip, &NAT);
        prop_assert!(moved.max_abs_diff(&shift_oracle(&st, sites).unwrap()).unwrap() < 1e-10);
    }

    #[test]
    fn distinct_channels_are_orthogonal(a in packet(StateKind::SingleExcitation), b in packet(StateKind::SingleExcitation), t in 0.0..50.0f64) {
        let ca = a.channels().find(|(_, amp)| !amp.is_zero()).unwrap().0;
        let cb = b.channels().find(|(_, amp)| !amp.is_zero()).unwrap().0;
        prop_assume!(ca != cb);
        let ip = inner_product(&evolve(&a, t, EvolutionLaw::Blip, &NAT), &evolve(&b, t, EvolutionLaw::Blip, &NAT)).unwrap();
        prop_assert_eq!(ip, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn energy_is_conserved_and_gauge_free(st in packet(StateKind::Coherent), t in -50.0..50.0f64, law in law(), a in -2.0..2.0f64, b in 0.1..3.0f64) {
        let lat = lattice();
        let zero = PhaseGauge::zero(&lat);
        let e0 = energy_expectation(&st, &NAT, &zero);
        prop_assert!(e0 >= 0.0);
        let e1 = energy_expectation(&evolve(&st, t, law, &NAT), &NAT, &zero);
        prop_assert!((e1 - e0).abs() <= 1e-10 * e0);
        let gauge = PhaseGauge::from_fn(&lat, |k| a * (b * k).sin() + 0.1 * k.powi(3));
        let eg = energy_expectation(&st, &NAT, &gauge);
        prop_assert!((eg - e0).abs() <= 1e-12 * e0);
    }

    #[test]
    fn boost_then_inverse_is_identity(ch in channel(), c in -5.0..5.0f64, w in 2.0..4.0f64, k in -2.0..2.0f64, beta in -0.6..0.6f64) {
        let lat = Lattice::new(1024, 200.0).unwrap();
        let st = gaussian_packet(&PacketSpec::gaussian(ch, c, w, k), &lat, StateKind::SingleExcitation).unwrap();
        let there = boost_state(&st, beta).unwrap();
        prop_assert!((there.norm_squared() - 1.0).abs() < 1e-6);
        let back = boost_state(&there, -beta).unwrap();
        prop_assert!(back.max_abs_diff(&st).unwrap() < 2e-6);
    }

    #[test]
    fn sci17_round_trips(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        let s = blipfield::numfmt::sci17(v);
        prop_assert_eq!(s.parse::<f64>().unwrap(), v);
    }
}
