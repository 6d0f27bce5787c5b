mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rinfinity::appendix_maps::{appendix_pairs, h_map, random_unit};
use rinfinity::exact_linear::{cokernel_order, smith_normal_form, Cardinality, Int, Mat3, MatN};
use rinfinity::glz_conjugacy::{
    commutant_lattice, decide_sol_torus_bundle, find_reverser, fundamental_unit, gl2z_conjugate,
};
use rinfinity::modular_group::{cyclic_reduce, decompose, outer_flip, Letter, PslWord};
use rinfinity::reidemeister::{
    lattice_quotient_oracle, twisted_classes_finite, FiniteGroupSpec, reidemeister_lattice, reidemeister_sol, LatticeAut, SolAut,
};
use rinfinity::Mat2;

use common::{conjugate_by, m2, random_anosov, random_gl2z};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unimodular3(ops: &[(usize, usize, i64)], signs: [bool; 3], shift: usize) -> Mat3 {
    let mut rows = [[0i64; 3]; 3];
    for i in 0..3 {
        rows[i][(i + shift) % 3] = if signs[i] { -1 } else { 1 };
    }
    for &(i, j, k) in ops {
        if i != j {
            let src = rows[j];
            for c in 0..3 {
                rows[i][c] += k * src[c];
            }
        }
    }
    Mat3::from_i64(rows)
}

fn psl_equal(x: &Mat2, y: &Mat2) -> bool {
    x == y || *x == -y
}

fn letters() -> impl Strategy<Value = PslWord> {
    prop::collection::vec(0usize..3, 0..24).prop_map(|v| {
        PslWord::from_letters(v.into_iter().map(|i| [Letter::S, Letter::U, Letter::UInv][i]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn smith_form_is_a_valid_diagonalisation(entries in prop::collection::vec(-9i64..=9, 9)) {
        let rows: Vec<&[i64]> = entries.chunks(3).collect();
        let m = MatN::from_i64(&rows).unwrap();
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&(&snf.u * &m) * &snf.v, snf.d.clone());
        prop_assert_eq!(snf.u.det().magnitude().clone(), 1u32.into());
        prop_assert_eq!(snf.v.det().magnitude().clone(), 1u32.into());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0] >= Int::from(0));
            let divides = if w[0] == Int::from(0) { w[1] == Int::from(0) } else { (&w[1] % &w[0]) == Int::from(0) };
            prop_assert!(divides);
        }
        let order = cokernel_order(&m);
        let det = m.det();
        if det == Int::from(0) {
            prop_assert_eq!(order, Cardinality::Infinite);
        } else {
            prop_assert_eq!(order, Cardinality::Finite(det.magnitude().clone().into()));
        }
    }

    #[test]
    fn decomposition_evaluates_back(seed in any::<u64>(), len in 0usize..12) {
        let mut r = rng(seed);
        let mut m = random_gl2z(&mut r, len);
        if m.det() != Int::from(1) {
            m = &m * &m2(1, 0, 0, -1);
        }
        let lift = decompose(&m).unwrap();
        let value = lift.word.evaluate();
        prop_assert_eq!(value.clone(), if lift.sign == 1 { m.clone() } else { -&m });
        let (cyc, conj) = cyclic_reduce(&lift.word);
        let rebuilt = &(&conj.evaluate() * &cyc.word().evaluate()) * &conj.inverse().evaluate();
        prop_assert!(psl_equal(&rebuilt, &value));
    }

    #[test]
    fn outer_flip_is_conjugation_by_a_reflection(w in letters()) {
        let flip = m2(1, 0, 0, -1);
        let lhs = outer_flip(&w).evaluate();
        let rhs = &(&flip * &w.evaluate()) * &flip;
        let s = m2(0, -1, 1, 0);
        let via_s = &(&s * &lhs) * &s.inverse_unimodular().unwrap();
        prop_assert!(psl_equal(&via_s, &rhs), "{} vs {}", via_s, rhs);
        prop_assert_eq!(outer_flip(&outer_flip(&w)), w);
    }

    #[test]
    fn conjugates_are_recognised(seed in any::<u64>(), len in 1usize..8) {
        let mut r = rng(seed);
        let a = random_anosov(&mut r, 8, None);
        let p = random_gl2z(&mut r, len);
        let b = conjugate_by(&p, &a);
        let c = gl2z_conjugate(&a, &b).unwrap().expect("conjugate pair not recognised");
        prop_assert_eq!(&c.matrix * &a, &b * &c.matrix);
        prop_assert_eq!(c.matrix.det().magnitude().clone(), 1u32.into());
    }

    #[test]
    fn reverser_conjugates_to_inverse(seed in any::<u64>()) {
        let a = random_anosov(&mut rng(seed), 8, Some(1));
        let report = find_reverser(&a).unwrap();
        if let Some(w) = report.witness {
            prop_assert_eq!(&(&w * &a) * &w.inverse_unimodular().unwrap(), a.inverse_unimodular().unwrap());
        }
    }

    #[test]
    fn rank2_lattice_value_matches_quotient(seed in any::<u64>()) {
        let m = common::random_unimodular(&mut rng(seed), 5, None);
        let d = (&Mat2::identity() - &m).det();
        prop_assume!(d != Int::from(0) && d.magnitude() <= &60u32.into());
        let modulus = u64::try_from(d.magnitude().clone()).unwrap();
        let phi = LatticeAut::rank2(m).unwrap();
        let count = lattice_quotient_oracle(&phi, modulus).unwrap();
        prop_assert_eq!(reidemeister_lattice(&phi), Cardinality::finite(count));
    }

    #[test]
    fn rank3_lattice_value_matches_quotient(
        ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
        signs in any::<[bool; 3]>(),
        shift in 0usize..3,
    ) {
        let m = unimodular3(&ops, signs, shift);
        let d = (&Mat3::identity() - &m).det();
        prop_assume!(d != Int::from(0) && d.magnitude() <= &40u32.into());
        let modulus = u64::try_from(d.magnitude().clone()).unwrap();
        let phi = LatticeAut::rank3(m).unwrap();
        let count = lattice_quotient_oracle(&phi, modulus).unwrap();
        prop_assert_eq!(reidemeister_lattice(&phi), Cardinality::finite(count));
    }

    #[test]
    fn identity_twist_counts_conjugacy_classes(n in 2usize..9) {
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let g = FiniteGroupSpec::new(table, (0..n).collect()).unwrap();
        prop_assert_eq!(twisted_classes_finite(&g), g.class_number());
        prop_assert_eq!(g.class_number(), n as u64);
    }

    #[test]
    fn unit_power_recovers_base(seed in any::<u64>()) {
        let a = random_anosov(&mut rng(seed), 12, Some(1));
        let lattice = commutant_lattice(&a).unwrap();
        let units = fundamental_unit(&lattice).unwrap();
        let p = units.power(units.exponent as i64);
        prop_assert!(p == a || p == -&a);
        prop_assert_eq!(units.unit.det().magnitude().clone(), 1u32.into());
        prop_assert_eq!(&units.unit * &a, &a * &units.unit);
    }

    #[test]
    fn sol_value_is_conjugation_invariant(seed in any::<u64>(), len in 1usize..6) {
        let mut r = rng(seed);
        let a = random_anosov(&mut r, 8, Some(1));
        let verdict = decide_sol_torus_bundle(&a).unwrap();
        let p = random_gl2z(&mut r, len);
        let b = conjugate_by(&p, &a);
        let other = decide_sol_torus_bundle(&b).unwrap();
        prop_assert_eq!(verdict.r_infinity, other.r_infinity);
        if let Some(cert) = verdict.certificate {
            let phi = SolAut::new(cert.automorphism.clone(), cert.eps, a.clone()).unwrap();
            let moved = SolAut::new(conjugate_by(&p, &cert.automorphism), cert.eps, b).unwrap();
            prop_assert_eq!(reidemeister_sol(&phi), reidemeister_sol(&moved));
            prop_assert_eq!(reidemeister_sol(&phi), cert.total);
        }
    }

    #[test]
    fn torus_maps_preserve_unit_norm(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (q1, q2) = (random_unit(&mut r), random_unit(&mut r));
        for (f, g) in appendix_pairs() {
            for spec in [f, g] {
                let (x, y) = h_map(&spec, &q1, &q2);
                prop_assert!((x.norm() - 1.0).abs() < 1e-12);
                prop_assert!((y.norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}
