mod common;

use proptest::prelude::*;
use specialmaps::dynamics::{advance, detect_cycle, run_mixed, Detection, InputMask};
use specialmaps::fre::sigma;
use specialmaps::matrix::{elementwise_max, elementwise_min, maxmin_compose, minmax_compose, transpose};
use specialmaps::models::combine_maps;
use specialmaps::special::{make_special, special_transpose, ComponentTag, Part, Side};
use specialmaps::text::{parse_model, serialize_model};
use specialmaps::trace;
use specialmaps::value::{parse_scalar, threshold_scalar};
use specialmaps::models::build_model;
use specialmaps::{
    Exec, Matrix, ModelClass, OrderPolicy, Outcome, RunOptions, Scalar, SpecialStateVector, State,
    ThresholdMode, ValueDomain,
};

const B: OrderPolicy = OrderPolicy::BookDefault;

fn tenth() -> impl Strategy<Value = f64> {
    (0..=10u8).prop_map(|i| i as f64 / 10.0)
}

fn unit(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(tenth(), rows * cols)
        .prop_map(move |v| Matrix::new(rows, cols, ValueDomain::Unit, v.into_iter().map(Scalar::real).collect()).unwrap())
}

fn tri_entry(neutro: bool) -> impl Strategy<Value = Scalar> {
    (0..if neutro { 4u8 } else { 3 }).prop_map(|k| match k {
        0 => Scalar::real(-1.0),
        1 => Scalar::ZERO,
        2 => Scalar::ONE,
        _ => Scalar::I,
    })
}

/// Square cognitive map with zero diagonal.
fn cm(n: usize, neutro: bool) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(tri_entry(neutro), n * n).prop_map(move |mut v| {
        for i in 0..n {
            v[i * n + i] = Scalar::ZERO;
        }
        let d = if neutro { ValueDomain::NeutroTri } else { ValueDomain::Tri };
        Matrix::new(n, n, d, v).unwrap()
    })
}

fn rm(r: usize, c: usize, neutro: bool) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(tri_entry(neutro), r * c).prop_map(move |v| {
        let d = if neutro { ValueDomain::NeutroTri } else { ValueDomain::Tri };
        Matrix::new(r, c, d, v).unwrap()
    })
}

fn crisp(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(0..2u8, n).prop_map(|v| v.into_iter().map(|b| Scalar::real(b as f64)).collect())
}

fn le(a: &Matrix, b: &Matrix) -> bool {
    a.entries().iter().zip(b.entries()).all(|(x, y)| x.real_part() <= y.real_part())
}

/// Union of a fuzzy CM, a neutrosophic CM and a fuzzy RM, with a domain seed each.
fn mixed_system() -> impl Strategy<Value = (specialmaps::SpecialMatrix, SpecialStateVector)> {
    (2..6usize, 2..6usize, 2..5usize, 2..5usize).prop_flat_map(|(a, b, r, c)| {
        (cm(a, false), cm(b, true), rm(r, c, false), crisp(a), crisp(b), crisp(r), any::<bool>(), crisp(c)).prop_map(
            |(m1, m2, m3, x1, x2, x3, from_range, y3)| {
                let m = make_special(vec![
                    (m1, ComponentTag::fcm()),
                    (m2, ComponentTag::ncm()),
                    (m3, ComponentTag::frm()),
                ])
                .unwrap();
                let third = if from_range {
                    Part { side: Side::Range, values: y3 }
                } else {
                    Part { side: Side::Domain, values: x3 }
                };
                let x = SpecialStateVector::new(vec![
                    Part { side: Side::Domain, values: x1 },
                    Part { side: Side::Domain, values: x2 },
                    third,
                ]);
                (m, x)
            },
        )
    })
}

proptest! {
    #[test]
    fn elementwise_lattice_laws((a, b) in (1..5usize, 1..5usize).prop_flat_map(|(r, c)| (unit(r, c), unit(r, c)))) {
        let mx = elementwise_max(&a, &b, B).unwrap();
        let mn = elementwise_min(&a, &b, B).unwrap();
        prop_assert_eq!(&mx, &elementwise_max(&b, &a, B).unwrap());
        prop_assert_eq!(&mn, &elementwise_min(&b, &a, B).unwrap());
        prop_assert_eq!(&elementwise_max(&a, &a, B).unwrap(), &a);
        prop_assert_eq!(&elementwise_min(&a, &mx, B).unwrap(), &a);
        prop_assert!(le(&mn, &a) && le(&a, &mx));
    }

    #[test]
    fn maxmin_is_monotone((a, b, c) in (1..4usize, 1..4usize, 1..4usize).prop_flat_map(|(m, n, t)| (unit(m, n), unit(m, n), unit(n, t)))) {
        let lo = elementwise_min(&a, &b, B).unwrap();
        prop_assert!(le(&maxmin_compose(&lo, &c, B).unwrap(), &maxmin_compose(&a, &c, B).unwrap()));
        prop_assert!(le(&minmax_compose(&lo, &c, B).unwrap(), &minmax_compose(&a, &c, B).unwrap()));
    }

    #[test]
    fn compositions_match_reference((a, b) in (1..4usize, 1..4usize, 1..4usize).prop_flat_map(|(m, n, t)| (unit(m, n), unit(n, t)))) {
        let ra = common::reals(&a);
        let rb = common::reals(&b);
        prop_assert_eq!(common::reals(&maxmin_compose(&a, &b, B).unwrap()), common::oracle_maxmin(&ra, &rb));
        prop_assert_eq!(common::reals(&minmax_compose(&a, &b, B).unwrap()), common::oracle_minmax(&ra, &rb));
    }

    #[test]
    fn transposes_are_involutions((m, _) in mixed_system()) {
        for c in m.components() {
            prop_assert_eq!(&transpose(&transpose(&c.matrix)), &c.matrix);
        }
        prop_assert_eq!(special_transpose(&special_transpose(&m)), m.clone());
        let st = special_transpose(&m);
        prop_assert_eq!(&st.component(0).matrix, &m.component(0).matrix);
        prop_assert_eq!(st.component(2).matrix.dims(), (m.component(2).matrix.cols(), m.component(2).matrix.rows()));
    }

    #[test]
    fn union_runs_are_componentwise((m, x) in mixed_system()) {
        let whole = run_mixed(&m, &x, RunOptions::default()).unwrap();
        for (i, c) in m.components().iter().enumerate() {
            let alone = make_special(vec![(c.matrix.clone(), c.tag)]).unwrap();
            let xi = SpecialStateVector::new(vec![x.parts[i].clone()]);
            let hp = run_mixed(&alone, &xi, RunOptions::default()).unwrap();
            prop_assert_eq!(hp.outcome(0), whole.outcome(i));
        }
    }

    #[test]
    fn parallel_and_sequential_agree((m, x) in mixed_system()) {
        let par = run_mixed(&m, &x, RunOptions { exec: Exec::Parallel, ..Default::default() }).unwrap();
        let seq = run_mixed(&m, &x, RunOptions { exec: Exec::Sequential, ..Default::default() }).unwrap();
        prop_assert_eq!(par, seq);
    }

    #[test]
    fn seed_nodes_stay_on((m, x) in mixed_system()) {
        let hp = run_mixed(&m, &x, RunOptions::default()).unwrap();
        for r in &hp.trace {
            let part = &x.parts[r.component - 1];
            if r.side == part.side {
                for (j, v) in part.values.iter().enumerate() {
                    if *v == Scalar::ONE {
                        prop_assert_eq!(r.updated[j], Scalar::ONE);
                    }
                }
            }
        }
    }

    #[test]
    fn outcomes_are_closed_under_one_more_step((m, x) in mixed_system()) {
        let hp = run_mixed(&m, &x, RunOptions::default()).unwrap();
        for (i, c) in m.components().iter().enumerate() {
            let mask = InputMask::from_seed(&x.parts[i]);
            match hp.outcome(i) {
                Outcome::FixedPoint(s) => prop_assert_eq!(&advance(c, s, &mask, RunOptions::default()).unwrap(), s),
                Outcome::LimitCycle(ss) => {
                    for (k, s) in ss.iter().enumerate() {
                        let next = &ss[(k + 1) % ss.len()];
                        prop_assert_eq!(&advance(c, s, &mask, RunOptions::default()).unwrap(), next);
                    }
                }
            }
        }
    }

    #[test]
    fn cognitive_runs_match_reference((a, x) in (2..7usize).prop_flat_map(|n| (cm(n, true), crisp(n)))) {
        let m = make_special(vec![(a.clone(), ComponentTag::ncm())]).unwrap();
        let hp = run_mixed(&m, &SpecialStateVector::new(vec![Part { side: Side::Domain, values: x.clone() }]), RunOptions::default()).unwrap();
        let want: Vec<State> = common::oracle_cm(&common::grid(&a), &x.iter().map(|v| common::to_n(*v)).collect::<Vec<_>>())
            .into_iter()
            .map(|v| State::Single(v.into_iter().map(common::from_n).collect()))
            .collect();
        let got = match hp.outcome(0) {
            Outcome::FixedPoint(s) => vec![s.clone()],
            Outcome::LimitCycle(ss) => ss.clone(),
        };
        prop_assert_eq!(got, want);
    }

    #[test]
    fn traces_replay((m, x) in mixed_system()) {
        let hp = run_mixed(&m, &x, RunOptions::default()).unwrap();
        let model = build_model(ModelClass::Sshm, m.components().iter().map(|c| (c.matrix.clone(), c.tag)).collect(), vec![]).unwrap();
        let text = trace::to_jsonl(&trace::records(&model, &x, &hp));
        let back = trace::parse_jsonl(&text).unwrap();
        prop_assert_eq!(trace::verify(&back).unwrap(), m.len());
        prop_assert_eq!(trace::to_jsonl(&back), text);
    }

    #[test]
    fn models_round_trip((m, _) in mixed_system()) {
        let model = build_model(ModelClass::Smfcrncrm, m.components().iter().map(|c| (c.matrix.clone(), c.tag)).collect(), vec![]).unwrap();
        let text = serialize_model(&model);
        let back = parse_model(&text).unwrap();
        prop_assert_eq!(&back, &model);
        prop_assert_eq!(serialize_model(&back), text);
    }

    #[test]
    fn detect_cycle_finds_first_recurrence(h in prop::collection::vec(0..4u8, 1..12)) {
        let first = (1..h.len()).find_map(|t| h[..t].iter().position(|x| *x == h[t]).map(|j| (j, t)));
        match (detect_cycle(&h), first) {
            (Detection::NotYet, None) => {}
            (Detection::FixedPoint(x), Some((j, t))) => prop_assert!(t - j == 1 && x == h[t]),
            (Detection::LimitCycle(c), Some((j, t))) => prop_assert_eq!(c, h[j..t].to_vec()),
            (d, f) => prop_assert!(false, "{:?} vs {:?}", matches!(d, Detection::NotYet), f),
        }
    }

    #[test]
    fn sigma_is_monotone(q1 in tenth(), q2 in tenth(), r1 in tenth(), r2 in tenth()) {
        let s = |q: f64, r: f64| sigma(Scalar::real(q), Scalar::real(r), B).unwrap().real_part();
        let (qa, qb) = (q1.min(q2), q1.max(q2));
        let (ra, rb) = (r1.min(r2), r1.max(r2));
        prop_assert!(s(qa, r1) >= s(qb, r1));
        prop_assert!(s(q1, ra) <= s(q1, rb));
    }

    #[test]
    fn combining_is_order_free(a in cm(4, false), b in cm(4, true), c in cm(4, false)) {
        let x = combine_maps(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let y = combine_maps(&[c, a, b]).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn threshold_is_idempotent(t in -3..4i32, s in -3..4i32, k in 0..2i32) {
        let mode = ThresholdMode::Neutrosophic(k as f64);
        let once = threshold_scalar(Scalar::new(t as f64, s as f64), mode).unwrap();
        prop_assert_eq!(threshold_scalar(once, ThresholdMode::Neutrosophic(0.0)).unwrap(), once);
    }

    #[test]
    fn scalar_text_round_trips(t in -20..20i32, s in -20..20i32, frac in 0..4u8) {
        let x = Scalar::new(t as f64 + frac as f64 / 4.0, s as f64);
        prop_assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
    }
}
