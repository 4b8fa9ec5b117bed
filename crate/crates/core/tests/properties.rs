use proptest::prelude::*;
use ypr_core::exact::{poly_frequency, solve_circle, word_frequencies, ypr_frequencies};
use ypr_core::model::{
    classify, derive, from_classical, model_from_json, model_to_json, symmetric, ClassicalKind, RateParameters, YprEdge,
};
use ypr_core::nucleotide::{decode_word, encode_word, parse_word, word_string, Nucleotide, Ypr, A, G};
use ypr_core::stats::chi_square_gof;
use ypr_core::table::{fmt_f64, FrequencyTable};
use ypr_core::validate;

/// Valid tables with no target receiving two negative increments.
fn rates() -> impl Strategy<Value = RateParameters> {
    (
        prop::array::uniform4(0.2f64..3.0),
        prop::array::uniform4(0.2f64..3.0),
        prop::array::uniform8(-0.9f64..3.0),
        prop::array::uniform8(any::<bool>()),
    )
        .prop_map(|(v, w, r, zero)| {
            let mut p = RateParameters::from_vw(|x| v[x.index()], |x| w[x.index()]);
            for (k, e) in YprEdge::ALL.into_iter().enumerate() {
                let rk = if zero[k] { 0.0 } else { r[k] * w[e.target().index()] };
                p.set_r(e, rk);
            }
            for x in Nucleotide::ALL {
                let es: Vec<YprEdge> = YprEdge::ALL.into_iter().filter(|e| e.target() == x).collect();
                if es.len() == 2 && p.r(es[0]) < 0.0 && p.r(es[1]) < 0.0 {
                    p.set_r(es[1], -p.r(es[1]));
                }
            }
            p
        })
}

fn word() -> impl Strategy<Value = Vec<Nucleotide>> {
    prop::collection::vec((0usize..4).prop_map(Nucleotide::from_index), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_weights_sum_to_one(p in rates()) {
        prop_assert!(validate(&p).graphical_exact);
        let d = derive(&p).unwrap();
        prop_assert!((d.t_r + d.t_y - 1.0).abs() < 1e-14);
        prop_assert!(d.t_r > 0.0 && d.t_y > 0.0);
        let again = derive(&p).unwrap();
        prop_assert_eq!(serde_json::to_string(&d).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn stationary_law_is_a_distribution(p in rates(), n in 3usize..=6) {
        let sol = solve_circle(&p, n).unwrap();
        prop_assert!((sol.pi.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(sol.pi.iter().all(|&x| x > -1e-12));
        for k in 1..=3 {
            let f = word_frequencies(&p, k).unwrap();
            prop_assert!((f.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn ypr_system_agrees_with_words(p in rates()) {
        let y = ypr_frequencies(&p).unwrap();
        for pair in Ypr::ALL {
            let (x, z) = pair.pair();
            prop_assert!((y[pair.index()] - poly_frequency(&p, &[x, z]).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn reverse_complement_symmetry(p in rates(), w in word()) {
        let q = p.complement();
        let rc: Vec<Nucleotide> = w.iter().rev().map(|x| x.complement()).collect();
        let a = poly_frequency(&p, &w).unwrap();
        let b = poly_frequency(&q, &rc).unwrap();
        prop_assert!((a - b).abs() < 1e-10, "{} {a} vs {b}", word_string(&w));
        prop_assert_eq!(q.complement(), p);
    }

    #[test]
    fn symmetric_tables_are_self_complementary(
        vs in 0.1f64..3.0, vw in 0.1f64..3.0, ws in 0.1f64..3.0, ww in 0.1f64..3.0,
        rs in 0.0f64..3.0, rw in 0.0f64..3.0,
    ) {
        let p = symmetric(vs, vw, ws, ww, rs, rw).unwrap();
        prop_assert_eq!(p.complement(), p);
    }

    #[test]
    fn classical_constructors(args in prop::collection::vec(0.05f64..3.0, 6), kind in 0usize..7) {
        let kind = ClassicalKind::ALL[kind];
        let p = from_classical(kind, &args[..kind.arity()]).unwrap();
        prop_assert!(validate(&p).is_valid());
        prop_assert!(classify(&p).contains(&kind), "{kind} not recognised");
        if kind == ClassicalKind::TN93 {
            prop_assert!((p.w(A) * p.v(G) - p.w(G) * p.v(A)).abs() < 1e-12);
        }
        prop_assert!(from_classical(kind, &args[..kind.arity() - 1]).is_err());
    }

    #[test]
    fn model_json_round_trip(p in rates()) {
        prop_assert_eq!(model_from_json(&model_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn word_codes_round_trip(w in word()) {
        prop_assert_eq!(decode_word(encode_word(&w), w.len()), w.clone());
        prop_assert_eq!(parse_word(&word_string(&w)).unwrap(), w);
    }

    #[test]
    fn floats_print_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn table_csv_round_trip(rows in prop::collection::vec((word(), -1e3f64..1e3, prop::option::of(0.0f64..1.0)), 0..10)) {
        let mut t = FrequencyTable::new();
        for (w, v, e) in rows {
            t.push(word_string(&w), "m", v, e);
        }
        prop_assert_eq!(FrequencyTable::from_csv(&t.to_csv()).unwrap(), t.clone());
        prop_assert_eq!(FrequencyTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn exact_counts_are_not_rejected(probs in prop::array::uniform4(0.05f64..1.0)) {
        let total: f64 = probs.iter().sum();
        let probs: Vec<f64> = probs.iter().map(|p| p / total).collect();
        let counts: Vec<u64> = probs.iter().map(|p| (p * 1e5).round() as u64).collect();
        prop_assert!(chi_square_gof(&counts, &probs).unwrap().p_value > 0.5);
    }
}
