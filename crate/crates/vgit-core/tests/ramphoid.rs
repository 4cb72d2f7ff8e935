//! Chamber decomposition of the chart around a ramphoid cusp point.

use vgit_core::{
    in_minus, in_plus, limit_exists, minus_locus, plus_locus, OneParamSubgroup, SupportPattern,
    WeightSystem,
};

fn chart() -> WeightSystem {
    serde_json::from_str(
        r#"{
          "rank": 1,
          "character": [1],
          "coords": [
            {"label": "s0", "weights": [-10]},
            {"label": "s1", "weights": [-8]},
            {"label": "s2", "weights": [-6]},
            {"label": "s3", "weights": [-4]},
            {"label": "n", "weights": [1]},
            {"label": "c", "weights": [1]}
          ]
        }"#,
    )
    .unwrap()
}

#[test]
fn chambers_are_the_two_attractors() {
    let ws = chart();
    let minus = minus_locus(&ws).unwrap();
    assert_eq!(minus.to_label_sets(&ws), vec![vec!["s0", "s1", "s2", "s3"]]);
    let plus = plus_locus(&ws).unwrap();
    assert_eq!(plus.to_label_sets(&ws), vec![vec!["c", "n"]]);
}

#[test]
fn stratum_union_serializes_sorted() {
    let ws = chart();
    let plus = plus_locus(&ws).unwrap();
    assert_eq!(
        plus.to_json_value(&ws),
        serde_json::json!({ "strata": [["c", "n"]] })
    );
}

#[test]
fn membership_splits_along_the_wall() {
    let ws = chart();
    let attractor_minus = SupportPattern::from_labels(&ws, &["n", "c"]).unwrap();
    let lam = in_minus(&ws, &attractor_minus).unwrap().expect("in minus");
    assert!(lam.pairing(ws.character()) >= 1);
    assert!(limit_exists(&ws, &attractor_minus, &lam).unwrap());

    let touches_s = SupportPattern::from_labels(&ws, &["s0"]).unwrap();
    assert!(in_minus(&ws, &touches_s).unwrap().is_none());

    let s_block = SupportPattern::from_labels(&ws, &["s0", "s1", "s2", "s3"]).unwrap();
    let lam = in_plus(&ws, &s_block).unwrap().expect("in plus");
    assert!(lam.pairing(ws.character()) <= -1);
    assert!(limit_exists(&ws, &s_block, &lam).unwrap());
    assert!(in_plus(&ws, &SupportPattern::from_labels(&ws, &["n"]).unwrap())
        .unwrap()
        .is_none());

    let full = SupportPattern::full(ws.len());
    assert!(in_minus(&ws, &full).unwrap().is_none());
    assert!(in_plus(&ws, &full).unwrap().is_none());
}

#[test]
fn membership_is_downward_closed() {
    let ws = chart();
    for labels in [&[][..], &["n"][..], &["c"][..], &["n", "c"][..]] {
        let s = SupportPattern::from_labels(&ws, labels).unwrap();
        assert!(in_minus(&ws, &s).unwrap().is_some(), "labels {labels:?}");
    }
}

#[test]
fn limits_follow_the_weight_signs() {
    let ws = chart();
    let down = OneParamSubgroup(vec![-1]);
    let up = OneParamSubgroup(vec![1]);
    let s_side = SupportPattern::from_labels(&ws, &["s0", "s1"]).unwrap();
    let n_side = SupportPattern::from_labels(&ws, &["n", "c"]).unwrap();
    assert!(limit_exists(&ws, &s_side, &down).unwrap());
    assert!(!limit_exists(&ws, &n_side, &down).unwrap());
    assert!(limit_exists(&ws, &n_side, &up).unwrap());
    assert!(!limit_exists(&ws, &s_side, &up).unwrap());
    assert!(limit_exists(&ws, &SupportPattern::empty(), &down).unwrap());
}

#[test]
fn origin_is_not_the_only_closed_orbit() {
    assert!(!chart().unique_closed_point().unwrap());
}
