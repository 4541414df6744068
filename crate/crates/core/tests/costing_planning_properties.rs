use std::fs::File;
use std::path::PathBuf;

use anc_toolkit::costing::{
    assembly_cost, bom_rollup, cost_reduction_report, dfa_index, gross_margin, read_bom_csv, write_bom_csv,
    AssemblyOp, BomLine, OverheadRates,
};
use anc_toolkit::planning::{
    concept_score, market_size_estimate, read_register_csv, risk_score_and_map, Concept, ConceptMatrix,
    Criterion, MarketParams, Quadrant, RiskItem,
};
use proptest::prelude::*;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn cents() -> impl Strategy<Value = f64> {
    (0u32..100_000).prop_map(|c| c as f64 / 100.0)
}

fn line() -> impl Strategy<Value = BomLine> {
    ("[A-Za-z]{1,12}", 1u32..20, cents(), cents(), cents()).prop_map(|(component, qty, p, q, a)| BomLine {
        component,
        qty,
        purchased: p,
        processing: q,
        assembly_labor: a,
        supplier: "Acme".into(),
    })
}

const RATES: OverheadRates = OverheadRates { materials_rate: 0.1, labor_rate: 0.8 };

fn matrix(weights: &[f64], ratings: Vec<Vec<u8>>) -> ConceptMatrix {
    ConceptMatrix {
        criteria: weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Criterion { name: format!("c{i}"), weight: w })
            .collect(),
        concepts: ratings
            .into_iter()
            .enumerate()
            .map(|(i, r)| Concept { name: format!("k{i}"), ratings: r })
            .collect(),
    }
}

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1u32..100, n).prop_map(|raw| {
        let sum: u32 = raw.iter().sum();
        let mut w: Vec<f64> = raw.iter().map(|&r| r as f64 / sum as f64).collect();
        // Absorb rounding into the last weight so the sum is exact enough.
        let rest: f64 = w[..w.len() - 1].iter().sum();
        *w.last_mut().unwrap() = 1.0 - rest;
        w
    })
}

proptest! {
    #[test]
    fn rollup_is_additive(a in prop::collection::vec(line(), 0..15), b in prop::collection::vec(line(), 0..15)) {
        let sa = bom_rollup(&a, 0.0, &RATES, 0.0, None).unwrap();
        let sb = bom_rollup(&b, 0.0, &RATES, 0.0, None).unwrap();
        let joined: Vec<BomLine> = a.iter().chain(&b).cloned().collect();
        let s = bom_rollup(&joined, 0.0, &RATES, 0.0, None).unwrap();
        prop_assert!((s.total_manufacturing - sa.total_manufacturing - sb.total_manufacturing).abs() < 1e-6);
        prop_assert!((s.direct_columns() - sa.direct_columns() - sb.direct_columns()).abs() < 1e-6);
    }

    #[test]
    fn rollup_ignores_row_order(mut lines in prop::collection::vec(line(), 1..20), ship in cents(), warranty in cents()) {
        let a = bom_rollup(&lines, ship, &RATES, warranty, None).unwrap();
        lines.reverse();
        let b = bom_rollup(&lines, ship, &RATES, warranty, None).unwrap();
        prop_assert!((a.total_manufacturing - b.total_manufacturing).abs() < 1e-6);
        let expect = a.direct_columns() + ship + 0.1 * a.direct_materials + 0.8 * a.direct_labor + warranty;
        prop_assert!((a.total_manufacturing - expect).abs() < 1e-6);
    }

    #[test]
    fn bom_csv_round_trips(lines in prop::collection::vec(line(), 1..10)) {
        let mut buf = Vec::new();
        write_bom_csv(&mut buf, &lines).unwrap();
        prop_assert_eq!(read_bom_csv(buf.as_slice()).unwrap(), lines);
    }

    #[test]
    fn ideal_assembly_has_unit_index(k in 1u32..500) {
        prop_assert!((dfa_index(k, 3.0 * k as f64).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn assembly_cost_is_linear_in_rate(secs in prop::collection::vec(0.0f64..60.0, 1..10), rate in 0.0f64..100.0) {
        let ops: Vec<AssemblyOp> = secs
            .iter()
            .map(|&s| AssemblyOp { part: "p".into(), qty: 1, handling_s: s, insertion_s: s / 2.0 })
            .collect();
        let one = assembly_cost(&ops, 1.0).unwrap().cost;
        let got = assembly_cost(&ops, rate).unwrap().cost;
        prop_assert!((got - one * rate).abs() <= 1e-9 * (1.0 + got));
    }

    #[test]
    fn reduction_and_margin_identities(old in 1.0f64..1e4, frac in 0.0f64..1.0) {
        let new = old * (1.0 - frac);
        let r = cost_reduction_report(old, new).unwrap();
        prop_assert!((r.pct - frac).abs() < 1e-9);
        prop_assert!((gross_margin(old, new).unwrap() - frac).abs() < 1e-9);
    }

    #[test]
    fn concept_scores_ignore_criterion_order(w in weights(6), ratings in prop::collection::vec(prop::collection::vec(1u8..=3, 6), 1..6)) {
        let a = concept_score(&matrix(&w, ratings.clone())).unwrap();
        let rw: Vec<f64> = w.iter().rev().copied().collect();
        let rr: Vec<Vec<u8>> = ratings.iter().map(|r| r.iter().rev().copied().collect()).collect();
        let b = concept_score(&matrix(&rw, rr)).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x.total - y.total).abs() < 1e-9);
        }
    }

    #[test]
    fn raising_a_rating_never_lowers_the_total(w in weights(5), ratings in prop::collection::vec(1u8..=2, 5), idx in 0usize..5) {
        let mut raised = ratings.clone();
        raised[idx] += 1;
        let s = concept_score(&matrix(&w, vec![ratings, raised])).unwrap();
        prop_assert!(s[1].total >= s[0].total);
        prop_assert!(s.iter().all(|c| (1.0..=3.0 + 1e-9).contains(&c.total)));
    }

    #[test]
    fn risk_score_is_symmetric(p in 1u8..=10, i in 1u8..=10, t in 1u8..=10) {
        let item = |p, i| RiskItem { code: "R".into(), description: String::new(), category: String::new(), probability: p, impact: i };
        let a = risk_score_and_map(&item(p, i), t).unwrap();
        let b = risk_score_and_map(&item(i, p), t).unwrap();
        prop_assert_eq!(a.score, b.score);
        prop_assert_eq!(a.score, u32::from(p) * u32::from(i));
        let swapped = match a.quadrant {
            Quadrant::Urgent => Quadrant::Monitor,
            Quadrant::Monitor => Quadrant::Urgent,
            q => q,
        };
        prop_assert_eq!(b.quadrant, swapped);
    }

    #[test]
    fn market_profit_is_linear_in_margin(price in 1.0f64..1e3, cost in 0.0f64..1e3, k in 0.1f64..10.0) {
        let p = MarketParams {
            world_pop: 8.0e9, ref_pop: 3.3e8, ref_affected: 1.0e6, tolerance: 0.5,
            adoption_share: 0.1, unit_price: price, unit_cost: cost, rounding_step: 100_000.0,
        };
        let scaled = MarketParams { unit_price: price * k, unit_cost: cost * k, ..p.clone() };
        let a = market_size_estimate(&p).unwrap();
        let b = market_size_estimate(&scaled).unwrap();
        prop_assert!((b.profit - k * a.profit).abs() <= 1e-6 * (1.0 + b.profit.abs()));
        prop_assert!((a.affected_rounded - a.affected).abs() <= 50_000.0);
    }
}

#[test]
fn risk_quadrants_at_the_threshold() {
    let item = |p, i| RiskItem {
        code: "X".into(),
        description: String::new(),
        category: String::new(),
        probability: p,
        impact: i,
    };
    let q = |p, i| risk_score_and_map(&item(p, i), 5).unwrap().quadrant;
    assert_eq!(q(5, 5), Quadrant::Critical);
    assert_eq!(q(8, 2), Quadrant::Urgent);
    assert_eq!(q(2, 8), Quadrant::Monitor);
    assert_eq!(q(4, 4), Quadrant::Low);
    assert!(risk_score_and_map(&item(0, 4), 5).is_err());
    assert!(risk_score_and_map(&item(4, 11), 5).is_err());
}

#[test]
fn shipped_register_lists_every_risk_unrated() {
    let entries = read_register_csv(File::open(data("risks.csv")).unwrap()).unwrap();
    assert_eq!(entries.len(), 54);
    assert!(entries.iter().all(|e| e.rated().is_none()));
}

#[test]
fn shipped_bom_sums() {
    let initial = read_bom_csv(File::open(data("bom_initial.csv")).unwrap()).unwrap();
    let s = bom_rollup(&initial, 0.0, &RATES, 0.32, None).unwrap();
    assert!(initial.iter().all(|l| l.qty >= 1));
    assert!(s.total_manufacturing > s.direct_cost());
    let revised = read_bom_csv(File::open(data("bom_revised.csv")).unwrap()).unwrap();
    let purchased: f64 = revised.iter().map(|l| l.purchased).sum();
    assert!((purchased - 66.19).abs() < 0.005, "{purchased}");
}
