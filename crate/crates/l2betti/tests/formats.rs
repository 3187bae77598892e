use l2betti::formats::{
    element_from_json, element_to_json, matrix_from_json, matrix_to_json, read_betti_csv, BettiJson, HeatJson,
    MatrixJson, Output, TermJson,
};
use l2betti::Format;
use l2betti_core::kclass::betti_report;
use l2betti_core::ring::ratio;
use l2betti_core::spectral::heat_limit_scan;
use l2betti_core::{GroupSpec, RingElement, RingMatrix};
use proptest::prelude::*;

fn spec() -> GroupSpec {
    GroupSpec::product(vec![GroupSpec::free_product(vec![2, 3]).unwrap(), GroupSpec::cyclic(4).unwrap()]).unwrap()
}

fn element(spec: &GroupSpec, terms: &[(Vec<usize>, i64, i64)]) -> RingElement {
    let gens = spec.generators();
    let word = |w: &[usize]| w.iter().fold(spec.identity(), |acc, &i| spec.mul(&acc, &gens[i % gens.len()]));
    RingElement::from_terms(spec, terms.iter().map(|(w, n, d)| (word(w), ratio(*n, *d)))).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(Vec<usize>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..6, 0..5), -50i64..=50, 1i64..=12), 0..6)
}

proptest! {
    #[test]
    fn elements_round_trip(t in terms()) {
        let spec = spec();
        let a = element(&spec, &t);
        let text = serde_json::to_string(&element_to_json(&a)).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(element_from_json(&spec, &back).unwrap(), a);
    }

    #[test]
    fn matrices_round_trip(rows in 1usize..3, cols in 1usize..3, t in prop::collection::vec(terms(), 4)) {
        let spec = spec();
        let m = RingMatrix::from_fn(&spec, rows, cols, |i, j| element(&spec, &t[2 * i + j]));
        let text = serde_json::to_string(&matrix_to_json(&m)).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(matrix_from_json(&spec, &back).unwrap(), m);
    }

    #[test]
    fn betti_reports_round_trip(m in 2u32..6, n in 3u32..6, radius in 0usize..3) {
        let spec = GroupSpec::free_product(vec![m, n]).unwrap();
        let report = BettiJson::from_report(&betti_report(&spec, 1, &spec.ball(radius)).unwrap());
        let mut buf = Vec::new();
        Output::Betti(report.clone()).write(Format::Json, &mut buf).unwrap();
        prop_assert_eq!(&serde_json::from_slice::<BettiJson>(&buf).unwrap(), &report);
        buf.clear();
        Output::Betti(report.clone()).write(Format::Csv, &mut buf).unwrap();
        prop_assert_eq!(read_betti_csv(&buf[..]).unwrap(), report.entries);
    }
}

#[test]
fn heat_reports_round_trip() {
    let lap = l2betti_core::complexes::free_product_complex(2, 3).unwrap().laplacian(1).unwrap();
    let spec = lap.spec().clone();
    let classes = [spec.identity(), spec.parse_word("s").unwrap()];
    let report = HeatJson::from_report(&heat_limit_scan(&lap, &classes, &[0.5, 1.0], &[3, 5], 0.1).unwrap());
    let mut buf = Vec::new();
    Output::Heat(report.clone()).write(Format::Json, &mut buf).unwrap();
    assert_eq!(serde_json::from_slice::<HeatJson>(&buf).unwrap(), report);
    buf.clear();
    Output::Heat(report.clone()).write(Format::Csv, &mut buf).unwrap();
    assert_eq!(l2betti::formats::read_heat_csv(&buf[..]).unwrap(), report.rows);
}
