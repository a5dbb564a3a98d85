use mayss_cli::chart::{build_chart, emit_chart, Chart, ChartError, Format, Window};
use mayss_cli::Session;
use mayss_core::may_diff::e2_at;
use mayss_core::PrimeContext;

#[test]
fn p5_window_matches_e2_oracle() {
    let s = Session::new(None);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chart.json");
    let chart = emit_chart(&s, 5, &Window::new(0..=3, 0..=250), Format::Json, &path).unwrap();
    let back = Chart::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back, chart);
    let cell = back.cell(1, 200).unwrap();
    assert_eq!((cell.e2, cell.representatives.as_slice()), (1, &["h[1,2]".to_string()][..]));
    let ctx = PrimeContext::new(5).unwrap();
    for c in chart.cells.iter().step_by(7) {
        let want = e2_at(&ctx, c.s, c.t);
        assert_eq!((c.e1, c.e2), (want.e1_total, want.e2_total), "({},{})", c.s, c.t);
        assert!(c.lower <= c.e2 && c.upper == c.e2 || c.certification == "E2Zero");
    }
    assert!(chart.cells.windows(2).all(|w| (w[0].s, w[0].t) < (w[1].s, w[1].t)));
}

#[test]
fn empty_window() {
    let s = Session::new(None);
    #[allow(clippy::reversed_empty_ranges)]
    let chart = build_chart(&s, 5, &Window::new(3..=2, 0..=10), 100).unwrap();
    assert!(chart.cells.is_empty());
    assert_eq!(Chart::from_json(&chart.to_json()).unwrap(), chart);
    assert!(chart.to_svg().starts_with("<svg"));
    assert_eq!(chart.to_tsv().lines().count(), 1);
}

#[test]
fn h0h2_at_p7() {
    let s = Session::new(None);
    let chart = build_chart(&s, 7, &Window::new(2..=2, 600..=600), 10).unwrap();
    let cell = chart.cell(2, 600).unwrap();
    assert_eq!(cell.e2, 1);
    assert_eq!(cell.representatives, ["h[1,0] h[1,2]"]);
}

#[test]
fn svg_and_tsv_follow_the_cells() {
    let s = Session::new(None);
    let chart = build_chart(&s, 5, &Window::new(0..=4, 80..=110), 1000).unwrap();
    let svg = chart.to_svg();
    let dots: usize = chart.cells.iter().map(|c| c.e2).sum();
    assert_eq!(svg.matches("<circle").count(), dots);
    let hollow: usize = chart.cells.iter().filter(|c| !c.is_certified()).map(|c| c.e2).sum();
    assert!(hollow > 0);
    assert_eq!(svg.matches("fill=\"none\"").count(), hollow);
    let tsv = chart.to_tsv();
    assert_eq!(tsv.lines().count(), chart.cells.len() + 1);
    let row = tsv.lines().find(|l| l.starts_with("3\t96\t")).unwrap();
    assert_eq!(row, "3\t96\t93\t1\t1\tUpperBound\t0\t1\th[1,0] h[1,1] h[2,0]");
}

#[test]
fn window_cap() {
    let s = Session::new(None);
    assert!(matches!(
        build_chart(&s, 5, &Window::new(0..=10, 0..=10_000), 1000),
        Err(ChartError::WindowTooLarge { cells: 110_011, cap: 1000 })
    ));
}
