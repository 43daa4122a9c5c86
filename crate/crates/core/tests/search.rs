use std::time::Instant;

use ryser_core::analysis::{check_8edge_lemma, classify_degree_scheme};
use ryser_core::{search_extremal, tau, SearchMode, SearchParams, SearchStatus};

fn status(r: usize, m: usize, t: usize) -> SearchStatus {
    search_extremal(&SearchParams::new(r, m, t)).unwrap().status
}

#[test]
fn f3_and_f4() {
    assert_eq!(status(3, 2, 2), SearchStatus::Exhausted);
    assert_eq!(status(3, 3, 2), SearchStatus::Found);
    assert_eq!(status(4, 5, 3), SearchStatus::Exhausted);
    assert_eq!(status(4, 6, 3), SearchStatus::Found);
}

#[test]
fn four_partite_witnesses_reach_ratio_one() {
    let out = search_extremal(&SearchParams::new(4, 6, 3).mode(SearchMode::All)).unwrap();
    assert!(!out.instances.is_empty());
    for h in &out.instances {
        assert!(h.is_intersecting());
        assert_eq!(tau(h), 3);
    }
}

#[test]
fn eight_edge_lemma_on_searched_instances() {
    let params = SearchParams::new(6, 8, 4).cap(4).mode(SearchMode::All).limit(50);
    let out = search_extremal(&params).unwrap();
    assert!(!out.instances.is_empty());
    for h in out.instances.iter().filter(|h| tau(h) == 4) {
        let report = check_8edge_lemma(h).unwrap();
        assert!(report.holds(), "{report:?}");
        assert!(classify_degree_scheme(h).unwrap().matches_lemma());
    }
}

/// f(5) = 9. Takes a few seconds with optimizations; run with `--ignored`.
#[test]
#[ignore = "long-running"]
fn f5() {
    let start = Instant::now();
    let none = search_extremal(&SearchParams::new(5, 8, 4).mode(SearchMode::All)).unwrap();
    assert_eq!(none.status, SearchStatus::Exhausted);
    let some = search_extremal(&SearchParams::new(5, 9, 4)).unwrap();
    assert_eq!(some.status, SearchStatus::Found);
    let h = &some.instances[0];
    assert!(h.is_intersecting());
    assert!(tau(h) >= 4);
    eprintln!("f(5) = 9 confirmed in {:.2?}", start.elapsed());
}
