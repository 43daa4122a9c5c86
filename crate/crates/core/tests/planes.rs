use ryser_core::analysis::{degree_table, linearity_report};
use ryser_core::constructions::{pad_to, truncated_projective_plane};
use ryser_core::{canonical_form, enumerate_covers, tau};

#[test]
fn truncated_planes() {
    for q in [2usize, 3, 4, 5] {
        let h = truncated_projective_plane(q).unwrap();
        assert_eq!(h.rank(), q + 1);
        assert_eq!(h.edge_count(), q * q);
        assert!(h.part_sizes().iter().all(|&k| k == q));
        assert!(h.vertices().all(|v| h.degree(v).unwrap() == q));
        assert!(linearity_report(&h, &[]).is_linear());
        assert_eq!(tau(&h), q, "q = {q}");
        assert!(enumerate_covers(&h, q - 1).is_empty());
    }
}

#[test]
fn larger_prime_powers() {
    for q in [7usize, 8, 9] {
        let h = truncated_projective_plane(q).unwrap();
        assert_eq!(h.edge_count(), q * q);
        assert!(linearity_report(&h, &[]).is_linear());
    }
}

#[test]
fn orders_that_are_not_prime_powers() {
    for q in [0usize, 1, 6, 10, 12] {
        assert!(truncated_projective_plane(q).is_err(), "q = {q}");
    }
}

#[test]
fn order_two_report() {
    let h = truncated_projective_plane(2).unwrap();
    let table = degree_table(&h);
    assert_eq!(table.max_degree, 2);
    assert!(table.parts.iter().all(|p| p.groups.len() == 1 && p.groups[0].degree == 2));
    assert_eq!(canonical_form(&pad_to(&h, 3).unwrap()), canonical_form(&h));
}
