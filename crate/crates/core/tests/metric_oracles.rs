use ccd_core::metrics::silhouette_samples;
use ccd_core::{adjusted_rand_index, avg_silhouette, pairwise_distances, PointSet};
use proptest::prelude::*;

/// ARI by explicit pair enumeration.
fn naive_ari(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let (mut both, mut in_a, mut in_b) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..n {
        for j in (i + 1)..n {
            let sa = a[i] == a[j];
            let sb = b[i] == b[j];
            both += f64::from(u8::from(sa && sb));
            in_a += f64::from(u8::from(sa));
            in_b += f64::from(u8::from(sb));
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let expected = in_a * in_b / pairs;
    let max = 0.5 * (in_a + in_b);
    if max == expected {
        return 1.0;
    }
    (both - expected) / (max - expected)
}

/// Silhouette straight from its definition, with coordinates rather than a
/// distance matrix.
fn naive_silhouette(points: &[Vec<f64>], labels: &[usize]) -> f64 {
    let dist = |i: usize, j: usize| -> f64 {
        points[i]
            .iter()
            .zip(&points[j])
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    let n = points.len();
    let mut clusters: Vec<usize> = labels.to_vec();
    clusters.sort_unstable();
    clusters.dedup();
    let mut total = 0.0;
    for i in 0..n {
        let own: Vec<usize> = (0..n)
            .filter(|&j| j != i && labels[j] == labels[i])
            .collect();
        if own.is_empty() {
            continue;
        }
        let a = own.iter().map(|&j| dist(i, j)).sum::<f64>() / own.len() as f64;
        let b = clusters
            .iter()
            .filter(|&&c| c != labels[i])
            .map(|&c| {
                let members: Vec<usize> = (0..n).filter(|&j| labels[j] == c).collect();
                members.iter().map(|&j| dist(i, j)).sum::<f64>() / members.len() as f64
            })
            .fold(f64::INFINITY, f64::min);
        let s = if a.max(b) > 0.0 {
            (b - a) / a.max(b)
        } else {
            0.0
        };
        total += s;
    }
    total / n as f64
}

fn labelings() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (2..60usize).prop_flat_map(|n| {
        (
            prop::collection::vec(0..5usize, n),
            prop::collection::vec(0..5usize, n),
        )
    })
}

fn labeled_points() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<usize>)> {
    (3..50usize, 1..5usize).prop_flat_map(|(n, d)| {
        (
            prop::collection::vec(prop::collection::vec(-10.0..10.0f64, d), n),
            prop::collection::vec(0..4usize, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ari_matches_pair_enumeration((a, b) in labelings()) {
        let fast = adjusted_rand_index(&a, &b).unwrap();
        prop_assert!((fast - naive_ari(&a, &b)).abs() <= 1e-12);
        prop_assert!((fast - adjusted_rand_index(&b, &a).unwrap()).abs() <= 1e-12);
        prop_assert!(fast <= 1.0 + 1e-12);
    }

    #[test]
    fn ari_ignores_label_names((a, _) in labelings()) {
        let renamed: Vec<usize> = a.iter().map(|&l| 100 - l).collect();
        prop_assert_eq!(adjusted_rand_index(&a, &renamed).unwrap(), 1.0);
    }

    #[test]
    fn silhouette_matches_definition((points, labels) in labeled_points()) {
        let distinct = {
            let mut l = labels.clone();
            l.sort_unstable();
            l.dedup();
            l.len()
        };
        prop_assume!(distinct >= 2);
        let ps = PointSet::from_rows(&points).unwrap();
        let fast = avg_silhouette(&ps, &labels).unwrap();
        prop_assert!((fast - naive_silhouette(&points, &labels)).abs() <= 1e-12);
        let each = silhouette_samples(&pairwise_distances(&ps), &labels).unwrap();
        prop_assert!(each.iter().all(|s| (-1.0..=1.0).contains(s)));
    }
}

#[test]
fn ari_of_crossed_halves_is_exactly_minus_half() {
    assert_eq!(
        adjusted_rand_index(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap(),
        -0.5
    );
}

#[test]
fn silhouette_needs_two_clusters() {
    let ps = PointSet::from_rows(&[[0.0], [1.0], [2.0]]).unwrap();
    assert!(avg_silhouette(&ps, &[4, 4, 4]).is_err());
}
