use ccd_core::srt::KsStatistic;
use ccd_core::{
    holm_step_down, mc_srt_nnd, radius_ks, radius_rk, radius_un, CoveringBall, Family, PointSet,
    SimSpec, SrtConfig,
};

/// The first cluster of a uniform simulation: points uniform in one ball.
fn uniform_ball(d: usize, m: usize, seed: u64) -> PointSet<f64> {
    let ds = SimSpec::new(Family::Uniform, d, 2 * m, 2, seed)
        .generate()
        .unwrap();
    let idx: Vec<usize> = (0..m).collect();
    ds.points.subset(&idx).unwrap()
}

fn max_distance(ps: &PointSet<f64>, center: usize) -> f64 {
    (0..ps.len())
        .map(|j| ps.distance(center, j))
        .fold(0.0, f64::max)
}

#[test]
fn nnd_test_keeps_its_level_on_csr_data() {
    let cfg = SrtConfig::new(0.05, 199, false, 17).unwrap();
    let trials = 500;
    let ball = CoveringBall::new(0, 1.2).unwrap();
    let mut rejected = 0;
    for t in 0..trials {
        // the 1.2 ball is a superset window; rescale the cluster to fill it
        let ps = uniform_ball(2, 20, 1000 + t);
        let far = (0..20).map(|i| {
            let p = ps.point(i);
            (p[0] - 3.0).hypot(p[1] - 3.0)
        });
        let r = far.fold(0.0, f64::max);
        let local = ps
            .map_points(|p| p.iter().map(|x| (x - 3.0) * 1.2 / r).collect())
            .unwrap();
        if mc_srt_nnd(&local, &ball, &cfg).unwrap().reject {
            rejected += 1;
        }
    }
    let rate = rejected as f64 / trials as f64;
    let se = (0.05f64 * 0.95 / trials as f64).sqrt();
    assert!(rate <= 0.05 + 3.0 * se, "rate {rate}");
}

#[test]
fn nnd_test_rejects_clumped_points() {
    let mut coords = Vec::new();
    for i in 0..30 {
        let a = i as f64 * 0.7;
        let r = 0.01 * (i % 5) as f64;
        let base = if i % 2 == 0 { 0.5 } else { -0.5 };
        coords.extend_from_slice(&[base + r * a.cos(), r * a.sin()]);
    }
    let local = PointSet::new(coords, 2).unwrap();
    let cfg = SrtConfig::new(0.05, 199, false, 2).unwrap();
    let out = mc_srt_nnd(&local, &CoveringBall::new(0, 1.0).unwrap(), &cfg).unwrap();
    assert!(out.reject);
    assert!(out.p_mean < 0.05 && out.p_median < 0.05);
}

#[test]
fn uniform_ball_gets_maximal_radius() {
    // centered on the middle of the support, the largest candidate ball is
    // (nearly) the support itself
    let mut full_un = 0;
    let mut full_rk = 0;
    for seed in 0..100u64 {
        let cluster = uniform_ball(2, 30, seed);
        let mut rows = vec![vec![3.0, 3.0]];
        rows.extend(cluster.rows().map(<[f64]>::to_vec));
        let ps = PointSet::from_rows(&rows).unwrap();
        let cfg = SrtConfig::with_alpha(0.001, seed).unwrap();
        let center = 0;
        let rmax = max_distance(&ps, center);
        full_un += usize::from(radius_un(center, &ps, &cfg).unwrap().radius == rmax);
        full_rk += usize::from(radius_rk(center, &ps, &cfg).unwrap().radius == rmax);
    }
    assert!(full_un >= 90, "UN maximal in {full_un} of 100");
    assert!(full_rk >= 90, "RK maximal in {full_rk} of 100");
}

#[test]
fn ks_radius_hand_examples() {
    let ps = PointSet::new(vec![0.0, 1.0, 2.0, 3.0], 1).unwrap();
    assert_eq!(radius_ks(0, &ps, 0.5).unwrap().radius, 3.0);
    assert_eq!(radius_ks(0, &ps, 2.0).unwrap().radius, 0.0);
    let stat = KsStatistic {
        center: 0,
        radius_candidates: vec![0.0, 1.0, 2.0],
        t_values: vec![0.0, 1.0, 1.0],
        delta: 1.0,
    };
    assert_eq!(stat.argmax(), 1.0);
    assert!(radius_ks(0, &ps, 0.0).is_err());
}

#[test]
fn holm_examples() {
    assert_eq!(holm_step_down(&[0.01, 0.04], 0.05), vec![true, true]);
    assert_eq!(holm_step_down(&[0.04, 0.01], 0.05), vec![true, true]);
    assert_eq!(holm_step_down(&[0.03, 0.04], 0.05), vec![false, false]);
    assert_eq!(holm_step_down(&[0.02, 0.2], 0.05), vec![true, false]);
}

#[test]
fn config_validation() {
    assert!(SrtConfig::new(0.0, 999, false, 0).is_err());
    assert!(SrtConfig::new(1.0, 999, false, 0).is_err());
    assert!(SrtConfig::new(0.001, 999, false, 0).is_err());
    assert_eq!(
        SrtConfig::with_alpha(0.001, 0).unwrap().num_replicates,
        2000
    );
    assert_eq!(SrtConfig::with_alpha(0.05, 0).unwrap().num_replicates, 999);
}

#[test]
fn two_points_use_the_only_candidate() {
    let ps = PointSet::new(vec![1.0, 1.0, 4.0, 5.0], 2).unwrap();
    let cfg = SrtConfig::with_alpha(0.05, 0).unwrap();
    assert_eq!(radius_un(0, &ps, &cfg).unwrap().radius, 5.0);
    assert_eq!(radius_rk(1, &ps, &cfg).unwrap().radius, 5.0);
}
