use ccd_core::synth::{centers, CenterLayout};
use ccd_core::{Family, SimSpec};

/// Largest gap between the empirical CDF of `sample` and the uniform CDF.
fn ks_uniform(sample: &mut [f64]) -> f64 {
    sample.sort_by(f64::total_cmp);
    let n = sample.len() as f64;
    sample
        .iter()
        .enumerate()
        .map(|(i, &u)| (u - i as f64 / n).max((i + 1) as f64 / n - u))
        .fold(0.0, f64::max)
}

fn distances_to(points: &[&[f64]], center: &[f64]) -> Vec<f64> {
    points
        .iter()
        .map(|p| {
            p.iter()
                .zip(center)
                .map(|(x, c)| (x - c) * (x - c))
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}

#[test]
fn uniform_clusters_have_the_uniform_radial_law() {
    for d in [2usize, 5, 10] {
        let ds = SimSpec::new(Family::Uniform, d, 20_000, 2, d as u64)
            .generate()
            .unwrap();
        let mu = &centers(d, 2, CenterLayout::Standard).unwrap()[0];
        let members: Vec<&[f64]> = ds
            .points
            .rows()
            .zip(&ds.labels)
            .filter(|(_, &l)| l == 0)
            .map(|(p, _)| p)
            .collect();
        assert_eq!(members.len(), 10_000);
        let dist = distances_to(&members, mu);
        // the drawn radius is not exposed; the sample maximum is within
        // O(1/m) of it
        let r = dist.iter().copied().fold(0.0, f64::max);
        assert!((0.8..=1.2).contains(&r));
        let mut u: Vec<f64> = dist.iter().map(|x| (x / r).powi(d as i32)).collect();
        // 1% critical value of the one-sample KS statistic
        let critical = 1.628 / (u.len() as f64).sqrt();
        let stat = ks_uniform(&mut u);
        assert!(stat < critical, "d = {d}: KS {stat} >= {critical}");
    }
}

#[test]
fn gaussian_clusters_center_and_isotropy() {
    let d = 4;
    let m = 10_000;
    let spec = SimSpec::new(Family::Gaussian, d, 2 * m, 2, 11);
    let ds = spec.generate().unwrap();
    let mu = &centers(d, 2, CenterLayout::Standard).unwrap()[1];
    let members: Vec<&[f64]> = ds
        .points
        .rows()
        .zip(&ds.labels)
        .filter(|(_, &l)| l == 1)
        .map(|(p, _)| p)
        .collect();
    let sigma_max = spec.effective_gaussian_scale() * 1.2f64.sqrt();
    let mean: Vec<f64> = (0..d)
        .map(|j| members.iter().map(|p| p[j]).sum::<f64>() / m as f64)
        .collect();
    for j in 0..d {
        assert!((mean[j] - mu[j]).abs() < 3.0 * sigma_max / (m as f64).sqrt());
    }
    let cov = |a: usize, b: usize| {
        members
            .iter()
            .map(|p| (p[a] - mean[a]) * (p[b] - mean[b]))
            .sum::<f64>()
            / (m - 1) as f64
    };
    let var0 = cov(0, 0);
    let lo = spec.effective_gaussian_scale().powi(2) * 0.8;
    let hi = sigma_max * sigma_max;
    for a in 0..d {
        let v = cov(a, a);
        assert!(v > 0.95 * lo && v < 1.05 * hi, "variance {v}");
        // one Delta per cluster: all coordinates share the variance
        assert!((v - var0).abs() < 0.1 * var0);
        for b in (a + 1)..d {
            assert!(cov(a, b).abs() < 4.0 * hi / (m as f64).sqrt());
        }
    }
}

#[test]
fn gaussian_scale_is_a_standard_deviation_multiplier() {
    let base = SimSpec::new(Family::Gaussian, 3, 300, 3, 5).with_gaussian_scale(1.0);
    let half = base.clone().with_gaussian_scale(0.5);
    let a = base.generate().unwrap();
    let b = half.generate().unwrap();
    let mus = centers(3, 3, CenterLayout::Standard).unwrap();
    for ((pa, pb), &l) in a.points.rows().zip(b.points.rows()).zip(&a.labels) {
        for j in 0..3 {
            let da = pa[j] - mus[l][j];
            let db = pb[j] - mus[l][j];
            assert!((da - 2.0 * db).abs() < 1e-12);
        }
    }
    assert_eq!(
        SimSpec::new(Family::Gaussian, 3, 30, 3, 0).effective_gaussian_scale(),
        0.5
    );
    let noise_study =
        SimSpec::new(Family::Gaussian, 3, 30, 3, 0).with_layout(CenterLayout::NoiseStudy);
    assert_eq!(noise_study.effective_gaussian_scale(), 1.0);
    assert!(base.with_gaussian_scale(0.0).validate().is_err());
}

#[test]
fn noise_points_fill_the_bounding_box() {
    let ds = SimSpec::new(Family::Gaussian, 3, 200, 3, 8)
        .with_layout(CenterLayout::NoiseStudy)
        .with_noise(0.2)
        .generate()
        .unwrap();
    assert_eq!(ds.points.len(), 240);
    assert_eq!(ds.n_noise(), 40);
    let regular: Vec<&[f64]> = ds.points.rows().take(200).collect();
    for j in 0..3 {
        let lo = regular.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min);
        let hi = regular
            .iter()
            .map(|p| p[j])
            .fold(f64::NEG_INFINITY, f64::max);
        for p in ds.points.rows().skip(200) {
            assert!(p[j] >= lo && p[j] <= hi);
        }
    }
    assert!(ds.labels[200..].iter().all(|&l| l == 3));
    assert_eq!(ds.k_true, 3);
}

#[test]
fn generation_is_deterministic_and_seed_sensitive() {
    let spec = SimSpec::new(Family::Uniform, 5, 100, 5, 21).with_noise(0.05);
    assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
    let other = SimSpec {
        rng_seed: 22,
        ..spec.clone()
    };
    assert_ne!(
        spec.generate().unwrap().points,
        other.generate().unwrap().points
    );
}

#[test]
fn cluster_sizes_are_balanced() {
    let ds = SimSpec::new(Family::Uniform, 2, 100, 3, 0)
        .generate()
        .unwrap();
    let mut counts = [0; 3];
    for &l in &ds.labels {
        counts[l] += 1;
    }
    assert_eq!(counts, [34, 33, 33]);
    assert!(SimSpec::new(Family::Uniform, 2, 100, 4, 0)
        .generate()
        .is_err());
    assert!(SimSpec::new(Family::Uniform, 1, 100, 2, 0)
        .generate()
        .is_err());
}
