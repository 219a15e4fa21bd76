use std::f64::consts::PI;

use falconer_core::spectral::*;
use falconer_core::stats::log_log_fit;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_measure(rng: &mut ChaCha8Rng, d: usize) -> DiscreteMeasure {
    let n = rng.random_range(1..=20);
    let pts: Vec<f64> = (0..n * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    DiscreteMeasure::new(d, pts, raw.iter().map(|w| w / total).collect()).unwrap()
}

#[test]
fn pushforward_transform_factorizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..100 {
        let d = 2 + trial % 2;
        let m = random_measure(&mut rng, d);
        let g = haar_sample_with(d, &mut rng).unwrap();
        let xi: Vec<f64> = (0..d).map(|_| rng.random_range(-6.0..6.0)).collect();
        let nu = nu_g_pushforward(&m, &g, 1 << 20).unwrap();
        let lhs = fourier_transform(&nu, &xi);
        let back = g.transpose().apply(&xi);
        let rhs = fourier_transform(&m, &xi) * fourier_transform(&m, &back).conj();
        assert!((lhs - rhs).norm() <= 1e-10, "trial {trial}: {lhs} vs {rhs}");
        let moduli = fourier_transform(&m, &xi).norm() * fourier_transform(&m, &back).norm();
        assert!((lhs.norm() - moduli).abs() <= 1e-10);
    }
}

#[test]
fn unconjugated_product_is_not_the_pushforward_transform() {
    // {0, e1} at g = I: the transform of ν is |μ̂|², which is real, while μ̂(ξ)² is not
    let m = DiscreteMeasure::uniform(2, vec![0.0, 0.0, 1.0, 0.0]).unwrap();
    let g = OrthogonalTransform::identity(2);
    let nu = nu_g_pushforward(&m, &g, 100).unwrap();
    let xi = [0.25, 0.0];
    let lhs = fourier_transform(&nu, &xi);
    let mu = fourier_transform(&m, &xi);
    assert!((lhs - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    assert!((lhs - mu * mu).norm() > 0.5);
}

#[test]
fn transform_basics() {
    let delta = DiscreteMeasure::delta(3).unwrap();
    assert_eq!(fourier_transform(&delta, &[1.3, -2.0, 7.5]), Complex64::new(1.0, 0.0));
    let pair = DiscreteMeasure::new(2, vec![0.5, 0.0, -0.5, 0.0], vec![0.5, 0.5]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let xi = [rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)];
        let v = fourier_transform(&pair, &xi);
        assert!((v.re - (PI * xi[0]).cos()).abs() < 1e-14 && v.im.abs() < 1e-14);
        let m = random_measure(&mut rng, 2);
        let f = fourier_transform(&m, &xi);
        assert!(f.norm() <= 1.0 + 1e-12);
        let neg = fourier_transform(&m, &[-xi[0], -xi[1]]);
        assert!((neg - f.conj()).norm() < 1e-12);
    }
}

#[test]
fn grid_density_transform_includes_cell_envelope() {
    let m = DiscreteMeasure::new(1, vec![0.0], vec![1.0]).unwrap();
    let grid = GridDensity::bin(&m, 0.25).unwrap();
    let xi = 1.7;
    let want = (PI * 0.25 * xi).sin() / (PI * 0.25 * xi);
    assert!((grid.fourier_transform(&[xi]) - Complex64::new(want, 0.0)).norm() < 1e-14);
    assert_eq!(grid.fourier_transform(&[0.0]), Complex64::new(1.0, 0.0));
}

#[test]
fn spherical_average_is_invariant_under_coordinate_swap() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let m = random_measure(&mut rng, 2);
        let swapped = m.map(|p| vec![p[1], p[0]]).unwrap();
        for t in [0.3, 2.0, 9.0] {
            let a = spherical_average(&m, t, 256).unwrap();
            let b = spherical_average(&swapped, t, 256).unwrap();
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
    let m = random_measure(&mut rng, 3);
    let turned = m.map(|p| vec![p[1], p[2], p[0]]).unwrap();
    for t in [0.5, 3.0] {
        let a = spherical_average(&m, t, 4096).unwrap();
        let b = spherical_average(&turned, t, 4096).unwrap();
        assert!((a - b).abs() < 1e-3 * a.max(1e-3), "{a} vs {b}");
    }
}

#[test]
fn sphere_node_validation() {
    assert!(sphere_nodes(2, 8).is_err());
    assert!(matches!(
        sphere_nodes(4, 64),
        Err(falconer_core::Error::UnsupportedDimension(4))
    ));
    for w in sphere_nodes(3, 100).unwrap() {
        assert!((w.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn mattila_integral_is_additive() {
    let m = DiscreteMeasure::cantor_product(2, 2).unwrap();
    let opts = MattilaOptions::default();
    let whole = mattila_integral(&m, 0.5, 12.0, &opts).unwrap();
    let left = mattila_integral(&m, 0.5, 5.0, &opts).unwrap();
    let right = mattila_integral(&m, 5.0, 12.0, &opts).unwrap();
    assert!((left + right - whole).abs() <= 1e-9 * whole, "{left} + {right} vs {whole}");
    let tight = MattilaOptions { budget: 4, ..MattilaOptions::default() };
    assert!(mattila_integral(&m, 0.5, 12.0, &tight).is_err());
    assert!(mattila_integral(&m, 2.0, 1.0, &opts).is_err());
}

#[test]
fn cantor_mattila_integral_outgrows_full_grid() {
    let opts = MattilaOptions::default();
    let growth = |m: &GridDensity| {
        let near = mattila_integral(m, 0.25, 4.0, &opts).unwrap();
        let far = mattila_integral(m, 0.25, 24.0, &opts).unwrap();
        far / near
    };
    let cantor = growth(&GridDensity::cantor_product(3, 2).unwrap());
    let full = growth(&GridDensity::bin(&DiscreteMeasure::full_grid(27, 2).unwrap(), 1.0 / 27.0).unwrap());
    // recorded: 1.41935 for the Cantor set, 1.00003 for the full grid
    assert!((cantor - 1.41935).abs() < 1e-4, "{cantor}");
    assert!(full < 1.0001, "{full}");
}

#[test]
fn two_point_energy_and_monotonicity_in_s() {
    let pair = DiscreteMeasure::uniform(2, vec![0.0, 0.0, 1.0, 0.0]).unwrap();
    for s in [0.5, 1.0, 1.5] {
        let e = energy_integral(&pair, s).unwrap();
        assert_eq!(e.value, 0.5);
        assert!(e.discrete_surrogate && !e.infinite);
    }
    assert_eq!(energy_integral(&DiscreteMeasure::delta(2).unwrap(), 1.0).unwrap().value, 0.0);
    let m = DiscreteMeasure::cantor_product(3, 2).unwrap();
    let vals: Vec<f64> = [0.2, 0.6, 1.0, 1.4, 1.8]
        .iter()
        .map(|&s| energy_integral(&m, s).unwrap().value)
        .collect();
    assert!(vals.windows(2).all(|w| w[0] < w[1]), "{vals:?}");
    assert!(energy_integral(&m, 2.0).is_err());
}

#[test]
fn cantor_energy_converges_geometrically() {
    // each refinement adds about 3^(s − dim) times the previous increment
    let s = 1.2;
    let dim = 2.0 * 2f64.ln() / 3f64.ln();
    let e: Vec<f64> = (3..=6)
        .map(|n| energy_integral(&DiscreteMeasure::cantor_product(n, 2).unwrap(), s).unwrap().value)
        .collect();
    let incr: Vec<f64> = e.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(incr.iter().all(|&x| x > 0.0));
    let ratio = 3f64.powf(s - dim);
    for w in incr.windows(2) {
        assert!((w[1] / w[0] - ratio).abs() < 0.01, "{incr:?}");
    }
    let limit = e[3] + incr[2] * ratio / (1.0 - ratio);
    assert!(limit.is_finite() && limit < 20.0, "{limit}");
}

#[test]
fn thresholds_identities() {
    for d in 1..=10usize {
        for k in 1..=d {
            let t = thresholds(k, d).unwrap();
            assert_eq!(t.t_kd - t.s_kd, Rational::new(1, k as i64 + 1));
            assert!(t.lower_bound <= t.t_kd);
        }
        let di = d as i64;
        let t = thresholds(d, d).unwrap();
        assert_eq!(t.t_kd, Rational::from_integer(di - 1) + Rational::new(2, di + 1));
        assert_eq!(t.s_kd, Rational::new(di * di, di + 1));
        if d >= 2 {
            let prior = Rational::from_integer(di) - Rational::new(1, 2) + Rational::new(1, 2 * di);
            assert!(t.t_kd < prior && t.s_kd < prior);
        }
    }
    let t = thresholds(2, 2).unwrap();
    assert_eq!(t.planar_special, Some(Rational::new(8, 5)));
}

#[test]
fn decay_reference_exponents() {
    assert_eq!(gamma_s(0.5, 2), None);
    assert!((gamma_s(1.5, 2).unwrap() - 0.75).abs() < 1e-15);
    assert!((gamma_s(1.0, 2).unwrap() - 0.5).abs() < 1e-15);
    let curve = SphericalAverageCurve {
        points: (0..8).map(|i| {
            let t = 2f64.powi(i);
            (t, 3.0 * t.powf(-0.8))
        }).collect(),
        nodes: 64,
    };
    let fit = decay_fit(&curve, 1.5, 2).unwrap();
    assert!((fit.slope + 0.8).abs() < 1e-12);
    assert!((fit.energy_reference + 0.5).abs() < 1e-15);
    assert!(fit.within_energy_bound);
}

#[test]
fn haar_samples_look_uniform() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let n = 2000;
    let mut angles = Vec::with_capacity(n);
    let mut reflections = 0;
    for _ in 0..n {
        let g = haar_sample_with(2, &mut rng).unwrap();
        let a = g.matrix();
        if g.determinant() < 0.0 {
            reflections += 1;
        }
        angles.push((a[(1, 0)].atan2(a[(0, 0)]) + 2.0 * PI) % (2.0 * PI) / (2.0 * PI));
    }
    angles.sort_by(f64::total_cmp);
    let ks = angles
        .iter()
        .enumerate()
        .map(|(i, &u)| ((i + 1) as f64 / n as f64 - u).abs().max((u - i as f64 / n as f64).abs()))
        .fold(0.0, f64::max);
    assert!(ks < 1.36 / (n as f64).sqrt(), "KS statistic {ks}");
    assert!((reflections as f64 / n as f64 - 0.5).abs() < 0.05);

    let d = 3;
    let mut mean = vec![0.0; d * d];
    let mut second = vec![0.0; d * d];
    for _ in 0..n {
        let g = haar_sample_with(d, &mut rng).unwrap();
        for (i, v) in g.matrix().iter().enumerate() {
            mean[i] += v / n as f64;
            second[i] += v * v / n as f64;
        }
    }
    assert!(mean.iter().all(|m| m.abs() < 0.05), "{mean:?}");
    assert!(second.iter().all(|s| (s - 1.0 / d as f64).abs() < 0.03), "{second:?}");
    assert!(haar_sample(1, 0).is_err());
    assert_eq!(haar_sample(3, 4).unwrap(), haar_sample(3, 4).unwrap());
}

#[test]
fn frostman_exponents() {
    let ap = DiscreteMeasure::uniform(2, (0..1000).flat_map(|i| [i as f64 / 1000.0, 0.0]).collect()).unwrap();
    let table = frostman_check(&ap, &[0.25, 0.125, 0.0625, 0.03125, 0.015625]).unwrap();
    assert!((table.exponent - 1.0).abs() < 0.02, "{table:?}");
    let cantor = DiscreteMeasure::cantor_product(4, 2).unwrap();
    let radii: Vec<f64> = (1..=4).map(|j| 3f64.powi(-j)).collect();
    let table = frostman_check(&cantor, &radii).unwrap();
    assert!((table.exponent - 2.0 * 2f64.ln() / 3f64.ln()).abs() < 0.15, "{table:?}");
    assert!(frostman_check(&cantor, &[0.1, 0.2]).is_err());
}

#[test]
fn cantor_annulus_energy_decays() {
    let s = 2.0 * 2f64.ln() / 3f64.ln();
    let m = GridDensity::cantor_product(4, 2).unwrap();
    let rs = [4.0, 8.0, 16.0, 32.0, 64.0];
    let vals: Vec<f64> = rs
        .iter()
        .map(|&r| annulus_energy(&m, r, AnnulusOptions { cells_per_width: (4.0 * r) as usize }).unwrap())
        .collect();
    let fit = log_log_fit(&rs, &vals).unwrap();
    assert!(fit.slope <= -s + 0.3, "{fit:?} {vals:?}");
    assert!(matches!(
        annulus_energy(&m, 4.0, AnnulusOptions { cells_per_width: 4 }),
        Err(falconer_core::Error::GridTooCoarse(_))
    ));
}

fn square(m: usize) -> DiscreteMeasure {
    DiscreteMeasure::full_grid(m, 2).unwrap()
}

#[test]
fn identity_slice_matches_direct_convolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h = 0.125;
    let cells: Vec<(i64, i64)> = (0..12).map(|_| (rng.random_range(0..6), rng.random_range(0..6))).collect();
    let mut uniq = cells.clone();
    uniq.sort();
    uniq.dedup();
    let raw: Vec<f64> = uniq.iter().map(|_| rng.random_range(0.2..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let w: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let pts: Vec<f64> = uniq.iter().flat_map(|&(x, y)| [x as f64 * h, y as f64 * h]).collect();
    let m = DiscreteMeasure::new(2, pts, w.clone()).unwrap();
    for k in 1..=3usize {
        let mut lag = std::collections::BTreeMap::new();
        for (i, a) in uniq.iter().enumerate() {
            for (j, b) in uniq.iter().enumerate() {
                *lag.entry((a.0 - b.0, a.1 - b.1)).or_insert(0.0) += w[i] * w[j];
            }
        }
        let want: f64 = lag.values().map(|c: &f64| (c / (h * h)).powi(k as i32 + 1) * h * h).sum();
        let opts = GroupEnergyOptions { h, ..GroupEnergyOptions::default() };
        let got = group_energy_at(&m, k, &OrthogonalTransform::identity(2), &opts).unwrap();
        assert!((got - want).abs() <= 1e-9 * want, "k={k}: {got} vs {want}");
    }
}

#[test]
fn group_energy_of_point_mass_is_single_cell() {
    let opts = GroupEnergyOptions { h: 0.5, samples: 4, ..GroupEnergyOptions::default() };
    let e = group_energy(&DiscreteMeasure::delta(2).unwrap(), 1, &opts).unwrap();
    assert!((e.value - 4.0).abs() < 1e-9, "{e:?}");
}

#[test]
fn group_energy_estimators() {
    let m = square(16);
    let opts = GroupEnergyOptions { h: 1.0 / 16.0, samples: 64, seed: 11, ..GroupEnergyOptions::default() };
    let plain = group_energy(&m, 1, &opts).unwrap();
    let degenerate = group_energy_similarity(&m, 1, (1.0, 1.0), &opts).unwrap();
    assert_eq!(plain, degenerate);
    assert_eq!(plain, group_energy(&m, 1, &opts).unwrap());
    assert_ne!(plain.value, group_energy(&m, 1, &GroupEnergyOptions { seed: 12, ..opts.clone() }).unwrap().value);

    let few = group_energy_similarity(&m, 1, (0.5, 2.0), &opts).unwrap();
    let many = group_energy_similarity(&m, 1, (0.5, 2.0), &GroupEnergyOptions { samples: 128, ..opts.clone() }).unwrap();
    assert!((few.value - many.value).abs() <= 0.1 * many.value, "{few:?} vs {many:?}");

    assert!(group_energy(&m, 0, &opts).is_err());
    assert!(group_energy(&m, 1, &GroupEnergyOptions { samples: 1, ..opts.clone() }).is_err());
    assert!(matches!(
        group_energy(&m, 1, &GroupEnergyOptions { h: 0.5, ..opts.clone() }),
        Err(falconer_core::Error::GridTooCoarse(_))
    ));
    assert!(matches!(
        group_energy(&m, 1, &GroupEnergyOptions { cell_budget: 16, ..opts.clone() }),
        Err(falconer_core::Error::BudgetExceeded { .. })
    ));
    assert!(group_energy_similarity(&m, 1, (2.0, 1.0), &opts).is_err());
}
