//! Worked values checked through the public API, each against an oracle
//! computed here (quadrature, Monte Carlo or a direct formula).

mod common;

use std::f64::consts::{PI, SQRT_2};

use common::{oracle_g, DiffTable, Law};
use uembed::embedder::{embedding_distance, post_quantize, DistanceMetric, EmbeddingOperator};
use uembed::maps::{make_fourier_mixture, make_multibit, make_sawtooth, make_square_wave, quantize_map, PeriodicMap};
use uembed::randproj::{projected_diff_samples, Family, ProjectionSpec, RandomState, Stream};
use uembed::theory::{
    ambiguity, check_subadditivity, continuous_extension_bound, discontinuous_extension_bound, invert_map,
    linear_saturation_radius, multibit_map, p2_bound, pair_grid, pointcloud_bound, quantized_bound_inflation,
    rate_form, scalar_quantizer_eq, universal_binary_map, universal_binary_map_l1, ContinuousExtension,
    DiscontinuousExtension, DistanceMapModel, InversionStatus, LinearMap, PointCloudFlavor,
};

/// `int_0^1 f` by the midpoint rule.
fn quad(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    (0..n).map(|j| f((j as f64 + 0.5) / n as f64)).sum::<f64>() / n as f64
}

/// `|int_0^1 f(t) e^{-2 pi i k t} dt|^2` by the midpoint rule.
fn coeff_sq(f: impl Fn(f64) -> f64, k: usize, n: usize) -> f64 {
    let w = 2.0 * PI * k as f64;
    let re = quad(|t| f(t) * (w * t).cos(), n);
    let im = quad(|t| f(t) * (w * t).sin(), n);
    re * re + im * im
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn square_wave_spectrum() {
    let sq = make_square_wave();
    let p = sq.power_coeffs(1e-6).unwrap();
    assert!(close(p.get(1), 1.0 / (PI * PI), 1e-15));
    assert!(p.get(2) < 1e-18);
    assert!(close(p.get(3), coeff_sq(common::square, 3, 1 << 16), 1e-10));
    assert!(close(p.get(0), 0.25, 1e-15));
    assert_eq!(sq.range(), 1.0);
    assert_eq!(p.kmax(), (1.0 / (PI * PI * 1e-6)).ceil() as usize);
    // two-sided tail: 2 sum over odd k > K of 1/(pi k)^2, the sum closed by its integral
    let k0 = p.kmax() + 1 + p.kmax() % 2;
    let direct: f64 = (0..2_000_000).map(|i| 2.0 / (PI * (k0 + 2 * i) as f64).powi(2)).sum();
    let rest = 1.0 / (PI * PI * (k0 + 4_000_000) as f64);
    assert!(direct + rest <= 1e-6);
}

#[test]
fn sawtooth_spectrum_and_power() {
    let saw = make_sawtooth();
    let p = saw.power_coeffs(1e-6).unwrap();
    assert!(close(p.pair_power(1), 1.0 / (PI * PI), 1e-15));
    assert!(close(p.get(2), coeff_sq(common::sawtooth, 2, 1 << 16), 1e-9));
    let parseval = quad(|t| common::sawtooth(t).powi(2), 1 << 20);
    assert!(close(saw.mean_square(), parseval, 1e-10));
    assert!(close(saw.mean_square(), 1.0 / 6.0, 1e-15));
    assert!(close(saw.range(), SQRT_2, 1e-15));
    let model = DistanceMapModel::new(saw, ProjectionSpec::gaussian(1.0).unwrap()).unwrap();
    assert!(close(model.saturation(), 1.0 / 3.0, 1e-15));
    assert!(close(model.g(50.0), 1.0 / 3.0, 1e-12));
}

#[test]
fn one_bit_multibit_is_affine_square_wave() {
    let mb = make_multibit(1).unwrap();
    let a = mb.range();
    for i in 0..1000 {
        let t = (i as f64 + 0.5) / 1000.0;
        assert!(close(mb.value(t), a / 2.0 - a * common::square(t), 1e-15));
    }
    let spec = ProjectionSpec::gaussian(0.7).unwrap();
    let gm = DistanceMapModel::new(mb, spec).unwrap();
    let gs = DistanceMapModel::new(make_square_wave(), spec).unwrap();
    for d in [0.1, 0.4, 1.0, 2.5] {
        assert!(close(gm.g(d), a * a * gs.g(d), 1e-9));
    }
}

#[test]
fn multibit_levels_and_worst_error() {
    let b2 = make_multibit(2).unwrap();
    let mut levels: Vec<f64> = (0..4096).map(|i| b2.value(i as f64 / 4096.0)).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    assert_eq!(levels.len(), 4);

    let b4 = make_multibit(4).unwrap();
    let n = 1 << 16;
    let worst = (0..n)
        .map(|i| {
            let t = i as f64 / n as f64;
            (b4.value(t) - common::sawtooth(t)).abs()
        })
        .fold(0.0, f64::max);
    let hbar = make_sawtooth().range();
    assert!(worst <= hbar * 2f64.powi(-5) + 1e-12);
    assert!(worst >= hbar * 2f64.powi(-5) * (1.0 - 1e-3));
}

#[test]
fn mixture_power_and_support() {
    let m: PeriodicMap = make_fourier_mixture(&[(1, 0.5f64.sqrt()), (10, 0.5f64.sqrt())]).unwrap();
    let power = quad(|t| common::mixture(t).powi(2), 1 << 16);
    assert!(close(m.mean_square(), power, 1e-12));
    assert!(close(m.mean_square(), 0.5, 1e-15));
    assert_eq!(m.power_coeffs(1e-9).unwrap().support(1e-12), vec![1, 10]);
    assert_eq!(
        make_fourier_mixture(&[(1, 1.0)])
            .unwrap()
            .power_coeffs(1e-9)
            .unwrap()
            .support(1e-12),
        vec![1]
    );
    assert!(make_fourier_mixture(&[]).is_err());
}

#[test]
fn quantized_mixture_spectrum() {
    let inner = make_fourier_mixture(&[(1, 0.5f64.sqrt()), (10, 0.5f64.sqrt())]).unwrap();
    let q = quantize_map(&inner, 1).unwrap();
    let (lo, r) = (inner.inf(), inner.range());
    let manual = move |t: f64| {
        let v = common::mixture(t);
        let cell = ((v - lo) / (r / 2.0)).floor().clamp(0.0, 1.0);
        lo + (cell + 0.5) * r / 2.0
    };
    for i in 0..500 {
        let t = (i as f64 + 0.25) / 500.0;
        assert!(close(q.value(t), manual(t), 1e-12));
    }
    let p = q.coefficient_table(16);
    for k in [1, 3, 10] {
        assert!(close(p[k], coeff_sq(manual, k, 1 << 20), 1e-5), "k = {k}");
    }
}

#[test]
fn quantized_sawtooth_matches_multibit() {
    for bits in [1, 2, 3] {
        let q = quantize_map(&make_sawtooth(), bits).unwrap();
        let mb = make_multibit(bits).unwrap();
        for i in 0..997 {
            let t = (i as f64 + 0.5) / 997.0;
            assert!(close(q.value(t), mb.value(t), 1e-12));
            assert!((q.value(t) - common::sawtooth(t)).abs() <= SQRT_2 / (2f64.powi(bits as i32 + 1)) + 1e-12);
        }
    }
}

#[test]
fn map_values() {
    let sq = make_square_wave();
    assert_eq!(sq.eval(0.25).unwrap(), 1.0);
    assert_eq!(sq.eval(0.75).unwrap(), 0.0);
    assert_eq!(sq.eval(3.25).unwrap(), 1.0);
    assert!(close(make_sawtooth().eval(0.0).unwrap(), -SQRT_2 / 2.0, 1e-15));
    assert!(sq.eval(f64::NAN).is_err());
}

#[test]
fn gaussian_entries_have_unit_moments() {
    let spec = ProjectionSpec::gaussian(1.0).unwrap();
    let rs = RandomState::new(11, Stream::Matrix);
    let n = 1_000_000;
    let x: Vec<f64> = (0..n as u64).map(|i| spec.draw(&rs, i)).collect();
    let mean = x.iter().sum::<f64>() / n as f64;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
    assert!(mean.abs() < 4.0 / (n as f64).sqrt());
    assert!((var - 1.0).abs() < 0.05);
}

#[test]
fn cauchy_entries_have_unit_median_magnitude() {
    let spec = ProjectionSpec::cauchy(1.0).unwrap();
    let rs = RandomState::new(12, Stream::Matrix);
    let mut x: Vec<f64> = (0..200_001u64).map(|i| spec.draw(&rs, i).abs()).collect();
    x.sort_by(f64::total_cmp);
    assert!((x[100_000] - 1.0).abs() < 0.05);
}

#[test]
fn dither_is_uniform() {
    let rs = RandomState::new(13, Stream::Dither);
    let w = uembed::randproj::sample_dither(100_000, &rs).unwrap();
    assert!(w.iter().all(|&v| (0.0..1.0).contains(&v)));
    let mean = w.iter().sum::<f64>() / w.len() as f64;
    assert!((mean - 0.5).abs() < 0.005);
}

#[test]
fn characteristic_functions() {
    let g = ProjectionSpec::gaussian(1.0).unwrap();
    assert_eq!(g.char_fn(3.0, 0.0).unwrap(), 1.0);
    assert!(close(g.char_fn(1.0, 1.0).unwrap(), (-0.5f64).exp(), 1e-15));
    let rs = RandomState::new(14, Stream::MonteCarlo);
    let l = projected_diff_samples(&g, 1.0, 1_000_000, &rs).unwrap();
    let mc = l.iter().map(|v| v.cos()).sum::<f64>() / l.len() as f64;
    assert!((mc - (-0.5f64).exp()).abs() < 0.003);

    let c = ProjectionSpec::cauchy(1.0).unwrap();
    assert!(close(c.char_fn(2.0 * PI, 1.0).unwrap(), (-2.0 * PI).exp(), 1e-15));
    let l = projected_diff_samples(&c, 1.0, 1_000_000, &rs.derive(1)).unwrap();
    let mc = l.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / l.len() as f64;
    assert!((mc - (-2.0 * PI).exp()).abs() < 0.01);
    assert!(projected_diff_samples(&c, 0.0, 10, &rs)
        .unwrap()
        .iter()
        .all(|&v| v == 0.0));
}

#[test]
fn universal_scale_mapping() {
    let b = ProjectionSpec::universal(Family::Gaussian, 1.0, 1.0, 1).unwrap();
    assert_eq!(b.scale(), 0.5);
    let m2 = ProjectionSpec::universal(Family::Gaussian, 1.0, 1.0, 2).unwrap();
    let m0 = ProjectionSpec::universal(Family::Gaussian, 1.0, 1.0, 0).unwrap();
    assert_eq!(m2.scale() / m0.scale(), 0.25);

    // The empirical Hamming curve of the binary embedding lands on the
    // closed-form universal curve at sigma = Delta = 1.
    let (n, m) = (64, 4000);
    let op = EmbeddingOperator::build(b, make_square_wave(), m, n, 5).unwrap();
    let rs = RandomState::new(6, Stream::Label(0));
    for (i, d) in [0.2, 0.6, 1.2].into_iter().enumerate() {
        let x: Vec<f64> = (0..n as u64)
            .map(|j| rs.gaussian(2 * (i as u64) * n as u64 + j))
            .collect();
        let u: Vec<f64> = (0..n as u64)
            .map(|j| rs.derive(1).gaussian(i as u64 * n as u64 + j))
            .collect();
        let un = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        let x2: Vec<f64> = x.iter().zip(&u).map(|(a, v)| a + d * v / un).collect();
        let h = embedding_distance(
            &op.embed(&x).unwrap(),
            &op.embed(&x2).unwrap(),
            DistanceMetric::HammingMean,
        )
        .unwrap();
        let g = universal_binary_map(d, 1.0, 1.0).unwrap().g;
        assert!((h - g).abs() < 5.0 * (0.25 / m as f64).sqrt(), "d = {d}: {h} vs {g}");
    }
}

#[test]
fn distance_maps_against_quadrature() {
    let sq = DiffTable::new(common::square, 1 << 10, 1 << 14);
    let saw = DiffTable::new(common::sawtooth, 1 << 10, 1 << 14);
    let g = ProjectionSpec::gaussian(0.5).unwrap();
    let c = ProjectionSpec::cauchy(0.5).unwrap();
    for d in [0.05, 0.3, 1.0, 2.0] {
        let ms = DistanceMapModel::new(make_square_wave(), g).unwrap();
        assert!(close(ms.g(d), oracle_g(&sq, Law::Gaussian, 0.5 * d), 1e-4));
        let mw = DistanceMapModel::new(make_sawtooth(), c).unwrap();
        assert!(close(mw.g(d), oracle_g(&saw, Law::Cauchy, 0.5 * d), 1e-4));
    }
}

#[test]
fn square_wave_saturates_at_one_half() {
    let model = DistanceMapModel::new(make_square_wave(), ProjectionSpec::gaussian(1.0).unwrap()).unwrap();
    assert_eq!(model.g(0.0), 0.0);
    assert!(close(model.g(3.0), 0.5, 1e-9));
    assert!(close(model.kernel(0.0), model.total_power(), 1e-12));
    assert!(close(model.kernel(40.0), 0.25, 1e-12));
    for d in [0.1, 0.5, 2.0] {
        assert!(close(model.g(d), 2.0 * (model.kernel(0.0) - model.kernel(d)), 1e-12));
    }
}

#[test]
fn binary_universal_bounds() {
    let r = universal_binary_map(0.0, 1.0, 1.0).unwrap();
    assert_eq!((r.g, r.lower, r.upper_lin), (0.0, 0.0, 0.0));
    assert!(close(r.upper_exp, 0.5 - 4.0 / (PI * PI), 1e-15));
    for i in 1..60 {
        let d = i as f64 * 0.05;
        let r = universal_binary_map(d, 1.0, 1.0).unwrap();
        assert!(r.lower <= r.g * (1.0 + 1e-12));
        assert!(r.g <= r.upper_exp.min(r.upper_lin) * (1.0 + 1e-12));
    }
    assert!(close(linear_saturation_radius(1.0, 1.0), (PI / 8.0).sqrt(), 1e-15));
    assert!(close(linear_saturation_radius(1.0, 1.0), 0.6267, 1e-4));
}

#[test]
fn l1_binary_map_agrees_with_generic_model() {
    let spec = ProjectionSpec::universal(Family::Cauchy, 1.0, 1.0, 1).unwrap();
    let model = DistanceMapModel::new(make_square_wave(), spec).unwrap();
    assert_eq!(universal_binary_map_l1(0.0, 1.0, 1.0).unwrap(), 0.0);
    assert!(close(universal_binary_map_l1(1e4, 1.0, 1.0).unwrap(), 0.5, 1e-4));
    for d in [0.1, 0.5, 1.0, 3.0] {
        assert!(close(universal_binary_map_l1(d, 1.0, 1.0).unwrap(), model.g(d), 1e-9));
    }
}

#[test]
fn multibit_curve() {
    assert_eq!(multibit_map(0.0, Family::Gaussian, 1.0, 4, 1.0).unwrap(), 0.0);
    assert!(close(
        multibit_map(1e3, Family::Gaussian, 1.0, 4, 1.0).unwrap(),
        1.0 / 3.0,
        1e-12
    ));
    let spec = ProjectionSpec::universal(Family::Gaussian, 1.0, 1.0, 4).unwrap();
    let saw = DistanceMapModel::new(make_sawtooth(), spec).unwrap();
    let b4 = DistanceMapModel::new(make_multibit(4).unwrap(), spec).unwrap();
    for d in [1.0, 4.0, 8.0] {
        assert!(close(
            multibit_map(d, Family::Gaussian, 1.0, 4, 1.0).unwrap(),
            saw.g(d),
            1e-9
        ));
        assert!((b4.g(d) - saw.g(d)).abs() < 0.01);
    }
}

#[test]
fn inversion_and_ambiguity() {
    let model = DistanceMapModel::new(make_square_wave(), ProjectionSpec::gaussian(1.0).unwrap()).unwrap();
    let d = model.d0() / 2.0;
    let inv = invert_map(&model, model.g(d)).unwrap();
    assert_eq!(inv.status, InversionStatus::Unique);
    assert!(close(inv.estimate, d, 1e-8));
    assert_eq!(
        invert_map(&model, model.saturation()).unwrap().status,
        InversionStatus::Saturated
    );
    assert_eq!(invert_map(&model, 0.0).unwrap().estimate, 0.0);

    let id = LinearMap { slope: 1.0 };
    assert!(close(ambiguity(&id, 0.5, 0.1, 0.0).unwrap(), 0.1, 1e-12));
    assert_eq!(ambiguity(&model, 0.1, 0.0, 0.0).unwrap(), 0.0);

    // in the linear region the slope is sqrt(2/pi) sigma / Delta at the binary scale
    let (sigma, delta) = (1.0, 1.0);
    let spec = ProjectionSpec::universal(Family::Gaussian, sigma, delta, 1).unwrap();
    let bin = DistanceMapModel::new(make_square_wave(), spec).unwrap();
    let dw = bin.g(0.01);
    let amb = ambiguity(&bin, dw, 1e-3, 0.0).unwrap();
    let expected = 1e-3 * delta / (sigma * (2.0 / PI).sqrt());
    assert!((amb / expected - 1.0).abs() < 0.01);
}

#[test]
fn subadditivity_examples() {
    let grid = pair_grid(2.0, 21);
    assert!(check_subadditivity(|d| d, 0.0, 0.0, &grid).pass);
    let sq = check_subadditivity(|d| d * d, 0.0, 0.0, &grid);
    assert!(!sq.pass);
    // worst excess of (a + b)^2 over a^2 + b^2 is 2ab, largest at the corner
    assert!(close(sq.worst, 8.0, 1e-12));
    assert_eq!(sq.at, (2.0, 2.0));
    let unit = check_subadditivity(|d| d * d, 0.0, 0.0, &[(1.0, 1.0)]);
    assert!(close(unit.worst, 2.0, 1e-15));
    let model = DistanceMapModel::new(make_square_wave(), ProjectionSpec::gaussian(1.0).unwrap()).unwrap();
    assert!(check_subadditivity(|d| model.g_sqrt(d), 0.0, 0.0, &pair_grid(3.0, 31)).pass);
}

#[test]
fn pointcloud_examples() {
    let r = pointcloud_bound(2, 1000, 0.1, 1.0, PointCloudFlavor::SqL2).unwrap();
    let direct = (2.0 * 2f64.ln() - 2.0 * 1000.0 * 0.01).exp();
    assert!(close(r.probability, direct, 1e-20));
    assert!((r.probability / 8.3e-9 - 1.0).abs() < 0.02);
    let k = pointcloud_bound(2, 1000, 0.1, 1.0, PointCloudFlavor::Kernel).unwrap();
    let sq_exp = (r.raw / 4.0).ln();
    let k_exp = (k.raw / 4.0).ln();
    assert!(close(k_exp / sq_exp, 4.0 / 9.0, 1e-12));
    assert!(
        pointcloud_bound(1000, 10, 0.1, 1.0, PointCloudFlavor::SqL2)
            .unwrap()
            .vacuous
    );
}

#[test]
fn extension_examples() {
    let base = ContinuousExtension {
        entropy: 10.0,
        m: 1e4,
        w: 0.02,
        c: 1.0,
        eps: 0.05,
        delta: 0.0,
        k_f: 1.0,
        k_g: 1.0,
        alpha: 0.4,
    };
    let r = continuous_extension_bound(&base).unwrap();
    assert!(close(r.param("r").unwrap(), 0.1, 1e-15));
    assert!(close(r.raw, (-180.0f64).exp(), 1e-90));
    assert!(close(r.param("eps_total").unwrap(), 0.45, 1e-15));
    let small = continuous_extension_bound(&ContinuousExtension { m: 999.0, ..base }).unwrap();
    assert!(small.vacuous);

    let d = DiscontinuousExtension {
        entropy_half: 2f64.ln(),
        m: 100.0,
        w: 0.5,
        c: 1.0,
        p_t: vec![1.0],
        t_max: 2,
        p_f: 0.0,
        c0: 0.1,
    };
    let r = discontinuous_extension_bound(&d).unwrap();
    assert!(close(r.param("c1").unwrap(), 1.1 * 2f64.ln(), 1e-15));
    assert!(close(r.param("c1").unwrap(), 0.7625, 1e-4));
    let none = discontinuous_extension_bound(&DiscontinuousExtension {
        p_t: vec![0.0],
        ..d.clone()
    })
    .unwrap();
    assert_eq!(none.param("c1").unwrap(), 0.0);
    let fail = discontinuous_extension_bound(&DiscontinuousExtension { p_f: 1.0, ..d }).unwrap();
    assert!(fail.vacuous);
}

#[test]
fn quantization_inflation_examples() {
    assert_eq!(quantized_bound_inflation(0.2, 0.0).unwrap(), 0.2);
    let eq = scalar_quantizer_eq(100, 0.01).unwrap();
    assert!(close(eq, 10.0 * 0.01 / 2.0, 1e-15));
    assert!(close(
        quantized_bound_inflation(0.2, eq).unwrap() - 0.2,
        (100f64).sqrt() * 0.01,
        1e-15
    ));
    assert!(close(rate_form(0.1, 200.0, 100, 1.0).unwrap(), 0.1 + 0.5 * 10.0, 1e-12));
    assert!(rate_form(0.1, 50.0, 100, 1.0).is_err());
}

#[test]
fn post_quantization_error() {
    let op = EmbeddingOperator::build(ProjectionSpec::gaussian(1.0).unwrap(), make_sawtooth(), 500, 20, 3).unwrap();
    let x: Vec<f64> = (0..20).map(|i| (i as f64 * 0.37).sin()).collect();
    let y = op.embed(&x).unwrap();
    let s = make_sawtooth().sup();
    for bits in [1, 3, 8] {
        let q = post_quantize(&y, bits, s).unwrap();
        let step = 2f64.powi(-(bits as i32)) * s;
        let mut sq = 0.0;
        for (a, b) in y.values.iter().zip(&q.vector.values) {
            assert!((a - b).abs() <= step + 1e-15);
            sq += (a - b) * (a - b);
        }
        assert!(sq.sqrt() <= (500f64).sqrt() * step);
    }
    let fine = post_quantize(&y, 40, s).unwrap();
    assert!(y
        .values
        .iter()
        .zip(&fine.vector.values)
        .all(|(a, b)| (a - b).abs() < 1e-6));
}

#[test]
fn boundary_crossing_example() {
    let b = p2_bound(100, 1.0, 0.1, 10.0).unwrap();
    let direct = 0.1 * 101f64.sqrt() / 10.0 + (-(10.0f64 / 1.0 - 1.0).powi(2) * 100.0 / 6.0).exp();
    assert!(close(b.value, direct, 1e-15));
    assert!(close(b.value, 0.1005, 1e-4));
    assert!(b.meaningful);
    assert!(p2_bound(100, 1.0, 1e-12, 10.0).unwrap().value < 1e-11);
}
