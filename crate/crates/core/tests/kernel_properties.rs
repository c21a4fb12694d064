use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rkhs_vp::kernels::{
    sobolev_inner_product, tensor_kernel_deriv, InnerProductSpec, Interval, KernelSection,
    PiecewisePolyKernel1D, Smooth1D, TensorKernel2D, TensorOrders,
};
use rkhs_vp::solver::{collocation_points, BasisSystem, TemporalKernel};

fn min_eigenvalue(points: &[f64], k: &PiecewisePolyKernel1D) -> f64 {
    let g = DMatrix::from_fn(points.len(), points.len(), |i, j| {
        0.5 * (k.eval(points[i], points[j]) + k.eval(points[j], points[i]))
    });
    SymmetricEigen::new(g).eigenvalues.min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn w3_symmetric(s in 0.0f64..=1.0, z in 0.0f64..=1.0) {
        let k = PiecewisePolyKernel1D::w3_constrained();
        prop_assert!((k.eval(s, z) - k.eval(z, s)).abs() <= 1e-12);
    }

    #[test]
    fn w3_mixed_derivatives_swap(s in 0.0f64..=1.0, z in 0.0f64..=1.0, ds in 0usize..=3, dz in 0usize..=3) {
        let k = PiecewisePolyKernel1D::w3_constrained();
        let scale = 1.0 + k.eval_deriv(s, z, ds, dz).abs();
        prop_assert!((k.eval_deriv(s, z, ds, dz) - k.eval_deriv(z, s, dz, ds)).abs() <= 1e-11 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gram_matrices_are_psd(points in proptest::collection::vec(0.0f64..=1.0, 1..20)) {
        for k in [
            PiecewisePolyKernel1D::w3_constrained(),
            PiecewisePolyKernel1D::w1(),
            PiecewisePolyKernel1D::w1_homogeneous(),
        ] {
            prop_assert!(min_eigenvalue(&points, &k) >= -1e-10);
        }
    }

    #[test]
    fn w3_vanishes_on_boundary(z in 0.0f64..=1.0) {
        let k = PiecewisePolyKernel1D::w3_constrained();
        prop_assert!(k.eval(0.0, z).abs() <= 1e-15);
        prop_assert!(k.eval(1.0, z).abs() <= 1e-15);
    }

    #[test]
    fn tensor_kernel_is_a_product(nu in 0.0f64..=1.0, t in 0.0f64..=1.0, z in 0.0f64..=1.0, u in 0.0f64..=1.0) {
        let k = TensorKernel2D::w31_homogeneous();
        let v = tensor_kernel_deriv(&k, (nu, t), (z, u), TensorOrders::default()).unwrap();
        prop_assert_eq!(v, k.spatial.eval(nu, z) * t.min(u));
    }
}

#[test]
fn tensor_derivative_limits() {
    let k = TensorKernel2D::w31_homogeneous();
    let o = TensorOrders {
        d_nu: 4,
        ..Default::default()
    };
    assert!(tensor_kernel_deriv(&k, (0.5, 0.5), (0.5, 0.5), o).is_err());
    let o = TensorOrders {
        d_u: 2,
        ..Default::default()
    };
    assert!(tensor_kernel_deriv(&k, (0.5, 0.5), (0.5, 0.5), o).is_err());
    assert!(tensor_kernel_deriv(&k, (1.5, 0.5), (0.5, 0.5), TensorOrders::default()).is_err());
}

/// `∫₀¹ 1{s<a} 1{s<b} ds`, the inner product of `min(·,a)` and `min(·,b)`
/// under `f(0)g(0) + ∫ f′g′`.
fn min_sections_product(a: f64, b: f64) -> f64 {
    a.min(b)
}

#[test]
fn gram_matches_quadrature_of_trial_functions() {
    let n = 4;
    let set = collocation_points(n, Interval::unit(), Interval::unit()).unwrap();
    let basis = BasisSystem::new(
        set.clone(),
        Interval::unit(),
        Interval::unit(),
        TemporalKernel::Homogeneous,
    )
    .unwrap();
    let k = PiecewisePolyKernel1D::w3_constrained();
    let spec = InnerProductSpec::new(3);
    for (i, &(zi, ti)) in set.points.iter().enumerate() {
        for (j, &(zj, tj)) in set.points.iter().enumerate() {
            let a = KernelSection {
                kernel: &k,
                z: zi,
                dz: 2,
            };
            let b = KernelSection {
                kernel: &k,
                z: zj,
                dz: 2,
            };
            let spatial = sobolev_inner_product(&a, &b, &spec, Interval::unit()).unwrap();
            let oracle = spatial * min_sections_product(ti, tj);
            let g = basis.gram[(i, j)];
            assert!(
                (g - oracle).abs() <= 1e-9 * (1.0 + g.abs()),
                "G[{i},{j}] = {g}, quadrature {oracle}"
            );
        }
    }
}

#[test]
fn tensor_kernel_reproduces_separable_functions() {
    // ⟨f⊗g, K(·,(z,u))⟩ = ⟨f, R³_z⟩·⟨g, min(·,u)⟩ for f(0)=f(1)=0, g(0)=0
    let k = PiecewisePolyKernel1D::w3_constrained();
    let kt = PiecewisePolyKernel1D::w1_homogeneous();
    let f = |s: f64, d: usize| match d {
        0 => s * (1.0 - s) * (1.0 + s),
        1 => 1.0 - 3.0 * s * s,
        2 => -6.0 * s,
        3 => -6.0,
        _ => 0.0,
    };
    let g = |t: f64, d: usize| match d {
        0 => t.sin(),
        1 => t.cos(),
        _ => unreachable!(),
    };
    for &(z, u) in &[(0.2, 0.3), (0.5, 0.9), (0.85, 0.1)] {
        let fs = sobolev_inner_product(
            &f,
            &KernelSection {
                kernel: &k,
                z,
                dz: 0,
            },
            &InnerProductSpec::new(3),
            Interval::unit(),
        )
        .unwrap();
        let gs = sobolev_inner_product(
            &g,
            &KernelSection {
                kernel: &kt,
                z: u,
                dz: 0,
            },
            &InnerProductSpec::new(1),
            Interval::unit(),
        )
        .unwrap();
        assert!((fs * gs - f.value(z) * g.value(u)).abs() < 1e-10);
    }
}

#[test]
fn perturbed_kernel_breaks_reproduction() {
    let k = PiecewisePolyKernel1D::w3_constrained().with_perturbed_coefficient(2, 2, 7);
    let f = |s: f64, d: usize| match d {
        0 => s - s * s,
        1 => 1.0 - 2.0 * s,
        2 => -2.0,
        _ => 0.0,
    };
    let ip = sobolev_inner_product(
        &f,
        &KernelSection {
            kernel: &k,
            z: 0.5,
            dz: 0,
        },
        &InnerProductSpec::new(3),
        Interval::unit(),
    )
    .unwrap();
    assert!((ip - 0.25).abs() > 1e-6);
}
