use num_complex::Complex64;
use proptest::prelude::*;
use rabikit_specfun::{hermite_h, kummer_1f1};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn param() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(r, i)| c(r, i))
}

fn lower_param() -> impl Strategy<Value = Complex64> {
    (0.2..4.0f64, -3.0..3.0f64).prop_map(|(r, i)| c(r, i))
}

fn arg(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn kummer_transformation(a in param(), b in lower_param(), z in arg(20.0)) {
        let lhs = kummer_1f1(a, b, z).unwrap().value;
        let rhs = z.exp() * kummer_1f1(b - a, b, -z).unwrap().value;
        prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm()), "{lhs} vs {rhs}");
    }

    #[test]
    fn contiguous_relation(a in param(), b in lower_param(), z in arg(20.0)) {
        let m = kummer_1f1(a, b, z).unwrap().value;
        let m_am = kummer_1f1(a - 1.0, b, z).unwrap().value;
        let m_bp = kummer_1f1(a, b + 1.0, z).unwrap().value;
        let t = [b * m, b * m_am, z * m_bp];
        let resid = t[0] - t[1] - t[2];
        let scale: f64 = t.iter().map(|x| x.norm()).sum();
        prop_assert!(resid.norm() <= 1e-8 * scale, "residual {resid:e} scale {scale:e}");
    }

    #[test]
    fn exponential_identity(z in arg(40.0)) {
        let m = kummer_1f1(c(1.0, 0.0), c(1.0, 0.0), z).unwrap().value;
        prop_assert!((m - z.exp()).norm() <= 1e-10 * z.exp().norm());
    }

    #[test]
    fn hermite_recurrence(a in param(), z in arg(3.0)) {
        let h = hermite_h(a, z).unwrap().value;
        let hp = hermite_h(a + 1.0, z).unwrap().value;
        let hm = hermite_h(a - 1.0, z).unwrap().value;
        let rhs = 2.0 * z * h - 2.0 * a * hm;
        let scale = hp.norm() + (2.0 * z * h).norm() + (2.0 * a * hm).norm();
        prop_assert!((hp - rhs).norm() <= 1e-8 * scale, "{hp} vs {rhs}");
    }

    #[test]
    fn estimate_is_nonnegative(a in param(), b in lower_param(), z in arg(60.0)) {
        if let Ok(r) = kummer_1f1(a, b, z) {
            prop_assert!(r.est_error >= 0.0);
        }
    }
}

#[test]
fn integer_degree_agreement() {
    for n in 0..=20usize {
        for i in 0..=40 {
            let x = -5.0 + 0.25 * i as f64;
            let mut h0 = 1.0f64;
            let mut h1 = 2.0 * x;
            let exact = if n == 0 {
                h0
            } else {
                for k in 1..n {
                    let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
                    h0 = h1;
                    h1 = h2;
                }
                h1
            };
            let got = hermite_h(c(n as f64, 0.0), c(x, 0.0)).unwrap().value;
            assert!((got.re - exact).abs() <= 1e-12 * exact.abs().max(1.0), "H_{n}({x})");
            assert_eq!(got.im, 0.0);
        }
    }
}
