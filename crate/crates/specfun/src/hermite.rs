use std::f64::consts::PI;

use num_complex::Complex64;

use crate::gamma::recip_gamma;
use crate::kummer::kummer_1f1;
use crate::{is_finite, Method, SpecFunError, SpecFunResult};

fn polynomial(n: usize, z: Complex64) -> SpecFunResult {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return SpecFunResult { value: prev, est_error: 0.0, method: Method::Polynomial };
    }
    let mut cur = 2.0 * z;
    let mut peak = cur.norm().max(1.0);
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        peak = peak.max(cur.norm());
    }
    let est_error = f64::EPSILON * n as f64 * peak;
    SpecFunResult { value: cur, est_error, method: Method::Polynomial }
}

fn rank(m: Method) -> u8 {
    match m {
        Method::Polynomial => 0,
        Method::Series => 1,
        Method::KummerTransformed => 2,
        Method::Asymptotic => 3,
        Method::Continuation => 4,
    }
}

/// Hermite function H(a, z) of complex degree `a`.
///
/// Non-negative integer degrees use the three-term recurrence; all others the
/// ₁F₁ representation
/// `2^a √π [M(−a/2, ½, z²)/Γ((1−a)/2) − 2z M((1−a)/2, 3/2, z²)/Γ(−a/2)]`.
pub fn hermite_h(a: Complex64, z: Complex64) -> Result<SpecFunResult, SpecFunError> {
    if !is_finite(a) || !is_finite(z) {
        return Err(SpecFunError::NonFinite);
    }
    if a.im == 0.0 && a.re >= 0.0 && a.re == a.re.round() && a.re <= 10_000.0 {
        return Ok(polynomial(a.re as usize, z));
    }
    let z2 = z * z;
    let half = Complex64::new(0.5, 0.0);
    let m1 = kummer_1f1(-a / 2.0, half, z2)?;
    let m2 = kummer_1f1((1.0 - a) / 2.0, Complex64::new(1.5, 0.0), z2)?;
    let r1 = recip_gamma((1.0 - a) / 2.0);
    let r2 = recip_gamma(-a / 2.0);
    let pref = (a * std::f64::consts::LN_2).exp() * PI.sqrt();
    let t1 = m1.value * r1;
    let t2 = 2.0 * z * m2.value * r2;
    let value = pref * (t1 - t2);
    if !is_finite(value) {
        return Err(SpecFunError::Overflow);
    }
    let est_error = pref.norm()
        * (r1.norm() * m1.est_error + 2.0 * z.norm() * r2.norm() * m2.est_error + 1e-15 * (t1.norm() + t2.norm()));
    let method = if rank(m2.method) > rank(m1.method) { m2.method } else { m1.method };
    Ok(SpecFunResult { value, est_error, method })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn classical_polynomials() {
        assert_eq!(hermite_h(c(0.0, 0.0), c(3.0, -2.0)).unwrap().value, c(1.0, 0.0));
        assert!((hermite_h(c(2.0, 0.0), c(1.0, 0.0)).unwrap().value - c(2.0, 0.0)).norm() < 1e-15);
        let x = 0.8;
        let h3 = hermite_h(c(3.0, 0.0), c(x, 0.0)).unwrap().value;
        assert!((h3.re - (8.0 * x * x * x - 12.0 * x)).abs() < 1e-14);
    }

    #[test]
    fn reference_values() {
        let cases = [
            (c(0.5, 0.5), c(0.0, 0.0), c(0.89408871228510976403, -0.47953717473354887826)),
            (c(-1.0, -0.5), c(0.7, 0.7), c(0.29157608636958367362, -0.44769348047091920915)),
            (c(0.3, 1.1), c(-0.4, 1.3), c(-0.11996628259892960957, 0.070181088517716412243)),
            (c(2.5, 0.0), c(1.5, 0.0), c(9.0122824620918205792, 0.0)),
        ];
        for (a, z, want) in cases {
            let got = hermite_h(a, z).unwrap();
            assert!(rel(got.value, want) < 1e-12, "H({a},{z}) = {:?}, want {want}", got);
        }
    }

    #[test]
    fn non_integer_degree_near_integer_matches_polynomial() {
        let z = c(0.9, -0.3);
        let near = hermite_h(c(3.0 + 1e-9, 0.0), z).unwrap().value;
        let exact = hermite_h(c(3.0, 0.0), z).unwrap().value;
        assert!(rel(near, exact) < 1e-7);
    }
}
