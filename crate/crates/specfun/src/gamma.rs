use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{is_finite, is_nonpositive_integer, SpecFunError};

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_C: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    3.399_464_998_481_188_869_9e-5,
    4.652_362_892_704_857_566_5e-5,
    -9.837_447_530_487_956_467_7e-5,
    1.580_887_032_249_124_888_4e-4,
    -2.102_644_417_241_048_831_9e-4,
    2.174_396_181_152_126_432_0e-4,
    -1.643_181_065_367_638_902_2e-4,
    8.441_822_398_385_274_329_3e-5,
    -2.619_083_840_158_140_867_0e-5,
    3.689_918_265_953_162_270_4e-6,
];

/// Γ(z) for Re z ≥ 1/2.
fn lanczos(z: Complex64) -> Complex64 {
    let x = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_C[0], 0.0);
    for (k, c) in LANCZOS_C.iter().enumerate().skip(1) {
        acc += c / (x + k as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    let ln = (x + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * ln.exp() * acc
}

/// Complex gamma function via Lanczos approximation with reflection for Re z < 1/2.
pub fn gamma_complex(z: Complex64) -> Result<Complex64, SpecFunError> {
    if !is_finite(z) {
        return Err(SpecFunError::NonFinite);
    }
    if is_nonpositive_integer(z) {
        return Err(SpecFunError::Pole(z));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        Ok(PI / (s * lanczos(1.0 - z)))
    } else {
        Ok(lanczos(z))
    }
}

/// 1/Γ(z), entire; exactly zero at the poles of Γ.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * lanczos(1.0 - z) / PI
    } else {
        1.0 / lanczos(z)
    }
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
    fn factorials_and_half() {
        assert!(rel(gamma_complex(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
        assert!(rel(gamma_complex(c(5.0, 0.0)).unwrap(), c(24.0, 0.0)) < 1e-14);
        assert!(rel(gamma_complex(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn reference_values() {
        let cases = [
            (c(1.0, 1.0), c(0.49801566811835604271, -0.15494982830181068512)),
            (c(0.3, -2.5), c(0.035831884984150130037, 0.020264814365175002704)),
            (c(-1.7, 0.4), c(1.1356438824316395205, -0.26890799072916941431)),
            (c(4.5, 7.0), c(0.090346308053168856171, -0.083314240844865063015)),
            (c(0.5, 25.0), c(1.0511471517532346106e-17, -1.9439746819776830633e-17)),
        ];
        for (z, want) in cases {
            let got = gamma_complex(z).unwrap();
            assert!(rel(got, want) < 1e-12, "Γ({z}) = {got}, want {want}");
        }
    }

    #[test]
    fn poles() {
        assert_eq!(gamma_complex(c(0.0, 0.0)), Err(SpecFunError::Pole(c(0.0, 0.0))));
        assert_eq!(gamma_complex(c(-3.0, 0.0)), Err(SpecFunError::Pole(c(-3.0, 0.0))));
        assert_eq!(recip_gamma(c(-2.0, 0.0)), c(0.0, 0.0));
        assert!(gamma_complex(c(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn recurrence_and_reflection() {
        for &z in &[c(0.3, 0.7), c(-2.4, 1.3), c(6.1, -3.3), c(0.01, -0.02)] {
            let g = gamma_complex(z).unwrap();
            let g1 = gamma_complex(z + 1.0).unwrap();
            assert!(rel(g1, z * g) < 1e-13);
            let refl = g * gamma_complex(1.0 - z).unwrap() * (PI * z).sin();
            assert!(rel(refl, c(PI, 0.0)) < 1e-13);
            assert!(rel(recip_gamma(z) * g, c(1.0, 0.0)) < 1e-13);
        }
    }
}
