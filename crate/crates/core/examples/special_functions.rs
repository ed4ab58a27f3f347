//! Values of the confluent hypergeometric and Hermite functions, with the
//! evaluation path and error estimate each call reports.

use num_complex::Complex64;
use rabikit_specfun::{gamma_complex, hermite_h, kummer_1f1};

fn main() {
    let c = Complex64::new;
    let cases = [
        (c(0.5, 0.25), c(0.5, 0.0), c(2.0, 1.0)),
        (c(0.7, 0.0), c(1.3, 0.0), c(-12.0, 5.0)),
        (c(0.5, 0.25), c(0.5, 0.0), c(0.0, 40.0)),
        (c(0.5, 25.0), c(0.5, 0.0), c(0.0, 400.0)),
    ];
    for (a, b, z) in cases {
        match kummer_1f1(a, b, z) {
            Ok(r) => println!("1F1({a}; {b}; {z}) = {:.12} [{:?}, rel err ~ {:.1e}]", r.value, r.method, r.rel_error()),
            Err(e) => println!("1F1({a}; {b}; {z}) failed: {e}"),
        }
    }
    for (a, z) in [(c(3.0, 0.0), c(0.8, 0.0)), (c(0.5, 0.5), c(0.0, 0.0)), (c(-1.0, -0.5), c(0.7, 0.7))] {
        let r = hermite_h(a, z).unwrap();
        println!("H({a}, {z}) = {:.12} [{:?}]", r.value, r.method);
    }
    println!("Gamma(1/2 + 3i) = {:.12}", gamma_complex(c(0.5, 3.0)).unwrap());
}
