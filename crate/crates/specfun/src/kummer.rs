use num_complex::Complex64;

use crate::dd::CDd;
use crate::gamma::recip_gamma;
use crate::{is_finite, is_nonpositive_integer, Method, SpecFunError, SpecFunResult};

/// Radius below which the Taylor series (or its Kummer transform) is used.
pub const SWITCH_RADIUS: f64 = 30.0;
/// Term budget for every series evaluation.
pub const MAX_TERMS: usize = 500;

const U64: f64 = f64::EPSILON / 2.0;
const U128: f64 = 4.93e-32;
/// Relative estimate above which the f64 series is redone in double-double.
const SERIES_ACCEPT: f64 = 1e-13;
/// Relative estimate above which the asymptotic value is not trusted outright.
const ASYMPTOTIC_ACCEPT: f64 = 1e-11;
/// Relative estimate above which the evaluation is reported as failed.
const FAIL_REL: f64 = 1e-8;

struct Partial {
    value: Complex64,
    est_error: f64,
    terms: usize,
    converged: bool,
}

impl Partial {
    fn rel(&self) -> f64 {
        let n = self.value.norm();
        if n > 0.0 {
            self.est_error / n
        } else {
            f64::INFINITY
        }
    }
}

fn term_ratio_bound(a: Complex64, b: Complex64, z: Complex64, k: usize) -> f64 {
    let kf = k as f64;
    (a + kf).norm() * z.norm() / ((b + kf).norm() * (kf + 1.0))
}

fn series_f64(a: Complex64, b: Complex64, z: Complex64) -> Partial {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut weighted = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term = term * (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum += term;
        let t = term.norm();
        weighted += (kf + 2.0).sqrt() * t;
        if t == 0.0 {
            return Partial { value: sum, est_error: 4.0 * U64 * weighted, terms: k + 1, converged: true };
        }
        if t <= 1e-17 * sum.norm() && term_ratio_bound(a, b, z, k + 1) < 0.5 {
            return Partial {
                value: sum,
                est_error: 4.0 * U64 * weighted + t,
                terms: k + 1,
                converged: true,
            };
        }
    }
    Partial { value: sum, est_error: 4.0 * U64 * weighted + term.norm(), terms: MAX_TERMS, converged: false }
}

fn series_dd(a: Complex64, b: Complex64, z: Complex64) -> Partial {
    let ad = CDd::from_c64(a);
    let bd = CDd::from_c64(b);
    let zd = CDd::from_c64(z);
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut weighted = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let num = ad.add_real(kf).mul(zd);
        let den = bd.add_real(kf).mul(CDd::from_c64(Complex64::new(kf + 1.0, 0.0)));
        term = term.mul(num).div(den);
        sum = sum.add(term);
        let t = term.norm1();
        weighted += (kf + 2.0).sqrt() * t;
        let s = sum.to_c64();
        if t == 0.0 {
            return Partial { value: s, est_error: 4.0 * U128 * weighted + U64 * s.norm(), terms: k + 1, converged: true };
        }
        if t <= 1e-18 * s.norm() && term_ratio_bound(a, b, z, k + 1) < 0.5 {
            return Partial {
                value: s,
                est_error: 4.0 * U128 * weighted + U64 * s.norm() + t,
                terms: k + 1,
                converged: true,
            };
        }
    }
    let s = sum.to_c64();
    Partial { value: s, est_error: 4.0 * U128 * weighted + term.norm1(), terms: MAX_TERMS, converged: false }
}

/// Taylor series, promoted to double-double when cancellation eats the f64 result.
fn series(a: Complex64, b: Complex64, z: Complex64) -> Partial {
    let p = series_f64(a, b, z);
    if p.converged && p.rel() <= SERIES_ACCEPT {
        return p;
    }
    let q = series_dd(a, b, z);
    if q.rel() <= p.rel() {
        q
    } else {
        p
    }
}

/// Sum of the divergent asymptotic series Σ (p)_s (q)_s / s! · w^{-s}, truncated at its
/// smallest term.
fn asymptotic_sum(p: Complex64, q: Complex64, w: Complex64) -> (Complex64, f64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = 1.0;
    for s in 0..MAX_TERMS {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) / ((sf + 1.0) * w);
        let t = next.norm();
        if t == 0.0 {
            return (sum, 0.0);
        }
        if t > prev {
            return (sum, prev);
        }
        sum += next;
        term = next;
        prev = t;
        if t <= 1e-17 * sum.norm() {
            return (sum, t);
        }
    }
    (sum, prev)
}

fn asymptotic(a: Complex64, b: Complex64, z: Complex64) -> Result<Partial, SpecFunError> {
    let one = Complex64::new(1.0, 0.0);
    let ln_z = z.ln();
    let gb = crate::gamma::gamma_complex(b)?;
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let rga = recip_gamma(a);
    let rgba = recip_gamma(b - a);

    let (s1, e1) = asymptotic_sum(one - a, b - a, z);
    let pref1 = gb * rga * (z + (a - b) * ln_z).exp();
    let (s2, e2) = asymptotic_sum(a, a - b + one, -z);
    let phase = (Complex64::new(0.0, sign * std::f64::consts::PI) * a).exp();
    let pref2 = gb * rgba * phase * (-a * ln_z).exp();

    let t1 = pref1 * s1;
    let t2 = pref2 * s2;
    let value = t1 + t2;
    if !is_finite(value) {
        return Err(SpecFunError::Overflow);
    }
    let est_error = pref1.norm() * e1 + pref2.norm() * e2 + 1e-14 * (t1.norm() + t2.norm());
    Ok(Partial { value, est_error, terms: 0, converged: true })
}

/// Start radius candidates for the continuation path, tried largest first.
const START_RADII: [f64; 7] = [16.0, 8.0, 4.0, 2.0, 1.0, 0.5, 0.25];
/// Per-step budget `h·λ` with λ the local growth rate `1 + (|a| + |b|)/|z|`.
const STEP_BUDGET: f64 = 6.0;
const STEP_TERMS: usize = 4000;

/// Integrates `z w'' + (b − z) w' − a w = 0` from `z0` to `z` along the straight
/// segment by local Taylor expansion. Steps never exceed half the radius of
/// convergence about the current point. Returns the value and a rounding estimate.
fn taylor_walk(a: Complex64, b: Complex64, z0: Complex64, w0: Complex64, dw0: Complex64, z: Complex64) -> Option<(Complex64, f64)> {
    let (mut zc, mut w, mut dw) = (z0, w0, dw0);
    let mut round = 0.0;
    let growth = a.norm() + b.norm();
    for _ in 0..1_000_000 {
        let rem = z - zc;
        let dist = rem.norm();
        if dist == 0.0 {
            return Some((w, round * w.norm()));
        }
        let h = (0.5 * zc.norm()).min(STEP_BUDGET / (1.0 + growth / zc.norm())).min(dist);
        let t = if h == dist { rem } else { rem * (h / dist) };
        let (mut c0, mut c1) = (w, dw);
        let mut tp = t;
        let (mut sw, mut sd) = (c0 + c1 * t, c1);
        let mut peak = c0.norm().max((c1 * t).norm());
        let mut quiet = 0;
        let mut done = false;
        for n in 0..STEP_TERMS {
            let nf = n as f64;
            let c2 = (-(nf + 1.0) * (nf + b - zc) * c1 + (nf + a) * c0) / (zc * ((nf + 2.0) * (nf + 1.0)));
            let dterm = (nf + 2.0) * c2 * tp;
            tp *= t;
            let wterm = c2 * tp;
            sw += wterm;
            sd += dterm;
            peak = peak.max(wterm.norm()).max((dterm * t).norm());
            let scale = sw.norm() + (sd * t).norm();
            if wterm.norm() + (dterm * t).norm() <= 1e-17 * scale {
                quiet += 1;
                if quiet >= 3 {
                    done = true;
                    break;
                }
            } else {
                quiet = 0;
            }
            c0 = c1;
            c1 = c2;
        }
        if !done || !is_finite(sw) || !is_finite(sd) {
            return None;
        }
        round += 4.0 * U64 * peak / sw.norm().max(f64::MIN_POSITIVE);
        w = sw;
        dw = sd;
        zc += t;
    }
    None
}

/// Analytic continuation of ₁F₁ from a point on the ray through `z` where the
/// Taylor series is accurate. Used when neither the series nor the asymptotic
/// expansion converges, typically for large |a| together with large |z|.
fn continuation(a: Complex64, b: Complex64, z: Complex64) -> Option<Partial> {
    let dir = z / z.norm();
    for r in START_RADII {
        if r >= z.norm() {
            continue;
        }
        let z0 = dir * r;
        let m = series(a, b, z0);
        let dm = series(a + 1.0, b + 1.0, z0);
        if !m.converged || !dm.converged || m.rel() > 1e-14 || dm.rel() > 1e-14 {
            continue;
        }
        let dw0 = a / b * dm.value;
        let (v, round) = taylor_walk(a, b, z0, m.value, dw0, z)?;
        let est = round + (m.rel() + dm.rel()) * v.norm();
        return Some(Partial { value: v, est_error: est, terms: 0, converged: true });
    }
    None
}

/// Falls back to [`continuation`] when `p` is not accurate enough.
fn finish_or_continue(p: Partial, method: Method, a: Complex64, b: Complex64, z: Complex64) -> Result<SpecFunResult, SpecFunError> {
    if p.converged && p.rel() <= FAIL_REL && is_finite(p.value) {
        return finish(p, method);
    }
    match continuation(a, b, z) {
        Some(c) if c.rel() < p.rel() || !p.converged || !is_finite(p.value) => finish(c, Method::Continuation),
        _ => finish(p, method),
    }
}

fn finish(p: Partial, method: Method) -> Result<SpecFunResult, SpecFunError> {
    if !is_finite(p.value) {
        return Err(SpecFunError::Overflow);
    }
    if !p.converged || p.rel() > FAIL_REL {
        return Err(SpecFunError::NoConvergence { partial: p.value, est_error: p.est_error, terms: p.terms });
    }
    Ok(SpecFunResult { value: p.value, est_error: p.est_error, method })
}

/// Kummer's confluent hypergeometric function ₁F₁(a; b; z).
///
/// Taylor series for |z| ≤ [`SWITCH_RADIUS`] (Kummer-transformed when Re z < 0),
/// the two-sided asymptotic expansion beyond it, and a double-double series as a
/// fallback when the asymptotic truncation error is too large. If all of these fail
/// the Kummer equation is integrated outward from a small-|z| start point.
pub fn kummer_1f1(a: Complex64, b: Complex64, z: Complex64) -> Result<SpecFunResult, SpecFunError> {
    if !is_finite(a) || !is_finite(b) || !is_finite(z) {
        return Err(SpecFunError::NonFinite);
    }
    if is_nonpositive_integer(b) {
        return Err(SpecFunError::ParameterPole(b));
    }
    if z == Complex64::new(0.0, 0.0) || a == Complex64::new(0.0, 0.0) {
        return Ok(SpecFunResult { value: Complex64::new(1.0, 0.0), est_error: 0.0, method: Method::Series });
    }
    if is_nonpositive_integer(a) && -a.re < MAX_TERMS as f64 {
        return finish(series(a, b, z), Method::Polynomial);
    }
    if z.norm() <= SWITCH_RADIUS {
        if z.re < 0.0 {
            let p = series(b - a, b, -z);
            let ez = z.exp();
            let scaled = Partial {
                value: ez * p.value,
                est_error: ez.norm() * p.est_error,
                terms: p.terms,
                converged: p.converged,
            };
            return finish_or_continue(scaled, Method::KummerTransformed, a, b, z);
        }
        return finish_or_continue(series(a, b, z), Method::Series, a, b, z);
    }
    let asym = match asymptotic(a, b, z) {
        Ok(p) => p,
        Err(e) => return continuation(a, b, z).map_or(Err(e), |c| finish(c, Method::Continuation)),
    };
    if asym.rel() <= ASYMPTOTIC_ACCEPT {
        return finish(asym, Method::Asymptotic);
    }
    let (fa, fb, fz) = if z.re < 0.0 { (b - a, b, -z) } else { (a, b, z) };
    let p = series_dd(fa, fb, fz);
    let p = if z.re < 0.0 {
        let ez = z.exp();
        Partial { value: ez * p.value, est_error: ez.norm() * p.est_error, terms: p.terms, converged: p.converged }
    } else {
        p
    };
    if p.converged && p.rel() < asym.rel() {
        let method = if z.re < 0.0 { Method::KummerTransformed } else { Method::Series };
        finish_or_continue(p, method, a, b, z)
    } else {
        finish_or_continue(asym, Method::Asymptotic, a, b, z)
    }
}
