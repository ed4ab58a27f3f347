//! Frozen sign and normalization conventions, each checked against the split-step
//! integrator. Written verbatim into every run manifest.

pub const CONVENTIONS: &[(&str, &str)] = &[
    ("detuning", "delta_pm = (-+ dphi/dtau -+ nu + omega_r)/2; plus <-> excited row, minus <-> ground row"),
    ("kick", "D raises momentum by 2*omega_r; D^dag nu D = nu + 2 omega_r, D nu D^dag = nu - 2 omega_r"),
    ("off_diagonal_indexing", "source momentum: u_eg[i] maps ground at nu_i to excited at nu_i + 2 omega_r"),
    ("kappa", "kappa = k a / (2 m Omega^2); V = 2 kappa zeta; nu_S = nu - 2 kappa tau"),
    ("linear_drift", "delta_plus,S = delta_plus + kappa tau; delta_minus,S = delta_minus - kappa tau"),
    ("linear_sqrt_branch", "s = sqrt(i K), principal branch, K the row drift rate"),
    ("hermite_degree", "m = 1/(2 i K) - 1"),
    ("chirp", "phi(tau) = phi0 - (nu0 + omega_r) tau + kappa tau^2 holds the ground resonance at nu0"),
    ("chirp_condition", "d2phi/dtau2 = <V'(zeta)>"),
    ("greens_kernel", "theta(d) exp(-i delta d) sin(mu d) / mu"),
    ("quadratic_expansion", "nu_S = cos(w tau) nu - (2 eps / w) sin(w tau) zeta, w = sqrt(eps / omega_r)"),
    ("perturbation_source", "order-k source = +2i (excited) / -2i (ground) * sum_l delta^(k-l) dpsi^(l)/dtau"),
    ("lab_frame", "psi_lab = R S psi_int, R = diag(exp(-i eps_e tau), exp(-i eps_g tau))"),
    ("fourier", "psi(zeta) = int psi(nu) exp(i nu zeta) dnu / sqrt(2 pi)"),
];

pub fn as_map() -> std::collections::BTreeMap<String, String> {
    CONVENTIONS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}
