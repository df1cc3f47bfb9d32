//! Numeric evaluation of the analytic bounds on the reverse-reachable-set
//! size distribution, producing machine-checkable certificates.
//!
//! All bound formulas are evaluated in natural-log space so that quantities
//! like (9/10)^k and n^(-3x) stay representable at n up to 10^6. Logarithms
//! are natural throughout.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact::{binomial, Composition};
use crate::models::DegreeSpec;

/// c_1 = 0.04 / d_max: the slope of the small-k/large-k boundary.
pub const C1_NUMERATOR: f64 = 0.04;

/// Upper end of the large-k range as a fraction of n: 1 - 1/e^2.
pub fn c2_default() -> f64 {
    1.0 - (-2.0f64).exp()
}

// ---------------------------------------------------------------------------
// Log-space helpers
// ---------------------------------------------------------------------------

/// b * ln(a/b) with the 0^0 = 1 convention (b = 0 contributes 0).
fn ent(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        b * (a / b).ln()
    }
}

/// e * ln(x) with 0 * ln(0) = 0.
fn xlny(e: f64, x: f64) -> f64 {
    if e == 0.0 {
        0.0
    } else {
        e * x.ln()
    }
}

/// ln C(n, k); negative infinity when k > n.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_gamma((n + 1) as f64) - ln_gamma((k + 1) as f64) - ln_gamma((n - k + 1) as f64)
}

/// ln of a positive big integer, stable for arbitrarily large values.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln of non-positive integer");
    let bits = x.bits();
    if bits <= 512 {
        return x.to_f64().expect("fits f64 range").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// ln of a positive rational.
pub fn ln_rational(x: &BigRational) -> f64 {
    assert!(x.is_positive(), "ln of non-positive rational");
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

/// log(sum(exp(v))) over the values, tolerating empty input (-inf).
pub fn ln_sum_exp(values: impl IntoIterator<Item = f64>) -> f64 {
    let vals: Vec<f64> = values.into_iter().collect();
    let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + vals.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
        }
    }
}

/// One checked inequality with the two evaluated sides.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub pass: bool,
}

/// Evaluated quantities and pass/fail verdicts for one parameter point.
/// Every value is reproducible from the recorded parameters.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCertificate {
    pub label: String,
    pub params: Vec<(String, String)>,
    pub quantities: Vec<(String, f64)>,
    pub verdicts: Vec<Verdict>,
}

impl BoundCertificate {
    fn new(label: &str) -> Self {
        BoundCertificate {
            label: label.to_string(),
            params: Vec::new(),
            quantities: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    fn param(&mut self, name: &str, value: impl std::fmt::Display) {
        self.params.push((name.to_string(), value.to_string()));
    }

    fn quantity(&mut self, name: &str, value: f64) {
        self.quantities.push((name.to_string(), value));
    }

    fn check(&mut self, name: &str, lhs: f64, relation: Relation, rhs: f64) -> bool {
        let pass = relation.holds(lhs, rhs);
        self.verdicts.push(Verdict {
            name: name.to_string(),
            lhs,
            relation,
            rhs,
            pass,
        });
        pass
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn get_quantity(&self, name: &str) -> Option<f64> {
        self.quantities
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    /// Flat key-value report: one line per parameter, quantity, and verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("certificate {}\n", self.label));
        for (name, value) in &self.params {
            out.push_str(&format!("param {name} = {value}\n"));
        }
        for (name, value) in &self.quantities {
            out.push_str(&format!("quantity {name} = {value:.12e}\n"));
        }
        for v in &self.verdicts {
            let tag = if v.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{tag} {}: {:.12e} {} {:.12e}\n",
                v.name,
                v.lhs,
                v.relation.symbol(),
                v.rhs
            ));
        }
        out
    }
}

fn degrees_param(spec: &DegreeSpec) -> String {
    spec.entries()
        .iter()
        .map(|e| format!("{}:{}:{}", e.degree, e.count, e.targets))
        .collect::<Vec<_>>()
        .join(",")
}

// ---------------------------------------------------------------------------
// Composition-probability upper bound
// ---------------------------------------------------------------------------

/// The two closed-form upper bounds on R(k_1..k_x), for k <= n - d_max:
/// bound1 = prod (1 - (1 - k/(n-d_i))^{d_i})^{k_i - t_i},
/// bound2 = prod (d_i k / (n - d_max))^{k_i - t_i}.
/// bound1 <= bound2 factor by factor; bound2 may exceed 1.
pub fn r_upper_bound(spec: &DegreeSpec, comp: &Composition) -> Result<(f64, f64)> {
    let n = spec.n();
    let k = comp.k();
    if k > n - spec.d_max() {
        return Err(Error::domain(format!(
            "bound requires k <= n - d_max = {}",
            n - spec.d_max()
        )));
    }
    let nf = n as f64;
    let kf = k as f64;
    let d_max = spec.d_max() as f64;
    let mut ln_b1 = 0.0;
    let mut ln_b2 = 0.0;
    for (i, e) in spec.entries().iter().enumerate() {
        let d = e.degree as f64;
        let exp = (comp.counts()[i] - e.targets) as f64;
        ln_b1 += xlny(exp, 1.0 - (1.0 - kf / (nf - d)).powf(d));
        ln_b2 += xlny(exp, d * kf / (nf - d_max));
    }
    Ok((ln_b1.exp(), ln_b2.exp()))
}

// ---------------------------------------------------------------------------
// Small k
// ---------------------------------------------------------------------------

/// Lower end of the small-k range: 30 x ln(n).
pub fn small_k_lower(spec: &DegreeSpec) -> f64 {
    30.0 * spec.x() as f64 * (spec.n() as f64).ln()
}

/// Certificate for the small-k envelope chain: the continuous upper bound on
/// the composition terms drops like (9/10)^k, which beats n^(-3x) once
/// k >= 30 x ln(n).
///
/// The verdicts evaluate, at the real-valued maximizing composition:
/// the contraction base <= 9/10, L/(n-d_max) >= 1, the envelope <= (9/10)^k,
/// and n^x * envelope <= n^(-2x).
pub fn small_k_certificate(spec: &DegreeSpec, k: usize) -> Result<BoundCertificate> {
    let n = spec.n();
    let nf = n as f64;
    let x = spec.x() as f64;
    let t = spec.t() as f64;
    let d_max = spec.d_max() as f64;
    let c1 = C1_NUMERATOR / d_max;
    let k_lo = small_k_lower(spec);
    let kf = k as f64;

    if kf < k_lo {
        return Err(Error::domain(format!(
            "small-k range needs k >= 30 x ln(n) = {k_lo:.2}, got k = {k}"
        )));
    }
    if k > n {
        return Err(Error::domain(format!("k = {k} exceeds n = {n}")));
    }
    if t > c1 * nf {
        return Err(Error::domain(format!(
            "small-k range needs t <= c1 n = {:.2}, got t = {t}",
            c1 * nf
        )));
    }

    let mut cert = BoundCertificate::new("small-k");
    cert.param("degrees", degrees_param(spec));
    cert.param("n", n);
    cert.param("k", k);
    cert.quantity("c1", c1);
    cert.quantity("k_min_30x_ln_n", k_lo);
    cert.quantity("c1_n", c1 * nf);
    cert.quantity("k_within_c1_window", f64::from(u8::from(kf <= c1 * nf)));

    let mut big_l = 0.0;
    let mut dbar = 0.0;
    for e in spec.entries() {
        let d = e.degree as f64;
        let a_minus_t = (e.count - e.targets) as f64;
        big_l += a_minus_t * d * (d * kf / nf).exp();
        dbar += d * a_minus_t / nf;
    }
    let ratio = big_l / (nf - d_max);
    let base = ratio * (1.0 - dbar).exp();
    let ln_envelope = -t * ratio.ln() + kf * base.ln();

    cert.quantity("L", big_l);
    cert.quantity("L_over_n_minus_dmax", ratio);
    cert.quantity("base", base);
    cert.quantity("ln_envelope", ln_envelope);
    for (i, e) in spec.entries().iter().enumerate() {
        let d = e.degree as f64;
        let a_minus_t = (e.count - e.targets) as f64;
        let maximizer = e.targets as f64 + a_minus_t * d * (d * kf / nf).exp() * (kf - t) / big_l;
        cert.quantity(&format!("maximizer_k_{}", i + 1), maximizer);
    }

    cert.check("base_le_9_over_10", base, Relation::Le, 0.9);
    cert.check("L_ratio_ge_1", ratio, Relation::Ge, 1.0);
    cert.check(
        "envelope_le_0.9_pow_k",
        ln_envelope,
        Relation::Le,
        kf * 0.9f64.ln(),
    );
    cert.check(
        "n_pow_x_envelope_le_n_pow_neg2x",
        ln_envelope + x * nf.ln(),
        Relation::Le,
        -2.0 * x * nf.ln(),
    );
    Ok(cert)
}

// ---------------------------------------------------------------------------
// Large k
// ---------------------------------------------------------------------------

/// [`large_k_certificate_with`] at the default constants
/// c1 = 0.04/d_max, c2 = 1 - 1/e^2.
pub fn large_k_certificate(spec: &DegreeSpec, k: usize) -> Result<BoundCertificate> {
    large_k_certificate_with(spec, k, C1_NUMERATOR / spec.d_max() as f64, c2_default())
}

/// Certificate for the linear-range chain: with s = k/n and normalized
/// fractions p_i = a_i/n, y_i = t_i/n, s_i = k_i/n, the composition term is
/// at most (n+1)^x Term1 Term2 with Term1 = (prod f(d_i))^n exponentially
/// small and Term2 bounded by a constant. Maximization over compositions is
/// exact integer enumeration.
pub fn large_k_certificate_with(
    spec: &DegreeSpec,
    k: usize,
    c1: f64,
    c2: f64,
) -> Result<BoundCertificate> {
    let n = spec.n();
    let nf = n as f64;
    let x = spec.x() as f64;
    let kf = k as f64;

    if kf < c1 * nf || kf > c2 * nf {
        return Err(Error::domain(format!(
            "large-k range is [{:.2}, {:.2}], got k = {k}",
            c1 * nf,
            c2 * nf
        )));
    }
    if k > n - spec.d_max() {
        return Err(Error::domain(format!(
            "composition bound requires k <= n - d_max = {}",
            n - spec.d_max()
        )));
    }
    if k < spec.t() {
        return Err(Error::domain(format!(
            "k = {k} below target count {}",
            spec.t()
        )));
    }
    let comp_count: u64 = spec
        .entries()
        .iter()
        .take(spec.x() - 1)
        .map(|e| (e.count - e.targets + 1) as u64)
        .product();
    if comp_count > 20_000_000 {
        return Err(Error::capacity(format!(
            "composition maximization would enumerate {comp_count} points"
        )));
    }

    let s = kf / nf;
    let ln_one_minus_s = (1.0 - s).ln();

    // Per-composition evaluation of ln Term1 + ln Term2 (exact form).
    let entries = spec.entries();
    let eval = |counts: &[usize]| -> (f64, f64) {
        let mut ln_t1 = 0.0;
        let mut ln_t2 = 0.0;
        for (i, e) in entries.iter().enumerate() {
            let d = e.degree as f64;
            let p_i = e.count as f64 / nf;
            let y_i = e.targets as f64 / nf;
            let s_i = counts[i] as f64 / nf;
            let ln_f = ent(p_i - y_i, s_i - y_i)
                + ent(p_i - y_i, p_i - s_i)
                + d * (p_i - s_i) * ln_one_minus_s
                + xlny(s_i - y_i, 1.0 - (1.0 - s).powf(d));
            ln_t1 += nf * ln_f;
            let ratio = (1.0 - (1.0 - s / (1.0 - d / nf)).powf(d)) / (1.0 - (1.0 - s).powf(d));
            ln_t2 += xlny((counts[i] - e.targets) as f64, ratio);
        }
        (ln_t1, ln_t2)
    };

    let mut best: Option<(f64, f64, Vec<usize>)> = None;
    crate::exact::for_each_composition(spec, k, |counts| {
        let (ln_t1, ln_t2) = eval(counts);
        let objective = ln_t1 + ln_t2;
        if best.as_ref().is_none_or(|(b1, b2, _)| objective > b1 + b2) {
            best = Some((ln_t1, ln_t2, counts.to_vec()));
        }
    });
    let (ln_t1, ln_t2, argmax) = best.ok_or_else(|| {
        Error::domain(format!("no composition of total {k} exists for this spec"))
    })?;

    let mut cert = BoundCertificate::new("large-k");
    cert.param("degrees", degrees_param(spec));
    cert.param("n", n);
    cert.param("k", k);
    cert.param("c1", c1);
    cert.param("c2", c2);
    cert.quantity("s", s);

    // Certificate quantities at the maximizing composition.
    let mut eta = 1.0;
    let mut max_f = 0.0f64;
    let mut ln_t2_cap = 0.0;
    for (i, e) in entries.iter().enumerate() {
        let d = e.degree as f64;
        let p_i = e.count as f64 / nf;
        let y_i = e.targets as f64 / nf;
        let s_i = argmax[i] as f64 / nf;
        let ln_f = ent(p_i - y_i, s_i - y_i)
            + ent(p_i - y_i, p_i - s_i)
            + d * (p_i - s_i) * ln_one_minus_s
            + xlny(s_i - y_i, 1.0 - (1.0 - s).powf(d));
        let f = ln_f.exp();
        cert.quantity(&format!("f_d{}", e.degree), f);
        cert.quantity(&format!("argmax_k_{}", i + 1), argmax[i] as f64);
        eta *= f;
        max_f = max_f.max(f);
        ln_t2_cap +=
            (1.0 - s).powf(d - 1.0) / (1.0 - (1.0 - s).powf(d)) * 2.0 * s * d * d * (s_i - y_i);
    }

    let ln_chain = x * (nf + 1.0).ln() + ln_t1 + ln_t2;
    cert.quantity("eta", eta);
    cert.quantity("ln_term1", ln_t1);
    cert.quantity("ln_term2", ln_t2);
    cert.quantity("ln_term2_cap", ln_t2_cap);
    cert.quantity("ln_chain", ln_chain);
    cert.quantity("ln_alpha_bound", x * nf.ln() + ln_chain);

    cert.check("f_factors_le_1", max_f, Relation::Le, 1.0 + 1e-12);
    cert.check("eta_lt_1", eta, Relation::Lt, 1.0);
    cert.check("term2_le_cap", ln_t2, Relation::Le, ln_t2_cap + 1e-9);
    cert.check(
        "chain_le_n_pow_neg3x",
        ln_chain,
        Relation::Le,
        -3.0 * x * nf.ln(),
    );
    Ok(cert)
}

// ---------------------------------------------------------------------------
// Very large k
// ---------------------------------------------------------------------------

/// Certificate for the near-full range, parameterized by the complement size
/// l = n - k with d_min + 1 <= l <= n/e^2. Every composition term is at most
/// (x e l / n)^l; above l = d_max + 1 that is below n^-(2+x), and in the
/// narrow band l <= d_max + 1 it is below h n^-l with
/// h = (x e (d_max+1))^(d_max+1), giving alpha_k <= h / n^2.
pub fn very_large_k_certificate(spec: &DegreeSpec, ell: usize) -> Result<BoundCertificate> {
    let n = spec.n();
    let nf = n as f64;
    let x = spec.x() as f64;
    let d_min = spec.d_min();
    let d_max = spec.d_max();

    if ell < d_min + 1 {
        return Err(Error::domain(format!(
            "l = {ell} < d_min + 1 = {}: fewer vertices cannot keep all edges \
             among themselves, so the reverse reachable set is everything",
            d_min + 1
        )));
    }
    let ell_hi = nf * (-2.0f64).exp();
    if ell as f64 > ell_hi {
        return Err(Error::domain(format!(
            "very-large-k range needs l <= n/e^2 = {ell_hi:.2}, got l = {ell}"
        )));
    }

    let ellf = ell as f64;
    let ln_a_bound = ellf * (x.ln() + 1.0 + ellf.ln() - nf.ln());

    let mut cert = BoundCertificate::new("very-large-k");
    cert.param("degrees", degrees_param(spec));
    cert.param("n", n);
    cert.param("l", ell);
    cert.quantity("ln_a_bound", ln_a_bound);

    if ell > d_max + 1 {
        cert.param("case", "l > d_max + 1");
        cert.check(
            "a_lt_n_pow_neg_2_plus_x",
            ln_a_bound,
            Relation::Lt,
            -(2.0 + x) * nf.ln(),
        );
        cert.quantity("ln_alpha_bound", x * nf.ln() + ln_a_bound);
        cert.check(
            "alpha_le_n_pow_neg2",
            x * nf.ln() + ln_a_bound,
            Relation::Le,
            -2.0 * nf.ln(),
        );
    } else {
        cert.param("case", "l <= d_max + 1");
        let h = (x * std::f64::consts::E * (d_max as f64 + 1.0)).powf(d_max as f64 + 1.0);
        let ln_h = h.ln();
        cert.quantity("h", h);
        // Equality holds at l = d_max + 1, so allow float slack.
        cert.check(
            "a_le_h_n_pow_neg_l",
            ln_a_bound,
            Relation::Le,
            ln_h - ellf * nf.ln() + 1e-9,
        );
        let ln_alpha = ln_h - d_min as f64 * nf.ln();
        cert.quantity("ln_alpha_bound", ln_alpha);
        cert.check(
            "alpha_le_h_over_n2",
            ln_alpha,
            Relation::Le,
            ln_h - 2.0 * nf.ln(),
        );
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// G(n,p) tail terms
// ---------------------------------------------------------------------------

/// Certificate for the G(n,p) tail chain with t_i = C(n-1, i-1)(1-p)^{i(n-i)}
/// and g_i = t_i + t_{n-i} = C(n,i)(1-p)^{i(n-i)}:
/// the reflection identity (checked exactly on binomials), g_i <= t_1 on
/// 2..n/2, t_1 <= 1/n^2, and sum t_i <= 1.5/n; at p = 1/2 additionally
/// sum t_i <= (3/4)^n.
pub fn gnp_certificate(n: usize, p: f64) -> Result<BoundCertificate> {
    if n < 2 {
        return Err(Error::domain(format!("n = {n} below 2")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("p = {p} outside (0, 1)")));
    }
    let nf = n as f64;
    let ln_q = (-p).ln_1p();
    let ln_t = |i: usize| ln_binomial(n as u64 - 1, i as u64 - 1) + (i * (n - i)) as f64 * ln_q;

    let mut cert = BoundCertificate::new("gnp");
    cert.param("n", n);
    cert.param("p", p);

    // Reflection identity as an exact integer statement:
    // (n-i) C(n-1, i-1) == i C(n-1, i); the shared power of (1-p) cancels
    // algebraically. Exact checks are sampled at large n (cost O(i) bigint
    // operations per point), with a full float sweep below.
    let sample: Vec<usize> = if n <= 1200 {
        (1..n).collect()
    } else {
        let mut s: Vec<usize> = (1..=20.min(n - 1)).collect();
        let mut i = 32;
        while i <= n / 2 {
            s.push(i);
            i *= 2;
        }
        s.push(n / 2);
        s.push(n - 1);
        s.sort_unstable();
        s.dedup();
        s
    };
    let mut exact_failures = 0u64;
    for &i in &sample {
        let lhs = BigInt::from(n - i) * binomial(n - 1, i - 1);
        let rhs = BigInt::from(i) * binomial(n - 1, i);
        if lhs != rhs {
            exact_failures += 1;
        }
    }
    cert.quantity("symmetry_exact_points", sample.len() as f64);
    cert.check(
        "symmetry_exact_binomial_identity",
        exact_failures as f64,
        Relation::Le,
        0.0,
    );

    let mut max_sym_err: f64 = 0.0;
    for i in 1..n {
        let lhs = ln_t(n - i);
        let rhs = ((n - i) as f64 / i as f64).ln() + ln_t(i);
        let err = (lhs - rhs).abs() / lhs.abs().max(1.0);
        max_sym_err = max_sym_err.max(err);
    }
    cert.quantity("symmetry_max_rel_err", max_sym_err);
    cert.check("symmetry_float_sweep", max_sym_err, Relation::Le, 1e-9);

    let ln_t1 = (nf - 1.0) * ln_q;
    cert.quantity("ln_t1", ln_t1);
    if n >= 4 {
        let mut max_ln_g = f64::NEG_INFINITY;
        for i in 2..=n / 2 {
            let ln_g = ln_binomial(n as u64, i as u64) + (i * (n - i)) as f64 * ln_q;
            max_ln_g = max_ln_g.max(ln_g);
        }
        cert.quantity("max_ln_g_2_to_n_half", max_ln_g);
        cert.check("g_le_t1_for_2_to_n_half", max_ln_g, Relation::Le, ln_t1);
    }
    cert.check("t1_le_inv_n2", ln_t1, Relation::Le, -2.0 * nf.ln());

    let ln_sum = ln_sum_exp((1..n).map(ln_t));
    cert.quantity("ln_sum_t", ln_sum);
    cert.check("sum_t_le_1.5_over_n", ln_sum, Relation::Le, (1.5 / nf).ln());
    if p == 0.5 {
        cert.check(
            "sum_t_le_3_4_pow_n",
            ln_sum,
            Relation::Le,
            nf * 0.75f64.ln(),
        );
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// Stirling inequalities
// ---------------------------------------------------------------------------

/// The two binomial upper bounds C(l,j) <= (e l / j)^j and
/// C(l,j) <= (l+1)(l/j)^j (l/(l-j))^{l-j}, with (l/0)^0 read as 1.
pub fn stirling_check(l: u64, j: u64) -> Result<BoundCertificate> {
    if j == 0 || j > l {
        return Err(Error::input(format!(
            "need 1 <= j <= l, got j = {j}, l = {l}"
        )));
    }
    let ln_c = ln_bigint(&binomial(l as usize, j as usize));
    let lf = l as f64;
    let jf = j as f64;
    let rhs1 = jf * (1.0 + lf.ln() - jf.ln());
    let rhs2 = (lf + 1.0).ln() + jf * (lf.ln() - jf.ln()) + xlny(lf - jf, lf / (lf - jf));

    let mut cert = BoundCertificate::new("stirling");
    cert.param("l", l);
    cert.param("j", j);
    cert.quantity("ln_binomial", ln_c);
    cert.quantity("ln_rhs_e_l_over_j_pow_j", rhs1);
    cert.quantity("ln_rhs_entropy_form", rhs2);
    cert.check("binom_le_e_l_over_j_pow_j", ln_c, Relation::Le, rhs1);
    cert.check("binom_le_entropy_form", ln_c, Relation::Le, rhs2);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, t_term};
    use crate::models::DegreeEntry;

    fn d2(n: usize, t: usize) -> DegreeSpec {
        DegreeSpec::uniform(2, n, t).unwrap()
    }
    fn d3(n: usize, t: usize) -> DegreeSpec {
        DegreeSpec::uniform(3, n, t).unwrap()
    }
    fn d23_split(n: usize) -> DegreeSpec {
        DegreeSpec::new(vec![
            DegreeEntry {
                degree: 2,
                count: n / 2,
                targets: 1,
            },
            DegreeEntry {
                degree: 3,
                count: n - n / 2,
                targets: 0,
            },
        ])
        .unwrap()
    }

    #[test]
    fn r_upper_bound_examples() {
        let spec = d2(5, 1);
        // Composition = targets only: both bounds are empty products.
        let comp = Composition::new(&spec, vec![1]).unwrap();
        let (b1, b2) = r_upper_bound(&spec, &comp).unwrap();
        assert_eq!((b1, b2), (1.0, 1.0));
        // k = 2: bound1 = 1 - (1 - 2/3)^2 = 8/9, bound2 = 4/3 (may exceed 1).
        let comp = Composition::new(&spec, vec![2]).unwrap();
        let (b1, b2) = r_upper_bound(&spec, &comp).unwrap();
        assert!((b1 - 8.0 / 9.0).abs() < 1e-12);
        assert!((b2 - 4.0 / 3.0).abs() < 1e-12);
        assert!(b1 <= b2);
        // Hypothesis violation: k > n - d_max.
        let comp = Composition::new(&spec, vec![4]).unwrap();
        assert!(matches!(r_upper_bound(&spec, &comp), Err(Error::Domain(_))));
    }

    #[test]
    fn small_k_certificate_at_1e4() {
        // k = ceil(30 ln n) = 277. All four verdicts hold even though the
        // window [30 ln n, c1 n] is empty at this n (c1 n ~ 133); window
        // membership is recorded, not enforced.
        let spec = d3(10_000, 1);
        let cert = small_k_certificate(&spec, 277).unwrap();
        assert!(cert.all_pass(), "{}", cert.to_text());
        assert_eq!(cert.get_quantity("k_within_c1_window"), Some(0.0));
        let base = cert.get_quantity("base").unwrap();
        assert!((base - 0.4414).abs() < 1e-3, "base = {base}");
    }

    #[test]
    fn small_k_below_lower_bound_is_domain_error() {
        let spec = d3(10_000, 1);
        // floor(0.04/3 * 10^4) = 133 < 277 = ceil(30 ln n).
        assert!(matches!(
            small_k_certificate(&spec, 133),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn small_k_certificate_mixed_degrees_1e6() {
        let spec = d23_split(1_000_000);
        let k = (30.0 * 2.0 * (1e6f64).ln()).ceil() as usize;
        let cert = small_k_certificate(&spec, k).unwrap();
        assert!(
            cert.verdict("envelope_le_0.9_pow_k").unwrap().pass,
            "{}",
            cert.to_text()
        );
        assert!(cert.all_pass());
    }

    #[test]
    fn large_k_certificate_d2_half() {
        let spec = d2(10_000, 1);
        let cert = large_k_certificate(&spec, 5_000).unwrap();
        assert!(cert.all_pass(), "{}", cert.to_text());
        // f(2) at s = 1/2, y ~ 0: 2^(1/2) 2^(1/2) (1/2)^1 (3/4)^(1/2) ~ 0.8660.
        let f = cert.get_quantity("f_d2").unwrap();
        assert!((f - 0.8660).abs() < 1e-3, "f = {f}");
        assert!(cert.get_quantity("eta").unwrap() < 1.0);
    }

    #[test]
    fn large_k_out_of_range() {
        let spec = d2(10_000, 1);
        assert!(matches!(
            large_k_certificate(&spec, 10_000),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            large_k_certificate(&spec, 10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn large_k_maximization_over_mixed_compositions() {
        let spec = d23_split(10_000);
        let cert = large_k_certificate(&spec, 5_000).unwrap();
        assert!(cert.all_pass(), "{}", cert.to_text());
        // The analytic stationary point puts s_1 ~ 0.1978 of the mass in the
        // degree-2 class.
        let k1 = cert.get_quantity("argmax_k_1").unwrap();
        assert!((k1 - 1978.0).abs() <= 2.0, "argmax k_1 = {k1}");
    }

    #[test]
    fn very_large_k_below_range_is_domain_error() {
        let spec = d2(10_000, 1);
        assert!(matches!(
            very_large_k_certificate(&spec, 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            very_large_k_certificate(&spec, 2_000),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn very_large_k_narrow_band_d2() {
        // l = 3 = d_max + 1: h = (3e)^3, bound tight (equality at the
        // endpoint), alpha bound h/n^2.
        let spec = d2(10_000, 1);
        let cert = very_large_k_certificate(&spec, 3).unwrap();
        let h = cert.get_quantity("h").unwrap();
        assert!((h - (3.0 * std::f64::consts::E).powi(3)).abs() < 1e-9);
        assert!(cert.all_pass(), "{}", cert.to_text());
    }

    #[test]
    fn very_large_k_l4_d2_fails_below_threshold() {
        // At l = d_max + 2 = 4 the bound is (4e/n)^4 ~ 13977 n^-4, which
        // beats n^-3 only for n > (4e)^4 = 13977.13. Direct evaluation: the
        // verdict fails at n = 10^4 and first holds at n = 13978.
        let cert = very_large_k_certificate(&d2(10_000, 1), 4).unwrap();
        assert!(!cert.verdict("a_lt_n_pow_neg_2_plus_x").unwrap().pass);
        let cert = very_large_k_certificate(&d2(13_977, 1), 4).unwrap();
        assert!(!cert.verdict("a_lt_n_pow_neg_2_plus_x").unwrap().pass);
        let cert = very_large_k_certificate(&d2(13_978, 1), 4).unwrap();
        assert!(cert.verdict("a_lt_n_pow_neg_2_plus_x").unwrap().pass);
    }

    #[test]
    fn very_large_k_d3_passes_at_1e4() {
        let spec = d3(10_000, 1);
        for ell in [4, 5, 50, 1_000] {
            let cert = very_large_k_certificate(&spec, ell).unwrap();
            assert!(cert.all_pass(), "l = {ell}:\n{}", cert.to_text());
        }
    }

    #[test]
    fn gnp_certificate_small_exact_symmetry() {
        let cert = gnp_certificate(4, 0.5).unwrap();
        assert!(
            cert.verdict("symmetry_exact_binomial_identity")
                .unwrap()
                .pass
        );
        assert!(cert.verdict("symmetry_float_sweep").unwrap().pass);
        // t_3 = 3 t_1 = 3/8 exactly, via the exact module.
        let p = parse_rational("1/2").unwrap();
        let t1 = t_term(4, &p, 1).unwrap();
        let t3 = t_term(4, &p, 3).unwrap();
        assert_eq!(t3, parse_rational("3").unwrap() * t1);
    }

    #[test]
    fn gnp_certificate_logarithmic_p() {
        let n = 1000;
        let p = 3.0 * (n as f64).ln() / n as f64;
        let cert = gnp_certificate(n, p).unwrap();
        assert!(cert.all_pass(), "{}", cert.to_text());
    }

    #[test]
    fn gnp_certificate_grid() {
        // The chain holds across the grid n x c with p = c ln(n)/n for every
        // c > 2 tried, and at p = 1/2 for all n >= 17.
        for n in [100usize, 300, 1000, 3000, 10_000] {
            for c in [2.1f64, 3.0, 5.0] {
                let p = c * (n as f64).ln() / n as f64;
                let cert = gnp_certificate(n, p).unwrap();
                assert!(cert.all_pass(), "n = {n}, c = {c}:\n{}", cert.to_text());
            }
        }
        for n in 17..=100usize {
            let cert = gnp_certificate(n, 0.5).unwrap();
            assert!(cert.all_pass(), "n = {n}, p = 1/2:\n{}", cert.to_text());
        }
    }

    #[test]
    fn gnp_three_quarters_threshold_is_8() {
        // Smallest n from which sum t_i <= (3/4)^n holds onward at p = 1/2
        // (n = 2 passes by accident, 3..7 fail).
        let passes = |n: usize| {
            gnp_certificate(n, 0.5)
                .unwrap()
                .verdict("sum_t_le_3_4_pow_n")
                .unwrap()
                .pass
        };
        let first_stable = (3..30).find(|&n| (n..30).all(passes)).unwrap();
        assert_eq!(first_stable, 8);
        for n in 17..30 {
            assert!(gnp_certificate(n, 0.5).unwrap().all_pass(), "n = {n}");
        }
    }

    #[test]
    fn stirling_examples() {
        let cert = stirling_check(10, 3).unwrap();
        assert!(cert.all_pass());
        // C(10,3) = 120 <= (10e/3)^3 ~ 744.1 and <= 11 (10/3)^3 (10/7)^7.
        assert!(
            (cert.get_quantity("ln_rhs_e_l_over_j_pow_j").unwrap() - 744.1f64.ln()).abs() < 1e-3
        );
        // j = l: convention (l/0)^0 = 1, RHS2 = l + 1.
        let cert = stirling_check(7, 7).unwrap();
        assert!(cert.all_pass());
        assert!((cert.get_quantity("ln_rhs_entropy_form").unwrap() - 8.0f64.ln()).abs() < 1e-12);
        // j = 1: C = l <= e l.
        let cert = stirling_check(9, 1).unwrap();
        assert!(cert.all_pass());
        assert!(stirling_check(5, 0).is_err());
        assert!(stirling_check(5, 6).is_err());
    }

    #[test]
    fn log_space_agrees_with_exact_rationals() {
        // ln t_i from lgamma vs. the exact rational, relative error <= 1e-9.
        let p_exact = parse_rational("1/3").unwrap();
        let ln_q = (-(1.0f64 / 3.0)).ln_1p();
        for n in [10usize, 30, 60] {
            for i in 1..n {
                let exact = ln_rational(&t_term(n, &p_exact, i).unwrap());
                let approx = ln_binomial(n as u64 - 1, i as u64 - 1) + (i * (n - i)) as f64 * ln_q;
                let err = (exact - approx).abs() / exact.abs().max(1.0);
                assert!(err <= 1e-9, "n={n} i={i}: {exact} vs {approx}");
            }
        }
    }

    #[test]
    fn tiny_scale_domination_by_r_upper_bound() {
        // Exact R <= bound1 <= bound2 for every composition with k in the
        // bound's stated range at n = 5, d = 2, t = 1.
        let spec = d2(5, 1);
        for k in 1..=3 {
            let comp = Composition::new(&spec, vec![k]).unwrap();
            let exact = crate::exact::r_multi_exact(&spec, &comp).unwrap();
            let exact_f = exact.numer().to_f64().unwrap() / exact.denom().to_f64().unwrap();
            let (b1, b2) = r_upper_bound(&spec, &comp).unwrap();
            assert!(exact_f <= b1 + 1e-9, "k={k}: {exact_f} > {b1}");
            assert!(b1 <= b2 + 1e-9);
        }
    }

    #[test]
    fn tiny_scale_alpha_below_large_k_chain_bound() {
        // Where alpha_k is exactly computable and k falls in the large-k
        // range, alpha_k must not exceed n^x (n+1)^x Term1 Term2.
        let spec = d2(5, 1);
        let nf = 5.0f64;
        let c1 = C1_NUMERATOR / 2.0;
        for k in 1..=3usize {
            let kf = k as f64;
            if kf < c1 * nf || kf > c2_default() * nf {
                continue;
            }
            let alpha = crate::exact::alpha_k_exact(&spec, k).unwrap();
            let alpha_f = alpha.numer().to_f64().unwrap() / alpha.denom().to_f64().unwrap();
            let cert = large_k_certificate(&spec, k).unwrap();
            let ln_alpha_bound = cert.get_quantity("ln_alpha_bound").unwrap();
            assert!(
                alpha_f.ln() <= ln_alpha_bound + 1e-9,
                "k={k}: alpha {alpha_f} above chain bound"
            );
        }
    }

    #[test]
    fn certificates_serialize_to_json() {
        let cert = stirling_check(10, 3).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["label"], "stirling");
        assert_eq!(v["verdicts"].as_array().unwrap().len(), 2);
        assert_eq!(v["verdicts"][0]["relation"], "<=");
        // Every recorded value must be a finite JSON number.
        for q in v["quantities"].as_array().unwrap() {
            assert!(q[1].is_f64(), "non-finite quantity in {q}");
        }
    }
}
