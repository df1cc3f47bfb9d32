//! Exact rational computation: the G(n,p) reachability recurrence, its
//! brute-force enumeration oracle, the closed-form tail terms, and the
//! constant out-degree model's composition probabilities at tiny scale.
//!
//! Everything here is exact; no floating point enters any value.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Pow;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::models::DegreeSpec;

/// Enumeration guard shared by the tiny-scale oracles.
pub const ENUMERATION_GUARD: u64 = 10_000_000;

/// Exact binomial coefficient; 0 when k > n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut res = BigInt::one();
    for i in 0..k {
        res = res * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    res
}

/// `x^e` with the convention `x^0 = 1` for every x (including 0).
pub fn rational_pow(x: &BigRational, e: u64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    if x.is_zero() {
        return BigRational::zero();
    }
    let e = u32::try_from(e).expect("exponent fits u32");
    BigRational::new(Pow::pow(x.numer(), e), Pow::pow(x.denom(), e))
}

/// Parses `a/b`, an integer, or a plain decimal like `0.25`, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::input(format!("cannot parse `{s}` as a rational"));
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| bad())?;
        let den: BigInt = b.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::input("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_digits = int.strip_prefix('-').unwrap_or(int);
        let int_part: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| bad())?
        };
        let scale = Pow::pow(&BigInt::from(10), frac.len() as u32);
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let mut num = int_part * &scale + frac_part;
        if neg {
            num = -num;
        }
        return Ok(BigRational::new(num, scale));
    }
    let num: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from(num))
}

/// Positional or scientific decimal rendering with `sig` significant digits.
pub fn format_decimal(x: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.numer().abs();
    let b = x.denom().clone();
    let ten = BigInt::from(10);

    // Decimal exponent: the e with 10^e <= a/b < 10^{e+1}.
    let cmp_pow = |e: i64| -> std::cmp::Ordering {
        if e >= 0 {
            a.cmp(&(&b * Pow::pow(&ten, e as u32)))
        } else {
            (&a * Pow::pow(&ten, (-e) as u32)).cmp(&b)
        }
    };
    let mut e = a.to_string().len() as i64 - b.to_string().len() as i64;
    while cmp_pow(e) == std::cmp::Ordering::Less {
        e -= 1;
    }
    while cmp_pow(e + 1) != std::cmp::Ordering::Less {
        e += 1;
    }

    // Round a/b * 10^{sig-1-e} half-up to an integer with `sig` digits.
    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (&a * Pow::pow(&ten, shift as u32), b)
    } else {
        (a.clone(), &b * Pow::pow(&ten, (-shift) as u32))
    };
    let mut q = (BigInt::from(2) * num + &den) / (BigInt::from(2) * den);
    let mut digits = q.to_string();
    if digits.len() > sig {
        // rounding carried into an extra digit (all-nines case)
        e += 1;
        q /= &ten;
        digits = q.to_string();
    }
    let sign = if neg { "-" } else { "" };
    if e < -4 || e >= sig as i64 {
        let mantissa = if digits.len() > 1 {
            format!("{}.{}", &digits[..1], &digits[1..])
        } else {
            digits
        };
        format!("{sign}{mantissa}e{e}")
    } else if e >= 0 {
        let e = e as usize;
        if e + 1 >= digits.len() {
            format!("{sign}{}{}", digits, "0".repeat(e + 1 - digits.len()))
        } else {
            format!("{sign}{}.{}", &digits[..=e], &digits[e + 1..])
        }
    } else {
        format!("{sign}0.{}{}", "0".repeat((-e - 1) as usize), digits)
    }
}

// ---------------------------------------------------------------------------
// The G(n,p) recurrence
// ---------------------------------------------------------------------------

/// Memoized table of R(i, p): the probability that in a directed G(i, p)
/// graph every vertex has a path to a fixed target vertex.
///
/// R(n, p) = 1 - sum_{i=1}^{n-1} C(n-1, i-1) (1-p)^{i(n-i)} R(i, p).
pub struct RnpTable {
    p: BigRational,
    q: BigRational,
    values: Vec<BigRational>,
}

impl RnpTable {
    pub fn new(p: BigRational) -> Result<Self> {
        if p.is_negative() || p > BigRational::one() {
            return Err(Error::input(format!("p = {p} outside [0, 1]")));
        }
        let q = BigRational::one() - &p;
        Ok(RnpTable {
            p,
            q,
            values: vec![BigRational::one()],
        })
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    /// R(n, p), extending the table as needed.
    pub fn value(&mut self, n: usize) -> Result<BigRational> {
        if n == 0 {
            return Err(Error::input("R(n, p) needs n >= 1"));
        }
        while self.values.len() < n {
            let m = self.values.len() + 1;
            let mut sum = BigRational::zero();
            for i in 1..m {
                let exp = (i * (m - i)) as u64;
                let term = BigRational::from(binomial(m - 1, i - 1))
                    * rational_pow(&self.q, exp)
                    * &self.values[i - 1];
                sum += term;
            }
            self.values.push(BigRational::one() - sum);
        }
        Ok(self.values[n - 1].clone())
    }
}

/// One-shot evaluation of R(n, p).
pub fn r_np_exact(n: usize, p: &BigRational) -> Result<BigRational> {
    RnpTable::new(p.clone())?.value(n)
}

/// Closed-form tail term t_i = C(n-1, i-1) (1-p)^{i(n-i)}, 1 <= i <= n-1.
pub fn t_term(n: usize, p: &BigRational, i: usize) -> Result<BigRational> {
    if n < 2 || i == 0 || i > n - 1 {
        return Err(Error::input(format!(
            "t_i needs 1 <= i <= n-1, got i={i}, n={n}"
        )));
    }
    let q = BigRational::one() - p;
    Ok(BigRational::from(binomial(n - 1, i - 1)) * rational_pow(&q, (i * (n - i)) as u64))
}

/// g_i = C(n, i) (1-p)^{i(n-i)} = t_i + t_{n-i}, 1 <= i <= floor(n/2).
pub fn g_term(n: usize, p: &BigRational, i: usize) -> Result<BigRational> {
    if n < 2 || i == 0 || i > n / 2 {
        return Err(Error::input(format!(
            "g_i needs 1 <= i <= n/2, got i={i}, n={n}"
        )));
    }
    let q = BigRational::one() - p;
    Ok(BigRational::from(binomial(n, i)) * rational_pow(&q, (i * (n - i)) as u64))
}

/// Independent oracle for R(n, p): enumerate all 2^{n(n-1)} labeled digraphs
/// on n vertices and add up the probability of those where every vertex
/// reaches `target`. Guarded to n <= 5.
pub fn brute_force_r_np(n: usize, p: &BigRational, target: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::input("n must be positive"));
    }
    if n > 5 {
        return Err(Error::capacity(format!(
            "brute force enumerates 2^(n(n-1)) graphs; n = {n} is too large"
        )));
    }
    if target >= n {
        return Err(Error::input(format!("target {target} out of range")));
    }
    if p.is_negative() || p > &BigRational::one() {
        return Err(Error::input(format!("p = {p} outside [0, 1]")));
    }

    let mut pairs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v {
                pairs.push((u, v));
            }
        }
    }
    let npairs = pairs.len();
    let full: u8 = ((1u16 << n) - 1) as u8;

    // Count qualifying graphs by edge count; the probability weight depends
    // only on the edge count.
    let mut counts = vec![0u64; npairs + 1];
    for mask in 0u32..(1u32 << npairs) {
        let mut adj = [0u8; 5];
        let mut m = mask;
        while m != 0 {
            let idx = m.trailing_zeros() as usize;
            let (u, v) = pairs[idx];
            adj[u] |= 1 << v;
            m &= m - 1;
        }
        let mut reached: u8 = 1 << target;
        loop {
            let mut next = reached;
            for (v, &a) in adj.iter().enumerate().take(n) {
                if a & reached != 0 {
                    next |= 1 << v;
                }
            }
            if next == reached {
                break;
            }
            reached = next;
        }
        if reached == full {
            counts[mask.count_ones() as usize] += 1;
        }
    }

    let q = BigRational::one() - p;
    let mut total = BigRational::zero();
    for (e, &c) in counts.iter().enumerate() {
        if c != 0 {
            total += BigRational::from(BigInt::from(c))
                * rational_pow(p, e as u64)
                * rational_pow(&q, (npairs - e) as u64);
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Constant out-degree model: compositions, R(k_1..k_x), alpha_k
// ---------------------------------------------------------------------------

/// Per-degree-class counts (k_1, ..., k_x) of a candidate reverse reachable
/// set, with t_i <= k_i <= a_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    counts: Vec<usize>,
}

impl Composition {
    pub fn new(spec: &DegreeSpec, counts: Vec<usize>) -> Result<Self> {
        if counts.len() != spec.x() {
            return Err(Error::input(format!(
                "composition has {} classes, spec has {}",
                counts.len(),
                spec.x()
            )));
        }
        for (i, e) in spec.entries().iter().enumerate() {
            if counts[i] < e.targets || counts[i] > e.count {
                return Err(Error::input(format!(
                    "k_{} = {} outside [{}, {}]",
                    i + 1,
                    counts[i],
                    e.targets,
                    e.count
                )));
            }
        }
        Ok(Composition { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn k(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Visits every composition with total k in lexicographic order, without
/// materializing the list.
pub fn for_each_composition(spec: &DegreeSpec, k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(
        spec: &DegreeSpec,
        i: usize,
        remaining: usize,
        current: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if i == spec.x() {
            if remaining == 0 {
                visit(current);
            }
            return;
        }
        // Prune: the remaining classes must be able to absorb the rest.
        let e = spec.entries()[i];
        let min_rest: usize = spec.entries()[i + 1..].iter().map(|e| e.targets).sum();
        let max_rest: usize = spec.entries()[i + 1..].iter().map(|e| e.count).sum();
        let lo = e.targets.max(remaining.saturating_sub(max_rest));
        let hi = e.count.min(remaining.saturating_sub(min_rest));
        if lo > hi {
            return;
        }
        for k_i in lo..=hi {
            current.push(k_i);
            rec(spec, i + 1, remaining - k_i, current, visit);
            current.pop();
        }
    }
    let mut current = Vec::with_capacity(spec.x());
    rec(spec, 0, k, &mut current, &mut visit);
}

/// Every composition with total k, in lexicographic order.
pub fn compositions(spec: &DegreeSpec, k: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    for_each_composition(spec, k, |counts| {
        out.push(Composition {
            counts: counts.to_vec(),
        });
    });
    out
}

fn checked_choice_product(spec: &DegreeSpec, vertices: impl Iterator<Item = usize>) -> Result<u64> {
    let n = spec.n();
    let mut product: u64 = 1;
    for v in vertices {
        let c = binomial(n, spec.degree_of(v)).to_u64().unwrap_or(u64::MAX);
        product = product.saturating_mul(c);
        if product > ENUMERATION_GUARD {
            return Err(Error::capacity(format!(
                "joint neighbor-set enumeration exceeds {ENUMERATION_GUARD}"
            )));
        }
    }
    Ok(product)
}

/// All k-subsets of {0..n-1} as bitmasks (Gosper's hack), ascending.
fn k_subset_masks(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 63);
    if k == 0 {
        return vec![0];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut mask: u64 = (1 << k) - 1;
    let limit: u64 = 1 << n;
    while mask < limit {
        out.push(mask);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = r | (((mask ^ r) >> 2) / c);
    }
    out
}

/// Exact probability that every vertex of the canonical composition set S
/// (the first k_i ids of each degree class, which contain the canonical
/// targets) can reach a target via a path inside S.
///
/// Each vertex's neighbor set is uniform over the C(n, d_v) subsets of all n
/// vertices. Only a neighbor set's intersection with S matters, so the
/// enumeration walks intersection patterns weighted by the exact count of
/// outside completions; the weighted total equals the literal joint
/// enumeration. Edges out of targets are irrelevant (a path ends on first
/// target hit), so only non-target members of S are enumerated.
pub fn r_multi_exact(spec: &DegreeSpec, comp: &Composition) -> Result<BigRational> {
    let n = spec.n();
    let k = comp.k();
    let t = spec.t();
    if k == t {
        return Ok(BigRational::one());
    }
    if k > 63 {
        return Err(Error::capacity(format!(
            "set size {k} exceeds the 64-bit mask"
        )));
    }

    // Canonical S and its bit layout: class i occupies a contiguous block.
    let mut s_ids: Vec<usize> = Vec::with_capacity(k);
    let mut target_mask: u64 = 0;
    let mut nontargets: Vec<(usize, usize)> = Vec::new(); // (bit, degree)
    for (i, e) in spec.entries().iter().enumerate() {
        let offset = spec.class_offset(i);
        for j in 0..comp.counts()[i] {
            let bit = s_ids.len();
            s_ids.push(offset + j);
            if j < e.targets {
                target_mask |= 1 << bit;
            } else {
                nontargets.push((bit, e.degree));
            }
        }
    }
    checked_choice_product(spec, s_ids.iter().copied())?;
    let full_mask: u64 = (1 << k) - 1;

    // Intersection patterns per degree: (mask over S, number of neighbor
    // sets with exactly that intersection).
    let mut patterns_by_degree: std::collections::HashMap<usize, Vec<(u64, u64)>> =
        std::collections::HashMap::new();
    for &(_, d) in &nontargets {
        patterns_by_degree.entry(d).or_insert_with(|| {
            let mut pats = Vec::new();
            for j in 0..=d.min(k) {
                let outside = binomial(n - k, d - j).to_u64().unwrap_or(0);
                if outside == 0 {
                    continue;
                }
                for mask in k_subset_masks(k, j) {
                    pats.push((mask, outside));
                }
            }
            pats
        });
    }

    struct Ctx<'a> {
        nontargets: &'a [(usize, usize)],
        patterns: &'a std::collections::HashMap<usize, Vec<(u64, u64)>>,
        target_mask: u64,
        full_mask: u64,
        adj: Vec<u64>,
        qualifying: u64,
    }
    fn rec(ctx: &mut Ctx, idx: usize, weight: u64) {
        if idx == ctx.nontargets.len() {
            let mut reached = ctx.target_mask;
            loop {
                let mut next = reached;
                for (i, &(bit, _)) in ctx.nontargets.iter().enumerate() {
                    if next & (1 << bit) == 0 && ctx.adj[i] & reached != 0 {
                        next |= 1 << bit;
                    }
                }
                if next == reached {
                    break;
                }
                reached = next;
            }
            if reached == ctx.full_mask {
                ctx.qualifying += weight;
            }
            return;
        }
        let d = ctx.nontargets[idx].1;
        let npat = ctx.patterns[&d].len();
        for pi in 0..npat {
            let (mask, count) = ctx.patterns[&d][pi];
            ctx.adj[idx] = mask;
            rec(ctx, idx + 1, weight * count);
        }
    }
    let mut ctx = Ctx {
        nontargets: &nontargets,
        patterns: &patterns_by_degree,
        target_mask,
        full_mask,
        adj: vec![0; nontargets.len()],
        qualifying: 0,
    };
    rec(&mut ctx, 0, 1);

    let total: u64 = nontargets
        .iter()
        .map(|&(_, d)| binomial(n, d).to_u64().expect("guarded"))
        .product();
    Ok(BigRational::new(
        BigInt::from(ctx.qualifying),
        BigInt::from(total),
    ))
}

/// Exact probability that the reverse reachable set of the canonical target
/// set has size exactly k: the composition sum of
/// `prod_i C(a_i-t_i, k_i-t_i) (C(n-k,d_i)/C(n,d_i))^(a_i-k_i) R(k_1..k_x)`,
/// with factors of exponent zero read as 1.
pub fn alpha_k_exact(spec: &DegreeSpec, k: usize) -> Result<BigRational> {
    let n = spec.n();
    let t = spec.t();
    if k < t || k > n {
        return Err(Error::input(format!(
            "alpha_k needs t <= k <= n, got k = {k}"
        )));
    }
    checked_choice_product(spec, 0..n)?;

    let mut sum = BigRational::zero();
    for comp in compositions(spec, k) {
        let mut term = r_multi_exact(spec, &comp)?;
        for (i, e) in spec.entries().iter().enumerate() {
            let k_i = comp.counts()[i];
            term *= BigRational::from(binomial(e.count - e.targets, k_i - e.targets));
            if e.count != k_i {
                let ratio = BigRational::new(binomial(n - k, e.degree), binomial(n, e.degree));
                term *= rational_pow(&ratio, (e.count - k_i) as u64);
            }
        }
        sum += term;
    }
    Ok(sum)
}

/// Classifies every graph of the model by the size of the reverse reachable
/// set of the canonical targets, exactly. Returns (k, probability) for
/// t <= k <= n.
pub fn alpha_by_enumeration(spec: &DegreeSpec) -> Result<Vec<(usize, BigRational)>> {
    let n = spec.n();
    let t = spec.t();
    let total = checked_choice_product(spec, 0..n)?;
    if n > 63 {
        return Err(Error::capacity(format!(
            "vertex count {n} exceeds the 64-bit mask"
        )));
    }

    let mut target_mask: u64 = 0;
    for b in spec.canonical_targets() {
        target_mask |= 1 << b;
    }
    let subsets_by_degree: std::collections::HashMap<usize, Vec<u64>> = spec
        .entries()
        .iter()
        .map(|e| (e.degree, k_subset_masks(n, e.degree)))
        .collect();
    let per_vertex: Vec<&Vec<u64>> = (0..n)
        .map(|v| &subsets_by_degree[&spec.degree_of(v)])
        .collect();

    let mut counts: Vec<u64> = vec![0; n + 1];
    let mut choice = vec![0usize; n];
    let mut adj: Vec<u64> = per_vertex.iter().map(|s| s[0]).collect();
    loop {
        let mut reached = target_mask;
        loop {
            let mut next = reached;
            for (v, &a) in adj.iter().enumerate() {
                if next & (1 << v) == 0 && a & reached != 0 {
                    next |= 1 << v;
                }
            }
            if next == reached {
                break;
            }
            reached = next;
        }
        counts[reached.count_ones() as usize] += 1;

        // odometer
        let mut v = n;
        loop {
            if v == 0 {
                let total_big = BigInt::from(total);
                return Ok((t..=n)
                    .map(|k| {
                        (
                            k,
                            BigRational::new(BigInt::from(counts[k]), total_big.clone()),
                        )
                    })
                    .collect());
            }
            v -= 1;
            if choice[v] + 1 < per_vertex[v].len() {
                choice[v] += 1;
                adj[v] = per_vertex[v][choice[v]];
                break;
            }
            choice[v] = 0;
            adj[v] = per_vertex[v][0];
        }
    }
}

/// Per-k comparison of the composition-sum formula against full graph
/// enumeration, plus the total-mass identity.
pub struct Eq1Report {
    pub n: usize,
    pub t: usize,
    pub sum_formula: BigRational,
    /// (k, alpha_k by formula, alpha_k by enumeration)
    pub per_k: Vec<(usize, BigRational, BigRational)>,
    pub pass: bool,
}

impl Eq1Report {
    /// True iff the formula masses add up to exactly 1.
    pub fn mass_ok(&self) -> bool {
        self.sum_formula == BigRational::one()
    }
}

pub fn eq1_report(spec: &DegreeSpec) -> Result<Eq1Report> {
    let enumerated = alpha_by_enumeration(spec)?;
    let mut per_k = Vec::new();
    let mut sum = BigRational::zero();
    for (k, enum_alpha) in enumerated {
        let formula = alpha_k_exact(spec, k)?;
        sum += &formula;
        per_k.push((k, formula, enum_alpha));
    }
    let pass = sum == BigRational::one() && per_k.iter().all(|(_, f, e)| f == e);
    Ok(Eq1Report {
        n: spec.n(),
        t: spec.t(),
        sum_formula: sum,
        per_k,
        pass,
    })
}

/// True iff the total mass is exactly 1 and the formula alpha_k matches the
/// enumeration classification for every k.
pub fn verify_eq1(spec: &DegreeSpec) -> Result<bool> {
    Ok(eq1_report(spec)?.pass)
}
