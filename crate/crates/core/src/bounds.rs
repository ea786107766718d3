//! Closed-form values and bounds for `k`-page crossing numbers of
//! `K_{m,n}`, with a scan that cross-checks lower against upper bounds.
//!
//! Everything is exact integer or rational arithmetic except the terms in
//! `k^{7/4}`. Those use a rational over-approximation of `k^{7/4}` (ceiling
//! at 10^-9 resolution), which can only shrink the `main2` lower bound;
//! [`nonembeddable_width`] is computed exactly by integer comparison.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::constructions::{balanced_embedding, blowup};
use crate::drawings::count_crossings;
use crate::error::{invalid, Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Zarankiewicz,
    Riskin,
    /// Turán-complement lower bound with `s = floor((k+1)^2/4)`, `k <= 6`.
    TuranExact,
    /// Turán-complement lower bound with `s = nonembeddable_width(k) - 1`.
    TuranWidth,
    Main1,
    Main2Lower,
    Main2Upper,
    SssvEven,
    GeneralLower,
    Upp1,
    /// Cluster blow-up count `q C(t+1,2) + (l-q) C(t,2)`, any `k`.
    BlowupFormula,
    /// Crossings of the constructed blow-up drawing.
    BlowupDrawing,
    NonembeddableWidth,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::Zarankiewicz => "zarankiewicz",
            Formula::Riskin => "riskin",
            Formula::TuranExact => "turan_exact",
            Formula::TuranWidth => "turan_width",
            Formula::Main1 => "main1",
            Formula::Main2Lower => "main2_lower",
            Formula::Main2Upper => "main2_upper",
            Formula::SssvEven => "sssv_even",
            Formula::GeneralLower => "general_lower",
            Formula::Upp1 => "upp1",
            Formula::BlowupFormula => "blowup_formula",
            Formula::BlowupDrawing => "blowup_drawing",
            Formula::NonembeddableWidth => "nonembeddable_width",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of one bound evaluation; derived quantities are always
/// recomputed from `k`, `m`, `n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BoundQuery {
    pub k: u64,
    pub m: u64,
    pub n: u64,
}

impl BoundQuery {
    pub fn new(k: u64, m: u64, n: u64) -> Self {
        BoundQuery { k, m, n }
    }

    /// `floor((k+1)^2 / 4)`.
    pub fn ell(&self) -> u64 {
        (self.k + 1) * (self.k + 1) / 4
    }

    /// `n mod ell`.
    pub fn q(&self) -> u64 {
        self.n % self.ell()
    }

    /// `m mod k`.
    pub fn r(&self) -> u64 {
        self.m % self.k
    }

    /// `n mod k`.
    pub fn s_mod(&self) -> u64 {
        self.n % self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub value: BigRational,
    /// The hypotheses of the source result hold for these parameters.
    pub valid: bool,
    pub source: Formula,
}

impl BoundValue {
    fn integer(value: u128, source: Formula) -> Self {
        BoundValue { value: BigRational::from_integer(BigInt::from(value)), valid: true, source }
    }
}

fn checked(op: Option<u128>, what: &'static str) -> Result<u128> {
    op.ok_or(Error::Overflow(what))
}

fn choose2(x: u128) -> Result<u128> {
    Ok(checked(x.checked_mul(x.saturating_sub(1)), "choose2")? / 2)
}

/// `floor(m/2) floor((m-1)/2) floor(n/2) floor((n-1)/2)`.
pub fn zarankiewicz(m: u64, n: u64) -> Result<u128> {
    let half = |x: u64| (x as u128 / 2, x.saturating_sub(1) as u128 / 2);
    let (a, b) = half(m);
    let (c, d) = half(n);
    checked(a.checked_mul(b).and_then(|x| x.checked_mul(c)).and_then(|x| x.checked_mul(d)), "zarankiewicz")
}

/// `n (m-1) (2mn - 3m - n) / 12`, valid when `m | n`.
pub fn riskin_value(m: u64, n: u64) -> Result<BoundValue> {
    if m == 0 || n == 0 {
        return Err(invalid("m and n must be positive"));
    }
    let (mb, nb) = (BigInt::from(m), BigInt::from(n));
    let numerator = &nb * (&mb - 1) * (BigInt::from(2) * &mb * &nb - BigInt::from(3) * &mb - &nb);
    Ok(BoundValue {
        value: BigRational::new(numerator, BigInt::from(12)),
        valid: n.is_multiple_of(m),
        source: Formula::Riskin,
    })
}

/// Edge count of the complement of the Turán graph `T(n, s)`:
/// `q C((n-q)/s + 1, 2) + (s - q) C((n-q)/s, 2)` with `q = n mod s`.
///
/// A lower bound on `nu_k(K_{k+1,n})` whenever `K_{k+1,s+1}` has no
/// `k`-page embedding; `k` only names the instance.
pub fn turan_lower(_k: u64, n: u64, s: u64) -> Result<u128> {
    if s == 0 {
        return Err(invalid("s must be at least 1"));
    }
    let (n, s) = (n as u128, s as u128);
    let q = n % s;
    let t = (n - q) / s;
    let big = checked(q.checked_mul(choose2(t + 1)?), "turan_lower")?;
    let small = checked((s - q).checked_mul(choose2(t)?), "turan_lower")?;
    checked(big.checked_add(small), "turan_lower")
}

/// Exact `nu_k(K_{k+1,n})` for `k` in `2..=6`.
pub fn main1_value(k: u64, n: u64) -> Result<u128> {
    if !(2..=6).contains(&k) {
        return Err(invalid(format!("exact value known only for k in 2..=6, got {k}")));
    }
    turan_lower(k, n, BoundQuery::new(k, k + 1, n).ell())
}

/// Smallest rational `p / 10^9` with `(p / 10^9)^4 >= k^7`.
fn k_seven_fourths_upper(k: u64) -> BigRational {
    let scale = BigUint::from(10u32).pow(9);
    let target = BigUint::from(k).pow(7) * scale.pow(4);
    let mut p = target.nth_root(4);
    if p.pow(4) < target {
        p += 1u32;
    }
    BigRational::new(BigInt::from(p), BigInt::from(scale))
}

/// `(2n^2 / (k^2 + 2000 k^{7/4}) - n, 2n^2 / k^2 + n / 2)`.
pub fn main2_bounds(k: u64, n: u64) -> Result<(BigRational, BigRational)> {
    if k == 0 || n == 0 {
        return Err(invalid("k and n must be positive"));
    }
    let kr = BigRational::from_integer(BigInt::from(k));
    let nr = BigRational::from_integer(BigInt::from(n));
    let two = BigRational::from_integer(BigInt::from(2));
    let denom = &kr * &kr + BigRational::from_integer(BigInt::from(2000)) * k_seven_fourths_upper(k);
    let lower = &two * &nr * &nr / denom - &nr;
    let upper = &two * &nr * &nr / (&kr * &kr) + &nr / &two;
    Ok((lower, upper))
}

/// `floor(n/(k(k-1))) * (n - (k/2)(k-1)(floor(n/(k(k-1))) - 1))` for even `k`,
/// evaluated exactly as printed.
pub fn sssv_lower_even(k: u64, n: u64) -> Result<i128> {
    if k == 0 || k % 2 == 1 {
        return Err(invalid(format!("k must be even and positive, got {k}")));
    }
    let (k, n) = (k as i128, n as i128);
    let f = n / (k * (k - 1));
    let inner = (k / 2)
        .checked_mul(k - 1)
        .and_then(|x| x.checked_mul(f - 1))
        .and_then(|x| n.checked_sub(x))
        .ok_or(Error::Overflow("sssv_lower_even"))?;
    f.checked_mul(inner).ok_or(Error::Overflow("sssv_lower_even"))
}

/// `C(m,2) C(n,2) / (3 (3 ceil(k/2) - 1)^2)`, valid for
/// `m >= 6 ceil(k/2) - 1` and `n >= max(6 ceil(k/2) - 1, 2 ceil(k/2)^2)`.
pub fn general_lower(k: u64, m: u64, n: u64) -> Result<BoundValue> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let r = k.div_ceil(2);
    let pairs = BigInt::from(choose2(m as u128)?) * BigInt::from(choose2(n as u128)?);
    let denom = BigInt::from(3 * (3 * r - 1) * (3 * r - 1));
    Ok(BoundValue {
        value: BigRational::new(pairs, denom),
        valid: m + 1 >= 6 * r && n + 1 >= 6 * r && n >= 2 * r * r,
        source: Formula::GeneralLower,
    })
}

/// `(m-r)(n-s)(m-k+r)(n-k+s) / (4k^2)` with `r = m mod k`, `s = n mod k`:
/// the crossings of the block-cyclic drawing.
pub fn upp1_bound(k: u64, m: u64, n: u64) -> Result<u128> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let q = BoundQuery::new(k, m, n);
    let (k, m, n, r, s) = (k as i128, m as i128, n as i128, q.r() as i128, q.s_mod() as i128);
    let numerator = (m - r)
        .checked_mul(n - s)
        .and_then(|x| x.checked_mul(m - k + r))
        .and_then(|x| x.checked_mul(n - k + s))
        .ok_or(Error::Overflow("upp1_bound"))?;
    let denom = 4 * k * k;
    debug_assert_eq!(numerator % denom, 0);
    // negative factors only occur next to a zero factor (m < k or n < k)
    Ok((numerator / denom).max(0) as u128)
}

/// `ceil(k^2/4 + 500 k^{7/4})`: smallest integer `w` with
/// `(4w - k^2)^4 >= 2000^4 k^7`, found by bisection.
pub fn nonembeddable_width(k: u64) -> Result<u128> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let k2 = BigInt::from(k) * BigInt::from(k);
    let target = BigInt::from(2000).pow(4) * BigInt::from(k).pow(7);
    let enough = |w: &BigInt| {
        let gap: BigInt = BigInt::from(4) * w - &k2;
        !gap.is_negative() && gap.pow(4) >= target
    };
    // k^{7/4} <= k^2, so this is an upper bound
    let mut hi = BigInt::from(501) * &k2 + 1;
    let mut lo = BigInt::zero();
    while lo < hi {
        let mid: BigInt = (&lo + &hi) / 2;
        if enough(&mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo.to_u128().ok_or(Error::Overflow("nonembeddable_width"))
}

/// One row of the `bounds` table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub k: u64,
    pub m: u64,
    pub n: u64,
    pub formula: Formula,
    /// Exact value, `p` or `p/q`.
    pub value: String,
    pub approx: f64,
    pub valid: bool,
}

impl BoundRow {
    fn new(query: BoundQuery, bound: &BoundValue) -> Self {
        BoundRow {
            k: query.k,
            m: query.m,
            n: query.n,
            formula: bound.source,
            value: bound.value.to_string(),
            approx: bound.value.to_f64().unwrap_or(f64::NAN),
            valid: bound.valid,
        }
    }
}

fn int_bound(value: u128, source: Formula, valid: bool) -> BoundValue {
    BoundValue { valid, ..BoundValue::integer(value, source) }
}

/// Every formula applicable to `K_{m,n}` with `k` pages. Lower and upper
/// bounds specific to `K_{k+1,n}` are marked invalid when `m != k + 1`.
pub fn evaluate_all(k: u64, m: u64, n: u64) -> Result<Vec<BoundRow>> {
    if k == 0 || m == 0 || n == 0 {
        return Err(invalid("k, m and n must be positive"));
    }
    let query = BoundQuery::new(k, m, n);
    let family = m == k + 1;
    let mut out = Vec::new();
    let mut push = |b: BoundValue| out.push(BoundRow::new(query, &b));

    push(int_bound(zarankiewicz(m, n)?, Formula::Zarankiewicz, k == 2));
    push(riskin_value(m, n).map(|b| BoundValue { valid: b.valid && k == 1, ..b })?);
    push(int_bound(upp1_bound(k, m, n)?, Formula::Upp1, true));
    push(general_lower(k, m, n)?);
    if (2..=6).contains(&k) {
        push(int_bound(turan_lower(k, n, query.ell())?, Formula::TuranExact, family));
        push(int_bound(main1_value(k, n)?, Formula::Main1, family));
    }
    let width = nonembeddable_width(k)?;
    push(int_bound(turan_lower(k, n, (width - 1) as u64)?, Formula::TuranWidth, family));
    push(int_bound(turan_lower(k, n, query.ell())?, Formula::BlowupFormula, family));
    if k.is_multiple_of(2) {
        let v = sssv_lower_even(k, n)?;
        push(BoundValue {
            value: BigRational::from_integer(BigInt::from(v)),
            valid: family,
            source: Formula::SssvEven,
        });
    }
    let (lower, upper) = main2_bounds(k, n)?;
    push(BoundValue { value: lower, valid: family, source: Formula::Main2Lower });
    push(BoundValue { value: upper, valid: family, source: Formula::Main2Upper });
    push(int_bound(width, Formula::NonembeddableWidth, true));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub k: u64,
    pub n: u64,
    pub lower: Formula,
    pub lower_value: String,
    pub upper: Formula,
    pub upper_value: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ScanReport {
    pub fn violations_excluding(&self, source: Formula) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.lower != source && v.upper != source)
    }
}

/// Lower and upper bounds on `nu_k(K_{k+1,n})` that apply at `(k, n)`.
fn bounds_for(k: u64, n: u64, with_drawings: bool) -> Result<(Vec<BoundValue>, Vec<BoundValue>)> {
    let query = BoundQuery::new(k, k + 1, n);
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    if (2..=6).contains(&k) {
        let exact = main1_value(k, n)?;
        lower.push(BoundValue::integer(turan_lower(k, n, query.ell())?, Formula::TuranExact));
        lower.push(BoundValue::integer(exact, Formula::Main1));
        upper.push(BoundValue::integer(exact, Formula::Main1));
    }
    let width = nonembeddable_width(k)?;
    lower.push(BoundValue::integer(turan_lower(k, n, (width - 1) as u64)?, Formula::TuranWidth));
    if k.is_multiple_of(2) {
        let v = sssv_lower_even(k, n)?;
        lower.push(BoundValue {
            value: BigRational::from_integer(BigInt::from(v)),
            valid: true,
            source: Formula::SssvEven,
        });
    }
    let general = general_lower(k, k + 1, n)?;
    if general.valid {
        lower.push(general);
    }
    let (l2, u2) = main2_bounds(k, n)?;
    lower.push(BoundValue { value: l2, valid: true, source: Formula::Main2Lower });
    upper.push(BoundValue { value: u2, valid: true, source: Formula::Main2Upper });
    upper.push(BoundValue::integer(turan_lower(k, n, query.ell())?, Formula::BlowupFormula));
    upper.push(BoundValue::integer(upp1_bound(k, k + 1, n)?, Formula::Upp1));
    if with_drawings && n >= query.ell() {
        let k_pages = usize::try_from(k).map_err(|_| invalid("k too large"))?;
        let n_whites = usize::try_from(n).map_err(|_| invalid("n too large"))?;
        let d = blowup(&balanced_embedding(k_pages)?, n_whites)?;
        upper.push(BoundValue::integer(count_crossings(&d)?.total as u128, Formula::BlowupDrawing));
    }
    Ok((lower, upper))
}

/// Compares every applicable lower bound with every upper bound on
/// `nu_k(K_{k+1,n})` over the given ranges and reports each pair with
/// lower > upper. With `with_drawings`, the blow-up drawing is built and
/// counted as an additional upper bound.
pub fn consistency_scan(
    k_range: RangeInclusive<u64>,
    n_range: RangeInclusive<u64>,
    with_drawings: bool,
) -> Result<ScanReport> {
    let mut report = ScanReport::default();
    for k in k_range {
        if k == 0 {
            continue;
        }
        for n in n_range.clone() {
            if n == 0 {
                continue;
            }
            let (lower, upper) = bounds_for(k, n, with_drawings)?;
            report.checked += 1;
            for lo in &lower {
                for up in &upper {
                    if lo.value > up.value {
                        report.violations.push(Violation {
                            k,
                            n,
                            lower: lo.source,
                            lower_value: lo.value.to_string(),
                            upper: up.source,
                            upper_value: up.value.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `x` as an exact rational, for comparisons in tests and callers.
pub fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `1 / k^2 * C(m,2) C(n,2)` as an exact rational.
pub fn pair_bound(k: u64, m: u64, n: u64) -> Result<BigRational> {
    let pairs = BigInt::from(choose2(m as u128)?) * BigInt::from(choose2(n as u128)?);
    Ok(BigRational::new(pairs, BigInt::from(k) * BigInt::from(k)))
}
