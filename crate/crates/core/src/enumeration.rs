//! Circular layouts of `K_{m,n}` up to rotation and reflection.
//!
//! A layout is a binary necklace of length `m + n` with `m` ones (black =
//! `1`). Two layouts give the same circular drawing iff they lie in the
//! same orbit of the dihedral group `D_{m+n}`; each orbit is represented by
//! its lexicographically least member.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::drawings::CircularLayout;
use crate::error::{invalid, Error, Result};

/// Longest necklace the bit-packed enumerator handles.
pub const MAX_ENUM_LEN: usize = 62;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecklaceClass {
    pub canonical: String,
    /// Number of distinct arrangements in the orbit.
    pub orbit_size: usize,
}

impl NecklaceClass {
    pub fn layout(&self) -> CircularLayout {
        CircularLayout::from_bitstring(&self.canonical).expect("canonical strings are binary")
    }
}

/// Lexicographic minimum over all rotations of `s` and of its reversal.
pub fn canonical_form(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let len = chars.len();
    let reversed: Vec<char> = chars.iter().rev().copied().collect();
    let mut best = chars.clone();
    for base in [&chars, &reversed] {
        for r in 0..len {
            let candidate = base[r..].iter().chain(&base[..r]);
            if candidate.clone().lt(best.iter()) {
                best = candidate.copied().collect();
            }
        }
    }
    best.into_iter().collect()
}

/// Bit-packed necklace: position 0 is the most significant of `len` bits,
/// so numeric order is lexicographic order.
#[derive(Copy, Clone)]
struct Packed {
    len: u32,
    mask: u64,
}

impl Packed {
    fn new(len: usize) -> Self {
        Packed { len: len as u32, mask: if len == 64 { u64::MAX } else { (1u64 << len) - 1 } }
    }

    /// String rotation `s[r..] + s[..r]`.
    fn rotate(&self, x: u64, r: u32) -> u64 {
        if r == 0 {
            x
        } else {
            ((x << r) | (x >> (self.len - r))) & self.mask
        }
    }

    fn reverse(&self, x: u64) -> u64 {
        x.reverse_bits() >> (64 - self.len)
    }

    fn images(&self, x: u64) -> impl Iterator<Item = u64> + '_ {
        let rev = self.reverse(x);
        (0..self.len).flat_map(move |r| [self.rotate(x, r), self.rotate(rev, r)])
    }

    fn canonical(&self, x: u64) -> u64 {
        self.images(x).min().expect("non-empty necklace")
    }

    fn orbit_size(&self, x: u64) -> usize {
        let mut imgs: Vec<u64> = self.images(x).collect();
        imgs.sort_unstable();
        imgs.dedup();
        imgs.len()
    }

    fn to_string(self, x: u64) -> String {
        (0..self.len).map(|p| if x >> (self.len - 1 - p) & 1 == 1 { '1' } else { '0' }).collect()
    }
}

/// All `m`-subsets of `len` bits in increasing numeric order (Gosper).
fn combinations(len: usize, m: usize) -> impl Iterator<Item = u64> {
    let first = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
    let limit = 1u128 << len;
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let x = next?;
        next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x.wrapping_add(c);
            let y = (((r ^ x) >> 2) / c) | r;
            ((y as u128) < limit && r != 0).then_some(y)
        };
        Some(x)
    })
}

/// One [`NecklaceClass`] per `D_{m+n}` orbit, in lexicographic order of the
/// canonical strings.
pub fn enumerate_classes(m: usize, n: usize) -> Result<impl Iterator<Item = NecklaceClass>> {
    if m == 0 || n == 0 {
        return Err(invalid("m and n must be positive"));
    }
    let len = m + n;
    if len > MAX_ENUM_LEN {
        return Err(Error::LimitExceeded(format!("m + n = {len} exceeds {MAX_ENUM_LEN}")));
    }
    let packed = Packed::new(len);
    Ok(combinations(len, m)
        .filter(move |&x| packed.canonical(x) == x)
        .map(move |x| NecklaceClass { canonical: packed.to_string(x), orbit_size: packed.orbit_size(x) }))
}

/// Canonical layouts of `K_{m,n}`, black and white vertices numbered
/// clockwise from position 0.
pub fn enumerate_layouts(m: usize, n: usize) -> Result<impl Iterator<Item = CircularLayout>> {
    Ok(enumerate_classes(m, n)?.map(|c| c.layout()))
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form number of circular drawings of `K_{m,n}` (orbits of
/// `D_{m+n}` on the `C(m+n, m)` arrangements).
///
/// With `d = gcd(m, n)` and `o(j)` the additive order of `j` mod `d`, the
/// rotation part is `sum_{j<d} C((m+n)/o(j), m/o(j))`; the reflection part
/// depends on the parities of `m` and `n`. The printed case list has no
/// `m` even / `n` odd row, so that case is evaluated with `m` and `n`
/// swapped.
pub fn count_formula(m: usize, n: usize) -> Result<u128> {
    if m == 0 || n == 0 {
        return Err(invalid("m and n must be positive"));
    }
    let (m, n) = if m.is_multiple_of(2) && !n.is_multiple_of(2) { (n, m) } else { (m, n) };
    let total = m + n;
    let d = m.gcd(&n);
    let rotations: BigUint = (0..d)
        .map(|j| {
            let order = d / j.gcd(&d);
            binomial(total / order, m / order)
        })
        .sum();
    let reflections = match (m % 2, n % 2) {
        (0, 0) => {
            BigUint::from(total / 2)
                * (binomial(total / 2, n / 2) + binomial((total - 2) / 2, m / 2) + binomial((total - 2) / 2, n / 2))
        }
        (1, 0) => BigUint::from(total) * binomial((total - 1) / 2, n / 2),
        _ => BigUint::from(total) * binomial((total - 2) / 2, (m - 1) / 2),
    };
    let (count, rem) = (rotations + reflections).div_rem(&BigUint::from(2 * total));
    debug_assert!(rem.is_zero());
    count.to_u128().ok_or(Error::Overflow("count_formula"))
}
