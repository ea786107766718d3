//! Explicit drawing families.
//!
//! * [`riskin_drawing`]: one-page drawings with the black vertices spread
//!   evenly among the white ones.
//! * [`balanced_embedding`]: crossing-free `k`-page drawings of
//!   `K_{k+1, floor((k+1)^2/4)}` in which every white vertex has load 2 on
//!   exactly one page.
//! * [`blowup`]: replaces each white vertex of a balanced embedding by a
//!   cluster of copies.
//! * [`block_cyclic`]: `k` black groups alternating with `k` white groups,
//!   group pair `(j, t)` drawn on page `j + t mod k`.

use crate::drawings::{count_crossings, is_balanced_embedding, BookDrawing, CircularLayout, Vertex};
use crate::error::{invalid, Error, Result};

/// White-block parameters of the balanced embedding for `k` pages.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BalancedParams {
    pub k: usize,
    /// Size of each white block.
    pub s: usize,
    /// Number of white blocks.
    pub t: usize,
}

impl BalancedParams {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        Ok(BalancedParams { k, s: k.div_ceil(2), t: (k + 2) / 2 })
    }

    pub fn black_count(&self) -> usize {
        self.s + self.t
    }

    pub fn white_count(&self) -> usize {
        self.s * self.t
    }

    /// White vertices of block `i` (taken mod `t`).
    fn block(&self, i: usize) -> std::ops::Range<usize> {
        let i = i % self.t;
        i * self.s..(i + 1) * self.s
    }
}

#[derive(Clone, Debug)]
pub struct RiskinDrawing {
    pub drawing: BookDrawing,
    /// `m` divides `n`, so the drawing attains the one-page optimum.
    pub even: bool,
}

/// One-page drawing of `K_{m,n}` with black vertex `i` followed clockwise
/// by `floor((i+1)n/m) - floor(in/m)` white vertices.
pub fn riskin_drawing(m: usize, n: usize) -> Result<RiskinDrawing> {
    if m == 0 || n == 0 {
        return Err(invalid("m and n must be positive"));
    }
    let mut seq = Vec::with_capacity(m + n);
    let mut next_white = 0;
    for i in 0..m {
        seq.push(Vertex::Black(i));
        let gap_end = (i + 1) * n / m;
        while next_white < gap_end {
            seq.push(Vertex::White(next_white));
            next_white += 1;
        }
    }
    let layout = CircularLayout::new(m, n, seq)?;
    Ok(RiskinDrawing { drawing: BookDrawing::single_page(layout), even: n.is_multiple_of(m) })
}

/// The balanced `k`-page embedding of `K_{s+t, st}`.
///
/// Spine order: `b_0 .. b_{s+t-1}` clockwise, with white block
/// `W_i = {w_{is} .. w_{is+s-1}}` inserted between `b_{s+i}` and
/// `b_{s+i+1}`. Black indices are taken mod `s+t`, block indices mod `t`,
/// and a white window `W[a : a+len-1]` wraps mod `st`.
///
/// Page `r < s`:
/// * `b_{s+i}` to `W_{t+r-i}` for `i = r+1 ..= t`;
/// * `b_i` to the `s` whites starting at `rs - i(s-1)` for `0 < i <= r`;
/// * `b_{r+1}` to `w_0 ..= w_r`.
///
/// Page `s <= r <= s+t-2`:
/// * `b_{s+i}` to `W_{r-s-i+1}` for `i = 0 ..= r-s+1`;
/// * `b_{s-i}` to the `s` whites starting at `(i+r-s+1)s - i` for
///   `0 < i < s-r+t-1`;
/// * `b_{r-t+1}` to `w_{st-t+r-s+1} ..= w_{st-1}`.
///
/// The result is checked before it is returned: every edge placed exactly
/// once, no crossings, balanced loads.
pub fn balanced_embedding(k: usize) -> Result<BookDrawing> {
    let params = BalancedParams::new(k)?;
    let BalancedParams { s, t, .. } = params;
    let blacks = params.black_count();
    let whites = params.white_count();

    let mut seq = Vec::with_capacity(blacks + whites);
    for b in 0..blacks {
        seq.push(Vertex::Black(b));
        if b >= s && b - s < t {
            seq.extend(params.block(b - s).map(Vertex::White));
        }
    }
    let layout = CircularLayout::new(blacks, whites, seq)?;

    let mut pages = vec![usize::MAX; blacks * whites];
    let mut place = |black: usize, white: usize, page: usize| -> Result<()> {
        let slot = &mut pages[(black % blacks) * whites + white % whites];
        if *slot != usize::MAX {
            return Err(Error::Construction(format!(
                "edge (b{}, w{}) placed on pages {} and {}",
                black % blacks,
                white % whites,
                *slot,
                page
            )));
        }
        *slot = page;
        Ok(())
    };

    for r in 0..s {
        for i in r + 1..=t {
            for w in params.block(t + r - i) {
                place(s + i, w, r)?;
            }
        }
        for i in 1..=r {
            let start = r * s - i * (s - 1);
            for w in start..start + s {
                place(i, w, r)?;
            }
        }
        for w in 0..=r {
            place(r + 1, w, r)?;
        }
    }
    for r in s..s + t - 1 {
        for i in 0..=r - s + 1 {
            for w in params.block(r - s + 1 - i) {
                place(s + i, w, r)?;
            }
        }
        for i in 1..(s + t - 1) - r {
            let start = (i + r - s + 1) * s - i;
            for w in start..start + s {
                place(s - i, w, r)?;
            }
        }
        // r - t + 1 >= s - t + 1 >= 0 since t <= s + 1
        for w in whites + r + 1 - t - s..whites {
            place(r + 1 - t, w, r)?;
        }
    }

    if let Some(idx) = pages.iter().position(|&p| p == usize::MAX) {
        return Err(Error::Construction(format!("edge (b{}, w{}) not placed", idx / whites, idx % whites)));
    }
    let drawing = BookDrawing::new(layout, k, pages)?;
    let crossings = count_crossings(&drawing)?.total;
    if crossings != 0 {
        return Err(Error::Construction(format!("{crossings} crossings for k = {k}")));
    }
    if !is_balanced_embedding(&drawing)? {
        return Err(Error::Construction(format!("unbalanced loads for k = {k}")));
    }
    Ok(drawing)
}

/// Expands a balanced embedding of `K_{k+1,l}` to `K_{k+1,n}`.
///
/// With `q = n mod l`, white vertices `0..q` become clusters of
/// `(n-q)/l + 1` copies and the rest clusters of `(n-q)/l`. Copies sit
/// clockwise right after one another at the original's position, are
/// numbered consecutively, and repeat its page for every edge.
pub fn blowup(base: &BookDrawing, n: usize) -> Result<BookDrawing> {
    if !is_balanced_embedding(base)? {
        return Err(invalid("blow-up needs a balanced embedding"));
    }
    let ell = base.n();
    if n < ell {
        return Err(invalid(format!("target n = {n} below base width {ell}")));
    }
    let q = n % ell;
    let size = (n - q) / ell;
    let cluster_len = |j: usize| if j < q { size + 1 } else { size };

    let mut first_copy = Vec::with_capacity(ell + 1);
    let mut source = Vec::with_capacity(n);
    for j in 0..ell {
        first_copy.push(source.len());
        source.extend(std::iter::repeat_n(j, cluster_len(j)));
    }

    let m = base.m();
    let mut seq = Vec::with_capacity(m + n);
    for &v in base.layout().seq() {
        match v {
            Vertex::Black(_) => seq.push(v),
            Vertex::White(j) => seq.extend((first_copy[j]..first_copy[j] + cluster_len(j)).map(Vertex::White)),
        }
    }
    let layout = CircularLayout::new(m, n, seq)?;
    let pages =
        (0..m).flat_map(|b| source.iter().map(move |&j| (b, j))).map(|(b, j)| base.pages()[b * ell + j]).collect();
    BookDrawing::new(layout, base.k(), pages)
}

/// Splits `total` into `groups` parts, the first `groups - total % groups`
/// of size `total / groups` and the rest one larger; returns the group of
/// each item.
fn group_of_each(total: usize, groups: usize) -> Vec<usize> {
    let small = total / groups;
    let larger_from = groups - total % groups;
    (0..groups).flat_map(|g| std::iter::repeat_n(g, if g < larger_from { small } else { small + 1 })).collect()
}

/// `k`-page drawing with spine order `B_0, W_0, B_1, W_1, ..., B_{k-1},
/// W_{k-1}` and every `B_j x W_t` edge on page `(j + t) mod k`.
pub fn block_cyclic(m: usize, n: usize, k: usize) -> Result<BookDrawing> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let black_group = group_of_each(m, k);
    let white_group = group_of_each(n, k);
    let mut seq = Vec::with_capacity(m + n);
    let (mut b, mut w) = (0, 0);
    for g in 0..k {
        while b < m && black_group[b] == g {
            seq.push(Vertex::Black(b));
            b += 1;
        }
        while w < n && white_group[w] == g {
            seq.push(Vertex::White(w));
            w += 1;
        }
    }
    let layout = CircularLayout::new(m, n, seq)?;
    BookDrawing::from_fn(layout, k, |e| (black_group[e.black] + white_group[e.white]) % k)
}
