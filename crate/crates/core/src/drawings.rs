//! Circular-model book drawings and exact crossing counts.
//!
//! Vertices are identified by colour and index ([`Vertex`]); where they sit
//! on the spine is recorded separately in a [`CircularLayout`]. A
//! [`BookDrawing`] adds a page for each of the `m * n` edges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Black(usize),
    White(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Black(i) => write!(f, "b{i}"),
            Vertex::White(j) => write!(f, "w{j}"),
        }
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("bad vertex token {s:?}"));
        let (tag, digits) = s.split_at_checked(1).ok_or_else(bad)?;
        let idx: usize = digits.parse().map_err(|_| bad())?;
        match tag {
            "b" => Ok(Vertex::Black(idx)),
            "w" => Ok(Vertex::White(idx)),
            _ => Err(bad()),
        }
    }
}

/// An edge of `K_{m,n}`, always written black endpoint first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub black: usize,
    pub white: usize,
}

impl Edge {
    pub fn new(black: usize, white: usize) -> Self {
        Edge { black, white }
    }

    fn shares_endpoint(&self, other: &Edge) -> bool {
        self.black == other.black || self.white == other.white
    }
}

/// Cyclic order of the `m` black and `n` white vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularLayout {
    seq: Vec<Vertex>,
    m: usize,
    n: usize,
    black_pos: Vec<usize>,
    white_pos: Vec<usize>,
}

impl CircularLayout {
    pub fn new(m: usize, n: usize, seq: Vec<Vertex>) -> Result<Self> {
        if seq.len() != m + n {
            return Err(Error::Malformed(format!("order has {} vertices, expected {}", seq.len(), m + n)));
        }
        let mut black_pos = vec![usize::MAX; m];
        let mut white_pos = vec![usize::MAX; n];
        for (pos, v) in seq.iter().enumerate() {
            let slot = match *v {
                Vertex::Black(i) if i < m => &mut black_pos[i],
                Vertex::White(j) if j < n => &mut white_pos[j],
                _ => return Err(Error::Malformed(format!("vertex {v} out of range"))),
            };
            if *slot != usize::MAX {
                return Err(Error::Malformed(format!("vertex {v} repeated")));
            }
            *slot = pos;
        }
        Ok(CircularLayout { seq, m, n, black_pos, white_pos })
    }

    /// Builds a layout from a colour pattern (`true` = black), numbering
    /// each colour clockwise from position 0.
    pub fn from_pattern(pattern: &[bool]) -> Self {
        let (mut b, mut w) = (0, 0);
        let seq = pattern
            .iter()
            .map(|&black| {
                if black {
                    b += 1;
                    Vertex::Black(b - 1)
                } else {
                    w += 1;
                    Vertex::White(w - 1)
                }
            })
            .collect();
        CircularLayout::new(b, w, seq).expect("pattern numbering is a bijection")
    }

    /// Parses a `1`/`0` string (1 = black) as in [`CircularLayout::from_pattern`].
    pub fn from_bitstring(bits: &str) -> Result<Self> {
        let pattern = bits
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                _ => Err(invalid(format!("bitstring contains {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_pattern(&pattern))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn black_position(&self, i: usize) -> usize {
        self.black_pos[i]
    }

    pub fn white_position(&self, j: usize) -> usize {
        self.white_pos[j]
    }

    pub fn position(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(match v {
            Vertex::Black(i) => self.black_pos[i],
            Vertex::White(j) => self.white_pos[j],
        })
    }

    /// The colour pattern as a `1`/`0` string.
    pub fn bitstring(&self) -> String {
        self.seq.iter().map(|v| if matches!(v, Vertex::Black(_)) { '1' } else { '0' }).collect()
    }

    pub fn rotated(&self, by: usize) -> Self {
        let len = self.seq.len();
        let mut seq = self.seq.clone();
        if len > 0 {
            seq.rotate_left(by % len);
        }
        CircularLayout::new(self.m, self.n, seq).expect("rotation preserves validity")
    }

    pub fn reflected(&self) -> Self {
        let mut seq = self.seq.clone();
        seq.reverse();
        CircularLayout::new(self.m, self.n, seq).expect("reflection preserves validity")
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        match v {
            Vertex::Black(i) if i < self.m => Ok(()),
            Vertex::White(j) if j < self.n => Ok(()),
            _ => Err(invalid(format!("vertex {v} not in K_{{{},{}}}", self.m, self.n))),
        }
    }

    fn check_edge(&self, e: Edge) -> Result<()> {
        self.check_vertex(Vertex::Black(e.black))?;
        self.check_vertex(Vertex::White(e.white))
    }

    fn chord(&self, e: Edge) -> (usize, usize) {
        let a = self.black_pos[e.black];
        let b = self.white_pos[e.white];
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Crossing test for edges already known to be valid.
    pub(crate) fn chords_cross(&self, e1: Edge, e2: Edge) -> bool {
        if e1.shares_endpoint(&e2) {
            return false;
        }
        let (a, b) = self.chord(e1);
        let inside = |p: usize| a < p && p < b;
        inside(self.black_pos[e2.black]) != inside(self.white_pos[e2.white])
    }
}

/// A layout plus a page index in `0..k` for every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BookDrawing {
    layout: CircularLayout,
    k: usize,
    // indexed by black * n + white
    pages: Vec<usize>,
}

impl BookDrawing {
    pub fn new(layout: CircularLayout, k: usize, pages: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(invalid("page count must be at least 1"));
        }
        let edges = layout.m * layout.n;
        if pages.len() != edges {
            return Err(Error::Malformed(format!("{} page entries for {} edges", pages.len(), edges)));
        }
        if let Some(idx) = pages.iter().position(|&p| p >= k) {
            return Err(Error::Malformed(format!("edge {} on page {} but k = {}", idx, pages[idx], k)));
        }
        Ok(BookDrawing { layout, k, pages })
    }

    pub fn from_fn(layout: CircularLayout, k: usize, mut page_of: impl FnMut(Edge) -> usize) -> Result<Self> {
        let n = layout.n;
        let pages = (0..layout.m * n).map(|idx| page_of(Edge::new(idx / n, idx % n))).collect();
        Self::new(layout, k, pages)
    }

    pub fn single_page(layout: CircularLayout) -> Self {
        let edges = layout.m * layout.n;
        BookDrawing { layout, k: 1, pages: vec![0; edges] }
    }

    pub fn layout(&self) -> &CircularLayout {
        &self.layout
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.layout.m
    }

    pub fn n(&self) -> usize {
        self.layout.n
    }

    pub fn page(&self, e: Edge) -> usize {
        self.pages[e.black * self.layout.n + e.white]
    }

    /// Page indices in edge order `black * n + white`.
    pub fn pages(&self) -> &[usize] {
        &self.pages
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        let n = self.layout.n;
        self.pages.iter().enumerate().map(move |(idx, &p)| (Edge::new(idx / n, idx % n), p))
    }

    /// Same drawing on a different spine order over the same vertex set.
    pub fn with_layout(&self, layout: CircularLayout) -> Result<Self> {
        if layout.m != self.layout.m || layout.n != self.layout.n {
            return Err(invalid("layout has different part sizes"));
        }
        Ok(BookDrawing { layout, k: self.k, pages: self.pages.clone() })
    }

    /// Renames page `p` to `perm[p]`.
    pub fn with_permuted_pages(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.k];
        if perm.len() != self.k || !perm.iter().all(|&p| p < self.k && !std::mem::replace(&mut seen[p], true)) {
            return Err(invalid("not a permutation of the pages"));
        }
        let pages = self.pages.iter().map(|&p| perm[p]).collect();
        Ok(BookDrawing { layout: self.layout.clone(), k: self.k, pages })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DrawingFile::from(self)).expect("drawing serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&DrawingFile::from(self)).expect("drawing serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DrawingFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        file.try_into()
    }
}

/// On-disk form of a [`BookDrawing`].
#[derive(Serialize, Deserialize)]
struct DrawingFile {
    m: usize,
    n: usize,
    k: usize,
    order: Vec<String>,
    edges: Vec<(usize, usize, usize)>,
}

impl From<&BookDrawing> for DrawingFile {
    fn from(d: &BookDrawing) -> Self {
        DrawingFile {
            m: d.m(),
            n: d.n(),
            k: d.k,
            order: d.layout.seq.iter().map(|v| v.to_string()).collect(),
            edges: d.edges().map(|(e, p)| (e.black, e.white, p)).collect(),
        }
    }
}

impl TryFrom<DrawingFile> for BookDrawing {
    type Error = Error;

    fn try_from(f: DrawingFile) -> Result<Self> {
        let seq = f.order.iter().map(|s| s.parse()).collect::<Result<Vec<Vertex>>>()?;
        let layout = CircularLayout::new(f.m, f.n, seq)?;
        if f.k == 0 {
            return Err(Error::Malformed("k must be at least 1".into()));
        }
        let mut pages = vec![usize::MAX; f.m * f.n];
        for &(i, j, p) in &f.edges {
            if i >= f.m || j >= f.n {
                return Err(Error::Malformed(format!("edge [{i}, {j}] out of range")));
            }
            if p >= f.k {
                return Err(Error::Malformed(format!("edge [{i}, {j}] on page {p}, k = {}", f.k)));
            }
            let slot = &mut pages[i * f.n + j];
            if *slot != usize::MAX {
                return Err(Error::Malformed(format!("duplicate edge [{i}, {j}]")));
            }
            *slot = p;
        }
        if let Some(idx) = pages.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Malformed(format!("missing edge [{}, {}]", idx / f.n, idx % f.n)));
        }
        BookDrawing::new(layout, f.k, pages)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub total: u64,
    pub per_page: Vec<u64>,
}

/// Two chords cross iff their four endpoints are distinct and interleave
/// around the circle.
pub fn edges_cross(layout: &CircularLayout, e1: Edge, e2: Edge) -> Result<bool> {
    layout.check_edge(e1)?;
    layout.check_edge(e2)?;
    Ok(layout.chords_cross(e1, e2))
}

/// Counts crossing pairs on each page in `O(E log(m + n))`.
///
/// Chords are normalised to `(a, b)` with `a < b` and swept by `a`; an
/// earlier chord `(a', b')` crosses `(a, b)` iff `a' < a < b' < b`, counted
/// with a Fenwick tree over the right endpoints.
pub fn count_crossings(d: &BookDrawing) -> Result<CrossingReport> {
    let layout = &d.layout;
    let mut by_page: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d.k];
    for (e, p) in d.edges() {
        by_page[p].push(layout.chord(e));
    }
    let mut per_page = Vec::with_capacity(d.k);
    let mut tree = Fenwick::new(layout.len());
    for mut chords in by_page {
        chords.sort_unstable();
        tree.clear();
        let mut count: u64 = 0;
        let mut start = 0;
        while start < chords.len() {
            let a = chords[start].0;
            let end = start + chords[start..].iter().take_while(|c| c.0 == a).count();
            for &(_, b) in &chords[start..end] {
                // right endpoints strictly inside (a, b)
                let inside = tree.prefix(b) - tree.prefix(a + 1);
                count = count.checked_add(inside).ok_or(Error::Overflow("count_crossings"))?;
            }
            for &(_, b) in &chords[start..end] {
                tree.add(b);
            }
            start = end;
        }
        per_page.push(count);
    }
    let total =
        per_page.iter().try_fold(0u64, |acc, &c| acc.checked_add(c)).ok_or(Error::Overflow("count_crossings"))?;
    Ok(CrossingReport { total, per_page })
}

struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(len: usize) -> Self {
        Fenwick { tree: vec![0; len + 1] }
    }

    fn clear(&mut self) {
        self.tree.iter_mut().for_each(|x| *x = 0);
    }

    fn add(&mut self, pos: usize) {
        let mut i = pos + 1;
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of inserted positions `< end`.
    fn prefix(&self, end: usize) -> u64 {
        let mut i = end.min(self.tree.len() - 1);
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }
}

/// Number of edges at white vertex `w` on each page.
pub fn page_loads(d: &BookDrawing, w: usize) -> Result<Vec<usize>> {
    if w >= d.n() {
        return Err(invalid(format!("white vertex {w} out of range (n = {})", d.n())));
    }
    let mut loads = vec![0; d.k];
    for b in 0..d.m() {
        loads[d.page(Edge::new(b, w))] += 1;
    }
    Ok(loads)
}

/// A crossing-free drawing of `K_{k+1,s}` where every white vertex has load
/// 2 on one page and load 1 on each of the others.
pub fn is_balanced_embedding(d: &BookDrawing) -> Result<bool> {
    if d.m() != d.k + 1 {
        return Err(invalid(format!("balance is defined for K_{{k+1,s}}; got m = {}, k = {}", d.m(), d.k)));
    }
    for w in 0..d.n() {
        let loads = page_loads(d, w)?;
        let ones = loads.iter().filter(|&&l| l == 1).count();
        let twos = loads.iter().filter(|&&l| l == 2).count();
        if ones != d.k - 1 || twos != 1 {
            return Ok(false);
        }
    }
    Ok(count_crossings(d)?.total == 0)
}
