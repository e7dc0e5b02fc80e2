//! Indexing objects for the two bases: standard `(n,n)` tableaux, perfect
//! matchings and noncrossing matchings (webs), and permutations of `[2n]`.
//!
//! All public interfaces use 1-based letters `1..=2n`.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported `n`. Tabloids are stored as `u64` bitmasks over `[2n]`.
pub const MAX_N: usize = 32;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidSize { n, max: MAX_N });
    }
    Ok(())
}

/// The `n`-th Catalan number `C(2n, n) / (n + 1)`, with `catalan(0) = 1`.
pub fn catalan(n: usize) -> BigUint {
    // C(k+1) = C(k) * 2(2k+1) / (k+2), exact at every step.
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

/// A bijection of `{1..=len}`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Self { images: (1..=len as u8).collect() }
    }

    /// `images[k]` is the image of the letter `k + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let len = images.len();
        if len > 2 * MAX_N {
            return Err(Error::InvalidPermutation(format!("length {len} too large")));
        }
        let mut seen = vec![false; len + 1];
        for &x in images {
            if x == 0 || x > len || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={len}")));
            }
            seen[x] = true;
        }
        Ok(Self { images: images.iter().map(|&x| x as u8).collect() })
    }

    /// The adjacent transposition `s_i = (i, i+1)` on `len` letters.
    pub fn adjacent(len: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= len {
            return Err(Error::InvalidGenerator { i, max: len.saturating_sub(1) });
        }
        let mut p = Self::identity(len);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// Product of disjoint cycles on consecutive letters, one per part:
    /// parts `[3, 1]` give `(1 2 3)(4)`. The standard representative of the
    /// conjugacy class with that cycle type.
    pub fn from_cycle_type(parts: &[usize]) -> Result<Self> {
        let len: usize = parts.iter().sum();
        if parts.contains(&0) {
            return Err(Error::InvalidPermutation("zero-length cycle".into()));
        }
        let mut images = Vec::with_capacity(len);
        let mut start = 1;
        for &p in parts {
            for k in 0..p {
                images.push(if k + 1 == p { start } else { start + k + 1 });
            }
            start += p;
        }
        Self::from_images(&images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `σ(letter)` for a 1-based letter.
    pub fn apply(&self, letter: usize) -> usize {
        self.images[letter - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x as usize == k + 1)
    }

    /// `self ∘ inner`, i.e. apply `inner` first.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation> {
        if self.len() != inner.len() {
            return Err(Error::SizeMismatch { expected: self.len(), found: inner.len() });
        }
        Ok(Permutation { images: inner.images.iter().map(|&x| self.images[x as usize - 1]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = (k + 1) as u8;
        }
        Permutation { images: inv }
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `+1` for even permutations, `-1` for odd.
    pub fn sign(&self) -> i32 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// A reduced word from bubble sort, in application order: for the
    /// returned `[i1, i2, ..., ik]`, `σ = s_ik ∘ ... ∘ s_i2 ∘ s_i1`, so acting
    /// by `σ` means acting by `s_i1` first.
    pub fn reduced_word(&self) -> Vec<usize> {
        // Swapping positions j, j+1 of the image list is right multiplication
        // by s_j; sorting to the identity gives σ ∘ s_j1 ∘ ... ∘ s_jk = id.
        let mut images = self.images.clone();
        let mut swaps = Vec::with_capacity(self.inversions());
        let len = images.len();
        for pass in 0..len {
            let mut swapped = false;
            for j in 0..len.saturating_sub(pass + 1) {
                if images[j] > images[j + 1] {
                    images.swap(j, j + 1);
                    swaps.push(j + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        swaps
    }

    /// Cycle lengths in nonincreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut parts = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut k = start;
            let mut length = 0;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k] as usize - 1;
                length += 1;
            }
            parts.push(length);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Tableaux
// ---------------------------------------------------------------------------

/// A filling of the `2 × n` shape by `1..=2n`, each letter once.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "[Vec<usize>; 2]", into = "[Vec<usize>; 2]")]
pub struct Tableau {
    rows: [Vec<usize>; 2],
}

impl Tableau {
    pub fn from_rows(top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        let n = top.len();
        if bottom.len() != n {
            return Err(Error::InvalidTableau(format!("rows have lengths {} and {}", n, bottom.len())));
        }
        check_n(n)?;
        let mut seen = vec![false; 2 * n + 1];
        for &x in top.iter().chain(&bottom) {
            if x == 0 || x > 2 * n || seen[x] {
                return Err(Error::InvalidTableau(format!("{top:?}/{bottom:?} is not a filling by 1..={}", 2 * n)));
            }
            seen[x] = true;
        }
        Ok(Self { rows: [top, bottom] })
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    /// Row 0 is the top row.
    pub fn row(&self, r: usize) -> &[usize] {
        &self.rows[r]
    }

    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.rows[row][col]
    }

    /// `(top, bottom)` entries of column `col`.
    pub fn column(&self, col: usize) -> (usize, usize) {
        (self.rows[0][col], self.rows[1][col])
    }

    pub fn is_standard(&self) -> bool {
        let rows_increase = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_increase = (0..self.n()).all(|j| self.rows[0][j] < self.rows[1][j]);
        rows_increase && cols_increase
    }

    /// Letter permutation: every entry `x` is replaced by `σ(x)`.
    pub fn permuted(&self, sigma: &Permutation) -> Result<Tableau> {
        if sigma.len() != 2 * self.n() {
            return Err(Error::SizeMismatch { expected: 2 * self.n(), found: sigma.len() });
        }
        let map = |r: &Vec<usize>| r.iter().map(|&x| sigma.apply(x)).collect::<Vec<_>>();
        Ok(Tableau { rows: [map(&self.rows[0]), map(&self.rows[1])] })
    }
}

impl TryFrom<[Vec<usize>; 2]> for Tableau {
    type Error = Error;

    fn try_from([top, bottom]: [Vec<usize>; 2]) -> Result<Self> {
        Tableau::from_rows(top, bottom)
    }
}

impl From<Tableau> for [Vec<usize>; 2] {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |r: &[usize]| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{}/{}", join(&self.rows[0]), join(&self.rows[1]))
    }
}

/// A tableau increasing along rows and down columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Tableau", into = "Tableau")]
pub struct StandardTableau(Tableau);

impl StandardTableau {
    pub fn from_rows(top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        Tableau::from_rows(top, bottom)?.try_into()
    }

    pub fn as_tableau(&self) -> &Tableau {
        &self.0
    }

    pub fn into_tableau(self) -> Tableau {
        self.0
    }
}

impl TryFrom<Tableau> for StandardTableau {
    type Error = Error;

    fn try_from(t: Tableau) -> Result<Self> {
        if t.is_standard() {
            Ok(StandardTableau(t))
        } else {
            Err(Error::NotStandard(t.to_string()))
        }
    }
}

impl From<StandardTableau> for Tableau {
    fn from(t: StandardTableau) -> Self {
        t.0
    }
}

impl Deref for StandardTableau {
    type Target = Tableau;

    fn deref(&self) -> &Tableau {
        &self.0
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The standard tableau with first row `1, 3, ..., 2n-1`.
pub fn t0(n: usize) -> Result<StandardTableau> {
    check_n(n)?;
    Ok(StandardTableau(Tableau { rows: [(1..=n).map(|i| 2 * i - 1).collect(), (1..=n).map(|i| 2 * i).collect()] }))
}

/// First-row sets of all standard tableaux, in canonical order.
///
/// A first row is a ballot word over `[2n]`: letter `k` is an opener when it
/// lies in the first row. The canonical order is reverse lexicographic on the
/// sorted first row, which is what a depth-first search that tries "closer"
/// before "opener" at every position produces.
fn ballot_first_rows(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, pos: usize, opened: usize, closed: usize, row: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos > 2 * n {
            out.push(row.clone());
            return;
        }
        if closed < opened {
            go(n, pos + 1, opened, closed + 1, row, out);
        }
        if opened < n {
            row.push(pos);
            go(n, pos + 1, opened + 1, closed, row, out);
            row.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, 0, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

fn complement(n: usize, first_row: &[usize]) -> Vec<usize> {
    (1..=2 * n).filter(|x| !first_row.contains(x)).collect()
}

/// All standard `(n,n)` tableaux; `t0(n)` comes first.
pub fn enumerate_syt(n: usize) -> Result<Vec<StandardTableau>> {
    check_n(n)?;
    Ok(ballot_first_rows(n)
        .into_iter()
        .map(|top| {
            let bottom = complement(n, &top);
            StandardTableau(Tableau { rows: [top, bottom] })
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Matchings
// ---------------------------------------------------------------------------

/// Indices `a < b < c < d` with `a~c` and `b~d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Crossing {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// A perfect matching on `[2n]` as a partner array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PerfectMatching {
    partner: Vec<u8>,
}

impl PerfectMatching {
    /// `partners[k]` is the letter matched with `k + 1`.
    pub fn from_partners(partners: &[usize]) -> Result<Self> {
        let size = partners.len();
        if size == 0 || !size.is_multiple_of(2) || size > 2 * MAX_N {
            return Err(Error::InvalidMatching(format!("bad size {size}")));
        }
        for (k, &p) in partners.iter().enumerate() {
            let i = k + 1;
            if p == 0 || p > size || p == i || partners[p - 1] != i {
                return Err(Error::InvalidMatching(format!("{partners:?} is not an involution without fixed points")));
            }
        }
        Ok(Self { partner: partners.iter().map(|&p| p as u8).collect() })
    }

    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut partners = vec![0; size];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > size || b > size || partners[a - 1] != 0 || partners[b - 1] != 0 {
                return Err(Error::InvalidMatching(format!("bad pair list {pairs:?} on [{size}]")));
            }
            partners[a - 1] = b;
            partners[b - 1] = a;
        }
        Self::from_partners(&partners)
    }

    /// Number of letters, `2n`.
    pub fn size(&self) -> usize {
        self.partner.len()
    }

    /// Number of pairs, `n`.
    pub fn order(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i - 1] as usize
    }

    pub fn partners(&self) -> Vec<usize> {
        self.partner.iter().map(|&p| p as usize).collect()
    }

    /// Pairs `(a, b)` with `a < b`, sorted by `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.size())
            .filter_map(|a| {
                let b = self.partner(a);
                (a < b).then_some((a, b))
            })
            .collect()
    }

    /// The smaller letter of each pair, ascending.
    pub fn openers(&self) -> Vec<usize> {
        self.pairs().into_iter().map(|(a, _)| a).collect()
    }

    pub fn crossing_pairs(&self) -> Vec<Crossing> {
        let mut out = Vec::new();
        for (a, c) in self.pairs() {
            for b in a + 1..c {
                let d = self.partner(b);
                if d > c {
                    out.push(Crossing { a, b, c, d });
                }
            }
        }
        out
    }

    /// The lexicographically smallest crossing quadruple, if any.
    pub fn first_crossing(&self) -> Option<Crossing> {
        for a in 1..=self.size() {
            let c = self.partner(a);
            if c < a {
                continue;
            }
            for b in a + 1..c {
                let d = self.partner(b);
                if d > c {
                    return Some(Crossing { a, b, c, d });
                }
            }
        }
        None
    }

    pub fn is_noncrossing(&self) -> bool {
        self.first_crossing().is_none()
    }

    /// Copy with each given pair `(x, y)` set to `x~y`. The pairs must cover
    /// exactly the letters of the pairs they replace.
    pub(crate) fn rematched(&self, pairs: [(usize, usize); 2]) -> PerfectMatching {
        let mut partner = self.partner.clone();
        for (x, y) in pairs {
            partner[x - 1] = y as u8;
            partner[y - 1] = x as u8;
        }
        PerfectMatching { partner }
    }
}

impl TryFrom<Vec<usize>> for PerfectMatching {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::from_partners(&v)
    }
}

impl From<PerfectMatching> for Vec<usize> {
    fn from(m: PerfectMatching) -> Self {
        m.partners()
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}~{b}")?;
        }
        write!(f, "}}")
    }
}

/// A noncrossing perfect matching.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "PerfectMatching", into = "PerfectMatching")]
pub struct Web(PerfectMatching);

impl Web {
    pub fn new(m: PerfectMatching) -> Result<Self> {
        match m.first_crossing() {
            None => Ok(Web(m)),
            Some(Crossing { a, b, c, d }) => Err(Error::Crossing { a, b, c, d }),
        }
    }

    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(PerfectMatching::from_pairs(size, pairs)?)
    }

    pub fn from_partners(partners: &[usize]) -> Result<Self> {
        Self::new(PerfectMatching::from_partners(partners)?)
    }

    pub(crate) fn new_unchecked(m: PerfectMatching) -> Self {
        debug_assert!(m.is_noncrossing());
        Web(m)
    }

    pub fn as_matching(&self) -> &PerfectMatching {
        &self.0
    }

    pub fn into_matching(self) -> PerfectMatching {
        self.0
    }
}

impl TryFrom<PerfectMatching> for Web {
    type Error = Error;

    fn try_from(m: PerfectMatching) -> Result<Self> {
        Web::new(m)
    }
}

impl From<Web> for PerfectMatching {
    fn from(w: Web) -> Self {
        w.0
    }
}

impl Deref for Web {
    type Target = PerfectMatching;

    fn deref(&self) -> &PerfectMatching {
        &self.0
    }
}

impl fmt::Display for Web {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The web `1~2, 3~4, ..., (2n-1)~2n`.
pub fn m0(n: usize) -> Result<Web> {
    check_n(n)?;
    let partners: Vec<usize> = (1..=2 * n).map(|i| if i % 2 == 1 { i + 1 } else { i - 1 }).collect();
    Ok(Web(PerfectMatching::from_partners(&partners)?))
}

/// Openers in `first_row`, closers elsewhere; every closer pairs with the
/// nearest unmatched opener to its left.
fn parenthesis_matching(n: usize, first_row: &[usize]) -> Option<PerfectMatching> {
    let mut is_opener = vec![false; 2 * n + 1];
    for &x in first_row {
        is_opener[x] = true;
    }
    let mut stack = Vec::with_capacity(n);
    let mut partners = vec![0; 2 * n];
    for i in 1..=2 * n {
        if is_opener[i] {
            stack.push(i);
        } else {
            let a = stack.pop()?;
            partners[a - 1] = i;
            partners[i - 1] = a;
        }
    }
    if !stack.is_empty() {
        return None;
    }
    PerfectMatching::from_partners(&partners).ok()
}

/// All webs of order `n`, in the same order as [`enumerate_syt`] (webs are
/// ordered by their opener sets); `m0(n)` comes first.
pub fn enumerate_webs(n: usize) -> Result<Vec<Web>> {
    check_n(n)?;
    Ok(ballot_first_rows(n).iter().map(|row| Web(parenthesis_matching(n, row).expect("ballot word"))).collect())
}

/// First row = openers, second row = closers, closers matched to the
/// nearest unmatched smaller opener.
pub fn tableau_to_web(t: &StandardTableau) -> Web {
    Web(parenthesis_matching(t.n(), t.row(0)).expect("standard tableau is a ballot word"))
}

/// Inverse of [`tableau_to_web`]: openers form the first row.
pub fn web_to_tableau(w: &Web) -> StandardTableau {
    let top = w.openers();
    let bottom = complement(w.order(), &top);
    StandardTableau(Tableau { rows: [top, bottom] })
}

/// The permutation with `σ(from[c]) = to[c]` for every cell `c`.
pub fn permutation_from_tableaux(from: &Tableau, to: &Tableau) -> Result<Permutation> {
    let n = from.n();
    if to.n() != n {
        return Err(Error::SizeMismatch { expected: 2 * n, found: 2 * to.n() });
    }
    let mut images = vec![0; 2 * n];
    for r in 0..2 {
        for c in 0..n {
            images[from.entry(r, c) - 1] = to.entry(r, c);
        }
    }
    Permutation::from_images(&images)
}

/// `σ(M)` together with the sign `(-1)^k`, `k` the number of pairs
/// `{a < b}` of `M` with `σ(a) > σ(b)`.
pub fn apply_permutation_to_matching(sigma: &Permutation, m: &PerfectMatching) -> Result<(i32, PerfectMatching)> {
    if sigma.len() != m.size() {
        return Err(Error::SizeMismatch { expected: m.size(), found: sigma.len() });
    }
    let mut partner = vec![0u8; m.size()];
    let mut sign = 1;
    for (a, b) in m.pairs() {
        let (x, y) = (sigma.apply(a), sigma.apply(b));
        if x > y {
            sign = -sign;
        }
        partner[x - 1] = y as u8;
        partner[y - 1] = x as u8;
    }
    Ok((sign, PerfectMatching { partner }))
}

pub fn crossing_pairs(m: &PerfectMatching) -> Vec<Crossing> {
    m.crossing_pairs()
}

/// Every perfect matching on `[2n]`; there are `(2n-1)!!` of them.
pub fn all_perfect_matchings(n: usize) -> Result<Vec<PerfectMatching>> {
    check_n(n)?;
    fn go(partner: &mut Vec<u8>, out: &mut Vec<PerfectMatching>) {
        let Some(first) = partner.iter().position(|&p| p == 0) else {
            out.push(PerfectMatching { partner: partner.clone() });
            return;
        };
        for j in first + 1..partner.len() {
            if partner[j] == 0 {
                partner[first] = (j + 1) as u8;
                partner[j] = (first + 1) as u8;
                go(partner, out);
                partner[j] = 0;
            }
        }
        partner[first] = 0;
    }
    let mut out = Vec::new();
    go(&mut vec![0; 2 * n], &mut out);
    Ok(out)
}

/// A uniformly random perfect matching on `[2n]`.
pub fn random_matching<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PerfectMatching> {
    check_n(n)?;
    let mut letters: Vec<usize> = (1..=2 * n).collect();
    letters.shuffle(rng);
    let pairs: Vec<(usize, usize)> = letters.chunks(2).map(|p| (p[0], p[1])).collect();
    PerfectMatching::from_pairs(2 * n, &pairs)
}

/// A uniformly random permutation of `[len]`.
pub fn random_permutation<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<u8> = (1..=len as u8).collect();
    images.shuffle(rng);
    Permutation { images }
}

/// Partitions of `m` as nonincreasing part lists, in reverse lexicographic
/// order starting from `[m]`.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            go(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syt(top: &[usize], bottom: &[usize]) -> StandardTableau {
        StandardTableau::from_rows(top.to_vec(), bottom.to_vec()).unwrap()
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(1), BigUint::from(1u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(8), BigUint::from(1430u32));
    }

    #[test]
    fn catalan_matches_binomial_formula() {
        for n in 0..20usize {
            let mut binom = BigUint::one();
            for k in 0..n {
                binom = binom * BigUint::from(2 * n - k) / BigUint::from(k + 1);
            }
            assert_eq!(catalan(n), binom / BigUint::from(n + 1), "n={n}");
        }
    }

    #[test]
    fn syt_n3_matches_displayed_order() {
        let got: Vec<_> = enumerate_syt(3).unwrap().into_iter().map(|t| t.row(0).to_vec()).collect();
        assert_eq!(got, vec![vec![1, 3, 5], vec![1, 3, 4], vec![1, 2, 5], vec![1, 2, 4], vec![1, 2, 3]]);
        let all = enumerate_syt(3).unwrap();
        assert_eq!(all[2], syt(&[1, 2, 5], &[3, 4, 6]));
        assert_eq!(all[0], t0(3).unwrap());
    }

    #[test]
    fn syt_n1() {
        assert_eq!(enumerate_syt(1).unwrap(), vec![syt(&[1], &[2])]);
        assert_eq!(t0(1).unwrap(), syt(&[1], &[2]));
    }

    #[test]
    fn t0_n6() {
        let t = t0(6).unwrap();
        assert_eq!(t.row(0), &[1, 3, 5, 7, 9, 11]);
        assert_eq!(t.row(1), &[2, 4, 6, 8, 10, 12]);
    }

    #[test]
    fn zero_n_rejected() {
        assert!(enumerate_syt(0).is_err());
        assert!(enumerate_webs(0).is_err());
        assert!(t0(0).is_err());
        assert!(m0(0).is_err());
    }

    #[test]
    fn webs_n3_include_figure() {
        let webs = enumerate_webs(3).unwrap();
        assert_eq!(webs.len(), 5);
        assert_eq!(webs[0], m0(3).unwrap());
        assert!(webs.contains(&Web::from_pairs(6, &[(1, 2), (3, 4), (5, 6)]).unwrap()));
        assert!(webs.contains(&Web::from_pairs(6, &[(1, 6), (2, 5), (3, 4)]).unwrap()));
    }

    #[test]
    fn webs_n4_filter_all_matchings() {
        let all = all_perfect_matchings(4).unwrap();
        assert_eq!(all.len(), 105);
        let mut filtered: Vec<_> = all.into_iter().filter(|m| m.is_noncrossing()).collect();
        let mut webs: Vec<_> = enumerate_webs(4).unwrap().into_iter().map(Web::into_matching).collect();
        filtered.sort();
        webs.sort();
        assert_eq!(filtered, webs);
    }

    #[test]
    fn m0_values() {
        assert_eq!(m0(1).unwrap().pairs(), vec![(1, 2)]);
        assert_eq!(m0(4).unwrap().pairs(), vec![(1, 2), (3, 4), (5, 6), (7, 8)]);
    }

    #[test]
    fn tableau_to_web_examples() {
        assert_eq!(tableau_to_web(&t0(3).unwrap()), m0(3).unwrap());
        assert_eq!(tableau_to_web(&syt(&[1, 2], &[3, 4])).pairs(), vec![(1, 4), (2, 3)]);
    }

    #[test]
    fn non_standard_rejected() {
        let err = StandardTableau::from_rows(vec![2, 3], vec![1, 4]).unwrap_err();
        assert!(matches!(err, Error::NotStandard(_)));
        assert!(Tableau::from_rows(vec![1, 1], vec![2, 3]).is_err());
        assert!(Tableau::from_rows(vec![1, 2], vec![3]).is_err());
    }

    #[test]
    fn permutation_from_tableaux_examples() {
        let t = t0(2).unwrap();
        assert!(permutation_from_tableaux(&t, &t).unwrap().is_identity());
        let sigma = permutation_from_tableaux(&t, &syt(&[1, 2], &[3, 4])).unwrap();
        assert_eq!(sigma.images(), vec![1, 3, 2, 4]);

        let t3 = t0(3).unwrap();
        let target = syt(&[1, 3, 4], &[2, 5, 6]);
        let sigma = permutation_from_tableaux(&t3, &target).unwrap();
        // 5 sits where T0 has 4 and vice versa.
        assert_eq!(sigma.images(), vec![1, 2, 3, 5, 4, 6]);
        assert_eq!(t3.permuted(&sigma).unwrap(), *target.as_tableau());
    }

    #[test]
    fn sign_rule_examples() {
        let m = m0(2).unwrap().into_matching();
        let (s, img) = apply_permutation_to_matching(&Permutation::identity(4), &m).unwrap();
        assert_eq!((s, &img), (1, &m));

        let s1 = Permutation::adjacent(4, 1).unwrap();
        let (s, img) = apply_permutation_to_matching(&s1, &m).unwrap();
        assert_eq!((s, img), (-1, m.clone()));

        let sigma = Permutation::from_images(&[1, 3, 2, 4]).unwrap();
        let (s, img) = apply_permutation_to_matching(&sigma, &m).unwrap();
        assert_eq!(s, 1);
        assert_eq!(img.pairs(), vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn crossing_pair_examples() {
        assert!(m0(4).unwrap().crossing_pairs().is_empty());
        let m = PerfectMatching::from_pairs(4, &[(1, 3), (2, 4)]).unwrap();
        assert_eq!(m.crossing_pairs(), vec![Crossing { a: 1, b: 2, c: 3, d: 4 }]);
        let m = PerfectMatching::from_pairs(6, &[(1, 4), (2, 5), (3, 6)]).unwrap();
        assert_eq!(m.crossing_pairs().len(), 3);
        assert_eq!(m.first_crossing(), Some(Crossing { a: 1, b: 2, c: 4, d: 5 }));
    }

    #[test]
    fn web_rejects_crossing() {
        let err = Web::from_pairs(4, &[(1, 3), (2, 4)]).unwrap_err();
        assert_eq!(err, Error::Crossing { a: 1, b: 2, c: 3, d: 4 });
    }

    #[test]
    fn bad_matchings_rejected() {
        assert!(PerfectMatching::from_partners(&[1, 2]).is_err());
        assert!(PerfectMatching::from_partners(&[2, 3, 1]).is_err());
        assert!(PerfectMatching::from_partners(&[]).is_err());
        assert!(PerfectMatching::from_pairs(4, &[(1, 2), (2, 3)]).is_err());
    }

    #[test]
    fn reduced_word_reconstructs_permutation() {
        let sigma = Permutation::from_images(&[3, 1, 4, 2]).unwrap();
        let word = sigma.reduced_word();
        assert_eq!(word.len(), sigma.inversions());
        let mut acc = Permutation::identity(4);
        for &i in &word {
            acc = Permutation::adjacent(4, i).unwrap().compose(&acc).unwrap();
        }
        assert_eq!(acc, sigma);
    }

    #[test]
    fn cycle_type_representatives() {
        let p = Permutation::from_cycle_type(&[3, 2, 1]).unwrap();
        assert_eq!(p.images(), vec![2, 3, 1, 5, 4, 6]);
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(partitions(4), vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions(8).len(), 22);
    }

    #[test]
    fn serde_round_trip() {
        let t = syt(&[1, 2], &[3, 4]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[[1,2],[3,4]]");
        assert_eq!(serde_json::from_str::<StandardTableau>(&s).unwrap(), t);
        assert!(serde_json::from_str::<StandardTableau>("[[2,3],[1,4]]").is_err());

        let w = Web::from_pairs(4, &[(1, 4), (2, 3)]).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, "[4,3,2,1]");
        assert_eq!(serde_json::from_str::<Web>(&s).unwrap(), w);
        assert!(serde_json::from_str::<Web>("[3,4,1,2]").is_err());
    }
}
