//! The web model `W_n`: formal combinations of noncrossing matchings, the
//! action of adjacent transpositions, and resolution of crossing matchings
//! into the web basis by repeated use of the three-term minor syzygy.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{check_n, enumerate_webs, Crossing, PerfectMatching, Permutation, Web};
use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalMatrix, ToRational};
use crate::json_int::JsonInt;
use crate::lincomb::{Coeff, LinComb};

pub type WebVector = LinComb<Web, BigInt>;
pub type RationalWebVector = LinComb<Web, Rational>;

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct WebTerm {
    partner_array: Web,
    coeff: JsonInt,
}

/// Serialized as a list of `{partnerArray, coeff}`.
impl Serialize for LinComb<Web, BigInt> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<WebTerm> =
            self.iter().map(|(w, c)| WebTerm { partner_array: w.clone(), coeff: c.into() }).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinComb<Web, BigInt> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let mut out = LinComb::zero();
        for term in Vec::<WebTerm>::deserialize(d)? {
            out.add_term(term.partner_array, &BigInt::try_from(term.coeff).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

fn check_generator(i: usize, size: usize) -> Result<()> {
    if i == 0 || i >= size {
        return Err(Error::InvalidGenerator { i, max: size.saturating_sub(1) });
    }
    Ok(())
}

/// `s_i.w_M`: `-w_M` when `i ~ i+1`, otherwise `w_M + w_M'` where `M'`
/// trades `a~i, b~i+1` for `a~b, i~i+1`.
pub fn generator_on_web<C: Coeff + One>(i: usize, m: &Web) -> Result<LinComb<Web, C>> {
    check_generator(i, m.size())?;
    let a = m.partner(i);
    if a == i + 1 {
        return Ok(LinComb::from_term(m.clone(), -C::one()));
    }
    let b = m.partner(i + 1);
    let swapped = m.rematched([(a, b), (i, i + 1)]);
    assert!(swapped.is_noncrossing(), "s_{i} produced a crossing matching from {m}");
    let mut out = LinComb::from_term(m.clone(), C::one());
    out.add_term(Web::new_unchecked(swapped), &C::one());
    Ok(out)
}

/// Linear extension of [`generator_on_web`].
pub fn generator_action<C: Coeff + One>(i: usize, v: &LinComb<Web, C>) -> Result<LinComb<Web, C>> {
    let mut out = LinComb::zero();
    for (m, c) in v {
        out.add_scaled(&generator_on_web(i, m)?, c);
    }
    Ok(out)
}

/// Acts by `s_{word[0]}` first, then `s_{word[1]}`, and so on.
pub fn act_by_word<C: Coeff + One>(word: &[usize], v: &LinComb<Web, C>) -> Result<LinComb<Web, C>> {
    let mut v = v.clone();
    for &i in word {
        v = generator_action(i, &v)?;
    }
    Ok(v)
}

/// `σ.v`, through the bubble-sort reduced word of `σ`.
pub fn act_by_permutation<C: Coeff + One>(sigma: &Permutation, v: &LinComb<Web, C>) -> Result<LinComb<Web, C>> {
    if let Some(m) = v.keys().next() {
        if m.size() != sigma.len() {
            return Err(Error::SizeMismatch { expected: m.size(), found: sigma.len() });
        }
    }
    act_by_word(&sigma.reduced_word(), v)
}

/// How a crossing pair `a~c, b~d` is rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SyzygyRule {
    /// `Δ_ac Δ_bd = Δ_ab Δ_cd + Δ_ad Δ_bc`.
    #[default]
    Standard,
    /// `Δ_ac Δ_bd = Δ_ab Δ_cd - Δ_ad Δ_bc`. Wrong; only for fault injection.
    FlippedSign,
}

impl SyzygyRule {
    fn second_sign(self) -> BigInt {
        match self {
            SyzygyRule::Standard => BigInt::one(),
            SyzygyRule::FlippedSign => -BigInt::one(),
        }
    }
}

/// The two matchings a crossing pair rewrites to: `a~b, c~d` and `a~d, b~c`.
pub fn syzygy_children(m: &PerfectMatching, x: Crossing) -> (PerfectMatching, PerfectMatching) {
    let Crossing { a, b, c, d } = x;
    (m.rematched([(a, b), (c, d)]), m.rematched([(a, d), (b, c)]))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResolverStats {
    /// Distinct matchings whose expansion has been computed.
    pub memo_entries: usize,
    /// Syzygy rewrites performed, one per crossing matching expanded.
    pub syzygy_applications: u64,
}

/// Expands `Δ_M` for arbitrary perfect matchings into the web basis,
/// always rewriting the lexicographically smallest crossing pair.
/// Expansions are memoised by matching and reused across calls.
#[derive(Clone, Debug, Default)]
pub struct CrossingResolver {
    rule: SyzygyRule,
    memo: HashMap<PerfectMatching, WebVector>,
    syzygy_applications: u64,
}

impl CrossingResolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_rule(rule: SyzygyRule) -> Self {
        Self { rule, ..Self::default() }
    }

    pub fn stats(&self) -> ResolverStats {
        ResolverStats { memo_entries: self.memo.len(), syzygy_applications: self.syzygy_applications }
    }

    pub fn resolve(&mut self, m: &PerfectMatching) -> WebVector {
        // Post-order traversal on an explicit stack; a matching is expanded
        // once both of its children are in the memo.
        let mut stack = vec![(m.clone(), false)];
        while let Some((current, children_done)) = stack.pop() {
            if self.memo.contains_key(&current) {
                continue;
            }
            let Some(crossing) = current.first_crossing() else {
                let web = Web::new_unchecked(current.clone());
                self.memo.insert(current, WebVector::from_term(web, BigInt::one()));
                continue;
            };
            let (nested, outer) = syzygy_children(&current, crossing);
            if children_done {
                let mut v = self.memo[&nested].clone();
                v.add_scaled(&self.memo[&outer], &self.rule.second_sign());
                self.syzygy_applications += 1;
                self.memo.insert(current, v);
            } else {
                stack.push((current, true));
                for child in [nested, outer] {
                    if !self.memo.contains_key(&child) {
                        stack.push((child, false));
                    }
                }
            }
        }
        self.memo[m].clone()
    }
}

/// Coordinates of `Δ_M` in the web basis. All coefficients are nonnegative
/// integers.
pub fn resolve_crossings(m: &PerfectMatching) -> WebVector {
    CrossingResolver::new().resolve(m)
}

/// Resolution without memoisation where `choose` picks which of the current
/// crossing pairs to rewrite (an index into `crossing_pairs()`).
pub fn resolve_with_choice(m: &PerfectMatching, choose: &mut impl FnMut(&[Crossing]) -> usize) -> WebVector {
    let crossings = m.crossing_pairs();
    if crossings.is_empty() {
        return WebVector::from_term(Web::new_unchecked(m.clone()), BigInt::one());
    }
    let pick = crossings[choose(&crossings)];
    let (nested, outer) = syzygy_children(m, pick);
    resolve_with_choice(&nested, choose) + resolve_with_choice(&outer, choose)
}

/// The web basis of `W_n` in canonical order, with coordinate lookup.
#[derive(Clone, Debug)]
pub struct WebBasis {
    n: usize,
    webs: Vec<Web>,
    index: HashMap<Web, usize>,
}

impl WebBasis {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let webs = enumerate_webs(n)?;
        let index = webs.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        Ok(Self { n, webs, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.webs.len()
    }

    pub fn webs(&self) -> &[Web] {
        &self.webs
    }

    pub fn index_of(&self, w: &Web) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn coordinates<C: Coeff + ToRational>(&self, v: &LinComb<Web, C>) -> Result<Vec<Rational>> {
        let mut x = vec![Rational::zero(); self.dim()];
        for (w, c) in v {
            let k = self.index_of(w).ok_or(Error::SizeMismatch { expected: 2 * self.n, found: w.size() })?;
            x[k] = c.to_rational();
        }
        Ok(x)
    }

    fn matrix_from_columns(&self, mut column: impl FnMut(&Web) -> Result<RationalWebVector>) -> Result<RationalMatrix> {
        let dim = self.dim();
        let mut m = RationalMatrix::zeros(dim, dim);
        for (col, w) in self.webs.iter().enumerate() {
            for (row, x) in self.coordinates(&column(w)?)?.into_iter().enumerate() {
                m.set(row, col, x);
            }
        }
        Ok(m)
    }

    /// Matrix `B_i` of `s_i` on `W_n`; column `M` holds `s_i.w_M`.
    pub fn action_matrix(&self, i: usize) -> Result<RationalMatrix> {
        check_generator(i, 2 * self.n)?;
        self.matrix_from_columns(|w| generator_on_web(i, w))
    }

    /// Matrix of an arbitrary permutation, via its reduced word.
    pub fn permutation_matrix(&self, sigma: &Permutation) -> Result<RationalMatrix> {
        self.matrix_from_columns(|w| {
            act_by_permutation(sigma, &RationalWebVector::from_term(w.clone(), Rational::one()))
        })
    }
}

pub fn web_action_matrix(i: usize, n: usize) -> Result<RationalMatrix> {
    WebBasis::new(n)?.action_matrix(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{all_perfect_matchings, m0};

    fn web(size: usize, pairs: &[(usize, usize)]) -> Web {
        Web::from_pairs(size, pairs).unwrap()
    }

    fn pm(size: usize, pairs: &[(usize, usize)]) -> PerfectMatching {
        PerfectMatching::from_pairs(size, pairs).unwrap()
    }

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn s1_on_m0_negates() {
        let w = WebVector::from_term(m0(3).unwrap(), int(1));
        assert_eq!(generator_action(1, &w).unwrap(), w.scaled(&int(-1)));
    }

    #[test]
    fn s2_on_m0_n2() {
        let w = WebVector::from_term(m0(2).unwrap(), int(1));
        let expected: WebVector = [(m0(2).unwrap(), int(1)), (web(4, &[(1, 4), (2, 3)]), int(1))].into_iter().collect();
        assert_eq!(generator_action(2, &w).unwrap(), expected);
    }

    #[test]
    fn generators_are_involutions_on_vectors() {
        for w in enumerate_webs(4).unwrap() {
            let v = WebVector::from_term(w, int(1));
            for i in 1..8 {
                let twice = generator_action(i, &generator_action(i, &v).unwrap()).unwrap();
                assert_eq!(twice, v);
            }
        }
    }

    #[test]
    fn bad_generator_rejected() {
        let w = WebVector::from_term(m0(2).unwrap(), int(1));
        assert!(generator_action(0, &w).is_err());
        assert!(generator_action(4, &w).is_err());
    }

    #[test]
    fn resolve_noncrossing_is_identity() {
        for w in enumerate_webs(3).unwrap() {
            assert_eq!(resolve_crossings(&w), WebVector::from_term(w.clone(), int(1)));
        }
    }

    #[test]
    fn resolve_single_crossing() {
        let got = resolve_crossings(&pm(4, &[(1, 3), (2, 4)]));
        let expected: WebVector =
            [(web(4, &[(1, 2), (3, 4)]), int(1)), (web(4, &[(1, 4), (2, 3)]), int(1))].into_iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn resolve_triple_crossing_nonnegative() {
        let got = resolve_crossings(&pm(6, &[(1, 4), (2, 5), (3, 6)]));
        assert!(!got.is_empty());
        assert!(got.iter().all(|(_, c)| *c > int(0)));
    }

    #[test]
    fn web_vector_json() {
        let v = resolve_crossings(&pm(4, &[(1, 3), (2, 4)]));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[{"partnerArray":[2,1,4,3],"coeff":1},{"partnerArray":[4,3,2,1],"coeff":1}]"#);
        assert_eq!(serde_json::from_str::<WebVector>(&s).unwrap(), v);
    }

    #[test]
    fn resolver_reuses_memo() {
        let mut r = CrossingResolver::new();
        let m = pm(6, &[(1, 4), (2, 5), (3, 6)]);
        let first = r.resolve(&m);
        let applied = r.stats().syzygy_applications;
        assert!(applied > 0);
        assert_eq!(r.resolve(&m), first);
        assert_eq!(r.stats().syzygy_applications, applied);
    }

    #[test]
    fn flipped_rule_goes_negative() {
        let mut r = CrossingResolver::with_rule(SyzygyRule::FlippedSign);
        let got = r.resolve(&pm(4, &[(1, 3), (2, 4)]));
        assert_eq!(got.coeff(&web(4, &[(1, 4), (2, 3)])), int(-1));
    }

    #[test]
    fn order_independence_first_vs_last() {
        for m in all_perfect_matchings(4).unwrap() {
            let last = resolve_with_choice(&m, &mut |xs: &[Crossing]| xs.len() - 1);
            assert_eq!(resolve_crossings(&m), last, "{m}");
        }
    }

    #[test]
    fn web_action_matrix_small() {
        let b = web_action_matrix(1, 1).unwrap();
        assert_eq!(b, RationalMatrix::from_integer_rows(&[vec![-1]]).unwrap());
        for n in 1..=4 {
            let basis = WebBasis::new(n).unwrap();
            for i in 1..2 * n {
                let b = basis.action_matrix(i).unwrap();
                assert!((&b * &b).is_identity());
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        let x = b.get(r, c);
                        assert!(x.is_integer() && x.numer().magnitude() <= &1u32.into());
                    }
                }
            }
        }
    }

    #[test]
    fn act_by_permutation_matches_generator() {
        let v = WebVector::from_term(m0(3).unwrap(), int(1));
        assert_eq!(act_by_permutation(&Permutation::identity(6), &v).unwrap(), v);
        let s1 = Permutation::adjacent(6, 1).unwrap();
        assert_eq!(act_by_permutation(&s1, &v).unwrap(), generator_action(1, &v).unwrap());
    }
}
