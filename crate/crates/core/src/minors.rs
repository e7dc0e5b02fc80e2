//! Polynomials in the entries of a `2 × 2n` matrix of variables `x_{r,j}`,
//! its maximal minors `Δ_ab`, and the products `Δ_M` over a matching.
//!
//! This model is independent of the combinatorial rewriting in
//! [`crate::webs`]: web-basis coordinates are recovered here by solving an
//! exact linear system over monomial coefficients, which makes it an oracle
//! for [`crate::webs::resolve_crossings`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{apply_permutation_to_matching, check_n, PerfectMatching, Permutation, Web};
use crate::error::{Error, Result};
use crate::exactalg::{rank, Rational, RationalMatrix, Solver};
use crate::json_int::JsonInt;
use crate::lincomb::LinComb;
use crate::webs::{generator_on_web, RationalWebVector, SyzygyRule, WebBasis};

/// The variable `x_{row,col}`, `row ∈ {1, 2}`, `col ∈ 1..=2n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Variable {
    pub row: u8,
    pub col: u16,
}

impl Variable {
    pub fn new(row: usize, col: usize) -> Self {
        assert!(row == 1 || row == 2, "row must be 1 or 2");
        Self { row: row as u8, col: col as u16 }
    }
}

/// Product of variable powers, stored as `(variable, exponent)` sorted by
/// variable with no zero exponents.
///
/// Ordered graded-lexicographically with `x_{1,1} > x_{1,2} > ... > x_{2,2n}`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut v: Vec<(Variable, u32)> = Vec::new();
        for (x, e) in powers {
            v.push((x, e));
        }
        v.sort_by_key(|(x, _)| *x);
        let mut merged: Vec<(Variable, u32)> = Vec::with_capacity(v.len());
        for (x, e) in v {
            match merged.last_mut() {
                Some((y, f)) if *y == x => *f += e,
                _ => merged.push((x, e)),
            }
        }
        merged.retain(|(_, e)| *e > 0);
        Monomial(merged)
    }

    pub fn powers(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|(_, e)| *e <= 1)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // Walk both supports in variable order; the first variable whose
            // exponents differ decides.
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(x, e)), Some(&(y, f))) => match x.cmp(&y) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal if e != f => return e.cmp(&f),
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (x, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}_{}", x.row, x.col)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial(LinComb<Monomial, BigInt>);

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Polynomial(LinComb::from_term(Monomial::one(), c))
    }

    pub fn variable(row: usize, col: usize) -> Self {
        Polynomial(LinComb::from_term(Monomial::from_powers([(Variable::new(row, col), 1)]), BigInt::one()))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        Polynomial(terms.into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.0.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.0.coeff(m)
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.keys().map(Monomial::degree).max()
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.keys().all(Monomial::is_multilinear)
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        Polynomial(self.0.scaled(c))
    }

    pub fn evaluate(&self, value: impl Fn(Variable) -> BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in self.terms() {
            let mut term = c.clone();
            for &(x, e) in m.powers() {
                term *= num_traits::pow(value(x), e as usize);
            }
            total += term;
        }
        total
    }

    /// Largest column index that occurs.
    pub fn max_column(&self) -> usize {
        self.0.keys().flat_map(|m| m.powers().iter().map(|(x, _)| x.col as usize)).max().unwrap_or(0)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.0.clone();
        out += &rhs.0;
        Polynomial(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial(-self.0.clone())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = LinComb::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in rhs.terms() {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Polynomial(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Vec<[u32; 3]>,
    coeff: JsonInt,
}

/// Serialized as a list of `{exponents: [[r, j, e], ...], coeff}`, leading
/// (graded-lex largest) term first.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms()
            .rev()
            .map(|(m, c)| TermRepr {
                exponents: m.powers().iter().map(|(x, e)| [x.row as u32, x.col as u32, *e]).collect(),
                coeff: c.into(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let mut out = LinComb::zero();
        for t in terms {
            for [r, _, _] in &t.exponents {
                if *r != 1 && *r != 2 {
                    return Err(D::Error::custom(format!("row {r} out of range")));
                }
            }
            let m = Monomial::from_powers(
                t.exponents.iter().map(|&[r, j, e]| (Variable { row: r as u8, col: j as u16 }, e)),
            );
            let c = BigInt::try_from(t.coeff).map_err(D::Error::custom)?;
            out.add_term(m, &c);
        }
        Ok(Polynomial(out))
    }
}

// ---------------------------------------------------------------------------
// Minors
// ---------------------------------------------------------------------------

/// `Δ_ab = x_{1a} x_{2b} - x_{1b} x_{2a}` for `1 <= a < b <= 2n`.
pub fn minor(a: usize, b: usize, n: usize) -> Result<Polynomial> {
    check_n(n)?;
    if a == 0 || a >= b || b > 2 * n {
        return Err(Error::InvalidMinor { a, b, max: 2 * n });
    }
    Ok(unchecked_minor(a, b))
}

fn unchecked_minor(a: usize, b: usize) -> Polynomial {
    let term = |p: usize, q: usize| Monomial::from_powers([(Variable::new(1, p), 1), (Variable::new(2, q), 1)]);
    Polynomial::from_terms([(term(a, b), BigInt::one()), (term(b, a), -BigInt::one())])
}

/// `Δ_M`, the product of `Δ_ab` over the pairs `a < b` of `M`.
pub fn delta_product(m: &PerfectMatching) -> Polynomial {
    m.pairs().into_iter().fold(Polynomial::one(), |acc, (a, b)| &acc * &unchecked_minor(a, b))
}

/// Left side minus right side of the syzygy for `a < b < c < d`:
/// `Δ_ac Δ_bd - (Δ_ab Δ_cd ± Δ_ad Δ_bc)`, the sign given by `rule`.
pub fn syzygy_residual(quad: [usize; 4], n: usize, rule: SyzygyRule) -> Result<Polynomial> {
    let [a, b, c, d] = quad;
    if !(a < b && b < c && c < d) {
        return Err(Error::InvalidMinor { a, b: d, max: 2 * n });
    }
    let lhs = &minor(a, c, n)? * &minor(b, d, n)?;
    let nested = &minor(a, b, n)? * &minor(c, d, n)?;
    let outer = &minor(a, d, n)? * &minor(b, c, n)?;
    let rhs = match rule {
        SyzygyRule::Standard => &nested + &outer,
        SyzygyRule::FlippedSign => &nested - &outer,
    };
    Ok(&lhs - &rhs)
}

/// Whether `Δ_ac Δ_bd = Δ_ab Δ_cd + Δ_ad Δ_bc` holds exactly.
pub fn verify_syzygy(quad: [usize; 4], n: usize) -> Result<bool> {
    Ok(syzygy_residual(quad, n, SyzygyRule::Standard)?.is_zero())
}

/// Substitute `x_{r,j} -> x_{r,σ(j)}`.
pub fn column_permute(sigma: &Permutation, p: &Polynomial) -> Result<Polynomial> {
    if p.max_column() > sigma.len() {
        return Err(Error::SizeMismatch { expected: p.max_column(), found: sigma.len() });
    }
    Ok(Polynomial(p.0.map_keys(|m| {
        Monomial::from_powers(
            m.powers().iter().map(|&(x, e)| (Variable::new(x.row as usize, sigma.apply(x.col as usize)), e)),
        )
    })))
}

/// Whether `σ.Δ_M = ±Δ_σ(M)` with the inversion-pair sign.
pub fn verify_sign_rule(sigma: &Permutation, m: &PerfectMatching) -> Result<bool> {
    let (sign, image) = apply_permutation_to_matching(sigma, m)?;
    let lhs = column_permute(sigma, &delta_product(m))?;
    Ok(lhs == delta_product(&image).scaled(&BigInt::from(sign)))
}

/// The polynomials `Δ_N` for webs `N`, with an exact solver for coordinates
/// in their span.
#[derive(Clone, Debug)]
pub struct WebPolynomialBasis {
    webs: WebBasis,
    polynomials: Vec<Polynomial>,
    monomial_index: HashMap<Monomial, usize>,
    solver: Solver,
}

impl WebPolynomialBasis {
    pub fn new(n: usize) -> Result<Self> {
        let webs = WebBasis::new(n)?;
        let polynomials: Vec<Polynomial> = webs.webs().iter().map(|w| delta_product(w)).collect();
        let (matrix, monomial_index) = coefficient_matrix(&polynomials);
        let solver = Solver::new(matrix)?;
        Ok(Self { webs, polynomials, monomial_index, solver })
    }

    pub fn webs(&self) -> &WebBasis {
        &self.webs
    }

    pub fn polynomial(&self, index: usize) -> &Polynomial {
        &self.polynomials[index]
    }

    /// Coordinates of `p` in `{Δ_N}`; [`Error::NotInSpan`] if there are none.
    pub fn expand(&self, p: &Polynomial) -> Result<RationalWebVector> {
        let mut b = vec![Rational::zero(); self.monomial_index.len()];
        for (m, c) in p.terms() {
            let Some(&row) = self.monomial_index.get(m) else {
                return Err(Error::NotInSpan);
            };
            b[row] = Rational::from_integer(c.clone());
        }
        let x = self.solver.solve(&b).map_err(|_| Error::NotInSpan)?;
        Ok(self.webs.webs().iter().cloned().zip(x).collect())
    }

    /// Image of `Σ c_N w_N` under `w_N ↦ Δ_N`, for rational coefficients
    /// that happen to be integers.
    pub fn psi(&self, v: &RationalWebVector) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (w, c) in v {
            if !c.is_integer() {
                return Err(Error::NotInSpan);
            }
            let k = self.webs.index_of(w).ok_or(Error::NotInSpan)?;
            out = &out + &self.polynomials[k].scaled(&c.to_integer());
        }
        Ok(out)
    }
}

/// Monomials as rows (in order of first appearance), polynomials as columns.
fn coefficient_matrix(polys: &[Polynomial]) -> (RationalMatrix, HashMap<Monomial, usize>) {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let mut matrix = RationalMatrix::zeros(index.len(), polys.len());
    for (col, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            matrix.set(index[m], col, Rational::from_integer(c.clone()));
        }
    }
    (matrix, index)
}

/// Exact rank of the monomial-coefficient matrix of `polys`.
pub fn polynomial_rank(polys: &[Polynomial]) -> usize {
    rank(&coefficient_matrix(polys).0)
}

/// Whether `{Δ_N : N a web of order n}` is linearly independent.
pub fn web_polynomials_independent(n: usize) -> Result<bool> {
    let webs = WebBasis::new(n)?;
    let polys: Vec<Polynomial> = webs.webs().iter().map(|w| delta_product(w)).collect();
    Ok(polynomial_rank(&polys) == webs.dim())
}

/// One-shot form of [`WebPolynomialBasis::expand`].
pub fn expand_in_web_basis(p: &Polynomial, n: usize) -> Result<RationalWebVector> {
    WebPolynomialBasis::new(n)?.expand(p)
}

/// Generator/web pairs where `s_i.Δ_M`, expanded in the web basis, differs
/// from the web action `s_i.w_M`.
pub fn psi_equivariance_failures(basis: &WebPolynomialBasis) -> Result<Vec<(usize, Web)>> {
    let n = basis.webs().n();
    let mut failures = Vec::new();
    for i in 1..2 * n {
        let s = Permutation::adjacent(2 * n, i)?;
        for (k, w) in basis.webs().webs().iter().enumerate() {
            let permuted = column_permute(&s, basis.polynomial(k))?;
            let expected: RationalWebVector = generator_on_web(i, w)?;
            if basis.expand(&permuted)? != expected {
                failures.push((i, w.clone()));
            }
        }
    }
    Ok(failures)
}

pub fn verify_psi_equivariance(n: usize) -> Result<bool> {
    Ok(psi_equivariance_failures(&WebPolynomialBasis::new(n)?)?.is_empty())
}
