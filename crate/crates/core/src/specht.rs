//! The polytabloid model of the `(n,n)` Specht module inside the permutation
//! module spanned by row tabloids.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{check_n, enumerate_syt, Permutation, StandardTableau, Tableau};
use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalMatrix, Solver};
use crate::json_int::JsonInt;
use crate::lincomb::LinComb;

/// A row tabloid of shape `(n,n)`, determined by its first-row set. Bit
/// `k - 1` is set when letter `k` lies in the first row, so the derived
/// order on tabloids is colex on first rows.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Tabloid(u64);

impl Tabloid {
    pub fn from_first_row(letters: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &x in letters {
            if x == 0 || x > 64 || mask & (1 << (x - 1)) != 0 {
                return Err(Error::InvalidTableau(format!("bad tabloid first row {letters:?}")));
            }
            mask |= 1 << (x - 1);
        }
        Ok(Tabloid(mask))
    }

    pub fn first_row(&self) -> Vec<usize> {
        (0..64).filter(|k| self.0 & (1 << k) != 0).map(|k| k + 1).collect()
    }

    pub fn contains(&self, letter: usize) -> bool {
        self.0 & (1 << (letter - 1)) != 0
    }

    fn largest_letter(&self) -> usize {
        64 - self.0.leading_zeros() as usize
    }
}

impl fmt::Display for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row: Vec<String> = self.first_row().iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", row.join(","))
    }
}

pub type TabloidVector = LinComb<Tabloid, BigInt>;

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct TabloidTerm {
    first_row: Vec<usize>,
    coeff: JsonInt,
}

/// Serialized as a list of `{firstRow, coeff}` in colex order.
impl Serialize for LinComb<Tabloid, BigInt> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TabloidTerm> =
            self.iter().map(|(t, c)| TabloidTerm { first_row: t.first_row(), coeff: c.into() }).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinComb<Tabloid, BigInt> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let mut out = LinComb::zero();
        for term in Vec::<TabloidTerm>::deserialize(d)? {
            let t = Tabloid::from_first_row(&term.first_row).map_err(D::Error::custom)?;
            out.add_term(t, &BigInt::try_from(term.coeff).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

pub fn tabloid_of(t: &Tableau) -> Tabloid {
    Tabloid::from_first_row(t.row(0)).expect("tableau entries are distinct")
}

pub fn act_on_tabloid(sigma: &Permutation, t: Tabloid) -> Result<Tabloid> {
    if t.largest_letter() > sigma.len() {
        return Err(Error::SizeMismatch { expected: t.largest_letter(), found: sigma.len() });
    }
    let mut mask = 0u64;
    for x in t.first_row() {
        mask |= 1 << (sigma.apply(x) - 1);
    }
    Ok(Tabloid(mask))
}

pub fn act_on_tabloid_vector(sigma: &Permutation, v: &TabloidVector) -> Result<TabloidVector> {
    let mut out = TabloidVector::zero();
    for (t, c) in v {
        out.add_term(act_on_tabloid(sigma, *t)?, c);
    }
    Ok(out)
}

/// `ε_T.{T}`: the signed sum of `σ.{T}` over the column stabilizer of `T`.
///
/// The stabilizer is the `2^n` choices of swapping or not swapping each
/// column; the sign is `(-1)^(number of swaps)`. Distinct choices give
/// distinct tabloids, so every coefficient is `±1`.
pub fn polytabloid(t: &Tableau) -> TabloidVector {
    let n = t.n();
    let mut out = TabloidVector::zero();
    for pattern in 0u64..(1 << n) {
        let mut mask = 0u64;
        for col in 0..n {
            let (top, bottom) = t.column(col);
            let letter = if pattern & (1 << col) != 0 { bottom } else { top };
            mask |= 1 << (letter - 1);
        }
        let coeff = if pattern.count_ones() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        out.add_term(Tabloid(mask), &coeff);
    }
    out
}

/// All `n`-subsets of `[2n]` as tabloids, in colex order.
pub fn all_tabloids(n: usize) -> Vec<Tabloid> {
    // Gosper's hack walks the n-bit masks in increasing numeric order.
    let mut out = Vec::new();
    let limit = 1u128 << (2 * n);
    let mut mask: u128 = (1u128 << n) - 1;
    while mask < limit {
        out.push(Tabloid(mask as u64));
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

/// The standard polytabloid basis of `V_n` with a precomputed exact solver
/// for expressing vectors of `V_n` in it.
#[derive(Clone, Debug)]
pub struct SpechtBasis {
    n: usize,
    syt: Vec<StandardTableau>,
    polytabloids: Vec<TabloidVector>,
    tabloid_index: HashMap<Tabloid, usize>,
    solver: Solver,
}

impl SpechtBasis {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let syt = enumerate_syt(n)?;
        let tabloids = all_tabloids(n);
        let tabloid_index: HashMap<Tabloid, usize> = tabloids.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let polytabloids: Vec<TabloidVector> = syt.iter().map(|t| polytabloid(t)).collect();

        let mut matrix = RationalMatrix::zeros(tabloids.len(), syt.len());
        for (col, v) in polytabloids.iter().enumerate() {
            for (t, c) in v {
                matrix.set(tabloid_index[t], col, Rational::from_integer(c.clone()));
            }
        }
        let solver = Solver::new(matrix)?;
        Ok(Self { n, syt, polytabloids, tabloid_index, solver })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.syt.len()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.syt
    }

    pub fn standard_polytabloid(&self, index: usize) -> &TabloidVector {
        &self.polytabloids[index]
    }

    /// Coefficients `c_T` with `v = Σ c_T · v_T` over standard `T`.
    /// Fails with [`Error::NotInSpan`] when `v ∉ V_n`.
    pub fn express(&self, v: &TabloidVector) -> Result<Vec<Rational>> {
        let mut b = vec![Rational::zero(); self.tabloid_index.len()];
        for (t, c) in v {
            let Some(&row) = self.tabloid_index.get(t) else {
                return Err(Error::NotInSpan);
            };
            b[row] = Rational::from_integer(c.clone());
        }
        let x = self.solver.solve_unchecked(&b)?;

        // Check on every tabloid: Σ x_T v_T must reproduce v.
        let mut residual: LinComb<Tabloid, Rational> = v.map_coeffs(|c| Rational::from_integer(c.clone()));
        for (coeff, pt) in x.iter().zip(&self.polytabloids) {
            if coeff.is_zero() {
                continue;
            }
            for (t, c) in pt {
                residual.add_term(*t, &(-coeff * Rational::from_integer(c.clone())));
            }
        }
        if !residual.is_zero() {
            return Err(Error::NotInSpan);
        }
        Ok(x)
    }

    /// Matrix of `σ` on `V_n`: column `T` holds the coordinates of `σ.v_T`.
    pub fn permutation_matrix(&self, sigma: &Permutation) -> Result<RationalMatrix> {
        let dim = self.dim();
        let mut m = RationalMatrix::zeros(dim, dim);
        for (col, v) in self.polytabloids.iter().enumerate() {
            let image = act_on_tabloid_vector(sigma, v)?;
            for (row, x) in self.express(&image)?.into_iter().enumerate() {
                m.set(row, col, x);
            }
        }
        Ok(m)
    }

    /// Matrix `A_i` of the generator `s_i`.
    pub fn action_matrix(&self, i: usize) -> Result<RationalMatrix> {
        self.permutation_matrix(&Permutation::adjacent(2 * self.n, i)?)
    }
}

/// One-shot form of [`SpechtBasis::express`].
pub fn express_in_standard_polytabloids(v: &TabloidVector, n: usize) -> Result<Vec<Rational>> {
    SpechtBasis::new(n)?.express(v)
}

/// One-shot form of [`SpechtBasis::action_matrix`].
pub fn specht_action_matrix(i: usize, n: usize) -> Result<RationalMatrix> {
    SpechtBasis::new(n)?.action_matrix(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::t0;
    use crate::exactalg::rational;

    fn tab(top: &[usize], bottom: &[usize]) -> Tableau {
        Tableau::from_rows(top.to_vec(), bottom.to_vec()).unwrap()
    }

    fn tabloid(row: &[usize]) -> Tabloid {
        Tabloid::from_first_row(row).unwrap()
    }

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn tabloid_of_examples() {
        assert_eq!(tabloid_of(&t0(2).unwrap()), tabloid(&[1, 3]));
        assert_eq!(tabloid_of(&tab(&[1, 2], &[3, 4])), tabloid(&[1, 2]));
        assert_eq!(tabloid_of(&tab(&[5, 1, 3], &[2, 6, 4])), tabloid_of(&tab(&[1, 3, 5], &[6, 4, 2])));
    }

    #[test]
    fn act_on_tabloid_examples() {
        let t = tabloid(&[1, 3]);
        assert_eq!(act_on_tabloid(&Permutation::identity(4), t).unwrap(), t);
        assert_eq!(act_on_tabloid(&Permutation::adjacent(4, 1).unwrap(), t).unwrap(), tabloid(&[2, 3]));
        assert_eq!(act_on_tabloid(&Permutation::adjacent(4, 3).unwrap(), t).unwrap(), tabloid(&[1, 4]));
        assert!(act_on_tabloid(&Permutation::identity(2), t).is_err());
    }

    #[test]
    fn polytabloid_small_cases() {
        let v = polytabloid(&tab(&[1], &[2]));
        let expected: TabloidVector = [(tabloid(&[1]), int(1)), (tabloid(&[2]), int(-1))].into_iter().collect();
        assert_eq!(v, expected);

        let v = polytabloid(&t0(2).unwrap());
        let expected: TabloidVector = [
            (tabloid(&[1, 3]), int(1)),
            (tabloid(&[2, 3]), int(-1)),
            (tabloid(&[1, 4]), int(-1)),
            (tabloid(&[2, 4]), int(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(v, expected);
    }

    #[test]
    fn all_tabloids_colex() {
        let rows: Vec<Vec<usize>> = all_tabloids(2).iter().map(Tabloid::first_row).collect();
        assert_eq!(rows, vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]);
        assert_eq!(all_tabloids(5).len(), 252);
    }

    #[test]
    fn express_standard_is_indicator() {
        let basis = SpechtBasis::new(3).unwrap();
        let x = basis.express(&polytabloid(&t0(3).unwrap())).unwrap();
        let mut expected = vec![rational(0); 5];
        expected[0] = rational(1);
        assert_eq!(x, expected);
    }

    #[test]
    fn express_non_standard_polytabloid() {
        // Swapping the entries of one column of T0 negates its polytabloid.
        let basis = SpechtBasis::new(2).unwrap();
        let v = polytabloid(&tab(&[2, 3], &[1, 4]));
        let x = basis.express(&v).unwrap();
        assert!(x.iter().all(|c| c.is_integer()));
        let mut rebuilt = TabloidVector::zero();
        for (c, pt) in x.iter().zip(&basis.polytabloids) {
            rebuilt.add_scaled(pt, &c.to_integer());
        }
        assert_eq!(rebuilt, v);
        assert_eq!(x, vec![rational(-1), rational(0)]);
    }

    #[test]
    fn s1_on_t0_flips_sign() {
        let basis = SpechtBasis::new(2).unwrap();
        let s1 = Permutation::adjacent(4, 1).unwrap();
        let v = act_on_tabloid_vector(&s1, &polytabloid(&t0(2).unwrap())).unwrap();
        assert_eq!(basis.express(&v).unwrap(), vec![rational(-1), rational(0)]);
    }

    #[test]
    fn vector_outside_span_rejected() {
        let basis = SpechtBasis::new(2).unwrap();
        let v = TabloidVector::from_term(tabloid(&[1, 2]), int(1));
        assert_eq!(basis.express(&v), Err(Error::NotInSpan));
    }

    #[test]
    fn tabloid_vector_json() {
        let v = polytabloid(&tab(&[1], &[2]));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[{"firstRow":[1],"coeff":1},{"firstRow":[2],"coeff":-1}]"#);
        assert_eq!(serde_json::from_str::<TabloidVector>(&s).unwrap(), v);
    }

    #[test]
    fn n1_action_matrix_is_minus_one() {
        let a = specht_action_matrix(1, 1).unwrap();
        assert_eq!(a, RationalMatrix::from_integer_rows(&[vec![-1]]).unwrap());
    }

    #[test]
    fn generator_matrices_are_involutions() {
        for n in 1..=4 {
            let basis = SpechtBasis::new(n).unwrap();
            for i in 1..2 * n {
                let a = basis.action_matrix(i).unwrap();
                assert!((&a * &a).is_identity(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn braid_relation() {
        for n in 2..=4 {
            let basis = SpechtBasis::new(n).unwrap();
            let mats: Vec<_> = (1..2 * n).map(|i| basis.action_matrix(i).unwrap()).collect();
            for i in 0..mats.len() - 1 {
                let (a, b) = (&mats[i], &mats[i + 1]);
                assert_eq!(&(a * b) * a, &(b * a) * b, "n={n} i={}", i + 1);
            }
        }
    }
}
