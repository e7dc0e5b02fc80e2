//! The transition matrix from the standard polytabloid basis to the web
//! basis, the checks for nonnegativity and unitriangularity, and an
//! independent recomputation as the unique normalised intertwiner.
//!
//! Row `T` is computed as follows. Let `σ` send `T0` to `T` cell by cell.
//! The intertwiner maps `v_T0` to `w_M0 = Δ_M0`, so it maps `v_T = σ.v_T0`
//! to `σ.Δ_M0 = ±Δ_σ(M0)`, where the sign counts pairs of `M0` inverted by
//! `σ`. Resolving the crossings of `σ(M0)` gives the row.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    apply_permutation_to_matching, check_n, enumerate_syt, enumerate_webs, m0, permutation_from_tableaux,
    random_matching, t0, tableau_to_web, PerfectMatching, StandardTableau, Web,
};
use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalMatrix, SparseEchelon};
use crate::json_int::JsonInt;
use crate::specht::SpechtBasis;
use crate::webs::{CrossingResolver, ResolverStats, SyzygyRule, WebBasis, WebVector};

/// Default largest `n` for the intertwiner oracle.
pub const DEFAULT_ORACLE_CAP: usize = 4;

/// Default seed for the random matchings resolved by [`verify`].
pub const DEFAULT_SEED: u64 = 20_170_502;

/// `(a_{TM})` with rows indexed by standard tableaux and columns by webs,
/// both in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TransitionMatrix {
    n: usize,
    row_labels: Vec<StandardTableau>,
    col_labels: Vec<Web>,
    entries: Vec<Vec<BigInt>>,
}

impl TransitionMatrix {
    pub fn from_entries(n: usize, entries: Vec<Vec<BigInt>>) -> Result<Self> {
        check_n(n)?;
        let row_labels = enumerate_syt(n)?;
        let col_labels = enumerate_webs(n)?;
        let dim = row_labels.len();
        if entries.len() != dim || entries.iter().any(|r| r.len() != dim) {
            return Err(Error::SizeMismatch { expected: dim, found: entries.len() });
        }
        Ok(Self { n, row_labels, col_labels, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.row_labels.len()
    }

    pub fn row_labels(&self) -> &[StandardTableau] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Web] {
        &self.col_labels
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row][col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row][col] = value;
    }

    /// `P` with `P[M][T] = a_{TM}`: the matrix of the intertwiner from
    /// polytabloid coordinates to web coordinates.
    pub fn intertwiner_matrix(&self) -> RationalMatrix {
        let d = self.dim();
        let mut p = RationalMatrix::zeros(d, d);
        for (t, row) in self.entries.iter().enumerate() {
            for (m, a) in row.iter().enumerate() {
                p.set(m, t, Rational::from_integer(a.clone()));
            }
        }
        p
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct TransitionMatrixRepr {
    n: usize,
    row_labels: Vec<StandardTableau>,
    col_labels: Vec<Web>,
    entries: Vec<Vec<JsonInt>>,
}

impl Serialize for TransitionMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TransitionMatrixRepr {
            n: self.n,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(JsonInt::from).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TransitionMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TransitionMatrixRepr::deserialize(d)?;
        let entries = repr
            .entries
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::try_from).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let m = TransitionMatrix::from_entries(repr.n, entries).map_err(D::Error::custom)?;
        if m.row_labels != repr.row_labels || m.col_labels != repr.col_labels {
            return Err(D::Error::custom("labels are not in canonical order"));
        }
        Ok(m)
    }
}

/// One computed row together with the intermediate data it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionRow {
    /// `σ(M0)` for the `σ` sending `T0` to `T`.
    pub matching: PerfectMatching,
    /// Sign of `σ.Δ_M0 = sign · Δ_σ(M0)`.
    pub sign: i32,
    pub expansion: WebVector,
}

/// Builds rows with a shared crossing-resolution memo.
#[derive(Clone, Debug)]
pub struct TransitionBuilder {
    n: usize,
    t0: StandardTableau,
    m0: PerfectMatching,
    resolver: CrossingResolver,
}

impl TransitionBuilder {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_rule(n, SyzygyRule::Standard)
    }

    pub fn with_rule(n: usize, rule: SyzygyRule) -> Result<Self> {
        Ok(Self { n, t0: t0(n)?, m0: m0(n)?.into_matching(), resolver: CrossingResolver::with_rule(rule) })
    }

    pub fn row(&mut self, t: &StandardTableau) -> Result<TransitionRow> {
        if t.n() != self.n {
            return Err(Error::SizeMismatch { expected: 2 * self.n, found: 2 * t.n() });
        }
        let sigma = permutation_from_tableaux(&self.t0, t)?;
        let (sign, matching) = apply_permutation_to_matching(&sigma, &self.m0)?;
        let expansion = self.resolver.resolve(&matching).scaled(&BigInt::from(sign));
        Ok(TransitionRow { matching, sign, expansion })
    }

    pub fn stats(&self) -> ResolverStats {
        self.resolver.stats()
    }
}

/// The image of `v_T` in the web basis.
pub fn transition_row(t: &StandardTableau) -> Result<WebVector> {
    Ok(TransitionBuilder::new(t.n())?.row(t)?.expansion)
}

/// A full computation: the matrix, the per-row signs, and resolver counts.
#[derive(Clone, Debug)]
pub struct TransitionComputation {
    pub matrix: TransitionMatrix,
    pub rows: Vec<TransitionRow>,
    pub stats: ResolverStats,
}

pub fn compute_transition(n: usize, rule: SyzygyRule) -> Result<TransitionComputation> {
    let mut builder = TransitionBuilder::with_rule(n, rule)?;
    let basis = WebBasis::new(n)?;
    let syt = enumerate_syt(n)?;
    let mut rows = Vec::with_capacity(syt.len());
    let mut entries = Vec::with_capacity(syt.len());
    for t in &syt {
        let row = builder.row(t)?;
        let mut dense = vec![BigInt::zero(); basis.dim()];
        for (w, c) in &row.expansion {
            let k = basis.index_of(w).expect("resolution yields webs of the same order");
            dense[k] = c.clone();
        }
        entries.push(dense);
        rows.push(row);
    }
    Ok(TransitionComputation { matrix: TransitionMatrix::from_entries(n, entries)?, rows, stats: builder.stats() })
}

pub fn transition_matrix(n: usize) -> Result<TransitionMatrix> {
    Ok(compute_transition(n, SyzygyRule::Standard)?.matrix)
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
}

impl Counterexample {
    fn new(check: &str, detail: impl Into<String>) -> Self {
        Self { check: check.into(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckOutcome {
    fn from_counterexamples(counterexamples: Vec<Counterexample>) -> Self {
        Self { passed: counterexamples.is_empty(), counterexamples }
    }
}

pub fn check_nonnegative(a: &TransitionMatrix) -> CheckOutcome {
    let mut bad = Vec::new();
    for (r, row) in a.entries().iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if x.sign() == Sign::Minus {
                bad.push(Counterexample::new(
                    "nonnegative",
                    format!("a[{}][{}] = {x} (T = {}, M = {})", r, c, a.row_labels[r], a.col_labels[c]),
                ));
            }
        }
    }
    CheckOutcome::from_counterexamples(bad)
}

/// `a_{T, tableau_to_web(T)} = 1` for every `T`.
pub fn check_diagonal_ones(a: &TransitionMatrix) -> CheckOutcome {
    let mut bad = Vec::new();
    for (r, t) in a.row_labels().iter().enumerate() {
        let w = tableau_to_web(t);
        let c = a.col_labels().iter().position(|x| *x == w).expect("bijection onto webs");
        if !a.entry(r, c).is_one() {
            bad.push(Counterexample::new("diagonalOnes", format!("a[T={t}][M={w}] = {}", a.entry(r, c))));
        }
    }
    CheckOutcome::from_counterexamples(bad)
}

/// The relation `tableau_to_web(T) -> M` for `a_{TM} ≠ 0`, `M ≠
/// tableau_to_web(T)`, has no directed cycle.
pub fn check_support_acyclic(a: &TransitionMatrix) -> CheckOutcome {
    let d = a.dim();
    let diag_col: Vec<usize> = a
        .row_labels()
        .iter()
        .map(|t| {
            let w = tableau_to_web(t);
            a.col_labels().iter().position(|x| *x == w).expect("bijection onto webs")
        })
        .collect();

    let mut out_edges = vec![Vec::new(); d];
    let mut in_degree = vec![0usize; d];
    for (r, row) in a.entries().iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if c != diag_col[r] && !x.is_zero() {
                out_edges[diag_col[r]].push(c);
                in_degree[c] += 1;
            }
        }
    }
    // Kahn's algorithm; whatever is left over lies on or behind a cycle.
    let mut queue: VecDeque<usize> = (0..d).filter(|&v| in_degree[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop_front() {
        removed += 1;
        for &u in &out_edges[v] {
            in_degree[u] -= 1;
            if in_degree[u] == 0 {
                queue.push_back(u);
            }
        }
    }
    if removed == d {
        return CheckOutcome::from_counterexamples(Vec::new());
    }
    let stuck: Vec<String> = (0..d).filter(|&v| in_degree[v] > 0).map(|v| a.col_labels()[v].to_string()).collect();
    CheckOutcome::from_counterexamples(vec![Counterexample::new(
        "supportAcyclic",
        format!("support relation has a cycle through {}", stuck.join(" ")),
    )])
}

/// Diagonal ones plus an acyclic off-diagonal support, so that some total
/// order on the bases makes the matrix unitriangular.
pub fn check_unitriangular(a: &TransitionMatrix) -> CheckOutcome {
    let mut c = check_diagonal_ones(a).counterexamples;
    c.extend(check_support_acyclic(a).counterexamples);
    CheckOutcome::from_counterexamples(c)
}

/// Pairs `(i, T)` where `P · A_i` and `B_i · P` differ in column `T`.
pub fn equivariance_failures(
    a: &TransitionMatrix,
    specht: &SpechtBasis,
    webs: &WebBasis,
) -> Result<Vec<(usize, usize)>> {
    let p = a.intertwiner_matrix();
    let mut failures = Vec::new();
    for i in 1..2 * a.n() {
        let lhs = &p * &specht.action_matrix(i)?;
        let rhs = &webs.action_matrix(i)? * &p;
        for t in 0..a.dim() {
            if lhs.column(t) != rhs.column(t) {
                failures.push((i, t));
            }
        }
    }
    Ok(failures)
}

// ---------------------------------------------------------------------------
// Intertwiner oracle
// ---------------------------------------------------------------------------

/// Nullspace of `X ↦ (X·A_i - B_i·X)_i`, with `X` flattened as
/// `X[M][T] -> M·d + T`.
pub fn intertwiner_space(specht: &SpechtBasis, webs: &WebBasis) -> Result<Vec<Vec<Rational>>> {
    let d = specht.dim();
    let mut echelon = SparseEchelon::new(d * d);
    for i in 1..2 * specht.n() {
        let a = specht.action_matrix(i)?;
        let b = webs.action_matrix(i)?;
        for m in 0..d {
            for t in 0..d {
                let mut row: Vec<(usize, Rational)> = Vec::new();
                for k in 0..d {
                    let x = a.get(k, t);
                    if !x.is_zero() {
                        row.push((m * d + k, x.clone()));
                    }
                    let y = b.get(m, k);
                    if !y.is_zero() {
                        row.push((k * d + t, -y.clone()));
                    }
                }
                echelon.insert(row);
            }
        }
    }
    Ok(echelon.nullspace())
}

/// The unique intertwiner normalised by `a_{T0,M0} = 1`, as a transition
/// matrix. Fails unless the intertwiner space is one-dimensional and the
/// normalised solution is integral.
pub fn intertwiner_oracle(n: usize) -> Result<TransitionMatrix> {
    let specht = SpechtBasis::new(n)?;
    let webs = WebBasis::new(n)?;
    oracle_from_bases(&specht, &webs)
}

pub fn oracle_from_bases(specht: &SpechtBasis, webs: &WebBasis) -> Result<TransitionMatrix> {
    let space = intertwiner_space(specht, webs)?;
    if space.len() != 1 {
        return Err(Error::IntertwinerDimension(space.len()));
    }
    let x = &space[0];
    let d = specht.dim();
    // T0 and M0 are both index 0.
    let scale = x[0].clone();
    if scale.is_zero() {
        return Err(Error::IntertwinerDimension(0));
    }
    let mut entries = vec![vec![BigInt::zero(); d]; d];
    for m in 0..d {
        for t in 0..d {
            let v = &x[m * d + t] / &scale;
            if !v.is_integer() {
                return Err(Error::NonIntegral { row: t, col: m, value: v.to_string() });
            }
            entries[t][m] = v.to_integer();
        }
    }
    TransitionMatrix::from_entries(specht.n(), entries)
}

// ---------------------------------------------------------------------------
// Verification report
// ---------------------------------------------------------------------------

/// Deliberate faults for exercising the verification pipeline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    #[default]
    None,
    /// Resolve crossings with `Δ_ac Δ_bd = Δ_ab Δ_cd - Δ_ad Δ_bc`.
    SyzygySignFlip,
    /// Overwrite the bottom-left entry with `-1` after computing.
    NegativeEntry,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub with_oracle: bool,
    pub oracle_cap: usize,
    pub fault: Fault,
    /// Number of random perfect matchings to resolve and check.
    pub resolution_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            with_oracle: false,
            oracle_cap: DEFAULT_ORACLE_CAP,
            fault: Fault::None,
            resolution_samples: 20,
            seed: DEFAULT_SEED,
        }
    }
}

mod oracle_status {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Ran(bool),
        NotRun(String),
    }

    pub fn serialize<S: Serializer>(v: &Option<bool>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(b) => Repr::Ran(*b),
            None => Repr::NotRun("NotRun".into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<bool>, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Ran(b) => Ok(Some(b)),
            Repr::NotRun(s) if s == "NotRun" => Ok(None),
            Repr::NotRun(s) => Err(serde::de::Error::custom(format!("unexpected oracle status {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub n: usize,
    pub nonnegative: bool,
    pub diagonal_ones: bool,
    pub support_acyclic: bool,
    /// Every row sign from the inversion-pair rule was `+1`.
    pub row_signs_positive: bool,
    pub resolution_sample_size: usize,
    /// Every sampled matching resolved to nonnegative web coordinates.
    pub resolution_sample_nonnegative: bool,
    /// `None` when the oracle was not run.
    #[serde(with = "oracle_status")]
    pub oracle_agrees: Option<bool>,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.nonnegative
            && self.diagonal_ones
            && self.support_acyclic
            && self.row_signs_positive
            && self.resolution_sample_nonnegative
            && self.oracle_agrees != Some(false)
    }
}

pub fn verify(n: usize, options: &VerifyOptions) -> Result<VerificationReport> {
    let rule = match options.fault {
        Fault::SyzygySignFlip => SyzygyRule::FlippedSign,
        _ => SyzygyRule::Standard,
    };
    let computed = compute_transition(n, rule)?;
    let mut matrix = computed.matrix;
    if options.fault == Fault::NegativeEntry {
        let last = matrix.dim() - 1;
        matrix.set_entry(last, 0, -BigInt::one());
    }

    let mut counterexamples = Vec::new();
    let nonnegative = check_nonnegative(&matrix);
    let diagonal = check_diagonal_ones(&matrix);
    let acyclic = check_support_acyclic(&matrix);
    for outcome in [&nonnegative, &diagonal, &acyclic] {
        counterexamples.extend(outcome.counterexamples.iter().cloned());
    }

    let mut row_signs_positive = true;
    for (t, row) in matrix.row_labels().iter().zip(&computed.rows) {
        if row.sign != 1 {
            row_signs_positive = false;
            counterexamples.push(Counterexample::new("rowSignsPositive", format!("T = {t}: sign {}", row.sign)));
        }
    }

    let mut resolver = CrossingResolver::with_rule(rule);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut resolution_sample_nonnegative = true;
    for _ in 0..options.resolution_samples {
        let m = random_matching(n, &mut rng)?;
        for (w, c) in &resolver.resolve(&m) {
            if c.sign() == Sign::Minus {
                resolution_sample_nonnegative = false;
                counterexamples.push(Counterexample::new("resolutionSampleNonnegative", format!("{m} -> {c}·{w}")));
            }
        }
    }

    let oracle_agrees = if options.with_oracle && n <= options.oracle_cap {
        let agrees = match intertwiner_oracle(n) {
            Ok(oracle) => {
                let mut ok = true;
                for r in 0..oracle.dim() {
                    for c in 0..oracle.dim() {
                        if oracle.entry(r, c) != matrix.entry(r, c) {
                            ok = false;
                            counterexamples.push(Counterexample::new(
                                "oracleAgrees",
                                format!(
                                    "a[{r}][{c}]: computed {} vs oracle {}",
                                    matrix.entry(r, c),
                                    oracle.entry(r, c)
                                ),
                            ));
                        }
                    }
                }
                ok
            }
            Err(e) => {
                counterexamples.push(Counterexample::new("oracleAgrees", e.to_string()));
                false
            }
        };
        Some(agrees)
    } else {
        None
    };

    Ok(VerificationReport {
        n,
        nonnegative: nonnegative.passed,
        diagonal_ones: diagonal.passed,
        support_acyclic: acyclic.passed,
        row_signs_positive,
        resolution_sample_size: options.resolution_samples,
        resolution_sample_nonnegative,
        oracle_agrees,
        counterexamples,
    })
}
