//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polyweb_core::character::compare_characters;
use polyweb_core::minors::{psi_equivariance_failures, verify_sign_rule, WebPolynomialBasis};
use polyweb_core::transition::{check_diagonal_ones, check_nonnegative, check_support_acyclic, intertwiner_space};
use polyweb_core::webs::RationalWebVector;
use polyweb_core::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || format!("took {elapsed:.2?}, budget {budget:?}"))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn catalan_dimensions() -> Outcome {
    let start = Instant::now();
    for n in 1..=8 {
        let expected = catalan(n);
        let syt = enumerate_syt(n).map_err(err)?.len();
        let webs = enumerate_webs(n).map_err(err)?.len();
        ensure(expected == syt.into() && expected == webs.into(), || {
            format!("n = {n}: Cat = {expected}, |SYT| = {syt}, |webs| = {webs}")
        })?;
    }
    ensure(catalan(3) == 5u32.into(), || "Cat(3) != 5".into())?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("n = 1..8 in {:.2?}", start.elapsed()))
}

fn positive_expansion() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=5 {
        let basis = WebPolynomialBasis::new(n).map_err(err)?;
        for m in all_perfect_matchings(n).map_err(err)? {
            let v = resolve_crossings(&m);
            for (w, c) in &v {
                ensure(w.is_noncrossing() && *c > BigInt::zero(), || format!("{m}: term {c}·{w}"))?;
            }
            if n <= 4 {
                compare_with_polynomial_oracle(&basis, &m, &v)?;
            }
            checked += 1;
        }
    }
    let basis = WebPolynomialBasis::new(5).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..100 {
        let m = random_matching(5, &mut rng).map_err(err)?;
        compare_with_polynomial_oracle(&basis, &m, &resolve_crossings(&m))?;
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "{checked} matchings nonnegative; oracle exhaustive n <= 4 + 100 random at n = 5; {:.2?}",
        start.elapsed()
    ))
}

fn compare_with_polynomial_oracle(
    basis: &WebPolynomialBasis,
    m: &PerfectMatching,
    v: &WebVector,
) -> Result<(), String> {
    let oracle = basis.expand(&delta_product(m)).map_err(err)?;
    let ours: RationalWebVector = v.map_coeffs(|c| Rational::from_integer(c.clone()));
    ensure(oracle == ours, || format!("{m}: resolution {ours} vs polynomial oracle {oracle}"))
}

struct Computed {
    n: usize,
    run: polyweb_core::transition::TransitionComputation,
}

fn compute_all() -> Result<(Vec<Computed>, Duration), String> {
    let mut out = Vec::new();
    let mut n6 = Duration::ZERO;
    for n in 1..=6 {
        let start = Instant::now();
        let run = compute_transition(n, SyzygyRule::Standard).map_err(err)?;
        if n == 6 {
            n6 = start.elapsed();
        }
        out.push(Computed { n, run });
    }
    Ok((out, n6))
}

fn nonnegative_integrality(all: &[Computed], n6: Duration) -> Outcome {
    let dims = [1, 2, 5, 14, 42, 132];
    for c in all {
        let a = &c.run.matrix;
        ensure(a.dim() == dims[c.n - 1], || format!("n = {}: dimension {}", c.n, a.dim()))?;
        let check = check_nonnegative(a);
        ensure(check.passed, || format!("n = {}: {:?}", c.n, check.counterexamples.first()))?;
    }
    within(n6, Duration::from_secs(300))?;
    Ok(format!("n = 1..6, 132x132 at n = 6 built in {n6:.2?}"))
}

fn unitriangularity(all: &[Computed]) -> Outcome {
    for c in all {
        let a = &c.run.matrix;
        for check in [check_diagonal_ones(a), check_support_acyclic(a)] {
            ensure(check.passed, || format!("n = {}: {:?}", c.n, check.counterexamples.first()))?;
        }
        let m0_index = a.col_labels().iter().position(|w| *w == m0(c.n).unwrap());
        let first_row_ok = a.row_labels()[0] == t0(c.n).map_err(err)?
            && a.entries()[0]
                .iter()
                .enumerate()
                .all(|(j, x)| if Some(j) == m0_index { x.is_one() } else { x.is_zero() });
        ensure(first_row_ok, || format!("n = {}: row of T0 is not the M0 indicator", c.n))?;
        ensure(c.run.rows.iter().all(|r| r.sign == 1), || format!("n = {}: a row sign was -1", c.n))?;
    }
    Ok("diagonal ones, acyclic support, row T0 = M0 indicator, n = 1..6".into())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    for n in 1..=4 {
        let specht = SpechtBasis::new(n).map_err(err)?;
        let webs = WebBasis::new(n).map_err(err)?;
        let kernel = intertwiner_space(&specht, &webs).map_err(err)?;
        ensure(kernel.len() == 1, || format!("n = {n}: intertwiner space has dimension {}", kernel.len()))?;
        let oracle = polyweb_core::transition::oracle_from_bases(&specht, &webs).map_err(err)?;
        let ours = transition_matrix(n).map_err(err)?;
        ensure(oracle == ours, || format!("n = {n}: oracle differs from the computed matrix"))?;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("n = 1..4 in {:.2?}", start.elapsed()))
}

fn coxeter(family: &str, gens: &[RationalMatrix]) -> Result<usize, String> {
    let id = RationalMatrix::identity(gens[0].rows());
    let mut count = 0;
    for (i, a) in gens.iter().enumerate() {
        ensure(a * a == id, || format!("{family}: s{} is not an involution", i + 1))?;
        count += 1;
        for (j, b) in gens.iter().enumerate().skip(i + 1) {
            if j - i >= 2 {
                ensure(a * b == b * a, || format!("{family}: s{} and s{} do not commute", i + 1, j + 1))?;
            } else {
                ensure(&(a * b) * a == &(b * a) * b, || format!("{family}: braid fails at s{}", i + 1))?;
            }
            count += 1;
        }
    }
    Ok(count)
}

fn well_definedness() -> Outcome {
    let mut instances = 0;
    for n in 1..=5 {
        let specht = SpechtBasis::new(n).map_err(err)?;
        let webs = WebBasis::new(n).map_err(err)?;
        let a: Vec<_> = (1..2 * n).map(|i| specht.action_matrix(i)).collect::<Result<_>>().map_err(err)?;
        let b: Vec<_> = (1..2 * n).map(|i| webs.action_matrix(i)).collect::<Result<_>>().map_err(err)?;
        instances += coxeter(&format!("Specht n = {n}"), &a)?;
        instances += coxeter(&format!("web n = {n}"), &b)?;
    }
    Ok(format!("{instances} relation instances, n = 1..5"))
}

fn psi_equivariance() -> Outcome {
    let mut pairs = 0;
    for n in 1..=4 {
        let basis = WebPolynomialBasis::new(n).map_err(err)?;
        let failures = psi_equivariance_failures(&basis).map_err(err)?;
        ensure(failures.is_empty(), || format!("n = {n}: {} failures, first {:?}", failures.len(), failures[0]))?;
        pairs += (2 * n - 1) * basis.webs().dim();
    }
    Ok(format!("{pairs} generator/web pairs, n = 1..4"))
}

fn sign_rule() -> Outcome {
    let mut count = 0;
    for n in 1..=4 {
        for i in 1..2 * n {
            let s = Permutation::adjacent(2 * n, i).map_err(err)?;
            for m in all_perfect_matchings(n).map_err(err)? {
                ensure(verify_sign_rule(&s, &m).map_err(err)?, || format!("s{i} on {m}"))?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..200 {
        let sigma = random_permutation(10, &mut rng);
        let m = random_matching(5, &mut rng).map_err(err)?;
        ensure(verify_sign_rule(&sigma, &m).map_err(err)?, || format!("{sigma} on {m}"))?;
        count += 1;
    }
    Ok(format!("{count} (permutation, matching) pairs"))
}

fn characters() -> Outcome {
    let mut classes = 0;
    for n in 1..=4 {
        let traces =
            compare_characters(&SpechtBasis::new(n).map_err(err)?, &WebBasis::new(n).map_err(err)?).map_err(err)?;
        for t in &traces {
            ensure(t.agrees, || format!("n = {n}, class {:?}: {} vs {}", t.cycle_type, t.specht_trace, t.web_trace))?;
        }
        classes += traces.len();
    }
    Ok(format!("{classes} conjugacy classes, n = 1..4"))
}

fn run_verify(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_polyweb")).arg("verify").args(args).output().map_err(err)?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn negative_controls() -> Outcome {
    for n in ["2", "3", "4"] {
        let (code, _) = run_verify(&["--n", n, "--with-oracle"])?;
        ensure(code == 0, || format!("clean run at n = {n} exited {code}"))?;
        for fault in ["syzygy-sign-flip", "negative-entry"] {
            let (code, report) = run_verify(&["--n", n, "--inject-fault", fault])?;
            let report: VerificationReport = serde_json::from_str(&report).map_err(err)?;
            ensure(code == 1 && !report.counterexamples.is_empty(), || {
                format!("{fault} at n = {n}: exit {code}, {} counterexamples", report.counterexamples.len())
            })?;
        }
    }
    Ok("both faults exit 1 with counterexamples at n = 2..4; clean runs exit 0".into())
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS  {id:>2} {name}: {detail}"),
        Err(detail) => {
            failed += 1;
            println!("FAIL  {id:>2} {name}: {detail}");
        }
    };

    report(1, "catalan dimensions", catalan_dimensions());
    report(2, "positive expansion of every matching", positive_expansion());
    match compute_all() {
        Ok((all, n6)) => {
            report(3, "nonnegative integer transition matrix", nonnegative_integrality(&all, n6));
            report(4, "unitriangularity", unitriangularity(&all));
        }
        Err(e) => {
            report(3, "nonnegative integer transition matrix", Err(e.clone()));
            report(4, "unitriangularity", Err(e));
        }
    }
    report(5, "intertwiner oracle equivalence", oracle_equivalence());
    report(6, "Coxeter relations in both models", well_definedness());
    report(7, "column action matches the web action", psi_equivariance());
    report(8, "sign rule", sign_rule());
    report(9, "character consistency", characters());
    report(10, "fault injection is detected", negative_controls());

    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
