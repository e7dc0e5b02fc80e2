//! Class-by-class character comparison of the polytabloid and web models.

use serde::Serialize;

use crate::combinatorics::{partitions, Permutation};
use crate::error::Result;
use crate::exactalg::Rational;
use crate::specht::SpechtBasis;
use crate::webs::WebBasis;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassTrace {
    /// Cycle type of the representative.
    pub cycle_type: Vec<usize>,
    pub specht_trace: String,
    pub web_trace: String,
    pub agrees: bool,
}

/// Trace of each conjugacy class representative of `S_2n` in both models.
///
/// The polytabloid side acts on tabloids and re-expands in standard
/// polytabloids; the web side composes generator actions along a reduced
/// word. The two routes share no code past the enumeration of the bases.
pub fn compare_characters(specht: &SpechtBasis, webs: &WebBasis) -> Result<Vec<ClassTrace>> {
    let size = 2 * specht.n();
    partitions(size)
        .into_iter()
        .map(|parts| {
            let sigma = Permutation::from_cycle_type(&parts)?;
            let a: Rational = specht.permutation_matrix(&sigma)?.trace();
            let b: Rational = webs.permutation_matrix(&sigma)?.trace();
            Ok(ClassTrace { cycle_type: parts, specht_trace: a.to_string(), web_trace: b.to_string(), agrees: a == b })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_characters() {
        let traces = compare_characters(&SpechtBasis::new(2).unwrap(), &WebBasis::new(2).unwrap()).unwrap();
        // Character of S^(2,2) on classes 4, 31, 22, 211, 1111.
        let expected = ["0", "-1", "2", "0", "2"];
        for (t, e) in traces.iter().zip(expected) {
            assert!(t.agrees);
            assert_eq!(t.specht_trace, e, "{:?}", t.cycle_type);
        }
    }
}
