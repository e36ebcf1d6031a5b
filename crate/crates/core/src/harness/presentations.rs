//! The presentations enumerated by the checks. Every one is also shipped as a
//! golden file so that runs can be reproduced with other enumerators.

use crate::fpres::{artin_presentation, FpresError, Presentation, PresentationFile};
use crate::perm::Permutation;
use crate::word::{Letter, Word};

fn word(s: &str) -> Word {
    s.parse().expect("literal word")
}

/// `σ2 σ1^-1`
pub fn u_word() -> Word {
    word("2 -1")
}

/// `σ3 σ1^-1`
pub fn c1_word() -> Word {
    word("3 -1")
}

fn sigma1_subgroup() -> Option<Vec<Word>> {
    Some(vec![Word::from(Letter::pos(1))])
}

/// `B_n` modulo the normal closure of `relator`, with subgroup `⟨σ1⟩`.
pub fn relator_quotient(n: usize, relator: &Word) -> Result<PresentationFile, FpresError> {
    Ok(PresentationFile {
        presentation: artin_presentation(n)?.add_relators(std::slice::from_ref(relator))?,
        subgroup: sigma1_subgroup(),
    })
}

/// `B_n` modulo `(σ2 σ1^-1)^3` and `(σ3 σ1^-1)^2`, with subgroup `⟨σ1⟩`; the
/// index is `n!/2` when the quotient collapses onto `A_n`.
pub fn carmichael_quotient(n: usize) -> Result<PresentationFile, FpresError> {
    if n < 4 {
        return Err(FpresError::TooFewStrands(n));
    }
    Ok(PresentationFile {
        presentation: artin_presentation(n)?.add_relators(&[u_word().pow(3), c1_word().pow(2)])?,
        subgroup: sigma1_subgroup(),
    })
}

/// A two-generator presentation of `A_n` for `n = 5, 6` (trivial subgroup),
/// with generator images in `A_n` realizing it.
pub fn alternating_presentation(n: usize) -> Option<(PresentationFile, [Permutation; 2])> {
    let (relators, a, b) = match n {
        // ⟨a, b | a^2, b^3, (ab)^5⟩
        5 => (
            vec![word("1 1"), word("2 2 2"), word("1 2").pow(5)],
            "(1 4)(2 3)",
            "(1 2 5)",
        ),
        // ⟨a, b | a^2, b^4, (ab)^5, (ab^2)^5⟩
        6 => (
            vec![
                word("1 1"),
                word("2 2 2 2"),
                word("1 2").pow(5),
                word("1 2 2").pow(5),
            ],
            "(1 4)(2 3)",
            "(1 6)(2 3 5 4)",
        ),
        _ => return None,
    };
    let presentation = Presentation::new(2, relators).expect("two generators");
    let images = [
        Permutation::parse_cycles(a, n).expect("literal permutation"),
        Permutation::parse_cycles(b, n).expect("literal permutation"),
    ];
    Some((
        PresentationFile {
            presentation,
            subgroup: Some(Vec::new()),
        },
        images,
    ))
}

/// File name and contents of every golden presentation.
pub fn golden_presentations() -> Vec<(String, PresentationFile)> {
    let mut out = Vec::new();
    let relators = [("u", u_word()), ("c1", c1_word())];
    for (tag, r) in &relators {
        out.push((
            format!("lemma_A_n4_{tag}.pres"),
            relator_quotient(4, r).expect("n = 4"),
        ));
    }
    for n in 5..=8 {
        for (tag, r) in &relators {
            out.push((
                format!("lemma_A_n{n}_{tag}.pres"),
                relator_quotient(n, r).expect("n >= 5"),
            ));
        }
        let square = relator_quotient(n, &u_word().pow(2)).expect("n >= 5");
        out.push((format!("lemma_2_n{n}.pres"), square));
        out.push((
            format!("carmichael_collapse_n{n}.pres"),
            carmichael_quotient(n).expect("n >= 5"),
        ));
    }
    for n in [5, 6] {
        let (file, _) = alternating_presentation(n).expect("n = 5, 6");
        out.push((format!("aut_footnote_n{n}.pres"), file));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let c = carmichael_quotient(5).unwrap();
        assert_eq!(c.presentation.relators().len(), 8);
        assert_eq!(c.presentation.relators()[6], word("2 -1 2 -1 2 -1"));
        assert!(carmichael_quotient(3).is_err());
        assert!(alternating_presentation(7).is_none());
        let names: Vec<String> = golden_presentations().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names.len(), 20);
        assert!(names.contains(&"carmichael_collapse_n8.pres".to_string()));
    }
}
