//! Finitely presented groups: presentation data, the Artin presentation of
//! the braid group, relator augmentation and abelianization.

mod snf;

pub use snf::{smith_diagonal_checked, SnfOverflow};

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::word::{Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpresError {
    #[error("braid presentation needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("word {word} uses generator {generator} but only {count} generators exist")]
    GeneratorOutOfRange {
        word: String,
        generator: u32,
        count: usize,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("integer overflow in Smith normal form")]
    Overflow,
}

/// Generator count plus cyclically reduced relators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self, FpresError> {
        let mut p = Presentation {
            generator_count,
            relators: Vec::new(),
        };
        p.push_relators(relators)?;
        Ok(p)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn check_word(&self, w: &Word) -> Result<(), FpresError> {
        check_range(w, self.generator_count)
    }

    fn push_relators(&mut self, extra: Vec<Word>) -> Result<(), FpresError> {
        for r in &extra {
            self.check_word(r)?;
        }
        self.relators.extend(
            extra
                .into_iter()
                .map(|r| r.cyclic_core())
                .filter(|r| !r.is_identity()),
        );
        Ok(())
    }

    /// A new presentation with `extra` appended; `self` is left untouched.
    pub fn add_relators(&self, extra: &[Word]) -> Result<Presentation, FpresError> {
        let mut p = self.clone();
        p.push_relators(extra.to_vec())?;
        Ok(p)
    }

    /// Relator exponent matrix, one row per relator, one column per generator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generator_count];
                for l in r.letters() {
                    row[l.generator() as usize - 1] += l.sign();
                }
                row
            })
            .collect()
    }

    /// Abelian invariants via Smith normal form, retrying with unbounded
    /// integers when 64-bit arithmetic overflows.
    pub fn abelianization(&self) -> Result<AbelianInvariants, FpresError> {
        let matrix = self.relation_matrix();
        let diagonal = match snf::smith_diagonal_checked(&matrix) {
            Ok(d) => d,
            Err(SnfOverflow) => snf::smith_diagonal_big(&matrix)?,
        };
        Ok(AbelianInvariants::from_diagonal(
            self.generator_count,
            &diagonal,
        ))
    }

    /// Serializes to the `gens g` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("gens {}\n", self.generator_count);
        for r in &self.relators {
            let _ = writeln!(out, "{r}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Presentation, FpresError> {
        let file = PresentationFile::parse(text)?;
        if file.subgroup.is_some() {
            return Err(FpresError::Parse {
                line: 0,
                message: "unexpected subgroup section in a bare presentation".into(),
            });
        }
        Ok(file.presentation)
    }
}

fn check_range(w: &Word, count: usize) -> Result<(), FpresError> {
    match w.letters().iter().find(|l| l.generator() as usize > count) {
        Some(l) => Err(FpresError::GeneratorOutOfRange {
            word: w.to_string(),
            generator: l.generator(),
            count,
        }),
        None => Ok(()),
    }
}

/// The Artin presentation of the braid group on `n` strands: braid relators
/// `s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}` followed by far commutations.
pub fn artin_presentation(n: usize) -> Result<Presentation, FpresError> {
    if n < 2 {
        return Err(FpresError::TooFewStrands(n));
    }
    let g = (n - 1) as u32;
    let mut relators = Vec::new();
    for i in 1..g {
        let (a, b) = (Letter::pos(i), Letter::pos(i + 1));
        relators.push(Word::reduce([a, b, a, b.inv(), a.inv(), b.inv()]));
    }
    for i in 1..=g {
        for j in i + 2..=g {
            let (a, b) = (Letter::pos(i), Letter::pos(j));
            relators.push(Word::reduce([a, b, a.inv(), b.inv()]));
        }
    }
    Presentation::new(g as usize, relators)
}

/// A presentation plus optional subgroup generators, as read from a text file:
///
/// ```text
/// gens 4
/// 1 2 1 -2 -1 -2
/// # comment
/// subgroup
/// 1
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub presentation: Presentation,
    pub subgroup: Option<Vec<Word>>,
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self, FpresError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines.next().ok_or(FpresError::Parse {
            line: 1,
            message: "missing `gens` header".into(),
        })?;
        let count = header
            .strip_prefix("gens")
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or_else(|| FpresError::Parse {
                line: line_no,
                message: format!("expected `gens <count>`, found {header:?}"),
            })?;
        let mut relators = Vec::new();
        let mut subgroup: Option<Vec<Word>> = None;
        for (line_no, line) in lines {
            if line == "subgroup" {
                if subgroup.is_some() {
                    return Err(FpresError::Parse {
                        line: line_no,
                        message: "duplicate subgroup section".into(),
                    });
                }
                subgroup = Some(Vec::new());
                continue;
            }
            let w: Word = line.parse().map_err(|e: WordError| FpresError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            check_range(&w, count)?;
            match subgroup.as_mut() {
                Some(s) => s.push(w),
                None => relators.push(w),
            }
        }
        Ok(PresentationFile {
            presentation: Presentation::new(count, relators)?,
            subgroup,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = self.presentation.to_text();
        if let Some(sub) = &self.subgroup {
            out.push_str("subgroup\n");
            for w in sub {
                let _ = writeln!(out, "{w}");
            }
        }
        out
    }
}

/// `Z^free_rank x Z/d_1 x ... x Z/d_k` with `d_1 | d_2 | ... | d_k`, all `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    fn from_diagonal(generator_count: usize, diagonal: &[u64]) -> Self {
        let nonzero: Vec<u64> = diagonal.iter().copied().filter(|&d| d != 0).collect();
        AbelianInvariants {
            free_rank: generator_count - nonzero.len(),
            torsion: nonzero.into_iter().filter(|&d| d > 1).collect(),
        }
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn artin_shapes() {
        let p2 = artin_presentation(2).unwrap();
        assert_eq!((p2.generator_count(), p2.relators().len()), (1, 0));
        let p3 = artin_presentation(3).unwrap();
        assert_eq!((p3.generator_count(), p3.relators().len()), (2, 1));
        assert_eq!(p3.relators()[0], w("1 2 1 -2 -1 -2"));
        let p5 = artin_presentation(5).unwrap();
        assert_eq!(p5.generator_count(), 4);
        assert_eq!(p5.relators().len(), 6);
        assert_eq!(p5.relators().iter().filter(|r| r.len() == 6).count(), 3);
        assert_eq!(p5.relators().iter().filter(|r| r.len() == 4).count(), 3);
        assert_eq!(artin_presentation(1), Err(FpresError::TooFewStrands(1)));
    }

    #[test]
    fn add_relators_leaves_original() {
        let base = artin_presentation(5).unwrap();
        let q = base.add_relators(&[w("2 -1")]).unwrap();
        assert_eq!(base.relators().len(), 6);
        assert_eq!(q.relators().len(), 7);
        assert_eq!(q.relators()[6], w("2 -1"));
        assert!(matches!(
            base.add_relators(&[w("5")]),
            Err(FpresError::GeneratorOutOfRange {
                generator: 5,
                count: 4,
                ..
            })
        ));
    }

    #[test]
    fn relators_are_cyclically_reduced() {
        let p = Presentation::new(2, vec![w("1 2 -1"), w("1 -1")]).unwrap();
        assert_eq!(p.relators(), &[w("2")]);
    }

    #[test]
    fn abelianization_examples() {
        for n in 2..=9 {
            assert!(artin_presentation(n)
                .unwrap()
                .abelianization()
                .unwrap()
                .is_infinite_cyclic());
        }
        let z5 = Presentation::new(1, vec![w("1 1 1 1 1")]).unwrap();
        assert_eq!(
            z5.abelianization().unwrap(),
            AbelianInvariants {
                free_rank: 0,
                torsion: vec![5]
            }
        );
        let carmichael = artin_presentation(5)
            .unwrap()
            .add_relators(&[w("2 -1").pow(3), w("3 -1").pow(2)])
            .unwrap();
        assert!(carmichael.abelianization().unwrap().is_infinite_cyclic());
        // Z/4 x Z/6 = Z/2 x Z/12
        let p = Presentation::new(2, vec![w("1").pow(4), w("2").pow(6), w("1 2 -1 -2")]).unwrap();
        assert_eq!(
            p.abelianization().unwrap(),
            AbelianInvariants {
                free_rank: 0,
                torsion: vec![2, 12]
            }
        );
        let free = Presentation::new(3, vec![]).unwrap();
        assert_eq!(free.abelianization().unwrap().free_rank, 3);
    }

    #[test]
    fn text_format_roundtrip() {
        let file = PresentationFile {
            presentation: artin_presentation(4)
                .unwrap()
                .add_relators(&[w("3 -1")])
                .unwrap(),
            subgroup: Some(vec![w("1")]),
        };
        let text = file.to_text();
        assert!(text.starts_with("gens 3\n1 2 1 -2 -1 -2\n"));
        assert_eq!(PresentationFile::parse(&text).unwrap(), file);
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(
            Presentation::parse(""),
            Err(FpresError::Parse { .. })
        ));
        assert!(matches!(
            Presentation::parse("gens x\n"),
            Err(FpresError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Presentation::parse("gens 2\n1 0\n"),
            Err(FpresError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Presentation::parse("gens 2\n# note\n3\n"),
            Err(FpresError::GeneratorOutOfRange { .. })
        ));
        assert!(Presentation::parse("gens 1\n1 1\nsubgroup\n1\n").is_err());
        let p = Presentation::parse("# header comment\ngens 1\n\n1 1 1 # cube\n").unwrap();
        assert_eq!(p.relators(), &[w("1 1 1")]);
    }
}
