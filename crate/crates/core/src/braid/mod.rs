//! Braid words on `n` strands, band generators, the projection to `S_n`, and
//! the word problem via Garside normal form.

mod garside;

pub use garside::GarsideNormalForm;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::perm::Permutation;
use crate::word::{Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid groups need at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: u32, strands: usize },
    #[error("invalid strand indices {indices:?} for {strands} strands")]
    InvalidIndices { indices: Vec<usize>, strands: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("{element} needs at least {min} strands, got {strands}")]
    NeedsMoreStrands {
        element: &'static str,
        min: usize,
        strands: usize,
    },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("cannot parse braid {0:?}: expected `n: word`")]
    Parse(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("no conjugator found for triple {0:?}")]
    NoConjugator((usize, usize, usize)),
}

/// A word in the Artin generators `σ_1..σ_{n-1}` of the braid group on `n` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    word: Word,
}

impl BraidWord {
    pub fn new(strands: usize, word: Word) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        let top = word.max_generator();
        if top as usize > strands - 1 {
            return Err(BraidError::GeneratorOutOfRange {
                generator: top,
                strands,
            });
        }
        Ok(BraidWord { strands, word })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        BraidWord::new(strands, Word::identity())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn exponent_sum(&self) -> i64 {
        self.word.exponent_sum()
    }

    fn same_strands(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.strands == other.strands {
            Ok(())
        } else {
            Err(BraidError::StrandMismatch(self.strands, other.strands))
        }
    }

    pub fn multiply(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        self.same_strands(other)?;
        Ok(BraidWord {
            strands: self.strands,
            word: self.word.multiply(&other.word),
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            word: self.word.invert(),
        }
    }

    /// `g · self · g^-1`.
    pub fn conjugate(&self, g: &BraidWord) -> Result<BraidWord, BraidError> {
        self.same_strands(g)?;
        Ok(BraidWord {
            strands: self.strands,
            word: self.word.conjugate(&g.word),
        })
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        BraidWord {
            strands: self.strands,
            word: self.word.pow(k),
        }
    }

    /// Image in `S_n` under `σ_i ↦ (i i+1)`, letters applied left to right.
    pub fn permutation_image(&self) -> Permutation {
        let mut images: Vec<u32> = (0..self.strands as u32).collect();
        for l in self.word.letters() {
            let i = l.generator() as usize - 1;
            for v in images.iter_mut() {
                if *v as usize == i {
                    *v += 1;
                } else if *v as usize == i + 1 {
                    *v -= 1;
                }
            }
        }
        Permutation::from_zero_based(images)
    }

    pub fn normal_form(&self) -> GarsideNormalForm {
        garside::normal_form(self.strands, &self.word)
    }

    /// Equality in the braid group.
    pub fn equals(&self, other: &BraidWord) -> Result<bool, BraidError> {
        self.same_strands(other)?;
        Ok(self.normal_form() == other.normal_form())
    }

    pub fn commutes_with(&self, other: &BraidWord) -> Result<bool, BraidError> {
        let ab = self.multiply(other)?;
        let ba = other.multiply(self)?;
        ab.equals(&ba)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            write!(f, "{}:", self.strands)
        } else {
            write!(f, "{}: {}", self.strands, self.word)
        }
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// `"5: 2 -1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, w) = s
            .split_once(':')
            .ok_or_else(|| BraidError::Parse(s.to_string()))?;
        let strands = n
            .trim()
            .parse()
            .map_err(|_| BraidError::Parse(s.to_string()))?;
        BraidWord::new(strands, w.parse()?)
    }
}

/// `words_equal`: strand counts must match.
pub fn words_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    a.equals(b)
}

pub fn commutes(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    a.commutes_with(b)
}

/// The Artin generator `σ_i` on `n` strands.
pub fn artin(i: usize, n: usize) -> Result<BraidWord, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    if i == 0 || i > n - 1 {
        return Err(BraidError::GeneratorOutOfRange {
            generator: i as u32,
            strands: n,
        });
    }
    BraidWord::new(n, Word::from(Letter::pos(i as u32)))
}

/// Which side of the intermediate punctures the arc of a band generator passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcSide {
    Above,
    Below,
}

impl ArcSide {
    pub fn mirror(self) -> ArcSide {
        match self {
            ArcSide::Above => ArcSide::Below,
            ArcSide::Below => ArcSide::Above,
        }
    }
}

impl fmt::Display for ArcSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArcSide::Above => "above",
            ArcSide::Below => "below",
        })
    }
}

/// Band (half-twist) generator exchanging punctures `i < j`.
///
/// Above: `(σ_{j-1} ⋯ σ_{i+1}) σ_i (σ_{i+1}^-1 ⋯ σ_{j-1}^-1)`.
/// Below: `(σ_{j-1}^-1 ⋯ σ_{i+1}^-1) σ_i (σ_{i+1} ⋯ σ_{j-1})`.
pub fn band_generator(
    i: usize,
    j: usize,
    n: usize,
    side: ArcSide,
) -> Result<BraidWord, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    if i == 0 || i >= j || j > n {
        return Err(BraidError::InvalidIndices {
            indices: vec![i, j],
            strands: n,
        });
    }
    let conj: Vec<Letter> = (i + 1..j)
        .rev()
        .map(|m| match side {
            ArcSide::Above => Letter::pos(m as u32),
            ArcSide::Below => Letter::neg(m as u32),
        })
        .collect();
    let conj = Word::reduce(conj);
    BraidWord::new(n, Word::from(Letter::pos(i as u32)).conjugate(&conj))
}

/// Named braids used by the normal-generation and orbit arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedElement {
    /// `σ2 σ1^-1`
    U,
    /// `σ1 σ2 σ1^-2`
    V,
    /// `σ2 σ3 σ1^-1 σ2^-1`
    W,
    /// `σ3 σ1^-1`
    C1,
    /// `ρ_jk ρ_ij^-1`
    Alpha(usize, usize, usize),
    /// `ρ_ij^-1 ρ_jk`
    Beta(usize, usize, usize),
    /// `(σ2 σ1^-1)^2 ρ_24 (σ2 σ1^-1)^-2 ρ_24^-1`
    F,
}

impl NamedElement {
    /// Parses `u`, `v`, `w`, `c1`, `f`, `alpha`, `beta`; the triple is only
    /// used by `alpha` and `beta`.
    pub fn parse(name: &str, triple: Option<(usize, usize, usize)>) -> Result<Self, BraidError> {
        let need_triple =
            || triple.ok_or_else(|| BraidError::UnknownElement(format!("{name} needs i,j,k")));
        Ok(match name {
            "u" => NamedElement::U,
            "v" => NamedElement::V,
            "w" => NamedElement::W,
            "c1" => NamedElement::C1,
            "f" => NamedElement::F,
            "alpha" => {
                let (i, j, k) = need_triple()?;
                NamedElement::Alpha(i, j, k)
            }
            "beta" => {
                let (i, j, k) = need_triple()?;
                NamedElement::Beta(i, j, k)
            }
            other => return Err(BraidError::UnknownElement(other.to_string())),
        })
    }

    pub fn label(&self) -> String {
        match self {
            NamedElement::U => "u".into(),
            NamedElement::V => "v".into(),
            NamedElement::W => "w".into(),
            NamedElement::C1 => "c1".into(),
            NamedElement::F => "f".into(),
            NamedElement::Alpha(i, j, k) => format!("alpha_{i}{j}{k}"),
            NamedElement::Beta(i, j, k) => format!("beta_{i}{j}{k}"),
        }
    }

    /// The element's word on `n` strands, with band generators on `side`.
    pub fn word_with(&self, n: usize, side: ArcSide) -> Result<BraidWord, BraidError> {
        let fixed = |name: &'static str, text: &str| -> Result<BraidWord, BraidError> {
            if n < 5 {
                return Err(BraidError::NeedsMoreStrands {
                    element: name,
                    min: 5,
                    strands: n,
                });
            }
            BraidWord::new(n, text.parse()?)
        };
        match *self {
            NamedElement::U => fixed("u", "2 -1"),
            NamedElement::V => fixed("v", "1 2 -1 -1"),
            NamedElement::W => fixed("w", "2 3 -1 -2"),
            NamedElement::C1 => fixed("c1", "3 -1"),
            NamedElement::F => {
                let u2 = fixed("f", "2 -1")?.pow(2);
                let rho = band_generator(2, 4, n, side)?;
                u2.multiply(&rho)?
                    .multiply(&u2.inverse())?
                    .multiply(&rho.inverse())
            }
            NamedElement::Alpha(i, j, k) | NamedElement::Beta(i, j, k) => {
                if !(1 <= i && i < j && j < k && k <= n) {
                    return Err(BraidError::InvalidIndices {
                        indices: vec![i, j, k],
                        strands: n,
                    });
                }
                let rho_ij = band_generator(i, j, n, side)?;
                let rho_jk = band_generator(j, k, n, side)?;
                if matches!(self, NamedElement::Alpha(..)) {
                    rho_jk.multiply(&rho_ij.inverse())
                } else {
                    rho_ij.inverse().multiply(&rho_jk)
                }
            }
        }
    }

    /// Same as [`NamedElement::word_with`] using arcs above the punctures.
    pub fn word(&self, n: usize) -> Result<BraidWord, BraidError> {
        self.word_with(n, ArcSide::Above)
    }
}

/// Target of a change-of-coordinates conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitTarget {
    Alpha,
    Beta,
}

/// Finds `g` with exponent sum 0 and `g (σ2 σ1^-1) g^-1 = α_ijk` (or `β_ijk`).
///
/// Starts from the positive permutation braid carrying strands `i, j, k` to
/// positions 1, 2, 3 (or its mirror, whichever conjugates correctly); under
/// left-to-right composition `π(g a g^-1)` relabels the cycles of `π(a)` by
/// `π(g)^-1`, so this moves the support `{1,2,3}` onto `{i,j,k}`. Then prefixes
/// `ρ_ij^-1` for the β target, then cancels the exponent sum with a power of
/// `σ4`, which commutes with `σ2 σ1^-1`.
pub fn change_of_coordinates_conjugator(
    triple: (usize, usize, usize),
    n: usize,
    target: OrbitTarget,
    side: ArcSide,
) -> Result<BraidWord, BraidError> {
    let (i, j, k) = triple;
    if n < 5 {
        return Err(BraidError::NeedsMoreStrands {
            element: "conjugator",
            min: 5,
            strands: n,
        });
    }
    let base = NamedElement::Alpha(1, 2, 3).word_with(n, side)?;
    let goal = match target {
        OrbitTarget::Alpha => NamedElement::Alpha(i, j, k),
        OrbitTarget::Beta => NamedElement::Beta(i, j, k),
    }
    .word_with(n, side)?;
    let goal_nf = goal.normal_form();

    let shuffle = shuffle_braid(n, [i, j, k]);
    let mirrored = BraidWord {
        strands: n,
        word: mirror(shuffle.word()),
    };
    let sigma4 = artin(4, n)?;
    for carrier in [shuffle, mirrored] {
        let mut g = carrier;
        if target == OrbitTarget::Beta {
            g = band_generator(i, j, n, side)?.inverse().multiply(&g)?;
        }
        g = g.multiply(&sigma4.pow(-g.exponent_sum()))?;
        if base.conjugate(&g)?.normal_form() == goal_nf {
            return Ok(g);
        }
    }
    Err(BraidError::NoConjugator(triple))
}

fn mirror(w: &Word) -> Word {
    Word::reduce(w.letters().iter().map(|l| l.inv()))
}

/// Positive permutation braid sending the strands at `sources` to positions
/// `1, 2, 3` and the remaining strands, in order, to positions `4..n`.
fn shuffle_braid(n: usize, sources: [usize; 3]) -> BraidWord {
    let mut images = vec![0usize; n];
    for (slot, &s) in sources.iter().enumerate() {
        images[s - 1] = slot + 1;
    }
    for (img, next) in images.iter_mut().filter(|v| **v == 0).zip(4..) {
        *img = next;
    }
    let p = Permutation::from_images(&images).expect("shuffle is a bijection");
    BraidWord {
        strands: n,
        word: garside::positive_word(&p),
    }
}

/// Some half twist `ρ_ij` (arc above) commuting with `b`, if any.
pub fn commuting_half_twist(b: &BraidWord) -> Option<BraidWord> {
    let n = b.strands();
    (1..n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter_map(|(i, j)| band_generator(i, j, n, ArcSide::Above).ok())
        .find(|h| b.commutes_with(h).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn artin_generators() {
        assert_eq!(artin(1, 5).unwrap(), b("5: 1"));
        assert_eq!(artin(4, 5).unwrap(), b("5: 4"));
        assert!(artin(5, 5).is_err());
        assert!(artin(0, 5).is_err());
    }

    #[test]
    fn band_generator_formulas() {
        for i in 1..5 {
            assert_eq!(
                band_generator(i, i + 1, 5, ArcSide::Above).unwrap(),
                artin(i, 5).unwrap()
            );
            assert_eq!(
                band_generator(i, i + 1, 5, ArcSide::Below).unwrap(),
                artin(i, 5).unwrap()
            );
        }
        assert_eq!(
            band_generator(2, 4, 5, ArcSide::Above).unwrap(),
            b("5: 3 2 -3")
        );
        assert_eq!(
            band_generator(2, 4, 5, ArcSide::Below).unwrap(),
            b("5: -3 2 3")
        );
        assert_eq!(
            band_generator(1, 4, 5, ArcSide::Above).unwrap(),
            b("5: 3 2 1 -2 -3")
        );
        assert!(band_generator(3, 3, 5, ArcSide::Above).is_err());
        assert!(band_generator(2, 6, 5, ArcSide::Above).is_err());
    }

    #[test]
    fn band_generators_project_to_transpositions() {
        for side in [ArcSide::Above, ArcSide::Below] {
            for i in 1..=6 {
                for j in i + 1..=6 {
                    let rho = band_generator(i, j, 6, side).unwrap();
                    assert_eq!(rho.permutation_image(), Permutation::transposition(6, i, j));
                    assert_eq!(rho.exponent_sum(), 1);
                }
            }
        }
    }

    #[test]
    fn named_elements() {
        assert_eq!(NamedElement::U.word(5).unwrap(), b("5: 2 -1"));
        assert_eq!(NamedElement::Alpha(1, 2, 3).word(5).unwrap(), b("5: 2 -1"));
        assert_eq!(NamedElement::Beta(1, 2, 3).word(5).unwrap(), b("5: -1 2"));
        for e in [
            NamedElement::U,
            NamedElement::V,
            NamedElement::W,
            NamedElement::C1,
            NamedElement::F,
        ] {
            assert_eq!(e.word(5).unwrap().exponent_sum(), 0, "{}", e.label());
        }
        assert!(NamedElement::U.word(4).is_err());
        assert!(NamedElement::Alpha(1, 3, 2).word(5).is_err());
        assert!(NamedElement::Alpha(3, 4, 6).word(5).is_err());
        assert!(NamedElement::parse("z", None).is_err());
        assert!(NamedElement::parse("alpha", None).is_err());
        assert_eq!(NamedElement::parse("c1", None).unwrap(), NamedElement::C1);
    }

    #[test]
    fn projection_examples() {
        assert_eq!(
            b("5: 1").permutation_image(),
            Permutation::parse_cycles("(1 2)", 5).unwrap()
        );
        assert_eq!(
            b("5: 2 -1").permutation_image(),
            Permutation::parse_cycles("(1 2 3)", 5).unwrap()
        );
        let f = NamedElement::F.word(5).unwrap().permutation_image();
        assert!(f.is_three_cycle());
    }

    #[test]
    fn equality_examples() {
        assert!(words_equal(&b("3: 1 2 1"), &b("3: 2 1 2")).unwrap());
        assert!(words_equal(&b("4: 1 3"), &b("4: 3 1")).unwrap());
        let rho24 = band_generator(2, 4, 5, ArcSide::Above).unwrap();
        let lhs = rho24.multiply(&b("5: -2")).unwrap();
        assert!(words_equal(&lhs, &b("5: 3 2 -3 -2")).unwrap());
        assert!(matches!(
            words_equal(&b("3: 1"), &b("4: 1")),
            Err(BraidError::StrandMismatch(3, 4))
        ));
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&b("5: 2 -1"), &b("5: 4")).unwrap());
        assert!(commutes(&b("5: 3 -1"), &b("5: 1")).unwrap());
        assert!(!commutes(&b("3: 1"), &b("3: 2")).unwrap());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(b("5: 2 -1").to_string(), "5: 2 -1");
        assert_eq!(b("4:").to_string(), "4:");
        assert!("5 2 -1".parse::<BraidWord>().is_err());
        assert!("3: 3".parse::<BraidWord>().is_err());
        assert!("1: ".parse::<BraidWord>().is_err());
    }

    #[test]
    fn conjugator_examples() {
        let g = change_of_coordinates_conjugator((1, 2, 3), 5, OrbitTarget::Alpha, ArcSide::Above)
            .unwrap();
        assert!(words_equal(&g, &BraidWord::identity(5).unwrap()).unwrap());
        for (triple, target) in [
            ((1, 2, 4), OrbitTarget::Alpha),
            ((3, 4, 5), OrbitTarget::Beta),
        ] {
            let g = change_of_coordinates_conjugator(triple, 5, target, ArcSide::Above).unwrap();
            assert_eq!(g.exponent_sum(), 0);
            let named = match target {
                OrbitTarget::Alpha => NamedElement::Alpha(triple.0, triple.1, triple.2),
                OrbitTarget::Beta => NamedElement::Beta(triple.0, triple.1, triple.2),
            };
            let lhs = b("5: 2 -1").conjugate(&g).unwrap();
            assert!(words_equal(&lhs, &named.word(5).unwrap()).unwrap());
        }
    }

    #[test]
    fn half_twist_search() {
        assert!(commuting_half_twist(&b("5: 2 -1 2 -1")).is_some());
        assert!(commuting_half_twist(&b("4: 3 -1")).is_some());
    }
}
