//! Left-weighted Garside normal form in the braid group.
//!
//! Permutation braids (simple elements) are represented by their
//! permutations: `p[x]` is the final position of the strand that starts at
//! position `x` (0-based). A simple braid `A` has `σ_i` as a left prefix iff
//! the strands starting at `i` and `i+1` cross, and as a right suffix iff
//! the strands ending at `i` and `i+1` cross.

use serde::Serialize;

use crate::perm::Permutation;
use crate::word::{Letter, Word};

/// `Δ^delta_power · factors[0] ⋯ factors[k-1]`, each factor a proper,
/// nontrivial permutation braid, adjacent pairs left-weighted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GarsideNormalForm {
    pub strands: usize,
    pub delta_power: i64,
    pub factors: Vec<Permutation>,
}

impl GarsideNormalForm {
    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// Exponent sum of the braid: `delta_power · n(n-1)/2` plus the factor lengths.
    pub fn exponent_sum(&self) -> i64 {
        let n = self.strands as i64;
        self.delta_power * n * (n - 1) / 2
            + self
                .factors
                .iter()
                .map(|f| f.inversions() as i64)
                .sum::<i64>()
    }

    /// A braid word representing the same element.
    pub fn to_word(&self) -> Word {
        let delta = positive_word(&half_twist(self.strands));
        let mut letters = delta.pow(self.delta_power).letters().to_vec();
        for f in &self.factors {
            letters.extend_from_slice(positive_word(f).letters());
        }
        Word::reduce(letters)
    }

    /// Checks the structural invariants of the form.
    pub fn is_valid(&self) -> bool {
        let delta = half_twist(self.strands);
        self.factors
            .iter()
            .all(|f| f.degree() == self.strands && !f.is_identity() && *f != delta)
            && self
                .factors
                .windows(2)
                .all(|w| is_left_weighted(&w[0], &w[1]))
    }
}

pub(crate) fn half_twist(n: usize) -> Permutation {
    Permutation::from_zero_based((0..n as u32).rev().collect())
}

/// Transposition of positions `i`, `i+1` (0-based).
fn adjacent(n: usize, i: usize) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.swap(i, i + 1);
    Permutation::from_zero_based(images)
}

fn starting_set(p: &Permutation) -> impl Iterator<Item = usize> + '_ {
    let raw = p.raw();
    (0..raw.len().saturating_sub(1)).filter(move |&i| raw[i] > raw[i + 1])
}

fn in_finishing_set(inv: &[u32], i: usize) -> bool {
    inv[i] > inv[i + 1]
}

pub(crate) fn is_left_weighted(a: &Permutation, b: &Permutation) -> bool {
    let inv = a.inverse();
    starting_set(b).all(|i| in_finishing_set(inv.raw(), i))
}

/// Rewrites the pair `a·b` into left-weighted form in place, moving single
/// crossings from the head of `b` onto the tail of `a`. Returns whether
/// anything moved.
fn left_weight(a: &mut Permutation, b: &mut Permutation) -> bool {
    let n = a.degree();
    let mut a_img: Vec<u32> = a.raw().to_vec();
    let mut a_inv: Vec<u32> = a.inverse().raw().to_vec();
    let mut b_img: Vec<u32> = b.raw().to_vec();
    let mut changed = false;
    while let Some(i) =
        (0..n.saturating_sub(1)).find(|&i| b_img[i] > b_img[i + 1] && !in_finishing_set(&a_inv, i))
    {
        // a <- a σ_i: strands ending at i and i+1 swap final positions.
        let (x, y) = (a_inv[i] as usize, a_inv[i + 1] as usize);
        a_img[x] = (i + 1) as u32;
        a_img[y] = i as u32;
        a_inv.swap(i, i + 1);
        // b <- σ_i^-1 b
        b_img.swap(i, i + 1);
        changed = true;
    }
    if changed {
        *a = Permutation::from_zero_based(a_img);
        *b = Permutation::from_zero_based(b_img);
    }
    changed
}

/// `Δ A Δ^-1`, which sends `σ_i` to `σ_{n-i}`.
fn flip(p: &Permutation) -> Permutation {
    let n = p.degree() as u32;
    let raw = p.raw();
    Permutation::from_zero_based((0..n).map(|x| n - 1 - raw[(n - 1 - x) as usize]).collect())
}

/// Positive word of a permutation braid, peeling left prefixes in
/// increasing generator order.
pub(crate) fn positive_word(p: &Permutation) -> Word {
    let mut img: Vec<u32> = p.raw().to_vec();
    let mut letters = Vec::with_capacity(p.inversions());
    'outer: loop {
        for i in 0..img.len().saturating_sub(1) {
            if img[i] > img[i + 1] {
                letters.push(Letter::pos(i as u32 + 1));
                img.swap(i, i + 1);
                continue 'outer;
            }
        }
        break;
    }
    Word::reduce(letters)
}

/// Left-weighted normal form of the braid on `n` strands spelled by `w`.
pub(crate) fn normal_form(n: usize, w: &Word) -> GarsideNormalForm {
    let delta = half_twist(n);
    let mut delta_power: i64 = 0;
    let mut factors: Vec<Permutation> = Vec::new();

    for &l in w.letters() {
        let i = l.generator() as usize - 1;
        if l.is_inverse() {
            // F σ_i^-1 = Δ^-1 τ(F) (Δ σ_i^-1)
            delta_power -= 1;
            for f in factors.iter_mut() {
                *f = flip(f);
            }
            factors.push(delta.then(&adjacent(n, i)));
        } else {
            factors.push(adjacent(n, i));
        }
        restore_from_tail(&mut factors);
        tidy(&mut factors, &mut delta_power, &delta);
    }

    // A single right-to-left pass suffices after each append; sweep again
    // until stable in case that ever fails.
    while let Some(k) = factors
        .windows(2)
        .position(|w| !is_left_weighted(&w[0], &w[1]))
    {
        let (head, tail) = factors.split_at_mut(k + 1);
        left_weight(&mut head[k], &mut tail[0]);
        tidy(&mut factors, &mut delta_power, &delta);
    }

    GarsideNormalForm {
        strands: n,
        delta_power,
        factors,
    }
}

fn restore_from_tail(factors: &mut [Permutation]) {
    for k in (0..factors.len().saturating_sub(1)).rev() {
        let (head, tail) = factors.split_at_mut(k + 1);
        if !left_weight(&mut head[k], &mut tail[0]) {
            break;
        }
    }
}

/// Absorbs leading `Δ` factors and drops trailing identities.
fn tidy(factors: &mut Vec<Permutation>, delta_power: &mut i64, delta: &Permutation) {
    while factors.last().is_some_and(Permutation::is_identity) {
        factors.pop();
    }
    let leading = factors.iter().take_while(|f| *f == delta).count();
    if leading > 0 {
        factors.drain(..leading);
        *delta_power += leading as i64;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn identity_and_delta() {
        let nf = normal_form(4, &Word::identity());
        assert!(nf.is_identity());
        let nf = normal_form(3, &w("1 2 1"));
        assert_eq!((nf.delta_power, nf.factors.len()), (1, 0));
        let nf = normal_form(4, &w("1 2 1 3 2 1"));
        assert_eq!((nf.delta_power, nf.factors.len()), (1, 0));
    }

    #[test]
    fn inverse_generator_on_three_strands() {
        // Δ3 σ1^-1 = σ1 σ2 σ1 σ1^-1 = σ1 σ2: strand 1 -> 3, 2 -> 1, 3 -> 2.
        let nf = normal_form(3, &w("-1"));
        assert_eq!(nf.delta_power, -1);
        assert_eq!(
            nf.factors,
            vec![Permutation::from_images(&[3, 1, 2]).unwrap()]
        );
        assert_eq!(positive_word(&nf.factors[0]), w("1 2"));
        assert!(nf.is_valid());
    }

    #[test]
    fn braid_relations_agree() {
        assert_eq!(normal_form(3, &w("1 2 1")), normal_form(3, &w("2 1 2")));
        assert_eq!(normal_form(4, &w("1 3")), normal_form(4, &w("3 1")));
        assert_ne!(normal_form(3, &w("1 2")), normal_form(3, &w("2 1")));
        assert!(normal_form(5, &w("2 -1 1 -2")).is_identity());
    }

    #[test]
    fn positive_word_lengths() {
        let d = half_twist(5);
        assert_eq!(positive_word(&d).len(), 10);
        assert_eq!(positive_word(&Permutation::identity(5)).len(), 0);
    }

    #[test]
    fn word_reconstruction_is_equal() {
        for s in [
            "2 -1 3 3 -2 1",
            "-1 -2 -3",
            "1 2 3 -1 -1 2",
            "3 -2 -2 1 3 -1 2",
        ] {
            let nf = normal_form(4, &w(s));
            assert!(nf.is_valid());
            assert_eq!(normal_form(4, &nf.to_word()), nf);
            assert_eq!(nf.exponent_sum(), w(s).exponent_sum());
        }
    }
}
