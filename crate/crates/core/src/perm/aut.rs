use std::collections::HashMap;

use thiserror::Error;

use super::{PermGroup, Permutation};
use crate::cosets::{enumerate, Budget, CosetError};
use crate::fpres::Presentation;
use crate::word::Word;

/// Largest group handled by the exhaustive tuple search.
pub const AUT_ORDER_LIMIT: u128 = 400;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("group order {0} exceeds the automorphism search limit {AUT_ORDER_LIMIT}")]
    TooLarge(u128),
    #[error("presentation has {expected} generators but {got} images were given")]
    ArityMismatch { expected: usize, got: usize },
    #[error("generator images violate relator {0}")]
    RelatorViolated(String),
    #[error("generator images generate a subgroup of order {got}, not {expected}")]
    NotGenerating { expected: u128, got: u128 },
    #[error("presentation defines a group of order {found:?}, not {expected}")]
    NotAPresentation {
        expected: u128,
        found: Option<usize>,
    },
    #[error(transparent)]
    Coset(#[from] CosetError),
}

/// Dense multiplication table of a small permutation group.
struct Cayley {
    mul: Vec<u16>,
    inv: Vec<u16>,
    order: usize,
    identity: u16,
}

impl Cayley {
    fn new(elements: &[Permutation]) -> Self {
        let order = elements.len();
        let index: HashMap<&Permutation, u16> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i as u16))
            .collect();
        let mut mul = vec![0u16; order * order];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul[a * order + b] = index[&pa.then(pb)];
            }
        }
        let inv = elements.iter().map(|p| index[&p.inverse()]).collect();
        let identity = index[&Permutation::identity(elements[0].degree())];
        Cayley {
            mul,
            inv,
            order,
            identity,
        }
    }

    fn eval(&self, w: &Word, images: &[u16]) -> u16 {
        w.letters().iter().fold(self.identity, |acc, l| {
            let g = images[l.generator() as usize - 1];
            let g = if l.is_inverse() {
                self.inv[g as usize]
            } else {
                g
            };
            self.mul[acc as usize * self.order + g as usize]
        })
    }

    fn generated_order(&self, gens: &[u16]) -> usize {
        let mut seen = vec![false; self.order];
        seen[self.identity as usize] = true;
        let mut stack = vec![self.identity];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul[x as usize * self.order + g as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }
}

/// Counts generating tuples of `group` satisfying the relators of
/// `presentation`. When `presentation` presents `group` via `generator_images`
/// (checked here by coset enumeration), this is `|Aut(group)|`.
pub fn automorphism_count(
    group: &PermGroup,
    presentation: &Presentation,
    generator_images: &[Permutation],
) -> Result<u128, AutError> {
    let order = group.order();
    if order > AUT_ORDER_LIMIT {
        return Err(AutError::TooLarge(order));
    }
    let k = presentation.generator_count();
    if generator_images.len() != k {
        return Err(AutError::ArityMismatch {
            expected: k,
            got: generator_images.len(),
        });
    }

    let elements = group.elements();
    let cayley = Cayley::new(&elements);
    let index: HashMap<&Permutation, u16> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i as u16))
        .collect();
    let mut base = Vec::with_capacity(k);
    for g in generator_images {
        match index.get(g) {
            Some(&i) => base.push(i),
            None => {
                return Err(AutError::NotGenerating {
                    expected: order,
                    got: 0,
                })
            }
        }
    }
    for r in presentation.relators() {
        if cayley.eval(r, &base) != cayley.identity {
            return Err(AutError::RelatorViolated(r.to_string()));
        }
    }
    let generated = cayley.generated_order(&base) as u128;
    if generated != order {
        return Err(AutError::NotGenerating {
            expected: order,
            got: generated,
        });
    }
    let run = enumerate(presentation, &[], &Budget::with_max_live(100_000))?;
    if run.index().map(|i| i as u128) != Some(order) {
        return Err(AutError::NotAPresentation {
            expected: order,
            found: run.index(),
        });
    }

    let mut tuple = vec![0u16; k];
    let mut count: u128 = 0;
    loop {
        if presentation
            .relators()
            .iter()
            .all(|r| cayley.eval(r, &tuple) == cayley.identity)
            && cayley.generated_order(&tuple) == cayley.order
        {
            count += 1;
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(count);
            }
            tuple[pos] += 1;
            if (tuple[pos] as usize) < cayley.order {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}
