//! Todd–Coxeter coset enumeration, HLT strategy.
//!
//! Relators are scanned at every coset in ascending order, filling gaps with
//! new definitions; coincidences are processed immediately with a union-find
//! queue. A run either completes, giving the exact index, or stops when the
//! budget is exhausted. Exhaustion means "unknown", never "infinite".

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::braid::{self, BraidWord};
use crate::fpres::{artin_presentation, FpresError, Presentation};
use crate::perm::Permutation;
use crate::word::{Letter, Word};

/// Default cap on simultaneously live cosets.
pub const DEFAULT_MAX_LIVE: usize = 2_000_000;

/// Default cap on total definitions, as a multiple of the live cap.
const DEFINITIONS_PER_LIVE: u64 = 50;

const UNDEF: u32 = 0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error(transparent)]
    Input(#[from] FpresError),
    #[error("budget must allow at least one coset")]
    EmptyBudget,
    #[error("relator {0} has nonzero exponent sum")]
    NotInCommutator(String),
    #[error("relator {0} commutes with no half twist on {1} strands")]
    NoCommutingHalfTwist(String, usize),
    #[error(transparent)]
    Braid(#[from] braid::BraidError),
}

/// Resource limits for one enumeration.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_live: usize,
    pub max_definitions: u64,
    /// Polled at every definition; setting it stops the run as budget-exceeded.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    pub fn with_max_live(max_live: usize) -> Self {
        Budget {
            max_live,
            max_definitions: max_live as u64 * DEFINITIONS_PER_LIVE,
            cancel: None,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::with_max_live(DEFAULT_MAX_LIVE)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    pub definitions: u64,
    pub coincidences: u64,
    pub max_live: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Completed { index: usize },
    BudgetExceeded { cosets_defined: u64 },
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub outcome: Outcome,
    pub stats: EnumerationStats,
    /// Compacted table, present when the run completed.
    pub table: Option<CosetTable>,
}

impl EnumerationResult {
    pub fn index(&self) -> Option<usize> {
        match self.outcome {
            Outcome::Completed { index } => Some(index),
            Outcome::BudgetExceeded { .. } => None,
        }
    }
}

/// A complete coset table with cosets numbered `1..=index`; coset 1 is the
/// subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    index: usize,
    columns: usize,
    /// Row-major, 0-based cosets.
    actions: Vec<u32>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn generator_count(&self) -> usize {
        self.columns / 2
    }

    /// Image of the 1-based `coset` under `letter`.
    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.actions[(coset - 1) * self.columns + letter.column()] as usize
    }

    pub fn act_word(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// The permutation of cosets induced by `w`.
    pub fn word_permutation(&self, w: &Word) -> Permutation {
        let images = (1..=self.index())
            .map(|c| (self.act_word(c, w) - 1) as u32)
            .collect();
        Permutation::from_zero_based(images)
    }

    /// Checks every structural invariant of a completed table.
    pub fn verify(&self, presentation: &Presentation, subgroup: &[Word]) -> bool {
        let n = self.index();
        if self.columns != 2 * presentation.generator_count() || n == 0 {
            return false;
        }
        for c in 1..=n {
            for col in 0..self.columns {
                let d = self.actions[(c - 1) * self.columns + col] as usize;
                if d == 0 || d > n || self.actions[(d - 1) * self.columns + (col ^ 1)] as usize != c
                {
                    return false;
                }
            }
            if presentation
                .relators()
                .iter()
                .any(|r| self.act_word(c, r) != c)
            {
                return false;
            }
        }
        subgroup.iter().all(|w| self.act_word(1, w) == 1)
    }
}

/// Runs HLT enumeration of the cosets of `⟨subgroup⟩` in the group presented by `p`.
pub fn enumerate(
    p: &Presentation,
    subgroup: &[Word],
    budget: &Budget,
) -> Result<EnumerationResult, CosetError> {
    if budget.max_live == 0 || budget.max_definitions == 0 {
        return Err(CosetError::EmptyBudget);
    }
    for w in subgroup {
        p.check_word(w)?;
    }
    let start = Instant::now();
    let mut e = Enumerator::new(p, budget);
    let finished = e.run(subgroup);
    let mut stats = EnumerationStats {
        definitions: e.defined,
        coincidences: e.coincidences,
        max_live: e.max_live_seen,
        elapsed: Duration::ZERO,
    };
    let (outcome, table) = match finished {
        Ok(()) => {
            let table = e.into_table();
            (
                Outcome::Completed {
                    index: table.index(),
                },
                Some(table),
            )
        }
        Err(BudgetHit) => (
            Outcome::BudgetExceeded {
                cosets_defined: stats.definitions,
            },
            None,
        ),
    };
    stats.elapsed = start.elapsed();
    Ok(EnumerationResult {
        outcome,
        stats,
        table,
    })
}

/// Verdict of the index-one test for normal generation of `B'_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NormalGeneration {
    /// `⟨σ1⟩` has index 1 in `B_n / ⟨⟨r⟩⟩`: the normal closure of `r` in `B'_n` is `B'_n`.
    Certified,
    /// Enumeration completed with a larger index.
    NotCertified { index: usize },
    /// Budget exhausted; nothing is known.
    Inconclusive { cosets_defined: u64 },
}

/// Enumerates `⟨σ1⟩` in `B_n / ⟨⟨relator⟩⟩` after checking that the relator
/// lies in `B'_n` and commutes with some half twist, so that its normal
/// closures in `B_n` and `B'_n` agree.
pub fn index_one_certifies_normal_generation(
    n: usize,
    relator: &Word,
    budget: &Budget,
) -> Result<(NormalGeneration, EnumerationResult), CosetError> {
    let braid = BraidWord::new(n, relator.clone())?;
    if relator.exponent_sum() != 0 {
        return Err(CosetError::NotInCommutator(relator.to_string()));
    }
    if braid::commuting_half_twist(&braid).is_none() {
        return Err(CosetError::NoCommutingHalfTwist(relator.to_string(), n));
    }
    let p = artin_presentation(n)?.add_relators(std::slice::from_ref(relator))?;
    let result = enumerate(&p, &[Word::from(Letter::pos(1))], budget)?;
    let verdict = match result.outcome {
        Outcome::Completed { index: 1 } => NormalGeneration::Certified,
        Outcome::Completed { index } => NormalGeneration::NotCertified { index },
        Outcome::BudgetExceeded { cosets_defined } => {
            NormalGeneration::Inconclusive { cosets_defined }
        }
    };
    Ok((verdict, result))
}

#[derive(Debug)]
struct BudgetHit;

struct Enumerator<'a> {
    columns: usize,
    relators: Vec<Vec<u32>>,
    /// Row-major; row 0 is a sentinel so that 0 can mean "undefined".
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    live: usize,
    max_live_seen: usize,
    defined: u64,
    coincidences: u64,
    budget: &'a Budget,
}

fn to_columns(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|l| l.column() as u32).collect()
}

impl<'a> Enumerator<'a> {
    fn new(p: &Presentation, budget: &'a Budget) -> Self {
        let columns = 2 * p.generator_count();
        let mut e = Enumerator {
            columns,
            relators: p.relators().iter().map(to_columns).collect(),
            table: vec![UNDEF; 2 * columns],
            parent: vec![0, 1],
            queue: Vec::new(),
            live: 1,
            max_live_seen: 1,
            defined: 1,
            coincidences: 0,
            budget,
        };
        e.table.reserve(columns * 1024);
        e
    }

    #[inline]
    fn get(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.columns + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u32, v: u32) {
        self.table[c as usize * self.columns + col as usize] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rows(&self) -> u32 {
        self.parent.len() as u32
    }

    fn define(&mut self, c: u32, col: u32) -> Result<(), BudgetHit> {
        if self.live >= self.budget.max_live || self.defined >= self.budget.max_definitions {
            return Err(BudgetHit);
        }
        if let Some(flag) = &self.budget.cancel {
            if flag.load(Ordering::Relaxed) {
                return Err(BudgetHit);
            }
        }
        let d = self.rows();
        self.parent.push(d);
        self.table.resize(self.table.len() + self.columns, UNDEF);
        self.live += 1;
        self.max_live_seen = self.max_live_seen.max(self.live);
        self.defined += 1;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (keep, kill) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[kill as usize] = keep;
        self.queue.push(kill);
        self.live -= 1;
        self.coincidences += 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.columns as u32 {
                let d = self.get(dead, col);
                if d == UNDEF {
                    continue;
                }
                self.set(d, col ^ 1, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.get(nu, col ^ 1);
                    if nu_xi != UNDEF {
                        self.merge(mu, nu_xi);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `word` at coset `c`, defining new cosets to close it.
    fn scan_and_fill(&mut self, c: u32, word: &[u32]) -> Result<(), BudgetHit> {
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j {
                let next = self.get(f, word[i as usize]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let next = self.get(b, word[j as usize] ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            let col = word[i as usize];
            if i == j {
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                return Ok(());
            }
            self.define(f, col)?;
        }
    }

    fn run(&mut self, subgroup: &[Word]) -> Result<(), BudgetHit> {
        for w in subgroup {
            let cols = to_columns(w);
            self.scan_and_fill(1, &cols)?;
        }
        let relators = std::mem::take(&mut self.relators);
        let result = self.hlt(&relators);
        self.relators = relators;
        result
    }

    fn hlt(&mut self, relators: &[Vec<u32>]) -> Result<(), BudgetHit> {
        let mut c: u32 = 1;
        while c < self.rows() {
            if self.is_live(c) {
                for r in relators {
                    self.scan_and_fill(c, r)?;
                    if !self.is_live(c) {
                        break;
                    }
                }
                if self.is_live(c) {
                    for col in 0..self.columns as u32 {
                        if self.get(c, col) == UNDEF {
                            self.define(c, col)?;
                        }
                    }
                }
            }
            if self.should_compact() {
                c = self.compact(c);
            }
            c += 1;
        }
        Ok(())
    }

    fn should_compact(&self) -> bool {
        let rows = self.parent.len();
        rows > 1 << 16 && rows - 1 > 2 * self.live
    }

    /// Renumbers live cosets consecutively, preserving order. Returns the new
    /// number of the last live coset at or before `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        debug_assert!(self.queue.is_empty());
        let rows = self.parent.len();
        let mut map = vec![UNDEF; rows];
        let mut next = 1u32;
        let mut new_cursor = 0;
        for (c, slot) in map.iter_mut().enumerate().skip(1) {
            if self.parent[c] as usize == c {
                *slot = next;
                next += 1;
            }
            if c as u32 == cursor {
                new_cursor = next - 1;
            }
        }
        let cols = self.columns;
        let mut table = vec![UNDEF; next as usize * cols];
        for c in 1..rows {
            let nc = map[c];
            if nc == UNDEF {
                continue;
            }
            for col in 0..cols {
                let d = self.table[c * cols + col];
                table[nc as usize * cols + col] = if d == UNDEF { UNDEF } else { map[d as usize] };
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        new_cursor
    }

    fn into_table(mut self) -> CosetTable {
        let rows = self.rows();
        self.compact(rows - 1);
        let actions = self.table[self.columns..].to_vec();
        CosetTable {
            index: self.live,
            columns: self.columns,
            actions,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn run(p: &Presentation, sub: &[Word]) -> EnumerationResult {
        enumerate(p, sub, &Budget::with_max_live(200_000)).unwrap()
    }

    #[test]
    fn cyclic_group() {
        let p = Presentation::new(1, vec![w("1 1 1 1 1")]).unwrap();
        let r = run(&p, &[]);
        assert_eq!(r.index(), Some(5));
        assert!(r.table.as_ref().unwrap().verify(&p, &[]));
    }

    #[test]
    fn no_generators_is_trivial() {
        let p = Presentation::new(0, vec![]).unwrap();
        let r = run(&p, &[]);
        assert_eq!(r.index(), Some(1));
        assert!(r.table.unwrap().verify(&p, &[]));
    }

    #[test]
    fn free_group_with_generator_subgroup() {
        // Z = <x | >, subgroup <x> has index 1.
        let p = Presentation::new(1, vec![]).unwrap();
        assert_eq!(run(&p, &[w("1")]).index(), Some(1));
    }

    #[test]
    fn symmetric_group_s3() {
        let p = Presentation::new(2, vec![w("1 1"), w("2 2"), w("1 2 1 2 1 2")]).unwrap();
        let r = run(&p, &[]);
        assert_eq!(r.index(), Some(6));
        assert_eq!(run(&p, &[w("1")]).index(), Some(3));
        let t = r.table.unwrap();
        assert!(t.verify(&p, &[]));
        assert_eq!(t.word_permutation(&w("1 2")).order(), 3);
    }

    #[test]
    fn alternating_group_a5() {
        // x_i^3, (x_i x_j)^2 on three generators
        let p = Presentation::new(
            3,
            vec![
                w("1 1 1"),
                w("2 2 2"),
                w("3 3 3"),
                w("1 2 1 2"),
                w("1 3 1 3"),
                w("2 3 2 3"),
            ],
        )
        .unwrap();
        let r = run(&p, &[]);
        assert_eq!(r.index(), Some(60));
        assert!(r.table.unwrap().verify(&p, &[]));
    }

    #[test]
    fn coincidence_heavy_trivial_group() {
        // <a, b | a b a^-1 b^-2, b a b^-1 a^-2> is trivial.
        let p = Presentation::new(2, vec![w("1 2 -1 -2 -2"), w("2 1 -2 -1 -1")]).unwrap();
        let r = run(&p, &[]);
        assert_eq!(r.index(), Some(1));
        assert!(r.stats.coincidences > 0);
    }

    #[test]
    fn budget_exceeded_on_infinite_index() {
        let p = Presentation::new(2, vec![w("1 2 -1 -2")]).unwrap();
        let r = enumerate(&p, &[], &Budget::with_max_live(1000)).unwrap();
        assert!(matches!(r.outcome, Outcome::BudgetExceeded { .. }));
        assert!(r.table.is_none());
    }

    #[test]
    fn cancellation_stops_run() {
        let p = Presentation::new(2, vec![w("1 2 -1 -2")]).unwrap();
        let flag = Arc::new(AtomicBool::new(true));
        let budget = Budget {
            cancel: Some(flag),
            ..Budget::with_max_live(1_000_000)
        };
        let r = enumerate(&p, &[], &budget).unwrap();
        assert!(matches!(r.outcome, Outcome::BudgetExceeded { .. }));
    }

    #[test]
    fn compaction_preserves_result() {
        // Large enough to trigger compaction with many coincidences.
        let p = artin_presentation(6)
            .unwrap()
            .add_relators(&[w("2 -1").pow(3), w("3 -1").pow(2)])
            .unwrap();
        let sub = [w("1")];
        let r = run(&p, &sub);
        assert_eq!(r.index(), Some(360));
        assert!(r.table.unwrap().verify(&p, &sub));
    }

    #[test]
    fn rejects_bad_input() {
        let p = Presentation::new(1, vec![]).unwrap();
        assert!(matches!(
            enumerate(&p, &[w("2")], &Budget::default()),
            Err(CosetError::Input(_))
        ));
        let zero = Budget {
            max_live: 0,
            ..Budget::default()
        };
        assert_eq!(
            enumerate(&p, &[], &zero).unwrap_err(),
            CosetError::EmptyBudget
        );
    }

    #[test]
    fn deterministic_statistics() {
        let p = artin_presentation(5)
            .unwrap()
            .add_relators(&[w("2 -1 2 -1")])
            .unwrap();
        let a = run(&p, &[w("1")]);
        let b = run(&p, &[w("1")]);
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(
            (a.stats.definitions, a.stats.coincidences, a.stats.max_live),
            (b.stats.definitions, b.stats.coincidences, b.stats.max_live)
        );
        assert_eq!(a.table, b.table);
    }

    #[test]
    fn normal_generation_preconditions() {
        let b = Budget::with_max_live(100_000);
        assert!(matches!(
            index_one_certifies_normal_generation(5, &w("1 2"), &b),
            Err(CosetError::NotInCommutator(_))
        ));
        assert!(matches!(
            index_one_certifies_normal_generation(5, &w("5 -1"), &b),
            Err(CosetError::Braid(_))
        ));
        let (v, _) = index_one_certifies_normal_generation(5, &w("3 -1"), &b).unwrap();
        assert_eq!(v, NormalGeneration::Certified);
    }
}
