//! Check registry: each check certifies one statement about braid groups or
//! alternating groups and yields a [`CheckReport`]. [`pipeline`] runs the
//! whole suite over a range of strand counts.

mod bound;
mod checks;
pub mod presentations;
mod render;

pub use bound::{orbit_stabilizer_bound, BoundError, BoundLedger};
pub use render::render_table;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::braid::BraidError;
use crate::cosets::{Budget, CosetError, EnumerationStats};
use crate::fpres::FpresError;
use crate::perm::{AutError, PermError};

/// Environment variable overriding the default live-coset budget.
pub const MAX_COSETS_ENV: &str = "BQL_MAX_COSETS";

pub type Params = BTreeMap<String, Value>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("check {check} needs parameter {param:?}")]
    MissingParam {
        check: &'static str,
        param: &'static str,
    },
    #[error("check {check}: invalid parameter {param:?}: {message}")]
    InvalidParam {
        check: &'static str,
        param: String,
        message: String,
    },
    #[error("budget misconfiguration: {0}")]
    Budget(String),
    #[error("pipeline range {n_min}..={n_max} is empty or starts below 5")]
    InvalidRange { n_min: usize, n_max: usize },
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Fpres(#[from] FpresError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Coset enumeration ran out of budget; nothing is known.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of one check. `status` is `pass` iff `observed == expected`,
/// except that an exhausted enumeration budget gives `inconclusive`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: Params,
    pub status: Status,
    pub observed: Value,
    pub expected: Value,
    pub runtime_ms: u64,
    /// Coset enumeration statistics, for checks that enumerate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationStats>,
}

impl CheckReport {
    /// A failing report for a check that could not run at all.
    fn errored(id: CheckId, params: Params, error: &HarnessError) -> Self {
        CheckReport {
            check_id: id.as_str().to_string(),
            params,
            status: Status::Fail,
            observed: serde_json::json!({ "error": error.to_string() }),
            expected: Value::Null,
            runtime_ms: 0,
            enumeration: None,
        }
    }
}

/// Registered checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckId {
    LemmaA,
    Lemma2,
    LemmaBIdentities,
    LemmaCIdentities,
    NamedElements,
    CarmichaelCollapse,
    QuotientOrders,
    ThreeCycleCounts,
    OrbitDistinctness,
    OrbitConjugators,
    OrbitBound,
    AutFootnote,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::LemmaA,
        CheckId::Lemma2,
        CheckId::LemmaBIdentities,
        CheckId::LemmaCIdentities,
        CheckId::NamedElements,
        CheckId::CarmichaelCollapse,
        CheckId::QuotientOrders,
        CheckId::ThreeCycleCounts,
        CheckId::OrbitDistinctness,
        CheckId::OrbitConjugators,
        CheckId::OrbitBound,
        CheckId::AutFootnote,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::LemmaA => "lemma_A",
            CheckId::Lemma2 => "lemma_2",
            CheckId::LemmaBIdentities => "lemma_B_identities",
            CheckId::LemmaCIdentities => "lemma_C_identities",
            CheckId::NamedElements => "named_elements",
            CheckId::CarmichaelCollapse => "carmichael_collapse",
            CheckId::QuotientOrders => "quotient_orders",
            CheckId::ThreeCycleCounts => "three_cycle_counts",
            CheckId::OrbitDistinctness => "orbit_distinctness",
            CheckId::OrbitConjugators => "orbit_conjugators",
            CheckId::OrbitBound => "orbit_bound",
            CheckId::AutFootnote => "aut_footnote",
        }
    }

    /// The statement the check certifies, and its parameters.
    pub fn statement(self) -> &'static str {
        match self {
            CheckId::LemmaA => {
                "n, relator: the subgroup <s1> has index 1 in B_n modulo the normal closure of \
                 the relator (s2 s1^-1 or s3 s1^-1), so that closure contains B'_n"
            }
            CheckId::Lemma2 => {
                "n: the subgroup <s1> has index 1 in B_n modulo the normal closure of (s2 s1^-1)^2"
            }
            CheckId::LemmaBIdentities => {
                "n: r_jk r_ij^-1 r_jk^-1 = r_ik^-1 for all i<j<k, and s3 s2 s3^-1 = r_24, \
                 decided by Garside normal form; tries the mirrored band convention if needed"
            }
            CheckId::LemmaCIdentities => {
                "n: (s3 s2^-1)(s2 s1^-1) freely reduces to s3 s1^-1, s3 s1^-1 = s1^-1 s3, and \
                 s2 s1^-1 commutes with s_m for every m >= 4"
            }
            CheckId::NamedElements => {
                "n: u, v, w, c1 and f have exponent sum 0, and f maps to a 3-cycle in S_n"
            }
            CheckId::CarmichaelCollapse => {
                "n: <s1> has index n!/2 in B_n modulo (s2 s1^-1)^3 and (s3 s1^-1)^2"
            }
            CheckId::QuotientOrders => {
                "n: in the coset action of that quotient, s2 s1^-1 acts with order 3 and \
                 s3 s1^-1 with order 2"
            }
            CheckId::ThreeCycleCounts => {
                "n: A_n has 2 C(n,3) 3-cycles, the centralizer of a 3-cycle has order \
                 3 (n-3)!/2, and their product is n!/2"
            }
            CheckId::OrbitDistinctness => {
                "n: the images in S_n of alpha_ijk and beta_ijk over all i<j<k are 2 C(n,3) \
                 distinct 3-cycles"
            }
            CheckId::OrbitConjugators => {
                "n: every alpha_ijk and beta_ijk is conjugate to s2 s1^-1 by an explicit braid \
                 of exponent sum 0"
            }
            CheckId::OrbitBound => {
                "n, m: 2 C(n,3) * m (n-3)!/2 = n! m/6 in checked 64-bit arithmetic, equal to \
                 n!/2 iff m = 3"
            }
            CheckId::AutFootnote => {
                "n in {5, 6}: brute-force count of automorphisms of A_n (n! for n = 5, 1440 for \
                 n = 6)"
            }
        }
    }
}

impl FromStr for CheckId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| HarnessError::UnknownCheck(s.to_string()))
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Budget from [`MAX_COSETS_ENV`], or the default when unset.
pub fn budget_from_env() -> Result<Budget, HarnessError> {
    match std::env::var(MAX_COSETS_ENV) {
        Ok(text) => {
            let max = text
                .trim()
                .parse::<usize>()
                .map_err(|e| HarnessError::Budget(format!("{MAX_COSETS_ENV}={text:?}: {e}")))?;
            budget_with_max_cosets(max)
        }
        Err(std::env::VarError::NotPresent) => Ok(Budget::default()),
        Err(e) => Err(HarnessError::Budget(format!("{MAX_COSETS_ENV}: {e}"))),
    }
}

/// Budget capping live cosets at `max`; zero is rejected.
pub fn budget_with_max_cosets(max: usize) -> Result<Budget, HarnessError> {
    if max == 0 {
        return Err(HarnessError::Budget(
            "the coset budget must be positive".into(),
        ));
    }
    Ok(Budget::with_max_live(max))
}

/// Runs one registered check.
pub fn run_check(
    check_id: &str,
    params: &Params,
    budget: &Budget,
) -> Result<CheckReport, HarnessError> {
    let id: CheckId = check_id.parse()?;
    if budget.max_live == 0 || budget.max_definitions == 0 {
        return Err(HarnessError::Budget(
            "the coset budget must be positive".into(),
        ));
    }
    let start = Instant::now();
    let verdict = checks::run(id, params, budget)?;
    let status = if verdict.inconclusive {
        Status::Inconclusive
    } else if verdict.observed == verdict.expected {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(CheckReport {
        check_id: id.as_str().to_string(),
        params: verdict.params,
        status,
        observed: verdict.observed,
        expected: verdict.expected,
        runtime_ms: start.elapsed().as_millis() as u64,
        enumeration: verdict.enumeration,
    })
}

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<I, K, V>(pairs: I) -> Params
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<Value>,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.into()))
        .collect()
}

/// The checks run by [`pipeline`], in registration order: strand counts are
/// visited in chains `n, n+3, n+6, ...` starting from `n_min`, `n_min+1` and
/// `n_min+2`, mirroring an induction in steps of three.
pub fn pipeline_plan(n_min: usize, n_max: usize) -> Vec<(CheckId, Params)> {
    let mut plan = Vec::new();
    for start in n_min..(n_min + 3).min(n_max + 1) {
        for n in (start..=n_max).step_by(3) {
            plan.extend(checks_for(n));
        }
    }
    plan
}

fn checks_for(n: usize) -> Vec<(CheckId, Params)> {
    let with_n = |id: CheckId| (id, params([("n", n)]));
    let mut out = vec![
        (
            CheckId::LemmaA,
            params([("n", Value::from(n)), ("relator", "2 -1".into())]),
        ),
        (
            CheckId::LemmaA,
            params([("n", Value::from(n)), ("relator", "3 -1".into())]),
        ),
        with_n(CheckId::Lemma2),
        with_n(CheckId::LemmaBIdentities),
        with_n(CheckId::LemmaCIdentities),
        with_n(CheckId::NamedElements),
        with_n(CheckId::CarmichaelCollapse),
        with_n(CheckId::QuotientOrders),
        with_n(CheckId::ThreeCycleCounts),
        with_n(CheckId::OrbitDistinctness),
        with_n(CheckId::OrbitConjugators),
    ];
    if n >= 8 {
        out.push((CheckId::OrbitBound, params([("n", n), ("m", 3)])));
    }
    if n == 5 || n == 6 {
        out.push(with_n(CheckId::AutFootnote));
    }
    out
}

/// Runs every check for `n_min..=n_max` concurrently; reports come back in
/// registration order. A check that cannot run is reported as a failure.
pub fn pipeline(
    n_min: usize,
    n_max: usize,
    budget: &Budget,
) -> Result<Vec<CheckReport>, HarnessError> {
    if n_min < 5 || n_min > n_max {
        return Err(HarnessError::InvalidRange { n_min, n_max });
    }
    if budget.max_live == 0 || budget.max_definitions == 0 {
        return Err(HarnessError::Budget(
            "the coset budget must be positive".into(),
        ));
    }
    Ok(pipeline_plan(n_min, n_max)
        .into_par_iter()
        .map(|(id, p)| {
            run_check(id.as_str(), &p, budget).unwrap_or_else(|e| CheckReport::errored(id, p, &e))
        })
        .collect())
}

/// Verdict counts over a set of reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    /// True iff nothing failed; inconclusive checks do not count as failures.
    pub fn success(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} passed, {} failed, {} inconclusive",
            self.passed, self.failed, self.inconclusive
        )
    }
}
