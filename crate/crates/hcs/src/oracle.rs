//! Exhaustive search for base-cycle sets, independent of the explicit
//! constructions.
//!
//! The search fills differences greedily: at every level it looks at the
//! smallest residue not yet covered and tries every trail that could
//! cover it, in a normal form that admits exactly one representative per
//! trail. A trail covering `delta` has exactly one signed step equal to
//! `delta` or `-delta` (multiplicities past one are pruned immediately),
//! so rotating that step to the front, orienting it as `+delta`, and
//! translating the start to 0 is a bijection between trails and the
//! candidates tried here. Solution sets therefore come out exactly once
//! each, with trails ordered by their smallest covered difference.

use std::fmt;

use crate::constructor::BaseCycleSet;
use crate::trail::ClosedTrail;
use crate::zmod::{gcd, Params};

/// Largest group order the search accepts by default. The state space
/// grows super-exponentially; past this point a caller must opt in.
pub const DEFAULT_CAP: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the first complete solution.
    FirstOnly,
    /// Enumerate every solution.
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub solutions: Vec<BaseCycleSet>,
    /// True when the whole space was visited: absence of solutions is
    /// only meaningful together with this flag.
    pub exhausted: bool,
    /// True when the node budget ran out. Mutually exclusive with
    /// `exhausted`; both false means a first-only search stopped at its
    /// solution.
    pub truncated: bool,
    /// Search nodes visited; deterministic for fixed inputs.
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchError {
    CapExceeded { order: u64, cap: u64 },
    /// The budget ran out before the question was settled.
    BudgetExhausted { nodes: u64 },
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::CapExceeded { order, cap } => {
                write!(f, "group order {order} exceeds the search cap {cap}")
            }
            SearchError::BudgetExhausted { nodes } => {
                write!(f, "node budget exhausted after {nodes} nodes")
            }
        }
    }
}

impl std::error::Error for SearchError {}

struct Searcher {
    params: Params,
    modulus: u64,
    /// `used[d]` marks difference `d` unavailable: already covered, or
    /// inside the part subgroup where no edge may go.
    used: Vec<bool>,
    /// Count of differences still uncovered; kept in step with `used`.
    remaining: u64,
    divisors: Vec<u64>,
    trails: Vec<ClosedTrail>,
    solutions: Vec<BaseCycleSet>,
    mode: SearchMode,
    budget: u64,
    nodes: u64,
    truncated: bool,
    done: bool,
}

impl Searcher {
    /// Account one node; false once the budget is gone.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.truncated = true;
        }
        !self.truncated
    }

    fn stop(&self) -> bool {
        self.truncated || self.done
    }

    fn place_pair(&mut self, delta: u64) {
        debug_assert!(delta != 0 && delta * 2 != self.modulus);
        let co = (self.modulus - delta) as usize;
        debug_assert!(!self.used[delta as usize] && !self.used[co]);
        self.used[delta as usize] = true;
        self.used[co] = true;
        self.remaining -= 2;
    }

    fn unplace_pair(&mut self, delta: u64) {
        self.used[delta as usize] = false;
        self.used[(self.modulus - delta) as usize] = false;
        self.remaining += 2;
    }

    /// Choose the next trail: it must cover the smallest open difference
    /// as its first step.
    fn extend_set(&mut self) {
        if !self.tick() {
            return;
        }
        let delta = match (1..self.modulus).find(|&d| !self.used[d as usize]) {
            Some(d) => d,
            None => {
                self.solutions.push(BaseCycleSet::new(
                    self.params,
                    self.trails.clone(),
                    None,
                ));
                if self.mode == SearchMode::FirstOnly {
                    self.done = true;
                }
                return;
            }
        };
        // A difference equal to its own negation would always be
        // covered twice at once; no trail set can use it exactly once.
        if delta * 2 == self.modulus {
            return;
        }
        // One-vertex trail: the expansion is the cyclic subgroup walk,
        // its only difference pair is the stride's.
        if gcd(delta, self.modulus) == 1 {
            self.place_pair(delta);
            self.trails
                .push(ClosedTrail::new(vec![0], delta, &self.params));
            self.extend_set();
            self.trails.pop();
            self.unplace_pair(delta);
            if self.stop() {
                return;
            }
        }
        let divisors = self.divisors.clone();
        for r in divisors {
            if r < 2 || 2 * r > self.remaining || delta % r == 0 {
                continue;
            }
            self.place_pair(delta);
            let mut base = vec![0, delta];
            let mut class_used = vec![false; r as usize];
            class_used[0] = true;
            class_used[(delta % r) as usize] = true;
            self.extend_trail(&mut base, &mut class_used, r);
            self.unplace_pair(delta);
            if self.stop() {
                return;
            }
        }
    }

    /// Grow the current base to one entry per residue class mod `r`,
    /// then close it with a stride whose gcd with the order is `r`.
    fn extend_trail(&mut self, base: &mut Vec<u64>, class_used: &mut [bool], r: u64) {
        if !self.tick() {
            return;
        }
        if base.len() as u64 == r {
            let last = *base.last().expect("base starts non-empty");
            for x in (0..self.modulus).step_by(r as usize) {
                if gcd(x, self.modulus) != r {
                    continue;
                }
                let wrap = self.params.sub(x, last);
                debug_assert_ne!(wrap, 0, "stride and last entry sit in different classes");
                if self.used[wrap as usize] || wrap * 2 == self.modulus {
                    continue;
                }
                self.place_pair(wrap);
                self.trails
                    .push(ClosedTrail::new(base.clone(), x, &self.params));
                self.extend_set();
                self.trails.pop();
                self.unplace_pair(wrap);
                if self.stop() {
                    return;
                }
            }
            return;
        }
        let prev = *base.last().expect("base starts non-empty");
        for v in 0..self.modulus {
            if class_used[(v % r) as usize] {
                continue;
            }
            let step = self.params.sub(v, prev);
            if self.used[step as usize] || step * 2 == self.modulus {
                continue;
            }
            class_used[(v % r) as usize] = true;
            self.place_pair(step);
            base.push(v);
            self.extend_trail(base, class_used, r);
            base.pop();
            self.unplace_pair(step);
            class_used[(v % r) as usize] = false;
            if self.stop() {
                return;
            }
        }
    }
}

/// Enumerate base-cycle sets whose differences cover each residue
/// outside the part subgroup exactly once. Refuses orders above `cap`;
/// gives up (with `exhausted = false`) once `budget` nodes are spent.
pub fn search_base_sets(
    params: &Params,
    mode: SearchMode,
    budget: u64,
    cap: u64,
) -> Result<SearchOutcome, SearchError> {
    let modulus = params.order();
    if modulus > cap {
        return Err(SearchError::CapExceeded {
            order: modulus,
            cap,
        });
    }
    let mut used = vec![false; modulus as usize];
    used[0] = true;
    let mut remaining = 0;
    for d in 1..modulus {
        if d % params.m() == 0 {
            used[d as usize] = true;
        } else {
            remaining += 1;
        }
    }
    let divisors: Vec<u64> = (1..=modulus).filter(|d| modulus % d == 0).collect();
    let mut searcher = Searcher {
        params: *params,
        modulus,
        used,
        remaining,
        divisors,
        trails: Vec::new(),
        solutions: Vec::new(),
        mode,
        budget,
        nodes: 0,
        truncated: false,
        done: false,
    };
    searcher.extend_set();
    Ok(SearchOutcome {
        solutions: searcher.solutions,
        exhausted: !searcher.truncated && !searcher.done,
        truncated: searcher.truncated,
        nodes: searcher.nodes,
    })
}

/// Order-free fingerprint of a trail set: the sorted canonical keys.
pub fn canonical_set_key(set: &BaseCycleSet) -> Vec<Vec<u64>> {
    let params = set.params();
    let mut keys: Vec<Vec<u64>> = set
        .trails()
        .iter()
        .map(|t| t.canonical_key(params))
        .collect();
    keys.sort();
    keys
}

/// Does any enumerated solution match `set` up to rotation, reflection,
/// and translation of each trail?
pub fn contains_equivalent(outcome: &SearchOutcome, set: &BaseCycleSet) -> bool {
    let key = canonical_set_key(set);
    outcome.solutions.iter().any(|s| canonical_set_key(s) == key)
}

/// Cross-check a set against the independent search: passes when the
/// full verifier accepts the set and a from-scratch search confirms the
/// parameters admit at least one solution. Errs when the order exceeds
/// `cap`, or when the budget runs out before existence is settled.
pub fn check_against_oracle(
    set: &BaseCycleSet,
    budget: u64,
    cap: u64,
) -> Result<bool, SearchError> {
    if !crate::verifier::verify_full(set).pass() {
        return Ok(false);
    }
    let outcome = search_base_sets(set.params(), SearchMode::FirstOnly, budget, cap)?;
    if outcome.solutions.is_empty() && outcome.truncated {
        return Err(SearchError::BudgetExhausted {
            nodes: outcome.nodes,
        });
    }
    Ok(!outcome.solutions.is_empty())
}
