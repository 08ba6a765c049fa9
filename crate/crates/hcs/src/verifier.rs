//! Checks that a set of base trails really yields a cyclic, symmetric
//! Hamiltonian cycle system.
//!
//! Two verifiers with disjoint mechanics:
//! * [`verify_base`] counts partial differences of the base trails and
//!   compares against the required multiset (every residue outside the
//!   part subgroup exactly once).
//! * [`verify_full`] never touches difference arithmetic. It expands
//!   every trail, takes all distinct shifts, and checks the resulting
//!   cycles edge by edge: Hamiltonicity, exact edge partition, and
//!   invariance of the whole design under the shift `v -> v + 1`.
//!
//! A bug in the difference bookkeeping cannot hide in both.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::constructor::BaseCycleSet;
use crate::feasibility::{self, OddN};
use crate::trail::{stabilizer_order, ClosedTrail, Cycle, DifferenceMultiset, TrailError};
use crate::zmod::Params;

/// Verdict of the difference-counting check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseReport {
    pub pass: bool,
    /// Residues with the wrong multiplicity, as `(residue, seen)` pairs
    /// in ascending order. Expected is 1 off the part subgroup, else 0.
    pub wrong: Vec<(u64, u64)>,
}

/// Count partial differences across the whole set. Fails early with the
/// offending trail's index if any trail is not valid.
pub fn verify_base(set: &BaseCycleSet) -> Result<BaseReport, (usize, TrailError)> {
    let params = set.params();
    let modulus = params.order();
    let mut all = DifferenceMultiset::new(modulus);
    for (idx, trail) in set.trails().iter().enumerate() {
        let pd = trail.partial_differences(params).map_err(|e| (idx, e))?;
        all.union_with(&pd);
    }
    let mut wrong = Vec::new();
    for residue in 1..modulus {
        let expected = if residue % params.m() == 0 { 0 } else { 1 };
        let seen = all.multiplicity(residue);
        if seen != expected {
            wrong.push((residue, seen));
        }
    }
    Ok(BaseReport {
        pass: wrong.is_empty(),
        wrong,
    })
}

/// Why an expanded trail is not a Hamiltonian cycle of the multipartite
/// graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleFault {
    WrongVertexCount { got: usize },
    RepeatedVertex { vertex: u64 },
    IntraPartStep { from: u64, to: u64 },
}

impl fmt::Display for CycleFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleFault::WrongVertexCount { got } => {
                write!(f, "expansion visits {got} vertices")
            }
            CycleFault::RepeatedVertex { vertex } => {
                write!(f, "expansion repeats vertex {vertex}")
            }
            CycleFault::IntraPartStep { from, to } => {
                write!(f, "step {from} -> {to} stays inside one part")
            }
        }
    }
}

/// Why the shifted cycles fail to partition the edge set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionFault {
    DuplicateEdge { u: u64, v: u64 },
    IntraPartEdge { u: u64, v: u64 },
    MissingEdge { u: u64, v: u64 },
}

impl fmt::Display for PartitionFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionFault::DuplicateEdge { u, v } => {
                write!(f, "edge {{{u},{v}}} covered more than once")
            }
            PartitionFault::IntraPartEdge { u, v } => {
                write!(f, "edge {{{u},{v}}} joins vertices of one part")
            }
            PartitionFault::MissingEdge { u, v } => {
                write!(f, "edge {{{u},{v}}} never covered")
            }
        }
    }
}

/// A design cycle whose shift by 1 is not itself a design cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureFault {
    pub cycle: usize,
}

impl fmt::Display for ClosureFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shift of design cycle {} is not a design cycle", self.cycle)
    }
}

/// Everything [`verify_full`] learned. `cycles` and `edges` count the
/// design that was actually assembled; both stay 0 when an expansion
/// already fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullReport {
    pub cycle_faults: Vec<(usize, CycleFault)>,
    pub partition: Option<PartitionFault>,
    pub closure: Option<ClosureFault>,
    pub cycles: u64,
    pub edges: u64,
}

impl FullReport {
    pub fn pass(&self) -> bool {
        self.cycle_faults.is_empty() && self.partition.is_none() && self.closure.is_none()
    }
}

fn hamiltonian_fault(cycle: &Cycle, params: &Params) -> Option<CycleFault> {
    let modulus = params.order();
    let verts = cycle.vertices();
    if verts.len() as u64 != modulus {
        return Some(CycleFault::WrongVertexCount { got: verts.len() });
    }
    let mut seen = vec![false; verts.len()];
    for &v in verts {
        if seen[v as usize] {
            return Some(CycleFault::RepeatedVertex { vertex: v });
        }
        seen[v as usize] = true;
    }
    for k in 0..verts.len() {
        let from = verts[k];
        let to = verts[(k + 1) % verts.len()];
        if params.same_part(from, to) {
            return Some(CycleFault::IntraPartStep { from, to });
        }
    }
    None
}

/// The smallest absent cross-part pair. Only called once a shortfall is
/// certain, so the scan cannot come up empty.
fn first_missing_edge(occupancy: &HashMap<u64, u32>, params: &Params) -> PartitionFault {
    let modulus = params.order();
    for u in 0..modulus {
        for v in u + 1..modulus {
            if !params.same_part(u, v) && !occupancy.contains_key(&(u * modulus + v)) {
                return PartitionFault::MissingEdge { u, v };
            }
        }
    }
    unreachable!("caller checked that some cross-part pair is uncovered")
}

/// Expand every trail, take all distinct shifts of each expansion, and
/// check the collection is a Hamiltonian decomposition fixed by
/// `v -> v + 1`. Shares no difference arithmetic with [`verify_base`].
pub fn verify_full(set: &BaseCycleSet) -> FullReport {
    let params = set.params();
    let modulus = params.order();

    let mut cycle_faults = Vec::new();
    let mut expansions = Vec::new();
    for (idx, trail) in set.trails().iter().enumerate() {
        let cycle = trail.expand(params);
        match hamiltonian_fault(&cycle, params) {
            Some(fault) => cycle_faults.push((idx, fault)),
            None => expansions.push(cycle),
        }
    }
    if !cycle_faults.is_empty() {
        return FullReport {
            cycle_faults,
            partition: None,
            closure: None,
            cycles: 0,
            edges: 0,
        };
    }

    let mut design: Vec<Cycle> = Vec::new();
    for cycle in &expansions {
        let span = modulus / stabilizer_order(cycle, params);
        for shift in 0..span {
            design.push(cycle.translate(shift, params));
        }
    }
    let cycles = design.len() as u64;

    let mut occupancy: HashMap<u64, u32> = HashMap::new();
    let mut partition = None;
    'cover: for cycle in &design {
        let verts = cycle.vertices();
        for k in 0..verts.len() {
            let a = verts[k];
            let b = verts[(k + 1) % verts.len()];
            if params.same_part(a, b) {
                partition = Some(PartitionFault::IntraPartEdge { u: a, v: b });
                break 'cover;
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            let slot = occupancy.entry(u * modulus + v).or_insert(0);
            *slot += 1;
            if *slot > 1 {
                partition = Some(PartitionFault::DuplicateEdge { u, v });
                break 'cover;
            }
        }
    }
    let edges = occupancy.len() as u64;
    if partition.is_none() && edges != modulus * (modulus - params.n()) / 2 {
        partition = Some(first_missing_edge(&occupancy, params));
    }

    let mut closure = None;
    if partition.is_none() {
        let keys: HashSet<Vec<(u64, u64)>> = design.iter().map(Cycle::edge_key).collect();
        for (idx, cycle) in design.iter().enumerate() {
            if !keys.contains(&cycle.translate(1, params).edge_key()) {
                closure = Some(ClosureFault { cycle: idx });
                break;
            }
        }
    }

    FullReport {
        cycle_faults,
        partition,
        closure,
        cycles,
        edges,
    }
}

/// A trail whose expansion is not fixed by `v -> v + m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryFault {
    pub trail: usize,
    pub orbit_len: u64,
}

impl fmt::Display for SymmetryFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trail {} has orbit length {}, which does not divide the part count",
            self.trail, self.orbit_len
        )
    }
}

/// Every orbit length must divide `m`, so that adding `m` fixes each
/// cycle of the design.
pub fn verify_symmetric(set: &BaseCycleSet) -> Result<(), SymmetryFault> {
    let params = set.params();
    for (idx, trail) in set.trails().iter().enumerate() {
        let orbit_len = trail.orbit_length(params);
        if params.m() % orbit_len != 0 {
            return Err(SymmetryFault {
                trail: idx,
                orbit_len,
            });
        }
    }
    Ok(())
}

/// Parity bookkeeping for orbits of odd length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityReport {
    /// Number of odd-length orbits. Only its parity is constrained.
    pub observed: u64,
    /// What the count must be congruent to mod 2, forced by `(m, n)`.
    pub target: u64,
    pub pass: bool,
}

/// Count odd-length orbits and compare the count's parity against the
/// value forced by `(m, n)`.
pub fn verify_parity(set: &BaseCycleSet) -> Result<ParityReport, OddN> {
    let params = set.params();
    let target = feasibility::odd_orbit_parity_target(params)?;
    let observed = set
        .trails()
        .iter()
        .filter(|t| t.orbit_length(params) % 2 == 1)
        .count() as u64;
    Ok(ParityReport {
        observed,
        target,
        pass: observed % 2 == target,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CayleyCheckError {
    Invalid(TrailError),
    /// Some partial difference appears more than once, so no exact
    /// cover of a circulant graph can be expected.
    RepeatedDifference(u64),
}

impl fmt::Display for CayleyCheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CayleyCheckError::Invalid(e) => write!(f, "trail is not valid: {e}"),
            CayleyCheckError::RepeatedDifference(d) => {
                write!(f, "difference {d} appears more than once")
            }
        }
    }
}

impl std::error::Error for CayleyCheckError {}

/// Check that the distinct shifts of one trail's expansion partition
/// the edges of the circulant graph on the trail's own differences.
pub fn cayley_edge_cover(trail: &ClosedTrail, params: &Params) -> Result<bool, CayleyCheckError> {
    trail.validate(params).map_err(CayleyCheckError::Invalid)?;
    let pd = trail
        .partial_differences(params)
        .expect("trail was just validated");
    if let Some((residue, _)) = pd.iter().find(|&(_, mult)| mult > 1) {
        return Err(CayleyCheckError::RepeatedDifference(residue));
    }
    let modulus = params.order();
    let cycle = trail.expand(params);
    let span = modulus / stabilizer_order(&cycle, params);
    let mut occupancy: HashMap<u64, u32> = HashMap::new();
    for shift in 0..span {
        let shifted = cycle.translate(shift, params);
        let verts = shifted.vertices();
        for k in 0..verts.len() {
            let a = verts[k];
            let b = verts[(k + 1) % verts.len()];
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            *occupancy.entry(u * modulus + v).or_insert(0) += 1;
        }
    }
    // Every inserted edge has its difference in the connection set, so
    // singleton counts plus a full tally pin down an exact partition.
    let expected = pd.total() / 2 * modulus;
    Ok(occupancy.values().all(|&c| c == 1) && occupancy.len() as u64 == expected)
}
