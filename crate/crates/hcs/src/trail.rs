//! Closed trails `[c_0, ..., c_{r-1}]_x`, their expansions to cycles,
//! and the difference multisets that drive the whole theory.

use std::collections::BTreeMap;
use std::fmt;

use crate::zmod::{order_of, Params};

/// A closed trail `[c_0, ..., c_{r-1}]_x` in `Z_M`: the walk that visits
/// the base vertices, then the base shifted by `x`, then by `2x`, and so
/// on until the shift wraps around. With `d` the order of `x`, the walk
/// closes after `d * r` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedTrail {
    base: Vec<u64>,
    stride: u64,
}

/// Why a trail fails to expand to a Hamiltonian cycle of `K_{m x n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrailError {
    /// `d * r != M`: the expansion does not visit `M` vertices.
    WrongLength { expanded: u64, expected: u64 },
    /// Base entries at positions `i < j` lie in the same coset of the
    /// stride subgroup, so the expansion repeats a vertex.
    CosetCollision { i: usize, j: usize },
    /// A step of the expansion stays inside one part.
    EdgeInsidePart { from: u64, to: u64 },
}

impl fmt::Display for TrailError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrailError::WrongLength { expanded, expected } => {
                write!(f, "expansion has {expanded} vertices, need {expected}")
            }
            TrailError::CosetCollision { i, j } => {
                write!(f, "base entries {i} and {j} lie in the same stride coset")
            }
            TrailError::EdgeInsidePart { from, to } => {
                write!(f, "step {from} -> {to} stays inside a part")
            }
        }
    }
}

impl std::error::Error for TrailError {}

impl ClosedTrail {
    /// Build a trail, reducing all values mod `M`. The base must be
    /// non-empty; nothing else is checked here, see [`Self::validate`].
    pub fn new(base: Vec<u64>, stride: u64, params: &Params) -> ClosedTrail {
        assert!(!base.is_empty(), "trail base must be non-empty");
        ClosedTrail {
            base: base.into_iter().map(|c| params.reduce(c)).collect(),
            stride: params.reduce(stride),
        }
    }

    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn stride(&self) -> u64 {
        self.stride
    }

    /// Base length `r`.
    pub fn r(&self) -> usize {
        self.base.len()
    }

    /// The full vertex sequence of the trail: `d` copies of the base,
    /// the `k`-th one shifted by `k * stride`. Length `d * r`. The
    /// result is a Hamiltonian cycle only if [`Self::validate`] passes.
    pub fn expand(&self, params: &Params) -> Cycle {
        let d = order_of(self.stride, params.order());
        let mut vertices = Vec::with_capacity((d as usize) * self.base.len());
        let mut shift = 0;
        for _ in 0..d {
            for &c in &self.base {
                vertices.push(params.add(c, shift));
            }
            shift = params.add(shift, self.stride);
        }
        Cycle::new(vertices)
    }

    /// Check that the expansion is a Hamiltonian cycle of `K_{m x n}`:
    /// it has `M` vertices, repeats none (base entries must cover the
    /// cosets of the stride subgroup exactly once), and never steps
    /// inside a part.
    pub fn validate(&self, params: &Params) -> Result<(), TrailError> {
        let modulus = params.order();
        let d = order_of(self.stride, modulus);
        let r = self.base.len() as u64;
        if d * r != modulus {
            return Err(TrailError::WrongLength {
                expanded: d * r,
                expected: modulus,
            });
        }
        // The stride subgroup is <g> with g = gcd(x, M) = M / d = r, so
        // its cosets are the residue classes mod r.
        let g = modulus / d;
        let mut seen = vec![usize::MAX; g as usize];
        for (i, &c) in self.base.iter().enumerate() {
            let class = (c % g) as usize;
            if seen[class] != usize::MAX {
                return Err(TrailError::CosetCollision { i: seen[class], j: i });
            }
            seen[class] = i;
        }
        // Every edge of the expansion is a translate of a base step or
        // of the wrap step, so checking those covers them all.
        for i in 1..self.base.len() {
            let (from, to) = (self.base[i - 1], self.base[i]);
            if params.sub(to, from) % params.m() == 0 {
                return Err(TrailError::EdgeInsidePart { from, to });
            }
        }
        let from = self.base[self.base.len() - 1];
        let to = params.add(self.base[0], self.stride);
        if params.sub(to, from) % params.m() == 0 {
            return Err(TrailError::EdgeInsidePart { from, to });
        }
        Ok(())
    }

    /// Signed differences along one period of a valid trail: `+-` of
    /// each base step and of the wrap step `c_0 + x - c_{r-1}`. The
    /// expansion repeats these `d` times, see [`list_of_differences`].
    pub fn partial_differences(&self, params: &Params) -> Result<DifferenceMultiset, TrailError> {
        self.validate(params)?;
        let mut ds = DifferenceMultiset::new(params.order());
        for i in 1..self.base.len() {
            ds.insert_pair(params.sub(self.base[i], self.base[i - 1]));
        }
        let wrap = params.sub(
            params.add(self.base[0], self.stride),
            self.base[self.base.len() - 1],
        );
        ds.insert_pair(wrap);
        Ok(ds)
    }

    /// Number of distinct translates of the expanded cycle.
    pub fn orbit_length(&self, params: &Params) -> u64 {
        params.order() / stabilizer_order(&self.expand(params), params)
    }

    /// All distinct translates of the expanded cycle, starting from the
    /// expansion itself.
    pub fn orbit(&self, params: &Params) -> Vec<Cycle> {
        let cycle = self.expand(params);
        let len = params.order() / stabilizer_order(&cycle, params);
        (0..len).map(|k| cycle.translate(k, params)).collect()
    }

    /// `c_0 - c_{M/d}` of the expanded cycle, `d` the stabilizer order.
    /// For a trail whose stride generates the full stabilizer this is
    /// `-x mod M`.
    pub fn sigma(&self, params: &Params) -> u64 {
        let cycle = self.expand(params);
        let d = stabilizer_order(&cycle, params);
        let idx = ((params.order() / d) % params.order()) as usize;
        params.sub(cycle.vertices()[0], cycle.vertices()[idx])
    }

    /// `true` iff the expanded cycle is fixed by `v -> v + m`, i.e. the
    /// orbit length divides `m`.
    pub fn is_phi_symmetric(&self, params: &Params) -> bool {
        params.m() % self.orbit_length(params) == 0
    }

    /// Least key over all `2r` trail representations of the expanded
    /// cycle's orbit (r rotations, two directions, base translated to
    /// start at 0). The key is the base sequence with the stride
    /// appended. Two trails expand to translates of one another iff
    /// their canonical keys agree.
    pub fn canonical_key(&self, params: &Params) -> Vec<u64> {
        let r = self.base.len();
        let mut best: Option<Vec<u64>> = None;
        for rep in self.representations(params) {
            if best.as_ref().is_none_or(|b| rep < *b) {
                best = Some(rep);
            }
        }
        let key = best.unwrap();
        debug_assert_eq!(key.len(), r + 1);
        key
    }

    fn representations(&self, params: &Params) -> Vec<Vec<u64>> {
        let r = self.base.len();
        // Walk one period forwards and backwards; rotations of these
        // two walks cover every representation.
        let forward: Vec<u64> = self.base.clone();
        let f_stride = self.stride;
        let mut backward: Vec<u64> = Vec::with_capacity(r);
        backward.push(self.base[0]);
        for i in (1..r).rev() {
            backward.push(params.sub(self.base[i], self.stride));
        }
        let b_stride = params.neg(self.stride);
        let mut reps = Vec::with_capacity(2 * r);
        for (walk, stride) in [(forward, f_stride), (backward, b_stride)] {
            for p in 0..r {
                let origin = walk[p];
                let mut key: Vec<u64> = Vec::with_capacity(r + 1);
                for j in 0..r {
                    let idx = (p + j) % r;
                    let wrapped = (p + j) >= r;
                    let v = if wrapped {
                        params.add(walk[idx], stride)
                    } else {
                        walk[idx]
                    };
                    key.push(params.sub(v, origin));
                }
                key.push(stride);
                reps.push(key);
            }
        }
        reps
    }
}

/// A closed vertex sequence. Construction does not validate anything;
/// two cycles are equal when their undirected edge sets agree.
#[derive(Debug, Clone)]
pub struct Cycle {
    vertices: Vec<u64>,
}

impl Cycle {
    pub fn new(vertices: Vec<u64>) -> Cycle {
        assert!(!vertices.is_empty(), "cycle must have at least one vertex");
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn translate(&self, k: u64, params: &Params) -> Cycle {
        Cycle {
            vertices: self.vertices.iter().map(|&v| params.add(v, k)).collect(),
        }
    }

    /// Undirected edges as ordered pairs, sorted: a canonical form.
    pub fn edge_key(&self) -> Vec<(u64, u64)> {
        let n = self.vertices.len();
        let mut edges: Vec<(u64, u64)> = (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges
    }
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Self) -> bool {
        self.edge_key() == other.edge_key()
    }
}

impl Eq for Cycle {}

/// Order of the translation stabilizer `{k : C + k = C}` of a cycle.
pub fn stabilizer_order(cycle: &Cycle, params: &Params) -> u64 {
    let modulus = params.order();
    let key = cycle.edge_key();
    // The stabilizer is a subgroup of Z_M, hence generated by a divisor
    // of M; the smallest divisor that fixes the cycle generates it.
    for q in 1..=modulus {
        if modulus % q != 0 {
            continue;
        }
        if cycle.translate(q, params).edge_key() == key {
            return modulus / q;
        }
    }
    unreachable!("translation by M is the identity");
}

/// `+-` differences over all edges of a cycle, as a multiset.
pub fn list_of_differences(cycle: &Cycle, params: &Params) -> DifferenceMultiset {
    let mut ds = DifferenceMultiset::new(params.order());
    let n = cycle.len();
    for i in 0..n {
        let delta = params.sub(cycle.vertices()[(i + 1) % n], cycle.vertices()[i]);
        ds.insert_pair(delta);
    }
    ds
}

/// Multiset of residues of `Z_M`, closed under negation by construction:
/// every insertion records both `delta` and `M - delta` (so `M/2`, its
/// own negative, gets multiplicity 2 per insertion).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceMultiset {
    modulus: u64,
    counts: BTreeMap<u64, u64>,
    total: u64,
}

impl DifferenceMultiset {
    pub fn new(modulus: u64) -> DifferenceMultiset {
        assert!(modulus > 0);
        DifferenceMultiset {
            modulus,
            counts: BTreeMap::new(),
            total: 0,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Record `+-delta`. `delta` must be a nonzero residue.
    pub fn insert_pair(&mut self, delta: u64) {
        assert!(
            delta != 0 && delta < self.modulus,
            "difference must be a nonzero residue, got {delta} mod {}",
            self.modulus
        );
        let neg = self.modulus - delta;
        if delta == neg {
            *self.counts.entry(delta).or_insert(0) += 2;
        } else {
            *self.counts.entry(delta).or_insert(0) += 1;
            *self.counts.entry(neg).or_insert(0) += 1;
        }
        self.total += 2;
    }

    pub fn multiplicity(&self, residue: u64) -> u64 {
        self.counts.get(&residue).copied().unwrap_or(0)
    }

    /// Total number of recorded values, multiplicities included.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Residues with nonzero multiplicity, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&r, &c)| (r, c))
    }

    pub fn union_with(&mut self, other: &DifferenceMultiset) {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        for (r, c) in other.iter() {
            *self.counts.entry(r).or_insert(0) += c;
        }
        self.total += other.total;
    }

    /// This multiset repeated `k` times.
    pub fn repeated(&self, k: u64) -> DifferenceMultiset {
        let mut out = DifferenceMultiset::new(self.modulus);
        for (r, c) in self.iter() {
            if c * k > 0 {
                out.counts.insert(r, c * k);
            }
        }
        out.total = self.total * k;
        out
    }
}
