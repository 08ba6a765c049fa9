//! Explicit base-cycle sets for every feasible even-`m` case with
//! `n > 2`, plus the `nu` selection arithmetic they rely on.
//!
//! All constructions assemble a handful of path shapes:
//! * *pendant* paths `[0, y]` expanded with stride 2;
//! * *zigzags* `[0, T, 1, T-1, 2, T-2, ...]` alternating between a low
//!   run and a high run;
//! * *split zigzags*, a zigzag whose low run skips ahead once and whose
//!   high run drops by 2 instead of 1, used by the odd-part branches;
//! * a single-vertex trail `[0]` with a stride coprime to `M`.

use std::fmt;

use crate::feasibility::{self, Existence, NonExistenceReason};
use crate::trail::ClosedTrail;
use crate::zmod::{gcd, two_adic_valuation, Params, ParamsError};

/// How [`construct`] put a base-cycle set together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionPlan {
    /// `m = 2`, any even `n = 2*ell`: pendant trails, plus one
    /// unit-stride trail when `ell` is odd.
    Bipartite { ell: u64 },
    /// `m = 2^a > 2`, `n = 4t`: zigzag trails only.
    Pow2 { a: u32, t: u64 },
    /// `m = 2^a * mbar` with `mbar > 1` odd, `n = 4t`: zigzag and
    /// split-zigzag trails covering the even differences, pendants for
    /// the odd ones.
    Mixed { a: u32, mbar: u64, t: u64 },
    /// `m = 2 (mod 4)`, `m > 2`, `n = 2 (mod 4)`, `n > 2`. The unit
    /// trail uses stride `nu = s + 2*m*kappa`, chosen coprime to `M`
    /// from the progression with step `d = 2m` below the window `w = n/2`.
    TwoMod4 {
        mbar: u64,
        t: u64,
        s: u64,
        d: u64,
        w: u64,
        nu: u64,
        kappa: u64,
        u: u64,
    },
}

/// A set of base trails for (the attempt at) a cyclic HCS, together
/// with the plan that produced it when it came from [`construct`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseCycleSet {
    params: Params,
    trails: Vec<ClosedTrail>,
    plan: Option<ConstructionPlan>,
}

impl BaseCycleSet {
    pub fn new(params: Params, trails: Vec<ClosedTrail>, plan: Option<ConstructionPlan>) -> Self {
        BaseCycleSet {
            params,
            trails,
            plan,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn trails(&self) -> &[ClosedTrail] {
        &self.trails
    }

    pub fn plan(&self) -> Option<&ConstructionPlan> {
        self.plan.as_ref()
    }
}

/// Outcome of [`construct`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Built(BaseCycleSet),
    /// `n = 2`, `m > 2`: `K_{m x 2}` is the cocktail party graph
    /// `K_{2m}` minus a perfect matching; we report the known existence
    /// condition instead of rebuilding those constructions.
    DelegatedN2 { exists: bool },
    Nonexistent(NonExistenceReason),
    /// Odd `m` falls outside the even-`m` constructions.
    UnsupportedOddM,
}

/// User-input problems; mathematical outcomes go through [`Construction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    /// `--kappa` given for a branch that has no such parameter.
    KappaNotApplicable,
    Nu(NuError),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::KappaNotApplicable => {
                write!(f, "kappa only applies when m = 2 (mod 4), m > 2, n = 2 (mod 4), n > 2")
            }
            ConstructError::Nu(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ConstructError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NuError {
    OutOfRange { kappa: u64, max: u64 },
    NotCoprime { kappa: u64, nu: u64, w: u64 },
}

impl fmt::Display for NuError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuError::OutOfRange { kappa, max } => {
                write!(f, "kappa = {kappa} out of range 0..={max}")
            }
            NuError::NotCoprime { kappa, nu, w } => {
                write!(f, "kappa = {kappa} gives nu = {nu} with gcd(nu, {w}) > 1")
            }
        }
    }
}

impl std::error::Error for NuError {}

/// The arithmetic progression `s, s+d, ..., s+((w-3)/2)d` of `(w-1)/2`
/// integers. Requires odd `w >= 3`.
pub fn s_set(s: u64, d: u64, w: u64) -> Vec<u64> {
    assert!(w >= 3 && w % 2 == 1, "w must be odd and at least 3");
    (0..=(w - 3) / 2).map(|k| s + k * d).collect()
}

/// How many members of [`s_set`] are coprime to `w`.
pub fn phi_count(s: u64, d: u64, w: u64) -> usize {
    s_set(s, d, w).iter().filter(|&&x| gcd(x, w) == 1).count()
}

/// Pick `nu = s + 2m*kappa` coprime to `w = n/2` (hence to `M`), with
/// `s = 3*mbar + 2` or `3*mbar - 2` according to `m mod 8`. Without an
/// override the smallest admissible `kappa` wins. Returns `(nu, kappa)`.
pub fn find_nu(m: u64, n: u64, kappa_override: Option<u64>) -> Result<(u64, u64), NuError> {
    assert!(m % 4 == 2 && m > 2 && n % 4 == 2 && n > 2);
    let mbar = m / 2;
    let s = if m % 8 == 2 { 3 * mbar + 2 } else { 3 * mbar - 2 };
    let w = n / 2;
    let max = (w - 3) / 2;
    let chosen = match kappa_override {
        Some(kappa) if kappa > max => return Err(NuError::OutOfRange { kappa, max }),
        Some(kappa) => {
            let nu = s + 2 * m * kappa;
            if gcd(nu, w) != 1 {
                return Err(NuError::NotCoprime { kappa, nu, w });
            }
            (nu, kappa)
        }
        None => (0..=max)
            .map(|kappa| (s + 2 * m * kappa, kappa))
            .find(|&(nu, _)| gcd(nu, w) == 1)
            .expect("the progression always contains a unit: gcd(s,d,w)=1 and 3 does not divide s"),
    };
    assert_eq!(gcd(chosen.0, m * n), 1, "nu must generate Z_M");
    Ok(chosen)
}

/// `[k, top-k]` pairs for `k = 0..count-1`.
fn zigzag(count: u64, top: u64) -> Vec<u64> {
    let mut path = Vec::with_capacity(2 * count as usize);
    for k in 0..count {
        path.push(k);
        path.push(top - k);
    }
    path
}

/// The odd-part zigzag of length `2*mbar`: lows `0, 1, 3, ..., mbar-2`
/// then `mbar+1, mbar+3, ..., 2*mbar-2`, interleaved with highs
/// descending by 2 from `offset + 4*mbar - 1` and `offset + 3*mbar - 1`.
fn split_zigzag(offset: u64, mbar: u64) -> Vec<u64> {
    let mut path = Vec::with_capacity(2 * mbar as usize);
    let mut low = 0;
    let mut high = offset + 4 * mbar - 1;
    for k in 0..(mbar + 1) / 2 {
        path.push(low);
        path.push(high);
        low = if k == 0 { 1 } else { low + 2 };
        high -= 2;
    }
    let mut low = mbar + 1;
    let mut high = offset + 3 * mbar - 1;
    for _ in 0..(mbar - 1) / 2 {
        path.push(low);
        path.push(high);
        low += 2;
        high -= 2;
    }
    path
}

/// `[0, offset + 4j - 1]` for `j` in the lower half, `[0, offset + 4j + 1]`
/// in the upper half; skipping the multiple of `m` between the halves.
fn pendant(offset: u64, j: u64, mbar: u64) -> Vec<u64> {
    debug_assert!(j >= 1 && j < mbar);
    if j <= (mbar - 1) / 2 {
        vec![0, offset + 4 * j - 1]
    } else {
        vec![0, offset + 4 * j + 1]
    }
}

/// `m = 2`: `K_{2 x n}` for any even `n = 2*ell`.
pub fn construct_bipartite(n: u64) -> Result<BaseCycleSet, ParamsError> {
    assert!(n >= 2 && n % 2 == 0, "need even n >= 2");
    let params = Params::new(2, n)?;
    let ell = n / 2;
    let mut trails = Vec::new();
    for i in 0..ell / 2 {
        trails.push(ClosedTrail::new(vec![0, 4 * i + 3], 2, &params));
    }
    if ell % 2 == 1 {
        trails.push(ClosedTrail::new(vec![0], 2 * ell - 1, &params));
    }
    Ok(BaseCycleSet::new(
        params,
        trails,
        Some(ConstructionPlan::Bipartite { ell }),
    ))
}

/// `m` even `>= 4`, `n = 4t`: the power-of-two and mixed branches.
pub fn construct_n_div4(m: u64, n: u64) -> Result<BaseCycleSet, ParamsError> {
    assert!(m >= 4 && m % 2 == 0, "need even m >= 4");
    assert!(n >= 4 && n % 4 == 0, "need n divisible by 4");
    let params = Params::new(m, n)?;
    let a = two_adic_valuation(m);
    let mbar = m >> a;
    let t = n / 4;
    let mut trails = Vec::new();
    let plan = if mbar == 1 {
        for i in 0..t {
            for b in 1..=a {
                let top = 2 * m * i + (1 << (b + 1)) - 1;
                trails.push(ClosedTrail::new(zigzag(1 << (b - 1), top), 1 << b, &params));
            }
        }
        ConstructionPlan::Pow2 { a, t }
    } else {
        for i in 0..t {
            for j in 1..mbar {
                trails.push(ClosedTrail::new(pendant(2 * m * i, j, mbar), 2, &params));
            }
            trails.push(ClosedTrail::new(split_zigzag(2 * m * i, mbar), 2 * mbar, &params));
            for b in 2..=a {
                let top = 2 * m * i + (1 << (b + 1)) * mbar - 1;
                let count = (1 << (b - 1)) * mbar;
                trails.push(ClosedTrail::new(zigzag(count, top), (1 << b) * mbar, &params));
            }
        }
        ConstructionPlan::Mixed { a, mbar, t }
    };
    Ok(BaseCycleSet::new(params, trails, Some(plan)))
}

/// `m = 2 (mod 4)`, `m > 2`, `n = 2 (mod 4)`, `n > 2`.
pub fn construct_2mod4(
    m: u64,
    n: u64,
    kappa_override: Option<u64>,
) -> Result<BaseCycleSet, ConstructError> {
    assert!(m % 4 == 2 && m > 2 && n % 4 == 2 && n > 2);
    let params = Params::new(m, n).expect("orders here stay below the cap");
    let mbar = m / 2;
    let t = (n - 2) / 4;
    let (nu, kappa) = find_nu(m, n, kappa_override).map_err(ConstructError::Nu)?;
    let s = if m % 8 == 2 { 3 * mbar + 2 } else { 3 * mbar - 2 };
    let u = if m % 8 == 2 {
        (3 * mbar + 1) / 4
    } else {
        (3 * mbar - 1) / 4
    };
    let mut trails = Vec::new();
    // Split zigzags at the even block offsets 0, 2m, ..., 2m*kappa.
    for i in 0..=kappa {
        trails.push(ClosedTrail::new(split_zigzag(2 * m * i, mbar), m, &params));
    }
    // Pendants completing those blocks (all but the last).
    for i in 0..kappa {
        for j in 1..mbar {
            trails.push(ClosedTrail::new(pendant(2 * m * i, j, mbar), 2, &params));
        }
    }
    // Blocks at the odd offsets (2i+1)m for i past kappa: pendants, then
    // a split zigzag each.
    for i in kappa + 1..t {
        for j in 1..mbar {
            trails.push(ClosedTrail::new(pendant((2 * i + 1) * m, j, mbar), 2, &params));
        }
    }
    for i in kappa + 1..t {
        trails.push(ClosedTrail::new(split_zigzag((2 * i + 1) * m, mbar), m, &params));
    }
    // Pendants for the last even block, skipping index u, whose pair of
    // differences is covered by the plain zigzag and the unit trail.
    for j in (1..mbar).filter(|&j| j != u) {
        trails.push(ClosedTrail::new(pendant(2 * m * kappa, j, mbar), 2, &params));
    }
    let f_top = (2 * kappa + 1) * m + 4 * mbar - 1;
    trails.push(ClosedTrail::new(zigzag(mbar, f_top), m, &params));
    trails.push(ClosedTrail::new(vec![0], nu, &params));
    Ok(BaseCycleSet::new(
        params,
        trails,
        Some(ConstructionPlan::TwoMod4 {
            mbar,
            t,
            s,
            d: 2 * m,
            w: n / 2,
            nu,
            kappa,
            u,
        }),
    ))
}

/// Dispatch on `(m, n)`: decide existence, then build, delegate, or
/// explain why nothing exists. `kappa_override` is only legal for the
/// branch that has a `kappa` parameter.
pub fn construct(
    params: &Params,
    kappa_override: Option<u64>,
) -> Result<Construction, ConstructError> {
    let (m, n) = (params.m(), params.n());
    if m % 2 != 0 {
        return Ok(Construction::UnsupportedOddM);
    }
    match feasibility::exists_cyclic_symmetric_even_m(params)
        .expect("m is even here")
    {
        Existence::NotExists(reason) => return Ok(Construction::Nonexistent(reason)),
        Existence::Exists => {}
    }
    if m == 2 {
        if kappa_override.is_some() {
            return Err(ConstructError::KappaNotApplicable);
        }
        let set = construct_bipartite(n).expect("params were already validated");
        return Ok(Construction::Built(set));
    }
    if n == 2 {
        if kappa_override.is_some() {
            return Err(ConstructError::KappaNotApplicable);
        }
        return Ok(Construction::DelegatedN2 {
            exists: feasibility::jm_condition(2 * m),
        });
    }
    if n % 4 == 0 {
        if kappa_override.is_some() {
            return Err(ConstructError::KappaNotApplicable);
        }
        let set = construct_n_div4(m, n).expect("params were already validated");
        return Ok(Construction::Built(set));
    }
    Ok(Construction::Built(construct_2mod4(m, n, kappa_override)?))
}
