//! Existence and non-existence conditions for cyclic (symmetric)
//! Hamiltonian cycle systems of `K_{m x n}`.
//!
//! The positive side is constructive (see [`crate::constructor`]); the
//! negative side comes from counting cycle orbits of odd length, which
//! forces 2-adic conditions on the parameters.

use std::fmt;

use crate::zmod::{is_twice_odd_prime_power, two_adic_valuation, Params};

/// `true` iff every vertex degree `(m-1)n` is even, a necessary
/// condition for any decomposition into cycles.
pub fn degree_parity_ok(params: &Params) -> bool {
    (params.m() - 1) * params.n() % 2 == 0
}

/// Which 2-adic clause rules out a cyclic decomposition of `K_{m x n}`
/// into `ell`-cycles. The clauses are mutually exclusive, keyed on
/// `m mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionCase {
    /// `m = 0 (mod 4)` and `|ell|_2 = |m|_2 + 2|n|_2 - 1`.
    A,
    /// `m = 1 (mod 4)` and `|ell|_2 = |m-1|_2 + 2|n|_2 - 1`.
    B,
    /// `m = 2, 3 (mod 4)`, `n = 2 (mod 4)` and `ell != 0 (mod 4)`.
    C,
    /// `m = 2, 3 (mod 4)`, `n = 0 (mod 4)` and `|ell|_2 = 2|n|_2`.
    D,
}

impl fmt::Display for ObstructionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionCase::A => write!(f, "m=0 (mod 4) with |ell|_2 = |m|_2 + 2|n|_2 - 1"),
            ObstructionCase::B => write!(f, "m=1 (mod 4) with |ell|_2 = |m-1|_2 + 2|n|_2 - 1"),
            ObstructionCase::C => write!(f, "m=2,3 (mod 4), n=2 (mod 4), ell not divisible by 4"),
            ObstructionCase::D => write!(f, "m=2,3 (mod 4), n=0 (mod 4) with |ell|_2 = 2|n|_2"),
        }
    }
}

/// Error for operations that only make sense for even `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddN(pub u64);

impl fmt::Display for OddN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {} must be even here", self.0)
    }
}

impl std::error::Error for OddN {}

/// Decide whether the odd-orbit count rules out a cyclic `ell`-cycle
/// system of `K_{m x n}`. `None` means no obstruction from this test
/// (existence is not implied). Requires `m >= 2`, `ell >= 1`, `n` even.
pub fn ell_cycle_obstruction(m: u64, n: u64, ell: u64) -> Result<Option<ObstructionCase>, OddN> {
    assert!(m >= 2 && ell >= 1);
    if n % 2 != 0 {
        return Err(OddN(n));
    }
    let vl = two_adic_valuation(ell);
    let vn = two_adic_valuation(n);
    let case = match m % 4 {
        0 => (vl == two_adic_valuation(m) + 2 * vn - 1).then_some(ObstructionCase::A),
        1 => (vl == two_adic_valuation(m - 1) + 2 * vn - 1).then_some(ObstructionCase::B),
        _ if n % 4 == 2 => (ell % 4 != 0).then_some(ObstructionCase::C),
        _ => (vl == 2 * vn).then_some(ObstructionCase::D),
    };
    Ok(case)
}

/// Specialization to Hamiltonian cycles: no cyclic HCS of `K_{m x n}`
/// can exist when `m = 0, 3 (mod 4)` and `n = 2 (mod 4)`.
pub fn cyclic_hcs_obstructed(params: &Params) -> bool {
    matches!(params.m() % 4, 0 | 3) && params.n() % 4 == 2
}

/// Why no cyclic symmetric HCS exists for a given (even m) instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonExistenceReason {
    /// `n` odd makes every vertex degree `(m-1)n` odd.
    OddDegree,
    /// The odd-orbit count argument: `m = 0 (mod 4)` with `n = 2 (mod 4)`.
    CongruenceClash { m_mod4: u64, n_mod4: u64 },
}

impl fmt::Display for NonExistenceReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonExistenceReason::OddDegree => write!(f, "n odd (vertex degrees (m-1)n are odd)"),
            NonExistenceReason::CongruenceClash { m_mod4, n_mod4 } => {
                write!(f, "m\u{2261}{m_mod4} (mod 4) and n\u{2261}{n_mod4} (mod 4)")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Existence {
    Exists,
    NotExists(NonExistenceReason),
}

/// Error for the odd-`m` inputs the even-`m` theory does not cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnsupportedOddM(pub u64);

impl fmt::Display for UnsupportedOddM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m = {} odd is not covered by the even-m theory", self.0)
    }
}

impl std::error::Error for UnsupportedOddM {}

/// Full existence test for even `m`: a cyclic symmetric HCS of
/// `K_{m x n}` exists iff `n` is even and `n = 2 (mod 4)` forces
/// `m = 2 (mod 4)`.
pub fn exists_cyclic_symmetric_even_m(params: &Params) -> Result<Existence, UnsupportedOddM> {
    let (m, n) = (params.m(), params.n());
    if m % 2 != 0 {
        return Err(UnsupportedOddM(m));
    }
    if n % 2 != 0 {
        return Ok(Existence::NotExists(NonExistenceReason::OddDegree));
    }
    if n % 4 == 2 && m % 4 != 2 {
        return Ok(Existence::NotExists(NonExistenceReason::CongruenceClash {
            m_mod4: m % 4,
            n_mod4: n % 4,
        }));
    }
    Ok(Existence::Exists)
}

/// Existence condition for a cyclic symmetric HCS of the cocktail party
/// graph `K_v` minus a perfect matching (`v` even, `v >= 4`):
/// `v = 2, 4 (mod 8)` and `v` is not twice an odd prime power.
pub fn jm_condition(v: u64) -> bool {
    assert!(v >= 4 && v % 2 == 0, "defined for even v >= 4");
    matches!(v % 8, 2 | 4) && !is_twice_odd_prime_power(v)
}

/// Necessary condition for a symmetric (not necessarily cyclic) HCS:
/// `n = 2 (mod 4)` forces `m = 1, 2 (mod 4)`.
pub fn schroeder_condition(m: u64, n: u64) -> bool {
    n % 4 != 2 || matches!(m % 4, 1 | 2)
}

/// Parity that the number of odd-length cycle orbits must have in any
/// cyclic HCS of `K_{m x n}`: `m(m-1)n^2 / 8 mod 2`. Requires even `n`.
pub fn odd_orbit_parity_target(params: &Params) -> Result<u64, OddN> {
    let (m, n) = (params.m(), params.n());
    if n % 2 != 0 {
        return Err(OddN(n));
    }
    // For even n the product m(m-1)n^2 is divisible by 8 exactly.
    Ok(m * (m - 1) * n * n / 8 % 2)
}
