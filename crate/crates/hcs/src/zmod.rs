//! Arithmetic in `Z_M` and the part structure of `K_{m x n}`.

use std::fmt;

/// Hard cap on the group order. Everything fits in `u64` with slack
/// (`M^2 < 2^62`), so intermediate products never overflow.
pub const MAX_ORDER: u64 = 1 << 31;

/// Graph parameters: `m` parts of size `n`, vertex set `Z_{mn}`.
///
/// Vertex `v` lies in part `v mod m`, so the parts are the cosets of the
/// subgroup `<m>` of order `n`. All residue values handled through this
/// type are kept reduced to `0..M-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    m: u64,
    n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamsError {
    /// Fewer than two parts, or part size zero.
    TooSmall { m: u64, n: u64 },
    /// `m * n` exceeds [`MAX_ORDER`].
    TooLarge { m: u64, n: u64 },
}

impl fmt::Display for ParamsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamsError::TooSmall { m, n } => {
                write!(f, "need m >= 2 and n >= 1, got m={m} n={n}")
            }
            ParamsError::TooLarge { m, n } => {
                write!(f, "order m*n = {}*{} exceeds cap {}", m, n, MAX_ORDER)
            }
        }
    }
}

impl std::error::Error for ParamsError {}

impl Params {
    pub fn new(m: u64, n: u64) -> Result<Params, ParamsError> {
        if m < 2 || n < 1 {
            return Err(ParamsError::TooSmall { m, n });
        }
        if m.checked_mul(n).is_none_or(|order| order > MAX_ORDER) {
            return Err(ParamsError::TooLarge { m, n });
        }
        Ok(Params { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Group order `M = m * n`, also the number of vertices.
    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: u64) -> u64 {
        debug_assert!(v < self.order());
        v % self.m
    }

    /// `true` iff `u` and `v` lie in the same part, i.e. `u - v` is a
    /// multiple of `m`.
    pub fn same_part(&self, u: u64, v: u64) -> bool {
        self.part_of(u) == self.part_of(v)
    }

    pub fn reduce(&self, v: u64) -> u64 {
        v % self.order()
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.order()
    }

    /// `a - b` wrapped into `0..M-1`.
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let v = self.order();
        (a % v + v - b % v) % v
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Order of `x` in the additive group `Z_modulus`: `modulus / gcd(x, modulus)`.
pub fn order_of(x: u64, modulus: u64) -> u64 {
    assert!(modulus > 0, "modulus must be positive");
    modulus / gcd(x % modulus, modulus)
}

/// Exponent of the largest power of two dividing `x`.
///
/// Panics on `x = 0`, where the valuation is undefined.
pub fn two_adic_valuation(x: u64) -> u32 {
    assert!(x != 0, "2-adic valuation of 0 is undefined");
    x.trailing_zeros()
}

/// `true` iff `v = 2 * p^e` for an odd prime `p` and `e >= 1`.
pub fn is_twice_odd_prime_power(v: u64) -> bool {
    if v % 2 != 0 {
        return false;
    }
    let mut h = v / 2;
    if h < 3 || h % 2 == 0 {
        return false;
    }
    // h is odd and >= 3; check it is p^e by dividing out its smallest
    // prime factor completely.
    let mut p = 3;
    while p * p <= h {
        if h % p == 0 {
            while h % p == 0 {
                h /= p;
            }
            return h == 1;
        }
        p += 2;
    }
    // h itself is prime.
    true
}
