//! Small integer helpers shared by the lattice and form code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Non-negative gcd of two integers; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a.gcd(b).gcd(c)
}

/// Floor of the square root of a non-negative integer.
///
/// # Panics
///
/// Panics if `n` is negative.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer {n}");
    n.sqrt()
}

/// Exact perfect-square test. Negative integers are never squares.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Ceiling of the square root of a non-negative integer.
pub fn isqrt_ceil(n: &BigInt) -> BigInt {
    let r = isqrt(n);
    if &r * &r == *n {
        r
    } else {
        r + 1
    }
}

/// Positive divisors of `n > 0`, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive(), "divisors of non-positive integer {n}");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= *n {
        if (n % &k).is_zero() {
            let q = n / &k;
            if q != k {
                large.push(q);
            }
            small.push(k.clone());
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Ceiling division for a positive divisor.
pub fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    -((-a).div_floor(b))
}
