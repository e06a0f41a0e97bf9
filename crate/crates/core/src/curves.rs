//! Elliptic curves on `X`.
//!
//! Without complex multiplication every elliptic curve on `X` is a translate
//! of some `N_{a,b} = {(a·x, b·φ(x)) : x ∈ E₁}`, so curves are indexed by
//! integer pairs `(a, b) ≠ (0, 0)` up to scaling.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, gcd3};
use crate::surface::{NSClass, SurfaceContext};

/// The curve `N_{a,b}` with `(a, b)` coprime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveClass {
    a: BigInt,
    b: BigInt,
    deg_sigma: BigInt,
}

impl CurveClass {
    /// Builds `N_{a,b}`, dividing out `gcd(a, b)` first. The sign of the pair
    /// is normalised so that `a > 0`, or `a = 0` and `b > 0`.
    pub fn new(ctx: &SurfaceContext, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (mut a, mut b) = (a.into(), b.into());
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroPair);
        }
        let g = gcd(&a, &b);
        a /= &g;
        b /= &g;
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        let deg_sigma = gcd(&a, ctx.d());
        Ok(CurveClass { a, b, deg_sigma })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// Degree of `E₁ → N_{a,b}, x ↦ (ax, bφ(x))`, equal to `gcd(a, d)`.
    pub fn deg_sigma(&self) -> &BigInt {
        &self.deg_sigma
    }

    pub fn pair(&self) -> (BigInt, BigInt) {
        (self.a.clone(), self.b.clone())
    }

    pub fn ns_class(&self, ctx: &SurfaceContext) -> NSClass {
        numerical_class(ctx, &self.a, &self.b, &self.deg_sigma)
    }
}

fn numerical_class(ctx: &SurfaceContext, a: &BigInt, b: &BigInt, deg: &BigInt) -> NSClass {
    let d = ctx.d();
    let parts = [b * b * d, a * a, a * b];
    let [a1, a2, a3] = parts.map(|p| {
        let (q, r) = p.div_rem(deg);
        debug_assert!(r.is_zero());
        q
    });
    NSClass { a1, a2, a3 }
}

/// `gcd(a², b²·d, a·b)`.
pub fn sigma_degree(ctx: &SurfaceContext, a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPair);
    }
    Ok(gcd3(&(a * a), &(b * b * ctx.d()), &(a * b)))
}

/// `(b²d·F₁ + a²·F₂ + ab·∇) / gcd(a², b²d, ab)`.
pub fn curve_class(ctx: &SurfaceContext, a: &BigInt, b: &BigInt) -> Result<NSClass> {
    let deg = sigma_degree(ctx, a, b)?;
    Ok(numerical_class(ctx, a, b, &deg))
}

/// `L·N_{a,b} = M_L(a, b) / gcd(a, d)` for coprime `(a, b)`.
pub fn intersect_bundle(ctx: &SurfaceContext, l: &NSClass, a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPair);
    }
    if !gcd(a, b).is_one() {
        return Err(Error::NotCoprime(a.clone(), b.clone()));
    }
    let value = ctx.matrix_of(l).evaluate(a, b);
    let (q, r) = value.div_rem(&gcd(a, ctx.d()));
    debug_assert!(r.is_zero());
    Ok(q)
}
