//! Integral binary quadratic forms `Ax² + Bxy + Cy²`.
//!
//! Forms are stored with the full middle coefficient `B`, so forms with odd
//! `B` are first-class. Reduction is classical Gauss reduction and keeps
//! track of the unimodular change of variables it performed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{div_ceil, gcd, isqrt};

/// The binary quadratic form `a·x² + b·xy + c·y²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// A 2×2 integer matrix `(α β; γ δ)` with determinant ±1, acting on column
/// vectors: `(x, y) ↦ (αx + βy, γx + δy)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    alpha: BigInt,
    beta: BigInt,
    gamma: BigInt,
    delta: BigInt,
}

/// Output of [`QuadForm::reduce`]: `form(v) = original(transform · v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub form: QuadForm,
    pub transform: UnimodularMap,
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        QuadForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// `b² − 4ac`.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - 4 * &self.a * &self.c
    }

    /// `(4ac − b²) / 4`, the determinant of the symmetric matrix
    /// `(a b/2; b/2 c)`, kept as the integer numerator `4ac − b²`.
    pub fn det_times_four(&self) -> BigInt {
        -self.discriminant()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    fn require_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite {
                a: self.a.clone(),
                b: self.b.clone(),
                c: self.c.clone(),
            })
        }
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` whenever `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> Result<bool> {
        self.require_positive_definite()?;
        Ok(self.satisfies_reduction_conditions())
    }

    fn satisfies_reduction_conditions(&self) -> bool {
        let abs_b = self.b.abs();
        if abs_b > self.a || self.a > self.c {
            return false;
        }
        if abs_b == self.a || self.a == self.c {
            return !self.b.is_negative();
        }
        true
    }

    /// The form `v ↦ self(t · v)`.
    pub fn compose(&self, t: &UnimodularMap) -> QuadForm {
        let UnimodularMap {
            alpha,
            beta,
            gamma,
            delta,
        } = t;
        QuadForm {
            a: self.evaluate(alpha, gamma),
            b: 2 * &self.a * alpha * beta
                + &self.b * (alpha * delta + beta * gamma)
                + 2 * &self.c * gamma * delta,
            c: self.evaluate(beta, delta),
        }
    }

    /// Gauss reduction to the unique properly equivalent reduced form.
    ///
    /// The returned transform has determinant +1.
    pub fn reduce(&self) -> Result<Reduction> {
        self.require_positive_definite()?;
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        let mut t = UnimodularMap::identity();
        loop {
            // Translate b into (-a, a].
            let k = (&a - &b).div_floor(&(2 * &a));
            if !k.is_zero() {
                c = &a * &k * &k + &b * &k + &c;
                b += 2 * &a * &k;
                t = t.mul(&UnimodularMap::translation(k));
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                t = t.mul(&UnimodularMap::rotation());
            } else {
                break;
            }
        }
        if a == c && b.is_negative() {
            b = -b;
            t = t.mul(&UnimodularMap::rotation());
        }
        let form = QuadForm { a, b, c };
        debug_assert!(form.satisfies_reduction_conditions());
        debug_assert_eq!(self.compose(&t), form);
        Ok(Reduction { form, transform: t })
    }

    /// Reduction under the full group `GL₂(ℤ)`: the unique equivalent form
    /// with `0 ≤ b ≤ a ≤ c`. The transform may have determinant −1.
    pub fn reduce_gl(&self) -> Result<Reduction> {
        let Reduction {
            mut form,
            mut transform,
        } = self.reduce()?;
        if form.b.is_negative() {
            form.b = -form.b;
            transform = transform.mul(&UnimodularMap::reflection());
        }
        debug_assert_eq!(self.compose(&transform), form);
        Ok(Reduction { form, transform })
    }

    /// All coprime `(x, y)` with `self(x, y) ≤ bound`, one per antipodal
    /// pair, represented with `x > 0` or `x = 0, y > 0`, sorted
    /// lexicographically.
    pub fn enumerate_coprime_below(&self, bound: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
        self.require_positive_definite()?;
        let mut out = Vec::new();
        if bound.is_negative() {
            return Ok(out);
        }
        // 4a·Q(x, y) = (2ax + by)² + D·y² with D = 4ac − b² > 0.
        let disc = self.det_times_four();
        let four_a_bound = 4 * &self.a * bound;
        let y_max = isqrt(&(&four_a_bound / &disc));
        let two_a = 2 * &self.a;
        let mut y = -y_max.clone();
        while y <= y_max {
            let slack: BigInt = &four_a_bound - &disc * &y * &y;
            if !slack.is_negative() {
                let s = isqrt(&slack);
                let by = &self.b * &y;
                let mut x = div_ceil(&(-&s - &by), &two_a);
                let x_hi = (&s - &by).div_floor(&two_a);
                while x <= x_hi {
                    let canonical = x.is_positive() || (x.is_zero() && y.is_positive());
                    if canonical && gcd(&x, &y).is_one() {
                        debug_assert!(self.evaluate(&x, &y) <= *bound);
                        out.push((x.clone(), y.clone()));
                    }
                    x += 1;
                }
            }
            y += 1;
        }
        out.sort();
        Ok(out)
    }

    /// The two smallest values of a reduced form on coprime pairs: `a` at
    /// `(1, 0)` and `c` at `(0, 1)`.
    pub fn minimum_coprime_values(&self) -> Result<(BigInt, BigInt)> {
        if !self.is_reduced()? {
            return Err(Error::NotReduced {
                a: self.a.clone(),
                b: self.b.clone(),
                c: self.c.clone(),
            });
        }
        Ok((self.a.clone(), self.c.clone()))
    }

    pub fn scale(&self, k: &BigInt) -> QuadForm {
        QuadForm {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
        }
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl UnimodularMap {
    pub fn new(
        alpha: impl Into<BigInt>,
        beta: impl Into<BigInt>,
        gamma: impl Into<BigInt>,
        delta: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = UnimodularMap {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
            delta: delta.into(),
        };
        let det = m.det();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular(det))
        }
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    /// `(1 k; 0 1)`: `(x, y) ↦ (x + ky, y)`.
    pub fn translation(k: BigInt) -> Self {
        UnimodularMap {
            alpha: BigInt::one(),
            beta: k,
            gamma: BigInt::zero(),
            delta: BigInt::one(),
        }
    }

    /// `(0 −1; 1 0)`, sending `(a, b, c)` to `(c, −b, a)`.
    pub fn rotation() -> Self {
        Self::raw(0, -1, 1, 0)
    }

    /// `(−1 0; 0 1)`, sending `(a, b, c)` to `(a, −b, c)`.
    pub fn reflection() -> Self {
        Self::raw(-1, 0, 0, 1)
    }

    fn raw(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        UnimodularMap {
            alpha: alpha.into(),
            beta: beta.into(),
            gamma: gamma.into(),
            delta: delta.into(),
        }
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }
    pub fn beta(&self) -> &BigInt {
        &self.beta
    }
    pub fn gamma(&self) -> &BigInt {
        &self.gamma
    }
    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn det(&self) -> BigInt {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    pub fn is_proper(&self) -> bool {
        self.det().is_one()
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            alpha: &self.alpha * &rhs.alpha + &self.beta * &rhs.gamma,
            beta: &self.alpha * &rhs.beta + &self.beta * &rhs.delta,
            gamma: &self.gamma * &rhs.alpha + &self.delta * &rhs.gamma,
            delta: &self.gamma * &rhs.beta + &self.delta * &rhs.delta,
        }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let det = self.det();
        UnimodularMap {
            alpha: &self.delta * &det,
            beta: -&self.beta * &det,
            gamma: -&self.gamma * &det,
            delta: &self.alpha * &det,
        }
    }

    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (
            &self.alpha * x + &self.beta * y,
            &self.gamma * x + &self.delta * y,
        )
    }
}

impl fmt::Display for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.alpha, self.beta, self.gamma, self.delta
        )
    }
}
