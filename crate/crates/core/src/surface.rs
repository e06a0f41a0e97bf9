//! The Néron–Severi lattice of `X = E₁ × E₂`.
//!
//! Classes are stored in the basis `(F₁, F₂, ∇)` with `∇ = Δ − dF₁ − F₂`,
//! whose Gram matrix is `(0 1 0; 1 0 0; 0 0 −2d)`. The basis `(F₁, F₂, Δ)`
//! of fibres and isogeny graph only appears at the conversion functions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bqf::QuadForm;
use crate::error::{Error, Result};

/// The isogeny degree `d ≥ 1` that fixes the lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceContext {
    d: BigInt,
}

/// The class `a1·F₁ + a2·F₂ + a3·∇`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NSClass {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
}

impl NSClass {
    pub fn new(a1: impl Into<BigInt>, a2: impl Into<BigInt>, a3: impl Into<BigInt>) -> Self {
        NSClass {
            a1: a1.into(),
            a2: a2.into(),
            a3: a3.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn f1() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn f2() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn nabla() -> Self {
        Self::new(0, 0, 1)
    }

    /// The product principal polarization `F₁ + F₂`.
    pub fn product_polarization() -> Self {
        Self::new(1, 1, 0)
    }

    pub fn scale(&self, k: &BigInt) -> NSClass {
        NSClass {
            a1: &self.a1 * k,
            a2: &self.a2 * k,
            a3: &self.a3 * k,
        }
    }
}

impl std::ops::Add for &NSClass {
    type Output = NSClass;

    fn add(self, rhs: &NSClass) -> NSClass {
        NSClass {
            a1: &self.a1 + &rhs.a1,
            a2: &self.a2 + &rhs.a2,
            a3: &self.a3 + &rhs.a3,
        }
    }
}

impl std::ops::Sub for &NSClass {
    type Output = NSClass;

    fn sub(self, rhs: &NSClass) -> NSClass {
        NSClass {
            a1: &self.a1 - &rhs.a1,
            a2: &self.a2 - &rhs.a2,
            a3: &self.a3 - &rhs.a3,
        }
    }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a1, self.a2, self.a3)
    }
}

impl SurfaceContext {
    pub fn new(d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d < BigInt::one() {
            return Err(Error::InvalidDegree { d, min: 1 });
        }
        Ok(SurfaceContext { d })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// `L·M = a1·b2 + a2·b1 − 2d·a3·b3`.
    pub fn intersect(&self, l: &NSClass, m: &NSClass) -> BigInt {
        &l.a1 * &m.a2 + &l.a2 * &m.a1 - 2 * &self.d * &l.a3 * &m.a3
    }

    /// `L² = 2(a1·a2 − d·a3²)`.
    pub fn self_intersection(&self, l: &NSClass) -> BigInt {
        self.intersect(l, l)
    }

    /// `c1·F₁ + c2·F₂ + c3·Δ` rewritten in the `∇` basis.
    pub fn from_delta_basis(
        &self,
        c1: impl Into<BigInt>,
        c2: impl Into<BigInt>,
        c3: impl Into<BigInt>,
    ) -> NSClass {
        let (c1, c2, c3) = (c1.into(), c2.into(), c3.into());
        NSClass {
            a1: c1 + &self.d * &c3,
            a2: c2 + &c3,
            a3: c3,
        }
    }

    /// Inverse of [`from_delta_basis`](Self::from_delta_basis).
    pub fn to_delta_basis(&self, l: &NSClass) -> (BigInt, BigInt, BigInt) {
        (
            &l.a1 - &self.d * &l.a3,
            &l.a2 - &l.a3,
            l.a3.clone(),
        )
    }

    /// Class of the graph `Δ` of the isogeny: `dF₁ + F₂ + ∇`.
    pub fn delta_class(&self) -> NSClass {
        self.from_delta_basis(0, 0, 1)
    }

    /// Class of the graph of the dual isogeny: `F₁ + dF₂ + ∇`.
    pub fn delta_hat_class(&self) -> NSClass {
        NSClass {
            a1: BigInt::one(),
            a2: self.d.clone(),
            a3: BigInt::one(),
        }
    }

    pub fn is_ample(&self, l: &NSClass) -> bool {
        self.ampleness_failure(l).is_none()
    }

    /// The first ampleness inequality that fails, if any.
    pub fn ampleness_failure(&self, l: &NSClass) -> Option<&'static str> {
        if !l.a1.is_positive() {
            Some("a1 > 0")
        } else if !(&l.a1 * &l.a2 - &self.d * &l.a3 * &l.a3).is_positive() {
            Some("a1*a2 - d*a3^2 > 0")
        } else {
            None
        }
    }

    pub fn require_ample(&self, l: &NSClass) -> Result<()> {
        match self.ampleness_failure(l) {
            None => Ok(()),
            Some(inequality) => Err(Error::NotAmple {
                a1: l.a1.clone(),
                a2: l.a2.clone(),
                a3: l.a3.clone(),
                inequality,
            }),
        }
    }

    /// The form of `M_L = (a1 −d·a3; −d·a3 d·a2)`, i.e. `(a1, −2d·a3, d·a2)`.
    pub fn matrix_of(&self, l: &NSClass) -> QuadForm {
        QuadForm {
            a: l.a1.clone(),
            b: -2 * &self.d * &l.a3,
            c: &self.d * &l.a2,
        }
    }

    pub fn class_of_matrix(&self, q: &QuadForm) -> Result<NSClass> {
        let not_in_image = || Error::NotInImage {
            form: Box::new(q.clone()),
            d: self.d.clone(),
        };
        let (half_b, rem) = q.b.div_rem(&BigInt::from(2));
        if !rem.is_zero() {
            return Err(not_in_image());
        }
        let (neg_a3, rem_b) = half_b.div_rem(&self.d);
        let (a2, rem_c) = q.c.div_rem(&self.d);
        if !rem_b.is_zero() || !rem_c.is_zero() {
            return Err(not_in_image());
        }
        Ok(NSClass {
            a1: q.a.clone(),
            a2,
            a3: -neg_a3,
        })
    }

    /// `ε(L) = min{c2 + c3, c1 + d·c3, c1 + d·c2}` for `L = c1·F₁ + c2·F₂ +
    /// c3·Δ` with non-negative coefficients and `L` ample.
    pub fn eps_positive_cone(
        &self,
        c1: impl Into<BigInt>,
        c2: impl Into<BigInt>,
        c3: impl Into<BigInt>,
    ) -> Result<BigInt> {
        let (c1, c2, c3) = (c1.into(), c2.into(), c3.into());
        if c1.is_negative() || c2.is_negative() || c3.is_negative() {
            return Err(Error::NotInCone(c1, c2, c3));
        }
        let l = self.from_delta_basis(c1.clone(), c2.clone(), c3.clone());
        self.require_ample(&l)?;
        let candidates = [&c2 + &c3, &c1 + &self.d * &c3, &c1 + &self.d * &c2];
        Ok(candidates.into_iter().min().expect("three candidates"))
    }
}
