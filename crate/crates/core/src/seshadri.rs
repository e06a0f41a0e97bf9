//! Minimal intersection numbers with elliptic curves and what they say
//! about Seshadri constants.
//!
//! `ε*(L) = min{L·N : N ⊂ X elliptic}` is computed by reducing the form of
//! `M_L` and scanning the finitely many coprime pairs whose reduced value is
//! at most `d·A`: any other pair has `L·N ≥ R(p)/d > A ≥ ε*(L)`.
//!
//! All comparisons against `√(L²)` are done on squares.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bqf::{QuadForm, UnimodularMap};
use crate::curves::curve_class;
use crate::error::{Error, Result};
use crate::numtheory::{gcd, isqrt};
pub use crate::numtheory::is_perfect_square;
use crate::surface::{NSClass, SurfaceContext};

/// `ε*(L)` together with a coprime pair `(a, b)` such that `L·N_{a,b}`
/// attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsStar {
    pub value: BigInt,
    pub witness: (BigInt, BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeshadriValue {
    /// `ε(L)` is known exactly.
    Exact(BigRational),
    /// `lower ≤ ε(L) ≤ √upper_squared`. The lower end is a display floor,
    /// not a proven bound for the particular bundle.
    Bounded {
        lower: BigRational,
        upper_squared: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeshadriReport {
    pub class: NSClass,
    pub eps_star: BigInt,
    pub witness: (BigInt, BigInt),
    pub l_squared: BigInt,
    pub sqrt_is_integer: bool,
    pub has_submaximal: bool,
    pub eps: SeshadriValue,
    /// Set when `eps` was concluded from a weakly submaximal curve for this
    /// single bundle (`ε(L) = ε*(L)` read per bundle).
    pub per_bundle_reading: bool,
}

/// Lower end shown for bundles without a weakly submaximal elliptic curve:
/// the Seshadri constant of an irreducible principal polarization.
pub fn display_floor() -> BigRational {
    BigRational::new(BigInt::from(4), BigInt::from(3))
}

fn canonical(a: BigInt, b: BigInt) -> (BigInt, BigInt) {
    if a.is_negative() || (a.is_zero() && b.is_negative()) {
        (-a, -b)
    } else {
        (a, b)
    }
}

/// Ties between pairs attaining the minimum go to the smallest `|b|`, then
/// the smallest `a`, then the smallest `b` (canonical representatives).
fn witness_key(pair: &(BigInt, BigInt)) -> (BigInt, BigInt, BigInt) {
    (pair.1.abs(), pair.0.clone(), pair.1.clone())
}

fn better(candidate: &EpsStar, current: &Option<EpsStar>) -> bool {
    match current {
        None => true,
        Some(cur) => match candidate.value.cmp(&cur.value) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => witness_key(&candidate.witness) < witness_key(&cur.witness),
        },
    }
}

/// `ε*(L)` via Gauss reduction of `M_L`.
pub fn eps_star(ctx: &SurfaceContext, l: &NSClass) -> Result<EpsStar> {
    ctx.require_ample(l)?;
    let d = ctx.d();
    let reduction = ctx.matrix_of(l).reduce()?;
    let reduced = &reduction.form;
    let transform: &UnimodularMap = &reduction.transform;
    let bound = d * &reduced.a;
    let mut best: Option<EpsStar> = None;
    for (x, y) in reduced.enumerate_coprime_below(&bound)? {
        let (a, b) = transform.apply(&x, &y);
        let (value, rem) = reduced.evaluate(&x, &y).div_rem(&gcd(&a, d));
        debug_assert!(rem.is_zero());
        let candidate = EpsStar {
            value,
            witness: canonical(a, b),
        };
        if better(&candidate, &best) {
            best = Some(candidate);
        }
    }
    // (1, 0) of the reduced form is always within the bound.
    Ok(best.expect("enumeration contains (1, 0)"))
}

/// `ε*(L)` by scanning every coprime pair with `|a|, |b| ≤ radius` and
/// intersecting `L` with the numerical class of `N_{a,b}`.
///
/// Fails with [`Error::RadiusInsufficient`] unless the box provably contains
/// every pair that could beat the best value found: a pair with
/// `L·N ≤ best` has `M_L(a, b) ≤ d·best`, which confines `b² ≤ 4A·d·best/D`
/// and `a² ≤ 4C·d·best/D` for `M_L = (A, B, C)` and `D = 4AC − B²`.
pub fn eps_star_bruteforce(ctx: &SurfaceContext, l: &NSClass, radius: &BigInt) -> Result<BigInt> {
    ctx.require_ample(l)?;
    if radius.is_negative() {
        return Err(Error::NegativeBound(radius.clone()));
    }
    let mut best: Option<BigInt> = None;
    let mut a = BigInt::zero();
    while &a <= radius {
        let mut b = -radius.clone();
        while &b <= radius {
            let canonical = a.is_positive() || (a.is_zero() && b.is_positive());
            if canonical && gcd(&a, &b).is_one() {
                let n = curve_class(ctx, &a, &b)?;
                let value = ctx.intersect(l, &n);
                if best.as_ref().is_none_or(|cur| value < *cur) {
                    best = Some(value);
                }
            }
            b += 1;
        }
        a += 1;
    }
    // Without any pair in the box, L·N_{1,0} = a1 is the best known bound.
    let upper = best.clone().unwrap_or_else(|| l.a1.clone());
    let m = ctx.matrix_of(l);
    let largest = std::cmp::max(&m.a, &m.c);
    let required = isqrt(&(4 * largest * ctx.d() * &upper / m.det_times_four()));
    match best {
        Some(value) if *radius >= required => Ok(value),
        _ => Err(Error::RadiusInsufficient {
            radius: radius.clone(),
            required,
        }),
    }
}

/// Whether some elliptic curve `N` has `L·N ≤ √(L²)`.
pub fn has_weakly_submaximal(ctx: &SurfaceContext, l: &NSClass) -> Result<bool> {
    let e = eps_star(ctx, l)?;
    Ok(&e.value * &e.value <= ctx.self_intersection(l))
}

pub fn seshadri_report(ctx: &SurfaceContext, l: &NSClass) -> Result<SeshadriReport> {
    let EpsStar { value, witness } = eps_star(ctx, l)?;
    let l_squared = ctx.self_intersection(l);
    let has_submaximal = &value * &value <= l_squared;
    let eps = if has_submaximal {
        SeshadriValue::Exact(BigRational::from_integer(value.clone()))
    } else {
        SeshadriValue::Bounded {
            lower: display_floor(),
            upper_squared: l_squared.clone(),
        }
    };
    Ok(SeshadriReport {
        class: l.clone(),
        eps_star: value,
        witness,
        sqrt_is_integer: is_perfect_square(&l_squared),
        l_squared,
        has_submaximal,
        eps,
        per_bundle_reading: has_submaximal,
    })
}

/// `⌈d/2⌉`.
fn half_ceil(d: &BigInt) -> BigInt {
    d.div_ceil(&BigInt::from(2))
}

/// The bundle `4d·F₁ + (4c² − 2c + 2d)·F₂ + (4c − 1)·∇` with `c = ⌈d/2⌉`,
/// defined for `d ≥ 3`. It is ample with `L² = 16d² − 2d` and has no weakly
/// submaximal elliptic curve.
///
/// Its matrix is `2d·(2, 1, d)` pulled back along `(1 −c; 0 1)`, so that
/// `M_L(x, y) = 2d·Q(x + cy, y)` and the curve `N_{x,y}` is weighed by
/// `gcd(x, d)` with `x = a + c·b` in the coordinates `(a, b)` of `Q`. This is
/// the orientation certified by [`no_submaximal_certificate`]. The opposite
/// one, `(4d, 4c² + 2c + 2d, −(4c + 1))`, has `L·N_{3,−1} = 8 ≤ √138` when
/// `d = 3`.
pub fn counterexample_bundle(ctx: &SurfaceContext) -> Result<NSClass> {
    let d = ctx.d();
    if *d < BigInt::from(3) {
        return Err(Error::InvalidDegree {
            d: d.clone(),
            min: 3,
        });
    }
    let c = half_ceil(d);
    Ok(NSClass {
        a1: 4 * d,
        a2: 4 * &c * &c - 2 * &c + 2 * d,
        a3: &c * 4u32 - 1u32,
    })
}

/// One coprime pair checked by [`no_submaximal_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedPair {
    pub pair: (BigInt, BigInt),
    /// `Q(a, b)` for `Q = (2, 1, d)`.
    pub value: BigInt,
    /// `gcd(a + b·⌈d/2⌉, d)`.
    pub divisor: BigInt,
}

impl CheckedPair {
    /// `value/divisor ≥ 2`.
    pub fn at_least_two(&self) -> bool {
        self.value >= 2 * &self.divisor
    }
}

/// Exhaustive check that the form `Q = (2, 1, d)` twisted by
/// `S = (1 ⌈d/2⌉; 0 1)` admits no coprime pair with
/// `Q(a, b)/gcd(a + b⌈d/2⌉, d) ≤ √((8d − 1)/(2d))`.
///
/// Pairs with `Q(a, b) ≥ 2d` give a quotient of at least 2, which exceeds the
/// bound since `(8d − 1)/(2d) < 4`; every other pair is listed in
/// `checked`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoSubmaximalCertificate {
    pub d: BigInt,
    pub form: QuadForm,
    pub shift: BigInt,
    pub checked: Vec<CheckedPair>,
    pub holds: bool,
}

impl NoSubmaximalCertificate {
    /// Pairs other than `(1, 0)` with `Q(a, b) < 2d`.
    pub fn exceptional_pairs(&self) -> Vec<(BigInt, BigInt)> {
        self.checked
            .iter()
            .map(|c| c.pair.clone())
            .filter(|p| !(p.0.is_one() && p.1.is_zero()))
            .collect()
    }
}

pub fn no_submaximal_certificate(d: &BigInt) -> Result<NoSubmaximalCertificate> {
    if *d < BigInt::from(3) {
        return Err(Error::InvalidDegree {
            d: d.clone(),
            min: 3,
        });
    }
    let form = QuadForm::new(2, 1, d.clone());
    let shift = half_ceil(d);
    let below = form.enumerate_coprime_below(&(2 * d - 1))?;
    let checked: Vec<CheckedPair> = below
        .into_iter()
        .map(|(a, b)| CheckedPair {
            value: form.evaluate(&a, &b),
            divisor: gcd(&(&a + &b * &shift), d),
            pair: (a, b),
        })
        .collect();
    // (value/divisor)² > (8d − 1)/(2d)  ⇔  2d·value² > (8d − 1)·divisor²
    let holds = checked.iter().all(|c| {
        2 * d * &c.value * &c.value > (8 * d - 1) * &c.divisor * &c.divisor
    });
    Ok(NoSubmaximalCertificate {
        d: d.clone(),
        form,
        shift,
        checked,
        holds,
    })
}

pub fn verify_no_submaximal_form(d: &BigInt) -> Result<bool> {
    Ok(no_submaximal_certificate(d)?.holds)
}

/// Summary of all ample classes with `|a1|, |a2|, |a3| ≤ bound`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Survey {
    pub bound: BigInt,
    pub ample_classes: u64,
    pub with_submaximal: u64,
    pub without_submaximal: u64,
    pub eps_star_histogram: BTreeMap<BigInt, u64>,
    /// Classes without a weakly submaximal curve, lexicographic.
    pub no_submaximal_classes: Vec<NSClass>,
}

impl Survey {
    fn absorb(&mut self, other: Survey) {
        self.ample_classes += other.ample_classes;
        self.with_submaximal += other.with_submaximal;
        self.without_submaximal += other.without_submaximal;
        for (k, v) in other.eps_star_histogram {
            *self.eps_star_histogram.entry(k).or_default() += v;
        }
        self.no_submaximal_classes.extend(other.no_submaximal_classes);
    }
}

fn survey_slice(ctx: &SurfaceContext, a1: &BigInt, bound: &BigInt) -> Result<Survey> {
    let mut part = Survey::default();
    // Ampleness forces a2 > 0 once a1 > 0.
    let mut a2 = BigInt::one();
    while &a2 <= bound {
        let mut a3 = -bound.clone();
        while &a3 <= bound {
            let l = NSClass::new(a1.clone(), a2.clone(), a3.clone());
            if ctx.is_ample(&l) {
                let e = eps_star(ctx, &l)?;
                part.ample_classes += 1;
                if &e.value * &e.value <= ctx.self_intersection(&l) {
                    part.with_submaximal += 1;
                } else {
                    part.without_submaximal += 1;
                    part.no_submaximal_classes.push(l);
                }
                *part.eps_star_histogram.entry(e.value).or_default() += 1;
            }
            a3 += 1;
        }
        a2 += 1;
    }
    Ok(part)
}

/// Scans every ample class in the box `|a_i| ≤ bound`. Slices are evaluated
/// in parallel and merged in lexicographic order, so the result does not
/// depend on scheduling.
pub fn survey(ctx: &SurfaceContext, bound: &BigInt) -> Result<Survey> {
    if bound.is_negative() {
        return Err(Error::NegativeBound(bound.clone()));
    }
    let mut a1_values = Vec::new();
    let mut a1 = BigInt::one();
    while &a1 <= bound {
        a1_values.push(a1.clone());
        a1 += 1;
    }
    let parts: Vec<Survey> = a1_values
        .par_iter()
        .map(|a1| survey_slice(ctx, a1, bound))
        .collect::<Result<_>>()?;
    let mut total = Survey {
        bound: bound.clone(),
        ..Survey::default()
    };
    for part in parts {
        total.absorb(part);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegralityVerdict {
    /// `d ≤ 2`: every ample class in the sampled box has a weakly
    /// submaximal elliptic curve (`failures` lists any that do not).
    AllInteger {
        sample_bound: BigInt,
        classes_checked: u64,
        failures: Vec<NSClass>,
    },
    /// `d ≥ 3`: the witness bundle has no weakly submaximal elliptic curve
    /// and `L²` is not a square, so some Seshadri constant on `X` is not an
    /// integer. The witness itself need not be that bundle.
    NonIntegerExists {
        witness: NSClass,
        l_squared: BigInt,
        eps_star: EpsStar,
        certificate: Box<NoSubmaximalCertificate>,
        l_squared_is_square: bool,
    },
}

pub fn integrality_verdict(ctx: &SurfaceContext, sample_bound: &BigInt) -> Result<IntegralityVerdict> {
    if *ctx.d() <= BigInt::from(2) {
        let s = survey(ctx, sample_bound)?;
        return Ok(IntegralityVerdict::AllInteger {
            sample_bound: sample_bound.clone(),
            classes_checked: s.ample_classes,
            failures: s.no_submaximal_classes,
        });
    }
    let witness = counterexample_bundle(ctx)?;
    let l_squared = ctx.self_intersection(&witness);
    Ok(IntegralityVerdict::NonIntegerExists {
        eps_star: eps_star(ctx, &witness)?,
        certificate: Box::new(no_submaximal_certificate(ctx.d())?),
        l_squared_is_square: is_perfect_square(&l_squared),
        l_squared,
        witness,
    })
}
