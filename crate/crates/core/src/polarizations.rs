//! Principal polarizations on `X`.
//!
//! Isomorphism classes of principal polarizations correspond to the
//! *principally reduced* matrices `(A B; B C)` with `0 ≤ 2B ≤ A ≤ C`,
//! `gcd(A, B, C) = 1` and `AC − B² = d`. A class is reducible (a sum of two
//! elliptic curves meeting once) exactly when `B = 0`.
//!
//! [`PPClass`] stores the matrix entries; the quadratic form used by
//! [`crate::bqf`] is `(A, 2B, C)`. [`PPClass::to_quad_form`] and
//! [`PPClass::from_quad_form`] are the only places that convert between the
//! two.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bqf::QuadForm;
use crate::curves::{curve_class, intersect_bundle, CurveClass};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd3, isqrt};
use crate::surface::{NSClass, SurfaceContext};

/// A principally reduced matrix `(A B; B C)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PPClass {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolarizationType {
    Reducible,
    Irreducible,
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolarizationType::Reducible => "reducible",
            PolarizationType::Irreducible => "irreducible",
        })
    }
}

impl PPClass {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let reason = if b.is_negative() || 2 * &b > a || a > c {
            Some("ordering 0 <= 2B <= A <= C violated")
        } else if !gcd3(&a, &b, &c).is_one() {
            Some("gcd(A, B, C) != 1")
        } else if !(&a * &c - &b * &b).is_positive() {
            Some("determinant AC - B^2 must be positive")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidPPClass { a, b, c, reason }),
            None => Ok(PPClass { a, b, c }),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// `AC − B²`, the isogeny degree this class belongs to.
    pub fn determinant(&self) -> BigInt {
        &self.a * &self.c - &self.b * &self.b
    }

    /// The form `(A, 2B, C)`.
    pub fn to_quad_form(&self) -> QuadForm {
        QuadForm::new(self.a.clone(), 2 * &self.b, self.c.clone())
    }

    /// Inverse of [`to_quad_form`](Self::to_quad_form); the middle
    /// coefficient must be even.
    pub fn from_quad_form(q: &QuadForm) -> Result<Self> {
        let (half, rem) = q.b.div_rem(&BigInt::from(2));
        if !rem.is_zero() {
            return Err(Error::InvalidPPClass {
                a: q.a.clone(),
                b: q.b.clone(),
                c: q.c.clone(),
                reason: "odd middle coefficient",
            });
        }
        PPClass::new(q.a.clone(), half, q.c.clone())
    }
}

impl fmt::Display for PPClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn require_degree(d: &BigInt) -> Result<()> {
    if *d < BigInt::one() {
        return Err(Error::InvalidDegree {
            d: d.clone(),
            min: 1,
        });
    }
    Ok(())
}

/// Every principally reduced `(A, B, C)` of determinant `d`, lexicographic.
///
/// `A ≥ 2B` and `C ≥ A` give `d = AC − B² ≥ 3B²`, so `B ≤ ⌊√(d/3)⌋`; for each
/// `B` the candidates are the factorisations `d + B² = A·C` with `A ≤ C`.
pub fn enumerate_pp_forms(d: &BigInt) -> Result<Vec<PPClass>> {
    require_degree(d)?;
    let b_max = isqrt(&(d / 3));
    let mut out = Vec::new();
    let mut b = BigInt::zero();
    while b <= b_max {
        let n = d + &b * &b;
        let mut a = std::cmp::max(2 * &b, BigInt::one());
        while &a * &a <= n {
            let (c, rem) = n.div_rem(&a);
            if rem.is_zero() && gcd3(&a, &b, &c).is_one() {
                out.push(PPClass {
                    a: a.clone(),
                    b: b.clone(),
                    c,
                });
            }
            a += 1;
        }
        b += 1;
    }
    out.sort();
    Ok(out)
}

pub fn classify(p: &PPClass) -> PolarizationType {
    if p.b.is_zero() {
        PolarizationType::Reducible
    } else {
        PolarizationType::Irreducible
    }
}

pub fn exists_irreducible(d: &BigInt) -> Result<bool> {
    Ok(enumerate_pp_forms(d)?
        .iter()
        .any(|p| classify(p) == PolarizationType::Irreducible))
}

/// Grube's criterion: `n` is idoneal iff for every `1 ≤ B ≤ ⌊√(n/3)⌋` and
/// every `n + B² = A·C` with `2B ≤ A ≤ C` and `gcd(A, 2B, C) = 1`, either
/// `A = C` or `A = 2B`.
pub fn is_idoneal(n: &BigInt) -> Result<bool> {
    require_degree(n)?;
    let b_max = isqrt(&(n / 3));
    let mut b = BigInt::one();
    while b <= b_max {
        let m = n + &b * &b;
        let two_b: BigInt = 2 * &b;
        let mut a = two_b.clone();
        while &a * &a <= m {
            let (c, rem) = m.div_rem(&a);
            if rem.is_zero() && gcd3(&a, &two_b, &c).is_one() && a != c && a != two_b {
                return Ok(false);
            }
            a += 1;
        }
        b += 1;
    }
    Ok(true)
}

/// `d = 1`, or `d` an even idoneal number not divisible by 8.
pub fn kani_predicate(d: &BigInt) -> Result<bool> {
    if d.is_one() {
        return Ok(true);
    }
    Ok(is_idoneal(d)? && d.is_even() && !(d % 8u32).is_zero())
}

/// Scan-limited list of `d` for which `X` has no irreducible principal
/// polarization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaniList {
    pub limit: BigInt,
    pub values: Vec<BigInt>,
    pub caveat: &'static str,
}

pub const KANI_CAVEAT: &str = "complete only up to the scan limit: at most one further \
    value d* > 462 is possible, and its existence is tied to an open question about \
    idoneal numbers";

pub fn kani_list(limit: &BigInt) -> Result<KaniList> {
    let mut values = Vec::new();
    let mut d = BigInt::one();
    while &d <= limit {
        if kani_predicate(&d)? {
            values.push(d.clone());
        }
        d += 1;
    }
    Ok(KaniList {
        limit: limit.clone(),
        values,
        caveat: KANI_CAVEAT,
    })
}

/// All idoneal numbers `≤ limit`, ascending.
pub fn idoneal_numbers(limit: &BigInt) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut n = BigInt::one();
    while &n <= limit {
        if is_idoneal(&n)? {
            out.push(n.clone());
        }
        n += 1;
    }
    Ok(out)
}

/// Principal polarizations `a1·F₁ + a2·F₂ + a3·∇` with `|a3| ≤ bound`, in
/// search order: `a3 = 0, 1, −1, 2, −2, …`, then `a1` ascending over the
/// divisors of `1 + d·a3²`.
fn principal_classes<'a>(ctx: &'a SurfaceContext, bound: &BigInt) -> impl Iterator<Item = NSClass> + 'a {
    let mut a3_values = vec![BigInt::zero()];
    let mut k = BigInt::one();
    while &k <= bound {
        a3_values.push(k.clone());
        a3_values.push(-k.clone());
        k += 1;
    }
    a3_values.into_iter().flat_map(move |a3| {
        let n = 1 + ctx.d() * &a3 * &a3;
        divisors(&n).into_iter().map(move |a1| NSClass {
            a2: &n / &a1,
            a1,
            a3: a3.clone(),
        })
    })
}

fn pp_class_of(ctx: &SurfaceContext, l: &NSClass) -> Result<PPClass> {
    let reduced = ctx.matrix_of(l).reduce_gl()?.form;
    PPClass::from_quad_form(&reduced)
}

/// An ample class with `L² = 2` whose matrix reduces to `p`.
pub fn realize_pp(ctx: &SurfaceContext, p: &PPClass, search_bound: &BigInt) -> Result<NSClass> {
    if p.determinant() != *ctx.d() {
        return Err(Error::InvalidPPClass {
            a: p.a.clone(),
            b: p.b.clone(),
            c: p.c.clone(),
            reason: "determinant differs from d",
        });
    }
    for l in principal_classes(ctx, search_bound) {
        debug_assert!(ctx.is_ample(&l) && ctx.self_intersection(&l) == BigInt::from(2));
        if pp_class_of(ctx, &l)? == *p {
            return Ok(l);
        }
    }
    Err(Error::NotFound(search_bound.clone()))
}

/// Distinct principally reduced forms reached by principal polarizations with
/// `|a3| ≤ search_bound`, lexicographic.
pub fn enumerate_pp_classes(ctx: &SurfaceContext, search_bound: &BigInt) -> Result<Vec<PPClass>> {
    let mut found = BTreeSet::new();
    for l in principal_classes(ctx, search_bound) {
        found.insert(pp_class_of(ctx, &l)?);
    }
    Ok(found.into_iter().collect())
}

/// Writes a reducible principal polarization as `N_p + N_q` with
/// `N_p·N_q = 1`.
///
/// Both curves satisfy `L·N = 1`, i.e. `M_L(a, b) = gcd(a, d) ≤ d`, so the
/// candidates are exactly the coprime pairs with `M_L(a, b) ≤ d` and the
/// search is exhaustive.
pub fn decompose_reducible(ctx: &SurfaceContext, l: &NSClass) -> Result<(CurveClass, CurveClass)> {
    ctx.require_ample(l)?;
    let l_squared = ctx.self_intersection(l);
    if l_squared != BigInt::from(2) {
        return Err(Error::NotPrincipal(l_squared));
    }
    let m = ctx.matrix_of(l);
    if classify(&PPClass::from_quad_form(&m.reduce_gl()?.form)?) == PolarizationType::Irreducible {
        return Err(Error::Irreducible);
    }
    let mut candidates = Vec::new();
    for (a, b) in m.enumerate_coprime_below(ctx.d())? {
        if intersect_bundle(ctx, l, &a, &b)?.is_one() {
            let class = curve_class(ctx, &a, &b)?;
            candidates.push(((a, b), class));
        }
    }
    for (p, np) in &candidates {
        let rest = l - np;
        for (q, nq) in &candidates {
            if *nq == rest && ctx.intersect(np, nq).is_one() {
                return Ok((
                    CurveClass::new(ctx, p.0.clone(), p.1.clone())?,
                    CurveClass::new(ctx, q.0.clone(), q.1.clone())?,
                ));
            }
        }
    }
    Err(Error::NotFound(ctx.d().clone()))
}

/// `4/3` for irreducible classes, `1` for reducible ones.
pub fn seshadri_of_pp(p: &PPClass) -> BigRational {
    match classify(p) {
        PolarizationType::Irreducible => BigRational::new(BigInt::from(4), BigInt::from(3)),
        PolarizationType::Reducible => BigRational::one(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn pp(a: i64, b: i64, c: i64) -> PPClass {
        PPClass::new(a, b, c).unwrap()
    }

    fn ctx(d: i64) -> SurfaceContext {
        SurfaceContext::new(d).unwrap()
    }

    #[test]
    fn construction_enforces_invariants() {
        assert!(PPClass::new(2, 1, 2).is_ok());
        assert!(PPClass::new(2, 2, 3).is_err());
        assert!(PPClass::new(3, 1, 2).is_err());
        assert!(PPClass::new(2, 0, 2).is_err());
        assert!(PPClass::new(1, -1, 3).is_err());
        assert_eq!(pp(2, 1, 2).to_quad_form(), QuadForm::new(2, 2, 2));
        assert_eq!(PPClass::from_quad_form(&QuadForm::new(2, 2, 2)).unwrap(), pp(2, 1, 2));
        assert!(PPClass::from_quad_form(&QuadForm::new(2, 1, 2)).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_pp_forms(&bi(1)).unwrap(), vec![pp(1, 0, 1)]);
        assert_eq!(enumerate_pp_forms(&bi(2)).unwrap(), vec![pp(1, 0, 2)]);
        assert_eq!(enumerate_pp_forms(&bi(3)).unwrap(), vec![pp(1, 0, 3), pp(2, 1, 2)]);
        assert!(enumerate_pp_forms(&bi(0)).is_err());
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for d in 1..=120i64 {
            let mut expected = Vec::new();
            for a in 1..=d + 1 {
                for b in 0..=a / 2 {
                    for c in a..=d + 1 {
                        if a * c - b * b == d && gcd3(&bi(a), &bi(b), &bi(c)).is_one() {
                            expected.push(pp(a, b, c));
                        }
                    }
                }
            }
            expected.sort();
            assert_eq!(enumerate_pp_forms(&bi(d)).unwrap(), expected, "d = {d}");
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&pp(1, 0, 3)), PolarizationType::Reducible);
        assert_eq!(classify(&pp(2, 1, 2)), PolarizationType::Irreducible);
        assert_eq!(classify(&pp(1, 0, 1)), PolarizationType::Reducible);
    }

    #[test]
    fn exists_irreducible_examples() {
        assert!(exists_irreducible(&bi(3)).unwrap());
        assert!(!exists_irreducible(&bi(2)).unwrap());
        for d in (3..400i64).step_by(2) {
            let witness = pp(2, 1, (d + 1) / 2);
            assert_eq!(witness.determinant(), bi(d));
            assert!(enumerate_pp_forms(&bi(d)).unwrap().contains(&witness));
        }
    }

    #[test]
    fn idoneal_examples() {
        assert!(is_idoneal(&bi(10)).unwrap());
        assert!(!is_idoneal(&bi(11)).unwrap());
        assert!(is_idoneal(&bi(1848)).unwrap());
        assert!(is_idoneal(&bi(1)).unwrap());
        assert!(is_idoneal(&bi(0)).is_err());
    }

    #[test]
    fn kani_examples() {
        assert!(kani_predicate(&bi(2)).unwrap());
        assert!(!kani_predicate(&bi(8)).unwrap());
        assert!(kani_predicate(&bi(462)).unwrap());
        assert!(kani_predicate(&bi(1)).unwrap());
        assert!(!kani_predicate(&bi(3)).unwrap());
        assert_eq!(kani_list(&bi(12)).unwrap().values, [1, 2, 4, 6, 10, 12].map(bi).to_vec());
        assert_eq!(kani_list(&bi(1)).unwrap().values, vec![bi(1)]);
    }

    #[test]
    fn realize_examples() {
        for d in 1..8 {
            assert_eq!(
                realize_pp(&ctx(d), &pp(1, 0, d), &bi(0)).unwrap(),
                NSClass::product_polarization()
            );
        }
        let s = ctx(3);
        let l = realize_pp(&s, &pp(2, 1, 2), &bi(10)).unwrap();
        assert!(s.is_ample(&l));
        assert_eq!(s.self_intersection(&l), bi(2));
        assert_eq!(s.matrix_of(&l).reduce_gl().unwrap().form, QuadForm::new(2, 2, 2));
        assert!(matches!(
            realize_pp(&s, &pp(1, 0, 2), &bi(10)),
            Err(Error::InvalidPPClass { .. })
        ));
        // No principal polarization with a3 = 0 realises the irreducible class.
        assert!(matches!(realize_pp(&s, &pp(2, 1, 2), &bi(0)), Err(Error::NotFound(_))));
    }

    #[test]
    fn enumerate_classes_examples() {
        assert_eq!(enumerate_pp_classes(&ctx(1), &bi(5)).unwrap(), vec![pp(1, 0, 1)]);
        assert_eq!(
            enumerate_pp_classes(&ctx(3), &bi(5)).unwrap(),
            vec![pp(1, 0, 3), pp(2, 1, 2)]
        );
        assert_eq!(enumerate_pp_classes(&ctx(4), &bi(10)).unwrap(), vec![pp(1, 0, 4)]);
    }

    #[test]
    fn decompose_examples() {
        for d in 1..10 {
            let s = ctx(d);
            let (p, q) = decompose_reducible(&s, &NSClass::product_polarization()).unwrap();
            assert_eq!(p.pair(), (bi(0), bi(1)));
            assert_eq!(q.pair(), (bi(1), bi(0)));
        }
        let s = ctx(2);
        let l = realize_pp(&s, &pp(1, 0, 2), &bi(5)).unwrap();
        let (p, q) = decompose_reducible(&s, &l).unwrap();
        assert_eq!(&p.ns_class(&s) + &q.ns_class(&s), l);
        assert_eq!(s.intersect(&p.ns_class(&s), &q.ns_class(&s)), bi(1));

        let s = ctx(3);
        let l = realize_pp(&s, &pp(2, 1, 2), &bi(10)).unwrap();
        assert_eq!(decompose_reducible(&s, &l), Err(Error::Irreducible));
        assert!(matches!(
            decompose_reducible(&s, &NSClass::new(2, 2, 0)),
            Err(Error::NotPrincipal(_))
        ));
    }

    #[test]
    fn seshadri_of_pp_examples() {
        assert_eq!(
            seshadri_of_pp(&pp(2, 1, 2)),
            BigRational::new(bi(4), bi(3))
        );
        assert_eq!(seshadri_of_pp(&pp(1, 0, 7)), BigRational::one());
        assert_eq!(seshadri_of_pp(&pp(1, 0, 1)), BigRational::one());
    }
}
