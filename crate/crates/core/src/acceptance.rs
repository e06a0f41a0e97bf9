//! End-to-end verification checks.
//!
//! Each check is deterministic (fixed RNG seeds) and exact. The `acceptance`
//! test target and the CLI `verify` command both run these.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bqf::{QuadForm, UnimodularMap};
use crate::curves::intersect_bundle;
use crate::error::{Error, Result};
use crate::polarizations::{
    classify, decompose_reducible, enumerate_pp_classes, enumerate_pp_forms, exists_irreducible,
    idoneal_numbers, kani_predicate, realize_pp, seshadri_of_pp, PPClass, PolarizationType,
};
use crate::seshadri::{
    counterexample_bundle, eps_star, eps_star_bruteforce, is_perfect_square,
    no_submaximal_certificate, survey,
};
use crate::surface::{NSClass, SurfaceContext};

/// The values of `d` without an irreducible principal polarization.
pub const KANI_VALUES: [u32; 21] = [
    1, 2, 4, 6, 10, 12, 18, 22, 28, 30, 42, 58, 60, 70, 78, 102, 130, 190, 210, 330, 462,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    IntersectionMatrix,
    Reduction,
    EpsStarOracle,
    IntegralSmallDegree,
    NonIntegralLargeDegree,
    KaniList,
    Idoneal,
    Polarizations,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::IntersectionMatrix,
        Check::Reduction,
        Check::EpsStarOracle,
        Check::IntegralSmallDegree,
        Check::NonIntegralLargeDegree,
        Check::KaniList,
        Check::Idoneal,
        Check::Polarizations,
    ];

    pub fn number(self) -> usize {
        Check::ALL.iter().position(|&c| c == self).unwrap() + 1
    }

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Check::IntersectionMatrix => "intersection",
            Check::Reduction => "reduction",
            Check::EpsStarOracle => "oracle",
            Check::IntegralSmallDegree => "integer-d12",
            Check::NonIntegralLargeDegree => "non-integer",
            Check::KaniList => "kani",
            Check::Idoneal => "idoneal",
            Check::Polarizations => "polarizations",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Check::IntersectionMatrix => "Gram matrix of (F1, F2, Delta) for d in {1,2,3,5,12}",
            Check::Reduction => "Gauss reduction on 10000 random forms, coefficients <= 10^6",
            Check::EpsStarOracle => "eps* equals brute force on 500 ample classes per d <= 10",
            Check::IntegralSmallDegree => "d in {1,2}: every ample class, |a_i| <= 40, has a weakly submaximal curve",
            Check::NonIntegralLargeDegree => "3 <= d <= 200: counterexample bundle has no weakly submaximal curve, L^2 non-square",
            Check::KaniList => "d <= 2000: Kani predicate = no irreducible form = the 21 listed values",
            Check::Idoneal => "65 idoneal numbers <= 1848, none in (1848, 50000]",
            Check::Polarizations => "principal polarization classification for d <= 50",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn run(self) -> Outcome {
        let result = match self {
            Check::IntersectionMatrix => intersection_matrix(),
            Check::Reduction => reduction(10_000, 1_000_000, 0x5eed_0001),
            Check::EpsStarOracle => eps_star_oracle(500, 30, 0x5eed_0002),
            Check::IntegralSmallDegree => integral_small_degree(40),
            Check::NonIntegralLargeDegree => non_integral_large_degree(200),
            Check::KaniList => kani_list_check(2000),
            Check::Idoneal => idoneal_check(50_000),
            Check::Polarizations => polarization_check(50),
        };
        let (passed, detail) = match result {
            Ok(Ok(detail)) => (true, detail),
            Ok(Err(failure)) => (false, failure),
            Err(e) => (false, format!("unexpected error: {e}")),
        };
        Outcome {
            check: self,
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {} ({}): {} -- {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.check.number(),
            self.check.name(),
            self.check.description(),
            self.detail
        )
    }
}

pub fn run_all() -> Vec<Outcome> {
    Check::ALL.into_iter().map(Check::run).collect()
}

/// Outer `Err` is an unexpected library error, inner `Err` a failed check.
type CheckResult = Result<std::result::Result<String, String>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Ok(Err(format!($($msg)+)));
        }
    };
}

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn intersection_matrix() -> CheckResult {
    for d in [1i64, 2, 3, 5, 12] {
        let ctx = SurfaceContext::new(d)?;
        let basis = [
            ctx.from_delta_basis(1, 0, 0),
            ctx.from_delta_basis(0, 1, 0),
            ctx.from_delta_basis(0, 0, 1),
        ];
        let expected = [[0, 1, 1], [1, 0, d], [1, d, 0]];
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let got = ctx.intersect(u, v);
                ensure!(
                    got == bi(expected[i][j]),
                    "d = {d}: entry ({i}, {j}) is {got}, expected {}",
                    expected[i][j]
                );
            }
        }
    }
    Ok(Ok("5 Gram matrices reproduced".into()))
}

fn random_proper_map(rng: &mut ChaCha8Rng, r: i64) -> UnimodularMap {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| rng.gen_range(-r..=r));
        if a * d - b * c == 1 {
            return UnimodularMap::new(a, b, c, d).expect("determinant checked");
        }
    }
}

pub fn random_positive_definite(rng: &mut ChaCha8Rng, max: i64) -> QuadForm {
    loop {
        let q = QuadForm::new(
            rng.gen_range(1..=max),
            rng.gen_range(-max..=max),
            rng.gen_range(1..=max),
        );
        if q.is_positive_definite() {
            return q;
        }
    }
}

fn reduction(count: usize, max: i64, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let q = random_positive_definite(&mut rng, max);
        let red = q.reduce()?;
        let r = &red.form;
        ensure!(r.is_reduced()?, "{q} reduced to non-reduced {r}");
        ensure!(red.transform.is_proper(), "{q}: transform {} not proper", red.transform);
        for _ in 0..20 {
            let (x, y) = (bi(rng.gen_range(-1000..=1000)), bi(rng.gen_range(-1000..=1000)));
            let (tx, ty) = red.transform.apply(&x, &y);
            ensure!(
                r.evaluate(&x, &y) == q.evaluate(&tx, &ty),
                "{q}: transform does not certify equivalence at ({x}, {y})"
            );
        }
        let twisted = r.compose(&random_proper_map(&mut rng, 9));
        let back = twisted.reduce()?.form;
        ensure!(back == *r, "{r} twisted to {twisted} reduced to {back}");
        ensure!(
            3 * &r.a * &r.a <= r.det_times_four(),
            "{r} violates 3A^2 <= 4AC - B^2"
        );
    }
    Ok(Ok(format!("{count} forms reduced and certified")))
}

/// Brute force with the radius raised until it is provably sufficient.
pub fn eps_star_by_scan(ctx: &SurfaceContext, l: &NSClass, start: i64) -> Result<BigInt> {
    let mut radius = bi(start);
    loop {
        match eps_star_bruteforce(ctx, l, &radius) {
            Err(Error::RadiusInsufficient { required, .. }) => {
                radius = std::cmp::max(required, &radius + 1);
            }
            other => return other,
        }
    }
}

pub fn random_ample(rng: &mut ChaCha8Rng, ctx: &SurfaceContext, max: i64) -> NSClass {
    loop {
        let l = NSClass::new(
            rng.gen_range(-max..=max),
            rng.gen_range(-max..=max),
            rng.gen_range(-max..=max),
        );
        if ctx.is_ample(&l) {
            return l;
        }
    }
}

fn eps_star_oracle(per_degree: usize, max: i64, seed: u64) -> CheckResult {
    let failures: Vec<String> = (1..=10i64)
        .into_par_iter()
        .map(|d| -> Result<Vec<String>> {
            let ctx = SurfaceContext::new(d)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed + d as u64);
            let mut bad = Vec::new();
            for _ in 0..per_degree {
                let l = random_ample(&mut rng, &ctx, max);
                let fast = eps_star(&ctx, &l)?;
                let slow = eps_star_by_scan(&ctx, &l, 30)?;
                let at_witness = intersect_bundle(&ctx, &l, &fast.witness.0, &fast.witness.1)?;
                if fast.value != slow || at_witness != fast.value {
                    bad.push(format!(
                        "d = {d}, L = {l}: eps* = {}, scan = {slow}, witness value = {at_witness}",
                        fast.value
                    ));
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(Ok(format!("{} classes agree", 10 * per_degree)))
}

fn integral_small_degree(bound: i64) -> CheckResult {
    let mut checked = 0;
    for d in [1i64, 2] {
        let ctx = SurfaceContext::new(d)?;
        let s = survey(&ctx, &bi(bound))?;
        ensure!(
            s.no_submaximal_classes.is_empty(),
            "d = {d}: {} classes without a weakly submaximal curve, first {}",
            s.no_submaximal_classes.len(),
            s.no_submaximal_classes[0]
        );
        checked += s.ample_classes;
    }
    Ok(Ok(format!("{checked} ample classes, all with eps*^2 <= L^2")))
}

fn non_integral_large_degree(max_d: i64) -> CheckResult {
    for d in 3..=max_d {
        let ctx = SurfaceContext::new(d)?;
        let l = counterexample_bundle(&ctx)?;
        ensure!(ctx.is_ample(&l), "d = {d}: {l} not ample");
        let l2 = ctx.self_intersection(&l);
        ensure!(l2 == bi(16 * d * d - 2 * d), "d = {d}: L^2 = {l2}");
        ensure!(!is_perfect_square(&l2), "d = {d}: L^2 = {l2} is a square");
        let e = eps_star(&ctx, &l)?;
        ensure!(
            &e.value * &e.value > l2,
            "d = {d}: eps* = {} is weakly submaximal",
            e.value
        );
        let cert = no_submaximal_certificate(&bi(d))?;
        ensure!(cert.holds, "d = {d}: form certificate fails");
        if d == 3 {
            let expected = vec![(bi(0), bi(1)), (bi(1), bi(-1))];
            ensure!(
                cert.exceptional_pairs() == expected,
                "d = 3: exceptional pairs {:?}",
                cert.exceptional_pairs()
            );
        }
    }
    Ok(Ok(format!("d = 3..={max_d} certified")))
}

fn kani_list_check(limit: i64) -> CheckResult {
    let mut by_predicate = BTreeSet::new();
    let mut by_forms = BTreeSet::new();
    for d in 1..=limit {
        let d_big = bi(d);
        if kani_predicate(&d_big)? {
            by_predicate.insert(d);
        }
        if !exists_irreducible(&d_big)? {
            by_forms.insert(d);
        }
    }
    let expected: BTreeSet<i64> = KANI_VALUES.iter().map(|&v| v as i64).collect();
    ensure!(
        by_predicate == by_forms,
        "predicate and form enumeration disagree: {:?}",
        by_predicate.symmetric_difference(&by_forms).collect::<Vec<_>>()
    );
    ensure!(
        by_predicate == expected,
        "list differs from the 21 values: {:?}",
        by_predicate.symmetric_difference(&expected).collect::<Vec<_>>()
    );
    Ok(Ok(format!("both routes give the 21 values up to {limit}")))
}

fn idoneal_check(limit: i64) -> CheckResult {
    let all = idoneal_numbers(&bi(limit))?;
    let upto: Vec<_> = all.iter().filter(|n| **n <= bi(1848)).collect();
    let beyond: Vec<_> = all.iter().filter(|n| **n > bi(1848)).collect();
    ensure!(upto.len() == 65, "{} idoneal numbers <= 1848", upto.len());
    ensure!(upto.last() == Some(&&bi(1848)), "largest is {:?}", upto.last());
    ensure!(beyond.is_empty(), "unexpected idoneal numbers {beyond:?}");
    Ok(Ok(format!("65 idoneal numbers, none in (1848, {limit}]")))
}

/// Raises the search bound until the classes reached by principal
/// polarizations match the principally reduced forms.
pub fn pp_classes_with_escalation(ctx: &SurfaceContext, cap: i64) -> Result<(Vec<PPClass>, i64)> {
    let forms = enumerate_pp_forms(ctx.d())?;
    let mut bound = 1;
    loop {
        let classes = enumerate_pp_classes(ctx, &bi(bound))?;
        if classes == forms || bound >= cap {
            return Ok((classes, bound));
        }
        bound *= 2;
    }
}

fn polarization_check(max_d: i64) -> CheckResult {
    let one = num_rational::BigRational::one();
    let forms1 = enumerate_pp_forms(&bi(1))?;
    ensure!(forms1.len() == 1, "d = 1: {} classes", forms1.len());
    ensure!(
        classify(&forms1[0]) == PolarizationType::Reducible && seshadri_of_pp(&forms1[0]) == one,
        "d = 1: class not reducible with eps = 1"
    );
    let forms2 = enumerate_pp_forms(&bi(2))?;
    ensure!(
        forms2.len() == 1 && classify(&forms2[0]) == PolarizationType::Reducible,
        "d = 2: {forms2:?}"
    );
    let forms3 = enumerate_pp_forms(&bi(3))?;
    let irreducible = PPClass::new(2, 1, 2)?;
    ensure!(
        forms3.len() == 2 && forms3.contains(&irreducible),
        "d = 3: {forms3:?}"
    );
    ensure!(
        classify(&irreducible) == PolarizationType::Irreducible
            && seshadri_of_pp(&irreducible)
                == num_rational::BigRational::new(bi(4), bi(3)),
        "d = 3: (2, 1, 2) not irreducible with eps = 4/3"
    );

    let mut decomposed = 0;
    for d in 1..=max_d {
        let ctx = SurfaceContext::new(d)?;
        let (classes, bound) = pp_classes_with_escalation(&ctx, 4096)?;
        let forms = enumerate_pp_forms(ctx.d())?;
        ensure!(
            classes == forms,
            "d = {d}: classes {classes:?} != forms {forms:?} at bound {bound}"
        );
        for p in forms.iter().filter(|p| classify(p) == PolarizationType::Reducible) {
            let l = realize_pp(&ctx, p, &bi(bound))?;
            let (e1, e2) = decompose_reducible(&ctx, &l)?;
            let (n1, n2) = (e1.ns_class(&ctx), e2.ns_class(&ctx));
            ensure!(&n1 + &n2 == l, "d = {d}: {n1} + {n2} != {l}");
            ensure!(ctx.intersect(&n1, &n2).is_one(), "d = {d}: {n1}.{n2} != 1");
            ensure!(
                ctx.self_intersection(&n1).is_zero() && ctx.self_intersection(&n2).is_zero(),
                "d = {d}: decomposition classes are not elliptic"
            );
            decomposed += 1;
        }
    }
    Ok(Ok(format!(
        "bijection holds for d <= {max_d}; {decomposed} reducible classes decomposed"
    )))
}
