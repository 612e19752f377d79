//! Named verification suites, each producing one [`Report`].

use std::time::Instant;

use crate::algebroid::verify_bialgebroid_axioms;
use crate::antipodes::{
    antipode_flip, antipode_s, verify_antipode, verify_beta_lambda, verify_bohm_theorem, verify_flip_consistency,
    verify_right_coprod_lemma, verify_twists, AntipodeMap,
};
use crate::error::{Error, Result};
use crate::galois::{verify_chi_structure, verify_translation_properties};
use crate::kernel::lin::Lin;
use crate::kernel::scalar::Scalar;
use crate::quantum_spaces::{render_aa, verify_projections, verify_sphere, Sphere, TensorAA};
use crate::report::{Check, Report};

pub const SUITES: [&str; 12] = [
    "sphere",
    "confluence",
    "translation",
    "coinvariants",
    "bialgebroid",
    "antipode-q",
    "antipode-flip",
    "beta-lambda",
    "right-coproduct",
    "twists",
    "bohm-theorem",
    "projections",
];

/// Largest `|k|` for which the translation-map identities are checked.
pub const TRANSLATION_RANGE: i32 = 2;

/// Minimum size of each half of the coinvariance corpus.
pub const CORPUS_SIZE: usize = 50;

pub fn is_suite(name: &str) -> bool {
    SUITES.contains(&name)
}

/// Runs one suite on `s`. `max_degree` bounds the confluence search.
pub fn run_suite<S: Scalar>(name: &str, s: &Sphere<S>, max_degree: usize) -> Result<Report> {
    let start = Instant::now();
    let checks = match name {
        "sphere" => verify_sphere(s),
        "confluence" => confluence_checks(s, max_degree),
        "translation" => {
            let mut c = verify_translation_properties(s, TRANSLATION_RANGE);
            c.extend(verify_chi_structure(s));
            c
        }
        "coinvariants" => coinvariance_checks(s),
        "bialgebroid" => verify_bialgebroid_axioms(s),
        "antipode-q" => with_antipodes(s, &[antipode_s], verify_antipode),
        "antipode-flip" => {
            let mut c = with_antipodes(s, &[antipode_flip], verify_antipode);
            c.extend(with_antipodes(s, &[antipode_flip], |s, a| verify_flip_consistency(s, a, 2)));
            c
        }
        "beta-lambda" => with_antipodes(s, &[antipode_s, antipode_flip], verify_beta_lambda),
        "right-coproduct" => with_antipodes(s, &[antipode_s, antipode_flip], verify_right_coprod_lemma),
        "twists" => verify_twists(s),
        "bohm-theorem" => verify_bohm_theorem(s),
        "projections" => verify_projections(s),
        other => return Err(Error::Config(format!("unknown suite '{other}'; expected one of {}", SUITES.join(", ")))),
    };
    Ok(Report::new(name, s.n(), checks, start.elapsed().as_millis()))
}

type Builder<S> = fn(&Sphere<S>) -> Result<AntipodeMap<S>>;

fn with_antipodes<S: Scalar>(
    s: &Sphere<S>,
    builders: &[Builder<S>],
    verify: impl Fn(&Sphere<S>, &AntipodeMap<S>) -> Vec<Check>,
) -> Vec<Check> {
    let mut out = Vec::new();
    for build in builders {
        match build(s) {
            Ok(a) => out.extend(verify(s, &a)),
            Err(e) => out.push(Check::from_error("antipode construction", &e)),
        }
    }
    out
}

fn confluence_checks<S: Scalar>(s: &Sphere<S>, max_degree: usize) -> Vec<Check> {
    let n = s.n();
    let mut checks = vec![Check::run(format!("critical pairs joinable up to degree {max_degree}"), || {
        let r = s.rs().check_local_confluence(max_degree)?;
        let lhs = format!("{} words, {} branch pairs", r.words_checked, r.pairs_checked);
        let rhs = match r.failures.first() {
            None => "all joinable".to_string(),
            Some(f) => format!("{} failures, first at {}: {} vs {}", r.failures.len(), f.word, f.left, f.right),
        };
        Ok(Check::compare("", r.is_confluent(), lhs, rhs))
    })];
    checks.push(Check::run("Σ q^{2(n-j)} z*_j z_j - 1 normalizes to 0", || {
        let mut p = s.scalar(-s.int(1));
        for j in 1..=n {
            p.add_scaled(&s.mul(&s.zs(j), &s.z(j))?, &s.q_pow(2 * (n - j) as i32));
        }
        let nf = s.normalize(&p)?;
        Ok(Check::compare("", nf.is_zero(), crate::kernel::word::render(&nf), "0"))
    }));
    checks
}

/// Deterministic corpus of weight-balanced and unbalanced elements of
/// `A ⊗ A` with both legs of degree at most 3.
pub fn coinvariance_corpus<S: Scalar>(s: &Sphere<S>) -> (Vec<TensorAA<S>>, Vec<TensorAA<S>>) {
    let words = s.normal_words(3);
    let (mut bal, mut unbal) = (Vec::new(), Vec::new());
    for x in &words {
        for y in &words {
            let m: TensorAA<S> = Lin::basis((x.clone(), y.clone()));
            if x.weight() + y.weight() == 0 {
                bal.push(m);
            } else {
                unbal.push(m);
            }
        }
    }
    let thin = |v: Vec<TensorAA<S>>| -> Vec<TensorAA<S>> {
        let step = (v.len() / CORPUS_SIZE).max(1);
        v.into_iter().step_by(step).collect()
    };
    let (mut bal, mut unbal) = (thin(bal), thin(unbal));
    // sums mixing coefficients, and mixed-weight sums on the unbalanced side
    let q = s.q_pow(1);
    for k in 0..10.min(bal.len() - 1) {
        let mut sum = bal[k].clone();
        sum.add_scaled(&bal[k + 1], &q);
        let mut mixed = bal[k].clone();
        mixed.add_scaled(&unbal[k], &q);
        bal.push(sum);
        unbal.push(mixed);
    }
    (bal, unbal)
}

fn coinvariance_checks<S: Scalar>(s: &Sphere<S>) -> Vec<Check> {
    let (bal, unbal) = coinvariance_corpus(s);
    let mut checks = Vec::new();
    for (label, corpus, expected) in [("balanced", &bal, true), ("unbalanced", &unbal, false)] {
        checks.push(Check::run(format!("membership tests agree on {} {label} elements", corpus.len()), || {
            for x in corpus {
                let m = s.coinvariance_membership(x)?;
                if [m.in_l, m.in_co, m.in_c] != [expected; 3] {
                    let got = format!("L={} co={} C={}", m.in_l, m.in_co, m.in_c);
                    return Ok(Check::compare(
                        "",
                        false,
                        format!("{}: {got}", render_aa(x)),
                        format!("all {expected}"),
                    ));
                }
            }
            Ok(Check::compare("", true, format!("{} elements", corpus.len()), format!("all {expected}")))
        }));
    }
    checks
}
