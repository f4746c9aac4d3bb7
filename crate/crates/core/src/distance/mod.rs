//! Minimum-distance certificates.
//!
//! A certificate pairs a lower bound (structural rules plus any exhausted
//! search) with an explicit codeword whose weight is the upper bound. Every
//! codeword is re-checked against the full defining set before it is accepted,
//! whatever produced it.

mod search;
mod witness;

use std::cmp::Ordering;

use serde::Serialize;

use crate::bch::{self, BchCode, CodeId, RuleBound};
use crate::error::{Error, Result};
use crate::esp;
use crate::field::Elt;
use crate::poly::Poly;

pub use search::{exhaustive_distance, isd_search, support_search, support_search_from, SearchOutcome, SupportOutcome};
pub use witness::{
    witness_binary_weight6, witness_eight_term, witness_fifth_roots, witness_order_divides,
    witness_polynomial_divisor, witness_quadrinomial, witness_subgroup, witness_subgroup_pair,
    DIVISOR_PERIOD, EIGHT_TERM_DIVISOR, SIX_TERM_DIVISOR,
};

/// Explicit limits for every search engine. Exceeding one degrades the
/// certificate to an interval; it never fails the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Projective codewords for exhaustive enumeration.
    pub codewords: u64,
    /// Support-search work, in (support x defining exponent x column) units.
    pub support_units: u64,
    /// Subsets examined by the unit-circle ESP rule.
    pub subsets: u64,
    pub isd_iterations: u64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            codewords: 1 << 26,
            support_units: 1_000_000_000,
            subsets: 1 << 26,
            isd_iterations: 4096,
            seed: 0,
        }
    }
}

/// A codeword given by its support and GF(q) coefficients (as element indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub support: Vec<u64>,
    pub coeffs: Vec<Elt>,
}

impl Witness {
    pub fn weight(&self) -> u64 {
        self.support.len() as u64
    }

    /// Builds from (position, coefficient) pairs in any order; zero
    /// coefficients are dropped and repeated positions are rejected.
    pub fn from_terms(mut terms: Vec<(u64, Elt)>) -> Result<Witness> {
        terms.retain(|t| !t.1.is_zero());
        terms.sort_unstable_by_key(|t| t.0);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidWitness("repeated position".into()));
        }
        Ok(Witness {
            support: terms.iter().map(|t| t.0).collect(),
            coeffs: terms.iter().map(|t| t.1).collect(),
        })
    }

    /// Weight first, then colexicographic support, then coefficients.
    pub fn cmp_key(&self, other: &Witness) -> Ordering {
        self.support
            .len()
            .cmp(&other.support.len())
            .then_with(|| self.support.iter().rev().cmp(other.support.iter().rev()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// The codeword as a polynomial over GF(q).
    pub fn to_poly(&self, code: &BchCode) -> Poly {
        let terms: Vec<(usize, Elt)> = self
            .support
            .iter()
            .zip(&self.coeffs)
            .map(|(&i, &c)| (i as usize, c))
            .collect();
        Poly::from_terms(code.tower().small(), &terms)
    }
}

/// Checks `Σ c_j β^(i_j t) = 0` for every `t` in the defining set.
pub fn verify_witness(code: &BchCode, w: &Witness) -> Result<()> {
    let tower = code.tower();
    let q = code.q;
    if w.support.is_empty() {
        return Err(Error::InvalidWitness("empty support".into()));
    }
    if w.support.len() != w.coeffs.len() {
        return Err(Error::InvalidWitness("support and coefficient lengths differ".into()));
    }
    if w.support.windows(2).any(|p| p[0] >= p[1]) || *w.support.last().unwrap() >= code.n {
        return Err(Error::InvalidWitness("support must be strictly increasing below n".into()));
    }
    if w.coeffs.iter().any(|c| c.is_zero() || c.index() >= q) {
        return Err(Error::InvalidWitness("coefficients must be nonzero elements of GF(q)".into()));
    }
    let big = tower.big();
    let lifted: Vec<Elt> = w.coeffs.iter().map(|&c| tower.embedding().map(c)).collect();
    let n = code.n;
    for &t in &code.defining_set {
        let s = w.support.iter().zip(&lifted).fold(Elt::ZERO, |acc, (&i, &c)| {
            big.add(acc, big.mul(c, tower.beta_pow(((i as u128 * t as u128) % n as u128) as i64)))
        });
        if !s.is_zero() {
            return Err(Error::InvalidWitness(format!("parity check fails at exponent {t}")));
        }
    }
    Ok(())
}

/// The independent check: the witness polynomial is a multiple of g(x).
pub fn divisible_by_generator(code: &BchCode, w: &Witness) -> bool {
    match w.to_poly(code).divrem(&code.generator) {
        Ok((_, r)) => r.is_zero(),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub value: u64,
    pub rules: Vec<RuleBound>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    pub value: u64,
    pub rule: String,
    pub witness: Witness,
}

/// What each engine consumed, next to the limits it was given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetUsage {
    pub limits: Budget,
    pub codewords: u64,
    pub support_units: u64,
    pub subsets: u64,
    pub isd_iterations: u64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceCertificate {
    pub code: CodeId,
    pub lower: LowerBound,
    pub upper: Option<UpperBound>,
    pub exact: bool,
    pub budget: BudgetUsage,
}

impl DistanceCertificate {
    /// The minimum distance when the bounds meet.
    pub fn distance(&self) -> Option<u64> {
        self.exact.then_some(self.lower.value)
    }

    pub fn upper_value(&self) -> Option<u64> {
        self.upper.as_ref().map(|u| u.value)
    }
}

fn rule(rule: &str, value: u64, hypothesis: String) -> RuleBound {
    RuleBound {
        rule: rule.into(),
        value,
        hypothesis,
    }
}

/// Exact-distance results for the narrow-sense codes `𝒞(q, q^m+1, 2, 1)` and
/// `𝒞(3, 3^m+1, 3, 1)`, as lower bounds.
fn narrow_sense_rules(code: &BchCode) -> Vec<RuleBound> {
    let (q, m, delta, b) = (code.q, code.m, code.delta, code.b);
    let mut out = Vec::new();
    let even_char = q % 2 == 0;
    if b == 1 && delta == 2 && m > 3 && m % 2 == 0 && even_char {
        if q == 2 {
            out.push(rule(
                "binary-narrow-even-m",
                5,
                format!("q = 2, delta = 2, b = 1, m = {m} even and > 3: no solutions of weight 3 or 4 on the unit circle"),
            ));
        } else {
            out.push(rule(
                "even-char-narrow-even-m",
                4,
                format!("q = {q} even, delta = 2, b = 1, m = {m} even and > 3"),
            ));
        }
    }
    if q == 3 && delta == 3 && b == 1 && m % 2 == 0 {
        out.push(rule(
            "ternary-narrow-even-m",
            5,
            format!("q = 3, delta = 3, b = 1, m = {m} even: no order-4 element in the unit circle"),
        ));
        if m % 4 == 0 {
            out.push(rule(
                "ternary-narrow-m-0-mod-4",
                6,
                format!("q = 3, delta = 3, b = 1, m = {m} = 0 mod 4: no order-5 element in the unit circle"),
            ));
        }
    }
    out
}

/// For `𝒞(q, q+1, δ, 1)` with `q > 2η`, `η = δ-1`: raise the bound to `η+l`
/// while `σ_{η+w,η}` has no zero on the unit circle for `w < l`.
fn unit_circle_esp_rule(code: &BchCode, budget: u64, usage: &mut BudgetUsage) -> Option<RuleBound> {
    if code.m != 1 || code.b != 1 || code.delta < 2 {
        return None;
    }
    let q = code.q;
    let eta = (code.delta - 1) as usize;
    if q <= 2 * eta as u64 {
        return None;
    }
    let mut l = 1usize;
    // at most n - k + 1 = 2η + 1 is possible; stop one short of it
    while eta + l <= 2 * eta {
        let needed = esp::binomial(q + 1, (eta + l) as u64);
        if needed > (budget - usage.subsets) as u128 {
            usage.notes.push(format!(
                "unit-circle ESP rule stopped at w = {l}: needs {needed} subsets"
            ));
            break;
        }
        match esp::esp_distance_condition(q, eta, l, needed) {
            Ok(true) => {
                usage.subsets += needed as u64;
                l += 1;
            }
            _ => {
                usage.subsets += needed as u64;
                break;
            }
        }
    }
    (l > 1).then(|| {
        rule(
            "unit-circle-esp",
            (eta + l) as u64,
            format!("m = 1, b = 1, q = {q} > 2 eta = {}; sigma_(eta+w, eta) never vanishes for w < {l}", 2 * eta),
        )
    })
}

/// Lower-bound rules that apply to `code`, without any search.
pub fn lower_bound_rules(code: &BchCode) -> Vec<RuleBound> {
    let report = bch::bound_report(code);
    let mut rules = vec![rule(
        "bch-bound",
        report.bch_bound,
        "longest run of consecutive exponents in the defining set, plus one".into(),
    )];
    rules.extend(report.structural_bounds);
    rules.extend(narrow_sense_rules(code));
    rules
}

/// Constructive witnesses whose hypotheses hold for `code`, each verified.
pub fn constructive_witnesses(code: &BchCode, max_weight: u64) -> Vec<(String, Witness)> {
    let n = code.n;
    let mut out: Vec<(String, Witness)> = Vec::new();
    let mut push = |name: &str, w: Result<Witness>| {
        if let Ok(w) = w {
            if verify_witness(code, &w).is_ok() {
                out.push((name.to_string(), w));
            }
        }
    };
    for r in 2..=max_weight.min(n) {
        if n % r != 0 {
            continue;
        }
        push("subgroup", witness_subgroup(code, r));
        if 2 * r <= max_weight {
            push("subgroup-pair", witness_subgroup_pair(code, r));
        }
    }
    push("antipodal-quadrinomial", witness_quadrinomial(code));
    push("eight-term", witness_eight_term(code));
    if n % DIVISOR_PERIOD == 0 {
        let ctx = code.tower().small();
        push("sparse-divisor", witness_polynomial_divisor(code, &Poly::from_terms(ctx, &EIGHT_TERM_DIVISOR.map(|(e, c)| (e, ctx.from_i64(c)))), DIVISOR_PERIOD));
        push("sparse-divisor", witness_polynomial_divisor(code, &Poly::from_terms(ctx, &SIX_TERM_DIVISOR.map(|(e, c)| (e, ctx.from_i64(c)))), DIVISOR_PERIOD));
    }
    if code.q == 2 && code.delta == 3 && code.b == 0 && code.m % 2 == 0 {
        push("binary-weight-six", witness_binary_weight6(code));
    }
    out
}

fn generator_witness(code: &BchCode) -> Witness {
    let terms = code
        .generator
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as u64, c))
        .collect();
    Witness::from_terms(terms).expect("generator has distinct positions")
}

/// Lower and upper bounds on the minimum distance of `code`, within `budget`.
pub fn certify(code: &BchCode, budget: &Budget) -> DistanceCertificate {
    let mut usage = BudgetUsage {
        limits: *budget,
        codewords: 0,
        support_units: 0,
        subsets: 0,
        isd_iterations: 0,
        notes: Vec::new(),
    };
    if code.dimension == 0 {
        usage.notes.push("the code is {0}; no distance".into());
        return DistanceCertificate {
            code: code.id(),
            lower: LowerBound {
                value: code.n + 1,
                rules: vec![rule("zero-code", code.n + 1, "dimension 0".into())],
            },
            upper: None,
            exact: false,
            budget: usage,
        };
    }

    let mut rules = lower_bound_rules(code);
    if let Some(r) = unit_circle_esp_rule(code, budget.subsets, &mut usage) {
        rules.push(r);
    }
    let mut lower = rules.iter().map(|r| r.value).max().unwrap_or(1);

    let gen = generator_witness(code);
    debug_assert!(verify_witness(code, &gen).is_ok());
    let mut best = UpperBound {
        value: gen.weight(),
        rule: "generator".into(),
        witness: gen,
    };
    let consider = |best: &mut UpperBound, name: &str, w: Witness| {
        if verify_witness(code, &w).is_err() {
            return;
        }
        let better = w.weight() < best.value || (w.weight() == best.value && w.cmp_key(&best.witness).is_lt());
        if better {
            *best = UpperBound {
                value: w.weight(),
                rule: name.into(),
                witness: w,
            };
        }
    };
    for (name, w) in constructive_witnesses(code, best.value) {
        consider(&mut best, &name, w);
    }

    if best.value > lower {
        match support_search_from(code, lower, best.value - 1, budget.support_units) {
            Ok(outcome) => {
                usage.support_units = outcome.units as u64;
                if outcome.exhausted_below > lower {
                    lower = outcome.exhausted_below;
                    rules.push(rule(
                        "support-search-exhausted",
                        lower,
                        format!("no codeword with weight below {lower}: every support searched"),
                    ));
                }
                if let Some(w) = outcome.found {
                    consider(&mut best, "support-search", w);
                }
                if let Some(stop) = outcome.stopped_at {
                    usage.notes.push(format!("support search stopped at weight {stop}: budget"));
                }
            }
            Err(e) => usage.notes.push(format!("support search skipped: {e}")),
        }
    }

    if best.value > lower {
        match isd_search(code, lower, budget.isd_iterations, budget.seed) {
            Ok((found, used)) => {
                usage.isd_iterations = used;
                if let Some(w) = found {
                    consider(&mut best, "information-set", w);
                }
            }
            Err(e) => usage.notes.push(format!("information-set search skipped: {e}")),
        }
    }

    if best.value > lower {
        match exhaustive_distance(code, budget.codewords) {
            Ok(outcome) => {
                usage.codewords = outcome.units as u64;
                lower = outcome.weight;
                rules.push(rule(
                    "exhaustive-enumeration",
                    outcome.weight,
                    format!("all {} projective codewords enumerated", outcome.units),
                ));
                best = UpperBound {
                    value: outcome.weight,
                    rule: "exhaustive-enumeration".into(),
                    witness: outcome.witness,
                };
            }
            Err(e) => usage.notes.push(format!("exhaustive enumeration skipped: {e}")),
        }
    }

    // a witness below a proven bound means a bug somewhere; never hide it
    assert!(
        best.value >= lower,
        "witness of weight {} contradicts lower bound {lower} for {:?}",
        best.value,
        code.id()
    );
    DistanceCertificate {
        code: code.id(),
        lower: LowerBound { value: lower, rules },
        exact: best.value == lower,
        upper: Some(best),
        budget: usage,
    }
}
