//! Antiprimitive BCH codes: construction, defining sets, dimension formulas,
//! the BCH bound, and the code equalities that raise the lower bound.

use std::sync::Arc;

use serde::Serialize;

use crate::cosets;
use crate::error::{Error, Result};
use crate::field::Tower;
use crate::poly::{self, Poly};

/// Enough to rebuild β: the big field's modulus and β's exponent relative to
/// its primitive element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaWitness {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u64>,
    pub exponent: u64,
}

#[derive(Debug, Clone)]
pub struct BchCode {
    pub q: u64,
    pub m: u32,
    pub n: u64,
    pub delta: u64,
    pub b: u64,
    pub defining_set: Vec<u64>,
    pub generator: Poly,
    pub dimension: u64,
    pub lcd: bool,
    pub beta: BetaWitness,
    tower: Arc<Tower>,
}

/// The JSON code descriptor.
#[derive(Debug, Clone, Serialize)]
pub struct CodeDescriptor<'a> {
    pub q: u64,
    pub m: u32,
    pub n: u64,
    pub delta: u64,
    pub b: u64,
    pub dimension: u64,
    pub defining_set: &'a [u64],
    pub generator: &'a Poly,
    pub lcd: bool,
}

/// Short identifier used inside certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeId {
    pub q: u64,
    pub m: u32,
    pub n: u64,
    pub delta: u64,
    pub b: u64,
    pub dimension: u64,
}

/// Builds 𝒞(q, q^m+1, δ, b) over a fresh tower.
pub fn build_code(q: u64, m: u32, delta: u64, b: u64) -> Result<BchCode> {
    let tower = Arc::new(Tower::antiprimitive(q, m)?);
    build_code_in(&tower, delta, b)
}

/// Builds the code over an existing tower, so several codes share β.
pub fn build_code_in(tower: &Arc<Tower>, delta: u64, b: u64) -> Result<BchCode> {
    let (q, n) = (tower.q(), tower.n());
    if delta < 2 || delta > n {
        return Err(Error::DeltaOutOfRange { delta, n });
    }
    let b = b % n;
    let generator = poly::lcm_minimal_polynomials(tower, b, delta)?;
    let defining_set = cosets::defining_set(q, n, b, delta);
    let degree = generator.degree().expect("generator is nonzero") as u64;
    assert_eq!(degree, defining_set.len() as u64, "generator degree vs defining set");
    let (_, rem) = Poly::x_n_minus_one(tower.small(), n as usize).divrem(&generator)?;
    if !rem.is_zero() {
        return Err(Error::InvalidWitness("generator does not divide x^n - 1".into()));
    }
    let big = tower.big();
    Ok(BchCode {
        q,
        m: tower.m(),
        n,
        delta,
        b,
        dimension: n - degree,
        lcd: generator.is_self_reciprocal(),
        defining_set,
        generator,
        beta: BetaWitness {
            p: big.p(),
            k: big.k(),
            modulus: big.modulus().to_vec(),
            exponent: tower.beta_exponent(),
        },
        tower: Arc::clone(tower),
    })
}

impl BchCode {
    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn descriptor(&self) -> CodeDescriptor<'_> {
        CodeDescriptor {
            q: self.q,
            m: self.m,
            n: self.n,
            delta: self.delta,
            b: self.b,
            dimension: self.dimension,
            defining_set: &self.defining_set,
            generator: &self.generator,
            lcd: self.lcd,
        }
    }

    pub fn id(&self) -> CodeId {
        CodeId {
            q: self.q,
            m: self.m,
            n: self.n,
            delta: self.delta,
            b: self.b,
            dimension: self.dimension,
        }
    }

    /// The designed window `{b, ..., b+δ-2}` mod n. Every element of the
    /// defining set is a q-power multiple of one of these.
    pub fn window(&self) -> Vec<u64> {
        (0..self.delta - 1).map(|j| (self.b + j) % self.n).collect()
    }

    /// `(x^n - 1) / g(x)`.
    pub fn parity_check_polynomial(&self) -> Poly {
        let (h, _) = Poly::x_n_minus_one(self.generator.ctx(), self.n as usize)
            .divrem(&self.generator)
            .expect("generator is nonzero");
        h
    }

    pub fn contains_exponent(&self, t: u64) -> bool {
        self.defining_set.binary_search(&(t % self.n)).is_ok()
    }
}

/// `1 +` the longest cyclic run of consecutive residues inside `defining_set`.
/// A defining set covering all of Z_n yields `n + 1`.
pub fn bch_bound_of(n: u64, defining_set: &[u64]) -> u64 {
    if defining_set.len() as u64 >= n {
        return n + 1;
    }
    let mut member = vec![false; n as usize];
    for &t in defining_set {
        member[t as usize] = true;
    }
    // start right after a gap so the scan never has to wrap twice
    let gap = member.iter().position(|&x| !x).expect("a gap exists");
    let (mut best, mut run) = (0u64, 0u64);
    for j in 1..=n as usize {
        if member[(gap + j) % n as usize] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best + 1
}

pub fn bch_bound(code: &BchCode) -> u64 {
    bch_bound_of(code.n, &code.defining_set)
}

/// A lower bound together with the rule that produced it and the hypothesis
/// that was checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleBound {
    pub rule: String,
    pub value: u64,
    pub hypothesis: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub bch_bound: u64,
    pub structural_bounds: Vec<RuleBound>,
    pub best_lower: u64,
}

/// Whether the window-extension equality `𝒞(δ, b) = 𝒞(δ+1, b)` is asserted for
/// `b >= 1`. The congruence alone does not suffice; `(q-1)b <= δ-1` keeps
/// `(b+δ-1)/q` inside the window.
fn extension_hypothesis_nonzero_b(q: u64, delta: u64, b: u64) -> bool {
    b >= 1 && (delta + b - 1) % q == 0 && (q - 1) * b <= delta - 1
}

fn extension_hypothesis_zero_b(q: u64, n: u64, delta: u64) -> bool {
    delta % q == 1 % q && n >= 2 * delta
}

/// The structural lower bounds that apply to `code`.
pub fn bound_report(code: &BchCode) -> BoundReport {
    let (q, n, delta, b) = (code.q, code.n, code.delta, code.b);
    let mut structural_bounds = Vec::new();
    if b == 0 {
        structural_bounds.push(RuleBound {
            rule: "symmetric-window".into(),
            value: 2 * (delta - 1),
            hypothesis: "b = 0; the defining set is closed under negation".into(),
        });
        if extension_hypothesis_zero_b(q, n, delta) {
            structural_bounds.push(RuleBound {
                rule: "extended-symmetric-window".into(),
                value: 2 * delta,
                hypothesis: format!("b = 0, delta = 1 mod q, n = {n} >= 2 delta"),
            });
        }
    } else if extension_hypothesis_nonzero_b(q, delta, b) {
        structural_bounds.push(RuleBound {
            rule: "extended-window".into(),
            value: delta + 1,
            hypothesis: format!("b = {b} >= 1, delta + b = 1 mod q, (q-1) b <= delta - 1"),
        });
    }
    let bch = bch_bound(code);
    let best_lower = structural_bounds.iter().map(|r| r.value).fold(bch, u64::max);
    BoundReport {
        bch_bound: bch,
        structural_bounds,
        best_lower,
    }
}

/// One asserted code equality, decided by comparing defining sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeEquality {
    pub left: (u64, u64),
    pub right: (u64, u64),
    pub holds: bool,
}

/// The equalities implied by the window-extension rules, each checked.
///
/// For b = 0 the two symmetric windows start at `n - (δ-2)` and `n - (δ-1)`,
/// i.e. they are `{-(δ-2), ..., δ-2}` and `{-(δ-1), ..., δ-1}` mod n.
pub fn structural_equalities(q: u64, m: u32, delta: u64, b: u64) -> Result<Vec<CodeEquality>> {
    let n = q
        .checked_pow(m)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::OutOfRange(format!("{q}^{m} + 1 overflows")))?;
    if delta < 2 || delta > n {
        return Err(Error::DeltaOutOfRange { delta, n });
    }
    let b = b % n;
    let pairs: Vec<((u64, u64), (u64, u64))> = if b == 0 {
        if !extension_hypothesis_zero_b(q, n, delta) {
            return Err(Error::HypothesisNotMet(format!(
                "need delta = 1 mod q and n >= 2 delta (q={q}, n={n}, delta={delta})"
            )));
        }
        vec![
            ((delta, 0), (delta + 1, 0)),
            ((delta, 0), (2 * (delta - 1), n - (delta - 2))),
            ((delta, 0), (2 * delta, n - (delta - 1))),
        ]
    } else {
        if !extension_hypothesis_nonzero_b(q, delta, b) {
            return Err(Error::HypothesisNotMet(format!(
                "need delta + b = 1 mod q and (q-1) b <= delta - 1 (q={q}, delta={delta}, b={b})"
            )));
        }
        vec![((delta, b), (delta + 1, b))]
    };
    Ok(pairs
        .into_iter()
        .map(|(left, right)| {
            let l = cosets::defining_set(q, n, left.1 % n, left.0);
            let r = cosets::defining_set(q, n, right.1 % n, right.0);
            CodeEquality {
                left,
                right,
                holds: l == r,
            }
        })
        .collect())
}

/// Closed-form dimension for b = 0 and b = 1 inside the ranges where the
/// formulas are known to be exact.
///
/// b = 0: `q^m - 2m(δ-2-⌊(δ-2)/q⌋)` for `3 <= δ <= q^⌊(m-1)/2⌋ + 3`, refused
/// when the expression is not positive (m = 1, and q = 2, m = 3, δ = 5).
///
/// b = 1: `q^m + 1 - 2m(δ-1-⌊(δ-1)/q⌋)` for `2 <= δ <= q^(h+1)` with
/// `h = ⌊(m-1)/2⌋`, m >= 3; for odd m the top slice `δ > q^(h+1) - q` uses
/// `q^m + 1 - 2m(q^(h+1) - q - ⌊(δ-1)/q⌋)`, refused at m = 3 once the window
/// reaches q^2 - q + 1, whose coset has size 2.
pub fn dimension_formula(q: u64, m: u32, delta: u64, b: u64) -> Result<u64> {
    let qm = q.pow(m) as i64;
    let two_m = 2 * m as i64;
    let d = delta as i64;
    let qi = q as i64;
    let out_of_range = |why: String| Err(Error::RangeUnsupported(why));
    let value = match b {
        0 => {
            let top = qi.pow((m - 1) / 2) + 3;
            if d < 3 || d > top {
                return out_of_range(format!("b = 0 needs 3 <= delta <= {top}"));
            }
            qm - two_m * (d - 2 - (d - 2) / qi)
        }
        1 => {
            if m < 3 {
                return out_of_range("b = 1 needs m >= 3".into());
            }
            let h = (m - 1) / 2;
            let top = qi.pow(h + 1);
            if d < 2 || d > top {
                return out_of_range(format!("b = 1 needs 2 <= delta <= {top}"));
            }
            if m % 2 == 1 && d > top - qi {
                if m == 3 && d - 1 >= qi * qi - qi + 1 {
                    return out_of_range("m = 3 window reaches the size-2 coset of q^2 - q + 1".into());
                }
                qm + 1 - two_m * (top - qi - (d - 1) / qi)
            } else {
                qm + 1 - two_m * (d - 1 - (d - 1) / qi)
            }
        }
        _ => return out_of_range("only b = 0 and b = 1 have closed forms".into()),
    };
    if value <= 0 {
        return out_of_range(format!("formula gives {value}"));
    }
    Ok(value as u64)
}
