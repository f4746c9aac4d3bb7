//! q-cyclotomic cosets modulo n = q^m + 1.
//!
//! Leaders come from two independent paths: orbit marking (the oracle) and a
//! closed-form predicate that excludes every `a = l q^(m-i) + h` with `h` in
//! an open rational interval. The predicate never touches floating point.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default ceiling on n for orbit enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 22;

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// The orbit of `s` under multiplication by `q` mod `n`, sorted.
pub fn coset(q: u64, n: u64, s: u64) -> Vec<u64> {
    let s = s % n;
    let mut members = vec![s];
    let mut cur = mul_mod(s, q, n);
    while cur != s {
        members.push(cur);
        cur = mul_mod(cur, q, n);
    }
    members.sort_unstable();
    members
}

/// Minimum of the coset containing `s`.
pub fn leader_of(q: u64, n: u64, s: u64) -> u64 {
    let s = s % n;
    let mut best = s;
    let mut cur = mul_mod(s, q, n);
    while cur != s {
        best = best.min(cur);
        cur = mul_mod(cur, q, n);
    }
    best
}

/// Distinct coset leaders met by the window `{b, ..., b+δ-2}` mod n, ascending.
pub fn window_leaders(q: u64, n: u64, b: u64, delta: u64) -> Vec<u64> {
    let span = delta.saturating_sub(1).min(n);
    let mut leaders: Vec<u64> = (0..span).map(|j| leader_of(q, n, (b % n + j) % n)).collect();
    leaders.sort_unstable();
    leaders.dedup();
    leaders
}

/// Union of the cosets met by the window `{b, ..., b+δ-2}` mod n, sorted.
pub fn defining_set(q: u64, n: u64, b: u64, delta: u64) -> Vec<u64> {
    let mut set: Vec<u64> = window_leaders(q, n, b, delta)
        .into_iter()
        .flat_map(|l| coset(q, n, l))
        .collect();
    set.sort_unstable();
    set
}

/// The coset partition of Z_n for n = q^m + 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetReport {
    pub q: u64,
    pub m: u32,
    pub n: u64,
    pub leaders: Vec<u64>,
    #[serde(skip)]
    pub coset_of: BTreeMap<u64, Vec<u64>>,
    #[serde(rename = "sizes")]
    pub size_of: BTreeMap<u64, usize>,
}

impl CosetReport {
    pub fn is_leader(&self, a: u64) -> bool {
        self.size_of.contains_key(&a)
    }
}

/// Leaders by marking every orbit of Z_n.
pub fn leaders_brute_force(q: u64, m: u32, budget: u64) -> Result<CosetReport> {
    let n = antiprimitive_length(q, m)?;
    if n > budget {
        return Err(Error::BudgetExceeded {
            needed: n as u128,
            budget: budget as u128,
        });
    }
    let mut seen = vec![false; n as usize];
    let mut leaders = Vec::new();
    let mut coset_of = BTreeMap::new();
    let mut size_of = BTreeMap::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let members = coset(q, n, s);
        for &x in &members {
            seen[x as usize] = true;
        }
        leaders.push(s);
        size_of.insert(s, members.len());
        coset_of.insert(s, members);
    }
    Ok(CosetReport {
        q,
        m,
        n,
        leaders,
        coset_of,
        size_of,
    })
}

fn antiprimitive_length(q: u64, m: u32) -> Result<u64> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    q.checked_pow(m)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::OutOfRange(format!("{q}^{m} + 1 overflows")))
}

/// Which clause of the closed-form criterion decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LeaderRule {
    RangeExceeded,
    ExcludedForm { i: u32, l: u64, h: i64 },
    Leader,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LeaderVerdict {
    pub a: u64,
    pub is_leader: bool,
    pub rule: LeaderRule,
    pub brute_force_agrees: Option<bool>,
}

/// Largest candidate leader allowed by the range clause.
pub fn leader_range_bound(q: u64, m: u32) -> u64 {
    let n = q.pow(m) + 1;
    if q % 2 == 0 {
        (q.pow(m + 1) + q) / (2 * (q + 1))
    } else {
        n / 2
    }
}

/// Upper limit on `l` in the excluded forms for a given `i`.
fn l_max(q: u64, i: u32) -> u64 {
    let qi = q.pow(i);
    if q % 2 == 0 {
        (qi - 1) * q / (2 * (q + 1))
    } else {
        (qi - 1) / 2
    }
}

/// Whether `a = l·q^(m-i) + h` with `h` strictly inside
/// `(-l(q^(m-i)-1)/(q^i+1), l(q^(m-i)+1)/(q^i-1))`.
fn excluded_by(q: u64, m: u32, i: u32, l: u64, a: u64) -> Option<i64> {
    let big_q = q.pow(m - i) as i128;
    let qi = q.pow(i) as i128;
    let l = l as i128;
    let h = a as i128 - l * big_q;
    let lower_ok = -l * (big_q - 1) < h * (qi + 1);
    let upper_ok = h * (qi - 1) < l * (big_q + 1);
    (lower_ok && upper_ok).then_some(h as i64)
}

/// Closed-form leader test for `0 <= a <= q^m`.
///
/// `h` ranges over less than `q^(m-i)/2 + 1` on either side of zero, so `l`
/// is pinned to `floor(a/q^(m-i))` or the ceiling; only those two are tried.
pub fn is_leader_closed_form(q: u64, m: u32, a: u64) -> Result<LeaderVerdict> {
    let n = antiprimitive_length(q, m)?;
    if a >= n {
        return Err(Error::OutOfRange(format!("a = {a} exceeds q^m = {}", n - 1)));
    }
    let verdict = |is_leader, rule| LeaderVerdict {
        a,
        is_leader,
        rule,
        brute_force_agrees: None,
    };
    if a > leader_range_bound(q, m) {
        return Ok(verdict(false, LeaderRule::RangeExceeded));
    }
    for i in 1..m {
        let big_q = q.pow(m - i);
        let lmax = l_max(q, i);
        let lo = a / big_q;
        let hi = a.div_ceil(big_q);
        let mut candidates = vec![lo];
        if hi != lo {
            candidates.push(hi);
        }
        for l in candidates {
            if l == 0 || l > lmax {
                continue;
            }
            if let Some(h) = excluded_by(q, m, i, l, a) {
                return Ok(verdict(false, LeaderRule::ExcludedForm { i, l, h }));
            }
        }
    }
    Ok(verdict(true, LeaderRule::Leader))
}

/// The closed-form verdict with the orbit-marking oracle attached.
pub fn leader_verdict_checked(report: &CosetReport, a: u64) -> Result<LeaderVerdict> {
    let mut v = is_leader_closed_form(report.q, report.m, a)?;
    v.brute_force_agrees = Some(v.is_leader == report.is_leader(a));
    Ok(v)
}

/// The four largest nonzero leaders for m = 2, largest first.
pub fn largest_leaders_m2(q: u64) -> Result<[u64; 4]> {
    if q % 2 == 0 {
        if q == 2 {
            return Err(Error::Unsupported("q = 2 has fewer than four nonzero leaders at m = 2".into()));
        }
        let d = |i: u64| (q * q - 3 * q + 6 - 2 * i) / 2;
        Ok([(q * q - q) / 2, d(2), d(3), d(4)])
    } else {
        if q < 5 {
            return Err(Error::Unsupported(format!("q = {q} is too small at m = 2")));
        }
        Ok([
            (q * q + 1) / 2,
            (q - 1) * (q - 1) / 2,
            (q * q - 2 * q - 1) / 2,
            (q - 3) * (q - 1) / 2,
        ])
    }
}

fn two_adic(mut v: u64) -> u32 {
    let mut e = 0;
    while v % 2 == 0 {
        v /= 2;
        e += 1;
    }
    e
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(a^u + 1, a^v - 1)` in closed form.
pub fn gcd_special(a: u64, u: u64, v: u64) -> u128 {
    assert!(a >= 2 && u >= 1 && v >= 1);
    if two_adic(v) > two_adic(u) {
        (a as u128).pow(gcd(u as u128, v as u128) as u32) + 1
    } else if a % 2 == 0 {
        1
    } else {
        2
    }
}
