//! Explicit low-weight codewords built from the structure of U_n.
//!
//! Each constructor checks its own hypotheses, builds the word, and verifies
//! it against the full defining set before returning it.

use crate::bch::BchCode;
use crate::error::{Error, Result};
use crate::field::Elt;
use crate::poly::Poly;

use super::{verify_witness, Witness};

/// Sparse divisors of `x^82 - 1` over GF(3), as (exponent, coefficient).
pub const DIVISOR_PERIOD: u64 = 82;
pub const EIGHT_TERM_DIVISOR: [(usize, i64); 8] =
    [(34, 1), (33, 1), (27, -1), (20, -1), (14, 1), (7, 1), (1, -1), (0, -1)];
pub const SIX_TERM_DIVISOR: [(usize, i64); 6] = [(16, 1), (15, -1), (11, 1), (5, 1), (1, -1), (0, 1)];

fn checked(code: &BchCode, w: Witness) -> Result<Witness> {
    verify_witness(code, &w)?;
    Ok(w)
}

fn all_ones(positions: impl IntoIterator<Item = u64>) -> Result<Witness> {
    Witness::from_terms(positions.into_iter().map(|i| (i, Elt::ONE)).collect())
}

fn from_poly(p: &Poly) -> Result<Witness> {
    Witness::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64, c))
            .collect(),
    )
}

/// All-ones word on the order-`r` subgroup of U_n.
pub fn witness_subgroup(code: &BchCode, r: u64) -> Result<Witness> {
    let n = code.n;
    if r < 2 || n % r != 0 {
        return Err(Error::HypothesisNotMet(format!("r = {r} must be >= 2 and divide n = {n}")));
    }
    let step = n / r;
    checked(code, all_ones((0..r).map(|i| i * step))?)
}

/// All-ones word on the order-`r` subgroup and its coset through β.
pub fn witness_subgroup_pair(code: &BchCode, r: u64) -> Result<Witness> {
    let n = code.n;
    if r < 2 || n % r != 0 || r == n {
        return Err(Error::HypothesisNotMet(format!("r = {r} must be a proper divisor of n = {n}")));
    }
    let step = n / r;
    checked(code, all_ones((0..r).flat_map(|i| [i * step, i * step + 1]))?)
}

/// Weight `2(q^l0 + 1)` in characteristic 2, with `m = l0 (2t+1)`, `t >= 1`,
/// `δ = q^l0 + 1`, `b = 0`.
pub fn witness_order_divides(code: &BchCode, l0: u32) -> Result<Witness> {
    let (q, m) = (code.q, code.m);
    let odd_multiple = l0 >= 1 && m % l0 == 0 && (m / l0) % 2 == 1 && m / l0 >= 3;
    let r = q.checked_pow(l0).map(|v| v + 1);
    if q % 2 != 0 || code.b != 0 || !odd_multiple || r != Some(code.delta) {
        return Err(Error::HypothesisNotMet(format!(
            "need even q, b = 0, m an odd multiple (>= 3) of l0 = {l0}, delta = q^l0 + 1"
        )));
    }
    witness_subgroup_pair(code, code.delta)
}

/// The five fifth roots of unity, when 5 divides n.
pub fn witness_fifth_roots(code: &BchCode) -> Result<Witness> {
    if code.n % 5 != 0 {
        return Err(Error::HypothesisNotMet(format!("5 does not divide n = {}", code.n)));
    }
    witness_subgroup(code, 5)
}

/// `(x^(n/2) + 1)(x^(n/2 - 1) - 1)` for odd q, δ = 3, b = 0: the word with
/// support `{β^-1, -1, -β^-1, 1}`.
pub fn witness_quadrinomial(code: &BchCode) -> Result<Witness> {
    if code.q % 2 == 0 || code.delta != 3 || code.b != 0 {
        return Err(Error::HypothesisNotMet("need odd q, delta = 3, b = 0".into()));
    }
    let ctx = code.tower().small();
    let half = (code.n / 2) as usize;
    let one = ctx.one();
    let minus = ctx.from_i64(-1);
    let a = Poly::from_terms(ctx, &[(half, one), (0, one)]);
    let b = Poly::from_terms(ctx, &[(half - 1, one), (0, minus)]);
    checked(code, from_poly(&a.mul(&b))?)
}

/// `(x^(n/2) + 1)(x^(n/4) + 1)(x^((n-4)/4) - 1)` for q = 3, δ = 4, b = 0, m odd.
pub fn witness_eight_term(code: &BchCode) -> Result<Witness> {
    if code.q != 3 || code.delta != 4 || code.b != 0 || code.m % 2 == 0 {
        return Err(Error::HypothesisNotMet("need q = 3, delta = 4, b = 0, m odd".into()));
    }
    let ctx = code.tower().small();
    let n = code.n as usize;
    let one = ctx.one();
    let factors = [
        Poly::from_terms(ctx, &[(n / 2, one), (0, one)]),
        Poly::from_terms(ctx, &[(n / 4, one), (0, one)]),
        Poly::from_terms(ctx, &[((n - 4) / 4, one), (0, ctx.from_i64(-1))]),
    ];
    let product = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| acc.mul(f));
    checked(code, from_poly(&product)?)
}

/// Lifts a sparse `f` with `f | x^period - 1` to length n by sending
/// exponent e to `(s e mod period) (n / period)`, trying units s in order.
pub fn witness_polynomial_divisor(code: &BchCode, f: &Poly, period: u64) -> Result<Witness> {
    let n = code.n;
    let small = code.tower().small();
    if f.ctx().order() != small.order() || f.ctx().p() != small.p() {
        return Err(Error::CoefficientNotInSubfield);
    }
    if period == 0 || n % period != 0 {
        return Err(Error::HypothesisNotMet(format!("period {period} does not divide n = {n}")));
    }
    if f.degree().is_none_or(|d| d as u64 >= period) {
        return Err(Error::HypothesisNotMet("f must be nonzero of degree below the period".into()));
    }
    let scale = n / period;
    let terms: Vec<(u64, Elt)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, &c)| (e as u64, c))
        .collect();
    let lift = |s: u64| {
        Witness::from_terms(terms.iter().map(|&(e, c)| ((e * s % period) * scale, c)).collect())
    };
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    for s in (1..period).filter(|&s| gcd(s, period) == 1) {
        let w = lift(s)?;
        if verify_witness(code, &w).is_ok() {
            return Ok(w);
        }
    }
    // report the first defining exponent where the plain lift fails
    let w = lift(1)?;
    let tower = code.tower();
    let big = tower.big();
    for &t in &code.defining_set {
        let v = w.support.iter().zip(&w.coeffs).fold(Elt::ZERO, |acc, (&i, &c)| {
            let u = tower.beta_pow(((i as u128 * t as u128) % n as u128) as i64);
            big.add(acc, big.mul(tower.embedding().map(c), u))
        });
        if !v.is_zero() {
            return Err(Error::RootCheckFailed(t));
        }
    }
    unreachable!("the plain lift verified but was not returned")
}

/// Weight 6 in `𝒞(2, 2^m+1, 3, 0)` for even m:
/// `{1, β, β^h, β^t, β^(h-1+t), β^(h+t)}` with `β^t = (1+β+β^h)/(1+β^(h-1)+β^h)`.
pub fn witness_binary_weight6(code: &BchCode) -> Result<Witness> {
    if code.q != 2 || code.delta != 3 || code.b != 0 || code.m % 2 != 0 {
        return Err(Error::HypothesisNotMet("need q = 2, delta = 3, b = 0, m even".into()));
    }
    let tower = code.tower();
    let big = tower.big();
    let n = code.n;
    let two_m = n - 1;
    let b = |e: u64| tower.beta_pow(e as i64);
    for h in 3..two_m {
        if h == (two_m + 2) / 2 {
            continue;
        }
        let num = big.add(big.add(Elt::ONE, b(1)), b(h));
        let den = big.add(big.add(Elt::ONE, b(h - 1)), b(h));
        if num.is_zero() || den.is_zero() {
            continue;
        }
        let Some(t) = tower.unit_log(big.div(num, den)) else {
            continue;
        };
        let exps = [0, 1, h, t, (h - 1 + t) % n, (h + t) % n];
        let mut sorted = exps;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let w = all_ones(exps)?;
        if verify_witness(code, &w).is_ok() {
            return Ok(w);
        }
    }
    Err(Error::NotFound("no admissible h gave a weight-6 word".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bch::build_code;
    use crate::distance::divisible_by_generator;

    fn ok_with_weight(code: &BchCode, w: Result<Witness>, weight: u64) {
        let w = w.unwrap();
        assert_eq!(w.weight(), weight);
        assert!(divisible_by_generator(code, &w));
    }

    #[test]
    fn order_divides_family() {
        let c = build_code(2, 3, 3, 0).unwrap();
        ok_with_weight(&c, witness_order_divides(&c, 1), 6);
        let c = build_code(2, 6, 5, 0).unwrap();
        ok_with_weight(&c, witness_order_divides(&c, 2), 10);
        let c = build_code(4, 3, 5, 0).unwrap();
        ok_with_weight(&c, witness_order_divides(&c, 1), 10);
        let c = build_code(3, 3, 4, 0).unwrap();
        assert!(matches!(witness_order_divides(&c, 1), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn quadrinomial_family() {
        for (q, m) in [(3, 3), (3, 4), (9, 2), (5, 3)] {
            let c = build_code(q, m, 3, 0).unwrap();
            ok_with_weight(&c, witness_quadrinomial(&c), 4);
        }
        let c = build_code(4, 2, 3, 0).unwrap();
        assert!(witness_quadrinomial(&c).is_err());
    }

    #[test]
    fn binary_weight_six_even_m() {
        for m in [4, 6, 8] {
            let c = build_code(2, m, 3, 0).unwrap();
            ok_with_weight(&c, witness_binary_weight6(&c), 6);
        }
    }

    #[test]
    fn fifth_roots() {
        for (q, m, delta) in [(2, 6, 2), (3, 2, 3), (3, 6, 3)] {
            let c = build_code(q, m, delta, 1).unwrap();
            ok_with_weight(&c, witness_fifth_roots(&c), 5);
        }
        let c = build_code(2, 4, 2, 1).unwrap();
        assert!(witness_fifth_roots(&c).is_err());
    }

    #[test]
    fn eight_term_odd_m() {
        for m in [3, 5] {
            let c = build_code(3, m, 4, 0).unwrap();
            ok_with_weight(&c, witness_eight_term(&c), 8);
        }
    }

    #[test]
    fn sparse_divisors_lift() {
        let ctx = crate::field::FieldCtx::new(3, 1).unwrap();
        let g4 = Poly::from_terms(&ctx, &EIGHT_TERM_DIVISOR.map(|(e, c)| (e, ctx.from_i64(c))));
        let f6 = Poly::from_terms(&ctx, &SIX_TERM_DIVISOR.map(|(e, c)| (e, ctx.from_i64(c))));
        let c = build_code(3, 4, 4, 0).unwrap();
        ok_with_weight(&c, witness_polynomial_divisor(&c, &g4, DIVISOR_PERIOD), 8);
        let c = build_code(3, 4, 3, 1).unwrap();
        ok_with_weight(&c, witness_polynomial_divisor(&c, &f6, DIVISOR_PERIOD), 6);
    }

    #[test]
    fn non_divisor_fails_root_check() {
        let ctx = crate::field::FieldCtx::new(3, 1).unwrap();
        let f = Poly::from_terms(&ctx, &[(3, ctx.one()), (1, ctx.one()), (0, ctx.one())]);
        let c = build_code(3, 4, 3, 1).unwrap();
        assert!(matches!(
            witness_polynomial_divisor(&c, &f, DIVISOR_PERIOD),
            Err(Error::RootCheckFailed(_))
        ));
    }
}
