//! Dense univariate polynomials over a [`FieldCtx`], and minimal polynomials
//! of powers of β pulled back to GF(q).

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::cosets;
use crate::error::{Error, Result};
use crate::field::{Elt, Embedding, FieldCtx, Tower};

/// Polynomial with coefficients lowest degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<Elt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{:?}](", self.ctx)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c.index())?;
        }
        write!(f, ")")
    }
}

impl Poly {
    pub fn new(ctx: &FieldCtx, mut coeffs: Vec<Elt>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Coefficients given as signed integers in the prime subfield.
    pub fn from_ints(ctx: &FieldCtx, ints: &[i64]) -> Poly {
        Poly::new(ctx, ints.iter().map(|&v| ctx.from_i64(v)).collect())
    }

    /// Sparse constructor from `(exponent, coefficient)` terms.
    pub fn from_terms(ctx: &FieldCtx, terms: &[(usize, Elt)]) -> Poly {
        let len = terms.iter().map(|&(e, _)| e + 1).max().unwrap_or(0);
        let mut coeffs = vec![Elt::ZERO; len];
        for &(e, c) in terms {
            coeffs[e] = ctx.add(coeffs[e], c);
        }
        Poly::new(ctx, coeffs)
    }

    pub fn zero(ctx: &FieldCtx) -> Poly {
        Poly::new(ctx, Vec::new())
    }

    pub fn one(ctx: &FieldCtx) -> Poly {
        Poly::new(ctx, vec![Elt::ONE])
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(ctx: &FieldCtx, n: usize) -> Poly {
        let mut coeffs = vec![Elt::ZERO; n + 1];
        coeffs[0] = ctx.neg(Elt::ONE);
        coeffs[n] = ctx.add(coeffs[n], Elt::ONE);
        Poly::new(ctx, coeffs)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elt {
        self.coeffs.get(i).copied().unwrap_or(Elt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.ctx;
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.ctx;
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect(),
        )
    }

    pub fn scale(&self, c: Elt) -> Poly {
        let f = &self.ctx;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.ctx;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elt::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// Quotient and remainder.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.ctx;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.coeffs[db]);
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quo = vec![Elt::ZERO; rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            let shift = top - db;
            quo[shift] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(factor, d));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(f, quo), Poly::new(f, rem)))
    }

    /// Horner evaluation at a point of the coefficient field.
    pub fn eval(&self, x: Elt) -> Elt {
        let f = &self.ctx;
        self.coeffs
            .iter()
            .rev()
            .fold(Elt::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluation at a point of an extension field, mapping coefficients
    /// through `emb`.
    pub fn eval_in(&self, emb: &Embedding, x: Elt) -> Elt {
        let big = emb.target();
        self.coeffs
            .iter()
            .rev()
            .fold(Elt::ZERO, |acc, &c| big.add(big.mul(acc, x), emb.map(c)))
    }

    /// `f0^-1 x^deg f(1/x)`.
    pub fn reciprocal(&self) -> Result<Poly> {
        let f0 = *self.coeffs.first().ok_or(Error::ZeroConstantTerm)?;
        if f0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = self.ctx.inv(f0);
        let rev = self.coeffs.iter().rev().map(|&c| self.ctx.mul(c, inv)).collect();
        Ok(Poly::new(&self.ctx, rev))
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.reciprocal().is_ok_and(|r| r == *self)
    }

    /// Polynomial over `emb.target()` with the coefficients mapped across.
    pub fn lift(&self, emb: &Embedding) -> Poly {
        Poly::new(emb.target(), self.coeffs.iter().map(|&c| emb.map(c)).collect())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<Vec<u64>> = self.coeffs.iter().map(|&c| self.ctx.coeffs(c)).collect();
        let mut st = s.serialize_struct("Poly", 3)?;
        st.serialize_field("p", &self.ctx.p())?;
        st.serialize_field("k", &self.ctx.k())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// `∏_{j ∈ C_s} (x - β^j)`, with coefficients certified to lie in GF(q) and
/// pulled back to the small field.
pub fn minimal_polynomial(tower: &Tower, s: u64) -> Result<Poly> {
    let members = cosets::coset(tower.q(), tower.n(), s % tower.n());
    product_of_roots(tower, &members)
}

fn product_of_roots(tower: &Tower, exponents: &[u64]) -> Result<Poly> {
    let big = tower.big();
    let mut acc = vec![Elt::ONE];
    for &j in exponents {
        let root = tower.beta_pow(j as i64);
        let neg_root = big.neg(root);
        let mut next = vec![Elt::ZERO; acc.len() + 1];
        for (i, &c) in acc.iter().enumerate() {
            next[i + 1] = big.add(next[i + 1], c);
            next[i] = big.add(next[i], big.mul(c, neg_root));
        }
        acc = next;
    }
    let emb = tower.embedding();
    let small: Vec<Elt> = acc
        .iter()
        .map(|&c| emb.pull_back(c).ok_or(Error::CoefficientNotInSubfield))
        .collect::<Result<_>>()?;
    Ok(Poly::new(tower.small(), small))
}

/// The BCH generator for the window `{b, ..., b+δ-2}` mod n: one minimal
/// polynomial per distinct coset, multiplied in ascending leader order.
pub fn lcm_minimal_polynomials(tower: &Tower, b: u64, delta: u64) -> Result<Poly> {
    let n = tower.n();
    if delta < 2 || delta > n {
        return Err(Error::DeltaOutOfRange { delta, n });
    }
    let leaders = cosets::window_leaders(tower.q(), n, b, delta);
    let mut g = Poly::one(tower.small());
    for leader in leaders {
        g = g.mul(&minimal_polynomial(tower, leader)?);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_of_one() {
        let t = Tower::antiprimitive(2, 4).unwrap();
        let m0 = minimal_polynomial(&t, 0).unwrap();
        assert_eq!(m0, Poly::from_ints(t.small(), &[-1, 1]));
    }

    #[test]
    fn minimal_polynomial_degrees_match_coset_sizes() {
        let t = Tower::antiprimitive(2, 4).unwrap();
        let m1 = minimal_polynomial(&t, 1).unwrap();
        assert_eq!(m1.degree(), Some(8));
        // every root of m1 is a conjugate of β
        for j in [1, 2, 4, 8, 9, 13, 15, 16] {
            assert!(m1.eval_in(t.embedding(), t.beta_pow(j)).is_zero());
        }
        assert!(!m1.eval_in(t.embedding(), t.beta_pow(3)).is_zero());

        let t = Tower::antiprimitive(3, 2).unwrap();
        let m1 = minimal_polynomial(&t, 1).unwrap();
        assert_eq!(m1.degree(), Some(4));
        // brute-force oracle: the expanded product divides x^10 - 1
        let (_, r) = Poly::x_n_minus_one(t.small(), 10).divrem(&m1).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn generator_degrees() {
        let t = Tower::antiprimitive(4, 2).unwrap();
        assert_eq!(lcm_minimal_polynomials(&t, 0, 4).unwrap().degree(), Some(9));
        assert_eq!(lcm_minimal_polynomials(&t, 0, 2).unwrap().degree(), Some(1));
        let t = Tower::antiprimitive(2, 4).unwrap();
        assert_eq!(lcm_minimal_polynomials(&t, 1, 2).unwrap().degree(), Some(8));
        assert!(matches!(
            lcm_minimal_polynomials(&t, 1, 1),
            Err(Error::DeltaOutOfRange { .. })
        ));
    }

    #[test]
    fn reciprocal_of_small_binary_poly() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        let f = Poly::from_ints(&f2, &[1, 1, 0, 1]);
        assert_eq!(f.reciprocal().unwrap(), Poly::from_ints(&f2, &[1, 0, 1, 1]));
        assert_eq!(f.reciprocal().unwrap().reciprocal().unwrap(), f);
        let x_minus_one = Poly::from_ints(&f2, &[-1, 1]);
        assert!(x_minus_one.is_self_reciprocal());
        assert_eq!(
            Poly::from_ints(&f2, &[0, 1]).reciprocal().unwrap_err(),
            Error::ZeroConstantTerm
        );
    }

    #[test]
    fn reciprocal_normalizes_by_constant_term() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        // 2 + x  ->  2^-1 (2x + 1) = x + 2
        let f = Poly::from_ints(&f3, &[2, 1]);
        assert_eq!(f.reciprocal().unwrap(), Poly::from_ints(&f3, &[2, 1]));
        let g = Poly::from_ints(&f3, &[1, 2, 0, 1]);
        assert_eq!(g.reciprocal().unwrap().reciprocal().unwrap(), g);
    }

    #[test]
    fn divrem_round_trip() {
        let f = FieldCtx::new(5, 1).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 3, 4, 0, 1]);
        let b = Poly::from_ints(&f, &[3, 0, 2]);
        let (qq, r) = a.divrem(&b).unwrap();
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(a.divrem(&Poly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn eval_zero_polynomial() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(Poly::zero(&f).eval(f.primitive()), Elt::ZERO);
    }

    #[test]
    fn quadrinomial_vanishes_at_one() {
        let f = FieldCtx::new(3, 1).unwrap();
        for m in 2..6u32 {
            let qm = 3usize.pow(m);
            let g1 = Poly::from_terms(
                &f,
                &[
                    (qm, f.one()),
                    ((qm + 1) / 2, f.from_i64(-1)),
                    ((qm - 1) / 2, f.one()),
                    (0, f.from_i64(-1)),
                ],
            );
            assert_eq!(g1.weight(), 4);
            assert!(g1.eval(f.one()).is_zero());
        }
    }

    #[test]
    fn sextic_divisor_of_x82_minus_one() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let f = Poly::from_ints(&f3, &[1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, -1, 1]);
        let (_, r) = Poly::x_n_minus_one(&f3, 82).divrem(&f).unwrap();
        assert!(r.is_zero());
        // roots of f are 82nd roots of unity inside GF(3^8)
        let t = Tower::antiprimitive(3, 4).unwrap();
        let zero_count = (0..82).filter(|&e| f.eval_in(t.embedding(), t.beta_pow(e)).is_zero()).count();
        assert_eq!(zero_count, 16);
    }

    #[test]
    fn json_layout() {
        let f = FieldCtx::new(3, 2).unwrap();
        let p = Poly::new(&f, vec![f.primitive(), Elt::ONE]);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["p"], 3);
        assert_eq!(v["k"], 2);
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 2);
        assert_eq!(v["coeffs"][1], serde_json::json!([1, 0]));
    }
}
