//! Elementary symmetric polynomials on the unit circle U_{q+1} ⊂ GF(q^2),
//! complete homogeneous polynomials, generalized Vandermonde determinants,
//! block sets, and low-weight counts of Zetterberg codes.
//!
//! The unit circle of GF(q^2) is the n = q + 1 case of [`Tower`], so a
//! [`UnitCircle`] is just a tower with m = 1.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elt, FieldCtx, Tower};

/// `C(n, r)` saturating at `u128::MAX`.
pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `σ_{l,r}(values)`: the coefficient of `x^(l-r)` in `∏ (x + u_i)`.
pub fn esp(f: &FieldCtx, values: &[Elt], r: usize) -> Result<Elt> {
    if r > values.len() {
        return Err(Error::ROutOfRange {
            r,
            len: values.len(),
        });
    }
    Ok(esp_all(f, values)[r])
}

/// All of `σ_{l,0}, ..., σ_{l,l}` at once.
pub fn esp_all(f: &FieldCtx, values: &[Elt]) -> Vec<Elt> {
    // e[r] after processing a prefix is σ_r of that prefix
    let mut e = vec![Elt::ZERO; values.len() + 1];
    e[0] = Elt::ONE;
    for (i, &u) in values.iter().enumerate() {
        for r in (1..=i + 1).rev() {
            e[r] = f.add(e[r], f.mul(e[r - 1], u));
        }
    }
    e
}

/// `P_{r,l}(x_1, ..., x_l)` by `P_{r,l} = x_l P_{r-1,l} + P_{r,l-1}`.
pub fn complete_homogeneous(f: &FieldCtx, r: i64, values: &[Elt]) -> Elt {
    assert!(!values.is_empty(), "P_(r,l) needs l >= 1");
    if r < 0 {
        return Elt::ZERO;
    }
    let r = r as usize;
    // row[j] = P_{j, l'} for the current prefix length l'
    let x1 = values[0];
    let mut row: Vec<Elt> = (0..=r).map(|j| f.pow(x1, j as u64)).collect();
    for &x in &values[1..] {
        for j in 1..=r {
            row[j] = f.add(f.mul(x, row[j - 1]), row[j]);
        }
    }
    row[r]
}

fn ensure_distinct_nonzero(values: &[Elt]) -> Result<()> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.first().is_some_and(|v| v.is_zero()) {
        return Err(Error::RepeatedValue);
    }
    Ok(())
}

/// Determinant by Gaussian elimination.
pub fn determinant(f: &FieldCtx, mut rows: Vec<Vec<Elt>>) -> Elt {
    let size = rows.len();
    let mut det = Elt::ONE;
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
            return Elt::ZERO;
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = f.neg(det);
        }
        let pv = rows[col][col];
        det = f.mul(det, pv);
        let inv = f.inv(pv);
        for r in col + 1..size {
            let factor = f.mul(rows[r][col], inv);
            if factor.is_zero() {
                continue;
            }
            for c in col..size {
                let t = f.mul(factor, rows[col][c]);
                rows[r][c] = f.sub(rows[r][c], t);
            }
        }
    }
    det
}

/// `det (x_j^{e_i})` for the given exponent rows (negative exponents allowed).
pub fn gen_vandermonde_det(f: &FieldCtx, exponent_rows: &[i64], values: &[Elt]) -> Result<Elt> {
    ensure_distinct_nonzero(values)?;
    if exponent_rows.len() != values.len() {
        return Err(Error::OutOfRange(format!(
            "{} exponent rows for {} values",
            exponent_rows.len(),
            values.len()
        )));
    }
    let rows = exponent_rows
        .iter()
        .map(|&e| values.iter().map(|&x| f.pow_i(x, e)).collect())
        .collect();
    Ok(determinant(f, rows))
}

/// `det M_{η,l}`: rows `x^-l, ..., x^-1, x^1, ..., x^η`.
pub fn m_matrix_det(f: &FieldCtx, eta: usize, l: usize, values: &[Elt]) -> Result<Elt> {
    if l < 1 || l > eta || values.len() != eta + l {
        return Err(Error::OutOfRange(format!(
            "M needs 1 <= l <= eta and eta + l values (eta={eta}, l={l}, {} values)",
            values.len()
        )));
    }
    let exps: Vec<i64> = (-(l as i64)..0).chain(1..=eta as i64).collect();
    gen_vandermonde_det(f, &exps, values)
}

/// Plain Vandermonde determinant, rows `x^0, ..., x^(k-1)`.
pub fn vandermonde_det(f: &FieldCtx, values: &[Elt]) -> Result<Elt> {
    let exps: Vec<i64> = (0..values.len() as i64).collect();
    gen_vandermonde_det(f, &exps, values)
}

/// U_{q+1} inside GF(q^2): the tower with m = 1.
pub struct UnitCircle {
    tower: Tower,
}

impl UnitCircle {
    pub fn new(q: u64) -> Result<UnitCircle> {
        Ok(UnitCircle {
            tower: Tower::antiprimitive(q, 1)?,
        })
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    /// Order of the circle, q + 1.
    pub fn order(&self) -> u64 {
        self.tower.n()
    }

    pub fn field(&self) -> &FieldCtx {
        self.tower.big()
    }

    pub fn generator(&self) -> Elt {
        self.tower.beta()
    }

    /// `γ^e`.
    pub fn element(&self, e: u64) -> Elt {
        self.tower.beta_pow(e as i64)
    }

    pub fn elements_of(&self, exponents: &[u64]) -> Vec<Elt> {
        exponents.iter().map(|&e| self.element(e)).collect()
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }
}

/// Calls `visit` on every k-subset of `0..n` in colexicographic order.
/// Stops early when `visit` returns false.
pub fn for_each_subset_colex(n: u64, k: usize, mut visit: impl FnMut(&[u64]) -> bool) {
    if k as u64 > n {
        return;
    }
    let mut c: Vec<u64> = (0..k as u64).collect();
    loop {
        if !visit(&c) {
            return;
        }
        // advance: find the lowest index that can move up
        let mut i = 0;
        while i < k && (if i + 1 < k { c[i] + 1 == c[i + 1] } else { c[i] + 1 == n }) {
            i += 1;
        }
        if i == k {
            return;
        }
        c[i] += 1;
        for (j, slot) in c.iter_mut().enumerate().take(i) {
            *slot = j as u64;
        }
    }
}

/// k-subsets whose largest element is exactly `top`, in colex order.
fn subsets_with_top(top: u64, k: usize, mut visit: impl FnMut(&[u64])) {
    let mut buf = vec![0u64; k];
    buf[k - 1] = top;
    for_each_subset_colex(top, k - 1, |lower| {
        buf[..k - 1].copy_from_slice(lower);
        visit(&buf);
        true
    });
}

/// Blocks of `σ_{k,k-l} = 0` over U_{q+1}, as exponent tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSet {
    pub q: u64,
    pub k: usize,
    pub l: usize,
    pub blocks: Vec<Vec<u64>>,
    pub cardinality: u64,
}

/// The JSON count record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCount {
    pub q: u64,
    pub k: usize,
    pub l: usize,
    pub cardinality: u64,
}

impl BlockSet {
    pub fn count(&self) -> BlockCount {
        BlockCount {
            q: self.q,
            k: self.k,
            l: self.l,
            cardinality: self.cardinality,
        }
    }

    /// One block per CSV row, exponents ascending.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).flexible(true).from_writer(out);
        for block in &self.blocks {
            w.write_record(block.iter().map(|e| e.to_string()))
                .map_err(|e| Error::OutOfRange(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::OutOfRange(e.to_string()))?;
        Ok(())
    }

    /// Over all t-subsets of the point set, the fewest and most blocks
    /// containing one. A t-design is the case min = max.
    pub fn design_statistic(&self, t: usize) -> (u64, u64) {
        let points = self.q + 1;
        let mut counts: HashMap<Vec<u64>, u64> = HashMap::new();
        for block in &self.blocks {
            for_each_subset_colex(block.len() as u64, t, |idx| {
                let key: Vec<u64> = idx.iter().map(|&i| block[i as usize]).collect();
                *counts.entry(key).or_insert(0) += 1;
                true
            });
        }
        let total = binomial(points, t as u64);
        let mut lo = u64::MAX;
        let mut hi = 0;
        for &c in counts.values() {
            lo = lo.min(c);
            hi = hi.max(c);
        }
        if (counts.len() as u128) < total {
            lo = 0;
        }
        (if lo == u64::MAX { 0 } else { lo }, hi)
    }
}

/// Enumerates `ℬ = { k-subsets of U_{q+1} : σ_{k,k-l} = 0 }`, checking on
/// every subset that `σ_{k,k-l} = 0` exactly when `σ_{k,l} = 0`.
pub fn block_set(q: u64, k: usize, l: usize, budget: u128) -> Result<BlockSet> {
    let circle = UnitCircle::new(q)?;
    let n = circle.order();
    if l > k || k as u64 > n || k == 0 {
        return Err(Error::OutOfRange(format!("need 1 <= k <= {n} and l <= k")));
    }
    let needed = binomial(n, k as u64);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let f = circle.field();
    // stripes by largest exponent; concatenated in order, they stay colex
    let stripes: Vec<Result<Vec<Vec<u64>>>> = (k as u64 - 1..n)
        .into_par_iter()
        .map(|top| {
            let mut found = Vec::new();
            let mut mismatch = false;
            subsets_with_top(top, k, |block| {
                let e = esp_all(f, &circle.elements_of(block));
                let zero_a = e[k - l].is_zero();
                let zero_b = e[l].is_zero();
                mismatch |= zero_a != zero_b;
                if zero_a {
                    found.push(block.to_vec());
                }
            });
            if mismatch {
                Err(Error::InvalidWitness("conjugate symmetry failed".into()))
            } else {
                Ok(found)
            }
        })
        .collect();
    let mut blocks = Vec::new();
    for stripe in stripes {
        blocks.extend(stripe?);
    }
    Ok(BlockSet {
        q,
        k,
        l,
        cardinality: blocks.len() as u64,
        blocks,
    })
}

/// The exponents of `{1, θ, ..., θ^η}` with `θ = γ^((q+1)/(η+1))`.
pub fn divisor_block(q: u64, eta: u64) -> Result<Vec<u64>> {
    let n = q + 1;
    if eta == 0 || n % (eta + 1) != 0 {
        return Err(Error::HypothesisNotMet(format!("eta + 1 = {} does not divide q + 1 = {n}", eta + 1)));
    }
    let step = n / (eta + 1);
    Ok((0..=eta).map(|i| i * step).collect())
}

/// Whether `σ_{η+w,η}` is nonzero on every (η+w)-subset of U_{q+1}.
pub fn esp_distance_condition(q: u64, eta: usize, w: usize, budget: u128) -> Result<bool> {
    if q <= 2 * eta as u64 {
        return Err(Error::HypothesisNotMet(format!("need q > 2 eta (q={q}, eta={eta})")));
    }
    let circle = UnitCircle::new(q)?;
    let n = circle.order();
    let k = eta + w;
    if k as u64 > n {
        return Ok(true);
    }
    let needed = binomial(n, k as u64);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let f = circle.field();
    let vanishes = (k as u64 - 1..n).into_par_iter().any(|top| {
        let mut hit = false;
        subsets_with_top(top, k, |block| {
            if !hit {
                hit = esp_all(f, &circle.elements_of(block))[eta].is_zero();
            }
        });
        hit
    });
    Ok(!vanishes)
}

/// Weight distribution prefix `B_0..=B_wmax` of the Zetterberg code
/// `{c in GF(p)^(p^m+1) : Σ c_i β^i = 0}`.
pub fn zetterberg_low_weight(p: u64, m: u32, w_max: usize, budget: u128) -> Result<Vec<u128>> {
    let tower = Tower::antiprimitive(p, m)?;
    if tower.small().k() != 1 {
        return Err(Error::NotPrime(p));
    }
    let n = tower.n();
    let big = tower.big();
    let emb = tower.embedding();
    let mut counts = vec![0u128; w_max + 1];
    counts[0] = 1;
    let nonzero: Vec<Elt> = (1..p).map(Elt::from_index).collect();
    for w in 1..=w_max {
        let needed = binomial(n, w as u64 - 1).saturating_mul((p as u128 - 1).pow(w as u32 - 1));
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        if w == 1 {
            // a single nonzero multiple of a unit never vanishes
            continue;
        }
        // positions below `top` hold w-1 elements, the first with coefficient 1;
        // the last element must make the sum vanish and sit above them all
        let count: u128 = (w as u64 - 2..n)
            .into_par_iter()
            .map(|top| {
                let mut local = 0u128;
                subsets_with_top(top, w - 1, |prefix| {
                    let mut coeffs = vec![Elt::ONE; w - 1];
                    loop {
                        let s = prefix.iter().zip(&coeffs).fold(Elt::ZERO, |acc, (&e, &c)| {
                            big.add(acc, big.mul(emb.map(c), tower.beta_pow(e as i64)))
                        });
                        for &c in &nonzero {
                            let target = big.neg(big.div(s, emb.map(c)));
                            if let Some(j) = tower.unit_log(target) {
                                if j > top {
                                    local += 1;
                                }
                            }
                        }
                        // next coefficient vector, coeffs[0] fixed at 1
                        let mut i = 1;
                        while i < w - 1 {
                            let next = coeffs[i].index() + 1;
                            if next < p {
                                coeffs[i] = Elt::from_index(next);
                                break;
                            }
                            coeffs[i] = Elt::ONE;
                            i += 1;
                        }
                        if i >= w - 1 {
                            break;
                        }
                    }
                });
                local
            })
            .sum();
        counts[w] = count * (p as u128 - 1);
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn subset_sum(f: &FieldCtx, values: &[Elt], r: usize) -> Elt {
        let mut acc = Elt::ZERO;
        for_each_subset_colex(values.len() as u64, r, |idx| {
            let prod = idx.iter().fold(Elt::ONE, |a, &i| f.mul(a, values[i as usize]));
            acc = f.add(acc, prod);
            true
        });
        acc
    }

    #[test]
    fn esp_edges() {
        let c = UnitCircle::new(8).unwrap();
        let vals = c.elements_of(&[0, 1, 2]);
        assert_eq!(esp(c.field(), &vals, 0).unwrap(), Elt::ONE);
        assert_eq!(
            esp(c.field(), &vals, 4).unwrap_err(),
            Error::ROutOfRange { r: 4, len: 3 }
        );
    }

    #[test]
    fn esp_matches_subset_sum_on_u9() {
        let c = UnitCircle::new(8).unwrap();
        let f = c.field();
        for mask in 0u32..(1 << 9) {
            let exps: Vec<u64> = (0..9).filter(|i| mask >> i & 1 == 1).collect();
            let vals = c.elements_of(&exps);
            let all = esp_all(f, &vals);
            for r in 0..=vals.len() {
                assert_eq!(all[r], subset_sum(f, &vals, r));
            }
        }
    }

    #[test]
    fn esp_random_u9_pairs() {
        let c = UnitCircle::new(8).unwrap();
        let f = c.field();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let vals: Vec<Elt> = (0..4).map(|_| c.element(rng.gen_range(0..9))).collect();
            let direct = subset_sum(f, &vals, 2);
            assert_eq!(esp(f, &vals, 2).unwrap(), direct);
        }
    }

    #[test]
    fn homogeneous_small_cases() {
        let f = FieldCtx::new(7, 2).unwrap();
        let (a, b, c) = (f.from_i64(2), f.from_i64(3), f.primitive());
        assert_eq!(complete_homogeneous(&f, 0, &[a, b]), Elt::ONE);
        assert_eq!(complete_homogeneous(&f, -2, &[a, b]), Elt::ZERO);
        assert_eq!(complete_homogeneous(&f, 5, &[c]), f.pow(c, 5));
        let sq = |x| f.mul(x, x);
        let want = [sq(a), sq(b), sq(c), f.mul(a, b), f.mul(a, c), f.mul(b, c)]
            .into_iter()
            .fold(Elt::ZERO, |acc, v| f.add(acc, v));
        assert_eq!(complete_homogeneous(&f, 2, &[a, b, c]), want);
    }

    #[test]
    fn two_by_two_identity_by_hand() {
        let f = FieldCtx::new(3, 4).unwrap();
        let (a, b) = (f.primitive(), f.exp(7));
        let det = m_matrix_det(&f, 1, 1, &[a, b]).unwrap();
        let hand = f.sub(f.div(b, a), f.div(a, b));
        assert_eq!(det, hand);
        let formula = f.div(f.mul(f.add(a, b), f.sub(b, a)), f.mul(a, b));
        assert_eq!(det, formula);
        assert_eq!(m_matrix_det(&f, 1, 1, &[a, a]).unwrap_err(), Error::RepeatedValue);
    }

    #[test]
    fn m_matrix_identity_random() {
        for q in [4u64, 8, 9] {
            let c = UnitCircle::new(q).unwrap();
            let f = c.field();
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            for _ in 0..100 {
                let eta = rng.gen_range(1..=4usize);
                let l = rng.gen_range(1..=eta);
                let mut vals = Vec::new();
                while vals.len() < eta + l {
                    let v = Elt::from_index(rng.gen_range(1..f.order()));
                    if !vals.contains(&v) {
                        vals.push(v);
                    }
                }
                let lhs = f.mul(
                    m_matrix_det(f, eta, l, &vals).unwrap(),
                    f.pow(esp(f, &vals, eta + l).unwrap(), l as u64),
                );
                let rhs = f.mul(esp(f, &vals, eta).unwrap(), vandermonde_det(f, &vals).unwrap());
                assert_eq!(lhs, rhs, "q={q} eta={eta} l={l}");
            }
        }
    }

    #[test]
    fn colex_order() {
        let mut seen = Vec::new();
        for_each_subset_colex(4, 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn divisor_block_vanishes() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            let c = UnitCircle::new(q).unwrap();
            for eta in 1..=q {
                let Ok(block) = divisor_block(q, eta) else { continue };
                let e = esp_all(c.field(), &c.elements_of(&block));
                assert!(e[1].is_zero() && e[eta as usize].is_zero());
            }
        }
    }

    #[test]
    fn gf4_triples() {
        let bs = block_set(4, 3, 1, 1 << 20).unwrap();
        let c = UnitCircle::new(4).unwrap();
        let mut direct = 0;
        for_each_subset_colex(5, 3, |s| {
            if esp_all(c.field(), &c.elements_of(s))[2].is_zero() {
                direct += 1;
            }
            true
        });
        assert_eq!(bs.cardinality, direct);
        assert!(bs.blocks.windows(2).all(|w| w[0].iter().rev().cmp(w[1].iter().rev()).is_lt()));
    }

    #[test]
    fn gf8_four_sets() {
        assert_eq!(block_set(8, 4, 1, 1 << 20).unwrap().cardinality, 0);
        assert!(matches!(block_set(8, 4, 1, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn esp_condition_examples() {
        // sigma_{4,1} and sigma_{5,2} never vanish on U_9
        assert!(esp_distance_condition(8, 3, 1, 1 << 20).unwrap());
        assert!(esp_distance_condition(8, 3, 2, 1 << 20).unwrap());
        // eta + 1 = 3 divides q + 1 = 9
        assert!(!esp_distance_condition(8, 2, 1, 1 << 20).unwrap());
        assert!(esp_distance_condition(4, 2, 1, 1 << 20).is_err());
    }

    #[test]
    fn zetterberg_small_counts() {
        let b = zetterberg_low_weight(2, 4, 4, 1 << 30).unwrap();
        assert_eq!(b[2], 0);
        assert_eq!(b[3], 0);
        assert_eq!(b[4], 0);
        let b = zetterberg_low_weight(2, 3, 3, 1 << 30).unwrap();
        assert!(b[3] > 0);
        let b = zetterberg_low_weight(3, 3, 3, 1 << 30).unwrap();
        assert_eq!(b[3], 0);
    }

    #[test]
    fn zetterberg_matches_brute_force() {
        // n = 10 over GF(3): enumerate all 3^10 words
        let tower = Tower::antiprimitive(3, 2).unwrap();
        let big = tower.big();
        let emb = tower.embedding();
        let mut direct = vec![0u128; 11];
        for word in 0..3u64.pow(10) {
            let mut v = word;
            let mut s = Elt::ZERO;
            let mut wt = 0;
            for i in 0..10 {
                let c = v % 3;
                v /= 3;
                if c != 0 {
                    wt += 1;
                    s = big.add(s, big.mul(emb.map(Elt::from_index(c)), tower.beta_pow(i)));
                }
            }
            if s.is_zero() {
                direct[wt] += 1;
            }
        }
        let counted = zetterberg_low_weight(3, 2, 5, 1 << 30).unwrap();
        assert_eq!(&counted[..], &direct[..6]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(33, 11), 193_536_720);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn design_statistic_counts_pairs() {
        let bs = block_set(4, 3, 1, 1 << 20).unwrap();
        let (lo, hi) = bs.design_statistic(1);
        assert!(lo <= hi);
        let total: u64 = bs.blocks.len() as u64 * 3;
        assert!(hi * 5 >= total);
    }
}
