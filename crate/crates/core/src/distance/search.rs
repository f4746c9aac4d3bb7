//! Search engines: exhaustive enumeration, support search, and a randomized
//! information-set search. All of them merge parallel results in a fixed
//! order, so the output does not depend on the thread count.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bch::BchCode;
use crate::error::{Error, Result};
use crate::esp::binomial;
use crate::field::{Elt, FieldCtx};

use super::Witness;

/// GF(q) for q <= 256 as byte tables.
struct SmallField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl SmallField {
    fn new(ctx: &FieldCtx) -> Result<SmallField> {
        let q = ctx.order() as usize;
        if q > 256 {
            return Err(Error::Unsupported(format!("byte tables need q <= 256, got {q}")));
        }
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            let ea = Elt::from_index(a as u64);
            for b in 0..q {
                let eb = Elt::from_index(b as u64);
                add[a * q + b] = ctx.add(ea, eb).index() as u8;
                mul[a * q + b] = ctx.mul(ea, eb).index() as u8;
            }
            if a != 0 {
                inv[a] = ctx.inv(ea).index() as u8;
            }
        }
        Ok(SmallField { q, add, mul, inv })
    }

    #[inline]
    fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    fn neg(&self, a: u8) -> u8 {
        (0..self.q as u8).find(|&b| self.add(a, b) == 0).unwrap()
    }
}

/// Rows `x^i g(x)` for `i < k`.
fn generator_rows(code: &BchCode) -> Vec<Vec<u8>> {
    let n = code.n as usize;
    let k = code.dimension as usize;
    let g: Vec<u8> = code.generator.coeffs().iter().map(|c| c.index() as u8).collect();
    (0..k)
        .map(|i| {
            let mut row = vec![0u8; n];
            row[i..i + g.len()].copy_from_slice(&g);
            row
        })
        .collect()
}

fn word_weight(w: &[u8]) -> usize {
    w.iter().filter(|&&c| c != 0).count()
}

/// Same weight assumed: colexicographic support, then coefficients.
fn cmp_same_weight(a: &[u8], b: &[u8]) -> Ordering {
    for i in (0..a.len()).rev() {
        match (a[i] != 0, b[i] != 0) {
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
    }
    a.cmp(b)
}

/// The word scaled so its lowest nonzero coordinate is 1.
fn normalized_witness(sf: &SmallField, word: &[u8]) -> Witness {
    let lead = word.iter().copied().find(|&c| c != 0).expect("nonzero word");
    let s = sf.inv[lead as usize];
    let terms = word
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i as u64, Elt::from_index(sf.mul(c, s) as u64)))
        .collect();
    Witness::from_terms(terms).expect("distinct positions")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub weight: u64,
    pub witness: Witness,
    /// Projective codewords enumerated.
    pub units: u128,
}

struct Best {
    weight: usize,
    word: Vec<u8>,
}

impl Best {
    fn offer(&mut self, weight: usize, word: &[u8]) {
        if weight < self.weight || (weight == self.weight && cmp_same_weight(word, &self.word).is_lt()) {
            self.weight = weight;
            self.word.clear();
            self.word.extend_from_slice(word);
        }
    }

    fn merge(self, other: Best) -> Best {
        if other.weight < self.weight
            || (other.weight == self.weight && cmp_same_weight(&other.word, &self.word).is_lt())
        {
            other
        } else {
            self
        }
    }
}

/// Minimum weight over all nonzero codewords. Messages are enumerated
/// projectively (first nonzero coordinate 1), each leading position with a
/// p-ary Gray code over the remaining coordinates' GF(p) digits.
pub fn exhaustive_distance(code: &BchCode, budget: u64) -> Result<SearchOutcome> {
    let k = code.dimension as usize;
    if k == 0 {
        return Err(Error::Unsupported("the zero code has no minimum distance".into()));
    }
    let q = code.q as u128;
    let needed = q
        .checked_pow(k as u32)
        .map(|v| (v - 1) / (q - 1))
        .unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget as u128,
        });
    }
    let small = code.tower().small();
    let sf = SmallField::new(small)?;
    let n = code.n as usize;
    let p = small.p() as usize;
    let s = small.k() as usize;
    let rows = generator_rows(code);
    // GF(p)-basis of GF(q): the powers of the polynomial variable
    let basis: Vec<u8> = (0..s).map(|e| (p as u64).pow(e as u32) as u8).collect();
    let sparse = |row: &[u8], c: u8| -> Vec<(u32, u8)> {
        row.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i as u32, sf.mul(c, v)))
            .collect()
    };

    let mut tasks = Vec::new();
    for f in 0..k {
        let digits = (k - 1 - f) * s;
        let mut top = 0;
        while top < digits && p.pow(top as u32) < 64 {
            top += 1;
        }
        for chunk in 0..p.pow(top as u32) {
            tasks.push((f, digits, top, chunk));
        }
    }

    let best = tasks
        .par_iter()
        .map(|&(f, digits, top, chunk)| {
            let vecs: Vec<Vec<(u32, u8)>> = (0..digits)
                .map(|d| sparse(&rows[f + 1 + d / s], basis[d % s]))
                .collect();
            let low = digits - top;
            let mut word = rows[f].clone();
            let mut rest = chunk;
            for vec in &vecs[low..] {
                for _ in 0..rest % p {
                    for &(i, v) in vec {
                        word[i as usize] = sf.add(word[i as usize], v);
                    }
                }
                rest /= p;
            }
            let mut weight = word_weight(&word) as isize;
            let mut best = Best {
                weight: usize::MAX,
                word: Vec::with_capacity(n),
            };
            best.offer(weight as usize, &word);
            let mut counter = vec![0usize; low + 1];
            let steps = p.pow(low as u32);
            for _ in 1..steps {
                let mut d = 0;
                loop {
                    counter[d] += 1;
                    if counter[d] == p {
                        counter[d] = 0;
                        d += 1;
                    } else {
                        break;
                    }
                }
                for &(i, v) in &vecs[d] {
                    let old = word[i as usize];
                    let new = sf.add(old, v);
                    weight += (new != 0) as isize - (old != 0) as isize;
                    word[i as usize] = new;
                }
                if weight as usize <= best.weight {
                    best.offer(weight as usize, &word);
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .reduce(Best::merge)
        .expect("at least one task");

    Ok(SearchOutcome {
        weight: best.weight as u64,
        witness: normalized_witness(&sf, &best.word),
        units: needed,
    })
}

const ISD_BATCH: u64 = 32;
pub const ISD_MAX_K: u64 = 64;
pub const ISD_MAX_N: u64 = 4096;
/// Byte operations one information-set search may spend in total.
pub const ISD_MAX_WORK: u128 = 1 << 31;

/// Field operations in one iteration: elimination plus all row pairs.
pub fn isd_iteration_work(n: u64, k: u64, q: u64) -> u128 {
    let (n, k, q) = (n as u128, k as u128, q as u128);
    k * k * n + k * (k - 1) / 2 * (q - 1) * n
}

/// One Lee-Brickell step: a random information set, then every row and every
/// two-row combination of the systematic generator matrix.
fn isd_iteration(sf: &SmallField, rows: &[Vec<u8>], seed: u64, index: u64) -> Option<(usize, Vec<u8>)> {
    let k = rows.len();
    let n = rows[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut m = rows.to_vec();
    let mut rank = 0;
    for &col in &perm {
        let Some(r) = (rank..k).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(r, rank);
        let s = sf.inv[m[rank][col] as usize];
        for v in m[rank].iter_mut() {
            *v = sf.mul(*v, s);
        }
        let pivot = m[rank].clone();
        for (r2, row) in m.iter_mut().enumerate() {
            if r2 == rank || row[col] == 0 {
                continue;
            }
            let f = sf.neg(row[col]);
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = sf.add(*x, sf.mul(f, y));
            }
        }
        rank += 1;
        if rank == k {
            break;
        }
    }
    fn offer(best: &mut Option<(usize, Vec<u8>)>, w: usize, word: &[u8]) {
        let better = best
            .as_ref()
            .is_none_or(|(bw, bword)| w < *bw || (w == *bw && cmp_same_weight(word, bword).is_lt()));
        if better {
            *best = Some((w, word.to_vec()));
        }
    }
    let mut best: Option<(usize, Vec<u8>)> = None;
    for row in &m {
        offer(&mut best, word_weight(row), row);
    }
    let mut buf = vec![0u8; n];
    for i in 0..k {
        for j in i + 1..k {
            for a in 1..sf.q as u8 {
                let mut w = 0;
                for ((x, &y), &z) in buf.iter_mut().zip(&m[i]).zip(&m[j]) {
                    *x = sf.add(y, sf.mul(a, z));
                    w += (*x != 0) as usize;
                }
                if best.as_ref().is_none_or(|(bw, _)| w <= *bw) {
                    offer(&mut best, w, &buf);
                }
            }
        }
    }
    best
}

/// Randomized search for a low-weight codeword, stopping once the weight
/// reaches `target`. Returns the best word found and the iterations spent.
pub fn isd_search(code: &BchCode, target: u64, iterations: u64, seed: u64) -> Result<(Option<Witness>, u64)> {
    let k = code.dimension;
    if k == 0 || k > ISD_MAX_K || code.n > ISD_MAX_N {
        return Err(Error::Unsupported(format!(
            "information-set search needs 1 <= k <= {ISD_MAX_K} and n <= {ISD_MAX_N}"
        )));
    }
    let sf = SmallField::new(code.tower().small())?;
    let rows = generator_rows(code);
    let per_iteration = isd_iteration_work(code.n, k, code.q);
    let iterations = iterations.min((ISD_MAX_WORK / per_iteration).max(1) as u64);
    let mut best: Option<(usize, Vec<u8>)> = None;
    let mut used = 0;
    while used < iterations {
        let end = (used + ISD_BATCH).min(iterations);
        let results: Vec<Option<(usize, Vec<u8>)>> = (used..end)
            .into_par_iter()
            .map(|it| isd_iteration(&sf, &rows, seed, it))
            .collect();
        for r in results.into_iter().flatten() {
            if best.as_ref().is_none_or(|(bw, _)| r.0 < *bw) {
                best = Some(r);
            }
        }
        used = end;
        if best.as_ref().is_some_and(|(w, _)| *w as u64 <= target) {
            break;
        }
    }
    Ok((best.map(|(_, word)| normalized_witness(&sf, &word)), used))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportOutcome {
    /// The least-weight codeword found, colex-least support containing 0.
    pub found: Option<Witness>,
    /// Every weight below this was searched exhaustively.
    pub exhausted_below: u64,
    /// The weight at which the budget ran out, if it did.
    pub stopped_at: Option<u64>,
    pub units: u128,
}

/// Incremental Gaussian elimination over the big field, one column per level.
struct Elimination<'a> {
    f: &'a FieldCtx,
    rows: usize,
    width: usize,
    basis: Vec<Elt>,
    combs: Vec<Elt>,
    pivots: Vec<usize>,
    scratch_v: Vec<Elt>,
    scratch_c: Vec<Elt>,
}

impl<'a> Elimination<'a> {
    fn new(f: &'a FieldCtx, rows: usize, width: usize) -> Self {
        Elimination {
            f,
            rows,
            width,
            basis: vec![Elt::ZERO; rows * width],
            combs: vec![Elt::ZERO; width * width],
            pivots: vec![0; width],
            scratch_v: vec![Elt::ZERO; rows],
            scratch_c: vec![Elt::ZERO; width],
        }
    }

    /// Adds `col` as level `level`. Returns false (leaving the dependency in
    /// the scratch combination) when it is spanned by the earlier levels.
    fn push(&mut self, level: usize, col: &[Elt]) -> bool {
        let (f, rows, width) = (self.f, self.rows, self.width);
        self.scratch_v.copy_from_slice(col);
        self.scratch_c.fill(Elt::ZERO);
        self.scratch_c[level] = Elt::ONE;
        for b in 0..level {
            let piv = self.pivots[b];
            let coef = self.scratch_v[piv];
            if coef.is_zero() {
                continue;
            }
            let basis = &self.basis[b * rows..(b + 1) * rows];
            for (v, &x) in self.scratch_v.iter_mut().zip(basis) {
                if !x.is_zero() {
                    *v = f.sub(*v, f.mul(coef, x));
                }
            }
            let comb = &self.combs[b * width..(b + 1) * width];
            for (c, &x) in self.scratch_c.iter_mut().zip(comb).take(b + 1) {
                if !x.is_zero() {
                    *c = f.sub(*c, f.mul(coef, x));
                }
            }
        }
        let Some(piv) = self.scratch_v.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let s = f.inv(self.scratch_v[piv]);
        for r in 0..rows {
            self.basis[level * rows + r] = f.mul(self.scratch_v[r], s);
        }
        for c in 0..width {
            self.combs[level * width + c] = f.mul(self.scratch_c[c], s);
        }
        self.pivots[level] = piv;
        true
    }
}

fn colex_rank(elements: &[u64]) -> u128 {
    elements
        .iter()
        .enumerate()
        .map(|(i, &a)| binomial(a, i as u64 + 1))
        .fold(0u128, |acc, v| acc.saturating_add(v))
}

/// The colex-least weight-w support containing 0 that carries a codeword.
fn search_weight(code: &BchCode, columns: &[Vec<Elt>], w: usize) -> Option<(Vec<u64>, Vec<Elt>)> {
    let tower = code.tower();
    let f = tower.big();
    let n = code.n as usize;
    let rows = columns[0].len();
    (w - 1..n).into_par_iter().find_map_first(|top| {
        let mut elim = Elimination::new(f, rows, w);
        // level 0 is position 0, level 1 is `top`, level j the (w-j)-th element
        let mut chosen = vec![0usize; w];
        chosen[1] = top;
        if !elim.push(0, &columns[0]) {
            unreachable!("columns are nonzero");
        }
        if !elim.push(1, &columns[top]) {
            return dependency(code, &elim, &chosen[..2]);
        }
        if w == 2 {
            return None;
        }
        descend(code, columns, &mut elim, &mut chosen, 2, w)
    })
}

fn descend(
    code: &BchCode,
    columns: &[Vec<Elt>],
    elim: &mut Elimination,
    chosen: &mut Vec<usize>,
    level: usize,
    w: usize,
) -> Option<(Vec<u64>, Vec<Elt>)> {
    let lo = w - level;
    let hi = chosen[level - 1];
    for pos in lo..hi {
        chosen[level] = pos;
        if !elim.push(level, &columns[pos]) {
            if let Some(found) = dependency(code, elim, &chosen[..=level]) {
                return Some(found);
            }
            continue;
        }
        if level + 1 < w {
            if let Some(found) = descend(code, columns, elim, chosen, level + 1, w) {
                return Some(found);
            }
        }
    }
    None
}

/// Turns the scratch dependency into GF(q) coefficients, if it has any.
fn dependency(code: &BchCode, elim: &Elimination, chosen: &[usize]) -> Option<(Vec<u64>, Vec<Elt>)> {
    let f = elim.f;
    let comb = &elim.scratch_c[..chosen.len()];
    if comb[0].is_zero() {
        return None;
    }
    let s = f.inv(comb[0]);
    let emb = code.tower().embedding();
    let mut terms = Vec::with_capacity(chosen.len());
    for (&pos, &c) in chosen.iter().zip(comb) {
        if c.is_zero() {
            return None;
        }
        terms.push((pos as u64, emb.pull_back(f.mul(c, s))?));
    }
    terms.sort_unstable_by_key(|t| t.0);
    Some((terms.iter().map(|t| t.0).collect(), terms.iter().map(|t| t.1).collect()))
}

/// [`support_search_from`] starting at weight 2.
pub fn support_search(code: &BchCode, max_weight: u64, budget: u64) -> Result<SupportOutcome> {
    support_search_from(code, 2, max_weight, budget)
}

/// Searches weights `start..=max_weight` in order. The caller guarantees that
/// no nonzero codeword has weight below `start`.
pub fn support_search_from(code: &BchCode, start: u64, max_weight: u64, budget: u64) -> Result<SupportOutcome> {
    let n = code.n;
    let defining = &code.defining_set;
    let rows = defining.len() as u64;
    if rows == 0 {
        return Err(Error::Unsupported("empty defining set: every word is a codeword".into()));
    }
    let start = start.max(2);
    let mut outcome = SupportOutcome {
        found: None,
        exhausted_below: start,
        stopped_at: None,
        units: 0,
    };
    if start > max_weight {
        return Ok(outcome);
    }
    let first_cost = binomial(n - 1, start - 1).saturating_mul((rows * start) as u128);
    if first_cost > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: first_cost,
            budget: budget as u128,
        });
    }
    if (n as u128) * (rows as u128) > 1 << 26 {
        return Err(Error::Unsupported("parity-check matrix too large for support search".into()));
    }
    let tower = code.tower();
    let columns: Vec<Vec<Elt>> = (0..n)
        .map(|i| {
            defining
                .iter()
                .map(|&t| tower.beta_pow(((i as u128 * t as u128) % n as u128) as i64))
                .collect()
        })
        .collect();
    for w in start..=max_weight.min(n) {
        let cost = binomial(n - 1, w - 1).saturating_mul((rows * w) as u128);
        if outcome.units.saturating_add(cost) > budget as u128 {
            outcome.stopped_at = Some(w);
            break;
        }
        match search_weight(code, &columns, w as usize) {
            Some((support, coeffs)) => {
                let rank = colex_rank(&support[1..].iter().map(|&a| a - 1).collect::<Vec<_>>());
                outcome.units += (rank + 1) * (rows * w) as u128;
                outcome.found = Some(Witness { support, coeffs });
                outcome.exhausted_below = w;
                return Ok(outcome);
            }
            None => {
                outcome.units += cost;
                outcome.exhausted_below = w + 1;
            }
        }
    }
    Ok(outcome)
}
