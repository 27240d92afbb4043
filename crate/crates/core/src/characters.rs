//! Characters modulo `pi^n` given by their values on generators, conjugate
//! pairs, `m` and `s` of a pair, the reordering check, and linear relations
//! among group elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeffring::{Elem, Ring};
use crate::error::{Error, Result};
use crate::matlat::Mat2;
use crate::subtree::{GroupInput, IntegralModel};

/// A word in the generators, as a list of generator indices.
pub type Word = Vec<usize>;

pub const DEFAULT_WORD_DEPTH: usize = 6;
pub const DEFAULT_WORD_COUNT: usize = 200;
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const MAX_RELATION_WORDS: usize = 4096;

pub fn word_label(w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter()
            .map(|i| format!("g{}", i))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// `rho(w)` as a product of generator images.
pub fn eval_word(gens: &[Mat2], ring: &Ring, w: &[usize]) -> Mat2 {
    w.iter()
        .fold(Mat2::identity(ring), |acc, &i| acc.mul(&gens[i]))
}

/// Words over `k` generators of length exactly `len`, in lexicographic order.
pub fn words_of_length(k: usize, len: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Seeded random words of length `1..=max_len`.
pub fn random_words(k: usize, max_len: usize, count: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            (0..len).map(|_| rng.gen_range(0..k)).collect()
        })
        .collect()
}

/// Generators over `O_K`: the input itself when it is integral, otherwise its
/// integral model (conjugation preserves traces and determinants).
pub fn integral_generators(group: &GroupInput) -> Result<GroupInput> {
    if group.generators.iter().all(|g| g.is_integral()) {
        Ok(group.clone())
    } else {
        Ok(IntegralModel::from_input(group, 64)?.group)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(rename = "L")]
    pub word_depth: usize,
    #[serde(rename = "W")]
    pub word_count: usize,
    pub seed: u64,
    pub pass: Option<bool>,
    /// Read off from a stable lattice, hence multiplicative by construction.
    pub harvested: bool,
}

impl Default for Certificate {
    fn default() -> Self {
        Certificate {
            word_depth: DEFAULT_WORD_DEPTH,
            word_count: DEFAULT_WORD_COUNT,
            seed: DEFAULT_SEED,
            pass: None,
            harvested: false,
        }
    }
}

/// A character `G -> (O_K / pi^n)^x`, one value per generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterMod {
    pub n: u32,
    pub values: Vec<Elem>,
    pub certificate: Certificate,
}

impl CharacterMod {
    /// Values are reduced to precision `n`; they must be units.
    pub fn new(n: u32, values: &[Elem]) -> Result<CharacterMod> {
        let first = values
            .first()
            .ok_or_else(|| Error::InvalidInput("no values".into()))?;
        let ring = first.ring().with_precision(n)?;
        let values = values
            .iter()
            .map(|v| v.to_ring(&ring))
            .collect::<Result<Vec<_>>>()?;
        if let Some(v) = values.iter().find(|v| !v.is_unit()) {
            return Err(Error::NotAUnit(v.to_string()));
        }
        Ok(CharacterMod {
            n,
            values,
            certificate: Certificate::default(),
        })
    }

    pub fn harvested(mut self) -> Self {
        self.certificate.harvested = true;
        self
    }

    pub fn ring(&self) -> &Ring {
        self.values[0].ring()
    }

    pub fn eval(&self, w: &[usize]) -> Elem {
        w.iter()
            .fold(self.ring().one(), |acc, &i| &acc * &self.values[i])
    }

    /// The same character modulo `pi^k`, `k <= n`.
    pub fn reduce(&self, k: u32) -> Result<CharacterMod> {
        let mut out = CharacterMod::new(k.min(self.n), &self.values)?;
        out.certificate = self.certificate.clone();
        Ok(out)
    }
}

/// `s = n - m` when `2m < n`, else `ceil(n / 2)`.
pub fn s_from(m: u32, n: u32) -> u32 {
    if 2 * m < n {
        n - m
    } else {
        n.div_ceil(2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterPair {
    pub chi1: CharacterMod,
    pub chi2: CharacterMod,
    pub m: u32,
    pub s: u32,
}

impl CharacterPair {
    pub fn new(chi1: CharacterMod, chi2: CharacterMod) -> Result<CharacterPair> {
        if chi1.n != chi2.n || chi1.values.len() != chi2.values.len() {
            return Err(Error::InvalidInput("characters of different shape".into()));
        }
        if chi1.ring() != chi2.ring() {
            return Err(Error::RingMismatch(
                "characters over different rings".into(),
            ));
        }
        let m = m_of_pair(&chi1, &chi2);
        let s = s_from(m, chi1.n);
        Ok(CharacterPair { chi1, chi2, m, s })
    }

    pub fn n(&self) -> u32 {
        self.chi1.n
    }

    pub fn swapped(&self) -> CharacterPair {
        CharacterPair {
            chi1: self.chi2.clone(),
            chi2: self.chi1.clone(),
            m: self.m,
            s: self.s,
        }
    }

    /// Both characters modulo `pi^k`.
    pub fn reduce(&self, k: u32) -> Result<CharacterPair> {
        CharacterPair::new(self.chi1.reduce(k)?, self.chi2.reduce(k)?)
    }
}

/// `min_g v(chi1(g) - chi2(g))`, capped at `n`. Since both characters are
/// multiplicative, a congruence on the generators propagates to every word,
/// so the minimum over all of `G` is attained on a generator.
pub fn m_of_pair(chi1: &CharacterMod, chi2: &CharacterMod) -> u32 {
    chi1.values
        .iter()
        .zip(&chi2.values)
        .map(|(a, b)| (a - b).valuation())
        .min()
        .unwrap_or(chi1.n)
        .min(chi1.n)
}

pub fn s_of_pair(pair: &CharacterPair) -> u32 {
    s_from(pair.m, pair.n())
}

/// Result of the conjugate-pair test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyCertificate {
    pub pass: bool,
    pub first_violation: Option<Word>,
    pub words_checked: usize,
    pub word_depth: usize,
    pub word_count: usize,
    pub seed: u64,
}

/// Checks `trace rho(w) ≡ chi1(w) + chi2(w)` and `det rho(w) ≡ chi1(w) chi2(w)`
/// modulo `pi^n` on all generators, all products of two generators, and
/// `word_count` seeded random words of length at most `word_depth`.
pub fn is_conjugate_pair(
    group: &GroupInput,
    pair: &CharacterPair,
    word_depth: usize,
    word_count: usize,
    seed: u64,
) -> Result<ConjugacyCertificate> {
    let integral = integral_generators(group)?;
    let n = pair.n();
    if n > integral.ring.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "characters modulo pi^{} but generators known modulo pi^{}",
            n,
            integral.ring.precision()
        )));
    }
    if pair.chi1.values.len() != integral.len() {
        return Err(Error::InvalidInput(format!(
            "{} character values for {} generators",
            pair.chi1.values.len(),
            integral.len()
        )));
    }
    let k = integral.len();
    let mut words = words_of_length(k, 1);
    words.extend(words_of_length(k, 2));
    words.extend(random_words(k, word_depth, word_count, seed));
    let target = pair.chi1.ring().clone();
    let mut checked = 0;
    for w in &words {
        let m = eval_word(&integral.generators, &integral.ring, w);
        let tr = m.trace().to_ring(&target)?;
        let det = m.det().to_ring(&target)?;
        let (a, b) = (pair.chi1.eval(w), pair.chi2.eval(w));
        checked += 1;
        if tr != &a + &b || det != &a * &b {
            return Ok(ConjugacyCertificate {
                pass: false,
                first_violation: Some(w.clone()),
                words_checked: checked,
                word_depth,
                word_count,
                seed,
            });
        }
    }
    Ok(ConjugacyCertificate {
        pass: true,
        first_violation: None,
        words_checked: checked,
        word_depth,
        word_count,
        seed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pairing {
    Identity,
    Swap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReorderMatch {
    pub ordering: Pairing,
    pub identity_ok: bool,
    pub swap_ok: bool,
    pub s: u32,
}

fn agree(x: &CharacterMod, y: &CharacterMod, k: u32) -> bool {
    x.values.iter().zip(&y.values).all(|(a, b)| {
        let wide = a.ring().precision().max(b.ring().precision());
        let ring = a.ring().with_precision(wide).expect("same field");
        let (a, b) = (a.to_ring(&ring).unwrap(), b.to_ring(&ring).unwrap());
        a.congruent(&b, k)
    })
}

/// Finds the pairing under which `pair_b` agrees with `pair_a` modulo `pi^s`,
/// with `s` taken from `pair_a`.
pub fn reorder_match(pair_a: &CharacterPair, pair_b: &CharacterPair) -> Result<ReorderMatch> {
    let s = pair_a.s;
    if pair_b.n() < s {
        return Err(Error::InvalidInput(format!(
            "second pair is only known modulo pi^{} < pi^{}",
            pair_b.n(),
            s
        )));
    }
    let identity_ok = agree(&pair_a.chi1, &pair_b.chi1, s) && agree(&pair_a.chi2, &pair_b.chi2, s);
    let swap_ok = agree(&pair_a.chi1, &pair_b.chi2, s) && agree(&pair_a.chi2, &pair_b.chi1, s);
    let ordering = match (identity_ok, swap_ok) {
        (true, _) => Pairing::Identity,
        (false, true) => Pairing::Swap,
        (false, false) => {
            return Err(Error::TheoremViolationWitness(format!(
                "no ordering matches the pairs modulo pi^{}",
                s
            )))
        }
    };
    Ok(ReorderMatch {
        ordering,
        identity_ok,
        swap_ok,
        s,
    })
}

/// `sum_i a_i rho(w_i) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub terms: Vec<(Elem, Word)>,
}

impl Relation {
    pub fn coefficient_of(&self, w: &[usize]) -> Option<&Elem> {
        self.terms
            .iter()
            .find(|(_, v)| v.as_slice() == w)
            .map(|(a, _)| a)
    }

    /// `sum_i a_i rho(w_i)`.
    pub fn evaluate(&self, gens: &[Mat2], ring: &Ring) -> Result<Mat2> {
        let mut acc = Mat2::zero(ring);
        for (a, w) in &self.terms {
            acc = acc.add(&eval_word(gens, ring, w).scale(&a.to_ring(ring)?));
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extendability {
    pub residual: u32,
    pub t: u32,
    pub extendable: bool,
}

/// `v(sum_i a_i chi(w_i))` for a relation that vanishes on `rho`. The
/// character is consistent with the relation modulo `pi^t` iff the residual
/// is at least `t`.
pub fn linear_extendability_residual(
    group: &GroupInput,
    chi: &CharacterMod,
    relation: &Relation,
    t: u32,
) -> Result<Extendability> {
    let integral = integral_generators(group)?;
    let value = relation.evaluate(&integral.generators, &integral.ring)?;
    if !is_zero(&value) {
        return Err(Error::InvalidRelation(format!("sum is {}", value)));
    }
    let ring = chi.ring();
    let mut acc = ring.zero();
    for (a, w) in &relation.terms {
        acc = &acc + &(&a.to_ring(ring)? * &chi.eval(w));
    }
    let residual = acc.valuation();
    Ok(Extendability {
        residual,
        t,
        extendable: residual >= t.min(chi.n),
    })
}

fn is_zero(m: &Mat2) -> bool {
    m.entries().iter().all(|e| e.is_zero())
}

/// Kernel of the `4 x k` matrix whose columns are the entries of `mats`,
/// by valuation-pivoted column elimination. Each returned vector has
/// coefficient 1 at its own non-pivot column and 0 at the other non-pivot
/// columns.
pub fn kernel_relations(mats: &[Mat2], ring: &Ring) -> Result<Vec<Vec<Elem>>> {
    let k = mats.len();
    let mut cols: Vec<[Elem; 4]> = mats
        .iter()
        .map(|m| {
            Ok([
                m.a.to_ring(ring)?,
                m.b.to_ring(ring)?,
                m.c.to_ring(ring)?,
                m.d.to_ring(ring)?,
            ])
        })
        .collect::<Result<_>>()?;
    let mut q: Vec<Vec<Elem>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect();
    let mut pivot_col = vec![false; k];
    let mut used_row = [false; 4];
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (j, col) in cols.iter().enumerate() {
            if pivot_col[j] {
                continue;
            }
            for (i, e) in col.iter().enumerate() {
                if used_row[i] || e.is_zero() {
                    continue;
                }
                let v = e.valuation();
                if best.is_none_or(|(bv, bi, bj)| (v, i, j) < (bv, bi, bj)) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, i, p)) = best else { break };
        pivot_col[p] = true;
        used_row[i] = true;
        let unit_inv = cols[p][i].div_pi_pow(v)?.inverse()?;
        for j in 0..k {
            if pivot_col[j] || cols[j][i].is_zero() {
                continue;
            }
            let factor = &cols[j][i].div_pi_pow(v)? * &unit_inv;
            let pc = cols[p].clone();
            for (x, y) in cols[j].iter_mut().zip(&pc) {
                *x = &*x - &(&factor * y);
            }
            let qp = q[p].clone();
            for (x, y) in q[j].iter_mut().zip(&qp) {
                *x = &*x - &(&factor * y);
            }
        }
    }
    Ok((0..k)
        .filter(|&j| !pivot_col[j] && cols[j].iter().all(|e| e.is_zero()))
        .map(|j| q[j].clone())
        .collect())
}

/// Words of length at most `max_len` in shortlex order, including the empty
/// word, truncated to [`MAX_RELATION_WORDS`].
pub fn words_up_to(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![];
    for len in 0..=max_len {
        for w in words_of_length(k, len) {
            if out.len() == MAX_RELATION_WORDS {
                return out;
            }
            out.push(w);
        }
    }
    out
}

/// Linear relations among `rho(w)` for the given words.
pub fn relations_among(group: &GroupInput, words: &[Word]) -> Result<Vec<Relation>> {
    let integral = integral_generators(group)?;
    let mats: Vec<Mat2> = words
        .iter()
        .map(|w| eval_word(&integral.generators, &integral.ring, w))
        .collect();
    let kernel = kernel_relations(&mats, &integral.ring)?;
    Ok(kernel
        .into_iter()
        .map(|vec| Relation {
            terms: vec
                .into_iter()
                .zip(words)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, w)| (a, w.clone()))
                .collect(),
        })
        .collect())
}

/// Linear relations among `rho(w)` over all words of length at most `max_len`.
pub fn find_linear_relations(group: &GroupInput, max_len: usize) -> Result<Vec<Relation>> {
    relations_among(group, &words_up_to(group.len(), max_len))
}
