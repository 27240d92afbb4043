//! `n(rho)`, `m(rho)` and `k(rho)` read off from the shape of the stable
//! subtree, thin elements, and an empirical estimate of `k(rho)`.

use serde::Serialize;

use crate::characters::{eval_word, integral_generators, random_words, words_of_length, Word};
use crate::coeffring::{hensel_quadratic, roots_mod, Elem};
use crate::error::{Error, Result};
use crate::matlat::{charpoly, Mat2, GUARD};
use crate::subtree::{GroupInput, ShapeReport};

const ROOT_BUDGET: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThinEvidence {
    pub thin: bool,
    /// `v(disc) / 2` when the discriminant valuation is even and determined.
    pub gap: Option<u32>,
    pub roots: Option<(Elem, Elem)>,
    pub reason: String,
}

/// Whether the integral matrix `g` has a characteristic polynomial that splits
/// over `O_K` with roots at distance exactly `pi^r`. This needs
/// `v(disc) = 2r` and a root modulo `pi^(2r+1)`, which then lifts by Hensel.
pub fn is_thin(g: &Mat2, r: u32) -> Result<ThinEvidence> {
    if !g.is_integral() {
        return Err(Error::InvalidInput(
            "thinness is tested on integral matrices".into(),
        ));
    }
    let ring = g.ring();
    let big_n = ring.precision();
    let poly = charpoly(g);
    let dv = poly.discriminant().valuation();
    let no = |gap: Option<u32>, reason: String| ThinEvidence {
        thin: false,
        gap,
        roots: None,
        reason,
    };
    if dv >= big_n {
        if 2 * r < big_n {
            return Ok(no(
                None,
                format!("discriminant vanishes modulo pi^{}", big_n),
            ));
        }
        return Err(Error::PrecisionExhausted(format!(
            "gap {} cannot be told apart from a double root at precision {}",
            r, big_n
        )));
    }
    if dv % 2 == 1 {
        return Ok(no(None, format!("discriminant has odd valuation {}", dv)));
    }
    let gap = dv / 2;
    if gap != r {
        return Ok(no(
            Some(gap),
            format!("root gap would be {}, not {}", gap, r),
        ));
    }
    let k = 2 * r + 1;
    if k > big_n {
        return Err(Error::PrecisionExhausted(format!(
            "gap test needs {} digits, have {}",
            k, big_n
        )));
    }
    let roots = roots_mod(&poly, k, ROOT_BUDGET)?;
    let Some(alpha0) = roots.first() else {
        return Ok(no(Some(gap), "discriminant is not a square".into()));
    };
    let beta0 = &poly.trace() - alpha0;
    let fac = hensel_quadratic(&poly, alpha0, &beta0, k)?;
    Ok(ThinEvidence {
        thin: fac.gap == r,
        gap: Some(fac.gap),
        roots: Some((fac.alpha, fac.beta)),
        reason: format!("splits with root gap {}", fac.gap),
    })
}

/// The first word of length at most `max_len` (shortest first, then
/// lexicographic) that is thin with gap `r`.
pub fn find_thin_word(
    group: &GroupInput,
    r: u32,
    max_len: usize,
) -> Result<Option<(Word, ThinEvidence)>> {
    let integral = integral_generators(group)?;
    for len in 1..=max_len {
        for w in words_of_length(integral.len(), len) {
            let m = eval_word(&integral.generators, &integral.ring, &w);
            let ev = is_thin(&m, r)?;
            if ev.thin {
                return Ok(Some((w, ev)));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub d: u32,
    pub r: u32,
    pub thin_witness: Option<usize>,
    pub method_notes: String,
}

/// `n = d`; `m = d` for balls (`d = 2r`), `m = r` when `d > 2r + 1`, and for
/// generalized balls `m = r` if a generator is thin and `m = d` otherwise;
/// `k = 2m` unless `m = n`, in which case `k = m`.
pub fn invariants_from_tree(shape: &ShapeReport, group: &GroupInput) -> Result<InvariantReport> {
    if !shape.shape.is_finite_band() {
        return Err(Error::NotIrreducible(format!("{:?}", shape.shape)));
    }
    let d = shape.d.expect("finite bands have a diameter");
    let r = shape.r;
    let n = d;
    let (m, thin_witness, notes) = if d == 2 * r {
        (d, None, format!("ball: d = 2r = {}", d))
    } else if d == 2 * r + 1 {
        let integral = integral_generators(group)?;
        let mut witness = None;
        for (i, g) in integral.generators.iter().enumerate() {
            if is_thin(g, r)?.thin {
                witness = Some(i);
                break;
            }
        }
        match witness {
            Some(i) => (
                r,
                Some(i),
                format!("generalized ball with thin generator g{}", i),
            ),
            None => (
                d,
                None,
                "generalized ball without thin generators".to_string(),
            ),
        }
    } else {
        (r, None, format!("band: d = {} > 2r + 1 = {}", d, 2 * r + 1))
    };
    let k = if m == n { m } else { 2 * m };
    Ok(InvariantReport {
        n,
        m,
        k,
        d,
        r,
        thin_witness,
        method_notes: notes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KEstimate {
    pub k: u32,
    pub cap: u32,
    pub pairs_checked: usize,
    pub word_depth: usize,
    pub word_count: usize,
    pub seed: u64,
}

/// Largest `k` (up to the precision cap) such that `g -> trace(g) / 2` is
/// multiplicative modulo `pi^k` on all generator pairs and `word_count`
/// sampled pairs of words.
pub fn k_empirical(
    group: &GroupInput,
    word_depth: usize,
    word_count: usize,
    seed: u64,
) -> Result<KEstimate> {
    let integral = integral_generators(group)?;
    let ring = &integral.ring;
    let cap = ring.precision().saturating_sub(GUARD);
    let half = ring.from_int(2).inverse()?;
    let t = |w: &[usize]| &eval_word(&integral.generators, ring, w).trace() * &half;
    let k_gens = integral.len();
    let mut pairs: Vec<(Word, Word)> = vec![];
    for i in 0..k_gens {
        for j in 0..k_gens {
            pairs.push((vec![i], vec![j]));
        }
    }
    let sample = random_words(k_gens, word_depth, 2 * word_count, seed);
    for ch in sample.chunks(2) {
        if let [a, b] = ch {
            pairs.push((a.clone(), b.clone()));
        }
    }
    let mut k = cap;
    for (v, w) in &pairs {
        let vw: Word = v.iter().chain(w).copied().collect();
        let diff = &t(&vw) - &(&t(v) * &t(w));
        k = k.min(diff.valuation());
    }
    Ok(KEstimate {
        k,
        cap,
        pairs_checked: pairs.len(),
        word_depth,
        word_count,
        seed,
    })
}
