//! Brute-force enumerations used to cross-check the structural algorithms:
//! stable vertices in a ball, found without walking the tree, and all
//! conjugate character pairs modulo `pi^n`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{
    eval_word, integral_generators, words_up_to, CharacterMod, CharacterPair, Word,
};
use crate::coeffring::{roots_mod, Elem, Ring};
use crate::error::{Error, Result};
use crate::matlat::{canonicalize, charpoly, LatticeClass, Mat2};
use crate::subtree::{is_stable_all, GroupInput};

/// All classes `(a, c, b)` with `a + c <= radius`: the ball around the
/// standard vertex.
fn standard_ball(ring: &Ring, radius: u32, budget: usize) -> Result<Vec<LatticeClass>> {
    let wide = ring.wide();
    let reps = wide.residue_reps();
    let q = reps.len();
    let mut out = vec![];
    for total in 0..=radius {
        for a in 0..=total {
            let c = total - a;
            // b = sum_{i<a} r_i pi^i, with r_0 != 0 when a, c > 0.
            let count = q.checked_pow(a).unwrap_or(usize::MAX);
            if out.len().saturating_add(count) > budget {
                return Err(Error::OracleBudget(format!(
                    "ball of radius {} exceeds {} classes",
                    radius, budget
                )));
            }
            for idx in 0..count {
                let mut rest = idx;
                let mut b = wide.zero();
                for i in 0..a {
                    b = &b + &reps[rest % q].mul_pi_pow(i);
                    rest /= q;
                }
                if a > 0 && c > 0 && !b.is_unit() {
                    continue;
                }
                let m = Mat2::new(wide.pi_pow(a), b, wide.zero(), wide.pi_pow(c));
                out.push(canonicalize(&m)?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct BallEnumeration {
    pub center: LatticeClass,
    pub radius: u32,
    pub classes_checked: usize,
    /// Stable vertices, sorted.
    pub stable: Vec<LatticeClass>,
}

/// Every vertex within `radius` of `center`, listed in Hermite normal form
/// relative to `center`, filtered by the stability test.
pub fn enumerate_stable_ball(
    group: &GroupInput,
    center: &LatticeClass,
    radius: u32,
    budget: usize,
) -> Result<BallEnumeration> {
    let ball = standard_ball(&group.ring, radius, budget)?;
    let c = center.rep();
    let mapped: Vec<LatticeClass> = ball
        .par_iter()
        .map(|x| canonicalize(&c.mul(&x.rep())))
        .collect::<Result<_>>()?;
    let flags: Vec<bool> = mapped
        .par_iter()
        .map(|x| is_stable_all(x, &group.generators))
        .collect::<Result<_>>()?;
    let mut stable: Vec<LatticeClass> = mapped
        .iter()
        .zip(&flags)
        .filter(|(_, &f)| f)
        .map(|(x, _)| x.clone())
        .collect();
    stable.sort();
    Ok(BallEnumeration {
        center: center.clone(),
        radius,
        classes_checked: mapped.len(),
        stable,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PairEnumeration {
    pub n: u32,
    pub word_depth: usize,
    pub candidates_per_generator: Vec<usize>,
    pub nodes_visited: usize,
    pub pairs: Vec<CharacterPair>,
}

struct Search<'a> {
    gens: &'a [Mat2],
    traces2: Vec<Vec<Elem>>,
    cands: Vec<Vec<(Elem, Elem)>>,
    n: u32,
    budget: usize,
    visited: AtomicUsize,
}

impl Search<'_> {
    fn consistent(&self, chosen: &[(Elem, Elem)]) -> bool {
        let j = chosen.len() - 1;
        let (x, y) = &chosen[j];
        (0..=j).all(|i| {
            let (a, b) = &chosen[i];
            let t = &(a * x) + &(b * y);
            self.traces2[i][j].congruent(&t, self.n)
        })
    }

    fn extend(
        &self,
        chosen: &mut Vec<(Elem, Elem)>,
        out: &mut Vec<Vec<(Elem, Elem)>>,
    ) -> Result<()> {
        if self.visited.fetch_add(1, Ordering::Relaxed) > self.budget {
            return Err(Error::OracleBudget(format!(
                "more than {} partial assignments",
                self.budget
            )));
        }
        if chosen.len() == self.gens.len() {
            out.push(chosen.clone());
            return Ok(());
        }
        for c in &self.cands[chosen.len()] {
            chosen.push(c.clone());
            if self.consistent(chosen) {
                self.extend(chosen, out)?;
            }
            chosen.pop();
        }
        Ok(())
    }
}

/// Every ordered pair of characters `G -> (O_K / pi^n)^x` with
/// `trace rho(w) ≡ chi1(w) + chi2(w)` and `det rho(w) ≡ chi1(w) chi2(w)`
/// for all words of length at most `word_depth`, and which factor through
/// the image: words with equal matrices get equal values.
pub fn enumerate_character_pairs(
    group: &GroupInput,
    n: u32,
    word_depth: usize,
    budget: usize,
) -> Result<PairEnumeration> {
    let integral = integral_generators(group)?;
    let ring = &integral.ring;
    if n == 0 || n > ring.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "modulus {} at precision {}",
            n,
            ring.precision()
        )));
    }
    let rn = ring.with_precision(n)?;
    let gens = &integral.generators;
    let k = gens.len();

    let mut cands = Vec::with_capacity(k);
    for g in gens {
        let poly = charpoly(g);
        let roots = roots_mod(&poly, n, budget)?;
        let tr = poly.trace().to_ring(&rn)?;
        let mut list = vec![];
        for x in roots {
            let x = x.to_ring(&rn)?;
            let y = &tr - &x;
            if x.is_unit() && y.is_unit() {
                list.push((x, y));
            }
        }
        cands.push(list);
    }
    let traces2: Vec<Vec<Elem>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| gens[i].mul(&gens[j]).trace().to_ring(&rn))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let search = Search {
        gens,
        traces2,
        cands: cands.clone(),
        n,
        budget,
        visited: AtomicUsize::new(0),
    };

    let partial: Vec<Vec<Vec<(Elem, Elem)>>> = cands[0]
        .par_iter()
        .map(|c| {
            let mut out = vec![];
            search.extend(&mut vec![c.clone()], &mut out)?;
            Ok(out)
        })
        .collect::<Result<_>>()?;

    // Full check on words, plus the factor-through-image condition.
    let words = words_up_to(k, word_depth);
    let mats: Vec<(Word, Mat2)> = words
        .iter()
        .map(|w| (w.clone(), eval_word(gens, ring, w)))
        .collect();
    let mut first_with: HashMap<&Mat2, &Word> = HashMap::new();
    let mut repeats: Vec<(&Word, &Word)> = vec![];
    let id = Mat2::identity(ring);
    let mut trivial: Vec<&Word> = vec![];
    for (w, m) in &mats {
        if *m == id {
            trivial.push(w);
        }
        match first_with.get(m) {
            Some(v) => repeats.push((w, v)),
            None => {
                first_with.insert(m, w);
            }
        }
    }
    let word_traces: Vec<(Word, Elem)> = mats
        .iter()
        .map(|(w, m)| Ok((w.clone(), m.trace().to_ring(&rn)?)))
        .collect::<Result<_>>()?;

    let mut pairs = vec![];
    for assignment in partial.into_iter().flatten() {
        let x: Vec<Elem> = assignment.iter().map(|(a, _)| a.clone()).collect();
        let y: Vec<Elem> = assignment.iter().map(|(_, b)| b.clone()).collect();
        let chi1 = CharacterMod::new(n, &x)?;
        let chi2 = CharacterMod::new(n, &y)?;
        let traces_ok = word_traces
            .iter()
            .all(|(w, t)| t.congruent(&(&chi1.eval(w) + &chi2.eval(w)), n));
        let image_ok = repeats
            .iter()
            .all(|(w, v)| chi1.eval(w) == chi1.eval(v) && chi2.eval(w) == chi2.eval(v))
            && trivial
                .iter()
                .all(|w| chi1.eval(w).is_one() && chi2.eval(w).is_one());
        if traces_ok && image_ok {
            pairs.push(CharacterPair::new(chi1, chi2)?);
        }
    }
    Ok(PairEnumeration {
        n,
        word_depth,
        candidates_per_generator: cands.iter().map(Vec::len).collect(),
        nodes_visited: search.visited.load(Ordering::Relaxed),
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::RingSpec;
    use crate::families::{band_default, congruence_group};
    use crate::subtree::{compute_subtree, DEFAULT_VERTEX_BUDGET};

    #[test]
    fn ball_matches_subtree() {
        let g = band_default().unwrap();
        let o = LatticeClass::standard(&g.ring);
        let ball = enumerate_stable_ball(&g, &o, 5, 1 << 16).unwrap();
        let t = compute_subtree(&g, &o, 10, DEFAULT_VERTEX_BUDGET).unwrap();
        let mut tv = t.vertices.clone();
        tv.sort();
        assert_eq!(ball.stable, tv);
        assert_eq!(ball.classes_checked, 1 + 6 + 30 + 150 + 750 + 3750);
    }

    #[test]
    fn scalar_and_irreducible_balls() {
        use crate::families::{residually_irreducible, scalar_group};
        let r = Ring::new(RingSpec::padic(3, 10)).unwrap();
        let o = LatticeClass::standard(&r);
        let all = enumerate_stable_ball(&scalar_group(&r, 2).unwrap(), &o, 2, 1 << 10).unwrap();
        assert_eq!(all.stable.len(), 17);
        let one =
            enumerate_stable_ball(&residually_irreducible(&r).unwrap(), &o, 3, 1 << 10).unwrap();
        assert_eq!(one.stable, vec![o]);
        assert!(matches!(
            enumerate_stable_ball(
                &scalar_group(&r, 2).unwrap(),
                &LatticeClass::standard(&r),
                6,
                100
            ),
            Err(Error::OracleBudget(_))
        ));
    }

    #[test]
    fn pairs_exist_up_to_the_diameter() {
        let r = Ring::new(RingSpec::padic(3, 10)).unwrap();
        let g = congruence_group(&r, 2, Some((2, 1))).unwrap();
        assert!(!enumerate_character_pairs(&g, 2, 3, 1 << 20)
            .unwrap()
            .pairs
            .is_empty());
        assert!(enumerate_character_pairs(&g, 3, 3, 1 << 20)
            .unwrap()
            .pairs
            .is_empty());
    }

    #[test]
    fn thin_edge_has_m_zero() {
        let r = Ring::new(RingSpec::padic(3, 10)).unwrap();
        let g = congruence_group(&r, 1, Some((2, 1))).unwrap();
        let e = enumerate_character_pairs(&g, 1, 3, 1 << 16).unwrap();
        assert!(!e.pairs.is_empty());
        assert_eq!(e.pairs.iter().map(|p| p.m).max(), Some(0));
        let plain =
            enumerate_character_pairs(&congruence_group(&r, 1, None).unwrap(), 1, 3, 1 << 16)
                .unwrap();
        assert_eq!(plain.pairs.iter().map(|p| p.m).max(), Some(1));
    }

    #[test]
    fn trivial_group_has_only_the_trivial_pair() {
        let r = Ring::new(RingSpec::padic(3, 8)).unwrap();
        let g = GroupInput::new(&r, vec![Mat2::identity(&r)], "trivial").unwrap();
        let e = enumerate_character_pairs(&g, 2, 2, 1 << 16).unwrap();
        assert_eq!(e.pairs.len(), 1);
        assert!(e.pairs[0].chi1.values[0].is_one());
    }
}
