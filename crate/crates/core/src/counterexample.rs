//! A family showing that the Ribet modulus `s` cannot be raised to `n`.
//!
//! Over an unramified ring with residue degree `f >= 2`, take `beta = {1, u}`
//! and the generators
//! `D_j = diag(1 + pi^m beta_j, 1)`, `U_j = [[1, beta_j], [0, 1]]`,
//! `L_j = [[1, 0], [pi^n beta_j, 1]]`, `D'_j = diag(1, 1 + pi^m beta_j)`.
//! The diagonal characters `(chi1, chi2)` are perturbed by an additive
//! character `eps` with values in `pi^(n-m)`:
//! `eta1 = chi1 (1 + eps)`, `eta2 = chi2 (1 - eps)`. The pair `(eta1, eta2)`
//! is still a conjugate pair modulo `pi^n`, but `eta1` violates the linear
//! relation `D_1 - u^-1 D_2 - U_1 + u^-1 U_2 = 0` modulo `pi^n`, so no lattice
//! carries it as a sub-character modulo `pi^n`.

use serde::Serialize;

use crate::characters::{
    kernel_relations, linear_extendability_residual, CharacterMod, CharacterPair, Extendability,
    Relation,
};
use crate::coeffring::{Elem, Ring, RingSpec};
use crate::error::{Error, Result};
use crate::families::{diagonal_pair, lower_unipotent, upper_unipotent};
use crate::matlat::{distance, LatticeClass, Mat2};
use crate::ribet::{harvest_pair, Explored};
use crate::subtree::GroupInput;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleSpec {
    pub p: u64,
    pub f: u32,
    pub m: u32,
    pub n: u32,
    pub precision: u32,
}

impl CounterexampleSpec {
    pub fn new(p: u64, f: u32, m: u32, n: u32) -> CounterexampleSpec {
        CounterexampleSpec {
            p,
            f,
            m,
            n,
            precision: (2 * n + 4).max(12),
        }
    }

    pub fn s(&self) -> u32 {
        self.n - self.m
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub spec: CounterexampleSpec,
    pub group: GroupInput,
    pub chi: CharacterPair,
    pub eta: CharacterPair,
    pub epsilon: Vec<Elem>,
    pub relation: Relation,
    /// Index of `D_1`, the generator where `eps` is nonzero.
    pub g1: usize,
    /// `eta1` against the relation modulo `pi^n`.
    pub obstruction: Extendability,
    /// The same test for `chi1`, `chi2`, `eta1`, `eta2`.
    pub residuals: Vec<(String, Extendability)>,
}

pub fn build_counterexample(p: u64, f: u32, m: u32, n: u32) -> Result<Counterexample> {
    build_from_spec(&CounterexampleSpec::new(p, f, m, n))
}

pub fn build_from_spec(spec: &CounterexampleSpec) -> Result<Counterexample> {
    let (m, n) = (spec.m, spec.n);
    if spec.f < 2 {
        return Err(Error::Config(
            "the construction needs residue degree f >= 2".into(),
        ));
    }
    if m == 0 || 2 * m + 1 >= n {
        return Err(Error::Config(format!(
            "need 1 <= m and 2m + 1 < n, got m = {}, n = {}",
            m, n
        )));
    }
    let ring = Ring::new(RingSpec::unramified(spec.p, spec.f, spec.precision))?;
    let betas = [ring.one(), ring.u()];
    let bump = |b: &Elem| &ring.one() + &(b * &ring.pi_pow(m));
    let mut gens = vec![];
    for b in &betas {
        gens.push(Mat2::diag(&bump(b), &ring.one()));
    }
    for b in &betas {
        gens.push(upper_unipotent(&ring, b));
    }
    for b in &betas {
        gens.push(lower_unipotent(&ring, &(b * &ring.pi_pow(n))));
    }
    for b in &betas {
        gens.push(Mat2::diag(&ring.one(), &bump(b)));
    }
    let group = GroupInput::new(
        &ring,
        gens,
        &format!(
            "obstruction family p={} f={} m={} n={}",
            spec.p, spec.f, m, n
        ),
    )?;
    let chi = diagonal_pair(&group.generators, n)?;

    // eps = pi^(n-m) * lambda((chi1 - 1) / pi^m mod pi), with lambda the
    // F_p-linear functional taking 1 -> 1 and u -> 0. It is additive on G
    // because chi1 is a character with values in 1 + pi^m.
    let g1 = 0;
    let cr = chi.chi1.ring().clone();
    let gamma = cr.pi_pow(n - m);
    let epsilon: Vec<Elem> = (0..group.len())
        .map(|i| {
            if i == g1 {
                &chi.chi1.values[i].inverse().unwrap() * &gamma
            } else {
                cr.zero()
            }
        })
        .collect();
    let one = cr.one();
    let eta1: Vec<Elem> = chi
        .chi1
        .values
        .iter()
        .zip(&epsilon)
        .map(|(c, e)| c * &(&one + e))
        .collect();
    let eta2: Vec<Elem> = chi
        .chi2
        .values
        .iter()
        .zip(&epsilon)
        .map(|(c, e)| c * &(&one - e))
        .collect();
    let eta = CharacterPair::new(CharacterMod::new(n, &eta1)?, CharacterMod::new(n, &eta2)?)?;

    let relation = find_relation(&group, g1)?;
    let obstruction = linear_extendability_residual(&group, &eta.chi1, &relation, n)?;
    let mut residuals = vec![];
    for (name, c) in [
        ("chi1", &chi.chi1),
        ("chi2", &chi.chi2),
        ("eta1", &eta.chi1),
        ("eta2", &eta.chi2),
    ] {
        residuals.push((
            name.to_string(),
            linear_extendability_residual(&group, c, &relation, n)?,
        ));
    }
    Ok(Counterexample {
        spec: spec.clone(),
        group,
        chi,
        eta,
        epsilon,
        relation,
        g1,
        obstruction,
        residuals,
    })
}

/// A linear relation among the first five generators in which `g1` has
/// coefficient 1. `g1` is placed last so that it is a non-pivot column.
fn find_relation(group: &GroupInput, g1: usize) -> Result<Relation> {
    let mut order: Vec<usize> = (0..5).filter(|&i| i != g1).collect();
    order.push(g1);
    let mats: Vec<Mat2> = order.iter().map(|&i| group.generators[i].clone()).collect();
    let ker = kernel_relations(&mats, &group.ring)?;
    let v = ker.into_iter().find(|v| v[4].is_one()).ok_or_else(|| {
        Error::InvalidRelation("no relation with a unit coefficient at g1".into())
    })?;
    let terms = order
        .iter()
        .zip(v)
        .filter(|(_, a)| !a.is_zero())
        .map(|(&i, a)| (a, vec![i]))
        .collect();
    Ok(Relation { terms })
}

#[derive(Debug, Clone, Serialize)]
pub struct NoRibetReport {
    pub t: u32,
    pub pairs_scanned: usize,
    /// An ordered pair `(x, y)` with `d(x, y) >= t` whose lattice `Lambda_x`
    /// is an extension with sub-character `eta1` and quotient `eta2`
    /// modulo `pi^t`.
    pub realized_by: Option<(LatticeClass, LatticeClass)>,
    pub no_lattice: bool,
}

/// Scans every ordered pair of vertices of the explored subtree at distance
/// at least `t` and compares the diagonal characters there with
/// `(eta1, eta2)` modulo `pi^t`.
pub fn no_ribet_lattice_check(ex: &Explored, eta: &CharacterPair, t: u32) -> Result<NoRibetReport> {
    if t > eta.n() {
        return Err(Error::InvalidInput(format!(
            "t = {} exceeds the modulus {}",
            t,
            eta.n()
        )));
    }
    let target = eta.reduce(t)?;
    let verts = &ex.tree.vertices;
    let mut scanned = 0;
    for x in verts {
        for y in verts {
            if distance(x, y)? < t {
                continue;
            }
            scanned += 1;
            let (_, _, h) = harvest_pair(&ex.model.group, x, y)?;
            let h = h.reduce(t)?;
            let same = |a: &CharacterMod, b: &CharacterMod| {
                a.values
                    .iter()
                    .zip(&b.values)
                    .all(|(p, q)| p.congruent(q, t))
            };
            if same(&h.chi1, &target.chi1) && same(&h.chi2, &target.chi2) {
                return Ok(NoRibetReport {
                    t,
                    pairs_scanned: scanned,
                    realized_by: Some((ex.model.to_original(x)?, ex.model.to_original(y)?)),
                    no_lattice: false,
                });
            }
        }
    }
    Ok(NoRibetReport {
        t,
        pairs_scanned: scanned,
        realized_by: None,
        no_lattice: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::is_conjugate_pair;
    use crate::ribet::ribet_lattice_in;
    use crate::subtree::Shape;

    #[test]
    fn default_counterexample() {
        let c = build_counterexample(3, 2, 1, 4).unwrap();
        assert_eq!((c.eta.m, c.eta.s), (1, 3));
        assert_eq!(c.obstruction.residual, 3);
        assert!(!c.obstruction.extendable);
        let chi_ext = linear_extendability_residual(&c.group, &c.chi.chi1, &c.relation, 4).unwrap();
        assert!(chi_ext.extendable);
        assert!(is_conjugate_pair(&c.group, &c.eta, 6, 100, 7).unwrap().pass);

        let ex = Explored::new(&c.group).unwrap();
        assert_eq!(ex.tree.len(), 29);
        assert_eq!(ex.shape.shape, Shape::Band);
        assert_eq!((ex.shape.d, ex.shape.r), (Some(4), 1));

        let rep = ribet_lattice_in(&ex, &c.eta, None).unwrap();
        assert_eq!(rep.s, 3);
        assert!(rep.residually_nonsplit);
        assert!(!no_ribet_lattice_check(&ex, &c.eta, 3).unwrap().no_lattice);
        assert!(no_ribet_lattice_check(&ex, &c.eta, 4).unwrap().no_lattice);
        assert!(!no_ribet_lattice_check(&ex, &c.chi, 4).unwrap().no_lattice);
    }

    #[test]
    fn discovered_relation() {
        let c = build_counterexample(3, 2, 1, 4).unwrap();
        let ring = &c.group.ring;
        let u_inv = ring.u().inverse().unwrap();
        // Relations over R_N are unique only up to pi^(N-1).
        let expect = [ring.one(), -&u_inv, -ring.one(), u_inv.clone()];
        for (i, e) in expect.iter().enumerate() {
            assert!(c.relation.coefficient_of(&[i]).unwrap().congruent(e, 8));
        }
        let ext: Vec<bool> = c.residuals.iter().map(|(_, e)| e.extendable).collect();
        assert_eq!(ext, [true, true, false, false]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            build_counterexample(3, 1, 1, 4),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            build_counterexample(3, 2, 2, 4),
            Err(Error::Config(_))
        ));
    }
}
