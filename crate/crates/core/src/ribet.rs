//! Constructive versions of the boundary-basis lemma, the single-matrix
//! witness, the reducibility theorem (a conjugate pair modulo `pi^n` yields
//! two stable vertices at distance `n`) and the optimal Ribet lattice.

use serde::Serialize;

use crate::characters::{
    eval_word, integral_generators, is_conjugate_pair, reorder_match, CharacterMod, CharacterPair,
    Pairing, Word, DEFAULT_SEED, DEFAULT_WORD_COUNT, DEFAULT_WORD_DEPTH,
};
use crate::coeffring::{roots_mod, Elem, QuadFactorization};
use crate::error::{Error, Result};
use crate::matlat::{
    adapted_basis, canonicalize, charpoly, conjugate_literal, distance, neighbors, AdaptedBasis,
    LatticeClass, Mat2, Vec2,
};
use crate::subtree::{
    classify_shape, compute_subtree, is_stable, GroupInput, IntegralModel, Shape, ShapeReport,
    StableSubtree, DEFAULT_VERTEX_BUDGET,
};

const ROOT_BUDGET: usize = 1 << 16;

/// `(w1, w2) = ((g - beta) v, v)`: a basis of `Lambda_x / pi^n` in which `g`
/// acts as `[[alpha, 1], [0, beta]]`. Vectors are coordinates with respect
/// to the columns of the canonical representative of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryBasis {
    pub v: Vec2,
    pub w1: Vec2,
    pub w2: Vec2,
    /// The matrix of `g` in the basis `(w1, w2)`, modulo `pi^n`.
    pub matrix: Mat2,
}

impl BoundaryBasis {
    pub fn matrix_of_basis(&self) -> Mat2 {
        Mat2::from_cols(&self.w1, &self.w2)
    }
}

/// `g` written in the basis of `Lambda_x`; fails when `g` does not preserve
/// `Lambda_x`.
fn local_matrix(g: &Mat2, x: &LatticeClass) -> Result<Mat2> {
    if !g.is_integral() {
        return Err(Error::NotIntegral(format!("{} has a denominator", g)));
    }
    conjugate_literal(g, &x.rep())
}

pub fn boundary_basis(
    g: &Mat2,
    x: &LatticeClass,
    alpha: &Elem,
    beta: &Elem,
    n: u32,
) -> Result<BoundaryBasis> {
    let gx = local_matrix(g, x)?;
    let ring = gx.ring().clone();
    if n > ring.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "basis modulo pi^{} at depth {} needs more than {} digits",
            n,
            x.depth(),
            g.ring().precision()
        )));
    }
    if gx.is_scalar_mod(1) {
        return Err(Error::NotABoundaryPoint);
    }
    let alpha = alpha.to_ring(&ring)?;
    let beta = beta.to_ring(&ring)?;
    if !charpoly(&gx).factors_as(&alpha, &beta, n) {
        return Err(Error::BadFactorization(format!(
            "{} is not (t - {})(t - {}) modulo pi^{}",
            charpoly(&gx),
            alpha,
            beta,
            n
        )));
    }
    let one = ring.one();
    let zero = ring.zero();
    let candidates = [
        [zero.clone(), one.clone()],
        [one.clone(), zero.clone()],
        [one.clone(), one],
    ];
    let v = candidates
        .into_iter()
        .find(|v| Mat2::from_cols(v, &gx.apply(v)).det().is_unit())
        .ok_or(Error::NotABoundaryPoint)?;
    let gv = gx.apply(&v);
    let w1 = [&gv[0] - &(&beta * &v[0]), &gv[1] - &(&beta * &v[1])];
    let w2 = v.clone();
    let b = Mat2::from_cols(&w1, &w2);
    let target = Mat2::new(alpha.clone(), ring.one(), ring.zero(), beta.clone());
    let lhs = gx.mul(&b);
    let rhs = b.mul(&target);
    if lhs.sub(&rhs).min_valuation() < n {
        return Err(Error::BadFactorization(format!(
            "g is not [[alpha, 1], [0, beta]] modulo pi^{} in the constructed basis",
            n
        )));
    }
    Ok(BoundaryBasis {
        v,
        w1,
        w2,
        matrix: target,
    })
}

/// The vertex `y` with `Lambda_y = span(w1, pi^n w2)`, in global coordinates.
fn far_vertex(x: &LatticeClass, w1: &Vec2, w2: &Vec2, n: u32) -> Result<LatticeClass> {
    let wide = x.ring().clone();
    let w1 = [w1[0].to_ring(&wide)?, w1[1].to_ring(&wide)?];
    let w2 = [
        w2[0].to_ring(&wide)?.mul_pi_pow(n),
        w2[1].to_ring(&wide)?.mul_pi_pow(n),
    ];
    canonicalize(&x.rep().mul(&Mat2::from_cols(&w1, &w2)))
}

fn witness_from_roots(
    g: &Mat2,
    x: &LatticeClass,
    alpha: &Elem,
    beta: &Elem,
    n: u32,
) -> Result<LatticeClass> {
    let bb = boundary_basis(g, x, alpha, beta, n)?;
    far_vertex(x, &bb.w1, &bb.w2, n)
}

/// A vertex `y` stable under `g` with `d(x, y) = n`, for a boundary point `x`
/// of the stable set of `g` whose characteristic polynomial is reducible
/// modulo `pi^n`.
pub fn single_matrix_witness(g: &Mat2, x: &LatticeClass, n: u32) -> Result<LatticeClass> {
    let gx = local_matrix(g, x)?;
    if gx.is_scalar_mod(1) {
        return Err(Error::NotABoundaryPoint);
    }
    let poly = charpoly(&gx);
    let roots = roots_mod(&poly, n, ROOT_BUDGET)?;
    let alpha = roots.first().ok_or(Error::NotReducible(n))?;
    let beta = &poly.trace() - alpha;
    witness_from_roots(g, x, alpha, &beta, n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WitnessBranch {
    /// The stable set of `g0` equals the stable subtree.
    SingleMatrix,
    /// Through `f = rho(g1) - a rho(g0)`.
    Combination,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessTrace {
    pub branch: WitnessBranch,
    pub n: u32,
    pub g0: Word,
    pub g0_valuation: u32,
    pub words_searched: usize,
    pub a: Option<Elem>,
    pub g1: Option<Word>,
    pub delta: Option<Elem>,
    /// `rho(g1) - a rho(g0)` in model coordinates.
    pub f: Option<Mat2>,
    pub x: LatticeClass,
    pub z: LatticeClass,
    pub x_model: LatticeClass,
    pub z_model: LatticeClass,
    pub distance: u32,
    pub steps: Vec<String>,
}

/// Integral model, its explored subtree and shape, shared by the theorem-level
/// routines.
#[derive(Debug, Clone)]
pub struct Explored {
    pub model: IntegralModel,
    pub tree: StableSubtree,
    pub shape: ShapeReport,
}

impl Explored {
    pub fn new(group: &GroupInput) -> Result<Explored> {
        let model = IntegralModel::from_input(group, 64)?;
        let cap = model.default_cap();
        Explored::with_cap(model, cap)
    }

    pub fn with_cap(model: IntegralModel, cap: u32) -> Result<Explored> {
        let tree = compute_subtree(
            &model.group,
            &LatticeClass::standard(model.ring()),
            cap,
            DEFAULT_VERTEX_BUDGET,
        )?;
        let shape = classify_shape(&tree);
        Ok(Explored { model, tree, shape })
    }
}

/// The reducibility theorem made explicit: from a conjugate pair modulo
/// `pi^n`, produce stable vertices `x`, `z` with `d(x, z) = n`.
pub fn reducibility_witness(group: &GroupInput, pair: &CharacterPair) -> Result<WitnessTrace> {
    let ex = Explored::new(group)?;
    reducibility_witness_in(&ex, pair)
}

pub fn reducibility_witness_in(ex: &Explored, pair: &CharacterPair) -> Result<WitnessTrace> {
    let group = &ex.model.group;
    let tree = &ex.tree;
    let ring = group.ring.clone();
    let n = pair.n();
    let mut steps = vec![];
    if ex.shape.shape == Shape::WholeTree {
        return Err(Error::InvalidInput("the image consists of scalars".into()));
    }
    let cert = is_conjugate_pair(
        group,
        pair,
        DEFAULT_WORD_DEPTH,
        DEFAULT_WORD_COUNT,
        DEFAULT_SEED,
    )?;
    if !cert.pass {
        return Err(Error::InvalidInput(format!(
            "not a conjugate pair modulo pi^{}: fails on {:?}",
            n, cert.first_violation
        )));
    }
    let chi_ring = pair.chi1.ring().clone();
    let diff = |i: usize| &pair.chi2.values[i] - &pair.chi1.values[i];
    let (i0, e0) = (0..group.len())
        .map(|i| (i, diff(i).valuation()))
        .min_by_key(|&(i, v)| (v, i))
        .unwrap();
    let g0 = group.generators[i0].clone();
    steps.push(format!("minimizer g{} with v(chi2 - chi1) = {}", i0, e0));

    // A vertex of the subtree with a neighbor outside it that g0 still fixes.
    let mut outside = None;
    'scan: for x in &tree.vertices {
        for y in neighbors(x)? {
            if !tree.contains(&y) && is_stable(&y, &g0)? {
                outside = Some((x.clone(), y));
                break 'scan;
            }
        }
    }

    let finish = |branch,
                  x: LatticeClass,
                  z: LatticeClass,
                  a,
                  g1,
                  delta,
                  f,
                  mut steps: Vec<String>|
     -> Result<WitnessTrace> {
        for (i, g) in group.generators.iter().enumerate() {
            if !is_stable(&z, g)? {
                return Err(Error::TheoremViolationWitness(format!(
                    "z is not stable under g{}",
                    i
                )));
            }
        }
        let dist = distance(&x, &z)?;
        if dist != n {
            return Err(Error::TheoremViolationWitness(format!(
                "d(x, z) = {} instead of {}",
                dist, n
            )));
        }
        steps.push(format!("z = {} at distance {}", z, dist));
        Ok(WitnessTrace {
            branch,
            n,
            g0: vec![i0],
            g0_valuation: e0,
            words_searched: group.len(),
            a,
            g1,
            delta,
            f,
            x: ex.model.to_original(&x)?,
            z: ex.model.to_original(&z)?,
            x_model: x,
            z_model: z,
            distance: dist,
            steps,
        })
    };

    let Some((x, y)) = outside else {
        steps.push("the stable set of the minimizer is the whole subtree".into());
        let interior = tree.interior();
        let xi = (0..tree.len()).find(|&i| !interior[i]).ok_or_else(|| {
            Error::TheoremViolationWitness("no boundary vertex in a finite subtree".into())
        })?;
        let x = tree.vertices[xi].clone();
        steps.push(format!("boundary point x = {}", x));
        let alpha = &pair.chi1.values[i0];
        let beta = &pair.chi2.values[i0];
        let z = witness_from_roots(&g0, &x, alpha, beta, n)?;
        return finish(
            WitnessBranch::SingleMatrix,
            x,
            z,
            None,
            None,
            None,
            None,
            steps,
        );
    };
    steps.push(format!(
        "x = {} in the subtree, neighbor y = {} stable under the minimizer but outside the subtree",
        x, y
    ));

    let mut i1 = None;
    for (i, g) in group.generators.iter().enumerate() {
        if !is_stable(&y, g)? {
            i1 = Some(i);
            break;
        }
    }
    let i1 = i1.ok_or_else(|| {
        Error::TheoremViolationWitness("y is stable under every generator".into())
    })?;
    let d0 = diff(i0);
    let d1 = diff(i1);
    let a = if d1.is_zero() {
        chi_ring.zero()
    } else {
        &d1.div_pi_pow(e0)? * &d0.div_pi_pow(e0)?.inverse()?
    };
    let delta = &pair.chi1.values[i1] - &(&a * &pair.chi1.values[i0]);
    steps.push(format!(
        "second element g{} moves y; a = {}, delta = {}",
        i1, a, delta
    ));
    let a_model = a.to_ring(&ring)?;
    let f = group.generators[i1].sub(&group.generators[i0].scale(&a_model));
    let bb = boundary_basis(&f, &x, &delta, &delta, n).map_err(|e| match e {
        Error::NotABoundaryPoint => {
            Error::TheoremViolationWitness("x is not a boundary point for f".into())
        }
        other => other,
    })?;

    // Every generator must be upper triangular modulo pi^n in (w1, w2).
    let b = bb.matrix_of_basis();
    let det_inv = b.det().inverse()?;
    let b_inv = b.adj().scale(&det_inv);
    for (i, g) in group.generators.iter().enumerate() {
        let gx = local_matrix(g, &x)?;
        let in_basis = b_inv.mul(&gx.to_ring(b.ring())?).mul(&b);
        if in_basis.c.valuation() < n {
            return Err(Error::TheoremViolationWitness(format!(
                "c_g{} has valuation {} < {}",
                i,
                in_basis.c.valuation(),
                n
            )));
        }
    }
    steps.push("c_g = 0 modulo pi^n for every generator".into());
    let z = far_vertex(&x, &bb.w1, &bb.w2, n)?;
    finish(
        WitnessBranch::Combination,
        x,
        z,
        Some(a),
        Some(vec![i1]),
        Some(delta),
        Some(f),
        steps,
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct RibetLatticeReport {
    /// The vertex whose lattice realizes the extension, in original coordinates.
    pub x: LatticeClass,
    /// The other end of the diametral pair.
    pub y: LatticeClass,
    pub x_model: LatticeClass,
    pub y_model: LatticeClass,
    /// Adapted basis at the diametral pair, in model coordinates.
    pub basis: AdaptedBasis,
    /// Diagonal characters at `x` modulo `pi^n_rho`: `eta1` on the stable
    /// line, `eta2` on the quotient.
    pub eta1: CharacterMod,
    pub eta2: CharacterMod,
    /// `Swap` when the diametral pair was reversed so that `eta_i ≡ chi_i`
    /// modulo `pi^s`.
    pub ordering: Pairing,
    pub n_rho: u32,
    pub s: u32,
    pub residually_nonsplit: bool,
    pub nonsplit_witness: Option<usize>,
    /// Generators in the adapted basis, in `Gamma_0(pi^n_rho)` shape.
    pub triangular_forms: Vec<Mat2>,
}

/// Generators written in an adapted basis at `(x, y)`, and the diagonal
/// characters modulo `pi^d(x, y)`.
pub fn harvest_pair(
    group: &GroupInput,
    x: &LatticeClass,
    y: &LatticeClass,
) -> Result<(AdaptedBasis, Vec<Mat2>, CharacterPair)> {
    let ab = adapted_basis(x, y)?;
    let d = ab.d;
    let basis = ab.matrix().to_ring(&group.ring)?;
    if d == 0 {
        return Err(Error::InvalidInput("the pair of vertices coincides".into()));
    }
    let mut forms = Vec::with_capacity(group.len());
    for (i, g) in group.generators.iter().enumerate() {
        let t = conjugate_literal(g, &basis)?;
        if t.c.valuation() < d.min(t.ring().precision()) {
            return Err(Error::TheoremViolationWitness(format!(
                "g{} is not in Gamma_0(pi^{}) at the pair",
                i, d
            )));
        }
        forms.push(t);
    }
    let a: Vec<Elem> = forms.iter().map(|t| t.a.clone()).collect();
    let dd: Vec<Elem> = forms.iter().map(|t| t.d.clone()).collect();
    let pair = CharacterPair::new(
        CharacterMod::new(d, &a)?.harvested(),
        CharacterMod::new(d, &dd)?.harvested(),
    )?;
    Ok((ab, forms, pair))
}

/// Whether `Lambda_x / pi` is a non-split extension for the triangular forms:
/// split iff some `c` in the residue field has `b_g ≡ c (d_g - a_g) mod pi`
/// for every generator.
pub fn residually_nonsplit(forms: &[Mat2]) -> (bool, Option<usize>) {
    let Some(first) = forms.first() else {
        return (false, None);
    };
    let ring = first.ring();
    let split = ring.residue_reps().iter().any(|c| {
        forms.iter().all(|t| {
            let rhs = c.to_ring(t.ring()).unwrap() * (&t.d - &t.a);
            t.b.congruent(&rhs, 1)
        })
    });
    let witness = forms.iter().position(|t| t.b.is_unit());
    (!split, if split { None } else { witness })
}

/// The optimal Ribet lattice for `pair` on a finite band.
pub fn ribet_lattice(group: &GroupInput, pair: &CharacterPair) -> Result<RibetLatticeReport> {
    let ex = Explored::new(group)?;
    ribet_lattice_in(&ex, pair, None)
}

/// As [`ribet_lattice`], on an explored subtree, optionally at a chosen pair
/// of model vertices at distance `n(rho)`.
pub fn ribet_lattice_in(
    ex: &Explored,
    pair: &CharacterPair,
    ends: Option<(LatticeClass, LatticeClass)>,
) -> Result<RibetLatticeReport> {
    if !ex.shape.shape.is_finite_band() || ex.tree.truncated {
        return Err(Error::NotIrreducible(format!("{:?}", ex.shape.shape)));
    }
    let d = ex.shape.d.expect("finite band");
    if pair.n() > d {
        return Err(Error::ModulusExceedsDiameter { n: pair.n(), d });
    }
    let (x, y) = match ends {
        Some(e) => e,
        None => ex.shape.diametral.clone().expect("finite band"),
    };
    if distance(&x, &y)? != d {
        return Err(Error::InvalidInput(
            "the chosen vertices are not diametral".into(),
        ));
    }
    let (mut basis, mut forms, mut harvested) = harvest_pair(&ex.model.group, &x, &y)?;
    let s = pair.s;
    let m = reorder_match(pair, &harvested)?;
    // The far end carries the reversed extension.
    let (x, y) = match m.ordering {
        Pairing::Identity => (x, y),
        Pairing::Swap => {
            (basis, forms, harvested) = harvest_pair(&ex.model.group, &y, &x)?;
            (y, x)
        }
    };
    let (nonsplit, witness) = residually_nonsplit(&forms);
    Ok(RibetLatticeReport {
        x: ex.model.to_original(&x)?,
        y: ex.model.to_original(&y)?,
        x_model: x,
        y_model: y,
        basis,
        eta1: harvested.chi1,
        eta2: harvested.chi2,
        ordering: m.ordering,
        n_rho: d,
        s,
        residually_nonsplit: nonsplit,
        nonsplit_witness: witness,
        triangular_forms: forms,
    })
}

/// Checks that `f = a rho(g) + b rho(h)` has characteristic polynomial
/// `(t - (a chi1(g) + b chi1(h)))(t - (a chi2(g) + b chi2(h)))` modulo `pi^n`.
pub fn factor_linear_combination(
    group: &GroupInput,
    pair: &CharacterPair,
    g: &[usize],
    h: &[usize],
    a: &Elem,
    b: &Elem,
) -> Result<QuadFactorization> {
    let integral = integral_generators(group)?;
    let ring = &integral.ring;
    let n = pair.n();
    let cr = pair.chi1.ring();
    let (ar, br) = (a.to_ring(ring)?, b.to_ring(ring)?);
    let big_a = eval_word(&integral.generators, ring, g).scale(&ar);
    let big_b = eval_word(&integral.generators, ring, h).scale(&br);
    let f = big_a.add(&big_b);

    let lhs = &(&f.det() - &big_a.det()) - &big_b.det();
    let rhs = &(&big_a.trace() * &big_b.trace()) - &big_a.mul(&big_b).trace();
    if lhs != rhs {
        return Err(Error::TheoremViolationWitness(
            "polarisation identity fails".into(),
        ));
    }

    let (ac, bc) = (a.to_ring(cr)?, b.to_ring(cr)?);
    let l1 = &(&ac * &pair.chi1.eval(g)) + &(&bc * &pair.chi1.eval(h));
    let l2 = &(&ac * &pair.chi2.eval(g)) + &(&bc * &pair.chi2.eval(h));
    let tr = f.trace().to_ring(cr)?;
    let det = f.det().to_ring(cr)?;
    if !tr.congruent(&(&l1 + &l2), n) || !det.congruent(&(&l1 * &l2), n) {
        return Err(Error::TheoremViolationWitness(format!(
            "characteristic polynomial of a*g + b*h does not factor modulo pi^{}",
            n
        )));
    }
    let gap = (&l1 - &l2).valuation();
    Ok(QuadFactorization {
        alpha: l1,
        beta: l2,
        gap,
        exact: true,
    })
}
