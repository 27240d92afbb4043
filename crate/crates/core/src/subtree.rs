//! The stable subtree `X(rho)` of a finitely generated matrix group: stability
//! tests, a stable starting vertex, breadth-first exploration and shape
//! classification.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffring::Ring;
use crate::error::{Error, Result};
use crate::matlat::{
    canonicalize, conjugate_normalized, hnf_columns, neighbors, LatticeClass, Mat2, Vec2, GUARD,
};

/// Default cap on the number of explored vertices.
pub const DEFAULT_VERTEX_BUDGET: usize = 200_000;

/// Generator images of `rho`, each possibly with a denominator `pi^s`.
#[derive(Debug, Clone)]
pub struct GroupInput {
    pub ring: Ring,
    pub generators: Vec<Mat2>,
    pub label: String,
}

impl GroupInput {
    pub fn new(ring: &Ring, generators: Vec<Mat2>, label: &str) -> Result<GroupInput> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("generator list is empty".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!(
                    "generator {} is over {:?}",
                    i,
                    g.ring()
                )));
            }
            if g.det().is_zero() {
                return Err(Error::InvalidInput(format!("generator {} is singular", i)));
            }
        }
        Ok(GroupInput {
            ring: ring.clone(),
            generators,
            label: label.to_string(),
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether every generator is a scalar matrix.
    pub fn all_scalar(&self) -> bool {
        let n = self.ring.precision();
        self.generators.iter().all(|g| g.is_scalar_mod(n))
    }
}

/// Whether `g` fixes the class `x`. With `g = pi^-s g'` and `w = v(det g')`,
/// this holds iff `w` is even and `adj(R) g' R ≡ 0 mod pi^(D + w/2)` for the
/// representative `R` of `x` with `v(det R) = D`.
pub fn is_stable(x: &LatticeClass, g: &Mat2) -> Result<bool> {
    let ring = g.ring();
    let w = g.det().valuation();
    if w >= ring.precision() {
        return Err(Error::SingularLattice);
    }
    if w % 2 == 1 {
        return Ok(false);
    }
    let need = x.depth() + w / 2;
    if need > ring.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "stability at depth {} needs {} digits, have {}",
            x.depth(),
            need,
            ring.precision()
        )));
    }
    let r = x.rep_in(ring)?;
    let m = r.adj().mul(&g.numerator()).mul(&r);
    Ok(m.min_valuation() >= need)
}

pub fn is_stable_all(x: &LatticeClass, gens: &[Mat2]) -> Result<bool> {
    for g in gens {
        if !is_stable(x, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the search for a stable lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StableSearch {
    /// The lattice `pi^-scale Lambda_class`, stable under the normalized
    /// generators, reached after `iterations` sums.
    Found {
        class: LatticeClass,
        scale: i64,
        iterations: usize,
    },
    Unbounded {
        reason: String,
    },
}

/// Iterates `Lambda <- Lambda + sum_g g~ Lambda` from the standard lattice,
/// where `g~ = pi^(-w/2) g'` has unit determinant.
pub fn find_stable_vertex(group: &GroupInput, max_iter: usize) -> StableSearch {
    let ring = &group.ring;
    let wide = ring.wide();
    let mut halves = Vec::with_capacity(group.len());
    let mut lifted = Vec::with_capacity(group.len());
    for g in &group.generators {
        let w = g.det().valuation();
        if w % 2 == 1 {
            return StableSearch::Unbounded {
                reason: format!("generator {} has odd determinant valuation {}", g, w),
            };
        }
        halves.push(w / 2);
        match g.numerator().to_ring(&wide) {
            Ok(m) => lifted.push(m),
            Err(e) => {
                return StableSearch::Unbounded {
                    reason: e.to_string(),
                }
            }
        }
    }
    let top = *halves.iter().max().unwrap();
    let limit = ring.precision().saturating_sub(GUARD + top);

    let mut class = LatticeClass::standard(ring);
    let mut scale: i64 = 0;
    for it in 0..=max_iter {
        let rep = class.rep();
        let basis: [Vec2; 2] = [rep.col(0), rep.col(1)];
        let mut cols: Vec<Vec2> = basis
            .iter()
            .map(|v| [v[0].mul_pi_pow(top), v[1].mul_pi_pow(top)])
            .collect();
        for (g, &h) in lifted.iter().zip(&halves) {
            for v in &basis {
                let gv = g.apply(v);
                cols.push([gv[0].mul_pi_pow(top - h), gv[1].mul_pi_pow(top - h)]);
            }
        }
        let (k, next) = match hnf_columns(&cols) {
            Ok(x) => x,
            Err(e) => {
                return StableSearch::Unbounded {
                    reason: e.to_string(),
                }
            }
        };
        let next_scale = scale + top as i64 - k as i64;
        if next == class && next_scale == scale {
            return StableSearch::Found {
                class,
                scale,
                iterations: it,
            };
        }
        if next.depth() > limit {
            return StableSearch::Unbounded {
                reason: format!(
                    "lattice depth {} passed the precision limit {}",
                    next.depth(),
                    limit
                ),
            };
        }
        class = next;
        scale = next_scale;
    }
    StableSearch::Unbounded {
        reason: format!("no fixed lattice after {} iterations", max_iter),
    }
}

/// The generators written in a basis of a stable lattice, normalized to unit
/// determinant. All theorem-level routines run in these coordinates, where
/// the standard vertex is stable.
#[derive(Debug, Clone)]
pub struct IntegralModel {
    pub input: GroupInput,
    /// The stable vertex in the original coordinates.
    pub base: LatticeClass,
    /// Its canonical representative; its columns are the model's standard basis.
    pub basis: Mat2,
    pub group: GroupInput,
}

impl IntegralModel {
    pub fn new(input: &GroupInput, base: &LatticeClass) -> Result<IntegralModel> {
        let basis = base.rep();
        let mut conj = Vec::with_capacity(input.len());
        for g in &input.generators {
            conj.push(conjugate_normalized(g, &basis)?);
        }
        let prec = conj.iter().map(|m| m.ring().precision()).min().unwrap();
        let ring = input.ring.with_precision(prec)?;
        let gens = conj
            .iter()
            .map(|m| m.to_ring(&ring))
            .collect::<Result<Vec<_>>>()?;
        for (i, m) in gens.iter().enumerate() {
            if !m.det().is_unit() {
                return Err(Error::NotIntegral(format!(
                    "generator {} does not fix the base vertex {}",
                    i, base
                )));
            }
        }
        let group = GroupInput::new(&ring, gens, &input.label)?;
        Ok(IntegralModel {
            input: input.clone(),
            base: base.clone(),
            basis,
            group,
        })
    }

    pub fn from_input(input: &GroupInput, max_iter: usize) -> Result<IntegralModel> {
        match find_stable_vertex(input, max_iter) {
            StableSearch::Found { class, .. } => IntegralModel::new(input, &class),
            StableSearch::Unbounded { reason } => Err(Error::ConstructionFailed(format!(
                "no stable lattice: {}",
                reason
            ))),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.group.ring
    }

    /// Maps a model vertex back to the original coordinates.
    pub fn to_original(&self, x: &LatticeClass) -> Result<LatticeClass> {
        canonicalize(&self.basis.mul(&x.rep()))
    }

    /// Maps an original vertex into model coordinates.
    pub fn from_original(&self, x: &LatticeClass) -> Result<LatticeClass> {
        canonicalize(&self.basis.adj().mul(&x.rep()))
    }

    /// Default exploration radius around the standard model vertex.
    pub fn default_cap(&self) -> u32 {
        self.ring().precision().saturating_sub(GUARD)
    }
}

/// A finite explored part of `X(rho)`.
#[derive(Debug, Clone)]
pub struct StableSubtree {
    pub seed: LatticeClass,
    /// Vertices in breadth-first order from the seed.
    pub vertices: Vec<LatticeClass>,
    pub index: HashMap<LatticeClass, usize>,
    pub adjacency: Vec<Vec<usize>>,
    pub depth: Vec<u32>,
    pub truncated: bool,
    pub cap: u32,
    /// Largest distance from the seed among the collected vertices.
    pub explored_depth: u32,
    /// Size of the residue field, for the interior test.
    pub q: u64,
    pub all_scalar: bool,
}

impl StableSubtree {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, x: &LatticeClass) -> bool {
        self.index.contains_key(x)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for (i, ns) in self.adjacency.iter().enumerate() {
            for &j in ns {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Graph distances from a set of sources inside the subtree.
    pub fn bfs(&self, sources: &[usize]) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(i) = queue.pop_front() {
            for &j in &self.adjacency[i] {
                if dist[j] == u32::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    /// A vertex is interior when all `q + 1` of its neighbors are stable.
    pub fn interior(&self) -> Vec<bool> {
        self.adjacency
            .iter()
            .map(|ns| ns.len() as u64 == self.q + 1)
            .collect()
    }

    /// Vertices on the last explored layer of a truncated run, whose stable
    /// neighbors further out were not collected.
    pub fn on_cap(&self) -> Vec<bool> {
        self.depth
            .iter()
            .map(|&d| self.truncated && d == self.explored_depth)
            .collect()
    }
}

/// Breadth-first exploration of the stable vertices within graph distance
/// `cap` of `seed`. The result is truncated when a stable vertex at distance
/// `cap + 1` exists, or when `vertex_budget` vertices were collected.
pub fn compute_subtree(
    group: &GroupInput,
    seed: &LatticeClass,
    cap: u32,
    vertex_budget: usize,
) -> Result<StableSubtree> {
    if !is_stable_all(seed, &group.generators)? {
        return Err(Error::InvalidInput(format!("seed {} is not stable", seed)));
    }
    let q = group.ring.q();
    let mut vertices = vec![seed.clone()];
    let mut index = HashMap::from([(seed.clone(), 0usize)]);
    let mut adjacency: Vec<Vec<usize>> = vec![vec![]];
    let mut depth = vec![0u32];
    let mut frontier = vec![0usize];
    let mut truncated = false;
    let mut level = 0u32;

    while !frontier.is_empty() {
        let expanded: Vec<Vec<LatticeClass>> = frontier
            .par_iter()
            .map(|&i| neighbors(&vertices[i]))
            .collect::<Result<_>>()?;
        let mut candidates: Vec<(usize, LatticeClass)> = vec![];
        let mut fresh = HashSet::new();
        for (&parent, ns) in frontier.iter().zip(&expanded) {
            for y in ns {
                if !index.contains_key(y) && fresh.insert(y.clone()) {
                    candidates.push((parent, y.clone()));
                }
            }
        }
        let stable: Vec<bool> = candidates
            .par_iter()
            .map(|(_, y)| is_stable_all(y, &group.generators))
            .collect::<Result<_>>()?;
        let accepted: Vec<(usize, LatticeClass)> = candidates
            .into_iter()
            .zip(stable)
            .filter_map(|(c, s)| s.then_some(c))
            .collect();
        if accepted.is_empty() {
            break;
        }
        if level == cap || vertices.len() + accepted.len() > vertex_budget {
            truncated = true;
            break;
        }
        level += 1;
        let mut next = Vec::with_capacity(accepted.len());
        for (parent, y) in accepted {
            let id = vertices.len();
            index.insert(y.clone(), id);
            vertices.push(y);
            adjacency.push(vec![parent]);
            adjacency[parent].push(id);
            depth.push(level);
            next.push(id);
        }
        frontier = next;
    }

    Ok(StableSubtree {
        seed: seed.clone(),
        vertices,
        index,
        adjacency,
        depth,
        truncated,
        cap,
        explored_depth: level,
        q,
        all_scalar: group.all_scalar(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    Point,
    Segment,
    Ball,
    GeneralizedBall,
    Band,
    WholeTree,
    HorodiscSuspect,
    TruncatedUnknown,
}

impl Shape {
    /// Shapes of a finite band, i.e. of an irreducible representation.
    pub fn is_finite_band(self) -> bool {
        matches!(
            self,
            Shape::Point | Shape::Segment | Shape::Ball | Shape::GeneralizedBall | Shape::Band
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeReport {
    pub shape: Shape,
    /// `None` for infinite or unknown diameter.
    pub d: Option<u32>,
    pub r: u32,
    pub nerve: Vec<LatticeClass>,
    pub leaves: Vec<LatticeClass>,
    /// End points of a diametral path.
    pub diametral: Option<(LatticeClass, LatticeClass)>,
    #[serde(skip)]
    pub inradius: Vec<u32>,
    #[serde(skip)]
    pub nerve_ids: Vec<usize>,
}

fn farthest(dist: &[u32]) -> usize {
    let mut best = 0;
    for (i, &d) in dist.iter().enumerate() {
        if d != u32::MAX && d > dist[best] {
            best = i;
        }
    }
    best
}

/// Diameter and a diametral pair by double BFS.
pub fn double_bfs(t: &StableSubtree) -> (u32, usize, usize) {
    let a = farthest(&t.bfs(&[0]));
    let da = t.bfs(&[a]);
    let b = farthest(&da);
    (da[b], a, b)
}

/// Classifies a computed subtree. For a finite tree the radius is the largest
/// distance from a vertex to the non-interior vertices, and the nerve is where
/// it is attained; the result is validated as a band `B(nerve, r)`.
pub fn classify_shape(t: &StableSubtree) -> ShapeReport {
    let leaves: Vec<LatticeClass> = t
        .adjacency
        .iter()
        .enumerate()
        .filter(|(_, ns)| ns.len() <= 1)
        .map(|(i, _)| t.vertices[i].clone())
        .collect();
    let unknown = |shape| ShapeReport {
        shape,
        d: None,
        r: 0,
        nerve: vec![],
        leaves: leaves.clone(),
        diametral: None,
        inradius: vec![],
        nerve_ids: vec![],
    };
    if t.all_scalar {
        return unknown(Shape::WholeTree);
    }
    let interior = t.interior();
    if t.truncated {
        return classify_truncated(t, &interior, leaves);
    }

    let boundary: Vec<usize> = (0..t.len()).filter(|&i| !interior[i]).collect();
    if boundary.is_empty() {
        return unknown(Shape::TruncatedUnknown);
    }
    let inradius = t.bfs(&boundary);
    let r = *inradius.iter().max().unwrap();
    let nerve_ids: Vec<usize> = (0..t.len()).filter(|&i| inradius[i] == r).collect();

    // The nerve must be a path ...
    let in_nerve: HashSet<usize> = nerve_ids.iter().copied().collect();
    let mut ends = 0;
    for &i in &nerve_ids {
        let deg = t.adjacency[i]
            .iter()
            .filter(|j| in_nerve.contains(j))
            .count();
        match deg {
            0 if nerve_ids.len() == 1 => ends += 2,
            1 => ends += 1,
            2 => {}
            _ => return unknown(Shape::TruncatedUnknown),
        }
    }
    if ends != 2 {
        return unknown(Shape::TruncatedUnknown);
    }
    // ... whose r-neighborhood is the whole tree, with the band's diameter.
    let from_nerve = t.bfs(&nerve_ids);
    if from_nerve.iter().any(|&x| x > r) {
        return unknown(Shape::TruncatedUnknown);
    }
    let (d, xa, xb) = double_bfs(t);
    if d as usize != nerve_ids.len() - 1 + 2 * r as usize {
        return unknown(Shape::TruncatedUnknown);
    }

    // Order the nerve along the path.
    let mut nerve_order = vec![];
    if let Some(&start) = nerve_ids.iter().find(|&&i| {
        t.adjacency[i]
            .iter()
            .filter(|j| in_nerve.contains(j))
            .count()
            <= 1
    }) {
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            nerve_order.push(cur);
            let next = t.adjacency[cur]
                .iter()
                .copied()
                .find(|&j| in_nerve.contains(&j) && j != prev);
            match next {
                Some(j) => {
                    prev = cur;
                    cur = j;
                }
                None => break,
            }
        }
    }

    let shape = if d == 0 {
        Shape::Point
    } else if r == 0 {
        Shape::Segment
    } else if nerve_order.len() == 1 {
        Shape::Ball
    } else if nerve_order.len() == 2 {
        Shape::GeneralizedBall
    } else {
        Shape::Band
    };
    ShapeReport {
        shape,
        d: Some(d),
        r,
        nerve: nerve_order.iter().map(|&i| t.vertices[i].clone()).collect(),
        leaves,
        diametral: Some((t.vertices[xa].clone(), t.vertices[xb].clone())),
        inradius,
        nerve_ids: nerve_order,
    }
}

/// Truncated trees: the inradius is certified only where the nearest known
/// boundary vertex is closer than the unexplored region. A horodisc is
/// suspected when the largest certified inradius is positive and is attained
/// next to the unexplored region, so balls keep growing towards it.
fn classify_truncated(
    t: &StableSubtree,
    interior: &[bool],
    leaves: Vec<LatticeClass>,
) -> ShapeReport {
    let on_cap = t.on_cap();
    let known_boundary: Vec<usize> = (0..t.len())
        .filter(|&i| !interior[i] && !on_cap[i])
        .collect();
    let cap_ids: Vec<usize> = (0..t.len()).filter(|&i| on_cap[i]).collect();
    let to_boundary = if known_boundary.is_empty() {
        vec![u32::MAX; t.len()]
    } else {
        t.bfs(&known_boundary)
    };
    let to_cap = t.bfs(&cap_ids);
    let certified: Vec<u32> = (0..t.len())
        .map(|i| {
            if to_boundary[i] <= to_cap[i] {
                to_boundary[i]
            } else {
                0
            }
        })
        .collect();
    let best = certified.iter().copied().max().unwrap_or(0);
    let growing = best >= 1 && (0..t.len()).any(|i| certified[i] == best && to_cap[i] <= best + 1);
    ShapeReport {
        shape: if growing {
            Shape::HorodiscSuspect
        } else {
            Shape::TruncatedUnknown
        },
        d: None,
        r: best,
        nerve: vec![],
        leaves,
        diametral: None,
        inradius: certified,
        nerve_ids: vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::RingSpec;

    fn zp(p: u64, n: u32) -> Ring {
        Ring::new(RingSpec::padic(p, n)).unwrap()
    }

    fn m(r: &Ring, x: [[i64; 2]; 2]) -> Mat2 {
        Mat2::from_ints(r, x)
    }

    #[test]
    fn stability_examples() {
        let r = zp(3, 8);
        let o = LatticeClass::standard(&r);
        assert!(is_stable(&o, &m(&r, [[1, 1], [0, 1]])).unwrap());
        assert!(!is_stable(&o, &m(&r, [[0, 1], [3, 0]])).unwrap());
        let x = canonicalize(&m(&r, [[1, 0], [0, 3]])).unwrap();
        assert!(is_stable(&x, &m(&r, [[1, 0], [3, 1]])).unwrap());
    }

    #[test]
    fn stable_vertex_search() {
        let r = zp(3, 10);
        let g = GroupInput::new(
            &r,
            vec![m(&r, [[1, 1], [0, 1]]), m(&r, [[1, 0], [9, 1]])],
            "",
        )
        .unwrap();
        match find_stable_vertex(&g, 3) {
            StableSearch::Found {
                class, iterations, ..
            } => {
                assert_eq!(class, LatticeClass::standard(&r));
                assert!(iterations <= 3);
            }
            other => panic!("{:?}", other),
        }
        let d = m(&r, [[1, 0], [0, 3]]);
        let g = GroupInput::new(&r, vec![d.clone(), d.inverse().unwrap()], "").unwrap();
        assert!(matches!(
            find_stable_vertex(&g, 50),
            StableSearch::Unbounded { .. }
        ));
        let g = GroupInput::new(&r, vec![Mat2::identity(&r)], "").unwrap();
        assert_eq!(
            find_stable_vertex(&g, 1),
            StableSearch::Found {
                class: LatticeClass::standard(&r),
                scale: 0,
                iterations: 0
            }
        );
    }

    #[test]
    fn stable_vertex_of_conjugated_group() {
        let r = zp(3, 12);
        let h = m(&r, [[1, 2], [0, 9]]);
        let hi = h.inverse().unwrap();
        let gens = [
            m(&r, [[1, 1], [0, 1]]),
            m(&r, [[1, 0], [9, 1]]),
            m(&r, [[2, 0], [0, 1]]),
        ]
        .iter()
        .map(|g| h.mul(g).mul(&hi))
        .collect();
        let g = GroupInput::new(&r, gens, "").unwrap();
        let model = IntegralModel::from_input(&g, 20).unwrap();
        let t =
            compute_subtree(&model.group, &LatticeClass::standard(model.ring()), 6, 1000).unwrap();
        assert_eq!(t.len(), 3);
        assert!(!t.truncated);
    }

    #[test]
    fn residually_irreducible_is_a_point() {
        let r = zp(3, 8);
        let g = GroupInput::new(
            &r,
            vec![m(&r, [[1, 1], [0, 1]]), m(&r, [[1, 0], [1, 1]])],
            "",
        )
        .unwrap();
        let t = compute_subtree(&g, &LatticeClass::standard(&r), 6, 1000).unwrap();
        assert_eq!(t.len(), 1);
        let s = classify_shape(&t);
        assert_eq!((s.shape, s.d, s.r), (Shape::Point, Some(0), 0));
    }

    #[test]
    fn congruence_level_one_is_an_edge() {
        let r = zp(3, 8);
        let g = GroupInput::new(
            &r,
            vec![m(&r, [[1, 1], [0, 1]]), m(&r, [[1, 0], [3, 1]])],
            "",
        )
        .unwrap();
        let t = compute_subtree(&g, &LatticeClass::standard(&r), 6, 1000).unwrap();
        let s = classify_shape(&t);
        assert_eq!(
            (s.shape, s.d, s.r, t.len()),
            (Shape::Segment, Some(1), 0, 2)
        );
    }

    #[test]
    fn ball_of_radius_one() {
        let r = zp(3, 10);
        let g = GroupInput::new(
            &r,
            vec![m(&r, [[1, 1], [0, 1]]), m(&r, [[1, 0], [9, 1]])],
            "",
        )
        .unwrap();
        let t = compute_subtree(&g, &LatticeClass::standard(&r), 8, 1000).unwrap();
        assert_eq!(t.len(), 5);
        let s = classify_shape(&t);
        assert_eq!((s.shape, s.d, s.r), (Shape::Ball, Some(2), 1));
        assert_eq!(
            s.nerve,
            vec![canonicalize(&m(&r, [[1, 0], [0, 3]])).unwrap()]
        );
    }

    #[test]
    fn scalar_group_is_whole_tree() {
        let r = zp(3, 6);
        let g = GroupInput::new(&r, vec![m(&r, [[2, 0], [0, 2]])], "").unwrap();
        let t = compute_subtree(&g, &LatticeClass::standard(&r), 2, 1000).unwrap();
        assert_eq!(t.len(), 17);
        assert!(t.truncated);
        assert_eq!(classify_shape(&t).shape, Shape::WholeTree);
    }

    #[test]
    fn unipotent_group_is_a_suspected_horodisc() {
        let r = zp(3, 10);
        let g = GroupInput::new(&r, vec![m(&r, [[1, 1], [0, 1]])], "").unwrap();
        let t = compute_subtree(&g, &LatticeClass::standard(&r), 5, 100_000).unwrap();
        assert!(t.truncated);
        assert_eq!(classify_shape(&t).shape, Shape::HorodiscSuspect);
    }
}
