//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabtree_core::characters::{reorder_match, CharacterPair};
use stabtree_core::coeffring::{hensel_quadratic, Elem, MonicQuadratic, Ring, RingSpec};
use stabtree_core::counterexample::{build_counterexample, no_ribet_lattice_check};
use stabtree_core::families::{
    band_default, congruence_group, random_conjugated_gamma0, ConjugatedGamma0,
};
use stabtree_core::invariants::{find_thin_word, invariants_from_tree, k_empirical};
use stabtree_core::matlat::{canonicalize, distance, neighbors, LatticeClass, Mat2};
use stabtree_core::oracle::{enumerate_character_pairs, enumerate_stable_ball};
use stabtree_core::ribet::{
    factor_linear_combination, harvest_pair, reducibility_witness_in, ribet_lattice_in, Explored,
};
use stabtree_core::subtree::{is_stable_all, GroupInput};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn zp(p: u64, n: u32) -> Ring {
    Ring::new(RingSpec::padic(p, n)).unwrap()
}

fn random_families() -> Vec<ConjugatedGamma0> {
    (0..25u64)
        .map(|seed| {
            let p = [3, 5][(seed % 2) as usize];
            let n = [2, 3][((seed / 2) % 2) as usize];
            random_conjugated_gamma0(&zp(p, 14), n, 1000 + seed).unwrap()
        })
        .collect()
}

/// Every finite tree the suite works with.
fn corpus() -> Vec<GroupInput> {
    let r = zp(3, 12);
    let mut out = vec![band_default().unwrap()];
    for level in 1..=3 {
        out.push(congruence_group(&r, level, None).unwrap());
        out.push(congruence_group(&r, level, Some((2, 1))).unwrap());
        out.push(congruence_group(&r, level, Some((4, 1))).unwrap());
    }
    out.extend(random_families().into_iter().take(10).map(|f| f.group));
    out.push(build_counterexample(3, 2, 1, 4).unwrap().group);
    out
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let g = band_default().map_err(e2s)?;
    let ex = Explored::new(&g).map_err(e2s)?;
    let inv = invariants_from_tree(&ex.shape, &ex.model.group).map_err(e2s)?;
    let k = k_empirical(&g, 6, 200, 0x5EED).map_err(e2s)?;
    let elapsed = start.elapsed().as_secs_f64();
    check(
        (inv.n, inv.m, inv.d, inv.r, inv.k) == (4, 1, 4, 1, 2),
        || format!("invariants {:?}", inv),
    )?;
    check(k.k == 2, || format!("empirical k = {}", k.k))?;
    check(ex.tree.len() == 17 && ex.shape.nerve.len() == 3, || {
        format!("{} vertices, nerve {}", ex.tree.len(), ex.shape.nerve.len())
    })?;
    check(elapsed < 5.0, || format!("took {:.2} s", elapsed))?;
    Ok(format!(
        "n=4 m=1 d=4 r=1 k=2, 17 vertices, {:.2} s",
        elapsed
    ))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    for (i, fam) in random_families().iter().enumerate() {
        let pair = fam.pair().map_err(e2s)?;
        let ex = Explored::new(&fam.group).map_err(e2s)?;
        let w = reducibility_witness_in(&ex, &pair).map_err(|e| format!("family {}: {}", i, e))?;
        check(w.distance == fam.n, || {
            format!("family {}: d(x, z) = {}", i, w.distance)
        })?;
        let ball = enumerate_stable_ball(&fam.group, &w.x, fam.n, 1 << 20).map_err(e2s)?;
        check(ball.stable.contains(&w.z), || {
            format!("family {}: oracle rejects z", i)
        })?;
        check(
            is_stable_all(&w.z, &fam.group.generators).map_err(e2s)?,
            || format!("family {}: z unstable", i),
        )?;
    }
    let elapsed = start.elapsed().as_secs_f64();
    check(elapsed < 60.0, || format!("took {:.1} s", elapsed))?;
    Ok(format!("25 witnesses at distance n, {:.2} s", elapsed))
}

fn criterion3() -> Outcome {
    let mut visited = 0;
    for (i, fam) in random_families().iter().enumerate() {
        let ex = Explored::new(&fam.group).map_err(e2s)?;
        let d = ex
            .shape
            .d
            .ok_or_else(|| format!("family {}: no diameter", i))?;
        let at = enumerate_character_pairs(&fam.group, d, 3, 1 << 22).map_err(e2s)?;
        let above = enumerate_character_pairs(&fam.group, d + 1, 3, 1 << 22).map_err(e2s)?;
        check(!at.pairs.is_empty(), || {
            format!("family {}: no pair modulo pi^{}", i, d)
        })?;
        check(above.pairs.is_empty(), || {
            format!(
                "family {}: {} pairs modulo pi^{}",
                i,
                above.pairs.len(),
                d + 1
            )
        })?;
        visited += at.nodes_visited + above.nodes_visited;
    }
    Ok(format!("25 families, {} search nodes", visited))
}

fn criterion4() -> Outcome {
    let c = build_counterexample(3, 2, 1, 4).map_err(e2s)?;
    let ex = Explored::new(&c.group).map_err(e2s)?;
    let rep = ribet_lattice_in(&ex, &c.eta, None).map_err(e2s)?;
    check(rep.s == 3, || format!("s = {}", rep.s))?;
    check(
        rep.residually_nonsplit && rep.nonsplit_witness.is_some(),
        || "split".into(),
    )?;
    let at_s = no_ribet_lattice_check(&ex, &c.eta, 3).map_err(e2s)?;
    let at_n = no_ribet_lattice_check(&ex, &c.eta, 4).map_err(e2s)?;
    check(!at_s.no_lattice, || "no lattice modulo pi^3".into())?;
    check(at_n.no_lattice, || "a lattice exists modulo pi^4".into())?;
    check(
        c.obstruction.residual == 3 && !c.obstruction.extendable,
        || format!("{:?}", c.obstruction),
    )?;
    Ok(format!(
        "lattice at s=3 (witness g{}), none at t=4 after {} pairs, residual 3",
        rep.nonsplit_witness.unwrap(),
        at_n.pairs_scanned
    ))
}

fn criterion5() -> Outcome {
    let mut checked = 0;
    for g in corpus() {
        let ex = Explored::new(&g).map_err(e2s)?;
        let Some(d) = ex.shape.d else { continue };
        if d == 0 {
            continue;
        }
        let verts = &ex.tree.vertices;
        let mut harvested: Vec<CharacterPair> = vec![];
        for x in verts {
            for y in verts {
                if distance(x, y).map_err(e2s)? == d {
                    harvested.push(harvest_pair(&ex.model.group, x, y).map_err(e2s)?.2);
                }
            }
        }
        for a in &harvested {
            for b in &harvested {
                checked += 1;
                reorder_match(a, b).map_err(|e| format!("{}: {}", g.label, e))?;
                let n = a.n();
                let ok = if 2 * a.m >= n {
                    2 * b.m >= n
                } else {
                    b.m == a.m
                };
                check(ok, || {
                    format!("{}: m = {} vs {} at n = {}", g.label, a.m, b.m, n)
                })?;
            }
        }
    }
    Ok(format!("{} ordered pairs of harvested pairs", checked))
}

fn random_elem(ring: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    let digits: Vec<u64> = (0..ring.precision() * ring.f())
        .map(|_| rng.gen_range(0..ring.p()))
        .collect();
    ring.from_digits(&digits).unwrap()
}

fn random_unit(ring: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    loop {
        let x = random_elem(ring, rng);
        if x.is_unit() {
            return x;
        }
    }
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let specs = [
        RingSpec::padic(5, 8),
        RingSpec::padic(3, 10),
        RingSpec::unramified(3, 2, 6),
        RingSpec::unramified(5, 2, 5),
        RingSpec::laurent(5, 10),
        RingSpec::laurent(3, 12),
    ];
    let mut total = 0;
    for spec in specs {
        let ring = Ring::new(spec.clone()).map_err(e2s)?;
        let n = ring.precision();
        let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE + n as u64);
        for _ in 0..100 {
            let gap = rng.gen_range(0..n.div_ceil(2));
            let alpha = random_elem(&ring, &mut rng);
            let beta = &alpha + &random_unit(&ring, &mut rng).mul_pi_pow(gap);
            let poly = MonicQuadratic::from_roots(&alpha, &beta);
            // An approximate factorization: perturb by pi^(n - gap).
            let delta = random_elem(&ring, &mut rng).mul_pi_pow(n - gap);
            let a0 = &alpha + &delta;
            let b0 = &beta - &delta;
            let fac =
                hensel_quadratic(&poly, &a0, &b0, n).map_err(|e| format!("{:?}: {}", spec, e))?;
            check(fac.gap == gap, || {
                format!("{:?}: gap {} became {}", spec, gap, fac.gap)
            })?;
            check(poly.factors_as(&fac.alpha, &fac.beta, n), || {
                format!("{:?}: product", spec)
            })?;
            let (x, y) = if fac.alpha.congruent(&alpha, n - gap) {
                (&fac.alpha, &fac.beta)
            } else {
                (&fac.beta, &fac.alpha)
            };
            check(
                x.congruent(&alpha, n - gap) && y.congruent(&beta, n - gap),
                || format!("{:?}: roots {} {} vs {} {}", spec, x, y, alpha, beta),
            )?;

            // With gap extra digits of the polynomial, roots are exact mod pi^n.
            let wide_spec = RingSpec {
                precision: n + gap,
                ..spec.clone()
            };
            let wide = Ring::new(wide_spec).map_err(e2s)?;
            let aw = alpha.to_ring(&wide).unwrap();
            let bw = beta.to_ring(&wide).unwrap();
            let pw = MonicQuadratic::from_roots(&aw, &bw);
            let fw = hensel_quadratic(
                &pw,
                &a0.to_ring(&wide).unwrap(),
                &b0.to_ring(&wide).unwrap(),
                n,
            )
            .map_err(e2s)?;
            let hit = |u: &Elem, v: &Elem| u.congruent(&aw, n) && v.congruent(&bw, n);
            check(hit(&fw.alpha, &fw.beta) || hit(&fw.beta, &fw.alpha), || {
                format!("{:?}: widened roots differ modulo pi^n", spec)
            })?;
            total += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    check(elapsed < 1.0, || format!("took {:.2} s", elapsed))?;
    Ok(format!(
        "{} quadratics over 6 rings, {:.2} s",
        total, elapsed
    ))
}

fn random_vertex(ring: &Ring, rng: &mut ChaCha8Rng, radius: u32) -> LatticeClass {
    let mut x = LatticeClass::standard(ring);
    for _ in 0..rng.gen_range(0..=radius) {
        let nb = neighbors(&x).unwrap();
        x = nb[rng.gen_range(0..nb.len())].clone();
    }
    x
}

/// Distance by growing balls around both ends until they meet.
fn bfs_distance(x: &LatticeClass, y: &LatticeClass) -> u32 {
    let mut seen: [HashMap<LatticeClass, u32>; 2] = [HashMap::new(), HashMap::new()];
    let mut frontier = [vec![x.clone()], vec![y.clone()]];
    seen[0].insert(x.clone(), 0);
    seen[1].insert(y.clone(), 0);
    if x == y {
        return 0;
    }
    let mut radius = [0u32, 0u32];
    loop {
        let side = if radius[0] <= radius[1] { 0 } else { 1 };
        let mut next = vec![];
        for v in &frontier[side] {
            for w in neighbors(v).unwrap() {
                if seen[side].contains_key(&w) {
                    continue;
                }
                if let Some(&r) = seen[1 - side].get(&w) {
                    return radius[side] + 1 + r;
                }
                seen[side].insert(w.clone(), radius[side] + 1);
                next.push(w);
            }
        }
        radius[side] += 1;
        frontier[side] = next;
    }
}

fn act(g: &Mat2, x: &LatticeClass) -> LatticeClass {
    canonicalize(&g.to_ring(x.ring()).unwrap().numerator().mul(&x.rep())).unwrap()
}

fn criterion7() -> Outcome {
    let ring = zp(3, 20);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let isometries = [
        Mat2::from_ints(&ring, [[1, 1], [0, 1]]),
        Mat2::from_ints(&ring, [[2, 5], [7, 1]]),
        Mat2::from_ints(&ring, [[3, 0], [0, 1]]),
        Mat2::from_ints(&ring, [[0, 1], [9, 0]]),
    ];
    for i in 0..200 {
        let x = random_vertex(&ring, &mut rng, 4);
        let y = random_vertex(&ring, &mut rng, 4);
        let z = random_vertex(&ring, &mut rng, 4);
        let dxy = distance(&x, &y).map_err(e2s)?;
        check(distance(&x, &x).map_err(e2s)? == 0, || {
            format!("pair {}: d(x,x) != 0", i)
        })?;
        check((dxy == 0) == (x == y), || {
            format!("pair {}: identity of indiscernibles", i)
        })?;
        check(dxy == distance(&y, &x).map_err(e2s)?, || {
            format!("pair {}: asymmetric", i)
        })?;
        let dxz = distance(&x, &z).map_err(e2s)?;
        let dzy = distance(&z, &y).map_err(e2s)?;
        check(dxy <= dxz + dzy, || {
            format!("pair {}: triangle inequality", i)
        })?;
        check((dxy + dxz + dzy) % 2 == 0, || format!("pair {}: parity", i))?;
        let b = bfs_distance(&x, &y);
        check(b == dxy, || {
            format!("pair {}: Smith {} vs BFS {}", i, dxy, b)
        })?;
        for g in &isometries {
            let d = distance(&act(g, &x), &act(g, &y)).map_err(e2s)?;
            check(d == dxy, || {
                format!("pair {}: isometry changes {} to {}", i, dxy, d)
            })?;
        }
    }
    Ok("200 random pairs, 4 isometries".into())
}

fn criterion8() -> Outcome {
    let mut families: Vec<(GroupInput, CharacterPair)> = vec![];
    let g = band_default().map_err(e2s)?;
    let p = stabtree_core::families::diagonal_pair(&g.generators, 4).map_err(e2s)?;
    families.push((g, p));
    for fam in random_families().into_iter().take(4) {
        let p = fam.pair().map_err(e2s)?;
        families.push((fam.group, p));
    }
    let c = build_counterexample(3, 2, 1, 4).map_err(e2s)?;
    families.push((c.group.clone(), c.chi.clone()));
    families.push((c.group, c.eta));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total = 0;
    for (g, pair) in &families {
        let k = g.len();
        for _ in 0..500 {
            let word = |rng: &mut ChaCha8Rng| -> Vec<usize> {
                (0..rng.gen_range(1..=3))
                    .map(|_| rng.gen_range(0..k))
                    .collect()
            };
            let (w1, w2) = (word(&mut rng), word(&mut rng));
            let a = random_elem(&g.ring, &mut rng);
            let b = random_elem(&g.ring, &mut rng);
            factor_linear_combination(g, pair, &w1, &w2, &a, &b)
                .map_err(|e| format!("{}: {:?} {:?}: {}", g.label, w1, w2, e))?;
            total += 1;
        }
    }
    Ok(format!(
        "{} instances over {} families",
        total,
        families.len()
    ))
}

fn criterion9() -> Outcome {
    let mut bands = 0;
    for g in corpus() {
        let ex = Explored::new(&g).map_err(e2s)?;
        if !ex.shape.shape.is_finite_band() {
            continue;
        }
        let (d, r) = (ex.shape.d.unwrap(), ex.shape.r);
        if d <= 2 * r + 1 {
            continue;
        }
        bands += 1;
        let found = find_thin_word(&ex.model.group, r, 2).map_err(e2s)?;
        let (w, ev) = found.ok_or_else(|| format!("{}: no thin word", g.label))?;
        check(ev.gap == Some(r) && w.len() <= 2, || {
            format!("{}: {:?}", g.label, ev)
        })?;
    }
    check(bands > 0, || "no band with d > 2r + 1 in the corpus".into())?;
    Ok(format!(
        "{} bands with d > 2r + 1, each with a thin word",
        bands
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 band family reproduction", criterion1),
        ("2 witnesses on conjugated Gamma0 groups", criterion2),
        ("3 character pairs at n = d and none at d + 1", criterion3),
        ("4 Ribet modulus optimality", criterion4),
        (
            "5 reordering and m dichotomy on harvested pairs",
            criterion5,
        ),
        ("6 Hensel quadratics", criterion6),
        ("7 tree geometry", criterion7),
        ("8 polarisation and linear combinations", criterion8),
        ("9 thin words on bands", criterion9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS  criterion {}: {}", name, detail),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {}: {}", name, why);
            }
        }
    }
    if failed > 0 {
        println!("{} of 9 criteria failed", failed);
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
