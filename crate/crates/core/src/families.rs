//! Concrete groups used by the examples, the tests and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::{CharacterMod, CharacterPair};
use crate::coeffring::{Elem, Ring, RingSpec};
use crate::error::Result;
use crate::matlat::Mat2;
use crate::subtree::GroupInput;

pub fn upper_unipotent(ring: &Ring, b: &Elem) -> Mat2 {
    Mat2::new(ring.one(), b.clone(), ring.zero(), ring.one())
}

pub fn lower_unipotent(ring: &Ring, c: &Elem) -> Mat2 {
    Mat2::new(ring.one(), ring.zero(), c.clone(), ring.one())
}

/// `<[[1,1],[0,1]], [[1,0],[pi^n,1]], diag(1+pi^m,1), diag(1,1+pi^m)>`: a band
/// with diameter `n` and radius `m` when `2m + 1 < n`.
pub fn unipotent_band(ring: &Ring, m: u32, n: u32) -> Result<GroupInput> {
    let bump = &ring.one() + &ring.pi_pow(m);
    GroupInput::new(
        ring,
        vec![
            upper_unipotent(ring, &ring.one()),
            lower_unipotent(ring, &ring.pi_pow(n)),
            Mat2::diag(&bump, &ring.one()),
            Mat2::diag(&ring.one(), &bump),
        ],
        &format!("unipotent-congruence p={} m={} n={}", ring.p(), m, n),
    )
}

/// The default band over `Z_5` with `m = 1`, `n = 4`, at precision 12.
pub fn band_default() -> Result<GroupInput> {
    unipotent_band(&Ring::new(RingSpec::padic(5, 12))?, 1, 4)
}

/// `<[[1,1],[0,1]], [[1,0],[pi^level,1]]>`, optionally with `diag(alpha, delta)`.
pub fn congruence_group(ring: &Ring, level: u32, diag: Option<(i64, i64)>) -> Result<GroupInput> {
    let mut gens = vec![
        upper_unipotent(ring, &ring.one()),
        lower_unipotent(ring, &ring.pi_pow(level)),
    ];
    if let Some((a, d)) = diag {
        gens.push(Mat2::diag(&ring.from_int(a), &ring.from_int(d)));
    }
    GroupInput::new(ring, gens, &format!("congruence level {}", level))
}

/// Generators that reduce to generators of `SL_2(F_p)`.
pub fn residually_irreducible(ring: &Ring) -> Result<GroupInput> {
    GroupInput::new(
        ring,
        vec![
            upper_unipotent(ring, &ring.one()),
            lower_unipotent(ring, &ring.one()),
        ],
        "residually irreducible",
    )
}

pub fn scalar_group(ring: &Ring, c: i64) -> Result<GroupInput> {
    GroupInput::new(ring, vec![Mat2::scalar(&ring.from_int(c))], "scalars")
}

/// Diagonal characters `(a, d) mod pi^n` of upper-triangular-mod-`pi^n`
/// generators.
pub fn diagonal_pair(gens: &[Mat2], n: u32) -> Result<CharacterPair> {
    let a: Vec<Elem> = gens.iter().map(|g| g.a.clone()).collect();
    let d: Vec<Elem> = gens.iter().map(|g| g.d.clone()).collect();
    CharacterPair::new(CharacterMod::new(n, &a)?, CharacterMod::new(n, &d)?)
}

/// A subgroup of `Gamma_0(pi^n)` conjugated by a random `h` in `GL_2(K)`.
#[derive(Debug, Clone)]
pub struct ConjugatedGamma0 {
    pub group: GroupInput,
    /// The generators before conjugation, all in `Gamma_0(pi^n)`.
    pub triangular: Vec<Mat2>,
    pub h: Mat2,
    pub n: u32,
}

impl ConjugatedGamma0 {
    /// Diagonal characters of the unconjugated generators.
    pub fn pair(&self) -> Result<CharacterPair> {
        diagonal_pair(&self.triangular, self.n)
    }
}

fn random_unit(ring: &Ring, rng: &mut ChaCha8Rng, digits: u32) -> Elem {
    loop {
        let bound = ring.p().pow(digits) as i64;
        let coeffs: Vec<i64> = (0..ring.f()).map(|_| rng.gen_range(0..bound)).collect();
        let x = ring.from_coeffs(&coeffs).unwrap();
        if x.is_unit() {
            return x;
        }
    }
}

fn random_elem(ring: &Ring, rng: &mut ChaCha8Rng, digits: u32) -> Elem {
    let bound = ring.p().pow(digits) as i64;
    let coeffs: Vec<i64> = (0..ring.f()).map(|_| rng.gen_range(0..bound)).collect();
    ring.from_coeffs(&coeffs).unwrap()
}

/// Generators `[[1,b],[0,1]]` (`b` a unit), `[[1,0],[pi^n c,1]]` (`c` a unit),
/// `diag(alpha, delta)` with `alpha ≢ delta mod pi`, and up to two further
/// elements of `Gamma_0(pi^n)`, all conjugated by a random `h` with
/// `v(det h) <= 2`. The stable subtree is a segment of length `n`.
pub fn random_conjugated_gamma0(ring: &Ring, n: u32, seed: u64) -> Result<ConjugatedGamma0> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tri = vec![
        upper_unipotent(ring, &random_unit(ring, &mut rng, 2)),
        lower_unipotent(ring, &random_unit(ring, &mut rng, 2).mul_pi_pow(n)),
    ];
    loop {
        let alpha = random_unit(ring, &mut rng, 2);
        let delta = random_unit(ring, &mut rng, 2);
        if (&alpha - &delta).is_unit() {
            tri.push(Mat2::diag(&alpha, &delta));
            break;
        }
    }
    let extra = rng.gen_range(0..=2);
    for _ in 0..extra {
        tri.push(Mat2::new(
            random_unit(ring, &mut rng, 2),
            random_elem(ring, &mut rng, 2),
            random_elem(ring, &mut rng, 2).mul_pi_pow(n),
            random_unit(ring, &mut rng, 2),
        ));
    }
    let h = loop {
        let h = Mat2::new(
            random_elem(ring, &mut rng, 3),
            random_elem(ring, &mut rng, 3),
            random_elem(ring, &mut rng, 3),
            random_elem(ring, &mut rng, 3),
        );
        let w = h.det().valuation();
        if w <= 2 {
            break h;
        }
    };
    let hi = h.inverse()?;
    let gens = tri.iter().map(|g| h.mul(g).mul(&hi)).collect();
    let group = GroupInput::new(
        ring,
        gens,
        &format!("conjugated Gamma0(pi^{}) seed {}", n, seed),
    )?;
    Ok(ConjugatedGamma0 {
        group,
        triangular: tri,
        h,
        n,
    })
}
