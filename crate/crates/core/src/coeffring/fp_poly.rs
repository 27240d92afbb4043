//! Small dense polynomials over F_p, used only to pick and validate the
//! defining polynomial of an unramified extension.

/// Coefficients low to high, all in `0..p`, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead = *b.last().expect("division by zero polynomial");
    let lead_inv = pow_mod(lead, p - 2, p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let coef = r.last().unwrap() * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - coef * bi % p) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Monic polynomial of the given degree whose non-leading coefficients are the
/// base-p digits of `index`.
fn monic_from_index(index: u64, degree: u32, p: u64) -> Poly {
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut k = index;
    for _ in 0..degree {
        coeffs.push(k % p);
        k /= p;
    }
    coeffs.push(1);
    coeffs
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most `deg / 2`. Only meant for the tiny degrees used here.
pub fn is_irreducible(h: &[u64], p: u64) -> bool {
    let h = trim(h.iter().map(|c| c % p).collect());
    if h.len() < 2 {
        return false;
    }
    let deg = (h.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            let g = monic_from_index(idx, d, p);
            if rem(&h, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Fixed defining polynomials per (p, f); anything not listed falls back to the
/// lexicographically first monic irreducible polynomial.
pub fn default_modulus(p: u64, f: u32) -> Vec<u64> {
    let listed: Option<&[u64]> = match (p, f) {
        (_, 1) => Some(&[0, 1]),
        (3, 2) => Some(&[1, 0, 1]),
        (5, 2) => Some(&[2, 0, 1]),
        (7, 2) => Some(&[1, 0, 1]),
        (3, 3) => Some(&[1, 2, 0, 1]),
        (5, 3) => Some(&[3, 3, 0, 1]),
        _ => None,
    };
    if let Some(h) = listed {
        return h.to_vec();
    }
    (0..p.pow(f))
        .map(|idx| monic_from_index(idx, f, p))
        .find(|h| is_irreducible(h, p))
        .expect("an irreducible polynomial of every degree exists")
}
