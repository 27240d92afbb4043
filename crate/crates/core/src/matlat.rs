//! 2x2 matrices over `R_N` (with an optional global denominator `pi^s`), lattice
//! classes in Hermite normal form, and the metric geometry of the Bruhat-Tits
//! tree.
//!
//! Lattice classes are exact combinatorial data (`a`, `c` and a residue `b`),
//! so their geometry is computed in the widest ring the field supports rather
//! than at the working precision of a representation.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::coeffring::{Elem, MonicQuadratic, Ring};
use crate::error::{Error, Result};

/// Margin kept below the precision of the ring doing geometry.
pub const GUARD: u32 = 2;

/// Largest residue field that neighbor enumeration accepts.
pub const MAX_ENUM_Q: u64 = 1 << 12;

pub type Vec2 = [Elem; 2];

/// `pi^(-denom_shift) * [[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
    pub denom_shift: u32,
}

impl Mat2 {
    pub fn new(a: Elem, b: Elem, c: Elem, d: Elem) -> Mat2 {
        let r = a.ring();
        assert!(
            r == b.ring() && r == c.ring() && r == d.ring(),
            "entries in different rings"
        );
        Mat2 {
            a,
            b,
            c,
            d,
            denom_shift: 0,
        }
    }

    pub fn with_shift(mut self, denom_shift: u32) -> Mat2 {
        self.denom_shift = denom_shift;
        self
    }

    pub fn from_ints(ring: &Ring, m: [[i64; 2]; 2]) -> Mat2 {
        Mat2::new(
            ring.from_int(m[0][0]),
            ring.from_int(m[0][1]),
            ring.from_int(m[1][0]),
            ring.from_int(m[1][1]),
        )
    }

    pub fn identity(ring: &Ring) -> Mat2 {
        Mat2::scalar(&ring.one())
    }

    pub fn zero(ring: &Ring) -> Mat2 {
        Mat2::scalar(&ring.zero())
    }

    pub fn scalar(x: &Elem) -> Mat2 {
        Mat2::diag(x, x)
    }

    pub fn diag(x: &Elem, y: &Elem) -> Mat2 {
        let z = x.ring().zero();
        Mat2::new(x.clone(), z.clone(), z, y.clone())
    }

    pub fn from_cols(v1: &Vec2, v2: &Vec2) -> Mat2 {
        Mat2::new(v1[0].clone(), v2[0].clone(), v1[1].clone(), v2[1].clone())
    }

    pub fn col(&self, i: usize) -> Vec2 {
        match i {
            0 => [self.a.clone(), self.c.clone()],
            _ => [self.b.clone(), self.d.clone()],
        }
    }

    pub fn ring(&self) -> &Ring {
        self.a.ring()
    }

    pub fn entries(&self) -> [&Elem; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_integral(&self) -> bool {
        self.denom_shift == 0
    }

    /// The integral numerator, dropping the denominator.
    pub fn numerator(&self) -> Mat2 {
        Mat2 {
            denom_shift: 0,
            ..self.clone()
        }
    }

    pub fn det(&self) -> Elem {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> Elem {
        &self.a + &self.d
    }

    /// Adjugate `[[d, -b], [-c, a]]` of the numerator.
    pub fn adj(&self) -> Mat2 {
        Mat2::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
            denom_shift: self.denom_shift + o.denom_shift,
        }
    }

    fn align(&self, o: &Mat2) -> (Mat2, Mat2, u32) {
        let s = self.denom_shift.max(o.denom_shift);
        (
            self.mul_pi_pow(s - self.denom_shift),
            o.mul_pi_pow(s - o.denom_shift),
            s,
        )
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        let (x, y, s) = self.align(o);
        Mat2::new(&x.a + &y.a, &x.b + &y.b, &x.c + &y.c, &x.d + &y.d).with_shift(s)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        let (x, y, s) = self.align(o);
        Mat2::new(&x.a - &y.a, &x.b - &y.b, &x.c - &y.c, &x.d - &y.d).with_shift(s)
    }

    pub fn scale(&self, k: &Elem) -> Mat2 {
        Mat2::new(k * &self.a, k * &self.b, k * &self.c, k * &self.d).with_shift(self.denom_shift)
    }

    /// Multiplies the numerator by `pi^k`.
    pub fn mul_pi_pow(&self, k: u32) -> Mat2 {
        Mat2::new(
            self.a.mul_pi_pow(k),
            self.b.mul_pi_pow(k),
            self.c.mul_pi_pow(k),
            self.d.mul_pi_pow(k),
        )
        .with_shift(self.denom_shift)
    }

    /// Divides the numerator by `pi^k` and reduces to precision `N - k`, where
    /// the quotient is determined.
    pub fn div_pi_pow_reduced(&self, k: u32) -> Result<Mat2> {
        let target = self
            .ring()
            .with_precision(self.ring().precision().saturating_sub(k).max(1))?;
        if k >= self.ring().precision() {
            return Err(Error::PrecisionExhausted(format!(
                "division by pi^{} leaves no digits at precision {}",
                k,
                self.ring().precision()
            )));
        }
        let f = |x: &Elem| -> Result<Elem> {
            x.div_pi_pow(k)
                .map_err(|_| Error::NotIntegral(format!("entry {} not divisible by pi^{}", x, k)))?
                .to_ring(&target)
        };
        Ok(
            Mat2::new(f(&self.a)?, f(&self.b)?, f(&self.c)?, f(&self.d)?)
                .with_shift(self.denom_shift),
        )
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        [
            &(&self.a * &v[0]) + &(&self.b * &v[1]),
            &(&self.c * &v[0]) + &(&self.d * &v[1]),
        ]
    }

    pub fn min_valuation(&self) -> u32 {
        self.entries().iter().map(|e| e.valuation()).min().unwrap()
    }

    /// `b ≡ c ≡ 0` and `a ≡ d` modulo `pi^k` (numerator only).
    pub fn is_scalar_mod(&self, k: u32) -> bool {
        self.b.valuation() >= k && self.c.valuation() >= k && self.a.congruent(&self.d, k)
    }

    pub fn to_ring(&self, target: &Ring) -> Result<Mat2> {
        Ok(Mat2::new(
            self.a.to_ring(target)?,
            self.b.to_ring(target)?,
            self.c.to_ring(target)?,
            self.d.to_ring(target)?,
        )
        .with_shift(self.denom_shift))
    }

    /// Inverse over `K`: `pi^s adj(g') / det(g')` written with a single
    /// denominator. Fails on singular numerators.
    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        let w = det.valuation();
        if w >= self.ring().precision() {
            return Err(Error::SingularLattice);
        }
        let unit_inv = det.div_pi_pow(w)?.inverse()?;
        let base = self.adj().scale(&unit_inv);
        if self.denom_shift >= w {
            Ok(base.mul_pi_pow(self.denom_shift - w))
        } else {
            Ok(base.with_shift(w - self.denom_shift))
        }
    }

    /// Same matrix over `K` with the denominator reduced as far as the
    /// numerator allows. Division loses the top digits, so the result is
    /// reported at the reduced precision.
    pub fn normalize(&self) -> Result<Mat2> {
        let k = self.min_valuation().min(self.denom_shift);
        if k == 0 {
            return Ok(self.clone());
        }
        let out = self.div_pi_pow_reduced(k)?;
        Ok(out.with_shift(self.denom_shift - k))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_shift > 0 {
            write!(f, "pi^-{} ", self.denom_shift)?;
        }
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `t^2 - trace(g) t + det(g)` of an integral matrix.
pub fn charpoly(g: &Mat2) -> MonicQuadratic {
    MonicQuadratic::from_trace_det(&g.trace(), &g.det())
}

/// A vertex of the tree: the class of the lattice spanned by the columns of
/// `[[pi^a, b], [0, pi^c]]`, normalized so that `min(a, c, v(b)) = 0` and `b`
/// is a canonical residue modulo `pi^a`.
#[derive(Clone)]
pub struct LatticeClass {
    a: u32,
    c: u32,
    b: Elem,
}

impl PartialEq for LatticeClass {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.c == o.c && self.b == o.b
    }
}
impl Eq for LatticeClass {}

impl Hash for LatticeClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.c.hash(state);
        self.b.hash(state);
    }
}

impl PartialOrd for LatticeClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for LatticeClass {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.depth(), self.a, &self.b).cmp(&(o.depth(), o.a, &o.b))
    }
}

impl LatticeClass {
    /// The class of the standard lattice `O_K^2`.
    pub fn standard(ring: &Ring) -> LatticeClass {
        LatticeClass {
            a: 0,
            c: 0,
            b: ring.wide().zero(),
        }
    }

    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn c(&self) -> u32 {
        self.c
    }
    pub fn b(&self) -> &Elem {
        &self.b
    }
    /// `v(det rep) = a + c`, the distance to the standard vertex.
    pub fn depth(&self) -> u32 {
        self.a + self.c
    }

    pub fn ring(&self) -> &Ring {
        self.b.ring()
    }

    /// The canonical representative over the wide ring.
    pub fn rep(&self) -> Mat2 {
        let r = self.b.ring();
        Mat2::new(r.pi_pow(self.a), self.b.clone(), r.zero(), r.pi_pow(self.c))
    }

    /// The canonical representative over `ring`; its entries are exact as long
    /// as `a, c < precision`.
    pub fn rep_in(&self, ring: &Ring) -> Result<Mat2> {
        if self.a.max(self.c) >= ring.precision() {
            return Err(Error::PrecisionExhausted(format!(
                "class {} needs more than {} digits",
                self,
                ring.precision()
            )));
        }
        self.rep().to_ring(ring)
    }

    /// Label used in DOT and JSON output.
    pub fn label(&self) -> String {
        format!(
            "[[pi^{}, {}], [0, pi^{}]]",
            self.a,
            self.b.residue_mod(self.a),
            self.c
        )
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LatticeClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LatticeClass", 3)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field(
            "b",
            &self.b.residue_mod(self.a).digits()[..(self.a * self.ring().f()) as usize],
        )?;
        st.serialize_field("c", &self.c)?;
        st.end()
    }
}

/// Hermite normal form of the span of `cols`, lifted to the wide ring.
/// Returns `(k, x)` with span `= pi^k * Lambda_x` for the canonical
/// representative of `x`.
pub fn hnf_columns(cols: &[Vec2]) -> Result<(u32, LatticeClass)> {
    let ring = cols.first().ok_or(Error::SingularLattice)?[0].ring().wide();
    let prec = ring.precision();
    let mut cols: Vec<Vec2> = cols
        .iter()
        .map(|v| Ok([v[0].to_ring(&ring)?, v[1].to_ring(&ring)?]))
        .collect::<Result<_>>()?;

    let (piv, c) = cols
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v[1].valuation()))
        .min_by_key(|&(i, v)| (v, i))
        .unwrap();
    if c >= prec {
        return Err(Error::SingularLattice);
    }
    let pivot = cols.swap_remove(piv);
    let unit_inv = pivot[1].div_pi_pow(c)?.inverse()?;
    let pivot = [&pivot[0] * &unit_inv, ring.pi_pow(c)];
    let mut tops = Vec::with_capacity(cols.len());
    for v in &cols {
        let k = v[1].div_pi_pow(c)?;
        tops.push(&v[0] - &(&k * &pivot[0]));
    }
    let a = tops.iter().map(|t| t.valuation()).min().unwrap_or(prec);
    if a >= prec {
        return Err(Error::SingularLattice);
    }
    if a + c + GUARD > prec {
        return Err(Error::PrecisionExhausted(format!(
            "lattice of index pi^{} exceeds the geometry precision {}",
            a + c,
            prec
        )));
    }
    let b = pivot[0].residue_mod(a);
    let k = a.min(c).min(b.valuation());
    let b = b.div_pi_pow(k)?.residue_mod(a - k);
    Ok((
        k,
        LatticeClass {
            a: a - k,
            c: c - k,
            b,
        },
    ))
}

/// Canonical class of the column span of `basis` (its denominator is
/// irrelevant up to homothety).
pub fn canonicalize(basis: &Mat2) -> Result<LatticeClass> {
    Ok(hnf_columns(&[basis.col(0), basis.col(1)])?.1)
}

fn geometry_check(x: &LatticeClass, y: &LatticeClass) -> Result<Ring> {
    let ring = x.ring().clone();
    if x.depth() + y.depth() + GUARD > ring.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "distance between depths {} and {} exceeds the geometry precision {}",
            x.depth(),
            y.depth(),
            ring.precision()
        )));
    }
    Ok(ring)
}

/// Tree distance: with `M = adj(rep x) rep y`, the elementary divisors of `M`
/// are `pi^e1`, `pi^e2` with `e1 + e2 = depth x + depth y`, and the distance
/// is `e2 - e1`.
pub fn distance(x: &LatticeClass, y: &LatticeClass) -> Result<u32> {
    geometry_check(x, y)?;
    let m = x.rep().adj().mul(&y.rep());
    let e1 = m.min_valuation();
    Ok(x.depth() + y.depth() - 2 * e1)
}

/// The `q + 1` neighbors: `span(v1 + i v2, pi v2)` for residues `i`, and
/// `span(pi v1, v2)`, where `(v1, v2)` are the columns of `rep x`.
pub fn neighbors(x: &LatticeClass) -> Result<Vec<LatticeClass>> {
    let ring = x.ring();
    let q = ring.q();
    if q > MAX_ENUM_Q {
        return Err(Error::ResidueFieldTooLarge(q));
    }
    let rep = x.rep();
    let v1 = rep.col(0);
    let v2 = rep.col(1);
    let pv1 = [v1[0].mul_pi_pow(1), v1[1].mul_pi_pow(1)];
    let pv2 = [v2[0].mul_pi_pow(1), v2[1].mul_pi_pow(1)];
    let mut out = Vec::with_capacity(q as usize + 1);
    for i in ring.residue_reps() {
        let w = [&v1[0] + &(&i * &v2[0]), &v1[1] + &(&i * &v2[1])];
        out.push(hnf_columns(&[w, pv2.clone()])?.1);
    }
    out.push(hnf_columns(&[pv1, v2])?.1);
    Ok(out)
}

/// Basis `(v1, v2)` of `Lambda_x` such that `(v1, pi^d v2)` spans `Lambda_y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdaptedBasis {
    pub v1: Vec2,
    pub v2: Vec2,
    pub d: u32,
}

impl AdaptedBasis {
    pub fn matrix(&self) -> Mat2 {
        Mat2::from_cols(&self.v1, &self.v2)
    }

    /// The basis `(v1, pi^d v2)` of the far end.
    pub fn far_matrix(&self) -> Mat2 {
        Mat2::from_cols(
            &self.v1,
            &[self.v2[0].mul_pi_pow(self.d), self.v2[1].mul_pi_pow(self.d)],
        )
    }
}

/// Smith normal form of `adj(rep x) rep y` by valuation pivoting. Row
/// operations are mirrored as column operations on `rep x`, so the transformed
/// `rep x` is the adapted basis.
pub fn adapted_basis(x: &LatticeClass, y: &LatticeClass) -> Result<AdaptedBasis> {
    geometry_check(x, y)?;
    let mut b = x.rep();
    let m = x.rep().adj().mul(&y.rep());
    let mut e = [[m.a.clone(), m.b.clone()], [m.c.clone(), m.d.clone()]];

    // Pivot: the lexicographically first entry of minimal valuation.
    let mut best = (0, 0);
    for i in 0..2 {
        for j in 0..2 {
            if e[i][j].valuation() < e[best.0][best.1].valuation() {
                best = (i, j);
            }
        }
    }
    if best.0 == 1 {
        e.swap(0, 1);
        b = Mat2::from_cols(&b.col(1), &b.col(0));
    }
    if best.1 == 1 {
        for row in e.iter_mut() {
            row.swap(0, 1);
        }
    }
    let e1 = e[0][0].valuation();
    let unit_inv = e[0][0].div_pi_pow(e1)?.inverse()?;
    // Row 1 -= k * row 0, mirrored as col 0 of b += k * col 1.
    let k = &e[1][0].div_pi_pow(e1)? * &unit_inv;
    let v1 = b.col(0);
    let v2 = b.col(1);
    let new_v1 = [&v1[0] + &(&k * &v2[0]), &v1[1] + &(&k * &v2[1])];
    let d = x.depth() + y.depth() - 2 * e1;
    Ok(AdaptedBasis { v1: new_v1, v2, d })
}

/// Conjugates the normalized `pi^(-w/2) g'` into `basis`, where `g'` is the
/// numerator of `g`, `w = v(det g')` and `basis` spans a lattice of
/// determinant valuation `D`. The result is integral with unit determinant
/// exactly when the class is stable, and is known modulo `pi^(N - D - w/2)`.
pub fn conjugate_normalized(g: &Mat2, basis: &Mat2) -> Result<Mat2> {
    let ring = g.ring().clone();
    let w = g.det().valuation();
    if w % 2 == 1 || w >= ring.precision() {
        return Err(Error::NotIntegral(format!(
            "v(det) = {} is odd or out of range",
            w
        )));
    }
    let bd = basis.det();
    let dd = bd.valuation();
    let basis = basis.to_ring(&ring)?;
    let x = basis.adj().mul(&g.numerator()).mul(&basis);
    let shift = dd + w / 2;
    if shift >= ring.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "conjugation by a basis of index pi^{} needs more than {} digits",
            dd,
            ring.precision()
        )));
    }
    let out = x.div_pi_pow_reduced(shift)?;
    let unit = bd.div_pi_pow(dd)?.inverse()?.to_ring(out.ring())?;
    Ok(out.scale(&unit).with_shift(0))
}

/// Literal conjugation `basis^-1 g basis`, keeping the denominator of `g`.
pub fn conjugate_literal(g: &Mat2, basis: &Mat2) -> Result<Mat2> {
    let ring = g.ring().clone();
    let bd = basis.det();
    let dd = bd.valuation();
    let basis = basis.to_ring(&ring)?;
    let x = basis.adj().mul(&g.numerator()).mul(&basis);
    let out = x.div_pi_pow_reduced(dd)?;
    let unit = bd.div_pi_pow(dd)?.inverse()?.to_ring(out.ring())?;
    Ok(out.scale(&unit).with_shift(g.denom_shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::RingSpec;

    fn zp(p: u64, n: u32) -> Ring {
        Ring::new(RingSpec::padic(p, n)).unwrap()
    }

    fn cls(r: &Ring, m: [[i64; 2]; 2]) -> LatticeClass {
        canonicalize(&Mat2::from_ints(r, m)).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let r = zp(3, 10);
        let id = cls(&r, [[1, 0], [0, 1]]);
        assert_eq!(id, LatticeClass::standard(&r));
        let x = cls(&r, [[3, 0], [0, 27]]);
        assert_eq!((x.a(), x.c(), x.b().is_zero()), (0, 2, true));
        let y = cls(&r, [[3, 1], [0, 1]]);
        assert_eq!((y.a(), y.c()), (1, 0));
        assert_eq!(y.b(), &r.wide().one());
        // column operations and homothety do not change the class
        assert_eq!(cls(&r, [[3, 4], [0, 1]]), y);
        assert_eq!(cls(&r, [[9, 3], [0, 3]]), y);
        assert_eq!(cls(&r, [[1, 3], [1, 0]]), cls(&r, [[1, 3], [1, 0]]));
        assert!(matches!(
            canonicalize(&Mat2::from_ints(&r, [[1, 2], [2, 4]])),
            Err(Error::SingularLattice)
        ));
    }

    #[test]
    fn distance_examples() {
        let r = zp(3, 10);
        let o = LatticeClass::standard(&r);
        assert_eq!(distance(&o, &cls(&r, [[1, 0], [0, 27]])).unwrap(), 3);
        assert_eq!(
            distance(&cls(&r, [[1, 0], [0, 3]]), &cls(&r, [[3, 1], [0, 1]])).unwrap(),
            2
        );
        assert_eq!(distance(&o, &o).unwrap(), 0);
    }

    #[test]
    fn neighbors_of_standard() {
        let r = zp(3, 10);
        let o = LatticeClass::standard(&r);
        let ns = neighbors(&o).unwrap();
        let expect = vec![
            cls(&r, [[1, 0], [0, 3]]),
            cls(&r, [[3, 0], [0, 1]]),
            cls(&r, [[3, 1], [0, 1]]),
            cls(&r, [[3, 2], [0, 1]]),
        ];
        let mut got = ns.clone();
        got.sort();
        let mut want = expect;
        want.sort();
        assert_eq!(got, want);
        for y in &ns {
            assert_eq!(distance(&o, y).unwrap(), 1);
        }
        assert_eq!(
            neighbors(&LatticeClass::standard(&zp(5, 4))).unwrap().len(),
            6
        );
    }

    #[test]
    fn sphere_of_radius_three_has_36_vertices() {
        let r = zp(3, 10);
        let o = LatticeClass::standard(&r);
        let mut layer = vec![o.clone()];
        let mut seen = std::collections::HashSet::from([o.clone()]);
        for _ in 0..3 {
            let mut next = vec![];
            for x in &layer {
                for y in neighbors(x).unwrap() {
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            layer = next;
        }
        assert_eq!(layer.len(), 36);
        assert!(layer.iter().all(|y| y.depth() == 3));
    }

    #[test]
    fn adapted_basis_examples() {
        let r = zp(3, 10);
        let o = LatticeClass::standard(&r);
        let y = cls(&r, [[1, 0], [0, 9]]);
        let ab = adapted_basis(&o, &y).unwrap();
        assert_eq!(ab.d, 2);
        assert_eq!(canonicalize(&ab.matrix()).unwrap(), o);
        assert_eq!(canonicalize(&ab.far_matrix()).unwrap(), y);

        let z = cls(&r, [[9, 3], [0, 1]]);
        let ab = adapted_basis(&o, &z).unwrap();
        assert_eq!(ab.d, 2);
        assert_eq!(canonicalize(&ab.far_matrix()).unwrap(), z);

        let same = adapted_basis(&y, &y).unwrap();
        assert_eq!(same.d, 0);
    }

    #[test]
    fn charpoly_examples() {
        let r = zp(5, 6);
        let p = charpoly(&Mat2::from_ints(&r, [[6, 0], [0, 1]]));
        assert_eq!(p, MonicQuadratic::new(r.from_int(-7), r.from_int(6)));
        let u = charpoly(&Mat2::from_ints(&r, [[1, 1], [0, 1]]));
        assert_eq!(u, MonicQuadratic::new(r.from_int(-2), r.one()));
    }

    #[test]
    fn inverse_over_k() {
        let r = zp(3, 8);
        let g = Mat2::from_ints(&r, [[0, 1], [3, 0]]);
        let gi = g.inverse().unwrap();
        assert_eq!(gi.denom_shift, 1);
        let prod = g.mul(&gi);
        assert_eq!(prod.numerator(), Mat2::from_ints(&r, [[3, 0], [0, 3]]));
    }

    #[test]
    fn conjugation_into_neighbor() {
        let r = zp(3, 8);
        let x = cls(&r, [[1, 0], [0, 3]]);
        let g = Mat2::from_ints(&r, [[1, 0], [3, 1]]);
        let c = conjugate_normalized(&g, &x.rep()).unwrap();
        assert_eq!(c.ring().precision(), 7);
        assert_eq!(c, Mat2::from_ints(c.ring(), [[1, 0], [1, 1]]));
    }
}
