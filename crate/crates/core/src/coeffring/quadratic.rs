//! Monic quadratics over `R_N`: evaluation, root search by digit lifting, and
//! Hensel factorization with a controlled root gap.

use serde::Serialize;

use super::{Elem, Ring};
use crate::error::{Error, Result};

/// `t^2 + c1 t + c0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicQuadratic {
    pub c1: Elem,
    pub c0: Elem,
}

impl MonicQuadratic {
    pub fn new(c1: Elem, c0: Elem) -> Self {
        assert!(c1.ring() == c0.ring(), "coefficients in different rings");
        MonicQuadratic { c1, c0 }
    }

    /// `t^2 - trace t + det`.
    pub fn from_trace_det(trace: &Elem, det: &Elem) -> Self {
        MonicQuadratic::new(-trace, det.clone())
    }

    /// `(t - alpha)(t - beta)`.
    pub fn from_roots(alpha: &Elem, beta: &Elem) -> Self {
        MonicQuadratic::new(-(alpha + beta), alpha * beta)
    }

    pub fn ring(&self) -> &Ring {
        self.c1.ring()
    }

    pub fn trace(&self) -> Elem {
        -&self.c1
    }

    pub fn eval(&self, t: &Elem) -> Elem {
        &(&(t + &self.c1) * t) + &self.c0
    }

    pub fn derivative_at(&self, t: &Elem) -> Elem {
        &(t + t) + &self.c1
    }

    pub fn discriminant(&self) -> Elem {
        let four = self.ring().from_int(4);
        &(&self.c1 * &self.c1) - &(&four * &self.c0)
    }

    /// Whether the quadratic equals `(t - alpha)(t - beta)` modulo `pi^k`.
    pub fn factors_as(&self, alpha: &Elem, beta: &Elem, k: u32) -> bool {
        let other = MonicQuadratic::from_roots(alpha, beta);
        self.c1.congruent(&other.c1, k) && self.c0.congruent(&other.c0, k)
    }

    pub fn to_ring(&self, target: &Ring) -> Result<MonicQuadratic> {
        Ok(MonicQuadratic::new(
            self.c1.to_ring(target)?,
            self.c0.to_ring(target)?,
        ))
    }
}

impl std::fmt::Display for MonicQuadratic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "t^2 + {} t + {}", self.c1, self.c0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadFactorization {
    pub alpha: Elem,
    pub beta: Elem,
    pub gap: u32,
    pub exact: bool,
}

/// Lifts an approximate factorization `P ≡ (t - alpha0)(t - beta0) mod pi^n`
/// with `2 v(alpha0 - beta0) < n` to a factorization modulo `pi^N`.
///
/// The returned roots satisfy `(t - alpha)(t - beta) = P` exactly in `R_N`.
/// Roots of a polynomial known modulo `pi^N` are themselves only determined
/// modulo `pi^(N - gap)`; Newton's method returns the one reached from
/// `alpha0`, and returns `alpha0` unchanged when it is already a root.
pub fn hensel_quadratic(
    poly: &MonicQuadratic,
    alpha0: &Elem,
    beta0: &Elem,
    n: u32,
) -> Result<QuadFactorization> {
    let ring = poly.ring().clone();
    let big_n = ring.precision();
    if n > big_n {
        return Err(Error::PrecisionExhausted(format!(
            "factorization modulo pi^{} requested in a ring of precision {}",
            n, big_n
        )));
    }
    if !poly.factors_as(alpha0, beta0, n) {
        return Err(Error::BadFactorization(format!(
            "{} is not (t - {})(t - {}) modulo pi^{}",
            poly, alpha0, beta0, n
        )));
    }
    let gap = (alpha0 - beta0).valuation();
    if 2 * gap >= n {
        return Err(Error::HenselHypothesisViolated(format!(
            "root gap {} is not below n/2 = {}/2",
            gap, n
        )));
    }

    // Each step is only determined modulo pi^(N - gap), but the error it
    // introduces in P(alpha) is a multiple of P'(alpha) pi^(N - gap), which
    // vanishes in R_N. Convergence is quadratic.
    let mut alpha = alpha0.clone();
    for _ in 0..128 {
        let value = poly.eval(&alpha);
        if value.is_zero() {
            break;
        }
        let deriv = poly.derivative_at(&alpha);
        let dv = deriv.valuation();
        if dv != gap || value.valuation() <= 2 * dv {
            break;
        }
        let unit = deriv.div_pi_pow(dv)?.inverse()?;
        let step = &value.div_pi_pow(dv)? * &unit;
        alpha = &alpha - &step;
    }
    let beta = &poly.trace() - &alpha;
    let out_gap = (&alpha - &beta).valuation();
    let exact = poly.eval(&alpha).is_zero() && out_gap == gap;
    Ok(QuadFactorization {
        alpha,
        beta,
        gap: out_gap,
        exact,
    })
}

/// All roots of `poly` modulo `pi^k`, as canonical residues, found by lifting
/// one digit at a time. Fails once more than `budget` partial roots are alive.
pub fn roots_mod(poly: &MonicQuadratic, k: u32, budget: usize) -> Result<Vec<Elem>> {
    let ring = poly.ring();
    let k = k.min(ring.precision());
    let reps = ring.residue_reps();
    let mut alive = vec![ring.zero()];
    for j in 0..k {
        let pj = ring.pi_pow(j);
        let mut next = Vec::new();
        for r in &alive {
            for d in &reps {
                let cand = r + &(d * &pj);
                if poly.eval(&cand).valuation() > j {
                    next.push(cand);
                }
            }
            if next.len() > budget {
                return Err(Error::OracleBudget(format!(
                    "more than {} roots modulo pi^{}",
                    budget,
                    j + 1
                )));
            }
        }
        alive = next;
        if alive.is_empty() {
            break;
        }
    }
    alive.sort();
    Ok(alive)
}
