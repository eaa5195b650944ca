//! Exact polynomial arithmetic, q-integers and the derivative polynomials.

mod poly;

pub use poly::{Monomial, Poly, PolyAccumulator, SubstValue, Var};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncated power series in a formal variable; `coeffs[k]` is the
/// coefficient of `x^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series {
    pub coeffs: Vec<Poly>,
}

impl Series {
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Which deformation of the integers/derivative to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QFlavor {
    /// `[n]_q = 1 + q + ... + q^(n-1)`
    Q,
    /// `[n]_{p,q} = p^(n-1) + p^(n-2) q + ... + q^(n-1)`
    PQ,
}

/// Flavor for [`derivative_poly`]; `Classic` is the `q = p = 1` specialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivFlavor {
    Classic,
    Q,
    PQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivKind {
    P,
    Q,
    R,
}

pub fn q_int(n: u32, flavor: QFlavor) -> Poly {
    let n = n as i32;
    let mut out = Poly::zero();
    for a in 0..n {
        let m = match flavor {
            QFlavor::Q => Monomial::new(0, 0, a, 0),
            QFlavor::PQ => Monomial::new(0, 0, a, n - 1 - a),
        };
        out.add_term(m, BigInt::from(1));
    }
    out
}

/// The q-derivative in `t`: linear, with `D(t^k) = [k] t^(k-1)`.
///
/// # Panics
///
/// If `f` contains a negative power of `t`.
pub fn q_derivative(f: &Poly, flavor: QFlavor) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in f.terms() {
        let k = m.exp(Var::T);
        assert!(k >= 0, "q_derivative: negative power of t in {f}");
        if k == 0 {
            continue;
        }
        let shifted = m.with_exp(Var::T, k - 1);
        for (qm, qc) in q_int(k as u32, flavor).terms() {
            out.add_term(shifted.mul(qm), c * qc);
        }
    }
    out
}

fn times_t(f: &Poly) -> Poly {
    f.mul_monomial(&Monomial::var(Var::T))
}

/// `Q_n = (D + UDU)^n 1`, `R_n = (D + DUU)^n 1`, `P_0 = t`,
/// `P_n = (1 + t^2) R_(n-1)`, where `U` is multiplication by `t`.
pub fn derivative_poly(kind: DerivKind, n: u32, flavor: DerivFlavor) -> Poly {
    let qf = match flavor {
        DerivFlavor::PQ => QFlavor::PQ,
        _ => QFlavor::Q,
    };
    let d = |f: &Poly| q_derivative(f, qf);
    let out = match kind {
        DerivKind::Q => {
            let mut f = Poly::one();
            for _ in 0..n {
                f = d(&f) + times_t(&d(&times_t(&f)));
            }
            f
        }
        DerivKind::R => {
            let mut f = Poly::one();
            for _ in 0..n {
                f = d(&f) + d(&times_t(&times_t(&f)));
            }
            f
        }
        DerivKind::P => {
            if n == 0 {
                Poly::t()
            } else {
                let r = derivative_poly(DerivKind::R, n - 1, flavor);
                let one_t2: Poly = Poly::one() + Poly::monomial(Monomial::power(Var::T, 2));
                &one_t2 * &r
            }
        }
    };
    match flavor {
        DerivFlavor::Classic => out.erase(&[Var::Q, Var::P]),
        _ => out,
    }
}

/// Euler, Springer and type-D Springer numbers at size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpringerRow {
    pub euler: BigInt,
    pub springer: BigInt,
    pub springer_d: BigInt,
}

/// Read off `E_n = P_n(1)/2^n`, `S_n = Q_n(1)` and `S^D_n = P_n(1) - Q_n(1)`.
///
/// At `n = 0` the difference `P_0(1) - Q_0(1)` is zero, while the usual
/// convention (one empty snake) gives 1; the row is returned as `(1, 1, 1)`.
pub fn springer_numbers(n: u32) -> Result<SpringerRow> {
    let one = BigInt::from(1);
    if n == 0 {
        return Ok(SpringerRow {
            euler: one.clone(),
            springer: one.clone(),
            springer_d: one,
        });
    }
    let p = derivative_poly(DerivKind::P, n, DerivFlavor::Classic).eval_at_ones();
    let q = derivative_poly(DerivKind::Q, n, DerivFlavor::Classic).eval_at_ones();
    let pow2 = BigInt::from(1) << n;
    if !(&p % &pow2).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "P_{n}(1) = {p} is not divisible by 2^{n}"
        )));
    }
    Ok(SpringerRow {
        euler: &p / &pow2,
        springer: q.clone(),
        springer_d: p - q,
    })
}
