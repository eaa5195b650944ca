//! Truncated continued-fraction expansion by the Motzkin transfer recurrence.
//!
//! A J-fraction with level weights `μ_h` and pair weights `λ_h` expands to
//! `Σ_n a_n x^n`, where `a_n` sums over Motzkin paths of length `n`: a level
//! step at height `h` carries `μ_h`, an up step from `h-1` to `h` carries `λ_h`,
//! down steps carry 1. A Stieltjes fraction is the `μ = 0` case read in
//! `z = x^2`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{q_int, Monomial, Poly, QFlavor, Series};
use crate::error::{Error, Result};

type Ladder = Arc<dyn Fn(u32) -> Poly + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CFKind {
    /// `1/(1 - μ_0 x - λ_1 x^2/(1 - μ_1 x - …))`
    Jacobi,
    /// `1/(1 - λ_1 z/(1 - λ_2 z/…))`; `mu` is ignored.
    Stieltjes,
}

/// Coefficient ladders of a continued fraction.
#[derive(Clone)]
pub struct CFSpec {
    pub name: Option<String>,
    pub kind: CFKind,
    mu: Ladder,
    lambda: Ladder,
}

impl fmt::Debug for CFSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CFSpec")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

impl CFSpec {
    pub fn jacobi(
        mu: impl Fn(u32) -> Poly + Send + Sync + 'static,
        lambda: impl Fn(u32) -> Poly + Send + Sync + 'static,
    ) -> Self {
        CFSpec {
            name: None,
            kind: CFKind::Jacobi,
            mu: Arc::new(mu),
            lambda: Arc::new(lambda),
        }
    }

    pub fn stieltjes(lambda: impl Fn(u32) -> Poly + Send + Sync + 'static) -> Self {
        CFSpec {
            name: None,
            kind: CFKind::Stieltjes,
            mu: Arc::new(|_| Poly::zero()),
            lambda: Arc::new(lambda),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// `μ_h`; zero for Stieltjes fractions.
    pub fn mu(&self, h: u32) -> Poly {
        match self.kind {
            CFKind::Jacobi => (self.mu)(h),
            CFKind::Stieltjes => Poly::zero(),
        }
    }

    /// `λ_h` for `h ≥ 1`.
    pub fn lambda(&self, h: u32) -> Poly {
        assert!(h >= 1, "lambda is indexed from 1");
        (self.lambda)(h)
    }
}

/// The built-in fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Type-B enumerator `B_n(y,t,q)`.
    B,
    /// `Q_n(t,q)`.
    Q,
    /// `R_n(t,q)`.
    R,
    /// q-tangent numbers `E_{2n+1}(q)` in `z`.
    Etan,
    /// q-secant numbers `E_{2n}(q)` in `z`.
    Esec,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [Builtin::B, Builtin::Q, Builtin::R, Builtin::Etan, Builtin::Esec];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::B => "B",
            Builtin::Q => "Q",
            Builtin::R => "R",
            Builtin::Etan => "Etan",
            Builtin::Esec => "Esec",
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown continued fraction `{s}`")))
    }
}

fn qi(n: u32) -> Poly {
    q_int(n, QFlavor::Q)
}

fn mono(y: i32, t: i32, q: i32) -> Poly {
    Poly::monomial(Monomial::ytq(y, t, q))
}

pub fn builtin_spec(which: Builtin) -> CFSpec {
    let spec = match which {
        Builtin::B => CFSpec::jacobi(
            |h| {
                let hi = h as i32;
                mono(2, 0, 0) * qi(h + 1) + qi(h) + mono(1, 1, hi) * (qi(h) + qi(h + 1))
            },
            |h| {
                let hi = h as i32;
                let sq = &qi(h) * &qi(h);
                sq * (mono(2, 0, 0) + mono(1, 1, hi - 1)) * (Poly::one() + mono(1, 1, hi))
            },
        ),
        Builtin::Q => CFSpec::jacobi(
            |h| mono(0, 1, h as i32) * (qi(h) + qi(h + 1)),
            |h| (Poly::one() + mono(0, 2, 2 * h as i32 - 1)) * &qi(h) * &qi(h),
        ),
        Builtin::R => CFSpec::jacobi(
            |h| mono(0, 1, h as i32) * qi(2) * qi(h + 1),
            |h| (Poly::one() + mono(0, 2, 2 * h as i32)) * &qi(h) * &qi(h + 1),
        ),
        Builtin::Etan => CFSpec::stieltjes(|h| &qi(h) * &qi(h + 1)),
        Builtin::Esec => CFSpec::stieltjes(|h| &qi(h) * &qi(h)),
    };
    spec.named(which.name())
}

/// Coefficients `0..=order` of the fraction.
pub fn expand(spec: &CFSpec, order: usize) -> Series {
    expand_to_depth(spec, order, usize::MAX)
}

/// As [`expand`], with the fraction cut off below level `depth`: heights
/// above `depth` are unreachable. Depth `d` is exact through `x^(2d+1)`
/// (Jacobi) or `z^d` (Stieltjes).
pub fn expand_to_depth(spec: &CFSpec, order: usize, depth: usize) -> Series {
    let len = match spec.kind {
        CFKind::Jacobi => order,
        CFKind::Stieltjes => 2 * order,
    };
    let top = (len / 2).min(depth);
    let mu: Vec<Poly> = (0..=top as u32).map(|h| spec.mu(h)).collect();
    let lambda: Vec<Poly> = (0..=top as u32)
        .map(|h| if h == 0 { Poly::zero() } else { spec.lambda(h) })
        .collect();

    // g[h]: weighted prefixes of the current length ending at height h
    let mut g: Vec<Poly> = vec![Poly::zero(); top + 1];
    g[0] = Poly::one();
    let mut raw = vec![Poly::one()];
    for k in 1..=len {
        let reach = top.min(k).min(len - k);
        let mut next = vec![Poly::zero(); top + 1];
        for (h, slot) in next.iter_mut().enumerate().take(reach + 1) {
            let mut acc = Poly::zero();
            if h > 0 && !g[h - 1].is_zero() {
                acc += &g[h - 1] * &lambda[h];
            }
            if !g[h].is_zero() && !mu[h].is_zero() {
                acc += &g[h] * &mu[h];
            }
            if h < top && !g[h + 1].is_zero() {
                acc += &g[h + 1];
            }
            *slot = acc;
        }
        g = next;
        raw.push(g[0].clone());
    }
    let coeffs = match spec.kind {
        CFKind::Jacobi => raw,
        CFKind::Stieltjes => raw.into_iter().step_by(2).collect(),
    };
    Series { coeffs }
}

/// `E_n(q)`: q-tangent coefficient for odd `n`, q-secant for even `n`.
pub fn q_euler_number(n: usize) -> Poly {
    let which = if n % 2 == 1 { Builtin::Etan } else { Builtin::Esec };
    let mut s = expand(&builtin_spec(which), n / 2);
    s.coeffs.swap_remove(n / 2)
}
