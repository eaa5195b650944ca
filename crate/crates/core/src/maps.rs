//! Bijections and involutions between permutation models and weighted paths.
//!
//! * `phi`: two-to-one restructuring `M_n → H_{n-1}`.
//! * `psi1`, `psi2`: sign-reversing involutions on `H_n` and `Mstar_n`.
//! * `lambda1`, `lambda2`: snakes of `S0_n` and `S00_{n+1}` to paths of
//!   `Tstar_n` and `T_n`, with inverses.

use crate::algebra::{Monomial, Var};
use crate::error::{Error, Result};
use crate::paths::{matching_pairs, BMPath, Scheme, Step, StepKind};
use crate::snakes::{blocks, recover_signs, shape_at, Flavor, Shape, Snake};

fn ytq(y: i32, t: i32, q: i32) -> Monomial {
    Monomial::ytq(y, t, q)
}

/// `m = base · q^k` for some `k`; returns `k`.
fn q_offset(m: &Monomial, base: Monomial) -> Option<i32> {
    let d = m.div(&base);
    (d.exp(Var::Y) == 0 && d.exp(Var::T) == 0 && d.exp(Var::P) == 0).then(|| d.exp(Var::Q))
}

/// Output of [`phi`]: the weight of the dropped first step and the image path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhiResult {
    pub first_weight: Monomial,
    pub path: BMPath,
}

fn halves(k: StepKind) -> (StepKind, StepKind) {
    use StepKind::*;
    match k {
        U => (U, U),
        L => (U, D),
        W => (D, U),
        D => (D, D),
    }
}

fn join(a: StepKind, b: StepKind) -> StepKind {
    use StepKind::*;
    match (a, b) {
        (U, U) => U,
        (U, D) => L,
        (D, U) => W,
        _ => D,
    }
}

/// Double every step, drop the two outer half-steps and regroup.
pub fn phi(mu: &BMPath) -> Result<PhiResult> {
    mu.validate(Scheme::M)?;
    let Some(first) = mu.steps.first() else {
        return Err(Error::MalformedPath("phi needs at least one step".into()));
    };
    let steps = mu
        .steps
        .windows(2)
        .map(|w| Step::new(join(halves(w[0].kind).1, halves(w[1].kind).0), w[1].weight))
        .collect();
    Ok(PhiResult {
        first_weight: first.weight,
        path: BMPath::new(steps)?,
    })
}

pub fn phi_inv(first_weight: Monomial, path: &BMPath) -> Result<BMPath> {
    path.validate(Scheme::H)?;
    if first_weight != ytq(2, 0, 0) && first_weight != ytq(1, 1, 0) {
        return Err(Error::SchemeMismatch {
            scheme: Scheme::M.to_string(),
            reason: format!("first weight {first_weight} is neither y^2 nor y*t"),
        });
    }
    let mut half = vec![StepKind::U];
    for s in &path.steps {
        let (a, b) = halves(s.kind);
        half.extend([a, b]);
    }
    half.push(StepKind::D);
    let weights = std::iter::once(first_weight).chain(path.steps.iter().map(|s| s.weight));
    let steps = half
        .chunks(2)
        .zip(weights)
        .map(|(p, w)| Step::new(join(p[0], p[1]), w))
        .collect();
    let mu = BMPath::new(steps)?;
    mu.validate(Scheme::M)?;
    Ok(mu)
}

/// Involution on `H_n` whose fixed points are the `F` paths; every other
/// path changes weight by `y^{±2}`.
pub fn psi1(path: &BMPath) -> Result<BMPath> {
    path.validate(Scheme::H)?;
    let heights = path.heights()?;
    let mut out = path.clone();
    let (y2, yt, one) = (ytq(2, 0, 0), ytq(1, 1, 0), Monomial::ONE);

    for (s, &h) in out.steps.iter_mut().zip(&heights) {
        let h = h as i32;
        match s.kind {
            StepKind::L => {
                if let Some(a) = q_offset(&s.weight, one).filter(|&a| a <= h) {
                    *s = Step::new(StepKind::W, y2.mul(&ytq(0, 0, a)));
                    return Ok(out);
                }
            }
            StepKind::W => {
                if let Some(a) = q_offset(&s.weight, y2).filter(|&a| a <= h) {
                    *s = Step::new(StepKind::L, ytq(0, 0, a));
                    return Ok(out);
                }
            }
            _ => {}
        }
    }

    for (u, d) in matching_pairs(path) {
        let h = heights[u] as i32;
        let (wu, wd) = (out.steps[u].weight, out.steps[d].weight);
        if let (Some(a), Some(k)) = (q_offset(&wu, y2), q_offset(&wd, yt)) {
            let b = k - h - 1;
            out.steps[u].weight = ytq(1, 1, h + 1 + a);
            out.steps[d].weight = ytq(0, 0, b);
            return Ok(out);
        }
        if let (Some(k), Some(b)) = (q_offset(&wu, yt), q_offset(&wd, one)) {
            let a = k - h - 1;
            out.steps[u].weight = ytq(2, 0, a);
            out.steps[d].weight = ytq(1, 1, h + 1 + b);
            return Ok(out);
        }
    }
    Ok(out)
}

/// Involution on `Mstar_n` whose fixed points are the `G` paths; every other
/// path changes weight by `(y^2 q)^{±1}`.
pub fn psi2(path: &BMPath) -> Result<BMPath> {
    path.validate(Scheme::Mstar)?;
    let heights = path.heights()?;
    let mut out = path.clone();
    let (y2, yt, one) = (ytq(2, 0, 0), ytq(1, 1, 0), Monomial::ONE);

    for s in out.steps.iter_mut() {
        match s.kind {
            StepKind::L => {
                if let Some(a) = q_offset(&s.weight, y2) {
                    *s = Step::new(StepKind::W, ytq(0, 0, a - 1));
                    return Ok(out);
                }
            }
            StepKind::W => {
                if let Some(a) = q_offset(&s.weight, one) {
                    *s = Step::new(StepKind::L, ytq(2, 0, a + 1));
                    return Ok(out);
                }
            }
            _ => {}
        }
    }

    for (u, d) in matching_pairs(path) {
        let h = heights[u] as i32;
        let (wu, wd) = (out.steps[u].weight, out.steps[d].weight);
        if let (Some(a), Some(k)) = (q_offset(&wu, y2), q_offset(&wd, yt)) {
            let b = k - h - 1;
            out.steps[u].weight = ytq(1, 1, h + a);
            out.steps[d].weight = ytq(0, 0, b);
            return Ok(out);
        }
        if let (Some(k), Some(b)) = (q_offset(&wu, yt), q_offset(&wd, one)) {
            let a = k - h;
            out.steps[u].weight = ytq(2, 0, a);
            out.steps[d].weight = ytq(1, 1, h + 1 + b);
            return Ok(out);
        }
    }
    Ok(out)
}

fn require_flavor(s: &Snake, want: Flavor, map: &'static str) -> Result<()> {
    if s.flavor != want {
        return Err(Error::FlavorMismatch {
            stat: map,
            expected: want.name(),
            found: s.flavor.to_string(),
        });
    }
    Ok(())
}

/// Shared encoder. `shift` is 0 for `lambda1` and 1 for `lambda2`, where the
/// exponents drop by one for `U` and `L/W` and by two on sign-changing valleys.
fn encode(s: &Snake, steps: usize, shift: i32) -> Result<BMPath> {
    let ext = s.abs_extended();
    let csv = s.cs_vector()?;
    let mut pos = vec![0usize; ext.len()];
    for (i, &v) in ext.iter().enumerate().skip(1).take(s.len()) {
        pos[v as usize] = i;
    }
    let mut out = Vec::with_capacity(steps);
    for j in 1..=steps as u32 {
        let i = pos[j as usize];
        let (alpha, beta) = blocks(&ext, j);
        let (a, b) = (alpha as i32, beta as i32);
        let step = match (shape_at(&ext, i), csv[j as usize - 1]) {
            (Shape::Valley, 0) => Step::new(StepKind::U, ytq(0, 0, b - shift)),
            (Shape::Valley, 2) => Step::new(StepKind::U, ytq(0, 2, b + 2 * a - 3 - 2 * shift)),
            (Shape::DoubleAscent, _) => Step::new(StepKind::L, ytq(0, 1, b + a - 1 - shift)),
            (Shape::DoubleDescent, _) => Step::new(StepKind::W, ytq(0, 1, b + a - 1 - shift)),
            (Shape::Peak, _) => Step::new(StepKind::D, ytq(0, 0, b)),
            (Shape::Valley, c) => {
                return Err(Error::InternalInconsistency(format!(
                    "valley {j} of {s} has {c} sign changes"
                )))
            }
        };
        out.push(step);
    }
    BMPath::new(out)
}

/// `S0_n → Tstar_n`.
pub fn lambda1(s: &Snake) -> Result<BMPath> {
    require_flavor(s, Flavor::S0, "lambda1")?;
    encode(s, s.len(), 0)
}

/// `S00_{n+1} → T_n`.
pub fn lambda2(s: &Snake) -> Result<BMPath> {
    require_flavor(s, Flavor::S00, "lambda2")?;
    if s.is_empty() {
        return Err(Error::FlavorUnsupported("lambda2 on the empty snake".into()));
    }
    encode(s, s.len() - 1, 1)
}

/// Rebuild the block word from a path. `shift` as in [`encode`].
fn decode(path: &BMPath, mut word: Vec<Vec<u32>>, shift: i32) -> Result<(Vec<Vec<u32>>, Vec<u8>)> {
    let heights = path.heights()?;
    let mut csv = Vec::with_capacity(path.len());
    for (idx, (s, &h)) in path.steps.iter().zip(&heights).enumerate() {
        let j = idx as u32 + 1;
        let h = h as i32;
        let d = s.weight.exp(Var::Q);
        let cs = s.weight.exp(Var::T);
        let bad = |why: &str| Error::MalformedPath(format!("step {j} = {s}: {why}"));
        let len = word.len() as i32;
        // `from_right(ℓ)` is the index of the (ℓ+1)st block from the right
        let from_right = |l: i32| -> Result<usize> {
            if l < 0 || l >= len {
                Err(bad("block index out of range"))
            } else {
                Ok((len - 1 - l) as usize)
            }
        };
        match s.kind {
            StepKind::U => {
                let l = match cs {
                    0 => d + shift,
                    2 => d - 2 * h - 1,
                    _ => return Err(bad("up steps carry t^0 or t^2")),
                };
                if l < 0 || l > len {
                    return Err(bad("block index out of range"));
                }
                word.insert((len - l) as usize, vec![j]);
            }
            StepKind::L | StepKind::W => {
                if cs != 1 {
                    return Err(bad("level steps carry t^1"));
                }
                let k = from_right(d - h)?;
                if s.kind == StepKind::L {
                    word[k].push(j);
                } else {
                    word[k].insert(0, j);
                }
            }
            StepKind::D => {
                if cs != 0 {
                    return Err(bad("down steps carry t^0"));
                }
                let right = from_right(d)?;
                if right == 0 {
                    return Err(bad("no block to merge with"));
                }
                let mut tail = word.remove(right);
                let left = &mut word[right - 1];
                left.push(j);
                left.append(&mut tail);
            }
        }
        csv.push(cs as u8);
    }
    Ok((word, csv))
}

/// `Tstar_n → S0_n`.
pub fn lambda1_inv(path: &BMPath) -> Result<Snake> {
    path.validate(Scheme::Tstar)?;
    let (word, csv) = decode(path, vec![vec![0]], 0)?;
    if word.len() != 1 {
        return Err(Error::MalformedPath(format!("{} blocks remain", word.len())));
    }
    recover_signs(&word[0][1..], &csv, Flavor::S0)
}

/// `T_n → S00_{n+1}`.
pub fn lambda2_inv(path: &BMPath) -> Result<Snake> {
    path.validate(Scheme::T)?;
    let (word, mut csv) = decode(path, vec![vec![0], vec![0]], 1)?;
    if word.len() != 2 {
        return Err(Error::MalformedPath(format!("{} blocks remain", word.len())));
    }
    let top = path.len() as u32 + 1;
    let abs: Vec<u32> = word[0][1..]
        .iter()
        .copied()
        .chain(std::iter::once(top))
        .chain(word[1][..word[1].len() - 1].iter().copied())
        .collect();
    csv.push(0);
    recover_signs(&abs, &csv, Flavor::S00)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::algebra::{derivative_poly, DerivFlavor, DerivKind, Poly};
    use crate::paths::{enumerate_paths, is_fixed, FixedPredicate};
    use crate::snakes::enumerate_snakes;

    fn snake(w: &[i32], f: Flavor) -> Snake {
        Snake::from_window(w.to_vec(), f).unwrap()
    }

    #[test]
    fn lambda1_example() {
        let s = snake(&[5, -2, 4, -7, -1, -8, 10, -9, 6, 3], Flavor::S0);
        let p = lambda1(&s).unwrap();
        assert_eq!(
            p.to_string(),
            "U(1) U(t^2*q^4) U(1) L(t*q^5) D(q^2) W(t*q^2) D(q) L(t*q^2) W(t*q) D(1)"
        );
        assert_eq!(lambda1_inv(&p).unwrap(), s);
    }

    #[test]
    fn lambda2_example() {
        let s = snake(&[5, -2, 4, -7, -1, -8, 11, -9, 6, 3, 10], Flavor::S00);
        let p = lambda2(&s).unwrap();
        assert_eq!(
            p.to_string(),
            "U(1) U(t^2*q^5) U(1) L(t*q^6) D(q^3) W(t*q^3) D(q^2) L(t*q^3) W(t*q^2) D(1)"
        );
        assert_eq!(p.heights().unwrap(), vec![0, 1, 2, 3, 3, 2, 2, 1, 1, 1]);
        assert_eq!(lambda2_inv(&p).unwrap(), s);
    }

    #[test]
    fn lambda1_bijective() {
        for n in 0..=5 {
            let mut seen = HashSet::new();
            for s in enumerate_snakes(n, Flavor::S0).unwrap() {
                let p = lambda1(&s).unwrap();
                p.validate(Scheme::Tstar).unwrap();
                assert_eq!(lambda1_inv(&p).unwrap(), s);
                let m = p.weight();
                assert_eq!(m.exp(Var::T) as u32, s.cs());
                let q = s.total_2_31().unwrap() + s.pat_stat(crate::snakes::PatKind::Q).unwrap();
                assert_eq!(m.exp(Var::Q) as u32, q, "{s}");
                assert!(seen.insert(p));
            }
            assert_eq!(seen.len(), enumerate_paths(Scheme::Tstar, n).unwrap().count());
        }
    }

    #[test]
    fn lambda2_bijective() {
        for n in 0..=5 {
            let mut seen = HashSet::new();
            for s in enumerate_snakes(n + 1, Flavor::S00).unwrap() {
                let p = lambda2(&s).unwrap();
                p.validate(Scheme::T).unwrap();
                assert_eq!(lambda2_inv(&p).unwrap(), s);
                assert!(seen.insert(p));
            }
            assert_eq!(seen.len(), enumerate_paths(Scheme::T, n).unwrap().count());
        }
    }

    #[test]
    fn inverse_rejects_foreign_path() {
        let p: BMPath = "U(1) D(1)".parse().unwrap();
        assert!(lambda1_inv(&p).is_ok());
        let bad: BMPath = "L(y^2)".parse().unwrap();
        assert!(matches!(lambda1_inv(&bad), Err(Error::SchemeMismatch { .. })));
        let s = snake(&[1], Flavor::S00);
        assert!(matches!(lambda1(&s), Err(Error::FlavorMismatch { .. })));
    }

    #[test]
    fn phi_two_to_one() {
        for n in 1..=5 {
            let mut seen = HashSet::new();
            for mu in enumerate_paths(Scheme::M, n).unwrap() {
                let r = phi(&mu).unwrap();
                r.path.validate(Scheme::H).unwrap();
                assert_eq!(r.first_weight.mul(&r.path.weight()), mu.weight());
                assert_eq!(phi_inv(r.first_weight, &r.path).unwrap(), mu);
                assert!(seen.insert(r));
            }
            let h = enumerate_paths(Scheme::H, n - 1).unwrap().count();
            assert_eq!(seen.len(), 2 * h);
        }
    }

    fn check_involution(scheme: Scheme, pred: FixedPredicate, f: fn(&BMPath) -> Result<BMPath>, ratio: Monomial) {
        for n in 0..=5 {
            let mut fixed = Poly::zero();
            for p in enumerate_paths(scheme, n).unwrap() {
                let img = f(&p).unwrap();
                img.validate(scheme).unwrap();
                assert_eq!(f(&img).unwrap(), p);
                if img == p {
                    assert!(is_fixed(&p, pred).unwrap(), "{p}");
                    fixed += p.weight_poly();
                } else {
                    assert!(!is_fixed(&p, pred).unwrap(), "{p}");
                    let w = img.weight();
                    assert!(w == p.weight().mul(&ratio) || p.weight() == w.mul(&ratio), "{p}");
                }
            }
            let kind = match pred {
                FixedPredicate::F => DerivKind::R,
                FixedPredicate::G => DerivKind::Q,
            };
            let want = Poly::monomial(ytq(n as i32, 0, 0)) * derivative_poly(kind, n as u32, DerivFlavor::Q);
            assert_eq!(fixed, want, "n = {n}");
        }
    }

    #[test]
    fn psi1_involution() {
        check_involution(Scheme::H, FixedPredicate::F, psi1, ytq(2, 0, 0));
    }

    #[test]
    fn psi2_involution() {
        check_involution(Scheme::Mstar, FixedPredicate::G, psi2, ytq(2, 0, 1));
    }
}
