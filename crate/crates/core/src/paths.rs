//! Weighted bicolored Motzkin paths and their weight schemes.
//!
//! Heights are those of a step's starting point. A scheme assigns to each
//! step kind and height a menu of allowed weight monomials; a path belongs to
//! the scheme when every step's weight is on its menu.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Monomial, Poly, Var};
use crate::error::{Error, Result};
use crate::sgnperm::enumeration_limit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepKind {
    U,
    /// Straight level step.
    L,
    /// Wavy level step.
    W,
    D,
}

impl StepKind {
    pub const ALL: [StepKind; 4] = [StepKind::U, StepKind::L, StepKind::W, StepKind::D];

    pub fn letter(self) -> char {
        match self {
            StepKind::U => 'U',
            StepKind::L => 'L',
            StepKind::W => 'W',
            StepKind::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'U' => Some(StepKind::U),
            'L' => Some(StepKind::L),
            'W' => Some(StepKind::W),
            'D' => Some(StepKind::D),
            _ => None,
        }
    }

    pub fn delta(self) -> i32 {
        match self {
            StepKind::U => 1,
            StepKind::D => -1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub kind: StepKind,
    pub weight: Monomial,
}

impl Step {
    pub fn new(kind: StepKind, weight: Monomial) -> Self {
        Step { kind, weight }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind.letter(), self.weight)
    }
}

/// A bicolored Motzkin path with a weight on every step.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BMPath {
    pub steps: Vec<Step>,
}

impl BMPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let p = BMPath { steps };
        p.heights()?;
        Ok(p)
    }

    pub fn empty() -> Self {
        BMPath::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn kinds(&self) -> String {
        self.steps.iter().map(|s| s.kind.letter()).collect()
    }

    /// Starting height of every step; errors if the walk dips below zero or
    /// does not return to it.
    pub fn heights(&self) -> Result<Vec<u32>> {
        let mut h = 0i32;
        let mut out = Vec::with_capacity(self.steps.len());
        for (j, s) in self.steps.iter().enumerate() {
            out.push(h as u32);
            h += s.kind.delta();
            if h < 0 {
                return Err(Error::MalformedPath(format!("step {j} goes below the axis")));
            }
        }
        if h != 0 {
            return Err(Error::MalformedPath(format!("ends at height {h}")));
        }
        Ok(out)
    }

    /// Product of all step weights.
    pub fn weight(&self) -> Monomial {
        self.steps
            .iter()
            .fold(Monomial::ONE, |acc, s| acc.mul(&s.weight))
    }

    pub fn weight_poly(&self) -> Poly {
        Poly::monomial(self.weight())
    }

    /// Every membership failure with respect to `scheme`, as an error.
    pub fn validate(&self, scheme: Scheme) -> Result<()> {
        let heights = self.heights()?;
        for (j, (s, &h)) in self.steps.iter().zip(&heights).enumerate() {
            if !allowed_weights(scheme, s.kind, h).contains(&s.weight) {
                return Err(Error::SchemeMismatch {
                    scheme: scheme.to_string(),
                    reason: format!("step {j} = {s} at height {h} is off the menu"),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for BMPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses the display form, e.g. `U(1) L(t*q) D(q^2)`.
impl FromStr for BMPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for tok in s.split_whitespace() {
            let mut chars = tok.chars();
            let kind = chars
                .next()
                .and_then(StepKind::from_letter)
                .ok_or_else(|| Error::Parse(format!("bad step `{tok}`")))?;
            let inner = chars
                .as_str()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("bad step `{tok}`")))?;
            let w: Poly = inner.parse()?;
            let (m, c) = match w.terms().collect::<Vec<_>>().as_slice() {
                [(m, c)] => (**m, (*c).clone()),
                _ => return Err(Error::Parse(format!("weight of `{tok}` is not a monomial"))),
            };
            if c != 1.into() {
                return Err(Error::Parse(format!("weight of `{tok}` has a coefficient")));
            }
            steps.push(Step::new(kind, m));
        }
        BMPath::new(steps)
    }
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    k: String,
    e: [i32; 3],
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    steps: Vec<StepJson>,
}

impl Serialize for BMPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathJson {
            steps: self
                .steps
                .iter()
                .map(|st| StepJson {
                    k: st.kind.letter().to_string(),
                    e: [
                        st.weight.exp(Var::Y),
                        st.weight.exp(Var::T),
                        st.weight.exp(Var::Q),
                    ],
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BMPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PathJson::deserialize(d)?;
        let mut steps = Vec::with_capacity(raw.steps.len());
        for st in raw.steps {
            let mut cs = st.k.chars();
            let kind = match (cs.next().and_then(StepKind::from_letter), cs.next()) {
                (Some(k), None) => k,
                _ => return Err(D::Error::custom(format!("bad step kind `{}`", st.k))),
            };
            steps.push(Step::new(kind, Monomial::ytq(st.e[0], st.e[1], st.e[2])));
        }
        BMPath::new(steps).map_err(D::Error::custom)
    }
}

/// The weight schemes defined by menus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    M,
    /// `M` without straight level steps of weight `y^2`.
    Mstar,
    H,
    T,
    Tstar,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::M, Scheme::Mstar, Scheme::H, Scheme::T, Scheme::Tstar];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::M => "M",
            Scheme::Mstar => "Mstar",
            Scheme::H => "H",
            Scheme::T => "T",
            Scheme::Tstar => "Tstar",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s) || (s == "M*" && *x == Scheme::Mstar) || (s == "T*" && *x == Scheme::Tstar))
            .ok_or_else(|| Error::Parse(format!("unknown scheme `{s}`")))
    }
}

fn ytq(y: i32, t: i32, q: i32) -> Monomial {
    Monomial::ytq(y, t, q)
}

/// `{ m · q^a : a in lo..=hi }`, empty when `hi < lo`.
fn run(m: Monomial, lo: i32, hi: i32) -> impl Iterator<Item = Monomial> {
    (lo..=hi).map(move |a| m.mul(&ytq(0, 0, a)))
}

/// The menu of `kind` at starting height `h`. Down steps starting at
/// `h = 0` get the empty menu.
pub fn allowed_weights(scheme: Scheme, kind: StepKind, h: u32) -> Vec<Monomial> {
    let h = h as i32;
    let y2 = ytq(2, 0, 0);
    let yt = ytq(1, 1, 0);
    let one = Monomial::ONE;
    let t = ytq(0, 1, 0);
    if kind == StepKind::D && h == 0 {
        return Vec::new();
    }
    // for down steps the menus are written in the landing height
    let hd = h - 1;
    let out: Vec<Monomial> = match (scheme, kind) {
        (Scheme::M | Scheme::Mstar, StepKind::U) => {
            run(y2, 0, h).chain(run(yt, h, 2 * h)).collect()
        }
        (Scheme::M, StepKind::L) => run(y2, 0, h).chain(run(yt, h, 2 * h)).collect(),
        (Scheme::Mstar, StepKind::L) => run(y2, 1, h).chain(run(yt, h, 2 * h)).collect(),
        (Scheme::M | Scheme::Mstar, StepKind::W) => {
            run(one, 0, h - 1).chain(run(yt, h, 2 * h - 1)).collect()
        }
        (Scheme::M | Scheme::Mstar | Scheme::H, StepKind::D) => {
            run(one, 0, hd).chain(run(yt, hd + 1, 2 * hd + 1)).collect()
        }
        (Scheme::H, StepKind::U) => run(y2, 0, h + 1)
            .chain(run(yt, h + 1, 2 * h + 2))
            .collect(),
        (Scheme::H, StepKind::L) => run(one, 0, h).chain(run(yt, h + 1, 2 * h + 1)).collect(),
        (Scheme::H, StepKind::W) => run(y2, 0, h).chain(run(yt, h, 2 * h)).collect(),
        (Scheme::T, StepKind::U) => run(one, 0, h)
            .chain(run(ytq(0, 2, 0), 2 * h + 2, 3 * h + 2))
            .collect(),
        (Scheme::T, StepKind::L) => run(t, h + 1, 2 * h + 1).collect(),
        (Scheme::T, StepKind::W) => run(t, h, 2 * h).collect(),
        (Scheme::T, StepKind::D) => run(one, 0, hd + 1).collect(),
        (Scheme::Tstar, StepKind::U) => run(one, 0, h)
            .chain(run(ytq(0, 2, 0), 2 * h + 1, 3 * h + 1))
            .collect(),
        (Scheme::Tstar, StepKind::L) => run(t, h, 2 * h).collect(),
        (Scheme::Tstar, StepKind::W) => run(t, h, 2 * h - 1).collect(),
        (Scheme::Tstar, StepKind::D) => run(one, 0, hd).collect(),
    };
    out
}

fn menu_sum(scheme: Scheme, kind: StepKind, h: u32) -> Poly {
    allowed_weights(scheme, kind, h)
        .into_iter()
        .map(Poly::monomial)
        .sum()
}

/// `Σ_{μ} ρ(μ)` over the scheme's paths of length `n`, by a height
/// recurrence on summed menus.
pub fn weight_sum(scheme: Scheme, n: usize) -> Poly {
    let top = n / 2;
    let up: Vec<Poly> = (0..=top as u32).map(|h| menu_sum(scheme, StepKind::U, h)).collect();
    let level: Vec<Poly> = (0..=top as u32)
        .map(|h| menu_sum(scheme, StepKind::L, h) + menu_sum(scheme, StepKind::W, h))
        .collect();
    let down: Vec<Poly> = (0..=top as u32).map(|h| menu_sum(scheme, StepKind::D, h)).collect();
    let mut g = vec![Poly::zero(); top + 1];
    g[0] = Poly::one();
    for k in 0..n {
        let mut next = vec![Poly::zero(); top + 1];
        for h in 0..=top {
            if g[h].is_zero() {
                continue;
            }
            next[h] += &g[h] * &level[h];
            if h < top {
                next[h + 1] += &g[h] * &up[h];
            }
            if h > 0 {
                next[h - 1] += &g[h] * &down[h];
            }
        }
        // heights above the remaining length can never return
        let rest = n - k - 1;
        for slot in next.iter_mut().skip(rest + 1) {
            *slot = Poly::zero();
        }
        g = next;
    }
    g.swap_remove(0)
}

/// Lazy stream of every path of a scheme, in lexicographic order of
/// `(kind, weight)` step by step.
#[derive(Debug, Clone)]
pub struct PathIter {
    scheme: Scheme,
    n: usize,
    frames: Vec<(Vec<Step>, usize)>,
    current: Vec<Step>,
    heights: Vec<u32>,
    pending_leaf: bool,
    done: bool,
}

impl PathIter {
    fn options(&self, h: u32, remaining: usize) -> Vec<Step> {
        let mut out = Vec::new();
        for kind in StepKind::ALL {
            let after = h as i64 + kind.delta() as i64;
            if after < 0 || after as usize > remaining - 1 {
                continue;
            }
            let mut ws = allowed_weights(self.scheme, kind, h);
            ws.sort();
            out.extend(ws.into_iter().map(|w| Step::new(kind, w)));
        }
        out
    }
}

impl Iterator for PathIter {
    type Item = BMPath;

    fn next(&mut self) -> Option<BMPath> {
        if self.done {
            return None;
        }
        loop {
            if self.pending_leaf {
                self.pending_leaf = false;
                return Some(BMPath {
                    steps: self.current.clone(),
                });
            }
            let d = self.current.len();
            if d < self.n && self.frames.len() == d {
                let h = *self.heights.last().unwrap_or(&0);
                let opts = self.options(h, self.n - d);
                self.frames.push((opts, 0));
            }
            if d < self.n {
                let (opts, idx) = self.frames.last_mut().expect("frame for this depth");
                if *idx < opts.len() {
                    let st = opts[*idx];
                    *idx += 1;
                    let h = *self.heights.last().unwrap_or(&0) as i32 + st.kind.delta();
                    self.current.push(st);
                    self.heights.push(h as u32);
                    if self.current.len() == self.n {
                        self.pending_leaf = true;
                    }
                    continue;
                }
                self.frames.pop();
            }
            if self.current.is_empty() {
                self.done = true;
                return None;
            }
            self.current.pop();
            self.heights.pop();
        }
    }
}

/// Stream every path of `scheme` with `n` steps.
pub fn enumerate_paths(scheme: Scheme, n: usize) -> Result<PathIter> {
    let limit = enumeration_limit();
    if n > limit {
        return Err(Error::BoundExceeded { n, limit });
    }
    Ok(PathIter {
        scheme,
        n,
        frames: Vec::new(),
        current: Vec::new(),
        heights: Vec::new(),
        pending_leaf: n == 0,
        done: false,
    })
}

/// `(up index, down index)` pairs, 0-based, sorted by up index. An up step
/// is matched with the first later down step that returns to its height.
pub fn matching_pairs(path: &BMPath) -> Vec<(usize, usize)> {
    let mut stack = Vec::new();
    let mut out = Vec::new();
    for (j, s) in path.steps.iter().enumerate() {
        match s.kind {
            StepKind::U => stack.push(j),
            StepKind::D => {
                if let Some(u) = stack.pop() {
                    out.push((u, j));
                }
            }
            _ => {}
        }
    }
    out.sort_unstable();
    out
}

/// Fixed-point predicates of the two involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedPredicate {
    /// Lives in `H`.
    F,
    /// Lives in `Mstar`.
    G,
}

impl FixedPredicate {
    pub fn ambient(self) -> Scheme {
        match self {
            FixedPredicate::F => Scheme::H,
            FixedPredicate::G => Scheme::Mstar,
        }
    }
}

fn q_exp_in(m: &Monomial, base: Monomial, lo: i32, hi: i32) -> bool {
    let d = m.div(&base);
    d.exp(Var::Y) == 0 && d.exp(Var::T) == 0 && d.exp(Var::P) == 0 && (lo..=hi).contains(&d.exp(Var::Q))
}

/// Whether `path` lies in the fixed set of the predicate.
pub fn is_fixed(path: &BMPath, pred: FixedPredicate) -> Result<bool> {
    path.validate(pred.ambient())?;
    let heights = path.heights()?;
    let y2 = ytq(2, 0, 0);
    let yt = ytq(1, 1, 0);
    let one = Monomial::ONE;
    for (s, &h) in path.steps.iter().zip(&heights) {
        let h = h as i32;
        let ok = match (pred, s.kind) {
            (FixedPredicate::F, StepKind::L) => q_exp_in(&s.weight, yt, h + 1, 2 * h + 1),
            (FixedPredicate::F, StepKind::W) => q_exp_in(&s.weight, yt, h, 2 * h),
            (FixedPredicate::G, StepKind::L) => q_exp_in(&s.weight, yt, h, 2 * h),
            (FixedPredicate::G, StepKind::W) => q_exp_in(&s.weight, yt, h, 2 * h - 1),
            _ => true,
        };
        if !ok {
            return Ok(false);
        }
    }
    for (u, d) in matching_pairs(path) {
        let h = heights[u] as i32;
        let (wu, wd) = (path.steps[u].weight, path.steps[d].weight);
        let ok = match pred {
            FixedPredicate::F => {
                (q_exp_in(&wu, y2, 0, h + 1) && q_exp_in(&wd, one, 0, h))
                    || (q_exp_in(&wu, yt, h + 1, 2 * h + 2) && q_exp_in(&wd, yt, h + 1, 2 * h + 1))
            }
            FixedPredicate::G => {
                (q_exp_in(&wu, y2, 0, h) && q_exp_in(&wd, one, 0, h))
                    || (q_exp_in(&wu, yt, h, 2 * h) && q_exp_in(&wd, yt, h + 1, 2 * h + 1))
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::{builtin_spec, expand, Builtin};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn path(s: &str) -> BMPath {
        s.parse().unwrap()
    }

    #[test]
    fn menus() {
        assert_eq!(allowed_weights(Scheme::T, StepKind::L, 0), vec![ytq(0, 1, 1)]);
        assert!(allowed_weights(Scheme::Tstar, StepKind::W, 0).is_empty());
        assert!(allowed_weights(Scheme::M, StepKind::W, 0).is_empty());
        assert!(allowed_weights(Scheme::Mstar, StepKind::W, 0).is_empty());
        assert_eq!(allowed_weights(Scheme::M, StepKind::U, 0), vec![ytq(2, 0, 0), ytq(1, 1, 0)]);
        assert_eq!(allowed_weights(Scheme::Mstar, StepKind::L, 0), vec![ytq(1, 1, 0)]);
        for s in Scheme::ALL {
            assert!(allowed_weights(s, StepKind::D, 0).is_empty());
        }
    }

    #[test]
    fn small_sums() {
        assert_eq!(weight_sum(Scheme::Tstar, 2), p("1 + t^2 + q*t^2"));
        assert_eq!(weight_sum(Scheme::T, 1), p("t + q*t"));
        assert_eq!(weight_sum(Scheme::M, 0), Poly::one());
        assert_eq!(enumerate_paths(Scheme::M, 1).unwrap().count(), 2);
        for s in Scheme::ALL {
            assert_eq!(enumerate_paths(s, 0).unwrap().collect::<Vec<_>>(), vec![BMPath::empty()]);
        }
    }

    #[test]
    fn enumeration_agrees_with_recurrence() {
        for s in Scheme::ALL {
            for n in 0..=5 {
                let total: Poly = enumerate_paths(s, n).unwrap().map(|p| p.weight_poly()).sum();
                assert_eq!(total, weight_sum(s, n), "{s} n={n}");
            }
        }
    }

    #[test]
    fn enumerated_paths_validate_and_are_distinct() {
        for s in Scheme::ALL {
            let all: Vec<_> = enumerate_paths(s, 5).unwrap().collect();
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
            for p in &all {
                p.validate(s).unwrap();
            }
        }
    }

    #[test]
    fn flajolet_small() {
        let pairs = [(Scheme::M, Builtin::B), (Scheme::T, Builtin::R), (Scheme::Tstar, Builtin::Q)];
        for (s, b) in pairs {
            let cf = expand(&builtin_spec(b), 6);
            for n in 0..=6 {
                assert_eq!(weight_sum(s, n), cf.coeffs[n], "{s} n={n}");
            }
        }
    }

    #[test]
    fn matchings() {
        let one = |k: &str| path(&k.chars().map(|c| format!("{c}(1)")).collect::<Vec<_>>().join(" "));
        assert_eq!(matching_pairs(&one("UUDD")), vec![(0, 3), (1, 2)]);
        assert_eq!(matching_pairs(&one("ULDW")), vec![(0, 2)]);
        assert!(matching_pairs(&BMPath::empty()).is_empty());
    }

    #[test]
    fn fixed_sets() {
        assert!(is_fixed(&BMPath::empty(), FixedPredicate::F).unwrap());
        assert!(is_fixed(&BMPath::empty(), FixedPredicate::G).unwrap());
        let f2: Poly = enumerate_paths(Scheme::H, 2)
            .unwrap()
            .filter(|m| is_fixed(m, FixedPredicate::F).unwrap())
            .map(|m| m.weight_poly())
            .sum();
        assert_eq!(f2, p("y^2 + y^2*q + y^2*t^2 + 2*y^2*q*t^2 + 2*y^2*q^2*t^2 + y^2*q^3*t^2"));
        let g2: Poly = enumerate_paths(Scheme::Mstar, 2)
            .unwrap()
            .filter(|m| is_fixed(m, FixedPredicate::G).unwrap())
            .map(|m| m.weight_poly())
            .sum();
        assert_eq!(g2, p("y^2 + y^2*t^2 + y^2*q*t^2"));
        // outside the ambient scheme
        assert!(matches!(
            is_fixed(&path("W(1) L(1)"), FixedPredicate::G),
            Err(Error::SchemeMismatch { .. })
        ));
    }

    #[test]
    fn json_and_text_forms() {
        let m = path("U(y^2) L(y*t*q) D(q)");
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(
            js,
            r#"{"steps":[{"k":"U","e":[2,0,0]},{"k":"L","e":[1,1,1]},{"k":"D","e":[0,0,1]}]}"#
        );
        assert_eq!(serde_json::from_str::<BMPath>(&js).unwrap(), m);
        assert_eq!(path(&m.to_string()), m);
        assert!("U(1)".parse::<BMPath>().is_err());
        assert!("D(1) U(1)".parse::<BMPath>().is_err());
    }
}
