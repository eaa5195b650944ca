use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::SignedPerm;
use crate::error::{Error, Result};

/// Default largest size any enumeration will accept.
pub const DEFAULT_LIMIT: usize = 9;

/// The enumeration bound: `SNAKEPATH_MAX_N` if set and parseable, else 9.
pub fn enumeration_limit() -> usize {
    std::env::var("SNAKEPATH_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_LIMIT)
}

pub(crate) fn check_bound(n: usize) -> Result<()> {
    let limit = enumeration_limit();
    if n > limit {
        Err(Error::BoundExceeded { n, limit })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alternation {
    /// `σ_1 > σ_2 < σ_3 > …`
    DownFirst,
    /// `σ_1 < σ_2 > σ_3 < …`
    UpFirst,
}

/// Filters applied while building windows left to right.
///
/// Every class and snake flavor in the crate is one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Constraints {
    /// Allow negative entries.
    pub signed: bool,
    /// Forbid `σ_i = i`.
    pub no_fixed: bool,
    pub alternation: Option<Alternation>,
    /// Even number of negative entries.
    pub even_neg: bool,
    pub first_positive: bool,
    /// `(-1)^n σ_n < 0`.
    pub last_against_parity: bool,
    /// `σ_1 + σ_2 < 0` (vacuous for `n < 2`).
    pub first_pair_negative: bool,
}

impl Constraints {
    #[inline]
    fn accepts(&self, n: usize, prefix: &[i32], neg_so_far: usize, v: i32) -> bool {
        let i = prefix.len() + 1;
        if self.no_fixed && v == i as i32 {
            return false;
        }
        if i == 1 && self.first_positive && v < 0 {
            return false;
        }
        if i >= 2 {
            let prev = prefix[i - 2];
            match self.alternation {
                // position i is a "low" slot when i is even
                Some(Alternation::DownFirst) if i.is_multiple_of(2) != (prev > v) => return false,
                Some(Alternation::UpFirst) if i.is_multiple_of(2) != (prev < v) => return false,
                _ => {}
            }
            if i == 2 && self.first_pair_negative && prev + v >= 0 {
                return false;
            }
        }
        if i == n {
            let neg = neg_so_far + usize::from(v < 0);
            if self.even_neg && neg % 2 == 1 {
                return false;
            }
            if self.last_against_parity {
                let s = if n.is_multiple_of(2) { v } else { -v };
                if s >= 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the empty window belongs to the class at `n = 0`.
    fn accepts_empty(&self) -> bool {
        !self.last_against_parity
    }

    fn candidates(&self, n: usize) -> Vec<i32> {
        let n = n as i32;
        let mut c = Vec::with_capacity(2 * n as usize);
        if self.signed {
            c.extend(-n..=-1);
        }
        c.extend(1..=n);
        c
    }
}

/// The permutation classes the enumerator knows by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PermClass {
    /// Ordinary permutations.
    A,
    Bn,
    /// Even-signed permutations.
    Dn,
    /// Signed permutations without `σ_i = i`.
    BnStar,
    DnStar,
    /// Alternating: `σ_1 > σ_2 < σ_3 > …`.
    AltA,
    /// Reverse alternating: `σ_1 < σ_2 > σ_3 < …`.
    RAltA,
    /// Derangements.
    AStar,
}

impl PermClass {
    pub const ALL: [PermClass; 8] = [
        PermClass::A,
        PermClass::Bn,
        PermClass::Dn,
        PermClass::BnStar,
        PermClass::DnStar,
        PermClass::AltA,
        PermClass::RAltA,
        PermClass::AStar,
    ];

    pub fn constraints(self) -> Constraints {
        let mut c = Constraints::default();
        match self {
            PermClass::A => {}
            PermClass::Bn => c.signed = true,
            PermClass::Dn => {
                c.signed = true;
                c.even_neg = true;
            }
            PermClass::BnStar => {
                c.signed = true;
                c.no_fixed = true;
            }
            PermClass::DnStar => {
                c.signed = true;
                c.even_neg = true;
                c.no_fixed = true;
            }
            PermClass::AltA => c.alternation = Some(Alternation::DownFirst),
            PermClass::RAltA => c.alternation = Some(Alternation::UpFirst),
            PermClass::AStar => c.no_fixed = true,
        }
        c
    }

    pub fn is_signed(self) -> bool {
        self.constraints().signed
    }

    pub fn name(self) -> &'static str {
        match self {
            PermClass::A => "A",
            PermClass::Bn => "Bn",
            PermClass::Dn => "Dn",
            PermClass::BnStar => "BnStar",
            PermClass::DnStar => "DnStar",
            PermClass::AltA => "AltA",
            PermClass::RAltA => "RAltA",
            PermClass::AStar => "AStar",
        }
    }
}

impl fmt::Display for PermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PermClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" | "S" => PermClass::A,
            "Bn" | "B" => PermClass::Bn,
            "Dn" | "D" => PermClass::Dn,
            "BnStar" | "B*" => PermClass::BnStar,
            "DnStar" | "D*" => PermClass::DnStar,
            "AltA" | "Alt" => PermClass::AltA,
            "RAltA" | "RAlt" => PermClass::RAltA,
            "AStar" | "A*" | "S*" => PermClass::AStar,
            _ => return Err(Error::Parse(format!("unknown class `{s}`"))),
        })
    }
}

/// Lazy stream over a class, in lexicographic order of the window with
/// `-n < … < -1 < 1 < … < n`. Cloning restarts nothing; use
/// [`enumerate_class`] again for a fresh stream.
#[derive(Debug, Clone)]
pub struct ClassIter {
    n: usize,
    c: Constraints,
    cands: Vec<i32>,
    window: Vec<i32>,
    next_idx: Vec<usize>,
    used: Vec<bool>,
    neg: usize,
    base: usize,
    pending_leaf: bool,
    done: bool,
}

impl ClassIter {
    pub(crate) fn with_prefix(n: usize, c: Constraints, prefix: &[i32]) -> Self {
        let mut used = vec![false; n + 1];
        for v in prefix {
            used[v.unsigned_abs() as usize] = true;
        }
        let pending_leaf = prefix.len() == n && (n > 0 || c.accepts_empty());
        ClassIter {
            n,
            c,
            cands: c.candidates(n),
            window: prefix.to_vec(),
            next_idx: vec![0],
            used,
            neg: prefix.iter().filter(|&&v| v < 0).count(),
            base: prefix.len(),
            pending_leaf,
            done: false,
        }
    }
}

impl Iterator for ClassIter {
    type Item = SignedPerm;

    fn next(&mut self) -> Option<SignedPerm> {
        if self.done {
            return None;
        }
        'outer: loop {
            let d = self.window.len();
            if self.pending_leaf {
                self.pending_leaf = false;
                return Some(SignedPerm::from_window_unchecked(self.window.clone()));
            }
            if d < self.n {
                let top = self.next_idx.len() - 1;
                while self.next_idx[top] < self.cands.len() {
                    let v = self.cands[self.next_idx[top]];
                    self.next_idx[top] += 1;
                    if self.used[v.unsigned_abs() as usize]
                        || !self.c.accepts(self.n, &self.window, self.neg, v)
                    {
                        continue;
                    }
                    self.window.push(v);
                    self.used[v.unsigned_abs() as usize] = true;
                    self.neg += usize::from(v < 0);
                    self.next_idx.push(0);
                    if self.window.len() == self.n {
                        self.pending_leaf = true;
                    }
                    continue 'outer;
                }
            }
            if d == self.base {
                self.done = true;
                return None;
            }
            let v = self.window.pop().unwrap_or_default();
            self.used[v.unsigned_abs() as usize] = false;
            self.neg -= usize::from(v < 0);
            self.next_idx.pop();
        }
    }
}

/// Stream the members of `class` at size `n`.
pub fn enumerate_class(n: usize, class: PermClass) -> Result<ClassIter> {
    check_bound(n)?;
    Ok(ClassIter::with_prefix(n, class.constraints(), &[]))
}

/// Stream the windows satisfying arbitrary constraints.
pub fn enumerate_with(n: usize, c: Constraints) -> Result<ClassIter> {
    check_bound(n)?;
    Ok(ClassIter::with_prefix(n, c, &[]))
}

struct Walker<'a, F> {
    n: usize,
    c: &'a Constraints,
    cands: Vec<i32>,
    window: Vec<i32>,
    used: Vec<bool>,
    neg: usize,
    target: usize,
    visit: F,
}

impl<F: FnMut(&[i32])> Walker<'_, F> {
    fn run(&mut self) {
        if self.window.len() == self.target {
            (self.visit)(&self.window);
            return;
        }
        for k in 0..self.cands.len() {
            let v = self.cands[k];
            let a = v.unsigned_abs() as usize;
            if self.used[a] || !self.c.accepts(self.n, &self.window, self.neg, v) {
                continue;
            }
            self.used[a] = true;
            self.neg += usize::from(v < 0);
            self.window.push(v);
            self.run();
            self.window.pop();
            self.neg -= usize::from(v < 0);
            self.used[a] = false;
        }
    }
}

fn walk(n: usize, c: &Constraints, prefix: &[i32], target: usize, visit: impl FnMut(&[i32])) {
    if n == 0 {
        let mut visit = visit;
        if c.accepts_empty() {
            visit(&[]);
        }
        return;
    }
    let mut used = vec![false; n + 1];
    for v in prefix {
        used[v.unsigned_abs() as usize] = true;
    }
    let mut w = Walker {
        n,
        c,
        cands: c.candidates(n),
        window: prefix.to_vec(),
        used,
        neg: prefix.iter().filter(|&&v| v < 0).count(),
        target,
        visit,
    };
    w.run();
}

/// Call `visit` on every window satisfying `c`, in stream order. No bound
/// check; callers are expected to have done it.
pub fn for_each_in(n: usize, c: &Constraints, visit: impl FnMut(&[i32])) {
    walk(n, c, &[], n, visit);
}

/// Parallel fold over all windows satisfying `c`.
///
/// The space is split by fixed window prefixes; partial results are merged
/// in prefix order, so with a commutative merge the result does not depend
/// on scheduling.
pub fn par_fold<A, I, V, M>(n: usize, c: &Constraints, init: I, visit: V, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[i32]) + Sync,
    M: Fn(&mut A, A),
{
    check_bound(n)?;
    if n <= 5 {
        let mut acc = init();
        for_each_in(n, c, |w| visit(&mut acc, w));
        return Ok(acc);
    }
    let mut prefixes = Vec::new();
    walk(n, c, &[], 3, |p| prefixes.push(p.to_vec()));
    let parts: Vec<A> = prefixes
        .par_iter()
        .map(|p| {
            let mut acc = init();
            walk(n, c, p, n, |w| visit(&mut acc, w));
            acc
        })
        .collect();
    let mut acc = init();
    for p in parts {
        merge(&mut acc, p);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn windows(n: usize, class: PermClass) -> Vec<Vec<i32>> {
        enumerate_class(n, class)
            .unwrap()
            .map(|s| s.window().to_vec())
            .collect()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn small_classes() {
        assert_eq!(
            windows(2, PermClass::Dn),
            vec![vec![-2, -1], vec![-1, -2], vec![1, 2], vec![2, 1]]
        );
        assert_eq!(
            windows(2, PermClass::BnStar),
            vec![vec![-2, -1], vec![-2, 1], vec![-1, -2], vec![2, -1], vec![2, 1]]
        );
        assert_eq!(windows(4, PermClass::AStar).len(), 9);
        assert_eq!(windows(0, PermClass::Bn), vec![Vec::<i32>::new()]);
        assert_eq!(
            windows(4, PermClass::AltA),
            vec![
                vec![2, 1, 4, 3],
                vec![3, 1, 4, 2],
                vec![3, 2, 4, 1],
                vec![4, 1, 3, 2],
                vec![4, 2, 3, 1]
            ]
        );
    }

    #[test]
    fn class_sizes() {
        for n in 1..=6 {
            let b = windows(n, PermClass::Bn).len();
            assert_eq!(b, (1 << n) * factorial(n));
            assert_eq!(windows(n, PermClass::Dn).len(), b / 2);
            assert_eq!(windows(n, PermClass::A).len(), factorial(n));
        }
    }

    #[test]
    fn stream_is_sorted_and_matches_filter() {
        // oracle: filter all of B_n by the class predicate directly
        for n in 0..=5 {
            let all = windows(n, PermClass::Bn);
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(all, sorted);
            for class in PermClass::ALL {
                let expect: Vec<_> = all
                    .iter()
                    .filter(|w| {
                        let pos = w.iter().all(|&v| v > 0);
                        let fixed = w.iter().enumerate().any(|(i, &v)| v == i as i32 + 1);
                        let even = w.iter().filter(|&&v| v < 0).count() % 2 == 0;
                        let down = w.windows(2).enumerate().all(|(i, p)| (i % 2 == 0) == (p[0] > p[1]));
                        let up = w.windows(2).enumerate().all(|(i, p)| (i % 2 == 0) == (p[0] < p[1]));
                        match class {
                            PermClass::A => pos,
                            PermClass::Bn => true,
                            PermClass::Dn => even,
                            PermClass::BnStar => !fixed,
                            PermClass::DnStar => even && !fixed,
                            PermClass::AltA => pos && down,
                            PermClass::RAltA => pos && up,
                            PermClass::AStar => pos && !fixed,
                        }
                    })
                    .cloned()
                    .collect();
                assert_eq!(windows(n, class), expect, "{class} n={n}");
            }
        }
    }

    #[test]
    fn visitor_and_iterator_agree() {
        for class in PermClass::ALL {
            let mut seen = Vec::new();
            for_each_in(5, &class.constraints(), |w| seen.push(w.to_vec()));
            assert_eq!(seen, windows(5, class));
        }
    }

    #[test]
    fn parallel_fold_counts() {
        let c = PermClass::Bn.constraints();
        let total = par_fold(7, &c, || 0usize, |a, _| *a += 1, |a, b| *a += b).unwrap();
        assert_eq!(total, 128 * 5040);
    }

    #[test]
    fn bound() {
        assert!(matches!(
            enumerate_class(enumeration_limit() + 1, PermClass::Bn),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
