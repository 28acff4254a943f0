//! Finite non-degenerate set-theoretic solutions of the Yang-Baxter
//! equation: verification, involutivity, retraction, multipermutation
//! level, isomorphism and brute-force enumeration of small solutions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A solution `(X, r)` on `X = {0..n-1}`, stored by its sigma and tau
/// tables: `r(x, y) = (sigma[x](y), tau[y](x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    n: usize,
    sigma: Vec<Permutation>,
    tau: Vec<Permutation>,
}

/// Outcome of the exhaustive checks behind [`Solution::verify`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VerifyReport {
    pub nondegenerate: bool,
    pub bijective_r: bool,
    pub braid: bool,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.nondegenerate && self.bijective_r && self.braid
    }
}

/// Serialized form: 0-indexed image tables.
#[derive(Serialize, Deserialize)]
struct SolutionJson {
    n: usize,
    sigma: Vec<Vec<usize>>,
    tau: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
}

impl Solution {
    pub fn new(sigma: Vec<Permutation>, tau: Vec<Permutation>) -> Result<Solution> {
        let n = sigma.len();
        if tau.len() != n {
            return Err(Error::InvalidSolution("sigma and tau table sizes differ".into()));
        }
        for p in sigma.iter().chain(&tau) {
            if p.degree() != n {
                return Err(Error::InvalidSolution("permutation degree differs from n".into()));
            }
        }
        Ok(Solution { n, sigma, tau })
    }

    /// Builds from raw image tables, rejecting non-bijective rows.
    pub fn from_tables(sigma: Vec<Vec<usize>>, tau: Vec<Vec<usize>>) -> Result<Solution> {
        let sigma = sigma.into_iter().map(Permutation::from_images).collect::<Result<_>>()?;
        let tau = tau.into_iter().map(Permutation::from_images).collect::<Result<_>>()?;
        Solution::new(sigma, tau)
    }

    /// Builds from per-point cycle notation (1-indexed).
    pub fn from_cycles(n: usize, sigma: &[&str], tau: &[&str]) -> Result<Solution> {
        let sigma = sigma.iter().map(|s| Permutation::parse_cycles(s, n)).collect::<Result<_>>()?;
        let tau = tau.iter().map(|s| Permutation::parse_cycles(s, n)).collect::<Result<_>>()?;
        Solution::new(sigma, tau)
    }

    /// Square-free form `r(x,y) = (phi_x(y), phi_y(x))`.
    pub fn square_free_from_cycles(n: usize, phi: &[&str]) -> Result<Solution> {
        Solution::from_cycles(n, phi, phi)
    }

    /// Parses the sidecar text format:
    ///
    /// ```text
    /// # optional comments
    /// n 4
    /// sigma 1 (34)
    /// tau 1 (24)
    /// ...
    /// ```
    ///
    /// Points are 1-indexed; rows not listed default to the identity.
    pub fn parse_text(text: &str) -> Result<Solution> {
        let mut n: Option<usize> = None;
        let mut sigma: Vec<Option<Permutation>> = Vec::new();
        let mut tau: Vec<Option<Permutation>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.splitn(3, char::is_whitespace);
            let key = parts.next().unwrap();
            match key {
                "n" => {
                    let value = parts.next().ok_or_else(|| Error::Parse("missing n value".into()))?;
                    let size = value.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?;
                    n = Some(size);
                    sigma = vec![None; size];
                    tau = vec![None; size];
                }
                "sigma" | "tau" => {
                    let size = n.ok_or_else(|| Error::Parse("n must come first".into()))?;
                    let idx: usize = parts
                        .next()
                        .ok_or_else(|| Error::Parse(format!("missing index after {key}")))?
                        .parse()
                        .map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
                    if idx == 0 || idx > size {
                        return Err(Error::PointOutOfRange { point: idx, degree: size });
                    }
                    let cycles = parts.next().unwrap_or("");
                    let perm = Permutation::parse_cycles(cycles, size)?;
                    let slot = if key == "sigma" { &mut sigma[idx - 1] } else { &mut tau[idx - 1] };
                    if slot.is_some() {
                        return Err(Error::Parse(format!("duplicate {key} {idx}")));
                    }
                    *slot = Some(perm);
                }
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let size = n.ok_or_else(|| Error::Parse("missing n".into()))?;
        let fill = |rows: Vec<Option<Permutation>>| -> Vec<Permutation> {
            rows.into_iter().map(|r| r.unwrap_or_else(|| Permutation::identity(size))).collect()
        };
        Solution::new(fill(sigma), fill(tau))
    }

    pub fn from_json(text: &str) -> Result<Solution> {
        let raw: SolutionJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.sigma.len() != raw.n || raw.tau.len() != raw.n {
            return Err(Error::InvalidSolution("table sizes differ from n".into()));
        }
        Solution::from_tables(raw.sigma, raw.tau)
    }

    pub fn to_json(&self) -> String {
        let raw = SolutionJson {
            n: self.n,
            sigma: self.sigma.iter().map(|p| p.images().to_vec()).collect(),
            tau: self.tau.iter().map(|p| p.images().to_vec()).collect(),
            name: None,
            description: None,
        };
        serde_json::to_string(&raw).expect("serialization cannot fail")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn sigma(&self, x: usize) -> &Permutation {
        &self.sigma[x]
    }

    pub fn tau(&self, y: usize) -> &Permutation {
        &self.tau[y]
    }

    /// `r(x, y) = (sigma_x(y), tau_y(x))`.
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x].apply(y), self.tau[y].apply(x))
    }

    /// Exhaustively checks non-degeneracy, bijectivity of `r` on `X x X`
    /// and the braid identity on all `n^3` triples.
    pub fn verify(&self) -> VerifyReport {
        let nondegenerate = true; // enforced by the Permutation type
        let mut seen = vec![false; self.n * self.n];
        let mut bijective_r = true;
        for x in 0..self.n {
            for y in 0..self.n {
                let (u, v) = self.r(x, y);
                let slot = u * self.n + v;
                if seen[slot] {
                    bijective_r = false;
                }
                seen[slot] = true;
            }
        }
        let mut braid = true;
        'outer: for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if self.braid_lhs(x, y, z) != self.braid_rhs(x, y, z) {
                        braid = false;
                        break 'outer;
                    }
                }
            }
        }
        VerifyReport { nondegenerate, bijective_r, braid }
    }

    /// `(r x id)(id x r)(r x id)` applied to `(x, y, z)`.
    fn braid_lhs(&self, x: usize, y: usize, z: usize) -> (usize, usize, usize) {
        let (a, b) = self.r(x, y);
        let (c, d) = self.r(b, z);
        let (e, f) = self.r(a, c);
        (e, f, d)
    }

    /// `(id x r)(r x id)(id x r)` applied to `(x, y, z)`.
    fn braid_rhs(&self, x: usize, y: usize, z: usize) -> (usize, usize, usize) {
        let (a, b) = self.r(y, z);
        let (c, d) = self.r(x, a);
        let (e, f) = self.r(d, b);
        (c, e, f)
    }

    pub fn is_involutive(&self) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                let (u, v) = self.r(x, y);
                if self.r(u, v) != (x, y) {
                    return false;
                }
            }
        }
        true
    }

    /// Retraction: the induced solution on classes of `x ~ y <=> sigma_x = sigma_y`.
    ///
    /// Also returns the point -> class map. Classes are numbered by their
    /// smallest member, so the output is deterministic.
    pub fn retract(&self) -> Result<(Solution, Vec<usize>)> {
        if !self.is_involutive() {
            return Err(Error::NotInvolutive);
        }
        let mut class_of = vec![usize::MAX; self.n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.n {
            match reps.iter().position(|&r| self.sigma[r] == self.sigma[x]) {
                Some(c) => class_of[x] = c,
                None => {
                    class_of[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        let m = reps.len();
        let mut sigma_img = vec![vec![usize::MAX; m]; m];
        let mut tau_img = vec![vec![usize::MAX; m]; m];
        // induced maps, with an explicit well-definedness check over every
        // choice of representatives
        for x in 0..self.n {
            for y in 0..self.n {
                let (cx, cy) = (class_of[x], class_of[y]);
                let s = class_of[self.sigma[x].apply(y)];
                let t = class_of[self.tau[y].apply(x)];
                if sigma_img[cx][cy] == usize::MAX {
                    sigma_img[cx][cy] = s;
                } else if sigma_img[cx][cy] != s {
                    return Err(Error::Internal("induced sigma is not well defined".into()));
                }
                if tau_img[cy][cx] == usize::MAX {
                    tau_img[cy][cx] = t;
                } else if tau_img[cy][cx] != t {
                    return Err(Error::Internal("induced tau is not well defined".into()));
                }
            }
        }
        let retracted = Solution::from_tables(sigma_img, tau_img)?;
        if !retracted.verify().all_ok() {
            return Err(Error::Internal("retract of a solution failed to verify".into()));
        }
        Ok((retracted, class_of))
    }

    /// Multipermutation level: least `k` with `|Ret^k(X, r)| = 1`, or `None`
    /// when the retraction stabilizes above one element.
    ///
    /// The singleton solution has level 0 by convention.
    pub fn mp_level(&self) -> Result<Option<usize>> {
        if !self.is_involutive() {
            return Err(Error::NotInvolutive);
        }
        let mut current = self.clone();
        let mut level = 0usize;
        loop {
            if current.size() == 1 {
                return Ok(Some(level));
            }
            let (next, _) = current.retract()?;
            if next.size() == current.size() {
                return Ok(None);
            }
            current = next;
            level += 1;
        }
    }

    /// The group generated by the sigma permutations.
    pub fn permutation_group(&self, cap: usize) -> Result<PermGroup> {
        PermGroup::closure(&self.sigma, cap)
    }

    /// Searches for a bijection `f` with `f sigma_x f^-1 = sigma_{f(x)}` and
    /// `f tau_x f^-1 = tau_{f(x)}` for all `x`. Brute force over bijections
    /// with pruning by per-point (order sigma_x, order tau_x) fingerprints.
    pub fn is_isomorphic(&self, other: &Solution) -> Result<Option<Permutation>> {
        if self.n > 10 || other.n > 10 {
            return Err(Error::SizeOutOfRange(self.n.max(other.n), "<= 10".into()));
        }
        if self.n != other.n {
            return Ok(None);
        }
        let fp = |s: &Solution, x: usize| (s.sigma[x].order(), s.tau[x].order());
        let mut assignment = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        if self.search_iso(other, &fp, &mut assignment, &mut used, 0) {
            return Ok(Some(Permutation::from_images(assignment)?));
        }
        Ok(None)
    }

    fn search_iso(
        &self,
        other: &Solution,
        fp: &dyn Fn(&Solution, usize) -> (usize, usize),
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        if depth == self.n {
            return true;
        }
        for candidate in 0..self.n {
            if used[candidate] || fp(self, depth) != fp(other, candidate) {
                continue;
            }
            f[depth] = candidate;
            used[candidate] = true;
            if self.iso_consistent(other, f, depth) && self.search_iso(other, fp, f, used, depth + 1)
            {
                return true;
            }
            used[candidate] = false;
            f[depth] = usize::MAX;
        }
        false
    }

    /// Checks every conjugation constraint whose points are all assigned.
    fn iso_consistent(&self, other: &Solution, f: &[usize], depth: usize) -> bool {
        for x in 0..=depth {
            for y in 0..=depth {
                let sx = self.sigma[x].apply(y);
                if f[sx] != usize::MAX && other.sigma[f[x]].apply(f[y]) != f[sx] {
                    return false;
                }
                let tx = self.tau[x].apply(y);
                if f[tx] != usize::MAX && other.tau[f[x]].apply(f[y]) != f[tx] {
                    return false;
                }
            }
        }
        true
    }
}

/// Exhaustively enumerates the involutive solutions of size `n <= 4`, up to
/// isomorphism.
///
/// Search space: all assignments `x -> sigma_x` in `S_n^n`. For an
/// involutive non-degenerate solution tau is forced by
/// `tau_y(x) = sigma_{sigma_x(y)}^{-1}(x)`, which kills the tau search
/// dimension; every accepted candidate is still re-verified in full, so a
/// mistake in the shortcut cannot produce false positives.
pub fn enumerate(n: usize) -> Result<Vec<Solution>> {
    if n == 0 || n > 4 {
        return Err(Error::SizeOutOfRange(n, "1..=4".into()));
    }
    let all_perms: Vec<Permutation> = all_permutations(n);
    let k = all_perms.len();
    let total = k.pow(n as u32);
    let mut candidates: Vec<Solution> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut idx = code;
            let mut sigma = Vec::with_capacity(n);
            for _ in 0..n {
                sigma.push(all_perms[idx % k].clone());
                idx /= k;
            }
            solution_from_sigma(&sigma)
        })
        .collect();
    candidates.sort();
    let mut reps: Vec<Solution> = Vec::new();
    for cand in candidates {
        let mut fresh = true;
        for rep in &reps {
            if rep.is_isomorphic(&cand)?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(cand);
        }
    }
    Ok(reps)
}

/// Completes a sigma assignment to an involutive solution, if possible.
fn solution_from_sigma(sigma: &[Permutation]) -> Option<Solution> {
    let n = sigma.len();
    let mut tau_img = vec![vec![0usize; n]; n];
    for y in 0..n {
        for x in 0..n {
            tau_img[y][x] = sigma[sigma[x].apply(y)].inverse().apply(x);
        }
    }
    let tau: Vec<Permutation> = tau_img
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<_>>()
        .ok()?;
    let s = Solution::new(sigma.to_vec(), tau).ok()?;
    if s.verify().all_ok() && s.is_involutive() {
        Some(s)
    } else {
        None
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    heap_permute(&mut images, n, &mut out);
    out.sort();
    out
}

fn heap_permute(images: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == 1 {
        out.push(Permutation::from_images(images.clone()).unwrap());
        return;
    }
    for i in 0..k {
        heap_permute(images, k - 1, out);
        if k.is_multiple_of(2) {
            images.swap(i, k - 1);
        } else {
            images.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn lyubashenko_verifies() {
        let s = fixtures::lyubashenko_2();
        assert!(s.verify().all_ok());
        assert!(s.is_involutive());
    }

    #[test]
    fn trivial_flip_properties() {
        let s = fixtures::trivial_flip(3);
        assert!(s.verify().all_ok());
        assert!(s.is_involutive());
        let (ret, classes) = s.retract().unwrap();
        assert_eq!(ret.size(), 1);
        assert_eq!(classes, vec![0, 0, 0]);
        assert_eq!(s.mp_level().unwrap(), Some(1));
        assert_eq!(s.permutation_group(100).unwrap().order(), 1);
    }

    #[test]
    fn singleton_level_zero() {
        let s = fixtures::trivial_flip(1);
        assert_eq!(s.mp_level().unwrap(), Some(0));
    }

    #[test]
    fn non_bijective_rejected() {
        assert!(Solution::from_tables(
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![0, 1], vec![0, 1]]
        )
        .is_err());
    }

    #[test]
    fn size4_13_is_irretractable_fixed_point() {
        let s = fixtures::solution_4_13();
        assert!(s.verify().all_ok());
        assert!(s.is_involutive());
        let (ret, _) = s.retract().unwrap();
        assert_eq!(ret.size(), 4);
        assert_eq!(s.mp_level().unwrap(), None);
    }

    #[test]
    fn size4_19_is_irretractable_fixed_point() {
        let s = fixtures::solution_4_19();
        assert!(s.verify().all_ok());
        assert!(s.is_involutive());
        let (ret, _) = s.retract().unwrap();
        assert_eq!(ret.size(), 4);
    }

    #[test]
    fn the_two_size4_exceptions_are_not_isomorphic() {
        let a = fixtures::solution_4_13();
        let b = fixtures::solution_4_19();
        assert!(a.is_isomorphic(&a).unwrap().is_some());
        assert!(a.is_isomorphic(&b).unwrap().is_none());
    }

    #[test]
    fn retract_of_8_15579_matches_4_13() {
        let s = fixtures::solution_8_15579();
        let (ret, _) = s.retract().unwrap();
        assert_eq!(ret.size(), 4);
        assert!(ret.is_isomorphic(&fixtures::solution_4_13()).unwrap().is_some());
    }

    #[test]
    fn mp_example_level_and_group() {
        let s = fixtures::mp_example_c2c2();
        assert!(s.verify().all_ok());
        assert!(s.is_involutive());
        let level = s.mp_level().unwrap();
        assert!(matches!(level, Some(k) if k >= 1));
        // independent single-step oracle: one retraction collapses the two
        // id-fibre points, leaving 3 classes
        let (ret, _) = s.retract().unwrap();
        assert_eq!(ret.size(), 3);
        let g = s.permutation_group(100).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 2);
        assert!(!g.sylow_cyclic(2));
    }

    #[test]
    fn enumerate_small_counts() {
        assert_eq!(enumerate(1).unwrap().len(), 1);
        assert_eq!(enumerate(2).unwrap().len(), 2);
        assert_eq!(enumerate(3).unwrap().len(), 5);
    }

    #[test]
    fn involutive_tau_identity_holds() {
        // derived closure of r^2 = id: tau_y(x) = sigma^{-1}_{sigma_x(y)}(x)
        for s in [fixtures::solution_4_13(), fixtures::solution_4_19(), fixtures::mp_example_c2c2()]
        {
            for x in 0..s.size() {
                for y in 0..s.size() {
                    let expected = s.sigma(s.sigma(x).apply(y)).inverse().apply(x);
                    assert_eq!(s.tau(y).apply(x), expected);
                }
            }
        }
    }

    #[test]
    fn text_and_json_roundtrip() {
        let s = fixtures::solution_4_13();
        let json = s.to_json();
        assert_eq!(Solution::from_json(&json).unwrap(), s);
        let text = "n 4\nsigma 1 (34)\nsigma 2 (1324)\nsigma 3 (1423)\nsigma 4 (12)\n\
                    tau 1 (24)\ntau 2 (1432)\ntau 3 (1234)\ntau 4 (13)\n";
        assert_eq!(Solution::parse_text(text).unwrap(), s);
    }

    #[test]
    fn brace_derived_solution_not_involutive() {
        use crate::braces::examples;
        let b = examples::c6_nonnilpotent_type();
        let s = b.to_solution();
        assert!(s.verify().all_ok());
        assert!(!s.is_involutive());
    }
}
