//! Permutations on `{0..n-1}` and finitely generated permutation groups.
//!
//! Points are 0-indexed internally and 1-indexed in all textual I/O, so the
//! cycle notation used in the literature can be pasted verbatim.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on explicit closure computations.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A bijection of `{0..n-1}`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Builds a permutation from its image table, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotBijective(images));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses a product of disjoint cycles over 1-indexed points.
    ///
    /// Grammar: `product := cycle*`, `cycle := '(' int (',')? int ... ')'`.
    /// Whitespace is ignored. `"(1324)"` is accepted only when every point is
    /// a single digit; multi-digit points need commas or whitespace, as in
    /// `"(1, 13, 2)"`. The empty product (or `"()"`) is the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        let mut chars = text.chars().peekable();
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            match chars.next() {
                None => break,
                Some('(') => {}
                Some(c) => return Err(Error::Parse(format!("expected '(', found {c:?}"))),
            }
            // Tokenize the cycle body. A run of digits separated from the
            // next by ',' or whitespace is one point; a bare digit run like
            // "1324" is split into single-digit points.
            let mut body = String::new();
            loop {
                match chars.next() {
                    Some(')') => break,
                    Some(c) if c.is_ascii_digit() || c == ',' || c.is_whitespace() => body.push(c),
                    Some(c) => return Err(Error::Parse(format!("unexpected {c:?} in cycle"))),
                    None => return Err(Error::Parse("unclosed '('".into())),
                }
            }
            let mut points: Vec<usize> = Vec::new();
            for chunk in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if chunk.is_empty() {
                    continue;
                }
                if body.contains(',') || body.contains(char::is_whitespace) {
                    points.push(chunk.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?);
                } else {
                    for d in chunk.chars() {
                        points.push(d.to_digit(10).unwrap() as usize);
                    }
                }
            }
            if points.is_empty() {
                continue; // "()" is the identity
            }
            for &p in &points {
                if p == 0 || p > n {
                    return Err(Error::PointOutOfRange { point: p, degree: n });
                }
                if moved[p - 1] {
                    return Err(Error::RepeatedPoint(p));
                }
                moved[p - 1] = true;
            }
            for k in 0..points.len() {
                images[points[k] - 1] = points[(k + 1) % points.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = (0..self.degree()).map(|i| self.apply(other.apply(i))).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Least `k >= 1` with `self^k = id` (lcm of the cycle lengths).
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut ord = 1usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Cycle decomposition over 1-indexed points, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A finitely generated subgroup of the symmetric group, with its element
/// set computed by explicit breadth-first closure.
///
/// Elements are kept in lexicographic order of their image tables so every
/// downstream enumeration is reproducible.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// BFS closure of the generators under composition, capped at `cap`.
    pub fn closure(generators: &[Permutation], cap: usize) -> Result<PermGroup> {
        let degree = match generators.first() {
            Some(g) => g.degree(),
            None => return Err(Error::InvalidGroup("no generators".into())),
        };
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = vec![Permutation::identity(degree)];
        seen.insert(queue[0].clone());
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            for g in generators {
                let next = current.compose(g)?;
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::ClosureCap { cap });
                    }
                    queue.push(next);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(PermGroup { degree, generators: generators.to_vec(), elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn exponent(&self) -> usize {
        self.elements.iter().fold(1, |acc, p| num_integer::lcm(acc, p.order()))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|p| p.order() == self.order())
    }

    /// Sorted multiset of element orders; a cheap isomorphism fingerprint.
    pub fn order_multiset(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.elements.iter().map(|p| p.order()).collect();
        orders.sort_unstable();
        orders
    }

    /// True iff the Sylow p-subgroups are cyclic.
    ///
    /// A cyclic Sylow p-subgroup is generated by an element whose order is
    /// the full p-part of the group order, and any such element generates a
    /// Sylow p-subgroup, so scanning element orders decides the question.
    /// Vacuously true when p does not divide the order.
    pub fn sylow_cyclic(&self, p: usize) -> bool {
        let p_part = p_part_of(self.order(), p);
        if p_part == 1 {
            return true;
        }
        self.elements.iter().any(|e| e.order() == p_part)
    }

    /// Cayley table over the canonical element ordering; identity relabeled
    /// to index 0.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let id_pos = self
            .elements
            .binary_search(&Permutation::identity(self.degree))
            .expect("closure contains the identity");
        // swap identity to slot 0, keep everything else in canonical order
        let mut labels: Vec<usize> = (0..n).collect();
        labels.swap(0, id_pos);
        let index_of = |p: &Permutation| -> usize {
            let raw = self.elements.binary_search(p).expect("closed under composition");
            labels.iter().position(|&l| l == raw).unwrap()
        };
        let mut table = vec![vec![0; n]; n];
        for (i, &li) in labels.iter().enumerate() {
            for (j, &lj) in labels.iter().enumerate() {
                let prod = self.elements[li].compose(&self.elements[lj]).unwrap();
                table[i][j] = index_of(&prod);
            }
        }
        table
    }
}

/// Largest power of `p` dividing `n`.
pub fn p_part_of(n: usize, p: usize) -> usize {
    let mut part = 1;
    let mut m = n;
    while m.is_multiple_of(p) {
        part *= p;
        m /= p;
    }
    part
}

/// Prime divisors of `n`, ascending.
pub fn prime_divisors(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}
