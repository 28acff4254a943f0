//! Finite groups given by explicit Cayley tables.
//!
//! Elements are `0..n-1` with `0` the identity. Construction validates the
//! full set of group axioms, so downstream code can assume a genuine group.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, the identity at index 0, inverses and
    /// associativity (cubic, so only suitable for small orders).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            if row.iter().any(|&e| e >= n) {
                return Err(Error::InvalidGroup("entry out of range".into()));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::InvalidGroup("index 0 is not an identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            // rows and columns must be bijections (Latin square)
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for b in 0..n {
                if seen_row[table[a][b]] || seen_col[table[b][a]] {
                    return Err(Error::InvalidGroup("row or column is not a bijection".into()));
                }
                seen_row[table[a][b]] = true;
                seen_col[table[b][a]] = true;
                if table[a][b] == 0 {
                    inv[a] = b;
                }
            }
        }
        if inv.contains(&usize::MAX) {
            return Err(Error::InvalidGroup("missing inverse".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, inv })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut acc = a;
        while acc != 0 {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_multiset(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        orders.sort_unstable();
        orders
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.mul(a, b), self.inv(a)), self.inv(b))
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a))).collect()
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head];
            head += 1;
            for &g in gens {
                for next in [self.mul(current, g), self.mul(current, self.inv(g))] {
                    if !member[next] {
                        member[next] = true;
                        queue.push(next);
                    }
                }
            }
        }
        (0..self.order()).filter(|&a| member[a]).collect()
    }

    /// Is the sorted element list a subgroup invariant under conjugation?
    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let inside = |x: usize| subgroup.binary_search(&x).is_ok();
        subgroup.iter().all(|&h| {
            (0..self.order()).all(|g| inside(self.mul(self.mul(g, h), self.inv(g))))
        })
    }

    /// Upper central series `1 = Z_0 <= Z_1 <= ...` until it stabilizes.
    pub fn upper_central_series(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut series = vec![vec![0usize]];
        loop {
            let last = series.last().unwrap().clone();
            let inside = |x: usize| last.binary_search(&x).is_ok();
            let next: Vec<usize> =
                (0..n).filter(|&x| (0..n).all(|g| inside(self.commutator(x, g)))).collect();
            if next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.upper_central_series().last().unwrap().len() == self.order()
    }

    /// Elements whose order is a power of `p`.
    pub fn elements_of_p_power_order(&self, p: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| {
                let mut k = self.element_order(a);
                while k.is_multiple_of(p) {
                    k /= p;
                }
                k == 1
            })
            .collect()
    }

    /// Elements of order coprime to `p`.
    pub fn p_prime_elements(&self, p: usize) -> Vec<usize> {
        (0..self.order()).filter(|&a| !self.element_order(a).is_multiple_of(p)).collect()
    }

    /// A group is p-nilpotent exactly when its p'-elements form a (then
    /// automatically normal) subgroup, the normal p-complement.
    pub fn is_p_nilpotent(&self, p: usize) -> bool {
        let p_prime = self.p_prime_elements(p);
        self.subgroup_closure(&p_prime) == p_prime
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    /// All Sylow p-subgroups, by saturating p-subgroups with p-elements.
    ///
    /// Every p-subgroup sits in a chain where each term adds one more
    /// p-element, so growing the closure set until it stabilizes finds every
    /// Sylow subgroup. Desk-scale only: the order is capped at 24.
    pub fn sylow_subgroups_bruteforce(&self, p: usize) -> Result<Vec<Vec<usize>>> {
        if self.order() > 24 {
            return Err(Error::SizeOutOfRange(self.order(), "<= 24".into()));
        }
        let p_part = crate::perm::p_part_of(self.order(), p);
        let p_elements = self.elements_of_p_power_order(p);
        let mut subgroups: Vec<Vec<usize>> = vec![vec![0]];
        let mut frontier = subgroups.clone();
        while let Some(h) = frontier.pop() {
            for &b in &p_elements {
                if h.binary_search(&b).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(b);
                let bigger = self.subgroup_closure(&gens);
                let is_p_group = {
                    let mut k = bigger.len();
                    while k.is_multiple_of(p) {
                        k /= p;
                    }
                    k == 1
                };
                if is_p_group && !subgroups.contains(&bigger) {
                    subgroups.push(bigger.clone());
                    frontier.push(bigger);
                }
            }
        }
        Ok(subgroups.into_iter().filter(|h| h.len() == p_part).collect())
    }

    /// True iff some (equivalently, the unique) Sylow p-subgroup is both
    /// normal and abelian.
    pub fn has_abelian_normal_sylow(&self, p: usize) -> Result<bool> {
        let sylows = self.sylow_subgroups_bruteforce(p)?;
        Ok(sylows.iter().any(|h| {
            self.is_normal(h)
                && h.iter().all(|&a| h.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
        }))
    }

    /// Backtracking isomorphism test; intended for small orders.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        if self.order() != other.order() {
            return false;
        }
        if self.order_multiset() != other.order_multiset() {
            return false;
        }
        let n = self.order();
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        f[0] = 0;
        used[0] = true;
        self.search_iso(other, &mut f, &mut used, 1)
    }

    fn search_iso(
        &self,
        other: &FiniteGroup,
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        let n = self.order();
        if depth == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || self.element_order(depth) != other.element_order(cand) {
                continue;
            }
            f[depth] = cand;
            used[cand] = true;
            if self.iso_consistent(other, f, depth) && self.search_iso(other, f, used, depth + 1) {
                return true;
            }
            used[cand] = false;
            f[depth] = usize::MAX;
        }
        false
    }

    fn iso_consistent(&self, other: &FiniteGroup, f: &[usize], depth: usize) -> bool {
        for x in 0..=depth {
            for y in 0..=depth {
                if f[x] == usize::MAX || f[y] == usize::MAX {
                    continue;
                }
                let prod = self.mul(x, y);
                if f[prod] != usize::MAX && other.mul(f[x], f[y]) != f[prod] {
                    return false;
                }
            }
        }
        true
    }

    // --- constructors for the standard small groups ---

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table).expect("cyclic tables are groups")
    }

    /// Dihedral group of order `2n`: element `i < n` is the rotation `r^i`,
    /// element `n + i` the reflection `r^i s`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        let order = 2 * n;
        let mut table = vec![vec![0usize; order]; order];
        for a in 0..order {
            for b in 0..order {
                let (i, fa) = if a < n { (a, false) } else { (a - n, true) };
                let (j, fb) = if b < n { (b, false) } else { (b - n, true) };
                // r^i s r^j = r^{i-j} s
                let (k, fk) = if fa { ((n + i - j) % n, !fb) } else { ((i + j) % n, fb) };
                table[a][b] = if fk { n + k } else { k };
            }
        }
        FiniteGroup::from_table(table).expect("dihedral tables are groups")
    }

    /// Quaternion group of order 8: `1, i, -1, -i, j, k, -j, -k`, encoded so
    /// that `i = 1`, `j = 4`.
    pub fn quaternion8() -> FiniteGroup {
        // represent q = i^a j^b with a in 0..4, b in 0..2, index = a + 4b,
        // using j i = i^3 j and j^2 = i^2
        let idx = |a: usize, b: usize| (a % 4) + 4 * (b % 2);
        let mut table = vec![vec![0usize; 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                let (a1, b1) = (x % 4, x / 4);
                let (a2, b2) = (y % 4, y / 4);
                // (i^a1 j^b1)(i^a2 j^b2): move i^a2 past j^b1
                let a2_moved = if b1 == 1 { (4 - a2) % 4 } else { a2 };
                let mut a = (a1 + a2_moved) % 4;
                let b = b1 + b2;
                if b >= 2 {
                    a = (a + 2) % 4; // j^2 = i^2
                }
                table[x][y] = idx(a, b % 2);
            }
        }
        FiniteGroup::from_table(table).expect("quaternion table is a group")
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (g.order(), h.order());
        let idx = |a: usize, b: usize| a * m + b;
        let mut table = vec![vec![0usize; n * m]; n * m];
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        table[idx(a1, b1)][idx(a2, b2)] = idx(g.mul(a1, a2), h.mul(b1, b2));
                    }
                }
            }
        }
        FiniteGroup::from_table(table).expect("product of groups is a group")
    }
}
