//! Finite skew left braces `(A, +, o)` on `{0..n-1}` with `0` the common
//! identity, together with the lambda action, the star product, socle
//! series, left/right series and the p-nilpotency tests.

use crate::braces::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::solutions::Solution;

/// Per-axiom outcome of checking a pair of tables; used by the CLI so a
/// failure can name the broken axiom.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BraceCheck {
    pub additive_group: bool,
    pub multiplicative_group: bool,
    pub compatible: bool,
}

impl BraceCheck {
    pub fn all_ok(&self) -> bool {
        self.additive_group && self.multiplicative_group && self.compatible
    }
}

/// Checks both group axioms and the compatibility law
/// `a o (b + c) = (a o b) - a + (a o c)` without bailing on first failure.
pub fn check_tables(add: &[Vec<usize>], circ: &[Vec<usize>]) -> BraceCheck {
    let add_group = FiniteGroup::from_table(add.to_vec());
    let circ_group = FiniteGroup::from_table(circ.to_vec());
    let compatible = match (&add_group, &circ_group) {
        (Ok(a), Ok(c)) if a.order() == c.order() => compatibility_holds(a, c),
        _ => false,
    };
    BraceCheck {
        additive_group: add_group.is_ok(),
        multiplicative_group: circ_group.is_ok(),
        compatible,
    }
}

fn compatibility_holds(add: &FiniteGroup, circ: &FiniteGroup) -> bool {
    let n = add.order();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                circ.mul(a, add.mul(b, c))
                    == add.mul(add.mul(circ.mul(a, b), add.inv(a)), circ.mul(a, c))
            })
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewBrace {
    add: FiniteGroup,
    circ: FiniteGroup,
}

impl SkewBrace {
    pub fn new(add: FiniteGroup, circ: FiniteGroup) -> Result<SkewBrace> {
        if add.order() != circ.order() {
            return Err(Error::InvalidBrace("table sizes differ".into()));
        }
        if !compatibility_holds(&add, &circ) {
            return Err(Error::InvalidBrace("compatibility law fails".into()));
        }
        Ok(SkewBrace { add, circ })
    }

    pub fn from_tables(add: Vec<Vec<usize>>, circ: Vec<Vec<usize>>) -> Result<SkewBrace> {
        SkewBrace::new(FiniteGroup::from_table(add)?, FiniteGroup::from_table(circ)?)
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn additive(&self) -> &FiniteGroup {
        &self.add
    }

    pub fn multiplicative(&self) -> &FiniteGroup {
        &self.circ
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.mul(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.add.inv(a)
    }

    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.circ.mul(a, b)
    }

    pub fn circ_inv(&self, a: usize) -> usize {
        self.circ.inv(a)
    }

    /// `lambda_a(b) = -a + a o b`; an automorphism of `(A, +)` for each `a`.
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.add.mul(self.add.inv(a), self.circ.mul(a, b))
    }

    /// `a * b = lambda_a(b) - b`.
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.add.mul(self.lambda(a, b), self.add.inv(b))
    }

    /// `[a, b]_+ = a + b - a - b`.
    pub fn add_commutator(&self, a: usize, b: usize) -> usize {
        self.add.commutator(a, b)
    }

    pub fn is_abelian_type(&self) -> bool {
        self.add.is_abelian()
    }

    pub fn is_nilpotent_type(&self) -> bool {
        self.add.is_nilpotent()
    }

    pub fn is_trivial(&self) -> bool {
        self.add.table() == self.circ.table()
    }

    /// Additive subgroup generated by `seed`, sorted.
    pub fn additive_closure(&self, seed: &[usize]) -> Vec<usize> {
        self.add.subgroup_closure(seed)
    }

    /// `<X * Y>_+`, the additive span of all pairwise star products.
    pub fn star_span(&self, xs: &[usize], ys: &[usize]) -> Vec<usize> {
        let products: Vec<usize> =
            xs.iter().flat_map(|&x| ys.iter().map(move |&y| self.star(x, y))).collect();
        self.additive_closure(&products)
    }

    /// `Soc(A) = ker(lambda) ∩ Z(A, +)`.
    pub fn socle(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&a| {
                (0..n).all(|b| self.lambda(a, b) == b && self.add(a, b) == self.add(b, a))
            })
            .collect()
    }

    /// Ascending socle series `0 = Soc_0 <= Soc_1 <= ...`, where
    /// `Soc_{k+1} = {x : x * a and [x, a]_+ lie in Soc_k for all a}`,
    /// continued until it stabilizes.
    pub fn socle_series(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut series = vec![vec![0usize]];
        loop {
            let last = series.last().unwrap().clone();
            let inside = |x: usize| last.binary_search(&x).is_ok();
            let next: Vec<usize> = (0..n)
                .filter(|&x| {
                    (0..n).all(|a| inside(self.star(x, a)) && inside(self.add_commutator(x, a)))
                })
                .collect();
            if next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// Right series `A = A^(1) >= A^(2) >= ...` with
    /// `A^(k+1) = <A^(k) * A>_+`, until it stabilizes.
    pub fn right_series(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.order()).collect();
        let mut series = vec![all.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.star_span(last, &all);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_right_nilpotent(&self) -> bool {
        self.right_series().last().unwrap() == &[0]
    }

    /// Left series `A = A^1 >= A^2 >= ...` with `A^{k+1} = <A * A^k>_+`.
    pub fn left_series(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.order()).collect();
        let mut series = vec![all.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.star_span(&all, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_left_nilpotent(&self) -> bool {
        self.left_series().last().unwrap() == &[0]
    }

    /// `R_0 = <X>_+`, `R_{k+1} = <R_k * Y ∪ [R_k, Y]_+>_+`, until stable.
    pub fn r_series(&self, xs: &[usize], ys: &[usize]) -> Vec<Vec<usize>> {
        let mut series = vec![self.additive_closure(xs)];
        loop {
            let last = series.last().unwrap();
            let mut gens: Vec<usize> = Vec::new();
            for &a in last {
                for &b in ys {
                    gens.push(self.star(a, b));
                    gens.push(self.add_commutator(a, b));
                }
            }
            let next = self.additive_closure(&gens);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// `L_0 = <Y>_+`, `L_{k+1} = <X * L_k>_+`, until stable.
    pub fn l_series(&self, xs: &[usize], ys: &[usize]) -> Vec<Vec<usize>> {
        let mut series = vec![self.additive_closure(ys)];
        loop {
            let last = series.last().unwrap();
            let next = self.star_span(xs, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// The additive Sylow p-subgroup; canonical only for nilpotent type.
    pub fn sylow_additive(&self, p: usize) -> Result<Vec<usize>> {
        if !self.is_nilpotent_type() {
            return Err(Error::NotNilpotentType);
        }
        if !self.order().is_multiple_of(p) {
            return Err(Error::PrimeNotInOrder(p, self.order()));
        }
        let elements = self.add.elements_of_p_power_order(p);
        if self.additive_closure(&elements) != elements {
            return Err(Error::Internal("p-elements of a nilpotent group must form a subgroup".into()));
        }
        Ok(elements)
    }

    /// The additive Hall p'-subgroup; canonical only for nilpotent type.
    pub fn hall_p_prime(&self, p: usize) -> Result<Vec<usize>> {
        if !self.is_nilpotent_type() {
            return Err(Error::NotNilpotentType);
        }
        let elements = self.add.p_prime_elements(p);
        if self.additive_closure(&elements) != elements {
            return Err(Error::Internal("p'-elements of a nilpotent group must form a subgroup".into()));
        }
        Ok(elements)
    }

    /// Right p-nilpotent: the series `R_k(A_p, A)` reaches 0.
    pub fn is_right_p_nilpotent(&self, p: usize) -> Result<bool> {
        let sylow = self.sylow_additive(p)?;
        let all: Vec<usize> = (0..self.order()).collect();
        Ok(self.r_series(&sylow, &all).last().unwrap() == &[0])
    }

    /// Left p-nilpotent: the series `L_k(A, A_p)` reaches 0.
    pub fn is_left_p_nilpotent(&self, p: usize) -> Result<bool> {
        let sylow = self.sylow_additive(p)?;
        let all: Vec<usize> = (0..self.order()).collect();
        Ok(self.l_series(&all, &sylow).last().unwrap() == &[0])
    }

    /// `Fix(A) = {a : lambda_b(a) = a for all b}`.
    pub fn fix(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&a| (0..n).all(|b| self.lambda(b, a) == a)).collect()
    }

    /// `ker(lambda)`.
    pub fn lambda_kernel(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&a| (0..n).all(|b| self.lambda(a, b) == b)).collect()
    }

    /// Left ideal test: additive subgroup invariant under every `lambda_a`.
    pub fn is_left_ideal(&self, subset: &[usize]) -> bool {
        if self.additive_closure(subset) != subset {
            return false;
        }
        let inside = |x: usize| subset.binary_search(&x).is_ok();
        (0..self.order()).all(|a| subset.iter().all(|&i| inside(self.lambda(a, i))))
    }

    /// The brace induced on a left ideal, relabeled to `0..k-1` in the
    /// order of the subset.
    pub fn sub_brace(&self, subset: &[usize]) -> Result<SkewBrace> {
        if !self.is_left_ideal(subset) {
            return Err(Error::InvalidBrace("subset is not a left ideal".into()));
        }
        let index_of = |x: usize| -> Result<usize> {
            subset
                .binary_search(&x)
                .map_err(|_| Error::Internal("left ideal is not circle-closed".into()))
        };
        let k = subset.len();
        let mut add_table = vec![vec![0usize; k]; k];
        let mut circ_table = vec![vec![0usize; k]; k];
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                add_table[i][j] = index_of(self.add(a, b))?;
                circ_table[i][j] = index_of(self.circ(a, b))?;
            }
        }
        SkewBrace::from_tables(add_table, circ_table)
    }

    /// Ideal test: additive subgroup, normal in both groups and invariant
    /// under every `lambda_a`.
    pub fn is_ideal(&self, subset: &[usize]) -> bool {
        if self.additive_closure(subset) != subset {
            return false;
        }
        if !self.add.is_normal(subset) || !self.circ.is_normal(subset) {
            return false;
        }
        let inside = |x: usize| subset.binary_search(&x).is_ok();
        (0..self.order()).all(|a| subset.iter().all(|&i| inside(self.lambda(a, i))))
    }

    /// Quotient brace by an ideal; classes are labeled by their smallest
    /// member, so the class of 0 is element 0.
    pub fn quotient(&self, ideal: &[usize]) -> Result<SkewBrace> {
        if !self.is_ideal(ideal) {
            return Err(Error::InvalidBrace("subset is not an ideal".into()));
        }
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let class_index = reps.len();
            reps.push(a);
            for &i in ideal {
                let member = self.add(a, i);
                if class_of[member] != usize::MAX {
                    return Err(Error::Internal("additive cosets are not disjoint".into()));
                }
                class_of[member] = class_index;
            }
        }
        let m = reps.len();
        let mut add_table = vec![vec![usize::MAX; m]; m];
        let mut circ_table = vec![vec![usize::MAX; m]; m];
        for a in 0..n {
            for b in 0..n {
                let (ca, cb) = (class_of[a], class_of[b]);
                let s = class_of[self.add(a, b)];
                let c = class_of[self.circ(a, b)];
                for (table, value) in [(&mut add_table, s), (&mut circ_table, c)] {
                    if table[ca][cb] == usize::MAX {
                        table[ca][cb] = value;
                    } else if table[ca][cb] != value {
                        return Err(Error::Internal("quotient operation is not well defined".into()));
                    }
                }
            }
        }
        SkewBrace::from_tables(add_table, circ_table)
    }

    /// The associated solution
    /// `r(a, b) = (lambda_a(b), lambda_a(b)' o a o b)`, involutive exactly
    /// for abelian type.
    pub fn to_solution(&self) -> Solution {
        let n = self.order();
        let sigma: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| self.lambda(a, b)).collect()).collect();
        let tau: Vec<Vec<usize>> = (0..n)
            .map(|b| {
                (0..n)
                    .map(|a| {
                        let u = self.lambda(a, b);
                        self.circ(self.circ(self.circ_inv(u), a), b)
                    })
                    .collect()
            })
            .collect();
        Solution::from_tables(sigma, tau).expect("brace rows are bijections")
    }
}
