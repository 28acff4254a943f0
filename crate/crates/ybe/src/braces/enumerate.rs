//! Enumeration of all skew braces of a given small order, up to
//! isomorphism.
//!
//! A skew brace with additive group `A` is the same thing as a map
//! `lambda: A -> Aut(A, +)` with `lambda_0 = id` and
//! `lambda_{a + lambda_a(b)} = lambda_a lambda_b`; the multiplication is
//! then `a o b = a + lambda_a(b)`. The search backtracks over lambda
//! assignments with eager propagation of that functional equation.

use std::collections::HashMap;

use crate::braces::brace::SkewBrace;
use crate::braces::group::FiniteGroup;
use crate::error::{Error, Result};

/// The groups of order `n <= 8`, one per isomorphism class.
pub fn groups_of_order(n: usize) -> Result<Vec<(&'static str, FiniteGroup)>> {
    let c = FiniteGroup::cyclic;
    let out = match n {
        1 => vec![("C1", c(1))],
        2 => vec![("C2", c(2))],
        3 => vec![("C3", c(3))],
        4 => vec![("C4", c(4)), ("C2xC2", FiniteGroup::direct_product(&c(2), &c(2)))],
        5 => vec![("C5", c(5))],
        6 => vec![("C6", c(6)), ("S3", FiniteGroup::dihedral(3))],
        7 => vec![("C7", c(7))],
        8 => vec![
            ("C8", c(8)),
            ("C4xC2", FiniteGroup::direct_product(&c(4), &c(2))),
            ("C2xC2xC2", {
                let klein = FiniteGroup::direct_product(&c(2), &c(2));
                FiniteGroup::direct_product(&klein, &c(2))
            }),
            ("D8", FiniteGroup::dihedral(4)),
            ("Q8", FiniteGroup::quaternion8()),
        ],
        _ => return Err(Error::SizeOutOfRange(n, "1..=8".into())),
    };
    Ok(out)
}

/// All automorphisms of `g`, as image tables, in lexicographic order.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[0] = 0;
    used[0] = true;
    collect_autos(g, &mut f, &mut used, 1, &mut out);
    out.sort();
    out
}

fn collect_autos(
    g: &FiniteGroup,
    f: &mut Vec<usize>,
    used: &mut Vec<bool>,
    depth: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let n = g.order();
    if depth == n {
        out.push(f.clone());
        return;
    }
    for cand in 0..n {
        if used[cand] || g.element_order(depth) != g.element_order(cand) {
            continue;
        }
        f[depth] = cand;
        used[cand] = true;
        let consistent = (0..=depth).all(|x| {
            (0..=depth).all(|y| {
                let prod = g.mul(x, y);
                f[prod] == usize::MAX || g.mul(f[x], f[y]) == f[prod]
            })
        });
        if consistent {
            collect_autos(g, f, used, depth + 1, out);
        }
        used[cand] = false;
        f[depth] = usize::MAX;
    }
}

/// Brace isomorphism: a bijection fixing 0 that is simultaneously a
/// homomorphism for `+` and for `o`.
pub fn brace_isomorphic(a: &SkewBrace, b: &SkewBrace) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let fp = |x: &SkewBrace, e: usize| {
        (x.additive().element_order(e), x.multiplicative().element_order(e))
    };
    let n = a.order();
    let mut sig_a: Vec<(usize, usize)> = (0..n).map(|e| fp(a, e)).collect();
    let mut sig_b: Vec<(usize, usize)> = (0..n).map(|e| fp(b, e)).collect();
    sig_a.sort_unstable();
    sig_b.sort_unstable();
    if sig_a != sig_b {
        return false;
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[0] = 0;
    used[0] = true;
    search_brace_iso(a, b, &mut f, &mut used, 1)
}

fn search_brace_iso(
    a: &SkewBrace,
    b: &SkewBrace,
    f: &mut Vec<usize>,
    used: &mut Vec<bool>,
    depth: usize,
) -> bool {
    let n = a.order();
    if depth == n {
        return true;
    }
    for cand in 0..n {
        if used[cand]
            || a.additive().element_order(depth) != b.additive().element_order(cand)
            || a.multiplicative().element_order(depth) != b.multiplicative().element_order(cand)
        {
            continue;
        }
        f[depth] = cand;
        used[cand] = true;
        let consistent = (0..=depth).all(|x| {
            (0..=depth).all(|y| {
                let s = a.add(x, y);
                let c = a.circ(x, y);
                (f[s] == usize::MAX || b.add(f[x], f[y]) == f[s])
                    && (f[c] == usize::MAX || b.circ(f[x], f[y]) == f[c])
            })
        });
        if consistent && search_brace_iso(a, b, f, used, depth + 1) {
            return true;
        }
        used[cand] = false;
        f[depth] = usize::MAX;
    }
    false
}

/// All skew braces of order `n <= 8`, up to isomorphism, grouped under
/// every additive group of that order. Deterministic output order.
pub fn enumerate_braces(n: usize) -> Result<Vec<SkewBrace>> {
    let mut out: Vec<SkewBrace> = Vec::new();
    for (_, add) in groups_of_order(n)? {
        let auts = automorphisms(&add);
        let aut_index: HashMap<Vec<usize>, usize> =
            auts.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let mut assignments = Vec::new();
        let mut lambda = vec![usize::MAX; n];
        let identity_aut = aut_index[&(0..n).collect::<Vec<usize>>()];
        lambda[0] = identity_aut;
        propagate_and_recurse(&add, &auts, &aut_index, &mut lambda, &mut assignments);
        let mut fresh: Vec<SkewBrace> = Vec::new();
        for assignment in assignments {
            let circ: Vec<Vec<usize>> = (0..n)
                .map(|a| (0..n).map(|b| add.mul(a, auts[assignment[a]][b])).collect())
                .collect();
            let brace = SkewBrace::new(add.clone(), FiniteGroup::from_table(circ)?)?;
            if !fresh.iter().any(|known| brace_isomorphic(known, &brace)) {
                fresh.push(brace);
            }
        }
        out.extend(fresh);
    }
    Ok(out)
}

/// Backtracking over unassigned lambda values with propagation of
/// `lambda_{a + lambda_a(b)} = lambda_a lambda_b`.
fn propagate_and_recurse(
    add: &FiniteGroup,
    auts: &[Vec<usize>],
    aut_index: &HashMap<Vec<usize>, usize>,
    lambda: &mut [usize],
    out: &mut Vec<Vec<usize>>,
) {
    let n = add.order();
    // propagate to a fixpoint on a working copy
    let mut work = lambda.to_vec();
    loop {
        let mut changed = false;
        for a in 0..n {
            if work[a] == usize::MAX {
                continue;
            }
            for b in 0..n {
                if work[b] == usize::MAX {
                    continue;
                }
                let c = add.mul(a, auts[work[a]][b]);
                let composed: Vec<usize> = (0..n).map(|x| auts[work[a]][auts[work[b]][x]]).collect();
                let idx = aut_index[&composed];
                if work[c] == usize::MAX {
                    work[c] = idx;
                    changed = true;
                } else if work[c] != idx {
                    return; // contradiction: prune this branch
                }
            }
        }
        if !changed {
            break;
        }
    }
    match (0..n).find(|&a| work[a] == usize::MAX) {
        None => out.push(work),
        Some(free) => {
            for t in 0..auts.len() {
                work[free] = t;
                propagate_and_recurse(add, auts, aut_index, &mut work, out);
            }
        }
    }
}
