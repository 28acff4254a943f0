//! Finite skew left braces: the group and brace calculus, curated examples,
//! enumeration by order, and the brace living on the permutation group of
//! an involutive solution.

pub mod brace;
pub mod enumerate;
pub mod examples;
pub mod group;

pub use brace::{check_tables, BraceCheck, SkewBrace};
pub use enumerate::{automorphisms, brace_isomorphic, enumerate_braces, groups_of_order};
pub use group::FiniteGroup;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::structure_group::StructureRep;

/// The skew brace carried by the permutation group of an involutive
/// solution: multiplication is composition, addition is transported from
/// `Z^n / L` through the translation parts of the transversal.
///
/// Elements are indexed by the canonical order of the holonomy elements
/// (the identity is index 0).
pub fn permutation_brace(rep: &StructureRep) -> Result<SkewBrace> {
    let holonomy = rep.holonomy();
    let lattice = rep.lattice();
    let m = holonomy.order();
    let translations: Vec<Vec<BigInt>> =
        rep.preimages().iter().map(|p| p.translation().to_vec()).collect();

    let class_of = |v: &[BigInt]| -> Result<usize> {
        let mut hit = None;
        for (k, t) in translations.iter().enumerate() {
            let diff: Vec<BigInt> = v.iter().zip(t).map(|(a, b)| a - b).collect();
            if lattice.member(&diff)? {
                if hit.is_some() {
                    return Err(Error::Internal(
                        "two transversal translations in the same lattice coset".into(),
                    ));
                }
                hit = Some(k);
            }
        }
        hit.ok_or_else(|| Error::Internal("translation coset misses the transversal".into()))
    };

    let mut add = vec![vec![0usize; m]; m];
    let mut circ = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            let sum: Vec<BigInt> =
                translations[i].iter().zip(&translations[j]).map(|(a, b)| a + b).collect();
            add[i][j] = class_of(&sum)?;
            let product = holonomy.elements()[i].compose(&holonomy.elements()[j])?;
            circ[i][j] = holonomy
                .elements()
                .binary_search(&product)
                .map_err(|_| Error::Internal("holonomy is not closed".into()))?;
        }
    }
    SkewBrace::from_tables(add, circ)
}
