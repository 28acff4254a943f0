//! Detection of Promislow subgroups in the structure group of an involutive
//! solution, and the 14-element set witnessing failure of the unique
//! product property.
//!
//! The search follows the lattice-coset strategy: a pair of holonomy
//! elements satisfying relation (P) lifts to a pair of affine elements
//! satisfying (P) exactly when a block-Laurent linear system has an
//! integral solution inside the translation lattice.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intlin::{solve_integer, IntMatrix, Lattice};
use crate::structure_group::{AffineElement, StructureRep};

/// Exact group elements: enough structure to state relation (P).
pub trait ExactGroup: Clone + Eq {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl ExactGroup for crate::perm::Permutation {
    fn op(&self, other: &Self) -> Self {
        self.compose(other).expect("equal degrees")
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

impl ExactGroup for AffineElement {
    fn op(&self, other: &Self) -> Self {
        AffineElement::op(self, other).expect("equal dimensions")
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

impl ExactGroup for IntMatrix {
    fn op(&self, other: &Self) -> Self {
        self.mul(other).expect("equal dimensions")
    }
    fn inv(&self) -> Self {
        self.inverse().expect("invertible over Z")
    }
}

/// Relation (P): `x^2 y = y x^{-2}` and `y^2 x = x y^{-2}`.
pub fn satisfies_p<G: ExactGroup>(x: &G, y: &G) -> bool {
    let x2 = x.op(x);
    let y2 = y.op(y);
    let x2_inv = x2.inv();
    let y2_inv = y2.inv();
    x2.op(y) == y.op(&x2_inv) && y2.op(x) == x.op(&y2_inv)
}

/// `P1(A, B) = I + A + B A^{-1} + B A^{-2}`.
pub fn laurent_p1(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    let n = a.rows();
    let a_inv = a.inverse()?;
    let a_inv2 = a_inv.mul(&a_inv)?;
    IntMatrix::identity(n).add(a)?.add(&b.mul(&a_inv)?)?.add(&b.mul(&a_inv2)?)
}

/// `P2(A, B) = A^2 - I` (the second argument does not appear).
pub fn laurent_p2(a: &IntMatrix, _b: &IntMatrix) -> Result<IntMatrix> {
    a.mul(a)?.sub(&IntMatrix::identity(a.rows()))
}

/// Builds the block system deciding whether the (P)-pair `(A, v), (B, w)`
/// can be corrected by lattice vectors.
///
/// The unknowns are expressed in coordinates of the lattice basis
/// (`x = basis^T s`, `y = basis^T t`), so integral solvability of the
/// returned system is exactly solvability with `x, y` in `L`.
pub fn assemble_system(
    a: &IntMatrix,
    v: &[BigInt],
    b: &IntMatrix,
    w: &[BigInt],
    lattice: &Lattice,
) -> Result<(IntMatrix, Vec<BigInt>)> {
    let n = lattice.ambient_dim();
    if a.rows() != n || b.rows() != n || v.len() != n || w.len() != n {
        return Err(Error::Dimension("system blocks must match the ambient dimension".into()));
    }
    let p1_ab = laurent_p1(a, b)?;
    let p2_ab = laurent_p2(a, b)?;
    let p1_ba = laurent_p1(b, a)?;
    let p2_ba = laurent_p2(b, a)?;

    // right-hand side: -[P1 P2; P2' P1'] [v; w]
    let mut c = Vec::with_capacity(2 * n);
    let top = p1_ab.mul_vec(v)?.into_iter().zip(p2_ab.mul_vec(w)?);
    for (x, y) in top {
        c.push(-(x + y));
    }
    let bottom = p2_ba.mul_vec(v)?.into_iter().zip(p1_ba.mul_vec(w)?);
    for (x, y) in bottom {
        c.push(-(x + y));
    }

    // coefficient matrix over the lattice coordinates
    let basis_t = lattice.basis().transpose();
    let blocks = [
        [p1_ab.mul(&basis_t)?, p2_ab.mul(&basis_t)?],
        [p2_ba.mul(&basis_t)?, p1_ba.mul(&basis_t)?],
    ];
    let r = lattice.rank();
    let mut entries = Vec::with_capacity(2 * n * 2 * r);
    for (block_row, row_blocks) in blocks.iter().enumerate() {
        let _ = block_row;
        for i in 0..n {
            for block in row_blocks {
                for j in 0..r {
                    entries.push(block.get(i, j).clone());
                }
            }
        }
    }
    let m = IntMatrix::new(2 * n, 2 * r, entries)?;
    Ok((m, c))
}

/// A verified pair generating a Promislow subgroup.
#[derive(Debug, Clone)]
pub struct PromislowCertificate {
    pub alpha: AffineElement,
    pub beta: AffineElement,
    pub verified_relations: bool,
}

impl PromislowCertificate {
    /// Checks every certificate invariant from scratch.
    pub fn verify(alpha: &AffineElement, beta: &AffineElement) -> Result<bool> {
        if alpha.perm_part().is_identity() || beta.perm_part().is_identity() {
            return Ok(false);
        }
        if !satisfies_p(alpha, beta) {
            return Ok(false);
        }
        // defining Promislow relations x^{-1} y^2 x = y^{-2}, y^{-1} x^2 y = x^{-2}
        let a2 = alpha.op(alpha)?;
        let b2 = beta.op(beta)?;
        let rel1 = alpha.inverse().op(&b2)?.op(alpha)? == b2.inverse();
        let rel2 = beta.inverse().op(&a2)?.op(beta)? == a2.inverse();
        if !rel1 || !rel2 {
            return Ok(false);
        }
        // alpha^2, beta^2, (alpha beta)^2 generate a rank-3 free abelian
        // subgroup: raise each to the order of its permutation part to land
        // in the pure translations, then rank-test the three vectors
        let ab2 = alpha.op(beta)?.op(alpha)?.op(beta)?;
        let mut vectors = Vec::new();
        for g in [&a2, &b2, &ab2] {
            let k = g.perm_part().order();
            let pure = g.pow(k as i64)?;
            if !pure.is_translation() {
                return Err(Error::Internal("power by permutation order is not a translation".into()));
            }
            if pure.translation().iter().all(|t| t.is_zero()) {
                return Ok(false); // torsion would be needed, impossible here
            }
            vectors.push(pure.translation().to_vec());
        }
        let n = alpha.dim();
        let stacked = IntMatrix::new(3, n, vectors.into_iter().flatten().collect())?;
        Ok(stacked.rank() == 3)
    }
}

/// Outcome of [`find_promislow`].
#[derive(Debug, Clone)]
pub struct SearchReport {
    /// Ordered pairs of non-identity holonomy elements examined.
    pub pairs_tested: usize,
    pub certificate: Option<PromislowCertificate>,
    /// True when every (P)-satisfying pair led to an unsolvable system.
    pub exhausted: bool,
}

/// Runs the pair search over the holonomy group of `rep`.
///
/// Pairs are enumerated in the canonical (lexicographic) element order and
/// the first solvable pair in that order wins, independent of thread count.
pub fn find_promislow(rep: &StructureRep) -> Result<SearchReport> {
    let elements = rep.holonomy().elements();
    let lattice = rep.lattice();
    let non_identity: Vec<usize> =
        (0..elements.len()).filter(|&i| !elements[i].is_identity()).collect();
    let pairs: Vec<(usize, usize)> = non_identity
        .iter()
        .flat_map(|&i| non_identity.iter().map(move |&j| (i, j)))
        .collect();
    let pairs_tested = pairs.len();

    let hit = pairs
        .par_iter()
        .enumerate()
        .filter_map(|(rank, &(i, j))| {
            let a_perm = &elements[i];
            let b_perm = &elements[j];
            if !satisfies_p(a_perm, b_perm) {
                return None;
            }
            let a = IntMatrix::from_permutation(a_perm);
            let b = IntMatrix::from_permutation(b_perm);
            let v = rep.preimages()[i].translation().to_vec();
            let w = rep.preimages()[j].translation().to_vec();
            let (m, c) = assemble_system(&a, &v, &b, &w, lattice).ok()?;
            let (coords, _) = solve_integer(&m, &c).ok()??;
            Some((rank, i, j, coords))
        })
        .min_by_key(|&(rank, ..)| rank);

    let certificate = match hit {
        None => None,
        Some((_, i, j, coords)) => {
            let r = lattice.rank();
            let basis_t = lattice.basis().transpose();
            let x = basis_t.mul_vec(&coords[..r])?;
            let y = basis_t.mul_vec(&coords[r..])?;
            let alpha = AffineElement::new(
                elements[i].clone(),
                x.iter()
                    .zip(rep.preimages()[i].translation())
                    .map(|(a, b)| a + b)
                    .collect(),
            )?;
            let beta = AffineElement::new(
                elements[j].clone(),
                y.iter()
                    .zip(rep.preimages()[j].translation())
                    .map(|(a, b)| a + b)
                    .collect(),
            )?;
            let verified = PromislowCertificate::verify(&alpha, &beta)?;
            if !verified {
                return Err(Error::Internal(
                    "solvable system produced a pair failing the certificate invariants".into(),
                ));
            }
            Some(PromislowCertificate { alpha, beta, verified_relations: verified })
        }
    };
    let exhausted = certificate.is_none();
    Ok(SearchReport { pairs_tested, certificate, exhausted })
}

/// The 14 words of the Promislow set, evaluated at `x`, `y`.
///
/// Duplicates are rejected: a collapse signals a degenerate pair, and the
/// unique-product argument needs all 14 elements distinct.
pub fn promislow_set(x: &AffineElement, y: &AffineElement) -> Result<Vec<AffineElement>> {
    let xy = x.op(y)?;
    let xyx = x.op(y)?.op(x)?;
    let words: Vec<AffineElement> = vec![
        x.op(x)?.op(y)?,          // x^2 y
        y.op(y)?.op(x)?,          // y^2 x
        x.op(y)?.op(&x.inverse())?, // x y x^{-1}
        y.op(y)?.op(x)?.inverse(),  // (y^2 x)^{-1}
        xy.op(&xy)?.inverse(),      // (xy)^{-2}
        y.clone(),
        xy.op(&xy)?.op(x)?,         // (xy)^2 x
        xy.op(&xy)?,                // (xy)^2
        xyx.inverse(),              // (xyx)^{-1}
        y.op(x)?.op(y)?,            // y x y
        y.inverse(),
        x.clone(),
        xyx,
        x.inverse(),
    ];
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if words[i] == words[j] {
                return Err(Error::InvalidSolution(format!(
                    "Promislow set collapsed: words {i} and {j} coincide"
                )));
            }
        }
    }
    Ok(words)
}

/// True iff every element of `S^2` has at least two distinct ordered
/// factorizations over `S x S`.
pub fn upp_failure_witness(set: &[AffineElement]) -> bool {
    product_factorizations(set).values().all(|&count| count >= 2)
}

/// Product table of `S^2` with ordered-factorization counts.
pub fn product_factorizations(set: &[AffineElement]) -> HashMap<AffineElement, usize> {
    let mut counts: HashMap<AffineElement, usize> = HashMap::new();
    for a in set {
        for b in set {
            *counts.entry(a.op(b).expect("equal dimensions")).or_insert(0) += 1;
        }
    }
    counts
}
