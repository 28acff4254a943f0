//! The affine representation of the structure group of an involutive
//! solution: generators `x -> (sigma_x, e_x)` inside `Sym(n) x Z^n` with
//! multiplication `(A, a)(B, b) = (AB, a + A b)`, word evaluation, the
//! translation lattice (socle) and the holonomy group.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::intlin::{IntMatrix, Lattice};
use crate::perm::{PermGroup, Permutation};
use crate::solutions::Solution;

/// An element `(A, a)` of `Sym(n) x Z^n`, the permutation part acting on
/// `Z^n` by coordinate permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    perm: Permutation,
    trans: Vec<BigInt>,
}

impl AffineElement {
    pub fn new(perm: Permutation, trans: Vec<BigInt>) -> Result<Self> {
        if perm.degree() != trans.len() {
            return Err(Error::Dimension("permutation degree vs translation length".into()));
        }
        Ok(AffineElement { perm, trans })
    }

    pub fn identity(n: usize) -> Self {
        AffineElement { perm: Permutation::identity(n), trans: vec![BigInt::zero(); n] }
    }

    pub fn dim(&self) -> usize {
        self.trans.len()
    }

    pub fn perm_part(&self) -> &Permutation {
        &self.perm
    }

    pub fn translation(&self) -> &[BigInt] {
        &self.trans
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.trans.iter().all(|t| t.is_zero())
    }

    /// Pure translation: permutation part is the identity.
    pub fn is_translation(&self) -> bool {
        self.perm.is_identity()
    }

    /// Coordinate permutation action: `(A v)_{A(j)} = v_j`.
    fn act(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); v.len()];
        for (j, val) in v.iter().enumerate() {
            out[self.perm.apply(j)] = val.clone();
        }
        out
    }

    /// `(A, a)(B, b) = (AB, a + A b)`.
    pub fn op(&self, other: &AffineElement) -> Result<AffineElement> {
        let perm = self.perm.compose(&other.perm)?;
        let moved = self.act(&other.trans);
        let trans = self.trans.iter().zip(moved).map(|(a, b)| a + b).collect();
        Ok(AffineElement { perm, trans })
    }

    /// `(A, a)^{-1} = (A^{-1}, -A^{-1} a)`.
    pub fn inverse(&self) -> AffineElement {
        let perm = self.perm.inverse();
        let inv = AffineElement { perm: perm.clone(), trans: vec![BigInt::zero(); self.dim()] };
        let trans = inv.act(&self.trans).into_iter().map(|t| -t).collect();
        AffineElement { perm, trans }
    }

    pub fn pow(&self, k: i64) -> Result<AffineElement> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = AffineElement::identity(self.dim());
        for _ in 0..k.unsigned_abs() {
            acc = acc.op(&base)?;
        }
        Ok(acc)
    }

    /// The `(n+1) x (n+1)` integer matrix `[[A, a], [0, 1]]`.
    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zero(n + 1, n + 1);
        for j in 0..n {
            *m.get_mut(self.perm.apply(j), j) = BigInt::one();
        }
        for i in 0..n {
            *m.get_mut(i, n) = self.trans[i].clone();
        }
        *m.get_mut(n, n) = BigInt::one();
        m
    }
}

/// A word in the structure group generators: non-zero signed 1-indexed
/// letters, `k` meaning `x_k` and `-k` its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<i64>,
}

impl Word {
    pub fn new(letters: Vec<i64>) -> Result<Word> {
        if letters.contains(&0) {
            return Err(Error::Parse("word letters must be non-zero".into()));
        }
        Ok(Word { letters })
    }

    /// Parses the signed comma-separated syntax, e.g. `"1,-2"` for
    /// `x_1 x_2^{-1}`.
    pub fn parse(text: &str) -> Result<Word> {
        let letters = text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }
}

/// The image `(sigma_x, e_x)` of generator `x`.
pub fn generator(s: &Solution, x: usize) -> Result<AffineElement> {
    let n = s.size();
    if x >= n {
        return Err(Error::PointOutOfRange { point: x + 1, degree: n });
    }
    let mut trans = vec![BigInt::zero(); n];
    trans[x] = BigInt::one();
    AffineElement::new(s.sigma(x).clone(), trans)
}

/// Left-to-right product of the generator images named by the word.
pub fn eval_word(s: &Solution, w: &Word) -> Result<AffineElement> {
    let mut acc = AffineElement::identity(s.size());
    for &letter in w.letters() {
        let idx = letter.unsigned_abs() as usize - 1;
        let g = generator(s, idx)?;
        let factor = if letter > 0 { g } else { g.inverse() };
        acc = acc.op(&factor)?;
    }
    Ok(acc)
}

/// The structure group of an involutive solution, realized far enough for
/// exact computation: the holonomy group, a transversal of affine preimages
/// (one per holonomy element, found by BFS over generator words), and the
/// translation lattice generated by the Schreier kernel generators.
#[derive(Debug, Clone)]
pub struct StructureRep {
    holonomy: PermGroup,
    /// Parallel to `holonomy.elements()`: an affine preimage per element.
    preimages: Vec<AffineElement>,
    lattice: Lattice,
}

impl StructureRep {
    pub fn new(s: &Solution, cap: usize) -> Result<StructureRep> {
        let order: Vec<usize> = (0..s.size()).collect();
        StructureRep::new_with_order(s, cap, &order)
    }

    /// Same construction with a custom generator visit order; the verdicts
    /// downstream must not depend on it, only the particular transversal
    /// representatives do.
    pub fn new_with_order(s: &Solution, cap: usize, order: &[usize]) -> Result<StructureRep> {
        if !s.is_involutive() {
            return Err(Error::NotInvolutive);
        }
        let n = s.size();
        let holonomy = s.permutation_group(cap)?;

        // generators and their inverses, in the requested visit order
        let mut gens: Vec<AffineElement> = Vec::with_capacity(2 * n);
        for &x in order {
            gens.push(generator(s, x)?);
        }
        for &x in order {
            gens.push(generator(s, x)?.inverse());
        }

        // BFS transversal of the projection onto the holonomy group
        let mut transversal: Vec<Option<AffineElement>> = vec![None; holonomy.order()];
        let index_of = |p: &Permutation| -> usize {
            holonomy
                .elements()
                .binary_search(p)
                .expect("sigma closure contains all products")
        };
        let id = AffineElement::identity(n);
        let id_slot = index_of(id.perm_part());
        transversal[id_slot] = Some(id);
        let mut queue = vec![id_slot];
        let mut head = 0;
        while head < queue.len() {
            let t = transversal[queue[head]].clone().unwrap();
            head += 1;
            for g in &gens {
                let next = t.op(g)?;
                let slot = index_of(next.perm_part());
                if transversal[slot].is_none() {
                    transversal[slot] = Some(next);
                    queue.push(slot);
                }
            }
        }
        let preimages: Vec<AffineElement> =
            transversal.into_iter().map(|t| t.expect("BFS reaches every coset")).collect();

        // Schreier generators of the kernel are pure translations
        let mut vectors: Vec<Vec<BigInt>> = Vec::new();
        for t in &preimages {
            for g in &gens {
                let ts = t.op(g)?;
                let rep = &preimages[index_of(ts.perm_part())];
                let k = ts.op(&rep.inverse())?;
                if !k.is_translation() {
                    return Err(Error::Internal(
                        "Schreier kernel generator has a non-trivial permutation part".into(),
                    ));
                }
                vectors.push(k.translation().to_vec());
            }
        }
        let lattice = Lattice::from_vectors(n, &vectors)?;

        if lattice.rank() != n {
            return Err(Error::Internal("translation lattice is not full rank".into()));
        }
        for sigma in holonomy.elements() {
            for r in 0..lattice.basis().rows() {
                let row = lattice.basis().row(r);
                let mut moved = vec![BigInt::zero(); n];
                for (j, val) in row.into_iter().enumerate() {
                    moved[sigma.apply(j)] = val;
                }
                if !lattice.member(&moved)? {
                    return Err(Error::Internal(
                        "translation lattice is not invariant under the holonomy action".into(),
                    ));
                }
            }
        }
        Ok(StructureRep { holonomy, preimages, lattice })
    }

    pub fn holonomy(&self) -> &PermGroup {
        &self.holonomy
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The stored affine preimage of a holonomy element.
    pub fn preimage(&self, p: &Permutation) -> Option<&AffineElement> {
        self.holonomy.elements().binary_search(p).ok().map(|i| &self.preimages[i])
    }

    pub fn preimages(&self) -> &[AffineElement] {
        &self.preimages
    }
}
