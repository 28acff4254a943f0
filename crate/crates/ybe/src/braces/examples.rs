//! Hand-picked skew braces exercising the edge cases of the theory: a
//! non-nilpotent additive group, a dihedral additive group, and a brace on
//! the cyclic group of order 8 whose multiplicative group is quaternion.

use crate::braces::brace::SkewBrace;

fn signed_sum(modulus: usize) -> Vec<Vec<usize>> {
    // g_i + g_j = g_{i + (-1)^i j}
    (0..modulus)
        .map(|i| {
            (0..modulus)
                .map(|j| {
                    if i % 2 == 0 {
                        (i + j) % modulus
                    } else {
                        (i + modulus - j % modulus) % modulus
                    }
                })
                .collect()
        })
        .collect()
}

fn plain_sum(modulus: usize) -> Vec<Vec<usize>> {
    (0..modulus).map(|i| (0..modulus).map(|j| (i + j) % modulus).collect()).collect()
}

/// Order 6: `g_i + g_j = g_{i + (-1)^i j}`, `g_i o g_j = g_{i + j}`.
/// The additive group is S3 (so the type is not nilpotent), the
/// multiplicative group is C6.
pub fn c6_nonnilpotent_type() -> SkewBrace {
    SkewBrace::from_tables(signed_sum(6), plain_sum(6)).expect("valid skew brace")
}

/// Order 8, same formulas mod 8: additive D8 (dihedral of order 8),
/// multiplicative C8.
pub fn d8_example() -> SkewBrace {
    SkewBrace::from_tables(signed_sum(8), plain_sum(8)).expect("valid skew brace")
}

/// Order 8 on `Z/8` with `a o b = a + 3^a b`: abelian type, multiplicative
/// group quaternion.
pub fn z8_3a_example() -> SkewBrace {
    let pow3 = |a: usize| -> usize {
        let mut acc = 1usize;
        for _ in 0..a {
            acc = acc * 3 % 8;
        }
        acc
    };
    let circ = (0..8).map(|a| (0..8).map(|b| (a + pow3(a) * b) % 8).collect()).collect();
    SkewBrace::from_tables(plain_sum(8), circ).expect("valid skew brace")
}
