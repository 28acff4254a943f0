//! Randomized cross-checks of the algebraic kernels: every result that has
//! an independent formulation (re-multiplication, back-substitution, a
//! second code path) is compared against it.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use ybe::braces::{enumerate_braces, SkewBrace};
use ybe::intlin::{solve_integer, IntMatrix, Lattice};
use ybe::perm::Permutation;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-9i64..=9, rows * cols).prop_map(move |entries| {
        IntMatrix::new(rows, cols, entries.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn vector(len: usize) -> impl Strategy<Value = Vec<BigInt>> {
    proptest::collection::vec(-9i64..=9, len)
        .prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

fn braces_up_to_8() -> &'static Vec<SkewBrace> {
    static POPULATION: OnceLock<Vec<SkewBrace>> = OnceLock::new();
    POPULATION.get_or_init(|| (1..=8).flat_map(|n| enumerate_braces(n).unwrap()).collect())
}

#[test]
fn cyclic_sylows_force_multipermutation() {
    // over the full census of involutive solutions of size <= 4: cyclic
    // Sylow subgroups of the permutation group force a finite level
    for n in 1..=4usize {
        for s in ybe::solutions::enumerate(n).unwrap() {
            let g = s.permutation_group(1_000_000).unwrap();
            let cyclic_sylows =
                ybe::perm::prime_divisors(g.order()).into_iter().all(|p| g.sylow_cyclic(p));
            if cyclic_sylows {
                assert!(
                    s.mp_level().unwrap().is_some(),
                    "cyclic Sylows but no finite level at n={n}"
                );
            }
        }
    }
    // the two known irretractable size-4 solutions show the hypothesis is
    // not vacuous: each has a non-cyclic Sylow 2-subgroup
    for s in [ybe::fixtures::solution_4_13(), ybe::fixtures::solution_4_19()] {
        let g = s.permutation_group(1_000_000).unwrap();
        assert!(!g.sylow_cyclic(2));
        assert!(s.mp_level().unwrap().is_none());
    }
}

proptest! {
    #[test]
    fn compose_is_associative(p in perm(6), q in perm(6), s in perm(6)) {
        let left = p.compose(&q).unwrap().compose(&s).unwrap();
        let right = p.compose(&q.compose(&s).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(p in perm(6)) {
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn cycle_display_roundtrips(p in perm(6)) {
        let text = p.to_string();
        prop_assert_eq!(Permutation::parse_cycles(&text, 6).unwrap(), p);
    }

    #[test]
    fn order_is_minimal(p in perm(6)) {
        let k = p.order();
        let mut acc = Permutation::identity(6);
        for step in 1..=k {
            acc = acc.compose(&p).unwrap();
            if step < k {
                prop_assert!(!acc.is_identity());
            }
        }
        prop_assert!(acc.is_identity());
    }

    #[test]
    fn hnf_is_a_unimodular_row_transform(m in matrix(4, 4)) {
        let (h, u) = m.hnf();
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(u.det().unwrap().abs().is_one());
        // already-reduced input is a fixed point
        prop_assert_eq!(h.hnf().0, h);
    }

    #[test]
    fn snf_diagonalizes_with_divisibility(m in matrix(3, 4)) {
        let (s, u, v) = m.snf();
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), s.clone());
        prop_assert!(u.det().unwrap().abs().is_one());
        prop_assert!(v.det().unwrap().abs().is_one());
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j {
                    prop_assert!(s.get(i, j).is_zero());
                }
            }
        }
        let dim = s.rows().min(s.cols());
        for t in 0..dim {
            prop_assert!(!s.get(t, t).is_negative());
            if t + 1 < dim && !s.get(t, t).is_zero() {
                prop_assert!((s.get(t + 1, t + 1) % s.get(t, t)).is_zero());
            }
        }
    }

    #[test]
    fn unimodular_inverse_cancels(m in matrix(4, 4)) {
        let (_, u) = m.hnf();
        let u_inv = u.inverse().unwrap();
        prop_assert!(u.mul(&u_inv).unwrap().is_identity());
        prop_assert!(u_inv.mul(&u).unwrap().is_identity());
    }

    #[test]
    fn planted_systems_are_solved(m in matrix(3, 5), z in vector(5)) {
        let c = m.mul_vec(&z).unwrap();
        let (particular, kernel) = solve_integer(&m, &c).unwrap().expect("planted solution");
        prop_assert_eq!(m.mul_vec(&particular).unwrap(), c);
        for k in &kernel {
            prop_assert!(m.mul_vec(k).unwrap().iter().all(|x| x.is_zero()));
        }
        // the planted solution must be particular + kernel combination
        let diff: Vec<BigInt> =
            z.iter().zip(&particular).map(|(a, b)| a - b).collect();
        let kernel_rows: Vec<BigInt> = kernel.iter().flatten().cloned().collect();
        if kernel.is_empty() {
            prop_assert!(diff.iter().all(|x| x.is_zero()));
        } else {
            let span = IntMatrix::new(kernel.len(), 5, kernel_rows).unwrap();
            let lattice = Lattice::from_vectors(5, &(0..span.rows()).map(|r| span.row(r)).collect::<Vec<_>>()).unwrap();
            prop_assert!(lattice.member(&diff).unwrap());
        }
    }

    #[test]
    fn lattice_membership_matches_the_solver(
        basis_rows in proptest::collection::vec(vector(3), 1..=3),
        v in vector(3),
    ) {
        let lattice = Lattice::from_vectors(3, &basis_rows).unwrap();
        if lattice.rank() == 0 {
            prop_assert_eq!(lattice.member(&v).unwrap(), v.iter().all(|x| x.is_zero()));
        } else {
            let by_solver = solve_integer(&lattice.basis().transpose(), &v).unwrap().is_some();
            prop_assert_eq!(lattice.member(&v).unwrap(), by_solver);
        }
    }

    #[test]
    fn integer_combinations_are_members(
        basis_rows in proptest::collection::vec(vector(3), 2),
        coeffs in vector(2),
    ) {
        let lattice = Lattice::from_vectors(3, &basis_rows).unwrap();
        let combo: Vec<BigInt> = (0..3)
            .map(|j| coeffs[0].clone() * &basis_rows[0][j] + coeffs[1].clone() * &basis_rows[1][j])
            .collect();
        prop_assert!(lattice.member(&combo).unwrap());
    }

    #[test]
    fn lambda_is_a_group_action(index in 0usize..62, seed in proptest::collection::vec(0usize..8, 3)) {
        let population = braces_up_to_8();
        let b = &population[index % population.len()];
        let n = b.order();
        let (a, x, y) = (seed[0] % n, seed[1] % n, seed[2] % n);
        // a o b = a + lambda_a(b)
        prop_assert_eq!(b.circ(a, x), b.add(a, b.lambda(a, x)));
        // lambda_{a o x} = lambda_a . lambda_x
        prop_assert_eq!(b.lambda(b.circ(a, x), y), b.lambda(a, b.lambda(x, y)));
        // lambda_a is additive
        prop_assert_eq!(b.lambda(a, b.add(x, y)), b.add(b.lambda(a, x), b.lambda(a, y)));
    }
}
