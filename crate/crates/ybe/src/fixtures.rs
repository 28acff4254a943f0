//! The golden solutions used throughout the test suite and shipped under
//! `fixtures/`.
//!
//! Labels follow the Etingof-Schedler-Soloviev classification of involutive
//! solutions of size <= 8: `4_13` and `4_19` are the two size-4 solutions
//! that are not multipermutation; `8_15579` is entry 15579 of the size-8
//! list. `8_gi` is the square-free counterexample to the Gateva-Ivanova
//! retractability conjecture.

use crate::solutions::Solution;

fn cycles(n: usize, sigma: &[&str], tau: &[&str]) -> Solution {
    Solution::from_cycles(n, sigma, tau).expect("fixture tables are valid")
}

/// Trivial flip `r(x, y) = (y, x)`.
pub fn trivial_flip(n: usize) -> Solution {
    let ids = vec![""; n];
    cycles(n, &ids, &ids)
}

/// The Lyubashenko form `r(x, y) = (sigma(y), tau(x))` with
/// `sigma = tau = (12)` on two points.
pub fn lyubashenko_2() -> Solution {
    cycles(2, &["(12)", "(12)"], &["(12)", "(12)"])
}

/// Size-4 irretractable solution, entry 13 of the size-4 list.
pub fn solution_4_13() -> Solution {
    cycles(
        4,
        &["(34)", "(1324)", "(1423)", "(12)"],
        &["(24)", "(1432)", "(1234)", "(13)"],
    )
}

/// Size-4 irretractable solution, entry 19 of the size-4 list.
pub fn solution_4_19() -> Solution {
    cycles(
        4,
        &["(12)", "(1324)", "(34)", "(1423)"],
        &["(14)", "(1243)", "(23)", "(1342)"],
    )
}

/// Square-free multipermutation solution with permutation group `C2 x C2`.
pub fn mp_example_c2c2() -> Solution {
    Solution::square_free_from_cycles(4, &["", "", "(34)", "(12)(34)"]).unwrap()
}

/// Square-free size-8 irretractable solution (the Gateva-Ivanova
/// counterexample).
pub fn solution_8_gi() -> Solution {
    Solution::square_free_from_cycles(
        8,
        &[
            "(78)",
            "(56)",
            "(25)(46)(78)",
            "(17)(38)(56)",
            "(24)",
            "(17)(24)(38)",
            "(13)",
            "(13)(25)(46)",
        ],
    )
    .unwrap()
}

/// Size-8 solution, entry 15579 of the size-8 list; retracts to
/// [`solution_4_13`].
pub fn solution_8_15579() -> Solution {
    cycles(
        8,
        &[
            "(3745)", "(3745)", "(1826)", "(1826)", "(13872465)", "(17842563)", "(13872465)",
            "(17842563)",
        ],
        &[
            "(3648)", "(3648)", "(1527)", "(1527)", "(16542873)", "(13562478)", "(16542873)",
            "(13562478)",
        ],
    )
}

/// The four size-8 solutions retracting to [`solution_4_13`] for which no
/// Promislow subgroup is found; the first is [`solution_8_15579`].
pub fn table_4_13_family() -> Vec<Solution> {
    vec![
        solution_8_15579(),
        cycles(
            8,
            &[
                "(3745)(68)", "(3745)(68)", "(1826)(57)", "(1826)(57)", "(1465)(2387)",
                "(1784)(2563)", "(1465)(2387)", "(1784)(2563)",
            ],
            &[
                "(3648)(57)", "(3648)(57)", "(1527)(68)", "(1527)(68)", "(1654)(2873)",
                "(1478)(2356)", "(1654)(2873)", "(1478)(2356)",
            ],
        ),
        cycles(
            8,
            &[
                "(12)(4675)", "(12)(4675)", "(1435)(2786)", "(1587)(2634)", "(1823)(56)",
                "(1823)(56)", "(1587)(2634)", "(1435)(2786)",
            ],
            &[
                "(12)(3685)", "(12)(3685)", "(1578)(2643)", "(1345)(2876)", "(1724)(56)",
                "(1724)(56)", "(1345)(2876)", "(1578)(2643)",
            ],
        ),
        cycles(
            8,
            &[
                "(12)(35)(4867)", "(12)(35)(4867)", "(16582437)", "(17562834)", "(16582437)",
                "(17562834)", "(1325)(46)(78)", "(1325)(46)(78)",
            ],
            &[
                "(12)(3857)(46)", "(12)(3857)(46)", "(17652843)", "(15682347)", "(17652843)",
                "(15682347)", "(1426)(35)(78)", "(1426)(35)(78)",
            ],
        ),
    ]
}

/// The four size-8 solutions retracting to [`solution_4_19`] for which no
/// Promislow subgroup is found.
pub fn table_4_19_family() -> Vec<Solution> {
    vec![
        cycles(
            8,
            &[
                "(12)(78)", "(1584)(2673)", "(34)(56)", "(1485)(2376)", "(34)(56)",
                "(1485)(2376)", "(12)(78)", "(1584)(2673)",
            ],
            &[
                "(14)(67)", "(1265)(3784)", "(23)(58)", "(1562)(3487)", "(23)(58)",
                "(1562)(3487)", "(14)(67)", "(1265)(3784)",
            ],
        ),
        cycles(
            8,
            &[
                "(12)(35)(46)(78)", "(1324)(5867)", "(17)(28)(34)(56)", "(1423)(5768)",
                "(17)(28)(34)(56)", "(1423)(5768)", "(12)(35)(46)(78)", "(1324)(5867)",
            ],
            &[
                "(14)(28)(35)(67)", "(1243)(5786)", "(17)(23)(46)(58)", "(1342)(5687)",
                "(17)(23)(46)(58)", "(1342)(5687)", "(14)(28)(35)(67)", "(1243)(5786)",
            ],
        ),
        cycles(
            8,
            &[
                "(13687542)", "(17)(2583)(46)", "(18657243)", "(1476)(28)(35)", "(18657243)",
                "(1476)(28)(35)", "(13687542)", "(17)(2583)(46)",
            ],
            &[
                "(13867524)", "(1278)(35)(46)", "(16857423)", "(17)(28)(3456)", "(16857423)",
                "(17)(28)(3456)", "(13867524)", "(1278)(35)(46)",
            ],
        ),
        cycles(
            8,
            &[
                "(1652)", "(17645328)", "(3874)", "(14635827)", "(1652)", "(17645328)", "(3874)",
                "(14635827)",
            ],
            &[
                "(1854)", "(12835647)", "(2367)", "(17825346)", "(1854)", "(12835647)", "(2367)",
                "(17825346)",
            ],
        ),
    ]
}

/// Every named golden solution, with a stable file stem.
pub fn registry() -> Vec<(&'static str, Solution)> {
    let mut out = vec![
        ("lyubashenko_2", lyubashenko_2()),
        ("mp_c2c2", mp_example_c2c2()),
        ("s4_13", solution_4_13()),
        ("s4_19", solution_4_19()),
        ("s8_gi", solution_8_gi()),
        ("s8_15579", solution_8_15579()),
    ];
    let stems_13 = ["tab_4_13_1", "tab_4_13_2", "tab_4_13_3", "tab_4_13_4"];
    for (stem, s) in stems_13.into_iter().zip(table_4_13_family()) {
        out.push((stem, s));
    }
    let stems_19 = ["tab_4_19_1", "tab_4_19_2", "tab_4_19_3", "tab_4_19_4"];
    for (stem, s) in stems_19.into_iter().zip(table_4_19_family()) {
        out.push((stem, s));
    }
    out
}
