//! Ansatz coefficients at `q = 3/2`, fitted independently in a fleet of
//! representations by a separate rational-arithmetic implementation and
//! frozen here.

use num_rational::BigRational;
use qonsager::generators::closed_form;
use qonsager::ScalarFraction;

const K3: &[(char, usize, usize, &str)] = &[
    ('a', 0, 1, "-21600/661249"),
    ('b', 0, 1, "48600/661249"),
    ('a', 1, 0, "48600/661249"),
    ('b', 1, 0, "-21600/661249"),
    ('a', 1, 2, "-864/6817"),
    ('b', 1, 2, "1944/6817"),
    ('a', 2, 1, "-384/6817"),
    ('b', 2, 1, "4374/6817"),
    ('a', 3, 0, "2080/20451"),
    ('b', 3, 0, "15795/13634"),
    ('e', 0, 0, "-27000/661249"),
    ('e', 0, 2, "-2910/6817"),
    ('e', 1, 1, "-1080/6817"),
];

const K4: &[(char, usize, usize, &str)] = &[
    ('a', 1, 1, "-21600/281881"),
    ('b', 1, 1, "48600/281881"),
    ('a', 2, 0, "48600/281881"),
    ('b', 2, 0, "-21600/281881"),
    ('a', 2, 2, "-864/4621"),
    ('b', 2, 2, "1944/4621"),
    ('a', 3, 1, "480/4621"),
    ('b', 3, 1, "2430/4621"),
    ('a', 4, 0, "640/13863"),
    ('b', 4, 0, "10935/9242"),
    ('e', 0, 1, "-27000/281881"),
    ('e', 0, 3, "-1830/4621"),
    ('e', 1, 2, "-1080/4621"),
];

const K6: &[(char, usize, usize, &str)] = &[
    ('a', 1, 1, "-3071520000/104065109461"),
    ('a', 2, 0, "6910920000/104065109461"),
    ('a', 2, 2, "-122860800/1705985401"),
    ('a', 3, 1, "168069600/1705985401"),
    ('a', 3, 3, "-31104/369181"),
    ('a', 4, 0, "243826200/1705985401"),
    ('a', 4, 2, "17280/369181"),
    ('a', 5, 1, "7680/369181"),
    ('a', 6, 0, "10240/1107543"),
    ('b', 1, 1, "6910920000/104065109461"),
    ('b', 2, 0, "-3071520000/104065109461"),
    ('b', 2, 2, "276436800/1705985401"),
    ('b', 3, 1, "120965400/1705985401"),
    ('b', 3, 3, "69984/369181"),
    ('b', 4, 0, "-108367200/1705985401"),
    ('b', 4, 2, "87480/369181"),
    ('b', 5, 1, "196830/369181"),
    ('b', 6, 0, "885735/738362"),
    ('e', 0, 1, "-3839400000/104065109461"),
    ('e', 0, 3, "-135459000/1705985401"),
    ('e', 0, 5, "-138630/369181"),
    ('e', 1, 2, "-153576000/1705985401"),
    ('e', 1, 4, "-65880/369181"),
    ('e', 2, 3, "-38880/369181"),
];

fn check_level(k: usize, expected: &[(char, usize, usize, &str)]) {
    let q: BigRational = "3/2".parse().unwrap();
    let table = closed_form::solve(k, &ScalarFraction::zero()).unwrap();
    let at_q = |v: &ScalarFraction| v.specialize(Some(&q), None).unwrap().as_rational().unwrap();
    let lookup = |t: char, i: usize, j: usize| -> BigRational {
        expected.iter().find(|(tt, ii, jj, _)| (*tt, *ii, *jj) == (t, i, j)).map(|(.., v)| v.parse().unwrap()).unwrap_or_default()
    };
    for (t, map) in [('a', &table.a), ('b', &table.b), ('e', &table.e)] {
        for (&(i, j), v) in map {
            assert_eq!(at_q(v), lookup(t, i, j), "k = {k}, {t}_{i}{j}");
        }
    }
    for &(t, i, j, _) in expected {
        let map = match t {
            'a' => &table.a,
            'b' => &table.b,
            _ => &table.e,
        };
        assert!(map.contains_key(&(i, j)), "k = {k}: {t}_{i}{j} missing");
    }
}

#[test]
fn level_three_matches_fitted_values() {
    check_level(3, K3);
}

#[test]
fn level_four_matches_fitted_values() {
    check_level(4, K4);
}

#[test]
fn level_six_matches_fitted_values() {
    check_level(6, K6);
}
