//! The resolution is exact: in every internal degree j whose neighbouring
//! slices are computed, rank d_n + rank d_{n+1} = dim (kC_n ⊗ A)_j.
//! Ranks come from the test-side integer elimination.

mod common;

use std::collections::BTreeMap;

use anick::presentation::Presentation;
use anick::resolution::{Resolution, ResolutionSlice};
use anick::scalar::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

use common::*;

fn integer_column(col: &[(usize, Scalar)]) -> BTreeMap<usize, i128> {
    let qs: Vec<_> = col.iter().map(|(i, c)| (*i, c.to_rational())).collect();
    let scale = qs.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    qs.into_iter().map(|(i, q)| (i, i128::try_from(q.numer() * (&scale / q.denom())).unwrap())).collect()
}

fn slice_rank(s: &ResolutionSlice) -> usize {
    integer_rank(s.columns.iter().map(|c| integer_column(c)))
}

/// Returns the number of (level, degree) pairs checked.
fn check_exact(p: &Presentation, level_max: usize, deg_max: usize) -> usize {
    let mut res = Resolution::new(p, level_max, deg_max).unwrap();
    let mut checked = 0;
    for j in 1..=deg_max {
        // level -1 is A itself; the image of d_0 is the augmentation ideal
        let d0 = res.slice(0, j).unwrap();
        assert_eq!(slice_rank(&d0), d0.target.len(), "d0 onto A_{j}");
        let mut ranks = vec![slice_rank(&d0)];
        let mut dims = vec![d0.source.len()];
        for n in 1..=level_max {
            let s = res.slice(n, j).unwrap();
            ranks.push(slice_rank(&s));
            dims.push(s.source.len());
        }
        for n in 0..level_max {
            assert_eq!(ranks[n] + ranks[n + 1], dims[n], "level {n}, degree {j}");
            checked += 1;
        }
    }
    checked
}

#[test]
fn resolution_of_a_is_exact() {
    assert_eq!(check_exact(&parse(A), 6, 8), 6 * 8);
}

#[test]
fn resolutions_of_a_prime_are_exact() {
    check_exact(&parse(A_PRIME_LT), 5, 8);
    check_exact(&parse(A_PRIME_GT), 5, 8);
}

#[test]
fn non_koszul_example_is_exact() {
    check_exact(&parse("vars: x > y\nrelations:\n  x^2\n  x*y - y^2\n"), 5, 7);
}

#[test]
fn rational_coefficients() {
    check_exact(&parse("vars: x > y > z\nrelations:\n  2*x*y - 3*y*x + z^2\n  x*z - 1/2*z*x\n"), 4, 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_quadratic_presentations_are_exact(
        n in 2usize..=3,
        rels in prop::collection::vec(prop::collection::vec((0usize..9, -2i64..=2), 1..=3), 1..=3),
    ) {
        let names = ["x", "y", "z"];
        let lines: Vec<String> = rels
            .iter()
            .map(|r| r.iter().map(|&(w, c)| format!("{c:+}*{}*{}", names[w / 3 % n], names[w % n])).collect::<Vec<_>>().join(" "))
            .collect();
        let text = format!("vars: {}\nrelations:\n  {}\n", names[..n].join(" > "), lines.join("\n  "));
        let p = anick::parse::parse_presentation(&text);
        prop_assume!(p.is_ok());
        check_exact(&p.unwrap(), 4, 5);
    }
}
