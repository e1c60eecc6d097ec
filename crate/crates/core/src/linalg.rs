//! Exact elimination: sparse rank and dense row reduction.
//!
//! Over the rationals the rank is computed fraction-free: each vector is
//! scaled to integers and eliminated with integer row operations, dividing
//! out the content after every step. Over a prime field plain elimination is
//! used.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, Scalar};

/// A sparse vector as `(index, value)` pairs.
pub type SparseVector = Vec<(usize, Scalar)>;

/// Rank of the span of the given sparse vectors.
pub fn rank(vectors: &[SparseVector]) -> usize {
    let field = vectors.iter().flat_map(|v| v.iter()).map(|(_, c)| c.field()).next();
    match field {
        None => 0,
        Some(Field::Rational) => rank_integer(vectors),
        Some(Field::Prime(_)) => rank_modular(vectors),
    }
}

fn to_integer_vector(v: &SparseVector) -> BTreeMap<usize, BigInt> {
    let rats: Vec<_> = v.iter().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (*i, c.to_rational())).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    rats.into_iter().map(|(i, q)| (i, q.numer() * (&lcm / q.denom()))).collect()
}

fn remove_content(v: &mut BTreeMap<usize, BigInt>) {
    let g = v.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.values_mut() {
            *x /= &g;
        }
    }
}

fn rank_integer(vectors: &[SparseVector]) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, BigInt>> = HashMap::new();
    for v in vectors {
        let mut v = to_integer_vector(v);
        while let Some((&lead, _)) = v.iter().next() {
            let Some(p) = pivots.get(&lead) else {
                remove_content(&mut v);
                pivots.insert(lead, v);
                break;
            };
            // v := a·v − b·p with a = p[lead], b = v[lead]
            let a = p[&lead].clone();
            let b = v[&lead].clone();
            let g = a.gcd(&b);
            let (a, b) = (&a / &g, &b / &g);
            for x in v.values_mut() {
                *x *= &a;
            }
            for (i, x) in p {
                let e = v.entry(*i).or_insert_with(BigInt::zero);
                *e -= &b * x;
                if e.is_zero() {
                    v.remove(i);
                }
            }
            remove_content(&mut v);
            if let Some((_, first)) = v.iter().next() {
                if first.is_negative() {
                    for x in v.values_mut() {
                        *x = -&*x;
                    }
                }
            }
        }
    }
    pivots.len()
}

fn rank_modular(vectors: &[SparseVector]) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, Scalar>> = HashMap::new();
    for v in vectors {
        let mut v: BTreeMap<usize, Scalar> = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        while let Some((&lead, c)) = v.iter().next() {
            let Some(p) = pivots.get(&lead) else {
                let inv = c.inv();
                for x in v.values_mut() {
                    *x = &*x * &inv;
                }
                pivots.insert(lead, v);
                break;
            };
            let factor = c.clone();
            for (i, x) in p {
                let e = v.entry(*i).or_insert_with(|| factor.field().zero());
                *e = &*e - &(&factor * x);
                if e.is_zero() {
                    v.remove(i);
                }
            }
        }
    }
    pivots.len()
}

/// Brings a dense matrix to reduced row echelon form in place, dropping zero
/// rows. Returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else { continue };
        rows.swap(r, k);
        let inv = rows[r][col].inv();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][col].is_zero() {
                let f = rows[k][col].clone();
                for c in 0..ncols {
                    let delta = &f * &rows[r][c];
                    rows[k][c] = &rows[k][c] - &delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{v : M v = 0}` for the dense matrix `M` with `ncols` columns.
/// Each basis vector has a 1 in one free column and zeros in the others.
pub fn nullspace(rows: &[Vec<Scalar>], ncols: usize, field: Field) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -&m[r][free];
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rational.from_int(n)
    }

    fn sparse(v: &[i64]) -> SparseVector {
        v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, q(x))).collect()
    }

    #[test]
    fn rational_rank() {
        let vs = [sparse(&[1, 2, 3]), sparse(&[2, 4, 6]), sparse(&[0, 1, 1])];
        assert_eq!(rank(&vs), 2);
        let vs = [sparse(&[1, 0, 0]), sparse(&[0, 1, 0]), sparse(&[0, 0, 1]), sparse(&[1, 1, 1])];
        assert_eq!(rank(&vs), 3);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[Vec::new()]), 0);
    }

    #[test]
    fn fractions_are_handled() {
        let half = Scalar::Rational(num_rational::BigRational::new(1.into(), 2.into()));
        let vs = [vec![(0, half.clone()), (1, q(1))], vec![(0, q(1)), (1, q(2))]];
        assert_eq!(rank(&vs), 1);
    }

    #[test]
    fn modular_rank_depends_on_characteristic() {
        let f3 = Field::Prime(3);
        let vs = [vec![(0, f3.from_int(1)), (1, f3.from_int(1))], vec![(0, f3.from_int(1)), (1, f3.from_int(4))]];
        assert_eq!(rank(&vs), 1);
        let vs = [sparse(&[1, 1]), sparse(&[1, 4])];
        assert_eq!(rank(&vs), 2);
    }

    #[test]
    fn nullspace_of_small_system() {
        let f = Field::Rational;
        let rows = vec![vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]];
        let ns = nullspace(&rows, 3, f);
        assert_eq!(ns, vec![vec![q(-1), q(1), q(0)]]);
    }
}
