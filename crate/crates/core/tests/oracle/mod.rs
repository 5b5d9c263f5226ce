//! Reference implementations used to cross-check the library. They share
//! no code with it beyond the public data types.

#![allow(dead_code)]

use num_rational::Ratio;
use rinehart::{Blade, Multivector, Poly};

type Q = Ratio<i64>;

/// Rank by plain Gaussian elimination over `Ratio<i64>`.
pub fn gauss_rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != Q::from_integer(0)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c];
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != Q::from_integer(0) {
                let f = rows[r][c] / pivot;
                for k in c..cols {
                    let v = rows[rank][k];
                    rows[r][k] -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == p)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Chevalley-Eilenberg homology of an `n`-dimensional Lie algebra with
/// coefficients in the one-dimensional right module `1 . e_i = r_i`.
/// `brackets` lists `(i, j, k, c)` meaning `c_ij^k = c` for `i < j` (0-based).
pub fn ce_betti(n: usize, brackets: &[(usize, usize, usize, i64)], r: &[i64]) -> Vec<usize> {
    let mut c = vec![vec![vec![0i64; n]; n]; n];
    for &(i, j, k, v) in brackets {
        c[i][j][k] += v;
        c[j][i][k] -= v;
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| subsets(n, p)).collect();
    let mut ranks = vec![0usize; n + 2];
    for p in 1..=n {
        let rows = &bases[p - 1];
        let mut m = vec![vec![Q::from_integer(0); bases[p].len()]; rows.len()];
        for (col, s) in bases[p].iter().enumerate() {
            for a in 0..p {
                // (-1)^(a) r_{s_a} x_{s without s_a}, a 0-based
                let rest: Vec<usize> = s.iter().enumerate().filter(|&(t, _)| t != a).map(|(_, &x)| x).collect();
                let row = rows.iter().position(|x| *x == rest).unwrap();
                let sign = if a % 2 == 0 { 1 } else { -1 };
                m[row][col] += Q::from_integer(sign * r[s[a]]);
                for b in a + 1..p {
                    let rest: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != a && t != b)
                        .map(|(_, &x)| x)
                        .collect();
                    // 1-based (-1)^(a+b) equals 0-based (-1)^(a+b)
                    let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                    for k in 0..n {
                        let v = c[s[a]][s[b]][k];
                        if v == 0 || rest.contains(&k) {
                            continue;
                        }
                        let before = rest.iter().filter(|&&x| x < k).count();
                        let mut target = rest.clone();
                        target.insert(before, k);
                        let row = rows.iter().position(|x| *x == target).unwrap();
                        let s2 = if before % 2 == 0 { 1 } else { -1 };
                        m[row][col] += Q::from_integer(sign * s2 * v);
                    }
                }
            }
        }
        ranks[p] = gauss_rank(m);
    }
    (0..=n).map(|p| bases[p].len() - ranks[p] - ranks[p + 1]).collect()
}

/// `D = -sum_i d/dx_i o i_{dx_i}` on polyvector fields, the generator with
/// `r = 0` on `Der Q[x1..xm]`; `i` removes `e_i` from the left.
pub fn coordinate_generator(u: &Multivector) -> Multivector {
    let (m, n) = (u.nvars(), u.rank());
    let mut out = Multivector::zero(m, n);
    for (s, a) in u.terms() {
        let idx = s.indices();
        for (pos, &i) in idx.iter().enumerate() {
            let d = a.partial_derivative(i).unwrap();
            if d.is_zero() {
                continue;
            }
            let d = if pos % 2 == 0 { -&d } else { d };
            out.add_term(s.without(i), d);
        }
    }
    out
}

/// The Schouten bracket of two vector fields, `[X, Y]^k = X(Y^k) - Y(X^k)`.
pub fn vector_field_bracket(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    let m = x.len();
    let apply = |v: &[Poly], f: &Poly| {
        (0..m).fold(Poly::zero(m), |acc, i| {
            &acc + &(&v[i] * &f.partial_derivative(i).unwrap())
        })
    };
    (0..m).map(|k| &apply(x, &y[k]) - &apply(y, &x[k])).collect()
}

/// Sign of the permutation sorting `seq` (distinct entries), by counting
/// inversions.
pub fn inversion_sign(seq: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn blade(indices: &[usize]) -> Blade {
    Blade::from_indices(indices).unwrap()
}
