//! Smith normal form of integer matrices.
//!
//! Only the column transform is tracked; that is all the diagonal-group
//! solver needs.

/// `diag` holds the invariant factors `d_1 | d_2 | …` (length `min(m, n)`);
/// `v` is unimodular with `U·A·V = D` for some unimodular `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub diag: Vec<i64>,
    pub v: Vec<Vec<i64>>,
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut v: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let k = m.min(n);
    for t in 0..k {
        loop {
            // smallest nonzero pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let f = a[i][t].div_euclid(p);
                if f != 0 {
                    for j in t..n {
                        a[i][j] -= f * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let f = a[t][j].div_euclid(p);
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..n {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for row in a.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
        }
    }
    Smith {
        diag: (0..k).map(|i| a[i][i] as i64).collect(),
        v: v.into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect(),
    }
}

fn swap_cols(a: &mut [Vec<i128>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = b[0].len();
        a.iter()
            .map(|r| {
                (0..n)
                    .map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum())
                    .collect()
            })
            .collect()
    }

    fn det(m: &[Vec<i64>]) -> i64 {
        let big = crate::linalg::int_to_big(m);
        crate::linalg::det(&big).to_integer().try_into().unwrap()
    }

    #[test]
    fn loop_matrix() {
        let s = smith_normal_form(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(s.diag, vec![1, 3]);
    }

    #[test]
    fn fermat_diagonal() {
        let s = smith_normal_form(&[vec![5, 0], vec![0, 5]]);
        assert_eq!(s.diag, vec![5, 5]);
        let s = smith_normal_form(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(s.diag, vec![1, 6]);
    }

    proptest! {
        #[test]
        fn invariant_factors(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 3), 2..5)) {
            let s = smith_normal_form(&rows);
            prop_assert_eq!(det(&s.v).abs(), 1);
            for w in s.diag.windows(2) {
                if w[0] != 0 {
                    prop_assert!(w[1] % w[0] == 0);
                } else {
                    prop_assert_eq!(w[1], 0);
                }
            }
            prop_assert!(s.diag.iter().all(|&d| d >= 0));
            // A·V has columns that are multiples of d_i in the D-coordinates,
            // so the column gcd of A·V agrees with the invariant factor.
            let av = mul(&rows, &s.v);
            for (j, &d) in s.diag.iter().enumerate() {
                let g = av.iter().fold(0i64, |g, r| num_integer::gcd(g, r[j]));
                prop_assert_eq!(g % d.max(1), 0);
            }
        }
    }
}
