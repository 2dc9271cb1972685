use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;

fn trimmed(p: &[BigInt]) -> &[BigInt] {
    let n = p.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    &p[..n]
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), coefficients
/// ascending. The `n` shifted rows of `f` sit on top of the `m` rows of `g`.
pub fn sylvester_matrix(f: &[BigInt], g: &[BigInt]) -> IntMatrix {
    let f = trimmed(f);
    let g = trimmed(g);
    assert!(!f.is_empty() && !g.is_empty(), "resultant of a zero polynomial");
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            s[(n + i, i + k)] = c.clone();
        }
    }
    s
}

/// Exact resultant `det Sylvester(f, g)`, computed by fraction-free elimination.
///
/// With this row order `Res(f, g) = lc(f)^deg g · ∏_{f(r)=0} g(r)`.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (tf, tg) = (trimmed(f), trimmed(g));
    assert!(!tf.is_empty() && !tg.is_empty(), "resultant of a zero polynomial");
    if tf.len() == 1 && tg.len() == 1 {
        return BigInt::one();
    }
    sylvester_matrix(tf, tg).det()
}

/// `x^q − 1`, ascending.
pub fn cyclotomic_difference(q: usize) -> Vec<BigInt> {
    let mut g = vec![BigInt::zero(); q + 1];
    g[0] = -BigInt::one();
    g[q] = BigInt::one();
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Independent oracle: Leibniz expansion of the Sylvester determinant.
    fn leibniz_det(m: &IntMatrix) -> BigInt {
        fn perms(n: usize) -> Vec<(Vec<usize>, i32)> {
            if n == 0 {
                return vec![(vec![], 1)];
            }
            let mut out = vec![];
            for (p, s) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    // inserting the largest element at pos adds (n-1-pos) inversions
                    let sign = if (n - 1 - pos).is_multiple_of(2) { s } else { -s };
                    out.push((q, sign));
                }
            }
            out
        }
        let n = m.rows();
        perms(n)
            .into_iter()
            .map(|(p, s)| {
                let prod: BigInt = (0..n).map(|i| m[(i, p[i])].clone()).product();
                prod * s
            })
            .sum()
    }

    #[test]
    fn golden_against_cube_roots_of_unity() {
        let f = big(&[-1, -1, 1]);
        let g = cyclotomic_difference(3);
        assert_eq!(leibniz_det(&sylvester_matrix(&f, &g)), BigInt::from(-4));
        assert_eq!(resultant(&f, &g), BigInt::from(-4));
    }

    #[test]
    fn linear_pair() {
        // lc(f)^1 · g(2) = 1 with the f-rows-first convention
        assert_eq!(resultant(&big(&[-2, 1]), &big(&[-1, 1])), BigInt::one());
    }

    #[test]
    fn non_monic_linear_against_quadratic() {
        // 2² · ((1/2)² − 1) = −3
        let r = resultant(&big(&[-1, 2]), &big(&[-1, 0, 1]));
        assert_eq!(r, BigInt::from(-3));
        let s = sylvester_matrix(&big(&[-1, 2]), &big(&[-1, 0, 1]));
        assert_eq!(leibniz_det(&s), r);
    }

    #[test]
    fn common_root_gives_zero() {
        assert!(resultant(&big(&[-1, 0, 1]), &big(&[1, 1])).is_zero());
    }

    #[test]
    fn sylvester_agrees_with_leibniz_on_small_cases() {
        let cases = [
            (vec![3, -1, 2], vec![1, 4]),
            (vec![-2, 0, 0, 1], vec![-1, 0, 1]),
            (vec![5, 1, -1, 2], vec![2, -3, 1]),
        ];
        for (f, g) in cases {
            let (f, g) = (big(&f), big(&g));
            assert_eq!(resultant(&f, &g), leibniz_det(&sylvester_matrix(&f, &g)));
        }
    }
}
