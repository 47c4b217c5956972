//! Smith-style diagonalization of integer matrices by unimodular row and
//! column operations.

/// `P * M * Q = D` with `P`, `Q` unimodular and `D` diagonal (nonzero
/// entries first, all positive). The divisibility chain is not enforced.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub p: Vec<Vec<i128>>,
    pub q: Vec<Vec<i128>>,
    pub diag: Vec<i128>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn ck(x: Option<i128>) -> i128 {
    x.expect("integer overflow in lattice computation")
}

/// Diagonalizes the `rows x cols` integer matrix `m`.
pub fn diagonalize(m: &[Vec<i64>], rows: usize, cols: usize) -> Diagonalization {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut p = identity(rows);
    let mut q = identity(cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        p.swap(t, bi);
        for r in a.iter_mut() {
            r.swap(t, bj);
        }
        for r in q.iter_mut() {
            r.swap(t, bj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let f = a[i][t].div_euclid(a[t][t]);
                    for j in 0..cols {
                        a[i][j] = ck(a[i][j].checked_sub(ck(f.checked_mul(a[t][j]))));
                    }
                    for j in 0..rows {
                        p[i][j] = ck(p[i][j].checked_sub(ck(f.checked_mul(p[t][j]))));
                    }
                    if a[i][t] != 0 {
                        done = false;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let f = a[t][j].div_euclid(a[t][t]);
                    for i in 0..rows {
                        a[i][j] = ck(a[i][j].checked_sub(ck(f.checked_mul(a[i][t]))));
                    }
                    for i in 0..cols {
                        q[i][j] = ck(q[i][j].checked_sub(ck(f.checked_mul(q[i][t]))));
                    }
                    if a[t][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
            // move the smallest remaining entry of row t / column t to the pivot
            let mut bi = t;
            let mut bj = t;
            let mut bv = a[t][t].abs();
            for i in t + 1..rows {
                if a[i][t] != 0 && a[i][t].abs() < bv {
                    bv = a[i][t].abs();
                    bi = i;
                    bj = t;
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 && a[t][j].abs() < bv {
                    bv = a[t][j].abs();
                    bi = t;
                    bj = j;
                }
            }
            if bi != t {
                a.swap(t, bi);
                p.swap(t, bi);
            }
            if bj != t {
                for r in a.iter_mut() {
                    r.swap(t, bj);
                }
                for r in q.iter_mut() {
                    r.swap(t, bj);
                }
            }
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                p[t][j] = -p[t][j];
            }
        }
        diag.push(a[t][t]);
        t += 1;
    }
    Diagonalization { p, q, diag }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        (0..a.len())
            .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn diagonalizes() {
        let m = vec![vec![1i64, 1], vec![0, 2]];
        let d = diagonalize(&m, 2, 2);
        let mm: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let r = mul(&mul(&d.p, &mm), &d.q);
        assert_eq!(r[0][1], 0);
        assert_eq!(r[1][0], 0);
        assert_eq!(d.diag.iter().product::<i128>(), 2);
    }

    #[test]
    fn rectangular_rank_one() {
        let m = vec![vec![2i64], vec![4], vec![6]];
        let d = diagonalize(&m, 3, 1);
        assert_eq!(d.diag, vec![2]);
        let mm: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let r = mul(&d.p, &mm);
        assert_eq!(r[1][0], 0);
        assert_eq!(r[2][0], 0);
    }
}
