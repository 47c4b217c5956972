//! Exact feasibility for systems of linear equalities and inequalities over
//! free rational variables: phase-one simplex with Bland's rule.

use super::rational::Rat;

/// A linear constraint `coeffs . x  (= or >=)  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rhs: Rat) -> Constraint {
        Constraint { coeffs, rhs }
    }
}

/// Returns a point satisfying every equality and inequality, or `None`.
pub fn feasible_point(nvars: usize, eqs: &[Constraint], ges: &[Constraint]) -> Option<Vec<Rat>> {
    // columns: x+ (n), x- (n), slacks (one per inequality), artificials (one per row)
    let m = eqs.len() + ges.len();
    let n = nvars;
    let ns = ges.len();
    let na = m;
    let width = 2 * n + ns + na;
    let mut t = vec![vec![Rat::ZERO; width]; m];
    let mut b = vec![Rat::ZERO; m];
    for (i, c) in eqs.iter().chain(ges.iter()).enumerate() {
        assert_eq!(c.coeffs.len(), n);
        for j in 0..n {
            t[i][j] = c.coeffs[j].clone();
            t[i][n + j] = -&c.coeffs[j];
        }
        if i >= eqs.len() {
            t[i][2 * n + (i - eqs.len())] = Rat::int(-1);
        }
        b[i] = c.rhs.clone();
        if b[i].is_negative() {
            for x in t[i].iter_mut() {
                *x = -&*x;
            }
            b[i] = -&b[i];
        }
        t[i][2 * n + ns + i] = Rat::ONE;
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * n + ns + i).collect();
    let cost = |j: usize| if j >= 2 * n + ns { Rat::ONE } else { Rat::ZERO };

    loop {
        // reduced costs r_j = c_j - sum_i c_{B_i} t_ij; Bland: first negative
        let mut entering = None;
        for j in 0..width {
            let mut r = cost(j);
            for i in 0..m {
                let cb = cost(basis[i]);
                if !cb.is_zero() && !t[i][j].is_zero() {
                    r = &r - &(&cb * &t[i][j]);
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][j].is_positive() {
                let ratio = &b[i] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((p, _)) = leave else {
            // unbounded direction for the phase-one objective cannot occur
            unreachable!("phase-one objective is bounded below");
        };
        let inv = t[p][j].recip();
        for x in t[p].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        b[p] = &b[p] * &inv;
        let prow = t[p].clone();
        let pb = b[p].clone();
        for i in 0..m {
            if i == p || t[i][j].is_zero() {
                continue;
            }
            let f = t[i][j].clone();
            for (k, pk) in prow.iter().enumerate() {
                if !pk.is_zero() {
                    t[i][k] = &t[i][k] - &(&f * pk);
                }
            }
            b[i] = &b[i] - &(&f * &pb);
        }
        basis[p] = j;
    }

    let mut y = vec![Rat::ZERO; width];
    for i in 0..m {
        y[basis[i]] = b[i].clone();
    }
    if y[2 * n + ns..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some((0..n).map(|j| &y[j] - &y[n + j]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(xs: &[i64], r: i64) -> Constraint {
        Constraint::new(xs.iter().map(|&x| Rat::int(x)).collect(), Rat::int(r))
    }

    #[test]
    fn finds_points() {
        let x = feasible_point(2, &[c(&[1, 1], 3)], &[c(&[1, -1], 1)]).unwrap();
        assert_eq!(&x[0] + &x[1], Rat::int(3));
        assert!(&x[0] - &x[1] >= Rat::ONE);
    }

    #[test]
    fn detects_infeasible() {
        assert!(feasible_point(1, &[], &[c(&[1], 1), c(&[-1], 0)]).is_none());
        assert!(feasible_point(2, &[c(&[1, 1], 1), c(&[1, 1], 2)], &[]).is_none());
    }

    #[test]
    fn negative_values_allowed() {
        let x = feasible_point(1, &[c(&[1], -5)], &[]).unwrap();
        assert_eq!(x[0], Rat::int(-5));
    }
}
