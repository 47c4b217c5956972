//! Commutative Laurent polynomials in `t`, `(u, v)` or `(u, v, w)` with exact
//! rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vars {
    T,
    UV,
    UVW,
}

impl Vars {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            Vars::T => &["t"],
            Vars::UV => &["u", "v"],
            Vars::UVW => &["u", "v", "w"],
        }
    }

    pub fn len(self) -> usize {
        self.names().len()
    }

    pub fn from_names(names: &[String]) -> Option<Vars> {
        let v: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        match v.as_slice() {
            ["t"] => Some(Vars::T),
            ["u", "v"] => Some(Vars::UV),
            ["u", "v", "w"] => Some(Vars::UVW),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Vec<i32>, Rat>,
}

impl Poly {
    pub fn zero(vars: Vars) -> Poly {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: Vars) -> Poly {
        Poly::monomial(vars, &vec![0; vars.len()], Rat::ONE)
    }

    pub fn constant(vars: Vars, c: Rat) -> Poly {
        Poly::monomial(vars, &vec![0; vars.len()], c)
    }

    pub fn monomial(vars: Vars, exps: &[i32], c: Rat) -> Poly {
        assert_eq!(exps.len(), vars.len());
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    /// The variable with index `i` in the signature.
    pub fn var(vars: Vars, i: usize) -> Poly {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Poly::monomial(vars, &e, Rat::ONE)
    }

    /// Polynomial in `t` from ascending coefficients.
    pub fn from_coeffs(cs: &[i64]) -> Poly {
        let mut p = Poly::zero(Vars::T);
        for (i, &c) in cs.iter().enumerate() {
            p.add_term(&[i as i32], &Rat::int(c));
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or(Rat::ZERO)
    }

    pub fn add_term(&mut self, exps: &[i32], c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.to_vec()).or_insert(Rat::ZERO);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(exps);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        assert_eq!(self.vars, o.vars, "variable signatures differ");
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e, c);
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&Rat::int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        let mut r = Poly::zero(self.vars);
        if c.is_zero() {
            return r;
        }
        for (e, x) in &self.terms {
            r.terms.insert(e.clone(), x * c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        assert_eq!(self.vars, o.vars, "variable signatures differ");
        let mut r = Poly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(&e, &(c1 * c2));
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.vars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Monomial substitution: variable `i` is replaced by the monomial with
    /// exponent vector `images[i]` in the signature `target`.
    pub fn subst(&self, target: Vars, images: &[Vec<i32>]) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let mut r = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                assert_eq!(images[i].len(), target.len());
                for (j, &m) in images[i].iter().enumerate() {
                    ne[j] += k * m;
                }
            }
            r.add_term(&ne, c);
        }
        r
    }

    /// Multiplies by the monomial with exponent vector `e`.
    pub fn shift(&self, e: &[i32]) -> Poly {
        self.mul(&Poly::monomial(self.vars, e, Rat::ONE))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Largest total degree of a term, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// Coefficient of `t^i` for a polynomial in `t`.
    pub fn t_coeff(&self, i: i32) -> Rat {
        assert_eq!(self.vars, Vars::T);
        self.coeff(&[i])
    }

    /// `t^n p(1/t)` for a polynomial in `t`.
    pub fn reverse(&self, n: i32) -> Poly {
        assert_eq!(self.vars, Vars::T);
        self.subst(Vars::T, &[vec![-1]]).shift(&[n])
    }

    /// Whether `p(t) = t^n p(1/t)`.
    pub fn is_symmetric(&self, n: i32) -> bool {
        *self == self.reverse(n)
    }

    /// Whether the coefficient sequence of a polynomial in `t` weakly rises
    /// then weakly falls.
    pub fn is_unimodal(&self) -> bool {
        assert_eq!(self.vars, Vars::T);
        let (Some(lo), Some(hi)) = (self.min_degree(), self.degree()) else {
            return true;
        };
        let cs: Vec<Rat> = (lo..=hi).map(|i| self.t_coeff(i)).collect();
        let mut i = 1;
        while i < cs.len() && cs[i] >= cs[i - 1] {
            i += 1;
        }
        while i < cs.len() && cs[i] <= cs[i - 1] {
            i += 1;
        }
        i >= cs.len()
    }

    /// Terms in graded-lex order: by total degree, then exponent tuple.
    pub fn sorted_terms(&self) -> Vec<(Vec<i32>, Rat)> {
        let mut v: Vec<(Vec<i32>, Rat)> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| a.0.cmp(&b.0))
        });
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms = serde_json::Map::new();
        for (e, c) in self.sorted_terms() {
            let key = format!("[{}]", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            terms.insert(key, serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({ "vars": self.vars.names(), "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Poly> {
        let names: Vec<String> = serde_json::from_value(v.get("vars")?.clone()).ok()?;
        let vars = Vars::from_names(&names)?;
        let mut p = Poly::zero(vars);
        for (k, c) in v.get("terms")?.as_object()? {
            let e: Vec<i32> = serde_json::from_str(k).ok()?;
            if e.len() != vars.len() {
                return None;
            }
            let c: Rat = c.as_str()?.parse().ok()?;
            p.add_term(&e, &c);
        }
        Some(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        for (i, (e, c)) in terms.iter().enumerate() {
            let mono: String = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k != 0)
                .map(|(k, n)| if *k == 1 { n.to_string() } else { format!("{n}^{k}") })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if i > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else if a.is_integer() {
                write!(f, "{a}{mono}")?;
            } else {
                write!(f, "({a}){mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
