//! Noncommutative polynomials in `{a, b}` and `{c, d}`, the tensor alphabet
//! `c'd' | cd`, the `ab -> cd` conversion and the maps `eta`, `eta'`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::linalg::{Mat, Subspace};
use super::poly::{Poly, Vars};
use super::rational::Rat;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    Ab,
    Cd,
}

impl Alphabet {
    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Ab => "ab",
            Alphabet::Cd => "cd",
        }
    }

    fn letters(self) -> [char; 2] {
        match self {
            Alphabet::Ab => ['a', 'b'],
            Alphabet::Cd => ['c', 'd'],
        }
    }
}

/// Degree of a word: letters `a`, `b`, `c` weigh 1 and `d` weighs 2.
pub fn word_degree(w: &str) -> usize {
    w.chars().map(|ch| if ch == 'd' { 2 } else { 1 }).sum()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NcPoly {
    alphabet: Alphabet,
    terms: BTreeMap<String, Rat>,
}

impl NcPoly {
    pub fn zero(alphabet: Alphabet) -> NcPoly {
        NcPoly { alphabet, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Alphabet) -> NcPoly {
        NcPoly::word(alphabet, "", Rat::ONE)
    }

    pub fn word(alphabet: Alphabet, w: &str, c: Rat) -> NcPoly {
        assert!(w.chars().all(|ch| alphabet.letters().contains(&ch)), "word {w:?} outside alphabet");
        let mut p = NcPoly::zero(alphabet);
        p.add_term(w, &c);
        p
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&String, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &str) -> Rat {
        self.terms.get(w).cloned().unwrap_or(Rat::ZERO)
    }

    pub fn add_term(&mut self, w: &str, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.to_string()).or_insert(Rat::ZERO);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(w);
        }
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        assert_eq!(self.alphabet, o.alphabet);
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w, c);
        }
        r
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        self.add(&o.scale(&Rat::int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> NcPoly {
        let mut r = NcPoly::zero(self.alphabet);
        for (w, x) in &self.terms {
            r.add_term(w, &(x * c));
        }
        r
    }

    /// Concatenation product.
    pub fn mul(&self, o: &NcPoly) -> NcPoly {
        assert_eq!(self.alphabet, o.alphabet);
        let mut r = NcPoly::zero(self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(&format!("{w1}{w2}"), &(c1 * c2));
            }
        }
        r
    }

    /// Homogeneous components keyed by degree.
    pub fn by_degree(&self) -> BTreeMap<usize, NcPoly> {
        let mut m: BTreeMap<usize, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            m.entry(word_degree(w)).or_insert_with(|| NcPoly::zero(self.alphabet)).add_term(w, c);
        }
        m
    }

    /// Words sorted by degree, then lexicographically.
    fn sorted_terms(&self) -> Vec<(&String, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| word_degree(a.0).cmp(&word_degree(b.0)).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms = serde_json::Map::new();
        for (w, c) in self.sorted_terms() {
            terms.insert(w.clone(), serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({ "alphabet": self.alphabet.name(), "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<NcPoly> {
        let alphabet = match v.get("alphabet")?.as_str()? {
            "ab" => Alphabet::Ab,
            "cd" => Alphabet::Cd,
            _ => return None,
        };
        let mut p = NcPoly::zero(alphabet);
        for (w, c) in v.get("terms")?.as_object()? {
            if !w.chars().all(|ch| alphabet.letters().contains(&ch)) {
                return None;
            }
            p.add_term(w, &c.as_str()?.parse().ok()?);
        }
        Some(p)
    }
}

fn fmt_word(w: &str, primed: bool) -> String {
    if w.is_empty() {
        return "1".into();
    }
    // collapse runs into powers: "ccd" -> "c^2d"
    let mut out = String::new();
    let chars: Vec<char> = w.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut j = i;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        out.push(chars[i]);
        if primed {
            out.push('\'');
        }
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

fn fmt_coeff_word(f: &mut fmt::Formatter<'_>, first: bool, c: &Rat, word: &str) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    if !first {
        write!(f, "{}", if neg { "-" } else { "+" })?;
    } else if neg {
        write!(f, "-")?;
    }
    if a.is_one() {
        write!(f, "{word}")
    } else if a.is_integer() {
        write!(f, "{a}{word}")
    } else {
        write!(f, "({a}){word}")
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let word = fmt_word(w, false);
            if w.is_empty() {
                fmt_coeff_word(f, i == 0, c, "")?;
                if c.abs().is_one() {
                    write!(f, "1")?;
                }
            } else {
                fmt_coeff_word(f, i == 0, c, &word)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Elements of `Q<c', d'> (x) Q<c, d>`, stored as pairs of cd-words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Tensor {
    terms: BTreeMap<(String, String), Rat>,
}

impl Tensor {
    pub fn zero() -> Tensor {
        Tensor::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(String, String), &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: &str, right: &str, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let key = (left.to_string(), right.to_string());
        let e = self.terms.entry(key.clone()).or_insert(Rat::ZERO);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds `f (x) g`.
    pub fn add_product(&mut self, f: &NcPoly, g: &NcPoly) {
        assert_eq!(f.alphabet, Alphabet::Cd);
        assert_eq!(g.alphabet, Alphabet::Cd);
        for (w1, c1) in &f.terms {
            for (w2, c2) in &g.terms {
                self.add_term(w1, w2, &(c1 * c2));
            }
        }
    }

    fn sorted_terms(&self) -> Vec<(&(String, String), &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da = word_degree(&a.0 .0) + word_degree(&a.0 .1);
            let db = word_degree(&b.0 .0) + word_degree(&b.0 .1);
            da.cmp(&db).then_with(|| a.0.cmp(b.0))
        });
        v
    }

    fn key(l: &str, r: &str) -> String {
        let lk: String = if l.is_empty() { "1".into() } else { l.chars().flat_map(|ch| [ch, '\'']).collect() };
        let rk = if r.is_empty() { "1".to_string() } else { r.to_string() };
        format!("{lk}|{rk}")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms = serde_json::Map::new();
        for ((l, r), c) in self.sorted_terms() {
            terms.insert(Tensor::key(l, r), serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({ "alphabet": "c'd'|cd", "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Tensor> {
        if v.get("alphabet")?.as_str()? != "c'd'|cd" {
            return None;
        }
        let mut t = Tensor::zero();
        for (k, c) in v.get("terms")?.as_object()? {
            let (l, r) = k.split_once('|')?;
            let l = if l == "1" { String::new() } else { l.replace('\'', "") };
            let r = if r == "1" { String::new() } else { r.to_string() };
            if !l.chars().chain(r.chars()).all(|ch| ch == 'c' || ch == 'd') {
                return None;
            }
            t.add_term(&l, &r, &c.as_str()?.parse().ok()?);
        }
        Some(t)
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((l, r), c)) in terms.into_iter().enumerate() {
            let word = format!("{}⊗{}", fmt_word(l, true), fmt_word(r, false));
            fmt_coeff_word(f, i == 0, c, &word)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Substitutes `c -> a + b`, `d -> ab + ba`.
pub fn cd_to_ab(phi: &NcPoly) -> NcPoly {
    assert_eq!(phi.alphabet, Alphabet::Cd);
    let c = NcPoly::word(Alphabet::Ab, "a", Rat::ONE).add(&NcPoly::word(Alphabet::Ab, "b", Rat::ONE));
    let d = NcPoly::word(Alphabet::Ab, "ab", Rat::ONE).add(&NcPoly::word(Alphabet::Ab, "ba", Rat::ONE));
    let mut out = NcPoly::zero(Alphabet::Ab);
    for (w, coef) in &phi.terms {
        let mut p = NcPoly::one(Alphabet::Ab);
        for ch in w.chars() {
            p = p.mul(if ch == 'c' { &c } else { &d });
        }
        out = out.add(&p.scale(coef));
    }
    out
}

/// All cd-words of degree `n`, in lexicographic order.
pub fn cd_words(n: usize) -> Vec<String> {
    fn rec(n: usize, cur: &mut String, out: &mut Vec<String>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        cur.push('c');
        rec(n - 1, cur, out);
        cur.pop();
        if n >= 2 {
            cur.push('d');
            rec(n - 2, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut String::new(), &mut out);
    out
}

/// All ab-words of length `n`, in lexicographic order.
pub fn ab_words(n: usize) -> Vec<String> {
    (0..1usize << n)
        .map(|m| (0..n).map(|i| if m >> (n - 1 - i) & 1 == 0 { 'a' } else { 'b' }).collect())
        .collect()
}

/// The unique `Phi` with `Phi(a+b, ab+ba) = psi`, solved degree by degree.
pub fn ab_to_cd(psi: &NcPoly) -> Result<NcPoly, Error> {
    assert_eq!(psi.alphabet, Alphabet::Ab);
    let mut out = NcPoly::zero(Alphabet::Cd);
    for (n, part) in psi.by_degree() {
        let words = ab_words(n);
        let index: HashMap<&str, usize> = words.iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
        let cds = cd_words(n);
        let cols: Vec<Vec<Rat>> = cds
            .iter()
            .map(|w| {
                let e = cd_to_ab(&NcPoly::word(Alphabet::Cd, w, Rat::ONE));
                let mut v = vec![Rat::ZERO; words.len()];
                for (aw, c) in &e.terms {
                    v[index[aw.as_str()]] = c.clone();
                }
                v
            })
            .collect();
        let a = Mat::from_cols(&cols, words.len());
        let mut b = vec![Rat::ZERO; words.len()];
        for (w, c) in &part.terms {
            b[index[w.as_str()]] = c.clone();
        }
        match a.solve(&b) {
            Some((x, _)) => {
                for (w, c) in cds.iter().zip(&x) {
                    out.add_term(w, c);
                }
            }
            None => {
                let span = Subspace::span(&a);
                let r = span.residual(&b);
                let i = r.iter().position(|x| !x.is_zero()).expect("infeasible system has a residual");
                return Err(Error::NotCdExpressible { word: words[i].clone() });
            }
        }
    }
    Ok(out)
}

/// `eta` on a single cd-word.
pub fn eta_word(w: &str) -> Poly {
    let t = Vars::T;
    let mut p = Poly::one(t);
    let mut k: u32 = 0;
    for ch in w.chars() {
        let f = if ch == 'c' {
            Poly::one(t).add(&Poly::monomial(t, &[1 << k], Rat::ONE))
        } else {
            Poly::monomial(t, &[1 << k], Rat::ONE).add(&Poly::monomial(t, &[1 << (k + 1)], Rat::ONE))
        };
        p = p.mul(&f);
        k += if ch == 'c' { 1 } else { 2 };
    }
    p
}

pub fn eta(phi: &NcPoly) -> Poly {
    assert_eq!(phi.alphabet, Alphabet::Cd);
    let mut r = Poly::zero(Vars::T);
    for (w, c) in &phi.terms {
        r = r.add(&eta_word(w).scale(c));
    }
    r
}

/// `eta'(f (x) g) = v^(2^deg f - 1) eta(f; u/v) eta(g; (uv)^(2^deg f))`.
pub fn eta_prime(omega: &Tensor) -> Result<Poly, Error> {
    let uv = Vars::UV;
    let mut r = Poly::zero(uv);
    for ((l, rw), c) in &omega.terms {
        let k = word_degree(l) as u32;
        let p = 1i32 << k;
        let left = eta_word(l).subst(uv, &[vec![1, -1]]).shift(&[0, p - 1]);
        let right = eta_word(rw).subst(uv, &[vec![p, p]]);
        let term = left.mul(&right);
        if !term.is_polynomial() {
            return Err(Error::NegativeExponentResidue { left: l.clone(), right: rw.clone() });
        }
        r = r.add(&term.scale(c));
    }
    Ok(r)
}
