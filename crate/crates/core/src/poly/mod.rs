//! Sparse multivariate polynomials and monomial orders.

pub mod groebner;
pub mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

pub use groebner::{buchberger, normal_form, quotient_monomial_basis};
pub use parse::parse_poly;

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the only variable occurring, if the monomial is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// All monomials in `nvars` variables of exactly degree `d`, in
    /// descending lex order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial::new(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            return if d == 0 {
                vec![Monomial::one(0)]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        rec(0, d, &mut vec![0; nvars], &mut out);
        out
    }
}

/// Term orders. Variables are ordered `x0 > x1 > ...`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    Degrevlex,
    Deglex,
    Lex,
}

impl MonomialOrder {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "degrevlex" | "grevlex" => Ok(MonomialOrder::Degrevlex),
            "deglex" | "grlex" => Ok(MonomialOrder::Deglex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::Parse(format!("unknown monomial order `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Degrevlex => "degrevlex",
            MonomialOrder::Deglex => "deglex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let lex = || a.exps.cmp(&b.exps);
        match self {
            MonomialOrder::Lex => lex(),
            MonomialOrder::Deglex => a.degree().cmp(&b.degree()).then_with(lex),
            MonomialOrder::Degrevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Polynomial with coefficients in `F`, stored as a map from monomial to
/// nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::term(field, c, Monomial::one(nvars))
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        Self::term(field, field.one(), Monomial::var(nvars, i))
    }

    pub fn term(field: &F, c: F::Elem, m: Monomial) -> Self {
        let mut p = Self::zero(m.nvars());
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(field: &F, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(field, m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&F::Elem> {
        self.terms.get(m)
    }

    pub fn constant_term(&self, field: &F) -> F::Elem {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, field: &F, m: Monomial, c: F::Elem) {
        if field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = field.add(old, &c);
                if field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), field.neg(c));
        }
        out
    }

    pub fn neg(&self, field: &F) -> Poly<F> {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Poly<F> {
        if field.is_zero(c) {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, field: &F, c: &F::Elem, mono: &Monomial) -> Poly<F> {
        if field.is_zero(c) {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(field, m1.mul(m2), field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, field: &F, e: u32) -> Poly<F> {
        let mut out = Self::one(field, self.nvars);
        for _ in 0..e {
            out = out.mul(field, self);
        }
        out
    }

    /// Drops every term of degree `>= d`.
    pub fn truncate(&self, d: u32) -> Poly<F> {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading(order).map(|(m, _)| m)
    }

    pub fn make_monic(&self, field: &F, order: MonomialOrder) -> Poly<F> {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = field.inv(c).expect("leading coefficient is nonzero");
                self.scale(field, &inv)
            }
        }
    }

    /// Terms sorted in decreasing order.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &F::Elem)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        t
    }

    pub fn format(&self, field: &F, names: &[String], order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let mut coef = field.format(c);
            let negative = coef.starts_with('-');
            if negative {
                coef.remove(0);
            }
            if i == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&coef);
            } else {
                if coef != "1" {
                    s.push_str(&coef);
                    s.push('*');
                }
                s.push_str(&m.format(names));
            }
        }
        s
    }
}

/// Wraps a polynomial with its variable names for display.
pub struct PolyDisplay<'a, F: Field> {
    pub poly: &'a Poly<F>,
    pub field: &'a F,
    pub names: &'a [String],
    pub order: MonomialOrder,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.format(self.field, self.names, self.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn names(n: usize) -> Vec<String> {
        ["x", "y", "z", "w"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn degrevlex_orders_variables_and_degrees() {
        let o = MonomialOrder::Degrevlex;
        let x = Monomial::new(vec![1, 0, 0]);
        let y = Monomial::new(vec![0, 1, 0]);
        let z = Monomial::new(vec![0, 0, 1]);
        assert_eq!(o.cmp(&x, &y), Ordering::Greater);
        assert_eq!(o.cmp(&y, &z), Ordering::Greater);
        // x*z < y^2 in degrevlex, but x*z > y^2 in deglex
        let xz = Monomial::new(vec![1, 0, 1]);
        let y2 = Monomial::new(vec![0, 2, 0]);
        assert_eq!(o.cmp(&xz, &y2), Ordering::Less);
        assert_eq!(MonomialOrder::Deglex.cmp(&xz, &y2), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&x, &y2), Ordering::Greater);
    }

    #[test]
    fn arithmetic_and_format() {
        let f = PrimeField::new(7).unwrap();
        let x = Poly::var(&f, 2, 0);
        let y = Poly::var(&f, 2, 1);
        let p = x.add(&f, &y).pow(&f, 2);
        assert_eq!(p.len(), 3);
        let s = p.format(&f, &names(2), MonomialOrder::Degrevlex);
        assert_eq!(s, "x^2 + 2*x*y + y^2");
        assert!(p.sub(&f, &p).is_zero());
        assert_eq!(
            Poly::<PrimeField>::zero(2).format(&f, &names(2), MonomialOrder::Lex),
            "0"
        );
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 3).len(), 4);
        assert_eq!(Monomial::all_of_degree(0, 0).len(), 1);
    }
}
