use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{self, Scalar};

/// Exponent vector of a monomial `x_1^{a_1} ⋯ x_m^{a_m}`.
pub type Exponents = Vec<u16>;

/// Sparse polynomial in `x_1..x_m` with exact coefficients. No zero terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    m: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

fn total(e: &[u16]) -> usize {
    e.iter().map(|&a| a as usize).sum()
}

impl Poly {
    pub fn zero(m: usize) -> Self {
        Poly {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(m);
        p.add_term(vec![0; m], c);
        p
    }

    pub fn one(m: usize) -> Self {
        Poly::constant(m, Scalar::one())
    }

    /// The coordinate `x_{i+1}`.
    pub fn var(m: usize, i: usize) -> Self {
        assert!(i < m, "variable index {i} out of range for m = {m}");
        let mut e = vec![0; m];
        e[i] = 1;
        Poly::monomial(e, Scalar::one())
    }

    /// `c · x^e`; the dimension is `e.len()`.
    pub fn monomial(e: Exponents, c: Scalar) -> Self {
        let mut p = Poly::zero(e.len());
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Scalar)>>(m: usize, terms: I) -> Self {
        let mut p = Poly::zero(m);
        for (e, c) in terms {
            assert_eq!(e.len(), m, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u16]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| total(e) == 0)
    }

    pub fn constant_part(&self) -> Scalar {
        self.coeff(&vec![0; self.m])
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| total(e)).max()
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Poly::zero(self.m);
        }
        Poly {
            m: self.m,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `∂/∂x_{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Poly::zero(self.m);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * Scalar::from_integer(e[i].into()));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.m, "evaluation point dimension");
        let mut s = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &a) in point.iter().zip(e) {
                for _ in 0..a {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    /// Canonical rendering: graded order, highest degree first.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| total(b).cmp(&total(a)).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = scalar::is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(e);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&mono),
                (false, true) => out.push_str(&scalar::render(&abs)),
                (false, false) => {
                    out.push_str(&scalar::render(&abs));
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn render_monomial(e: &[u16]) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, a)),
        }
    }
    parts.join("*")
}

/// All exponent vectors in `m` variables of total degree at most `d`, in
/// graded order.
pub fn monomials_up_to(m: usize, d: usize) -> Vec<Exponents> {
    fn rec(m: usize, left: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur.push(a as u16);
            rec(m, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d, &mut Vec::with_capacity(m), &mut out);
    out.sort_by(|a, b| total(a).cmp(&total(b)).then_with(|| b.cmp(a)));
    out
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.pretty())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.m, rhs.m, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.m, rhs.m, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            m: self.m,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.m, rhs.m, "polynomial dimension mismatch");
        let mut out = Poly::zero(self.m);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                let e: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, c * d);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn arithmetic_and_partials() {
        let x1 = Poly::var(2, 0);
        let x2 = Poly::var(2, 1);
        let p = &(&x1 * &x1) + &(&x1 * &x2).scale(&int(3));
        assert_eq!(p.pretty(), "x1^2 + 3*x1*x2");
        assert_eq!(p.partial(0).pretty(), "2*x1 + 3*x2");
        assert_eq!(p.partial(1).pretty(), "3*x1");
        assert!((&p - &p).is_zero());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&[int(2), int(-1)]), int(-2));
        assert_eq!((-&Poly::one(2)).pretty(), "-1");
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_up_to(4, 2).len(), 15);
        assert_eq!(monomials_up_to(2, 0), vec![vec![0, 0]]);
    }
}
