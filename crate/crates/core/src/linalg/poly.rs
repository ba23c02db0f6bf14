//! Sparse multivariate polynomials over ℚ(i) and polynomial self-maps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{fmt_qi, Scalar, QI};
use super::LinalgError;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, QI>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: QI) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, QI::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, QI::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, QI)>) -> Result<Self, LinalgError> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.len() != nvars {
                return Err(LinalgError::DimensionMismatch {
                    left: nvars,
                    right: m.len(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: QI) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QI)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> QI {
        self.terms.get(m).cloned().unwrap_or_else(QI::zero)
    }

    pub fn constant_term(&self) -> QI {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &QI) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x.clone() * c.clone());
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[QI]) -> Result<QI, LinalgError> {
        if point.len() != self.nvars {
            return Err(LinalgError::DimensionMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = QI::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x.clone();
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `subs[i]` for variable `i`. All substitutes must share a variable count.
    pub fn compose(&self, subs: &[Poly]) -> Result<Poly, LinalgError> {
        if subs.len() != self.nvars {
            return Err(LinalgError::DimensionMismatch {
                left: self.nvars,
                right: subs.len(),
            });
        }
        let target = subs.first().map_or(0, Poly::nvars);
        if let Some(bad) = subs.iter().find(|s| s.nvars != target) {
            return Err(LinalgError::DimensionMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(target), s.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-indexes variables into a ring with `nvars` variables: variable `i`
    /// of `self` becomes variable `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut p = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut nm = vec![0; nvars];
            for (i, &e) in m.iter().enumerate() {
                nm[map[i]] += e;
            }
            p.add_term(nm, c.clone());
        }
        p
    }

    /// Dense coefficients `[c_0, c_1, ...]` of a univariate polynomial.
    pub fn to_dense(&self) -> Result<Vec<QI>, LinalgError> {
        if self.nvars != 1 {
            return Err(LinalgError::NotUnivariate(self.nvars));
        }
        let deg = self.degree_in(0) as usize;
        let mut v = vec![QI::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            v[m[0] as usize] = c.clone();
        }
        Ok(v)
    }

    pub fn from_dense(coeffs: &[QI]) -> Poly {
        let mut p = Poly::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names.get(i).map_or_else(|| format!("x{}", i + 1), |s| s.to_string());
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let coef = fmt_qi(c);
            let needs_paren = !c.re.is_zero() && !c.im.is_zero();
            let term = match (mono.is_empty(), coef.as_str()) {
                (true, _) => coef.clone(),
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                (false, _) if needs_paren => format!("({coef})*{}", mono.join("*")),
                (false, _) => format!("{coef}*{}", mono.join("*")),
            };
            if idx > 0 && !term.starts_with('-') {
                out.push_str(" + ");
            } else if idx > 0 {
                out.push_str(" - ");
                out.push_str(&term[1..]);
                continue;
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
        let mut p = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                p.add_term(m, ca.clone() * cb.clone());
            }
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(&-QI::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

/// A polynomial map `F^src -> F^target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    src: usize,
    comps: Vec<Poly>,
}

impl PolyMap {
    pub fn new(src: usize, comps: Vec<Poly>) -> Result<Self, LinalgError> {
        if let Some(bad) = comps.iter().find(|p| p.nvars() != src) {
            return Err(LinalgError::DimensionMismatch {
                left: src,
                right: bad.nvars(),
            });
        }
        Ok(PolyMap { src, comps })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap {
            src: n,
            comps: (0..n).map(|i| Poly::var(n, i)).collect(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.src
    }

    pub fn target_dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn eval(&self, point: &[QI]) -> Result<Vec<QI>, LinalgError> {
        self.comps.iter().map(|p| p.eval(point)).collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap, LinalgError> {
        if inner.target_dim() != self.src {
            return Err(LinalgError::DimensionMismatch {
                left: self.src,
                right: inner.target_dim(),
            });
        }
        let comps = self
            .comps
            .iter()
            .map(|p| p.compose(&inner.comps))
            .collect::<Result<_, _>>()?;
        Ok(PolyMap { src: inner.src, comps })
    }

    /// Keeps only the listed components, in order.
    pub fn select(&self, idx: &[usize]) -> PolyMap {
        PolyMap {
            src: self.src,
            comps: idx.iter().map(|&i| self.comps[i].clone()).collect(),
        }
    }

    pub fn embed(&self, nvars: usize, map: &[usize]) -> PolyMap {
        PolyMap {
            src: nvars,
            comps: self.comps.iter().map(|p| p.embed(nvars, map)).collect(),
        }
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.display_with(names)).collect();
        format!("({})", parts.join(", "))
    }
}

pub fn poly_compose(outer: &PolyMap, inner: &PolyMap) -> Result<PolyMap, LinalgError> {
    outer.compose(inner)
}

/// Determinant of a small square matrix of polynomials by cofactor expansion.
pub fn poly_det(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::one(nvars),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly::zero(nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &poly_det(&minor, nvars);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Dense univariate arithmetic, coefficients low degree first.
pub mod univariate {
    use super::*;

    pub fn trim(mut p: Vec<QI>) -> Vec<QI> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[QI]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }

    pub fn add(a: &[QI], b: &[QI]) -> Vec<QI> {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| a.get(i).cloned().unwrap_or_else(QI::zero) + b.get(i).cloned().unwrap_or_else(QI::zero))
            .collect())
    }

    pub fn sub(a: &[QI], b: &[QI]) -> Vec<QI> {
        let nb: Vec<QI> = b.iter().map(|c| -c.clone()).collect();
        add(a, &nb)
    }

    pub fn mul(a: &[QI], b: &[QI]) -> Vec<QI> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![QI::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        trim(out)
    }

    /// Euclidean division `a = q·b + r` with `deg r < deg b`.
    pub fn div_rem(a: &[QI], b: &[QI]) -> Result<(Vec<QI>, Vec<QI>), LinalgError> {
        let b = trim(b.to_vec());
        let db = degree(&b).ok_or(LinalgError::DivisionByZero)?;
        let lead = b[db].clone();
        let mut r = trim(a.to_vec());
        let mut quot = vec![QI::zero(); r.len().saturating_sub(db).max(1)];
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = r[dr].clone() / lead.clone();
            quot[dr - db] = c.clone();
            for (k, bk) in b.iter().enumerate() {
                r[dr - db + k] = r[dr - db + k].clone() - c.clone() * bk.clone();
            }
            r = trim(r);
        }
        Ok((trim(quot), r))
    }

    /// `(g, s, t)` from [`ext_gcd`].
    pub type Bezout = (Vec<QI>, Vec<QI>, Vec<QI>);

    /// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic
    /// (or zero when both inputs vanish), `deg s < deg b` and `deg t < deg a`
    /// whenever both degrees are positive.
    pub fn ext_gcd(a: &[QI], b: &[QI]) -> Result<Bezout, LinalgError> {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![QI::one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![QI::one()]);
        while degree(&r1).is_some() {
            let (q, r) = div_rem(&r0, &r1)?;
            let s2 = sub(&s0, &mul(&q, &s1));
            let t2 = sub(&t0, &mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match degree(&r0) {
            None => Ok((Vec::new(), s0, t0)),
            Some(d) => {
                let inv = QI::one() / r0[d].clone();
                let norm = |p: &[QI]| trim(p.iter().map(|c| c.clone() * inv.clone()).collect());
                Ok((norm(&r0), norm(&s0), norm(&t0)))
            }
        }
    }

    pub fn gcd(a: &[QI], b: &[QI]) -> Result<Vec<QI>, LinalgError> {
        Ok(ext_gcd(a, b)?.0)
    }

    pub fn from_int(cs: &[i64]) -> Vec<QI> {
        trim(cs.iter().map(|&c| QI::from_int(c)).collect())
    }
}
