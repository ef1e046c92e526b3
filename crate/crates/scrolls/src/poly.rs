//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order, so equality is structural and printing is canonical.
//! Binary operations on polynomials with different variable lists first
//! unify the lists (left operand's order wins, new names appended), which
//! lets base coordinates `t1..tg` and fibre coordinates `x0..xk` mix freely.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Reduced form with positive denominator is
/// maintained by `num-rational` on every operation.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector, ordered by total degree then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise division; `None` if any exponent would go negative.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no zero coefficients are stored, and every exponent vector
/// has length equal to the variable list.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: Rat) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &[String]) -> Self {
        MultiPoly::constant(vars, Rat::one())
    }

    pub fn int(vars: &[String], n: i64) -> Self {
        MultiPoly::constant(vars, rat_int(n))
    }

    /// The variable `name`, which must be in `vars`.
    pub fn var(vars: &[String], name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exp = vec![0; vars.len()];
        exp[idx] = 1;
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(Monomial(exp), Rat::one());
        Ok(p)
    }

    pub fn from_terms(vars: &[String], terms: Vec<(Vec<u32>, Rat)>) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), vars.len());
            p.add_term(Monomial(exp), c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.total_degree() == 0 && c.is_one())
                .unwrap_or(false)
    }

    /// True when no variable actually occurs (degree 0).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The constant value, if `is_constant`.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Total degree counting only the listed variables.
    pub fn degree_in(&self, subset: &[String]) -> u32 {
        let idxs: Vec<usize> = subset
            .iter()
            .filter_map(|v| self.vars.iter().position(|w| w == v))
            .collect();
        self.terms
            .keys()
            .map(|m| idxs.iter().map(|&i| m.0[i]).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Largest coefficient size in bits (numerator plus denominator).
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits() + c.denom().bits())
            .max()
            .unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Unify variable lists: self's order first, unseen names appended.
    pub fn unify_vars(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut vars = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (a.remap(&vars), b.remap(&vars))
    }

    /// Re-express over a superset (or reordering) of the variables.
    /// Variables being dropped must not occur.
    pub fn remap(&self, vars: &[String]) -> MultiPoly {
        if self.vars == vars {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = MultiPoly::zero(vars);
        for (m, c) in &self.terms {
            let mut exp = vec![0u32; vars.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let j = map[i].unwrap_or_else(|| {
                        panic!("remap drops occurring variable {}", self.vars[i])
                    });
                    exp[j] = e;
                }
            }
            out.add_term(Monomial(exp), c.clone());
        }
        out
    }

    /// Re-express over `vars`, extended by whatever variables of `self`
    /// actually occur but are not listed. Non-occurring variables of
    /// `self` are dropped.
    pub fn remap_superset(&self, vars: &[String]) -> MultiPoly {
        let occurring: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        let mut target = vars.to_vec();
        for (i, v) in self.vars.iter().enumerate() {
            if occurring[i] && !target.contains(v) {
                target.push(v.clone());
            }
        }
        if self.vars == target {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|w| w == v))
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut exp = vec![0u32; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    exp[map[i].expect("occurring variable is in target")] = e;
                }
            }
            out.add_term(Monomial(exp), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `var`.
    pub fn differentiate(&self, var: &str) -> Result<MultiPoly> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exp = m.0.clone();
            exp[idx] = e - 1;
            out.add_term(Monomial(exp), c * rat_int(e as i64));
        }
        Ok(out)
    }

    /// Substitute rational values for all occurring variables.
    pub fn evaluate(&self, point: &[(String, Rat)]) -> Result<Rat> {
        let vals: Vec<Option<&Rat>> = self
            .vars
            .iter()
            .map(|v| point.iter().find(|(n, _)| n == v).map(|(_, r)| r))
            .collect();
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let v = vals[i].ok_or_else(|| {
                        Error::MissingAssignment(self.vars[i].clone())
                    })?;
                    for _ in 0..e {
                        term *= v;
                    }
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitute rational values for a subset of the variables; the result
    /// keeps the remaining variables.
    pub fn substitute_partial(&self, point: &[(String, Rat)]) -> MultiPoly {
        let vals: Vec<Option<&Rat>> = self
            .vars
            .iter()
            .map(|v| point.iter().find(|(n, _)| n == v).map(|(_, r)| r))
            .collect();
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| vals[i].is_none())
            .collect();
        let new_vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = MultiPoly::zero(&new_vars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    if let Some(v) = vals[i] {
                        for _ in 0..e {
                            coeff *= v;
                        }
                    }
                }
            }
            let exp: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            out.add_term(Monomial(exp), coeff);
        }
        out
    }

    /// Substitute polynomials for all variables. Used for base changes.
    pub fn substitute(&self, images: &[(String, MultiPoly)]) -> Result<MultiPoly> {
        let imgs: Vec<&MultiPoly> = self
            .vars
            .iter()
            .map(|v| {
                images
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, p)| p)
                    .ok_or_else(|| Error::MissingAssignment(v.clone()))
            })
            .collect::<Result<_>>()?;
        let target_vars: Vec<String> = if let Some(first) = imgs.first() {
            first.vars.to_vec()
        } else {
            Vec::new()
        };
        let mut acc = MultiPoly::zero(&target_vars);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &imgs[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Content: gcd of coefficient numerators over lcm of denominators,
    /// with the sign of the leading (graded-lex greatest) coefficient.
    /// Dividing by it makes coefficients integral, collectively coprime,
    /// and the leading coefficient positive. Returns 1 for the zero poly.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        let lead = self.terms.iter().next_back().unwrap().1;
        if lead.is_negative() {
            content = -content;
        }
        content
    }

    /// Exponent-vector gcd: the largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.0.clone(),
            None => return Monomial::constant(self.vars.len()),
        };
        let mut acc = first;
        for m in it {
            for (a, b) in acc.iter_mut().zip(&m.0) {
                *a = (*a).min(*b);
            }
        }
        Monomial(acc)
    }

    /// Divide out content and monomial content; canonical primitive form.
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let mc = self.monomial_content();
        let mut out = MultiPoly::zero(&self.vars);
        for (m, v) in &self.terms {
            out.terms.insert(m.div(&mc).unwrap(), v / &c);
        }
        out
    }

    /// Canonical form up to function-field units: divide by the rational
    /// content (sign fixed by the leading coefficient) and by the largest
    /// monomial in `unit_vars` dividing every term. Monomials in other
    /// variables are kept.
    pub fn normalized_units(&self, unit_vars: &[String]) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let mc = self.monomial_content();
        let unit_idx: Vec<bool> = self
            .vars
            .iter()
            .map(|v| unit_vars.contains(v))
            .collect();
        let strip = Monomial(
            mc.0.iter()
                .enumerate()
                .map(|(i, &e)| if unit_idx[i] { e } else { 0 })
                .collect(),
        );
        let mut out = MultiPoly::zero(&self.vars);
        for (m, v) in &self.terms {
            out.terms.insert(m.div(&strip).unwrap(), v / &c);
        }
        out
    }

    /// Exact division by `d`; `None` when `d` does not divide exactly.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (mut rem, d) = MultiPoly::unify_vars(self, d);
        let (dm, dc) = d.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut quot = MultiPoly::zero(&rem.vars);
        while !rem.is_zero() {
            let (rm, rc) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
            let qm = rm.div(&dm)?;
            let qc = &rc / &dc;
            quot.add_term(qm.clone(), qc.clone());
            // rem -= (qc * qm) * d
            let mut piece = MultiPoly::zero(&rem.vars);
            for (m, c) in &d.terms {
                piece.add_term(m.mul(&qm), c * &qc);
            }
            rem = &rem - &piece;
        }
        Some(quot)
    }

    /// Coefficient of the monomial with exponent 1 in `var` and 0 elsewhere
    /// among `linear_vars`; i.e. decompose `p = sum_i c_i(rest) * v_i` for a
    /// polynomial homogeneous of degree 1 in `linear_vars`. Returns `None`
    /// if `p` is not of that shape.
    pub fn decompose_linear(&self, linear_vars: &[String]) -> Option<Vec<MultiPoly>> {
        let idxs: Vec<usize> = linear_vars
            .iter()
            .map(|v| self.vars.iter().position(|w| w == v))
            .collect::<Option<_>>()?;
        let rest: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !idxs.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        let rest_pos: Vec<usize> = (0..self.vars.len())
            .filter(|i| !idxs.contains(i))
            .collect();
        let mut coeffs = vec![MultiPoly::zero(&rest); linear_vars.len()];
        for (m, c) in &self.terms {
            let deg: u32 = idxs.iter().map(|&i| m.0[i]).sum();
            if deg != 1 {
                return None;
            }
            let which = idxs.iter().position(|&i| m.0[i] == 1).unwrap();
            let exp: Vec<u32> = rest_pos.iter().map(|&i| m.0[i]).collect();
            coeffs[which].add_term(Monomial(exp), c.clone());
        }
        Some(coeffs)
    }

    /// Iterate terms as (exponents, coefficient) in ascending graded-lex.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = MultiPoly::unify_vars(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::unify_vars(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::unify_vars(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, -c);
        }
        a
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::unify_vars(self, rhs);
        let mut out = MultiPoly::zero(&a.vars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // descending graded-lex, so leading term prints first
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.total_degree() == 0 {
                if abs.denom().is_one() {
                    factors.push(abs.numer().to_string());
                } else {
                    factors.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars[i], e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

pub fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv() -> Vec<String> {
        vars(&["t"])
    }

    #[test]
    fn power_rule() {
        let t = MultiPoly::var(&tv(), "t").unwrap();
        let p = t.pow(3);
        let dp = p.differentiate("t").unwrap();
        let expected = t.pow(2).scale(&rat_int(3));
        assert_eq!(dp, expected);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let five = MultiPoly::int(&tv(), 5);
        assert!(five.differentiate("t").unwrap().is_zero());
    }

    #[test]
    fn product_rule_spot() {
        // d/dt (t^2 * x0) = 2 t * x0, over vars (t, x0)
        let vs = vars(&["t", "x0"]);
        let t = MultiPoly::var(&vs, "t").unwrap();
        let x0 = MultiPoly::var(&vs, "x0").unwrap();
        let p = &t.pow(2) * &x0;
        let dp = p.differentiate("t").unwrap();
        assert_eq!(dp, &t.scale(&rat_int(2)) * &x0);
    }

    #[test]
    fn unify_mixed_vars() {
        let a = MultiPoly::var(&vars(&["t"]), "t").unwrap();
        let b = MultiPoly::var(&vars(&["x0"]), "x0").unwrap();
        let s = &a + &b;
        assert_eq!(s.vars(), &vars(&["t", "x0"])[..]);
        assert_eq!(s.total_degree(), 1);
        assert_eq!(s.num_terms(), 2);
    }

    #[test]
    fn evaluate_total_and_partial() {
        let vs = vars(&["t", "x0"]);
        let t = MultiPoly::var(&vs, "t").unwrap();
        let x0 = MultiPoly::var(&vs, "x0").unwrap();
        let p = &(&t.pow(2) * &x0) + &MultiPoly::one(&vs);
        let v = p
            .evaluate(&[("t".into(), rat_int(2)), ("x0".into(), rat_int(3))])
            .unwrap();
        assert_eq!(v, rat_int(13));
        let q = p.substitute_partial(&[("t".into(), rat_int(2))]);
        assert_eq!(q.vars(), &vars(&["x0"])[..]);
        let w = q.evaluate(&[("x0".into(), rat_int(3))]).unwrap();
        assert_eq!(w, rat_int(13));
        assert!(matches!(
            p.evaluate(&[("t".into(), rat_int(1))]),
            Err(Error::MissingAssignment(_))
        ));
    }

    #[test]
    fn content_and_normalized() {
        let vs = tv();
        let t = MultiPoly::var(&vs, "t").unwrap();
        // -4t^2 - 6t -> content -2 (leading coeff negative), primitive 2t^2 + 3t -> /t -> 2t + 3
        let p = &t.pow(2).scale(&rat_int(-4)) - &t.scale(&rat_int(6));
        assert_eq!(p.content(), rat_int(-2));
        let n = p.normalized();
        let expected = &t.scale(&rat_int(2)) + &MultiPoly::int(&vs, 3);
        assert_eq!(n, expected);
    }

    #[test]
    fn div_exact_multivariate() {
        let vs = vars(&["t", "u"]);
        let t = MultiPoly::var(&vs, "t").unwrap();
        let u = MultiPoly::var(&vs, "u").unwrap();
        let a = &(&t + &u) * &(&t.pow(2) - &u);
        assert_eq!(a.div_exact(&(&t + &u)).unwrap(), &t.pow(2) - &u);
        assert!(a.div_exact(&(&t - &u)).is_none());
    }

    #[test]
    fn decompose_linear_forms() {
        let vs = vars(&["t", "x0", "x1"]);
        let t = MultiPoly::var(&vs, "t").unwrap();
        let x0 = MultiPoly::var(&vs, "x0").unwrap();
        let x1 = MultiPoly::var(&vs, "x1").unwrap();
        let p = &(&t * &x0) + &x1.scale(&rat_int(2));
        let c = p
            .decompose_linear(&vars(&["x0", "x1"]))
            .expect("x-linear");
        assert_eq!(c[0], MultiPoly::var(&vars(&["t"]), "t").unwrap());
        assert_eq!(c[1], MultiPoly::int(&vars(&["t"]), 2));
        // not linear: x0^2
        assert!(x0.pow(2).decompose_linear(&vars(&["x0", "x1"])).is_none());
    }

    #[test]
    fn display_is_canonical() {
        let vs = vars(&["t1", "t2"]);
        let t1 = MultiPoly::var(&vs, "t1").unwrap();
        let t2 = MultiPoly::var(&vs, "t2").unwrap();
        let p = &t1.pow(2).scale(&rat_int(3)) - &t2.scale(&rat(1, 2));
        assert_eq!(p.to_string(), "3*t1^2 - 1/2*t2");
    }
}
