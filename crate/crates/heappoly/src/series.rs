//! Exact truncated formal series in `t^-1` over the rationals, plus sparse
//! polynomials in edge variables.
//!
//! A [`TruncatedSeries`] stores coefficients by *codegree*: the coefficient at
//! index `d` is the coefficient of `t^-d`. All arithmetic is exact; nothing is
//! ever rounded and coefficients beyond the truncation order are dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for integers as rationals.
pub fn rint(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Renders a rational as `p` or `p/q` (lowest terms, positive denominator).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` into a rational.
pub fn rat_from_str(s: &str) -> Result<Rat, SeriesError> {
    let parse = |t: &str| -> Result<BigInt, SeriesError> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| SeriesError::BadRational(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse(s)?)),
        Some((p, q)) => {
            let den = parse(q)?;
            if den.is_zero() {
                return Err(SeriesError::BadRational(s.to_string()));
            }
            Ok(Rat::new(parse(p)?, den))
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division requires a series with non-zero constant term")]
    DivisionByNonUnit,
    #[error("log requires constant term 1")]
    LogNeedsUnitConstant,
    #[error("exp requires constant term 0")]
    ExpNeedsZeroConstant,
    #[error("root requires constant term 1")]
    RootNeedsUnitConstant,
    #[error("polynomial is not monic of the stated degree")]
    NonMonic,
    #[error("malformed rational literal: {0}")]
    BadRational(String),
    #[error("malformed series JSON: {0}")]
    BadJson(String),
}

/// Formal series `sum_d c_d t^-d` truncated at codegree `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rat::one();
        s
    }

    /// The single term `c * t^-d`; terms beyond the order are dropped.
    pub fn monomial(order: usize, d: usize, c: Rat) -> Self {
        let mut s = Self::zero(order);
        if d <= order {
            s.coeffs[d] = c;
        }
        s
    }

    pub fn from_coeffs(order: usize, coeffs: &[(usize, Rat)]) -> Self {
        let mut s = Self::zero(order);
        for (d, c) in coeffs {
            if *d <= order {
                s.coeffs[*d] = c.clone();
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `t^-d`; zero beyond the truncation order is *not*
    /// implied, so asking past the order is a caller bug.
    pub fn coeff(&self, d: usize) -> &Rat {
        assert!(d <= self.order, "codegree {d} beyond truncation order {}", self.order);
        &self.coeffs[d]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Copies into a (possibly shorter) truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut s = Self::zero(order);
        for d in 0..=order.min(self.order) {
            s.coeffs[d] = self.coeffs[d].clone();
        }
        s
    }

    pub fn add_assign_term(&mut self, d: usize, c: &Rat) {
        if d <= self.order {
            self.coeffs[d] += c;
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order.min(other.order)
    }

    pub fn mul_series(&self, other: &Self) -> Self {
        let order = self.common_order(other);
        let mut out = Self::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = &self.coeffs[i] * &other.coeffs[j];
                out.coeffs[i + j] += prod;
            }
        }
        out
    }

    /// Exact long division; the divisor must have non-zero constant term.
    pub fn div_series(&self, other: &Self) -> Result<Self, SeriesError> {
        if other.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionByNonUnit);
        }
        let order = self.common_order(other);
        let mut out = Self::zero(order);
        for d in 0..=order {
            let mut acc = self.coeffs[d].clone();
            for j in 1..=d {
                if other.coeffs[j].is_zero() || out.coeffs[d - j].is_zero() {
                    continue;
                }
                acc -= &other.coeffs[j] * &out.coeffs[d - j];
            }
            out.coeffs[d] = acc / &other.coeffs[0];
        }
        Ok(out)
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogNeedsUnitConstant);
        }
        // d*l_d = d*a_d - sum_{j=1}^{d-1} j*l_j*a_{d-j}
        let order = self.order;
        let mut l = Self::zero(order);
        for d in 1..=order {
            let mut acc = &self.coeffs[d] * rint(d as i64);
            for j in 1..d {
                if l.coeffs[j].is_zero() || self.coeffs[d - j].is_zero() {
                    continue;
                }
                acc -= rint(j as i64) * &l.coeffs[j] * &self.coeffs[d - j];
            }
            l.coeffs[d] = acc / rint(d as i64);
        }
        Ok(l)
    }

    /// Formal exponential; requires constant term 0.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpNeedsZeroConstant);
        }
        // d*e_d = sum_{j=1}^{d} j*a_j*e_{d-j}
        let order = self.order;
        let mut e = Self::one(order);
        for d in 1..=order {
            let mut acc = Rat::zero();
            for j in 1..=d {
                if self.coeffs[j].is_zero() || e.coeffs[d - j].is_zero() {
                    continue;
                }
                acc += rint(j as i64) * &self.coeffs[j] * &e.coeffs[d - j];
            }
            e.coeffs[d] = acc / rint(d as i64);
        }
        Ok(e)
    }

    /// The unique series with constant term 1 whose `r`-th power equals
    /// `self`, computed as `exp(log(self)/r)`.
    pub fn nth_root(&self, r: u64) -> Result<Self, SeriesError> {
        assert!(r >= 1, "root index must be positive");
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::RootNeedsUnitConstant);
        }
        let l = self.log()?;
        l.scale(&Rat::new(BigInt::one(), BigInt::from(r))).exp()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_series(&base);
            }
            base = base.mul_series(&base);
            e >>= 1;
        }
        acc
    }

    /// JSON form `{"order": T, "coeffs": {"d": "p/q", ...}}`, zero
    /// coefficients omitted, rationals in lowest terms.
    pub fn to_json(&self) -> serde_json::Value {
        let mut coeffs = serde_json::Map::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(d.to_string(), serde_json::Value::String(rat_to_string(c)));
            }
        }
        serde_json::json!({ "order": self.order, "coeffs": coeffs })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, SeriesError> {
        let bad = || SeriesError::BadJson(v.to_string());
        let order = v.get("order").and_then(|o| o.as_u64()).ok_or_else(bad)? as usize;
        let mut s = Self::zero(order);
        let coeffs = v.get("coeffs").and_then(|c| c.as_object()).ok_or_else(bad)?;
        for (k, val) in coeffs {
            let d: usize = k.parse().map_err(|_| bad())?;
            if d > order {
                return Err(bad());
            }
            s.coeffs[d] = rat_from_str(val.as_str().ok_or_else(bad)?)?;
        }
        Ok(s)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = if c.is_negative() { -c.clone() } else { c.clone() };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if d == 0 {
                write!(f, "{}", rat_to_string(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "t^-{d}")?;
            } else {
                write!(f, "{}*t^-{}", rat_to_string(&magnitude), d)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^-{})", self.order + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.common_order(rhs);
        let mut out = TruncatedSeries::zero(order);
        for d in 0..=order {
            out.coeffs[d] = &self.coeffs[d] + &rhs.coeffs[d];
        }
        out
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.common_order(rhs);
        let mut out = TruncatedSeries::zero(order);
        for d in 0..=order {
            out.coeffs[d] = &self.coeffs[d] - &rhs.coeffs[d];
        }
        out
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rat::one())
    }
}

/// Normalizes a monic polynomial `p` of degree `N` (coefficient list indexed
/// by degree) into the series `t^-N * p(t)`: codegree `d` picks up `[t^(N-d)]p`.
pub fn normalize_phi(poly: &[Rat], degree: usize, order: usize) -> Result<TruncatedSeries, SeriesError> {
    if poly.len() != degree + 1 || !poly[degree].is_one() {
        return Err(SeriesError::NonMonic);
    }
    let mut s = TruncatedSeries::zero(order);
    for d in 0..=order.min(degree) {
        s.coeffs[d] = poly[degree - d].clone();
    }
    Ok(s)
}

/// Sparse polynomial in edge variables, graded by codegree in `t`.
///
/// A term `(d, exps) -> c` stands for `c * e_1^exps[0] ... e_r^exps[r-1] * t^-d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgePolynomial {
    num_edges: usize,
    terms: BTreeMap<(usize, Vec<u32>), Rat>,
}

impl EdgePolynomial {
    pub fn new(num_edges: usize) -> Self {
        EdgePolynomial {
            num_edges,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn add_term(&mut self, d: usize, exps: Vec<u32>, c: Rat) {
        assert_eq!(exps.len(), self.num_edges);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((d, exps)).or_insert_with(Rat::zero);
        *entry += c;
        // Drop cancelled terms so equality is structural.
        let key = self
            .terms
            .iter()
            .find(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone());
        if let Some(k) = key {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &[u32], &Rat)> {
        self.terms.iter().map(|((d, e), c)| (*d, e.as_slice(), c))
    }

    pub fn coeff(&self, d: usize, exps: &[u32]) -> Rat {
        self.terms
            .get(&(d, exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Substitutes 1 for every edge variable, collapsing to a series.
    pub fn eval_all_ones(&self, order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        for ((d, _), c) in &self.terms {
            s.add_assign_term(*d, c);
        }
        s
    }

    /// Substitutes 0 for edge `i` and drops it from the variable list; the
    /// remaining edges keep their relative order.
    pub fn substitute_zero(&self, i: usize) -> EdgePolynomial {
        assert!(i < self.num_edges);
        let mut out = EdgePolynomial::new(self.num_edges - 1);
        for ((d, exps), c) in &self.terms {
            if exps[i] != 0 {
                continue;
            }
            let mut kept = exps.clone();
            kept.remove(i);
            out.add_term(*d, kept, c.clone());
        }
        out
    }

    /// Monomial key like `e1^3*e2^1` (sorted edge order, zero exponents
    /// omitted); the constant monomial renders as `1`.
    pub fn monomial_key(exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, m)| format!("e{}^{}", i + 1, m))
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// JSON form `{"d": {"e1^3": "-3", ...}, ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut by_codegree: BTreeMap<usize, serde_json::Map<String, serde_json::Value>> =
            BTreeMap::new();
        for ((d, exps), c) in &self.terms {
            by_codegree.entry(*d).or_default().insert(
                Self::monomial_key(exps),
                serde_json::Value::String(rat_to_string(c)),
            );
        }
        let mut obj = serde_json::Map::new();
        for (d, m) in by_codegree {
            obj.insert(d.to_string(), serde_json::Value::Object(m));
        }
        serde_json::Value::Object(obj)
    }
}

/// Positive-or-zero rational check helper for tests and reports.
pub fn rat_is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_phi_tilde(order: usize) -> TruncatedSeries {
        // t^-3 * (t^3 - 3t - 2)
        TruncatedSeries::from_coeffs(order, &[(0, rint(1)), (2, rint(-3)), (3, rint(-2))])
    }

    #[test]
    fn mul_identity() {
        let a = TruncatedSeries::from_coeffs(8, &[(0, rint(1)), (2, rat(7, 3)), (5, rint(-4))]);
        let one = TruncatedSeries::one(8);
        assert_eq!(a.mul_series(&one), a);
    }

    #[test]
    fn division_matches_k3_vertex_walks() {
        // (1 - t^-2) / (1 - 3t^-2 - 2t^-3) = 1 + 2t^-2 + 2t^-3 + 6t^-4 + ...
        let num = TruncatedSeries::from_coeffs(4, &[(0, rint(1)), (2, rint(-1))]);
        let q = num.div_series(&k3_phi_tilde(4)).unwrap();
        let expect =
            TruncatedSeries::from_coeffs(4, &[(0, rint(1)), (2, rint(2)), (3, rint(2)), (4, rint(6))]);
        assert_eq!(q, expect);
    }

    #[test]
    fn self_division_is_one() {
        let a = TruncatedSeries::from_coeffs(
            9,
            &[(0, rint(1)), (1, rat(-1, 2)), (3, rat(5, 7)), (9, rint(11))],
        );
        assert_eq!(a.div_series(&a).unwrap(), TruncatedSeries::one(9));
    }

    #[test]
    fn division_by_non_unit_rejected() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::monomial(3, 1, rint(2));
        assert_eq!(a.div_series(&b), Err(SeriesError::DivisionByNonUnit));
    }

    #[test]
    fn log_of_one_is_zero() {
        assert_eq!(TruncatedSeries::one(6).log().unwrap(), TruncatedSeries::zero(6));
    }

    #[test]
    fn log_matches_k4_expansion() {
        // log(1 - 6t^-2 - 8t^-3 - 3t^-4) = -6t^-2 - 8t^-3 - 21t^-4 - ...
        let phi = TruncatedSeries::from_coeffs(
            4,
            &[(0, rint(1)), (2, rint(-6)), (3, rint(-8)), (4, rint(-3))],
        );
        let l = phi.log().unwrap();
        let expect = TruncatedSeries::from_coeffs(4, &[(2, rint(-6)), (3, rint(-8)), (4, rint(-21))]);
        assert_eq!(l, expect);
    }

    #[test]
    fn exp_log_round_trip() {
        let phi = TruncatedSeries::from_coeffs(
            7,
            &[(0, rint(1)), (2, rint(-6)), (3, rint(-8)), (4, rint(-3))],
        );
        assert_eq!(phi.log().unwrap().exp().unwrap(), phi);
    }

    #[test]
    fn root_basics() {
        let one = TruncatedSeries::one(5);
        assert_eq!(one.nth_root(7).unwrap(), one);
        let a = TruncatedSeries::from_coeffs(5, &[(0, rint(1)), (1, rat(3, 5)), (4, rint(-2))]);
        assert_eq!(a.nth_root(1).unwrap(), a);
        let r = a.nth_root(4).unwrap();
        assert_eq!(r.pow(4), a);
    }

    #[test]
    fn normalize_phi_examples() {
        // t^n
        let p = vec![rint(0), rint(0), rint(0), rint(1)];
        assert_eq!(normalize_phi(&p, 3, 6).unwrap(), TruncatedSeries::one(6));
        // K4: t^4 - 6t^2 - 8t - 3
        let p = vec![rint(-3), rint(-8), rint(-6), rint(0), rint(1)];
        let s = normalize_phi(&p, 4, 4).unwrap();
        let expect = TruncatedSeries::from_coeffs(
            4,
            &[(0, rint(1)), (2, rint(-6)), (3, rint(-8)), (4, rint(-3))],
        );
        assert_eq!(s, expect);
        // single 3-edge: t^12 - 3t^9 + 3t^6 - t^3, truncated view to order 12
        let mut p = vec![rint(0); 13];
        p[12] = rint(1);
        p[9] = rint(-3);
        p[6] = rint(3);
        p[3] = rint(-1);
        let s = normalize_phi(&p, 12, 12).unwrap();
        assert_eq!(s.coeff(0), &rint(1));
        assert_eq!(s.coeff(3), &rint(-3));
        assert_eq!(s.coeff(6), &rint(3));
        assert_eq!(s.coeff(9), &rint(-1));
        assert_eq!(s.coeff(12), &rint(0));
        // non-monic rejected
        let p = vec![rint(1), rint(2)];
        assert_eq!(normalize_phi(&p, 2, 3), Err(SeriesError::NonMonic));
    }

    #[test]
    fn json_round_trip() {
        let s = TruncatedSeries::from_coeffs(6, &[(0, rint(1)), (3, rat(-3, 8)), (5, rint(2))]);
        let j = s.to_json();
        assert_eq!(TruncatedSeries::from_json(&j).unwrap(), s);
        assert_eq!(j["coeffs"]["3"], "-3/8");
        assert!(j["coeffs"].get("1").is_none());
    }

    #[test]
    fn edge_polynomial_substitution() {
        let mut p = EdgePolynomial::new(2);
        p.add_term(3, vec![3, 0], rint(-3));
        p.add_term(6, vec![3, 3], rint(5));
        let zeroed = p.substitute_zero(1);
        assert_eq!(zeroed.num_edges(), 1);
        assert_eq!(zeroed.coeff(3, &[3]), rint(-3));
        assert_eq!(zeroed.coeff(6, &[3]), rint(0));
        assert_eq!(EdgePolynomial::monomial_key(&[3, 0, 1]), "e1^3*e3^1");
        assert_eq!(EdgePolynomial::monomial_key(&[0, 0]), "1");
    }
}
