use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::descriptor::{RingDescriptor, DEFAULT_SERIES_ORDER};
use crate::error::{Error, Result};
use crate::ring::{BezoutCertificate, Ring};
use crate::rings::integers::extended_gcd;

/// `a_0 + a_1 x + ... + a_{N-1} x^{N-1}` with `a_0 ∈ Z`, `a_i ∈ Q`.
///
/// `coeffs[i]` is the coefficient of `x^(i+1)`; trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesElem {
    pub constant: BigInt,
    pub coeffs: Vec<BigRational>,
}

/// `Z + xQ[[x]]` truncated modulo `x^order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    order: usize,
}

impl Default for TruncatedSeries {
    fn default() -> Self {
        TruncatedSeries {
            order: DEFAULT_SERIES_ORDER,
        }
    }
}

impl TruncatedSeries {
    pub fn new(order: usize) -> Result<Self> {
        RingDescriptor::TruncatedSeries { order }.validate()?;
        Ok(TruncatedSeries { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element(&self, constant: BigInt, coeffs: Vec<BigRational>) -> SeriesElem {
        let mut full = vec![BigRational::from_integer(constant)];
        full.extend(coeffs);
        self.from_dense(full)
    }

    fn dense(&self, a: &SeriesElem) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.order];
        v[0] = BigRational::from_integer(a.constant.clone());
        for (i, c) in a.coeffs.iter().enumerate().take(self.order - 1) {
            v[i + 1] = c.clone();
        }
        v
    }

    /// Caller guarantees an integral constant term.
    fn from_dense(&self, mut v: Vec<BigRational>) -> SeriesElem {
        v.resize(self.order, BigRational::zero());
        let constant = v[0].to_integer();
        let mut coeffs: Vec<BigRational> = v.into_iter().skip(1).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SeriesElem { constant, coeffs }
    }

    fn constant(&self, n: BigInt) -> SeriesElem {
        SeriesElem {
            constant: n,
            coeffs: Vec::new(),
        }
    }

    fn mul_dense(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// Inverse over `Q[[x]]` modulo `x^len`; `a[0]` must be nonzero.
    fn inv_dense(a: &[BigRational], len: usize) -> Vec<BigRational> {
        let mut b = vec![BigRational::zero(); len];
        b[0] = a[0].recip();
        for k in 1..len {
            let mut s = BigRational::zero();
            for i in 1..=k.min(a.len() - 1) {
                s += &a[i] * &b[k - i];
            }
            b[k] = -s * &b[0];
        }
        b
    }

    fn valuation(&self, a: &SeriesElem) -> Option<usize> {
        self.dense(a).iter().position(|c| !c.is_zero())
    }
}

impl Ring for TruncatedSeries {
    type Elem = SeriesElem;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::TruncatedSeries { order: self.order }
    }

    fn zero(&self) -> SeriesElem {
        self.constant(BigInt::zero())
    }

    fn one(&self) -> SeriesElem {
        self.constant(BigInt::one())
    }

    fn from_bigint(&self, n: &BigInt) -> SeriesElem {
        self.constant(n.clone())
    }

    fn add(&self, a: &SeriesElem, b: &SeriesElem) -> SeriesElem {
        let v = self.dense(a).into_iter().zip(self.dense(b)).map(|(x, y)| x + y).collect();
        self.from_dense(v)
    }

    fn neg(&self, a: &SeriesElem) -> SeriesElem {
        SeriesElem {
            constant: -&a.constant,
            coeffs: a.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul(&self, a: &SeriesElem, b: &SeriesElem) -> SeriesElem {
        self.from_dense(Self::mul_dense(&self.dense(a), &self.dense(b), self.order))
    }

    fn inverse(&self, a: &SeriesElem) -> Option<SeriesElem> {
        if !a.constant.abs().is_one() {
            return None;
        }
        Some(self.from_dense(Self::inv_dense(&self.dense(a), self.order)))
    }

    /// Supported when some operand has a nonzero constant term: such an
    /// operand is its constant term times a unit `1 + x(...)`.
    fn bezout(&self, a: &SeriesElem, b: &SeriesElem) -> Result<BezoutCertificate<SeriesElem>> {
        if self.is_zero(a) && self.is_zero(b) {
            return Ok(BezoutCertificate::degenerate_zero(self));
        }
        let n = self.order;
        // f0 / f, a unit whenever f0 != 0
        let scaled_inverse = |f: &SeriesElem| -> Vec<BigRational> {
            let inv = Self::inv_dense(&self.dense(f), n);
            let f0 = BigRational::from_integer(f.constant.clone());
            inv.into_iter().map(|c| c * &f0).collect()
        };
        let scale = |f: &SeriesElem, k: &BigInt| -> SeriesElem {
            let kq = BigRational::from_integer(k.clone());
            self.from_dense(self.dense(f).into_iter().map(|c| c / &kq).collect())
        };
        match (a.constant.is_zero(), b.constant.is_zero()) {
            (false, false) => {
                let (g, u, v) = extended_gcd(&a.constant, &b.constant);
                let uq = BigRational::from_integer(u);
                let vq = BigRational::from_integer(v);
                let x = self.from_dense(scaled_inverse(a).into_iter().map(|c| c * &uq).collect());
                let y = self.from_dense(scaled_inverse(b).into_iter().map(|c| c * &vq).collect());
                Ok(BezoutCertificate {
                    d: self.constant(g.clone()),
                    x,
                    y,
                    a0: scale(a, &g),
                    b0: scale(b, &g),
                    degenerate: false,
                })
            }
            (false, true) | (true, false) => {
                let swapped = a.constant.is_zero();
                let (f, h) = if swapped { (b, a) } else { (a, b) };
                let g = f.constant.abs();
                let sign = BigRational::from_integer(f.constant.signum());
                let x = self.from_dense(scaled_inverse(f).into_iter().map(|c| c * &sign).collect());
                let (x, y) = if swapped { (self.zero(), x) } else { (x, self.zero()) };
                let (a0, b0) = if swapped {
                    (scale(h, &g), scale(f, &g))
                } else {
                    (scale(f, &g), scale(h, &g))
                };
                Ok(BezoutCertificate {
                    d: self.constant(g),
                    x,
                    y,
                    a0,
                    b0,
                    degenerate: false,
                })
            }
            (true, true) => Err(Error::Unsupported(format!(
                "bezout in {} needs an operand with nonzero constant term",
                self.descriptor()
            ))),
        }
    }

    fn divide_exact(&self, a: &SeriesElem, d: &SeriesElem) -> Result<SeriesElem> {
        let fail = || Error::not_divisible(a, d);
        let n = self.order;
        let Some(k) = self.valuation(d) else {
            return if self.is_zero(a) { Ok(self.zero()) } else { Err(fail()) };
        };
        let ad = self.dense(a);
        if ad[..k].iter().any(|c| !c.is_zero()) {
            return Err(fail());
        }
        let dd = self.dense(d);
        let len = n - k;
        let q = Self::mul_dense(&ad[k..], &Self::inv_dense(&dd[k..], len), len);
        if !q[0].is_integer() {
            return Err(fail());
        }
        let q = self.from_dense(q);
        if self.mul(d, &q) != *a {
            return Err(fail());
        }
        Ok(q)
    }

    fn normalizing_unit(&self, a: &SeriesElem) -> SeriesElem {
        let n = self.order;
        let Some(k) = self.valuation(a) else {
            return self.one();
        };
        let ad = self.dense(a);
        let lead = ad[k].clone();
        let normalized: Vec<BigRational> = ad[k..].iter().map(|c| c / &lead).collect();
        let sign = if lead.is_negative() {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        let inv = Self::inv_dense(&normalized, n - k);
        self.from_dense(inv.into_iter().map(|c| c * &sign).collect())
    }

    fn elements(&self) -> Option<Vec<SeriesElem>> {
        None
    }

    fn residues(&self, c: &SeriesElem) -> Result<Vec<SeriesElem>> {
        if c.constant.is_zero() {
            return Err(Error::InfiniteRing(format!("{}/(c) with c(0) = 0", self.descriptor())));
        }
        let m = c.constant.abs();
        let mut out = Vec::new();
        let mut k = BigInt::zero();
        while k < m {
            out.push(self.constant(k.clone()));
            k += 1;
        }
        Ok(out)
    }

    fn quotient_is_finite(&self, c: &SeriesElem) -> bool {
        !c.constant.is_zero()
    }

    fn reduce_mod(&self, a: &SeriesElem, c: &SeriesElem) -> SeriesElem {
        if c.constant.is_zero() {
            a.clone()
        } else {
            self.constant(a.constant.mod_floor(&c.constant.abs()))
        }
    }

    fn generates_unit_ideal(&self, gens: &[SeriesElem]) -> Result<bool> {
        Ok(gens.iter().fold(BigInt::zero(), |g, x| g.gcd(&x.constant)).is_one())
    }

    fn is_domain(&self) -> bool {
        false
    }

    fn bezout_total(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn arithmetic_truncates() {
        let r = TruncatedSeries::new(3).unwrap();
        let x = r.element(0.into(), vec![q(1, 1)]);
        let x2 = r.mul(&x, &x);
        assert_eq!(x2.coeffs, vec![q(0, 1), q(1, 1)]);
        assert!(r.is_zero(&r.mul(&x2, &x)));
    }

    #[test]
    fn units_and_inverses() {
        let r = TruncatedSeries::default();
        let f = r.element((-1).into(), vec![q(1, 2), q(3, 1)]);
        let inv = r.inverse(&f).unwrap();
        assert_eq!(r.mul(&f, &inv), r.one());
        assert!(r.inverse(&r.element(2.into(), vec![])).is_none());
    }

    #[test]
    fn bezout_support() {
        let r = TruncatedSeries::default();
        let f = r.element(6.into(), vec![q(1, 3)]);
        let g = r.element(4.into(), vec![q(0, 1), q(-2, 5)]);
        let h = r.element(0.into(), vec![q(7, 2)]);
        for (a, b) in [(&f, &g), (&f, &h), (&h, &g), (&g, &f)] {
            let c = r.bezout(a, b).unwrap();
            assert!(c.verify(&r, a, b), "{a:?} {b:?}");
        }
        assert_eq!(r.bezout(&f, &g).unwrap().d, r.element(2.into(), vec![]));
        assert!(matches!(r.bezout(&h, &h), Err(Error::Unsupported(_))));
    }

    #[test]
    fn division() {
        let r = TruncatedSeries::new(4).unwrap();
        let x = r.element(0.into(), vec![q(1, 1)]);
        let a = r.element(0.into(), vec![q(3, 1), q(1, 2)]);
        let quo = r.divide_exact(&a, &x).unwrap();
        assert_eq!(r.mul(&quo, &x), a);
        // x / (2x) would need constant term 1/2
        let two_x = r.element(0.into(), vec![q(2, 1)]);
        assert!(r.divide_exact(&x, &two_x).is_err());
        let u = r.normalizing_unit(&a);
        assert!(r.is_unit(&u));
        assert_eq!(r.mul(&a, &u), r.element(0.into(), vec![q(3, 1)]));
    }
}
