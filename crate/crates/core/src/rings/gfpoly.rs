use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::ring::{BezoutCertificate, Ring};

/// Polynomial over `F_p`, coefficients low-to-high with no trailing zeros.
pub type Poly = Vec<u64>;

/// `F_p[x]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GfPoly {
    p: u64,
}

impl GfPoly {
    pub fn new(p: u64) -> Result<Self> {
        RingDescriptor::PrimeFieldPoly(p).validate()?;
        Ok(GfPoly { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn normalize(&self, mut f: Poly) -> Poly {
        for c in f.iter_mut() {
            *c %= self.p;
        }
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    /// `x`
    pub fn x(&self) -> Poly {
        vec![0, 1]
    }

    pub fn degree(f: &Poly) -> Option<usize> {
        f.len().checked_sub(1)
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        // p is prime and a != 0
        let mut result = 1u64;
        let (mut base, mut e) = (a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(result, base, self.p);
            }
            base = mul_mod(base, base, self.p);
            e >>= 1;
        }
        result
    }

    fn scale(&self, f: &Poly, k: u64) -> Poly {
        self.normalize(f.iter().map(|c| mul_mod(*c, k, self.p)).collect())
    }

    /// Quotient and remainder; `g` must be nonzero.
    pub fn div_rem(&self, f: &Poly, g: &Poly) -> (Poly, Poly) {
        let dg = Self::degree(g).expect("division by the zero polynomial");
        let lead_inv = self.inv_scalar(g[dg]);
        let mut rem = f.clone();
        if rem.len() <= dg {
            return (Vec::new(), rem);
        }
        let mut quot = vec![0u64; rem.len() - dg];
        while rem.len() > dg {
            let shift = rem.len() - 1 - dg;
            let coef = mul_mod(*rem.last().unwrap(), lead_inv, self.p);
            quot[shift] = coef;
            for (i, gc) in g.iter().enumerate() {
                let t = mul_mod(coef, *gc, self.p);
                rem[shift + i] = (rem[shift + i] + self.p - t) % self.p;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (self.normalize(quot), rem)
    }

    /// Every polynomial of degree below `k`, zero first, in graded order.
    fn all_below_degree(&self, k: usize) -> Vec<Poly> {
        let mut out = vec![Vec::new()];
        for deg in 0..k {
            let count = self.p.pow(deg as u32);
            for lead in 1..self.p {
                for idx in 0..count {
                    let mut f = Vec::with_capacity(deg + 1);
                    let mut rest = idx;
                    for _ in 0..deg {
                        f.push(rest % self.p);
                        rest /= self.p;
                    }
                    f.push(lead);
                    out.push(f);
                }
            }
        }
        out
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Ring for GfPoly {
    type Elem = Poly;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PrimeFieldPoly(self.p)
    }

    fn zero(&self) -> Poly {
        Vec::new()
    }

    fn one(&self) -> Poly {
        vec![1]
    }

    fn from_bigint(&self, n: &BigInt) -> Poly {
        let c = n.mod_floor(&BigInt::from(self.p)).to_u64().expect("fits");
        self.normalize(vec![c])
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        self.normalize(out)
    }

    fn neg(&self, a: &Poly) -> Poly {
        a.iter().map(|c| (self.p - c) % self.p).collect()
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(*x, *y, self.p)) % self.p;
            }
        }
        self.normalize(out)
    }

    fn inverse(&self, a: &Poly) -> Option<Poly> {
        match a.as_slice() {
            [c] => Some(vec![self.inv_scalar(*c)]),
            _ => None,
        }
    }

    fn bezout(&self, a: &Poly, b: &Poly) -> Result<BezoutCertificate<Poly>> {
        if a.is_empty() && b.is_empty() {
            return Ok(BezoutCertificate::degenerate_zero(self));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_empty() {
            let (q, r2) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r2);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let u = self.normalizing_unit(&r0);
        let d = self.mul(&r0, &u);
        let x = self.mul(&s0, &u);
        let y = self.mul(&t0, &u);
        let a0 = self.div_rem(a, &d).0;
        let b0 = self.div_rem(b, &d).0;
        Ok(BezoutCertificate {
            d,
            x,
            y,
            a0,
            b0,
            degenerate: false,
        })
    }

    fn divide_exact(&self, a: &Poly, d: &Poly) -> Result<Poly> {
        if d.is_empty() {
            return if a.is_empty() {
                Ok(Vec::new())
            } else {
                Err(Error::not_divisible(a, d))
            };
        }
        let (q, r) = self.div_rem(a, d);
        if r.is_empty() {
            Ok(q)
        } else {
            Err(Error::not_divisible(a, d))
        }
    }

    fn normalizing_unit(&self, a: &Poly) -> Poly {
        match a.last() {
            Some(lead) => vec![self.inv_scalar(*lead)],
            None => self.one(),
        }
    }

    fn canonical(&self, a: &Poly) -> Poly {
        match a.last() {
            Some(lead) => self.scale(a, self.inv_scalar(*lead)),
            None => Vec::new(),
        }
    }

    fn elements(&self) -> Option<Vec<Poly>> {
        None
    }

    fn residues(&self, c: &Poly) -> Result<Vec<Poly>> {
        match Self::degree(c) {
            None => Err(Error::InfiniteRing(format!("F_{}[x]/(0)", self.p))),
            Some(k) => Ok(self.all_below_degree(k)),
        }
    }

    fn quotient_is_finite(&self, c: &Poly) -> bool {
        !c.is_empty()
    }

    fn reduce_mod(&self, a: &Poly, c: &Poly) -> Poly {
        if c.is_empty() {
            a.clone()
        } else {
            self.div_rem(a, c).1
        }
    }

    fn is_domain(&self) -> bool {
        true
    }

    fn bezout_total(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divide_exact_example() {
        let r = GfPoly::new(5).unwrap();
        // (x + 2)(x + 3) = x^2 + 5x + 6 = x^2 + 1 over F_5
        assert_eq!(r.mul(&vec![2, 1], &vec![3, 1]), vec![1, 0, 1]);
        assert_eq!(r.divide_exact(&vec![1, 0, 1], &vec![2, 1]).unwrap(), vec![3, 1]);
        // x^2 + 4 has roots 1 and 4, so x + 2 does not divide it
        assert!(r.divide_exact(&vec![4, 0, 1], &vec![2, 1]).is_err());
    }

    #[test]
    fn associate_unit_is_scalar() {
        let r = GfPoly::new(5).unwrap();
        assert_eq!(r.associate_unit(&vec![2, 2], &vec![1, 1]).unwrap(), vec![2]);
    }

    #[test]
    fn bezout_monic_and_refined() {
        let r = GfPoly::new(5).unwrap();
        let a = r.mul(&vec![0, 1], &vec![1, 1]);
        let b = r.mul(&vec![3, 1], &vec![1, 1]);
        let c = r.bezout(&a, &b).unwrap();
        assert_eq!(c.d, vec![1, 1]);
        assert!(c.verify(&r, &a, &b));
        let c = r.bezout(&vec![3], &vec![]).unwrap();
        assert_eq!(c.d, vec![1]);
        assert!(c.verify(&r, &vec![3], &vec![]));
    }

    #[test]
    fn residue_count() {
        let r = GfPoly::new(3).unwrap();
        let res = r.residues(&vec![1, 0, 1]).unwrap();
        assert_eq!(res.len(), 9);
        let mut dedup = res.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 9);
    }
}
