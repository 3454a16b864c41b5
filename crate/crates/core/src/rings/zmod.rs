use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::ring::{BezoutCertificate, Ring};
use crate::rings::integers::extended_gcd;

/// `Z/nZ` with residues stored in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zmod {
    n: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

impl Zmod {
    pub fn new(n: u64) -> Result<Self> {
        RingDescriptor::Modular(n).validate()?;
        Ok(Zmod { n })
    }

    pub fn modulus_value(&self) -> u64 {
        self.n
    }

    pub fn reduce_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.n as i128) as u64
    }

    /// Solutions `q` of `d·q ≡ a`, as `(q0, step)`: all solutions are
    /// `q0 + k·step` with `q0 < step`.
    fn solve_linear(&self, a: u64, d: u64) -> Option<(u64, u64)> {
        let g = gcd(d, self.n);
        if !a.is_multiple_of(g) {
            return None;
        }
        let m = self.n / g;
        if m == 1 {
            return Some((0, 1));
        }
        let (_, inv, _) = extended_gcd(&((d / g) as i128), &(m as i128));
        let q0 = ((a / g) as i128 * inv).rem_euclid(m as i128) as u64;
        Some((q0, m))
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Modular(self.n)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.n
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.n)).to_u64().expect("residue fits")
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.n as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.n - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.n as u128) as u64
    }

    fn inverse(&self, a: &u64) -> Option<u64> {
        let (g, x, _) = extended_gcd(&(*a as i128), &(self.n as i128));
        if g == 1 {
            Some(self.reduce_i128(x))
        } else {
            None
        }
    }

    /// `d = gcd(a, b, n)` on lifts; the unit defect in `a0·x + b0·y` is
    /// repaired by shifting `a0` along `n/d` until `(a0, b0)` is unimodular.
    fn bezout(&self, a: &u64, b: &u64) -> Result<BezoutCertificate<u64>> {
        let n = self.n;
        let g = gcd(gcd(*a, *b), n);
        if g == n {
            return Ok(BezoutCertificate::degenerate_zero(self));
        }
        let step = n / g;
        let b0 = b / g;
        let m = gcd(b0, n);
        let a0 = (0..g)
            .map(|k| (a / g + k * step) % n)
            .find(|cand| gcd(*cand, m) == 1)
            .ok_or_else(|| Error::Internal(format!("no unimodular lift for ({a}, {b}) mod {n}")))?;
        // a0·x + b0·y + n·z = 1 over the integers.
        let (g1, x1, z1) = extended_gcd(&(a0 as i128), &(b0 as i128));
        let (g2, s, _) = extended_gcd(&g1, &(n as i128));
        if g2 != 1 {
            return Err(Error::Internal(format!("refined certificate failed for ({a}, {b}) mod {n}")));
        }
        let x = self.reduce_i128(x1 * s);
        let y = self.reduce_i128(z1 * s);
        Ok(BezoutCertificate {
            d: g,
            x,
            y,
            a0,
            b0: b0 % n,
            degenerate: false,
        })
    }

    fn divide_exact(&self, a: &u64, d: &u64) -> Result<u64> {
        self.solve_linear(*a, *d)
            .map(|(q0, _)| q0)
            .ok_or_else(|| Error::not_divisible(a, d))
    }

    fn associate_unit(&self, a: &u64, d: &u64) -> Result<u64> {
        let not_assoc = || Error::NotAssociates(a.to_string(), d.to_string());
        if gcd(*a, self.n) != gcd(*d, self.n) {
            return Err(not_assoc());
        }
        let (q0, step) = self.solve_linear(*a, *d).ok_or_else(not_assoc)?;
        (0..self.n / step)
            .map(|k| q0 + k * step)
            .find(|u| gcd(*u, self.n) == 1)
            .ok_or_else(not_assoc)
    }

    fn normalizing_unit(&self, a: &u64) -> u64 {
        let g = gcd(*a, self.n);
        if g == self.n {
            return self.one();
        }
        self.associate_unit(&g, a).expect("a and gcd(a, n) are associates")
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.n).collect())
    }

    fn residues(&self, _c: &u64) -> Result<Vec<u64>> {
        Ok((0..self.n).collect())
    }

    fn quotient_is_finite(&self, _c: &u64) -> bool {
        true
    }

    fn reduce_mod(&self, a: &u64, c: &u64) -> u64 {
        a % gcd(*c, self.n)
    }

    fn generates_unit_ideal(&self, gens: &[u64]) -> Result<bool> {
        Ok(gens.iter().fold(self.n, |g, x| gcd(g, *x)) == 1)
    }

    fn is_domain(&self) -> bool {
        crate::descriptor::is_prime(self.n)
    }

    fn bezout_total(&self) -> bool {
        true
    }

    fn modulus(&self) -> Option<u64> {
        Some(self.n)
    }

    fn lift_residue(&self, a: &u64) -> Option<BigInt> {
        Some(BigInt::from(*a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r6 = Zmod::new(6).unwrap();
        assert_eq!(r6.mul(&4, &5), 2);
        assert!(r6.is_unit(&5));
        assert_eq!(r6.inverse(&5), Some(5));

        let r12 = Zmod::new(12).unwrap();
        assert_eq!(r12.divide_exact(&8, &4).unwrap(), 2);
        assert_eq!(r12.associate_unit(&8, &4).unwrap(), 5);
        assert!(r12.divide_exact(&3, &2).is_err());
        assert!(r12.associate_unit(&8, &2).is_err());
    }

    #[test]
    fn divide_exact_is_smallest_solution() {
        for n in 2..=16u64 {
            let r = Zmod::new(n).unwrap();
            for a in 0..n {
                for d in 0..n {
                    let brute = (0..n).find(|q| r.mul(&d, q) == a);
                    assert_eq!(r.divide_exact(&a, &d).ok(), brute, "{a}/{d} mod {n}");
                }
            }
        }
    }

    #[test]
    fn refined_certificates_exhaustive() {
        for n in 2..=24u64 {
            let r = Zmod::new(n).unwrap();
            for a in 0..n {
                for b in 0..n {
                    let c = r.bezout(&a, &b).unwrap();
                    assert!(c.verify(&r, &a, &b), "bezout({a}, {b}) mod {n}: {c:?}");
                    assert_eq!(c.d, gcd(gcd(a, b), n) % n);
                }
            }
        }
    }

    #[test]
    fn normalizing_unit_reaches_gcd_with_modulus() {
        let r = Zmod::new(12).unwrap();
        for a in 0..12 {
            let u = r.normalizing_unit(&a);
            assert!(r.is_unit(&u));
            assert_eq!(r.mul(&a, &u), gcd(a, 12) % 12);
        }
    }
}
