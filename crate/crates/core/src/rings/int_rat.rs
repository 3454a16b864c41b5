use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::descriptor::{ModuleKind, RingDescriptor};
use crate::error::{Error, Result};
use crate::ring::{BezoutCertificate, Ring};
use crate::rings::integers::extended_gcd;

pub type IntRat = (BigInt, BigRational);

/// `Z ∝ Q`: pairs `(n, q)` with `(n, q)(m, r) = (nm, nr + qm)`.
///
/// Principal ideals are `nZ ∝ Q` for `n ≠ 0` and `0 ∝ qZ`, so the
/// canonical associates are `(|n|, 0)` and `(0, |q|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntRatExt;

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `gcd(p/q, r/s)` as the positive generator of `(p/q)Z + (r/s)Z`.
fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    let den = a.denom().lcm(b.denom());
    let an = a.numer() * (&den / a.denom());
    let bn = b.numer() * (&den / b.denom());
    BigRational::new(an.gcd(&bn), den)
}

impl IntRatExt {
    pub fn new() -> Self {
        IntRatExt
    }
}

impl Ring for IntRatExt {
    type Elem = IntRat;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::TrivialExtension {
            base: Box::new(RingDescriptor::Integers),
            module: ModuleKind::Rationals,
        }
    }

    fn zero(&self) -> IntRat {
        (BigInt::zero(), BigRational::zero())
    }

    fn one(&self) -> IntRat {
        (BigInt::one(), BigRational::zero())
    }

    fn from_bigint(&self, n: &BigInt) -> IntRat {
        (n.clone(), BigRational::zero())
    }

    fn add(&self, a: &IntRat, b: &IntRat) -> IntRat {
        (&a.0 + &b.0, &a.1 + &b.1)
    }

    fn neg(&self, a: &IntRat) -> IntRat {
        (-&a.0, -&a.1)
    }

    fn mul(&self, a: &IntRat, b: &IntRat) -> IntRat {
        (&a.0 * &b.0, rat(a.0.clone()) * &b.1 + &a.1 * rat(b.0.clone()))
    }

    fn is_zero(&self, a: &IntRat) -> bool {
        a.0.is_zero() && a.1.is_zero()
    }

    fn inverse(&self, a: &IntRat) -> Option<IntRat> {
        if a.0.abs().is_one() {
            // (s, q)^{-1} = (s, -q) for s = ±1
            Some((a.0.clone(), -&a.1))
        } else {
            None
        }
    }

    fn bezout(&self, a: &IntRat, b: &IntRat) -> Result<BezoutCertificate<IntRat>> {
        if self.is_zero(a) && self.is_zero(b) {
            return Ok(BezoutCertificate::degenerate_zero(self));
        }
        if !a.0.is_zero() || !b.0.is_zero() {
            let (g, u, v) = extended_gcd(&a.0, &b.0);
            let gq = rat(g.clone());
            // (a(u,0) + b(v,0)) = (g, t); cancel t with the unit (1, -t/g).
            let t = &a.1 * rat(u.clone()) + &b.1 * rat(v.clone());
            let s = -(t / &gq);
            let unit = (BigInt::one(), s);
            let x = self.mul(&(u, BigRational::zero()), &unit);
            let y = self.mul(&(v, BigRational::zero()), &unit);
            let a0 = (&a.0 / &g, &a.1 / &gq);
            let b0 = (&b.0 / &g, &b.1 / &gq);
            return Ok(BezoutCertificate {
                d: (g, BigRational::zero()),
                x,
                y,
                a0,
                b0,
                degenerate: false,
            });
        }
        let g = rational_gcd(&a.1, &b.1);
        let ka = (&a.1 / &g).to_integer();
        let kb = (&b.1 / &g).to_integer();
        let (_, u, v) = extended_gcd(&ka, &kb);
        Ok(BezoutCertificate {
            d: (BigInt::zero(), g),
            x: (u, BigRational::zero()),
            y: (v, BigRational::zero()),
            a0: (ka, BigRational::zero()),
            b0: (kb, BigRational::zero()),
            degenerate: false,
        })
    }

    fn divide_exact(&self, a: &IntRat, d: &IntRat) -> Result<IntRat> {
        let fail = || Error::not_divisible(a, d);
        if !d.0.is_zero() {
            let (q, r) = a.0.div_rem(&d.0);
            if !r.is_zero() {
                return Err(fail());
            }
            // d.0·g + d.1·q = a.1
            let g = (&a.1 - &d.1 * rat(q.clone())) / rat(d.0.clone());
            return Ok((q, g));
        }
        if !a.0.is_zero() {
            return Err(fail());
        }
        if d.1.is_zero() {
            return if a.1.is_zero() { Ok(self.zero()) } else { Err(fail()) };
        }
        let k = &a.1 / &d.1;
        if !k.is_integer() {
            return Err(fail());
        }
        Ok((k.to_integer(), BigRational::zero()))
    }

    fn normalizing_unit(&self, a: &IntRat) -> IntRat {
        if !a.0.is_zero() {
            let s = a.0.signum();
            let f = -(&a.1 * rat(s.clone())) / rat(a.0.clone());
            (s, f)
        } else if a.1.is_negative() {
            (-BigInt::one(), BigRational::zero())
        } else {
            self.one()
        }
    }

    fn elements(&self) -> Option<Vec<IntRat>> {
        None
    }

    fn residues(&self, c: &IntRat) -> Result<Vec<IntRat>> {
        if c.0.is_zero() {
            return Err(Error::InfiniteRing(format!("(Z ∝ Q)/({}, {})", c.0, c.1)));
        }
        let m = c.0.abs();
        let mut out = Vec::new();
        let mut k = BigInt::zero();
        while k < m {
            out.push((k.clone(), BigRational::zero()));
            k += 1;
        }
        Ok(out)
    }

    fn quotient_is_finite(&self, c: &IntRat) -> bool {
        !c.0.is_zero()
    }

    fn reduce_mod(&self, a: &IntRat, c: &IntRat) -> IntRat {
        if c.0.is_zero() {
            a.clone()
        } else {
            (a.0.mod_floor(&c.0.abs()), BigRational::zero())
        }
    }

    fn generates_unit_ideal(&self, gens: &[IntRat]) -> Result<bool> {
        Ok(gens.iter().fold(BigInt::zero(), |g, x| g.gcd(&x.0)).is_one())
    }

    fn is_domain(&self) -> bool {
        false
    }

    fn bezout_total(&self) -> bool {
        true
    }
}
