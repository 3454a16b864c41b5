use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::ring::{BezoutCertificate, Ring};

/// Integer types usable as the carrier of [`Integers`].
pub trait IntScalar:
    Integer + Signed + Clone + Debug + Hash + Ord + Send + Sync + Into<BigInt> + TryFrom<BigInt> + 'static
{
}

impl<T> IntScalar for T where
    T: Integer + Signed + Clone + Debug + Hash + Ord + Send + Sync + Into<BigInt> + TryFrom<BigInt> + 'static
{
}

/// The ring of integers over a machine or arbitrary-precision carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers<T = BigInt>(PhantomData<T>);

impl<T> Integers<T> {
    pub const fn new() -> Self {
        Integers(PhantomData)
    }
}

/// Extended Euclid on `(a, b)`: returns `(g, x, y)` with `a·x + b·y = g`,
/// `g ≥ 0`.
pub fn extended_gcd<T: IntScalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = r0 - q.clone() * r1.clone();
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = s0 - q.clone() * s1.clone();
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = t0 - q * t1.clone();
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn to_carrier<T: IntScalar>(n: &BigInt) -> T {
    T::try_from(n.clone()).unwrap_or_else(|_| panic!("integer {n} overflows the carrier type"))
}

impl<T: IntScalar> Ring for Integers<T> {
    type Elem = T;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Integers
    }

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn from_bigint(&self, n: &BigInt) -> T {
        to_carrier(n)
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn neg(&self, a: &T) -> T {
        -a.clone()
    }

    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &T) -> Option<T> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }

    fn bezout(&self, a: &T, b: &T) -> Result<BezoutCertificate<T>> {
        if a.is_zero() && b.is_zero() {
            return Ok(BezoutCertificate::degenerate_zero(self));
        }
        let (d, x, y) = extended_gcd(a, b);
        let a0 = a.clone() / d.clone();
        let b0 = b.clone() / d.clone();
        Ok(BezoutCertificate {
            d,
            x,
            y,
            a0,
            b0,
            degenerate: false,
        })
    }

    fn divide_exact(&self, a: &T, d: &T) -> Result<T> {
        if d.is_zero() {
            return if a.is_zero() {
                Ok(T::zero())
            } else {
                Err(Error::not_divisible(a, d))
            };
        }
        let (q, r) = a.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::not_divisible(a, d))
        }
    }

    fn associate_unit(&self, a: &T, d: &T) -> Result<T> {
        if a.abs() == d.abs() {
            Ok(if a.is_zero() || a == d { T::one() } else { -T::one() })
        } else {
            Err(Error::NotAssociates(format!("{a:?}"), format!("{d:?}")))
        }
    }

    fn normalizing_unit(&self, a: &T) -> T {
        if a.is_negative() {
            -T::one()
        } else {
            T::one()
        }
    }

    fn elements(&self) -> Option<Vec<T>> {
        None
    }

    fn residues(&self, c: &T) -> Result<Vec<T>> {
        if c.is_zero() {
            return Err(Error::InfiniteRing("Z/0Z".into()));
        }
        let m: BigInt = c.abs().into();
        let mut out = Vec::new();
        let mut k = BigInt::zero();
        while k < m {
            out.push(to_carrier(&k));
            k += 1;
        }
        Ok(out)
    }

    fn residue_iter<'a>(&'a self, c: &T) -> Result<Box<dyn Iterator<Item = T> + 'a>> {
        if c.is_zero() {
            return Err(Error::InfiniteRing("Z/0Z".into()));
        }
        let m: BigInt = c.abs().into();
        let mut k = BigInt::zero();
        Ok(Box::new(std::iter::from_fn(move || {
            (k < m).then(|| {
                let out = to_carrier(&k);
                k += 1;
                out
            })
        })))
    }

    fn quotient_is_finite(&self, c: &T) -> bool {
        !c.is_zero()
    }

    fn reduce_mod(&self, a: &T, c: &T) -> T {
        if c.is_zero() {
            a.clone()
        } else {
            a.mod_floor(&c.abs())
        }
    }

    fn is_domain(&self) -> bool {
        true
    }

    fn bezout_total(&self) -> bool {
        true
    }
}
