//! The effective-ring interface consumed by every algorithm in the crate.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};

/// Witness for `aR + bR = dR`.
///
/// A non-degenerate certificate satisfies `a·x + b·y = d`, `a = d·a0`,
/// `b = d·b0` and `a0·x + b0·y = 1`. The last identity is what lets
/// `[[x, -b0], [y, a0]]` act as a determinant-one column transformation.
///
/// `bezout(0, 0)` yields the degenerate certificate `d = 0, x = 1, y = 0,
/// a0 = b0 = 0` with the refined identity waived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate<E> {
    pub d: E,
    pub x: E,
    pub y: E,
    pub a0: E,
    pub b0: E,
    pub degenerate: bool,
}

impl<E: Clone + PartialEq> BezoutCertificate<E> {
    pub fn degenerate_zero<R: Ring<Elem = E>>(ring: &R) -> Self {
        BezoutCertificate {
            d: ring.zero(),
            x: ring.one(),
            y: ring.zero(),
            a0: ring.zero(),
            b0: ring.zero(),
            degenerate: true,
        }
    }

    /// Re-checks every identity the certificate claims for `(a, b)`.
    pub fn verify<R: Ring<Elem = E>>(&self, ring: &R, a: &E, b: &E) -> bool {
        let lin = ring.add(&ring.mul(a, &self.x), &ring.mul(b, &self.y));
        if lin != self.d {
            return false;
        }
        if self.degenerate {
            return ring.is_zero(a) && ring.is_zero(b) && ring.is_zero(&self.d);
        }
        ring.mul(&self.d, &self.a0) == *a
            && ring.mul(&self.d, &self.b0) == *b
            && ring.is_one(&ring.add(&ring.mul(&self.a0, &self.x), &ring.mul(&self.b0, &self.y)))
    }
}

/// A commutative ring with exact arithmetic and effective Bézout data.
///
/// Ring values are contexts (modulus, characteristic, components); the
/// elements themselves are plain data interpreted relative to a context.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn descriptor(&self) -> RingDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// Refined Bézout certificate with `d` the canonical associate.
    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> Result<BezoutCertificate<Self::Elem>>;

    /// Some `q` with `a = d·q`. In rings with zero divisors the smallest
    /// such `q` in enumeration order is returned.
    fn divide_exact(&self, a: &Self::Elem, d: &Self::Elem) -> Result<Self::Elem>;

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        self.divide_exact(a, d).is_ok()
    }

    /// A unit `u` with `a = d·u`.
    fn associate_unit(&self, a: &Self::Elem, d: &Self::Elem) -> Result<Self::Elem> {
        let not_assoc = || Error::NotAssociates(format!("{a:?}"), format!("{d:?}"));
        let q = self.divide_exact(a, d).map_err(|_| not_assoc())?;
        if self.is_unit(&q) {
            return Ok(q);
        }
        if !self.divides(a, d) {
            return Err(not_assoc());
        }
        match self.elements() {
            Some(all) => all
                .into_iter()
                .find(|u| self.is_unit(u) && self.mul(d, u) == *a)
                .ok_or_else(not_assoc),
            None => Err(not_assoc()),
        }
    }

    /// Unit `u` such that `a·u` is the canonical associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn canonical(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.normalizing_unit(a))
    }

    /// Every element exactly once, or `None` for infinite rings.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// A complete (possibly redundant) set of coset representatives of
    /// `R/cR`. Fails when the quotient is infinite.
    fn residues(&self, c: &Self::Elem) -> Result<Vec<Self::Elem>>;

    /// Lazy form of [`Ring::residues`], in the same order.
    fn residue_iter<'a>(&'a self, c: &Self::Elem) -> Result<Box<dyn Iterator<Item = Self::Elem> + 'a>> {
        Ok(Box::new(self.residues(c)?.into_iter()))
    }

    fn quotient_is_finite(&self, c: &Self::Elem) -> bool;

    /// Canonical representative of `a + cR` where the ring has one;
    /// otherwise `a` itself.
    fn reduce_mod(&self, a: &Self::Elem, _c: &Self::Elem) -> Self::Elem {
        a.clone()
    }

    /// Whether `g1 R + ... + gk R = R`.
    fn generates_unit_ideal(&self, gens: &[Self::Elem]) -> Result<bool> {
        let g = ideal_generator(self, gens)?;
        Ok(self.is_unit(&g))
    }

    fn is_domain(&self) -> bool;

    /// Whether `bezout` succeeds on every pair.
    fn bezout_total(&self) -> bool;

    /// `Some(n)` for `Z/n`, used to reduce matrices through integer lifts.
    fn modulus(&self) -> Option<u64> {
        None
    }

    /// Least nonnegative integer lift, for rings with a modulus.
    fn lift_residue(&self, _a: &Self::Elem) -> Option<BigInt> {
        None
    }
}

/// Canonical generator of `g1 R + ... + gk R` via iterated certificates.
pub fn ideal_generator<R: Ring>(ring: &R, gens: &[R::Elem]) -> Result<R::Elem> {
    let mut g = ring.zero();
    for x in gens {
        g = ring.bezout(&g, x)?.d;
    }
    Ok(g)
}

/// Coefficients `c_i` with `Σ gens_i · c_i = d`, where `d` is the canonical
/// generator of the ideal the generators span.
pub fn combination<R: Ring>(ring: &R, gens: &[R::Elem]) -> Result<(R::Elem, Vec<R::Elem>)> {
    let mut g = ring.zero();
    let mut coeffs: Vec<R::Elem> = Vec::with_capacity(gens.len());
    for x in gens {
        let cert = ring.bezout(&g, x)?;
        for c in coeffs.iter_mut() {
            *c = ring.mul(c, &cert.x);
        }
        coeffs.push(cert.y.clone());
        g = cert.d;
    }
    Ok((g, coeffs))
}

/// Coefficients `c_i` with `Σ gens_i · c_i = target`; fails when `target`
/// is outside the ideal.
pub fn solve_combination<R: Ring>(
    ring: &R,
    gens: &[R::Elem],
    target: &R::Elem,
) -> Result<Vec<R::Elem>> {
    let (g, coeffs) = combination(ring, gens)?;
    let k = ring.divide_exact(target, &g)?;
    Ok(coeffs.iter().map(|c| ring.mul(c, &k)).collect())
}
