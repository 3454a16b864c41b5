//! Runtime-selected rings: one [`Ring`] implementation that dispatches on
//! a [`RingDescriptor`], used by the CLI and by heterogeneous products.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::descriptor::{ModuleKind, RingDescriptor};
use crate::error::Result;
use crate::ring::{BezoutCertificate, Ring};
use crate::rings::{GfPoly, IntRatExt, Integers, Product, SeriesElem, TrivialExt, TruncatedSeries, Zmod};

/// Element payload of a [`DynRing`]; the variant must match the ring kind.
/// `Debug` prints the canonical text, so diagnostics read like input.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynElem {
    Int(BigInt),
    Residue(u64),
    Poly(Vec<u64>),
    Tuple(Vec<DynElem>),
    Pair(Box<(DynElem, DynElem)>),
    IntRat(Box<(BigInt, BigRational)>),
    Series(SeriesElem),
}

impl std::fmt::Debug for DynElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::element::format_element(self))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DynRing {
    Integers(Integers<BigInt>),
    Modular(Zmod),
    GfPoly(GfPoly),
    Product(Product<DynRing>),
    TrivialExt(Box<TrivialExt<DynRing>>),
    IntRat(IntRatExt),
    Series(TruncatedSeries),
}

/// Conversion between a concrete ring's elements and [`DynElem`].
pub trait DynCarrier: Ring {
    fn wrap(e: Self::Elem) -> DynElem;
    fn peel(e: &DynElem) -> &Self::Elem;
}

fn mismatch(e: &DynElem, kind: &str) -> ! {
    panic!("element {e:?} does not belong to a {kind} ring")
}

impl DynCarrier for Integers<BigInt> {
    fn wrap(e: BigInt) -> DynElem {
        DynElem::Int(e)
    }
    fn peel(e: &DynElem) -> &BigInt {
        match e {
            DynElem::Int(x) => x,
            _ => mismatch(e, "integer"),
        }
    }
}

impl DynCarrier for Zmod {
    fn wrap(e: u64) -> DynElem {
        DynElem::Residue(e)
    }
    fn peel(e: &DynElem) -> &u64 {
        match e {
            DynElem::Residue(x) => x,
            _ => mismatch(e, "modular"),
        }
    }
}

impl DynCarrier for GfPoly {
    fn wrap(e: Vec<u64>) -> DynElem {
        DynElem::Poly(e)
    }
    fn peel(e: &DynElem) -> &Vec<u64> {
        match e {
            DynElem::Poly(x) => x,
            _ => mismatch(e, "polynomial"),
        }
    }
}

impl DynCarrier for Product<DynRing> {
    fn wrap(e: Vec<DynElem>) -> DynElem {
        DynElem::Tuple(e)
    }
    fn peel(e: &DynElem) -> &Vec<DynElem> {
        match e {
            DynElem::Tuple(x) => x,
            _ => mismatch(e, "product"),
        }
    }
}

impl DynCarrier for TrivialExt<DynRing> {
    fn wrap(e: (DynElem, DynElem)) -> DynElem {
        DynElem::Pair(Box::new(e))
    }
    fn peel(e: &DynElem) -> &(DynElem, DynElem) {
        match e {
            DynElem::Pair(x) => x,
            _ => mismatch(e, "trivial-extension"),
        }
    }
}

impl DynCarrier for IntRatExt {
    fn wrap(e: (BigInt, BigRational)) -> DynElem {
        DynElem::IntRat(Box::new(e))
    }
    fn peel(e: &DynElem) -> &(BigInt, BigRational) {
        match e {
            DynElem::IntRat(x) => x,
            _ => mismatch(e, "Z ∝ Q"),
        }
    }
}

impl DynCarrier for TruncatedSeries {
    fn wrap(e: SeriesElem) -> DynElem {
        DynElem::Series(e)
    }
    fn peel(e: &DynElem) -> &SeriesElem {
        match e {
            DynElem::Series(x) => x,
            _ => mismatch(e, "series"),
        }
    }
}

fn peel<'a, R: DynCarrier>(_: &R, e: &'a DynElem) -> &'a R::Elem {
    R::peel(e)
}

fn wrap<R: DynCarrier>(_: &R, e: R::Elem) -> DynElem {
    R::wrap(e)
}

fn wrap_cert<R: DynCarrier>(_: &R, c: BezoutCertificate<R::Elem>) -> BezoutCertificate<DynElem> {
    BezoutCertificate {
        d: R::wrap(c.d),
        x: R::wrap(c.x),
        y: R::wrap(c.y),
        a0: R::wrap(c.a0),
        b0: R::wrap(c.b0),
        degenerate: c.degenerate,
    }
}

fn wrap_all<R: DynCarrier>(_: &R, v: Vec<R::Elem>) -> Vec<DynElem> {
    v.into_iter().map(R::wrap).collect()
}

fn peel_all<R: DynCarrier>(_: &R, v: &[DynElem]) -> Vec<R::Elem> {
    v.iter().map(|e| R::peel(e).clone()).collect()
}

macro_rules! each {
    ($s:expr, $r:ident => $e:expr) => {
        match $s {
            DynRing::Integers($r) => $e,
            DynRing::Modular($r) => $e,
            DynRing::GfPoly($r) => $e,
            DynRing::Product($r) => $e,
            DynRing::TrivialExt(boxed) => {
                let $r = &**boxed;
                $e
            }
            DynRing::IntRat($r) => $e,
            DynRing::Series($r) => $e,
        }
    };
}

impl DynRing {
    pub fn from_descriptor(d: &RingDescriptor) -> Result<Self> {
        d.validate()?;
        Ok(match d {
            RingDescriptor::Integers => DynRing::Integers(Integers::new()),
            RingDescriptor::Modular(n) => DynRing::Modular(Zmod::new(*n)?),
            RingDescriptor::PrimeFieldPoly(p) => DynRing::GfPoly(GfPoly::new(*p)?),
            RingDescriptor::Product(parts) => DynRing::Product(Product::new(
                parts.iter().map(DynRing::from_descriptor).collect::<Result<_>>()?,
            )?),
            RingDescriptor::TrivialExtension { base, module } => match module {
                ModuleKind::SelfModule => {
                    DynRing::TrivialExt(Box::new(TrivialExt::new(DynRing::from_descriptor(base)?)))
                }
                ModuleKind::Rationals => DynRing::IntRat(IntRatExt),
            },
            RingDescriptor::TruncatedSeries { order } => DynRing::Series(TruncatedSeries::new(*order)?),
        })
    }

    /// Whether `e` has the payload shape this ring expects.
    pub fn accepts(&self, e: &DynElem) -> bool {
        match (self, e) {
            (DynRing::Integers(_), DynElem::Int(_)) => true,
            (DynRing::Modular(r), DynElem::Residue(x)) => *x < r.modulus_value(),
            (DynRing::GfPoly(r), DynElem::Poly(f)) => {
                f.last() != Some(&0) && f.iter().all(|c| *c < r.characteristic())
            }
            (DynRing::Product(r), DynElem::Tuple(v)) => {
                v.len() == r.parts().len() && r.parts().iter().zip(v).all(|(p, x)| p.accepts(x))
            }
            (DynRing::TrivialExt(r), DynElem::Pair(p)) => r.base().accepts(&p.0) && r.base().accepts(&p.1),
            (DynRing::IntRat(_), DynElem::IntRat(_)) => true,
            (DynRing::Series(r), DynElem::Series(s)) => {
                s.coeffs.len() < r.order() && s.coeffs.last().is_none_or(|c| *c != BigRational::from_integer(0.into()))
            }
            _ => false,
        }
    }
}

impl Ring for DynRing {
    type Elem = DynElem;

    fn descriptor(&self) -> RingDescriptor {
        each!(self, r => r.descriptor())
    }

    fn zero(&self) -> DynElem {
        each!(self, r => wrap(r, r.zero()))
    }

    fn one(&self) -> DynElem {
        each!(self, r => wrap(r, r.one()))
    }

    fn from_bigint(&self, n: &BigInt) -> DynElem {
        each!(self, r => wrap(r, r.from_bigint(n)))
    }

    fn from_i64(&self, n: i64) -> DynElem {
        each!(self, r => wrap(r, r.from_i64(n)))
    }

    fn add(&self, a: &DynElem, b: &DynElem) -> DynElem {
        each!(self, r => wrap(r, r.add(peel(r, a), peel(r, b))))
    }

    fn neg(&self, a: &DynElem) -> DynElem {
        each!(self, r => wrap(r, r.neg(peel(r, a))))
    }

    fn sub(&self, a: &DynElem, b: &DynElem) -> DynElem {
        each!(self, r => wrap(r, r.sub(peel(r, a), peel(r, b))))
    }

    fn mul(&self, a: &DynElem, b: &DynElem) -> DynElem {
        each!(self, r => wrap(r, r.mul(peel(r, a), peel(r, b))))
    }

    fn is_zero(&self, a: &DynElem) -> bool {
        each!(self, r => r.is_zero(peel(r, a)))
    }

    fn is_one(&self, a: &DynElem) -> bool {
        each!(self, r => r.is_one(peel(r, a)))
    }

    fn inverse(&self, a: &DynElem) -> Option<DynElem> {
        each!(self, r => r.inverse(peel(r, a)).map(|x| wrap(r, x)))
    }

    fn is_unit(&self, a: &DynElem) -> bool {
        each!(self, r => r.is_unit(peel(r, a)))
    }

    fn bezout(&self, a: &DynElem, b: &DynElem) -> Result<BezoutCertificate<DynElem>> {
        each!(self, r => r.bezout(peel(r, a), peel(r, b)).map(|c| wrap_cert(r, c)))
    }

    fn divide_exact(&self, a: &DynElem, d: &DynElem) -> Result<DynElem> {
        each!(self, r => r.divide_exact(peel(r, a), peel(r, d)).map(|x| wrap(r, x)))
    }

    fn divides(&self, d: &DynElem, a: &DynElem) -> bool {
        each!(self, r => r.divides(peel(r, d), peel(r, a)))
    }

    fn associate_unit(&self, a: &DynElem, d: &DynElem) -> Result<DynElem> {
        each!(self, r => r.associate_unit(peel(r, a), peel(r, d)).map(|x| wrap(r, x)))
    }

    fn normalizing_unit(&self, a: &DynElem) -> DynElem {
        each!(self, r => wrap(r, r.normalizing_unit(peel(r, a))))
    }

    fn canonical(&self, a: &DynElem) -> DynElem {
        each!(self, r => wrap(r, r.canonical(peel(r, a))))
    }

    fn elements(&self) -> Option<Vec<DynElem>> {
        each!(self, r => r.elements().map(|v| wrap_all(r, v)))
    }

    fn residue_iter<'a>(&'a self, c: &DynElem) -> Result<Box<dyn Iterator<Item = DynElem> + 'a>> {
        each!(self, r => r
            .residue_iter(peel(r, c))
            .map(|it| Box::new(it.map(|e| wrap(r, e))) as Box<dyn Iterator<Item = DynElem> + 'a>))
    }

    fn residues(&self, c: &DynElem) -> Result<Vec<DynElem>> {
        each!(self, r => r.residues(peel(r, c)).map(|v| wrap_all(r, v)))
    }

    fn quotient_is_finite(&self, c: &DynElem) -> bool {
        each!(self, r => r.quotient_is_finite(peel(r, c)))
    }

    fn reduce_mod(&self, a: &DynElem, c: &DynElem) -> DynElem {
        each!(self, r => wrap(r, r.reduce_mod(peel(r, a), peel(r, c))))
    }

    fn generates_unit_ideal(&self, gens: &[DynElem]) -> Result<bool> {
        each!(self, r => r.generates_unit_ideal(&peel_all(r, gens)))
    }

    fn is_domain(&self) -> bool {
        each!(self, r => r.is_domain())
    }

    fn bezout_total(&self) -> bool {
        each!(self, r => r.bezout_total())
    }

    fn modulus(&self) -> Option<u64> {
        each!(self, r => r.modulus())
    }

    fn lift_residue(&self, a: &DynElem) -> Option<BigInt> {
        each!(self, r => r.lift_residue(peel(r, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_matches_concrete_rings() {
        let r = DynRing::from_descriptor(&"zmod:6".parse().unwrap()).unwrap();
        assert_eq!(r.mul(&DynElem::Residue(4), &DynElem::Residue(5)), DynElem::Residue(2));

        let r = DynRing::from_descriptor(&"text(z,self)".parse().unwrap()).unwrap();
        let a = DynElem::Pair(Box::new((DynElem::Int(2.into()), DynElem::Int(3.into()))));
        let b = DynElem::Pair(Box::new((DynElem::Int(4.into()), DynElem::Int(5.into()))));
        let p = DynElem::Pair(Box::new((DynElem::Int(8.into()), DynElem::Int(22.into()))));
        assert_eq!(r.mul(&a, &b), p);
    }

    #[test]
    fn heterogeneous_product_enumerates() {
        let r = DynRing::from_descriptor(&"product(zmod:2,text(zmod:2,self))".parse().unwrap()).unwrap();
        assert_eq!(r.elements().unwrap().len(), 8);
        assert!(r.elements().unwrap().iter().all(|e| r.accepts(e)));
    }
}
