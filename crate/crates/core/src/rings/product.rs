use num_bigint::BigInt;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::ring::{BezoutCertificate, Ring};

/// Direct product `R_1 × ... × R_k`; every operation is componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Product<R> {
    parts: Vec<R>,
}

impl<R: Ring> Product<R> {
    pub fn new(parts: Vec<R>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Descriptor {
                input: "product()".into(),
                reason: "product needs at least one factor".into(),
            });
        }
        Ok(Product { parts })
    }

    pub fn parts(&self) -> &[R] {
        &self.parts
    }

    fn zip_map(&self, a: &[R::Elem], b: &[R::Elem], f: impl Fn(&R, &R::Elem, &R::Elem) -> R::Elem) -> Vec<R::Elem> {
        self.parts
            .iter()
            .zip(a.iter().zip(b))
            .map(|(r, (x, y))| f(r, x, y))
            .collect()
    }

    fn cartesian(lists: Vec<Vec<R::Elem>>) -> Vec<Vec<R::Elem>> {
        lists.into_iter().fold(vec![Vec::new()], |acc, list| {
            acc.iter()
                .flat_map(|prefix| {
                    list.iter().map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e.clone());
                        v
                    })
                })
                .collect()
        })
    }
}

impl<R: Ring> Ring for Product<R> {
    type Elem = Vec<R::Elem>;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Product(self.parts.iter().map(|r| r.descriptor()).collect())
    }

    fn zero(&self) -> Self::Elem {
        self.parts.iter().map(|r| r.zero()).collect()
    }

    fn one(&self) -> Self::Elem {
        self.parts.iter().map(|r| r.one()).collect()
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.parts.iter().map(|r| r.from_bigint(n)).collect()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip_map(a, b, |r, x, y| r.add(x, y))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.parts.iter().zip(a).map(|(r, x)| r.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip_map(a, b, |r, x, y| r.mul(x, y))
    }

    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.parts.iter().zip(a).map(|(r, x)| r.inverse(x)).collect()
    }

    /// Componentwise certificates. A degenerate component `(0, 0)` uses
    /// `x = 1, y = 0, a0 = 1, b0 = 0`, which satisfies every identity, so
    /// the product certificate is degenerate only when all inputs vanish.
    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> Result<BezoutCertificate<Self::Elem>> {
        if self.is_zero(a) && self.is_zero(b) {
            return Ok(BezoutCertificate::degenerate_zero(self));
        }
        let mut out = BezoutCertificate {
            d: Vec::new(),
            x: Vec::new(),
            y: Vec::new(),
            a0: Vec::new(),
            b0: Vec::new(),
            degenerate: false,
        };
        for (r, (x, y)) in self.parts.iter().zip(a.iter().zip(b)) {
            let c = r.bezout(x, y)?;
            if c.degenerate {
                out.d.push(r.zero());
                out.x.push(r.one());
                out.y.push(r.zero());
                out.a0.push(r.one());
                out.b0.push(r.zero());
            } else {
                out.d.push(c.d);
                out.x.push(c.x);
                out.y.push(c.y);
                out.a0.push(c.a0);
                out.b0.push(c.b0);
            }
        }
        Ok(out)
    }

    fn divide_exact(&self, a: &Self::Elem, d: &Self::Elem) -> Result<Self::Elem> {
        self.parts
            .iter()
            .zip(a.iter().zip(d))
            .map(|(r, (x, y))| r.divide_exact(x, y))
            .collect()
    }

    fn associate_unit(&self, a: &Self::Elem, d: &Self::Elem) -> Result<Self::Elem> {
        self.parts
            .iter()
            .zip(a.iter().zip(d))
            .map(|(r, (x, y))| r.associate_unit(x, y))
            .collect()
    }

    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem {
        self.parts.iter().zip(a).map(|(r, x)| r.normalizing_unit(x)).collect()
    }

    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let lists = self.parts.iter().map(|r| r.elements()).collect::<Option<Vec<_>>>()?;
        Some(Self::cartesian(lists))
    }

    fn residues(&self, c: &Self::Elem) -> Result<Vec<Self::Elem>> {
        let lists = self
            .parts
            .iter()
            .zip(c)
            .map(|(r, x)| r.residues(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::cartesian(lists))
    }

    fn quotient_is_finite(&self, c: &Self::Elem) -> bool {
        self.parts.iter().zip(c).all(|(r, x)| r.quotient_is_finite(x))
    }

    fn reduce_mod(&self, a: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.zip_map(a, c, |r, x, y| r.reduce_mod(x, y))
    }

    fn generates_unit_ideal(&self, gens: &[Self::Elem]) -> Result<bool> {
        for (i, r) in self.parts.iter().enumerate() {
            let comp: Vec<R::Elem> = gens.iter().map(|g| g[i].clone()).collect();
            if !r.generates_unit_ideal(&comp)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn is_domain(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].is_domain()
    }

    fn bezout_total(&self) -> bool {
        self.parts.iter().all(|r| r.bezout_total())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Zmod;

    #[test]
    fn enumeration_multiplies_cardinality() {
        let r = Product::new(vec![Zmod::new(2).unwrap(), Zmod::new(3).unwrap()]).unwrap();
        let all = r.elements().unwrap();
        assert_eq!(all.len(), 6);
        let mut d = all.clone();
        d.sort();
        d.dedup();
        assert_eq!(d.len(), 6);
    }

    #[test]
    fn certificates_exhaustive() {
        let r = Product::new(vec![Zmod::new(4).unwrap(), Zmod::new(6).unwrap()]).unwrap();
        let all = r.elements().unwrap();
        for a in &all {
            for b in &all {
                let c = r.bezout(a, b).unwrap();
                assert!(c.verify(&r, a, b), "{a:?} {b:?} {c:?}");
            }
        }
    }
}
