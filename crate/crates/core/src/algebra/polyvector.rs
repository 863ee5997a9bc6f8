//! Polynomial polyvector fields `Σ_J c_J ∂_{j_1}∧…∧∂_{j_k}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::multi_index::VarIndex;
use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::combinatorics::{signed_permutations, sort_sign};
use crate::error::{Error, Result};

/// Homogeneous polyvector of degree `k`, stored on strictly increasing index
/// tuples. The coefficient of `∂_J` for increasing `J` is the stored value
/// (no `1/k!` normalization).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyvector {
    degree: usize,
    components: BTreeMap<Vec<VarIndex>, Polynomial>,
}

impl Polyvector {
    pub fn zero(degree: usize) -> Self {
        Polyvector {
            degree,
            components: BTreeMap::new(),
        }
    }

    /// Degree-0 polyvector, i.e. a function.
    pub fn function(p: Polynomial) -> Self {
        let mut out = Self::zero(0);
        out.add_component(&[], &p);
        out
    }

    /// `c · ∂_{i_1} ∧ … ∧ ∂_{i_k}` for an arbitrary index order.
    pub fn basis(indices: &[VarIndex], c: Polynomial) -> Self {
        let mut out = Self::zero(indices.len());
        out.add_component(indices, &c);
        out
    }

    /// `∂_{i_1} ∧ … ∧ ∂_{i_k}` from raw indices.
    pub fn wedge_of(indices: &[u32]) -> Self {
        let idx: Vec<VarIndex> = indices.iter().map(|&i| VarIndex::new(i)).collect();
        Self::basis(&idx, Polynomial::one())
    }

    /// Adds `c · ∂_{indices}`, reordering with the permutation sign.
    pub fn add_component(&mut self, indices: &[VarIndex], c: &Polynomial) {
        assert_eq!(indices.len(), self.degree, "component length must equal degree");
        let Some(sign) = sort_sign(indices) else {
            return;
        };
        let mut key = indices.to_vec();
        key.sort();
        let slot = self.components.entry(key.clone()).or_default();
        if sign > 0 {
            *slot += c;
        } else {
            *slot += &(-c);
        }
        if slot.is_zero() {
            self.components.remove(&key);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<VarIndex>, &Polynomial)> {
        self.components.iter()
    }

    /// Indices that occur in some nonzero component.
    pub fn index_support(&self) -> BTreeSet<VarIndex> {
        self.components.keys().flatten().copied().collect()
    }

    /// Fully antisymmetric coefficient `⟨γ, dx^{i_1}⊗…⊗dx^{i_k}⟩`.
    pub fn extract(&self, indices: &[VarIndex]) -> Result<Polynomial> {
        if indices.len() != self.degree {
            return Err(Error::DegreeMismatch {
                degree: self.degree,
                got: indices.len(),
            });
        }
        let Some(sign) = sort_sign(indices) else {
            return Ok(Polynomial::zero());
        };
        let mut key = indices.to_vec();
        key.sort();
        Ok(match self.components.get(&key) {
            None => Polynomial::zero(),
            Some(c) if sign > 0 => c.clone(),
            Some(c) => -c,
        })
    }

    /// Every index tuple with a nonzero extracted coefficient, with that coefficient.
    pub fn nonzero_tuples(&self) -> Vec<(Vec<VarIndex>, Polynomial)> {
        let perms = signed_permutations(self.degree);
        let mut out = Vec::with_capacity(self.components.len() * perms.len());
        for (key, c) in &self.components {
            for (perm, sign) in &perms {
                let tuple = perm.iter().map(|&p| key[p]).collect();
                out.push((tuple, if *sign > 0 { c.clone() } else { -c }));
            }
        }
        out
    }

    pub fn add(&self, other: &Polyvector) -> Polyvector {
        assert_eq!(self.degree, other.degree, "adding polyvectors of different degree");
        let mut out = self.clone();
        for (k, c) in &other.components {
            out.add_component(k, c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polyvector {
        let mut out = Self::zero(self.degree);
        for (k, p) in &self.components {
            out.add_component(k, &p.scale(c));
        }
        out
    }

    pub fn mul_function(&self, f: &Polynomial) -> Polyvector {
        let mut out = Self::zero(self.degree);
        for (k, p) in &self.components {
            out.add_component(k, &(p * f));
        }
        out
    }

    /// Exterior product; `a ∧ b = (-1)^{|a||b|} b ∧ a`.
    pub fn wedge(&self, other: &Polyvector) -> Polyvector {
        let mut out = Self::zero(self.degree + other.degree);
        for (ka, ca) in &self.components {
            for (kb, cb) in &other.components {
                let joined: Vec<VarIndex> = ka.iter().chain(kb).copied().collect();
                out.add_component(&joined, &(ca * cb));
            }
        }
        out
    }

    pub fn rename(&self, f: &impl Fn(VarIndex) -> VarIndex) -> Polyvector {
        let mut out = Self::zero(self.degree);
        for (k, c) in &self.components {
            let key: Vec<VarIndex> = k.iter().map(|&v| f(v)).collect();
            out.add_component(&key, &c.rename(f));
        }
        out
    }
}

impl fmt::Display for Polyvector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (n, (key, c)) in self.components.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for v in key {
                write!(f, "∂{}", v.get())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VarIndex {
        VarIndex::new(i)
    }

    #[test]
    fn wedge_canonical_order() {
        let a = Polyvector::wedge_of(&[1]);
        let b = Polyvector::wedge_of(&[2]);
        let w = a.wedge(&b);
        assert_eq!(
            w.components().collect::<Vec<_>>(),
            vec![(&vec![v(1), v(2)], &Polynomial::one())]
        );
        assert_eq!(b.wedge(&a), w.scale(&crate::algebra::rational::int(-1)));
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn wedge_bilinear_in_coefficients() {
        let a = Polyvector::basis(&[v(1)], Polynomial::x(1));
        let b = Polyvector::basis(&[v(2)], Polynomial::x(2));
        let w = a.wedge(&b);
        assert_eq!(w.extract(&[v(1), v(2)]).unwrap(), &Polynomial::x(1) * &Polynomial::x(2));
    }

    #[test]
    fn extraction_is_antisymmetric() {
        let g = Polyvector::wedge_of(&[1, 2]);
        assert_eq!(g.extract(&[v(1), v(2)]).unwrap(), Polynomial::one());
        assert_eq!(g.extract(&[v(2), v(1)]).unwrap(), -Polynomial::one());
        assert!(g.extract(&[v(1), v(1)]).unwrap().is_zero());
        assert_eq!(g.extract(&[v(1)]), Err(Error::DegreeMismatch { degree: 2, got: 1 }));
    }

    #[test]
    fn basis_reorders_with_sign() {
        let g = Polyvector::wedge_of(&[3, 1]);
        assert_eq!(g.extract(&[v(1), v(3)]).unwrap(), -Polynomial::one());
        assert!(Polyvector::wedge_of(&[2, 2]).is_zero());
    }

    #[test]
    fn tuples_cover_permutations() {
        let g = Polyvector::wedge_of(&[1, 2, 3]);
        let tuples = g.nonzero_tuples();
        assert_eq!(tuples.len(), 6);
        for (t, c) in tuples {
            assert_eq!(g.extract(&t).unwrap(), c);
        }
    }
}
