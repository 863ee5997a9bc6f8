//! Polydifferential operators `Σ c · ∂^{α_1} ⊗ … ⊗ ∂^{α_m}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::multi_index::{MultiIndex, VarIndex};
use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// One summand: `coeff · ∂^{derivs[0]} f_1 ⋯ ∂^{derivs[m-1]} f_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTerm {
    pub coeff: Polynomial,
    pub derivs: Vec<MultiIndex>,
}

impl OpTerm {
    pub fn new(coeff: Polynomial, derivs: Vec<MultiIndex>) -> Self {
        OpTerm { coeff, derivs }
    }
}

/// Arity-`m` polydifferential operator with polynomial coefficients.
///
/// `from_terms` keeps the term list as given; every other constructor and
/// every operation returns the canonical form (sorted by derivative list,
/// merged, zero coefficients dropped). Equality compares canonical forms.
#[derive(Debug, Clone)]
pub struct PolyDiffOp {
    arity: usize,
    terms: Vec<OpTerm>,
}

impl PolyDiffOp {
    pub fn zero(arity: usize) -> Self {
        PolyDiffOp {
            arity,
            terms: Vec::new(),
        }
    }

    /// Arity-0 operator, i.e. a function.
    pub fn constant(p: Polynomial) -> Self {
        PolyDiffOp::from_terms(0, vec![OpTerm::new(p, Vec::new())])
            .unwrap()
            .normalize()
    }

    /// Raw term list, not normalized.
    pub fn from_terms(arity: usize, terms: Vec<OpTerm>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.derivs.len() != arity) {
            return Err(Error::ArityMismatch {
                arity,
                got: t.derivs.len(),
            });
        }
        Ok(PolyDiffOp { arity, terms })
    }

    pub(crate) fn from_map(arity: usize, map: BTreeMap<Vec<MultiIndex>, Polynomial>) -> Self {
        let terms = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| OpTerm::new(c, d))
            .collect();
        PolyDiffOp { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[OpTerm] {
        &self.terms
    }

    pub fn normalize(&self) -> PolyDiffOp {
        let mut map: BTreeMap<Vec<MultiIndex>, Polynomial> = BTreeMap::new();
        for t in &self.terms {
            *map.entry(t.derivs.clone()).or_default() += &t.coeff;
        }
        Self::from_map(self.arity, map)
    }

    pub fn is_zero(&self) -> bool {
        self.normalize().terms.is_empty()
    }

    pub fn evaluate(&self, args: &[Polynomial]) -> Result<Polynomial> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                arity: self.arity,
                got: args.len(),
            });
        }
        let mut cache: Vec<BTreeMap<&MultiIndex, Polynomial>> = vec![BTreeMap::new(); self.arity];
        let mut out = Polynomial::zero();
        for t in &self.terms {
            let mut prod = t.coeff.clone();
            for (j, alpha) in t.derivs.iter().enumerate() {
                if prod.is_zero() {
                    break;
                }
                let d = cache[j].entry(alpha).or_insert_with(|| args[j].partial_multi(alpha));
                prod = &prod * d;
            }
            out += &prod;
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyDiffOp) -> PolyDiffOp {
        assert_eq!(self.arity, other.arity, "adding operators of different arity");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        PolyDiffOp {
            arity: self.arity,
            terms,
        }
        .normalize()
    }

    pub fn sub(&self, other: &PolyDiffOp) -> PolyDiffOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyDiffOp {
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn scale(&self, c: &Rational) -> PolyDiffOp {
        let terms = self
            .terms
            .iter()
            .map(|t| OpTerm::new(t.coeff.scale(c), t.derivs.clone()))
            .collect();
        PolyDiffOp {
            arity: self.arity,
            terms,
        }
        .normalize()
    }

    pub fn mul_function(&self, f: &Polynomial) -> PolyDiffOp {
        let terms = self
            .terms
            .iter()
            .map(|t| OpTerm::new(&t.coeff * f, t.derivs.clone()))
            .collect();
        PolyDiffOp {
            arity: self.arity,
            terms,
        }
        .normalize()
    }

    pub fn variables(&self) -> BTreeSet<VarIndex> {
        let mut out = BTreeSet::new();
        for t in &self.terms {
            out.extend(t.coeff.variables());
            for d in &t.derivs {
                out.extend(d.vars());
            }
        }
        out
    }

    pub fn rename(&self, f: &impl Fn(VarIndex) -> VarIndex) -> PolyDiffOp {
        let terms = self
            .terms
            .iter()
            .map(|t| OpTerm::new(t.coeff.rename(f), t.derivs.iter().map(|d| d.rename(f)).collect()))
            .collect();
        PolyDiffOp {
            arity: self.arity,
            terms,
        }
        .normalize()
    }
}

impl PartialEq for PolyDiffOp {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.normalize().terms == other.normalize().terms
    }
}

impl Eq for PolyDiffOp {}

impl fmt::Display for PolyDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            for d in &t.derivs {
                write!(f, " [{d}]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn d(vars: &[u32]) -> MultiIndex {
        MultiIndex::from_vars(vars.iter().map(|&i| VarIndex::new(i)))
    }

    fn x(i: u32) -> Polynomial {
        Polynomial::x(i)
    }

    #[test]
    fn evaluation() {
        let op = PolyDiffOp::from_terms(2, vec![OpTerm::new(Polynomial::one(), vec![d(&[1]), d(&[1])])]).unwrap();
        assert_eq!(op.evaluate(&[x(1), &x(1) * &x(1)]).unwrap(), x(1).scale(&int(2)));

        let c = PolyDiffOp::constant(&x(3) + &x(1));
        assert_eq!(c.evaluate(&[]).unwrap(), &x(3) + &x(1));

        let op = PolyDiffOp::from_terms(1, vec![OpTerm::new(x(2), vec![d(&[1])])]).unwrap();
        assert_eq!(op.evaluate(&[&x(1) * &x(2)]).unwrap(), &x(2) * &x(2));
        assert_eq!(op.evaluate(&[]), Err(Error::ArityMismatch { arity: 1, got: 0 }));
    }

    #[test]
    fn normalization() {
        let t = |c: i64| OpTerm::new(Polynomial::constant(int(c)), vec![d(&[1])]);
        let merged = PolyDiffOp::from_terms(1, vec![t(1), t(1)]).unwrap().normalize();
        assert_eq!(merged.terms(), &[t(2)]);
        let cancelled = PolyDiffOp::from_terms(1, vec![t(1), t(-1)]).unwrap().normalize();
        assert!(cancelled.terms().is_empty());
        assert_eq!(merged.normalize().terms(), merged.terms());
    }

    #[test]
    fn from_terms_checks_arity() {
        let bad = PolyDiffOp::from_terms(2, vec![OpTerm::new(Polynomial::one(), vec![d(&[1])])]);
        assert!(matches!(bad, Err(Error::ArityMismatch { .. })));
    }
}
