//! Operators and polynomials whose coefficients are linear combinations of
//! products of not-yet-resolved (Monte Carlo) graph weights.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::rational::{format_rational, to_f64, Rational};
use crate::algebra::{MultiIndex, PolyDiffOp, Polynomial};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::hochschild::{cup, hochschild_d};
use crate::weights::WeightResult;

/// Sorted multiset of graphs whose weights multiply a part; empty for the exact part.
pub type WeightMonomial = Vec<Graph>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedOp {
    arity: usize,
    parts: BTreeMap<WeightMonomial, PolyDiffOp>,
}

impl WeightedOp {
    pub fn zero(arity: usize) -> Self {
        WeightedOp {
            arity,
            parts: BTreeMap::new(),
        }
    }

    pub fn exact(op: PolyDiffOp) -> Self {
        let mut out = Self::zero(op.arity());
        out.add_part(Vec::new(), op);
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn parts(&self) -> &BTreeMap<WeightMonomial, PolyDiffOp> {
        &self.parts
    }

    pub fn is_exact(&self) -> bool {
        self.parts.keys().all(Vec::is_empty)
    }

    /// The operator when no unresolved weights occur.
    pub fn as_exact(&self) -> Option<PolyDiffOp> {
        self.is_exact().then(|| {
            self.parts
                .get(&Vec::new())
                .cloned()
                .unwrap_or_else(|| PolyDiffOp::zero(self.arity))
        })
    }

    pub fn unresolved(&self) -> BTreeSet<Graph> {
        self.parts.keys().flatten().cloned().collect()
    }

    pub fn add_part(&mut self, key: WeightMonomial, op: PolyDiffOp) {
        assert_eq!(op.arity(), self.arity, "arity mismatch in weighted sum");
        let slot = self
            .parts
            .entry(key.clone())
            .or_insert_with(|| PolyDiffOp::zero(op.arity()));
        *slot = slot.add(&op);
        if slot.terms().is_empty() {
            self.parts.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &WeightedOp, c: &Rational) {
        for (k, op) in &other.parts {
            self.add_part(k.clone(), op.scale(c));
        }
    }

    pub fn cup(&self, other: &WeightedOp) -> WeightedOp {
        let mut out = WeightedOp::zero(self.arity + other.arity);
        for (ka, a) in &self.parts {
            for (kb, b) in &other.parts {
                let mut key: Vec<Graph> = ka.iter().chain(kb).cloned().collect();
                key.sort();
                out.add_part(key, cup(a, b));
            }
        }
        out
    }

    pub fn hochschild_d(&self) -> WeightedOp {
        let mut out = WeightedOp::zero(self.arity + 1);
        for (k, op) in &self.parts {
            out.add_part(k.clone(), hochschild_d(op));
        }
        out
    }

    pub fn evaluate(&self, args: &[Polynomial]) -> Result<WeightedPoly> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                arity: self.arity,
                got: args.len(),
            });
        }
        let mut parts = BTreeMap::new();
        for (k, op) in &self.parts {
            let p = op.evaluate(args)?;
            if !p.is_zero() {
                parts.insert(k.clone(), p);
            }
        }
        Ok(WeightedPoly { parts })
    }
}

/// `Σ_key (Π_{Γ ∈ key} W_Γ) · parts[key]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedPoly {
    parts: BTreeMap<WeightMonomial, Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolvedCoeff {
    pub monomial: String,
    pub value: f64,
    /// First-order propagation of the weight standard errors.
    pub stderr: f64,
}

impl WeightedPoly {
    pub fn parts(&self) -> &BTreeMap<WeightMonomial, Polynomial> {
        &self.parts
    }

    pub fn is_exact(&self) -> bool {
        self.parts.keys().all(Vec::is_empty)
    }

    pub fn as_exact(&self) -> Option<Polynomial> {
        self.is_exact()
            .then(|| self.parts.get(&Vec::new()).cloned().unwrap_or_default())
    }

    pub fn rename(&self, f: &impl Fn(crate::algebra::VarIndex) -> crate::algebra::VarIndex) -> WeightedPoly {
        WeightedPoly {
            parts: self.parts.iter().map(|(k, p)| (k.clone(), p.rename(f))).collect(),
        }
    }

    /// Substitutes weight estimates and propagates their standard errors.
    pub fn resolve(&self, lookup: &impl Fn(&Graph) -> WeightResult) -> Vec<ResolvedCoeff> {
        let graphs: BTreeSet<&Graph> = self.parts.keys().flatten().collect();
        let weights: BTreeMap<&Graph, WeightResult> = graphs.iter().map(|g| (*g, lookup(g))).collect();
        let mut monomials: BTreeSet<&MultiIndex> = BTreeSet::new();
        for p in self.parts.values() {
            monomials.extend(p.terms().map(|(m, _)| m));
        }
        let mut out = Vec::new();
        for mono in monomials {
            let mut exact = Rational::zero();
            let mut value = 0.0;
            let mut grad: BTreeMap<&Graph, f64> = BTreeMap::new();
            for (key, p) in &self.parts {
                let c = p.coeff(mono);
                if c.is_zero() {
                    continue;
                }
                if key.is_empty() {
                    exact += c;
                    continue;
                }
                let c = to_f64(&c);
                let ws: Vec<f64> = key.iter().map(|g| weights[g].value_f64()).collect();
                value += c * ws.iter().product::<f64>();
                for (pos, g) in key.iter().enumerate() {
                    let others: f64 = ws
                        .iter()
                        .enumerate()
                        .filter(|&(q, _)| q != pos)
                        .map(|(_, w)| w)
                        .product();
                    *grad.entry(g).or_default() += c * others;
                }
            }
            let var: f64 = grad.iter().map(|(g, d)| (d * weights[g].stderr()).powi(2)).sum();
            let value = to_f64(&exact) + value;
            if value != 0.0 || var != 0.0 {
                out.push(ResolvedCoeff {
                    monomial: mono.to_string(),
                    value,
                    stderr: var.sqrt(),
                });
            }
        }
        out
    }

    pub fn describe_exact(&self) -> Option<Vec<(String, String)>> {
        self.as_exact()
            .map(|p| p.terms().map(|(m, c)| (m.to_string(), format_rational(c))).collect())
    }
}
