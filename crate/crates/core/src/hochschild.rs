//! Cup product, Hochschild differential and the HKR map on polydifferential
//! operators.
//!
//! The differential follows the cohomological convention
//!
//! ```text
//! (dΘ)(f_0,…,f_k) = f_0·Θ(f_1,…,f_k)
//!                 + Σ_{i=0}^{k-1} (-1)^{i+1} Θ(f_0,…,f_i·f_{i+1},…,f_k)
//!                 + (-1)^{k+1} Θ(f_0,…,f_{k-1})·f_k
//! ```
//!
//! and operator degree is arity.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::rational::{factorial, Rational};
use crate::algebra::{MultiIndex, OpTerm, PolyDiffOp, Polynomial, Polyvector};
use crate::error::{Error, Result};

/// `(Θ1·Θ2)(f_1,…,f_{k+l}) = Θ1(f_1,…,f_k)·Θ2(f_{k+1},…,f_{k+l})`.
pub fn cup(a: &PolyDiffOp, b: &PolyDiffOp) -> PolyDiffOp {
    let mut map: BTreeMap<Vec<MultiIndex>, Polynomial> = BTreeMap::new();
    for ta in a.terms() {
        for tb in b.terms() {
            let mut derivs = ta.derivs.clone();
            derivs.extend(tb.derivs.iter().cloned());
            *map.entry(derivs).or_default() += &(&ta.coeff * &tb.coeff);
        }
    }
    PolyDiffOp::from_map(a.arity() + b.arity(), map)
}

/// Symbolic Hochschild differential; raises arity by one.
pub fn hochschild_d(op: &PolyDiffOp) -> PolyDiffOp {
    let k = op.arity();
    let mut map: BTreeMap<Vec<MultiIndex>, Polynomial> = BTreeMap::new();
    let mut push = |derivs: Vec<MultiIndex>, c: Polynomial| {
        *map.entry(derivs).or_default() += &c;
    };
    for t in op.normalize().terms() {
        // f_0 · Θ(f_1, …)
        let mut derivs = vec![MultiIndex::one()];
        derivs.extend(t.derivs.iter().cloned());
        push(derivs, t.coeff.clone());

        // Θ(…, f_i f_{i+1}, …) via the multi-index Leibniz rule
        for i in 0..k {
            let sign = if i % 2 == 0 { -Rational::one() } else { Rational::one() };
            for (beta, binom) in t.derivs[i].splittings() {
                let rest = t.derivs[i].checked_div(&beta).expect("β ≤ α");
                let mut derivs = Vec::with_capacity(k + 1);
                derivs.extend(t.derivs[..i].iter().cloned());
                derivs.push(beta);
                derivs.push(rest);
                derivs.extend(t.derivs[i + 1..].iter().cloned());
                push(derivs, t.coeff.scale(&(&sign * Rational::from_integer(binom))));
            }
        }

        // Θ(f_0, …, f_{k-1}) · f_k
        let sign = if k.is_multiple_of(2) {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut derivs = t.derivs.clone();
        derivs.push(MultiIndex::one());
        push(derivs, t.coeff.scale(&sign));
    }
    PolyDiffOp::from_map(k + 1, map)
}

/// `(dΘ)(args)` computed directly from evaluations of `Θ`.
pub fn hochschild_d_extensional(op: &PolyDiffOp, args: &[Polynomial]) -> Result<Polynomial> {
    let k = op.arity();
    if args.len() != k + 1 {
        return Err(Error::ArityMismatch {
            arity: k + 1,
            got: args.len(),
        });
    }
    let mut out = &args[0] * &op.evaluate(&args[1..])?;
    for i in 0..k {
        let mut merged: Vec<Polynomial> = Vec::with_capacity(k);
        merged.extend(args[..i].iter().cloned());
        merged.push(&args[i] * &args[i + 1]);
        merged.extend(args[i + 2..].iter().cloned());
        let term = op.evaluate(&merged)?;
        if i % 2 == 0 {
            out = &out - &term;
        } else {
            out += &term;
        }
    }
    let last = &op.evaluate(&args[..k])? * &args[k];
    if k.is_multiple_of(2) {
        out = &out - &last;
    } else {
        out += &last;
    }
    Ok(out)
}

/// `φ_HKR(γ)(f_1,…,f_k) = (1/k!) Σ_J ⟨γ, J⟩ ∂_{j_1}f_1 ⋯ ∂_{j_k}f_k`.
pub fn hkr(gamma: &Polyvector) -> PolyDiffOp {
    let k = gamma.degree();
    let norm = factorial(k).recip();
    let terms = gamma
        .nonzero_tuples()
        .into_iter()
        .map(|(tuple, c)| OpTerm::new(c.scale(&norm), tuple.into_iter().map(MultiIndex::var).collect()))
        .collect();
    PolyDiffOp::from_terms(k, terms).expect("tuple length is k").normalize()
}
