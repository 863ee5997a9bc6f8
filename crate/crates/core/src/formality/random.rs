//! Seeded random polynomials and polyvectors with small rational coefficients.

use rand::Rng;

use crate::algebra::rational::rat;
use crate::algebra::{MultiIndex, Polynomial, Polyvector, VarIndex};
use crate::combinatorics::combinations;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    /// Variables are drawn from `x_1, …, x_{var_count}`.
    pub var_count: u32,
    /// Maximum total degree of a monomial.
    pub max_degree: u32,
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> crate::algebra::Rational {
    let mut num = 0;
    while num == 0 {
        num = rng.random_range(-4i64..=4);
    }
    rat(num, rng.random_range(1i64..=3))
}

/// Nonzero polynomial with one to four terms.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, spec: &RandomSpec) -> Polynomial {
    loop {
        let terms = rng.random_range(1..=4);
        let mut p = Polynomial::zero();
        for _ in 0..terms {
            let deg = rng.random_range(0..=spec.max_degree);
            let m = MultiIndex::from_vars((0..deg).map(|_| VarIndex::new(rng.random_range(1..=spec.var_count))));
            p.add_term(m, small_rational(rng));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Degree-`k` polyvector on `∂_1, …, ∂_{var_count}`; each increasing tuple is
/// kept with probability 2/3, and at least one is kept when `k ≤ var_count`.
pub fn random_polyvector<R: Rng + ?Sized>(rng: &mut R, degree: usize, spec: &RandomSpec) -> Polyvector {
    let tuples = combinations(spec.var_count as usize, degree);
    let mut out = Polyvector::zero(degree);
    if tuples.is_empty() {
        return out;
    }
    let forced = rng.random_range(0..tuples.len());
    for (t, tuple) in tuples.iter().enumerate() {
        if t != forced && rng.random_range(0..3) == 0 {
            continue;
        }
        let idx: Vec<VarIndex> = tuple.iter().map(|&i| VarIndex::new(i as u32 + 1)).collect();
        out.add_component(&idx, &random_polynomial(rng, spec));
    }
    out
}
