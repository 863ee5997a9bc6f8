//! Sign rules for the two sums in the A∞-relation
//!
//! ```text
//! d F_n(γ) + Σ_{k+l=n} ε_k · F_k(γ_1…γ_k) ∪ F_l(γ_{k+1}…γ_n)
//!          + Σ_{i=1}^{n-1} τ_i · F_{n-1}(γ_1…, γ_i∧γ_{i+1}, …γ_n) = 0
//! ```

use std::fmt;

pub trait SignConvention: Send + Sync + fmt::Debug {
    /// `ε_k` for the split after the first `k` inputs.
    fn cup_sign(&self, k: usize, degrees: &[usize]) -> i8;
    /// `τ_i` for the product of inputs `i` and `i+1` (1-based).
    fn wedge_sign(&self, i: usize, degrees: &[usize]) -> i8;
    fn name(&self) -> String;
}

fn parity(x: usize) -> i8 {
    if x.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Koszul signs on shifted degrees `|γ| - 1`:
/// `ε_k = (-1)^{(l+1)·Σ_{j≤k}(|γ_j| - 1)}` with `l = n - k`, and
/// `τ_i = (-1)^{n+i}`.
///
/// With the weights oriented by `dξ_1∧…∧dξ_n∧dη_1∧…∧dη_{m-1}` and edges
/// wedged in star order, this is the unique assignment that annihilates the
/// residual; for `n = 2` it reads `dF_2 + F_1∪F_1 - F_1(γ_1∧γ_2) = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Koszul;

impl SignConvention for Koszul {
    fn cup_sign(&self, k: usize, degrees: &[usize]) -> i8 {
        let l = degrees.len() - k;
        let shifted: usize = degrees[..k].iter().map(|d| d + 1).sum();
        parity((l + 1) * shifted)
    }

    fn wedge_sign(&self, i: usize, degrees: &[usize]) -> i8 {
        parity(degrees.len() + i)
    }

    fn name(&self) -> String {
        "koszul".into()
    }
}

/// Negates every cup-term sign of the wrapped convention.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FlipCup<S>(pub S);

impl<S: SignConvention> SignConvention for FlipCup<S> {
    fn cup_sign(&self, k: usize, degrees: &[usize]) -> i8 {
        -self.0.cup_sign(k, degrees)
    }

    fn wedge_sign(&self, i: usize, degrees: &[usize]) -> i8 {
        self.0.wedge_sign(i, degrees)
    }

    fn name(&self) -> String {
        format!("flip-cup({})", self.0.name())
    }
}

/// Negates every wedge-term sign of the wrapped convention.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FlipWedge<S>(pub S);

impl<S: SignConvention> SignConvention for FlipWedge<S> {
    fn cup_sign(&self, k: usize, degrees: &[usize]) -> i8 {
        self.0.cup_sign(k, degrees)
    }

    fn wedge_sign(&self, i: usize, degrees: &[usize]) -> i8 {
        -self.0.wedge_sign(i, degrees)
    }

    fn name(&self) -> String {
        format!("flip-wedge({})", self.0.name())
    }
}

/// Explicit sign tables, one entry per split / per adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub cup: Vec<i8>,
    pub wedge: Vec<i8>,
}

impl SignConvention for Table {
    fn cup_sign(&self, k: usize, _degrees: &[usize]) -> i8 {
        self.cup[k - 1]
    }

    fn wedge_sign(&self, i: usize, _degrees: &[usize]) -> i8 {
        self.wedge[i - 1]
    }

    fn name(&self) -> String {
        format!("table(cup={:?}, wedge={:?})", self.cup, self.wedge)
    }
}
