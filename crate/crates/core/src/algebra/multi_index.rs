use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::rational::binomial;

/// Coordinate index `i` of `x_i`. Indices start at 1 and are unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex(u32);

impl VarIndex {
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        VarIndex(index)
    }

    pub fn try_new(index: u32) -> Option<Self> {
        (index >= 1).then_some(VarIndex(index))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Sparse exponent vector. Doubles as a monomial `x^α` and as the
/// derivative stack `∂^α`. Entries are sorted by variable and never zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<(VarIndex, u32)>);

impl MultiIndex {
    pub fn one() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn var(v: VarIndex) -> Self {
        MultiIndex(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarIndex, u32)>) -> Self {
        let mut out = MultiIndex::one();
        for (v, e) in pairs {
            out.add_exponent(v, e);
        }
        out
    }

    /// Product `∂_{v_1} ⋯ ∂_{v_k}` of single partials (repeats allowed).
    pub fn from_vars(vars: impl IntoIterator<Item = VarIndex>) -> Self {
        Self::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: VarIndex) -> u32 {
        match self.0.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(pos) => self.0[pos].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarIndex, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarIndex> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn add_exponent(&mut self, v: VarIndex, e: u32) {
        if e == 0 {
            return;
        }
        match self.0.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(pos) => self.0[pos].1 += e,
            Err(pos) => self.0.insert(pos, (v, e)),
        }
    }

    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        MultiIndex(out)
    }

    /// `self - other` when `other ≤ self` componentwise.
    pub fn checked_div(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut out = self.clone();
        for (v, e) in other.iter() {
            let pos = out.0.binary_search_by_key(&v, |&(w, _)| w).ok()?;
            let have = out.0[pos].1;
            if have < e {
                return None;
            }
            if have == e {
                out.0.remove(pos);
            } else {
                out.0[pos].1 = have - e;
            }
        }
        Some(out)
    }

    /// All `β ≤ α` together with the multi-binomial `C(α, β)`.
    pub fn splittings(&self) -> Vec<(MultiIndex, BigInt)> {
        let mut acc: Vec<(Vec<(VarIndex, u32)>, BigInt)> = vec![(Vec::new(), BigInt::one())];
        for &(v, e) in &self.0 {
            let mut next = Vec::with_capacity(acc.len() * (e as usize + 1));
            for (prefix, c) in &acc {
                for k in 0..=e {
                    let mut p = prefix.clone();
                    if k > 0 {
                        p.push((v, k));
                    }
                    next.push((p, c * binomial(e, k)));
                }
            }
            acc = next;
        }
        acc.into_iter().map(|(p, c)| (MultiIndex(p), c)).collect()
    }

    pub fn rename(&self, f: &impl Fn(VarIndex) -> VarIndex) -> MultiIndex {
        MultiIndex::from_pairs(self.iter().map(|(v, e)| (f(v), e)))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> VarIndex {
        VarIndex::new(i)
    }

    #[test]
    fn canonical_storage() {
        let a = MultiIndex::from_pairs([(x(3), 1), (x(1), 2), (x(3), 2), (x(2), 0)]);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![(x(1), 2), (x(3), 3)]);
        assert_eq!(a.total_degree(), 5);
        assert_eq!(a.exponent(x(2)), 0);
    }

    #[test]
    fn division_and_splittings() {
        let a = MultiIndex::from_pairs([(x(1), 2), (x(2), 1)]);
        let b = MultiIndex::var(x(1));
        assert_eq!(
            a.checked_div(&b).unwrap(),
            MultiIndex::from_pairs([(x(1), 1), (x(2), 1)])
        );
        assert!(b.checked_div(&a).is_none());
        let splits = a.splittings();
        assert_eq!(splits.len(), 6);
        let total: BigInt = splits.iter().map(|(_, c)| c.clone()).sum();
        // Σ_β C(α,β) = 2^|α|
        assert_eq!(total, BigInt::from(8));
    }

    #[test]
    #[should_panic]
    fn zero_index_rejected() {
        VarIndex::new(0);
    }
}
