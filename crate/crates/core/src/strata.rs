//! Configuration spaces of points on the line and the codimension-one
//! boundary strata of their compactifications.
//!
//! `C(n, m)`: `p_1 < … < p_n < 0 < q_m < … < q_1` modulo `t ↦ at`, dimension `n + m - 1`.
//! `C(n)`: `p_1 < … < p_n` modulo `t ↦ at + b`, dimension `n - 2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConfSpace {
    /// Points on both sides of a marked origin.
    LineWithOrigin { n: usize, m: usize },
    /// Points on the line.
    Line { n: usize },
}

impl ConfSpace {
    pub fn with_origin(n: usize, m: usize) -> Result<Self> {
        let s = ConfSpace::LineWithOrigin { n, m };
        s.check()?;
        Ok(s)
    }

    pub fn line(n: usize) -> Result<Self> {
        let s = ConfSpace::Line { n };
        s.check()?;
        Ok(s)
    }

    pub fn exists(&self) -> bool {
        match *self {
            ConfSpace::LineWithOrigin { n, m } => n + m >= 1,
            ConfSpace::Line { n } => n >= 2,
        }
    }

    fn check(&self) -> Result<()> {
        if self.exists() {
            Ok(())
        } else {
            Err(Error::InvalidSpace(format!("{self} is empty")))
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            ConfSpace::LineWithOrigin { n, m } => n + m - 1,
            ConfSpace::Line { n } => n - 2,
        }
    }
}

impl fmt::Display for ConfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfSpace::LineWithOrigin { n, m } => write!(f, "C({n},{m})"),
            ConfSpace::Line { n } => write!(f, "C({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    P,
    Q,
}

/// Which points collide in a codimension-one stratum of `C̄(n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum Collision {
    /// `p_{n1},…,p_n` and `q_{m1},…,q_m` (both nonempty) approach the origin together.
    #[serde(rename = "i")]
    MixedAtOrigin { n1: usize, m1: usize },
    /// A run `first..=last` (at least two points) of one side collides away from the origin.
    #[serde(rename = "ii")]
    Cluster { side: Side, first: usize, last: usize },
    /// The innermost points of one side, starting at `from`, approach the origin alone.
    #[serde(rename = "iii")]
    OneSideAtOrigin { side: Side, from: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StratumDescriptor {
    pub collision: Collision,
    /// Product factors; the cluster factor is `C(k)` for a type (ii) collision.
    pub factors: Vec<ConfSpace>,
}

impl StratumDescriptor {
    pub fn factor_dim(&self) -> usize {
        self.factors.iter().map(ConfSpace::dim).sum()
    }

    pub fn variant(&self) -> &'static str {
        match self.collision {
            Collision::MixedAtOrigin { .. } => "i",
            Collision::Cluster { .. } => "ii",
            Collision::OneSideAtOrigin { .. } => "iii",
        }
    }
}

/// Parameter choices that were dropped because a factor does not exist.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StrataReport {
    pub strata: Vec<StratumDescriptor>,
    pub excluded: Vec<(Collision, Vec<ConfSpace>)>,
}

pub fn codim1_strata_cnm(n: usize, m: usize) -> Result<Vec<StratumDescriptor>> {
    Ok(codim1_strata_cnm_report(n, m)?.strata)
}

pub fn codim1_strata_cnm_report(n: usize, m: usize) -> Result<StrataReport> {
    ConfSpace::with_origin(n, m)?;
    let mut report = StrataReport::default();
    let mut push = |collision: Collision, factors: Vec<ConfSpace>| {
        if factors.iter().all(ConfSpace::exists) {
            report.strata.push(StratumDescriptor { collision, factors });
        } else {
            report.excluded.push((collision, factors));
        }
    };
    let cnm = |n, m| ConfSpace::LineWithOrigin { n, m };

    for n1 in 1..=n {
        for m1 in 1..=m {
            push(
                Collision::MixedAtOrigin { n1, m1 },
                vec![cnm(n1 - 1, m1 - 1), cnm(n - n1 + 1, m - m1 + 1)],
            );
        }
    }
    for (side, count) in [(Side::P, n), (Side::Q, m)] {
        for first in 1..=count {
            for last in first + 1..=count {
                let size = last - first + 1;
                let outer = match side {
                    Side::P => cnm(n - size + 1, m),
                    Side::Q => cnm(n, m - size + 1),
                };
                push(
                    Collision::Cluster { side, first, last },
                    vec![ConfSpace::Line { n: size }, outer],
                );
            }
        }
    }
    for from in 1..=n {
        push(
            Collision::OneSideAtOrigin { side: Side::P, from },
            vec![cnm(from - 1, m), cnm(n - from + 1, 0)],
        );
    }
    for from in 1..=m {
        push(
            Collision::OneSideAtOrigin { side: Side::Q, from },
            vec![cnm(n, from - 1), cnm(0, m - from + 1)],
        );
    }
    Ok(report)
}

/// Codimension-one stratum of `C̄(n)`: a proper run of consecutive points collides.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TreeStratum {
    /// 1-based inclusive block `first..=last`.
    pub block: (usize, usize),
    /// `[C(n - k + 1), C(k)]` for a block of size `k`.
    pub factors: Vec<ConfSpace>,
}

pub fn codim1_strata_cn(n: usize) -> Result<Vec<TreeStratum>> {
    ConfSpace::line(n)?;
    let mut out = Vec::new();
    for size in 2..n {
        for first in 1..=n - size + 1 {
            out.push(TreeStratum {
                block: (first, first + size - 1),
                factors: vec![ConfSpace::Line { n: n - size + 1 }, ConfSpace::Line { n: size }],
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        assert_eq!(ConfSpace::with_origin(2, 1).unwrap().dim(), 2);
        assert_eq!(ConfSpace::line(4).unwrap().dim(), 2);
        assert!(ConfSpace::with_origin(0, 0).is_err());
        assert!(ConfSpace::line(1).is_err());
    }

    #[test]
    fn interval_has_two_ends() {
        let s = codim1_strata_cnm(1, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|d| d.variant() == "iii"));
    }

    #[test]
    fn two_points_one_side() {
        let s = codim1_strata_cnm(2, 0).unwrap();
        assert!(s.contains(&StratumDescriptor {
            collision: Collision::Cluster {
                side: Side::P,
                first: 1,
                last: 2
            },
            factors: vec![ConfSpace::Line { n: 2 }, ConfSpace::LineWithOrigin { n: 1, m: 0 }],
        }));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn dimension_of_c21_boundary() {
        let s = codim1_strata_cnm(2, 1).unwrap();
        assert_eq!(s.len(), 5);
        assert!(s.iter().all(|d| d.factor_dim() == 1));
        let rep = codim1_strata_cnm_report(2, 1).unwrap();
        assert!(!rep.excluded.is_empty());
    }

    #[test]
    fn line_strata() {
        assert!(codim1_strata_cn(2).unwrap().is_empty());
        assert_eq!(codim1_strata_cn(3).unwrap().len(), 2);
        let c4 = codim1_strata_cn(4).unwrap();
        let blocks: Vec<_> = c4.iter().map(|t| t.block).collect();
        assert_eq!(blocks, vec![(1, 2), (2, 3), (3, 4), (1, 3), (2, 4)]);
        assert!(c4
            .iter()
            .all(|t| t.factors.iter().map(ConfSpace::dim).sum::<usize>() == 1));
    }
}
