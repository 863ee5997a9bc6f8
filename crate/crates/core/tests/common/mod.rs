//! Strategies and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use formality_core::algebra::rational::rat;
use formality_core::algebra::{MultiIndex, OpTerm, PolyDiffOp, Polynomial, Polyvector, Rational, VarIndex};
use formality_core::graphs::{Graph, VertexKind};
use proptest::prelude::*;

pub const VARS: u32 = 3;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn monomial(max_exp: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec((1..=VARS, 0..=max_exp), 0..=3)
        .prop_map(|pairs| MultiIndex::from_pairs(pairs.into_iter().map(|(v, e)| (VarIndex::new(v), e))))
}

pub fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(2), rational()), 0..=4).prop_map(Polynomial::from_terms)
}

/// Polyvector built from arbitrary (possibly repeated, unsorted) index tuples.
pub fn polyvector(degree: usize) -> impl Strategy<Value = Polyvector> {
    prop::collection::vec((prop::collection::vec(1..=VARS + 1, degree), polynomial()), 0..=3).prop_map(move |parts| {
        let mut out = Polyvector::zero(degree);
        for (idx, c) in parts {
            let idx: Vec<VarIndex> = idx.into_iter().map(VarIndex::new).collect();
            out.add_component(&idx, &c);
        }
        out
    })
}

pub fn polydiff(arity: usize) -> impl Strategy<Value = PolyDiffOp> {
    prop::collection::vec((polynomial(), prop::collection::vec(monomial(2), arity)), 0..=3).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(c, d)| OpTerm::new(c, d)).collect();
        PolyDiffOp::from_terms(arity, terms).unwrap()
    })
}

pub fn polynomials(count: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(polynomial(), count)
}

/// `Σ (-1)^i` terms of the Hochschild differential, written out from evaluations.
pub fn d_by_evaluation(op: &PolyDiffOp, f: &[Polynomial]) -> Polynomial {
    let k = op.arity();
    assert_eq!(f.len(), k + 1);
    let mut total = &f[0] * &op.evaluate(&f[1..]).unwrap();
    for i in 0..k {
        let mut args = f.to_vec();
        let prod = &args[i] * &args[i + 1];
        args.splice(i..i + 2, [prod]);
        let term = op.evaluate(&args).unwrap();
        total = if i % 2 == 0 { total - term } else { total + term };
    }
    let last = &op.evaluate(&f[..k]).unwrap() * &f[k];
    if k.is_multiple_of(2) {
        total - last
    } else {
        total + last
    }
}

/// `U_Γ(γ)(f)` by summing over every assignment of `1..=vars` to the edges.
pub fn u_gamma_brute(graph: &Graph, gammas: &[Polyvector], fs: &[Polynomial], vars: u32) -> Polynomial {
    let edges: Vec<(usize, VertexKind, usize)> = graph
        .stars()
        .iter()
        .enumerate()
        .flat_map(|(i, star)| star.iter().map(move |t| (i + 1, t.kind, t.index)))
        .collect();
    let e = edges.len();
    let mut total = Polynomial::zero();
    let mut assign = vec![1u32; e];
    loop {
        let mut coeffs: Vec<Polynomial> = Vec::new();
        let mut pos = 0;
        for (i, star) in graph.stars().iter().enumerate() {
            let idx: Vec<VarIndex> = assign[pos..pos + star.len()]
                .iter()
                .map(|&v| VarIndex::new(v))
                .collect();
            coeffs.push(gammas[i].extract(&idx).unwrap());
            pos += star.len();
        }
        let mut args: Vec<Polynomial> = fs.to_vec();
        for (slot, &(_, kind, target)) in edges.iter().enumerate() {
            let v = VarIndex::new(assign[slot]);
            match kind {
                VertexKind::P => coeffs[target - 1] = coeffs[target - 1].partial(v),
                VertexKind::Q => args[target - 1] = args[target - 1].partial(v),
            }
        }
        let mut prod = Polynomial::one();
        for p in coeffs.iter().chain(args.iter()) {
            prod = &prod * p;
        }
        total += &prod;

        let mut k = 0;
        while k < e && assign[k] == vars {
            assign[k] = 1;
            k += 1;
        }
        if k == e {
            break;
        }
        assign[k] += 1;
    }
    total
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    use num_traits::Zero;
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// `(n + m - 1)`-subsets of the `n·m` possible `p_i → q_j` edges.
pub fn edge_subsets(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    let all: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=m).map(move |j| (i, j))).collect();
    let want = (n + m).saturating_sub(1);
    let mut out = Vec::new();
    if all.len() >= 64 {
        panic!("too many edges for a bitmask");
    }
    for mask in 0u64..(1u64 << all.len()) {
        if mask.count_ones() as usize == want {
            out.push((0..all.len()).filter(|b| mask >> b & 1 == 1).map(|b| all[b]).collect());
        }
    }
    out
}
