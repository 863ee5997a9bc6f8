//! JSON forms. Monomials and derivative stacks are sorted `[var, exp]` pairs;
//! rationals are `"num/den"` strings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::multi_index::{MultiIndex, VarIndex};
use super::polydiff::{OpTerm, PolyDiffOp};
use super::polynomial::Polynomial;
use super::polyvector::Polyvector;
use super::rational::{format_rational, parse_rational};

fn mi_to_wire(m: &MultiIndex) -> Vec<[u32; 2]> {
    m.iter().map(|(v, e)| [v.get(), e]).collect()
}

fn mi_from_wire(pairs: &[[u32; 2]]) -> Result<MultiIndex, String> {
    let mut prev = 0;
    for &[v, e] in pairs {
        if v <= prev || e == 0 {
            return Err(format!("malformed multi-index {pairs:?}"));
        }
        prev = v;
    }
    Ok(MultiIndex::from_pairs(
        pairs.iter().map(|&[v, e]| (VarIndex::new(v), e)),
    ))
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    monomial: Vec<[u32; 2]>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct WirePolynomial {
    terms: Vec<WireTerm>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WirePolynomial {
            terms: self
                .terms()
                .map(|(m, c)| WireTerm {
                    monomial: mi_to_wire(m),
                    coeff: format_rational(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = WirePolynomial::deserialize(d)?;
        let mut out = Polynomial::zero();
        for t in wire.terms {
            let m = mi_from_wire(&t.monomial).map_err(D::Error::custom)?;
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct WireComponent {
    indices: Vec<u32>,
    coeff: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct WirePolyvector {
    degree: usize,
    components: Vec<WireComponent>,
}

impl Serialize for Polyvector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WirePolyvector {
            degree: self.degree(),
            components: self
                .components()
                .map(|(k, c)| WireComponent {
                    indices: k.iter().map(|v| v.get()).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyvector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = WirePolyvector::deserialize(d)?;
        let mut out = Polyvector::zero(wire.degree);
        for c in wire.components {
            if c.indices.len() != wire.degree || c.indices.contains(&0) {
                return Err(D::Error::custom(format!(
                    "component {:?} does not fit degree {}",
                    c.indices, wire.degree
                )));
            }
            let idx: Vec<VarIndex> = c.indices.iter().map(|&i| VarIndex::new(i)).collect();
            out.add_component(&idx, &c.coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct WireOpTerm {
    coeff: Polynomial,
    derivs: Vec<Vec<[u32; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct WireOp {
    arity: usize,
    terms: Vec<WireOpTerm>,
}

impl Serialize for PolyDiffOp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireOp {
            arity: self.arity(),
            terms: self
                .normalize()
                .terms()
                .iter()
                .map(|t| WireOpTerm {
                    coeff: t.coeff.clone(),
                    derivs: t.derivs.iter().map(mi_to_wire).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyDiffOp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = WireOp::deserialize(d)?;
        let terms = wire
            .terms
            .into_iter()
            .map(|t| {
                let derivs = t
                    .derivs
                    .iter()
                    .map(|p| mi_from_wire(p))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(OpTerm::new(t.coeff, derivs))
            })
            .collect::<Result<Vec<_>, String>>()
            .map_err(D::Error::custom)?;
        PolyDiffOp::from_terms(wire.arity, terms)
            .map(|op| op.normalize())
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn polynomial_text() {
        let p = &Polynomial::x(2).scale(&rat(2, 3)) + &(&Polynomial::x(1) * &Polynomial::x(1));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"monomial":[[1,2]],"coeff":"1/1"},{"monomial":[[2,1]],"coeff":"2/3"}]}"#
        );
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_unsorted_monomials() {
        let s = r#"{"terms":[{"monomial":[[2,1],[1,1]],"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<Polynomial>(s).is_err());
    }

    #[test]
    fn polyvector_and_operator_round_trip() {
        let g = Polyvector::basis(&[VarIndex::new(2), VarIndex::new(1)], Polynomial::x(3));
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<Polyvector>(&s).unwrap(), g);
        assert!(serde_json::from_str::<Polyvector>(
            r#"{"degree":2,"components":[{"indices":[1],"coeff":{"terms":[]}}]}"#
        )
        .is_err());

        let op = crate::hochschild::hkr(&g);
        let s = serde_json::to_string(&op).unwrap();
        assert_eq!(serde_json::from_str::<PolyDiffOp>(&s).unwrap(), op);
    }
}
