//! Curve germs through the origin given as polynomial jets, and their monomial shadows.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extended::ExtendedNat;
use crate::gaussian::GaussianRational;
use crate::mixedpoly::parse::parse_named;
use crate::mixedpoly::{MixedPolynomial, Monomial};
use crate::polyhedron::{FaceHandle, Polyhedron};

/// `γ = (γ_1(t), …, γ_n(t))`, each component a polynomial without constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetCurve {
    components: Vec<MixedPolynomial>,
}

/// `(c_1 t^{a_1}, …, c_n t^{a_n})` with all `c_j ≠ 0` and `a_j ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialCurve {
    pub c: Vec<GaussianRational>,
    pub a: Vec<u32>,
}

/// `φ(γ)`: orders of the components (`∞` for zero components) and `I(γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionProfile {
    pub a_hat: Vec<ExtendedNat>,
    pub index_set: Vec<usize>,
}

fn t_monomial(k: u32) -> Monomial {
    Monomial { alpha: vec![k], beta: vec![0] }
}

fn lowest(p: &MixedPolynomial) -> Option<(u32, GaussianRational)> {
    p.terms().map(|(m, c)| (m.alpha[0], c.clone())).min_by_key(|(k, _)| *k)
}

impl JetCurve {
    pub fn new(components: Vec<MixedPolynomial>) -> Result<Self> {
        for (j, p) in components.iter().enumerate() {
            if p.nvars() != 1 || !p.is_holomorphic() {
                return Err(Error::NotHolomorphic);
            }
            if !p.coef(&t_monomial(0)).is_zero() {
                return Err(Error::CurveNotAtOrigin(j));
            }
        }
        if components.is_empty() || components.iter().all(MixedPolynomial::is_zero) {
            return Err(Error::ZeroCurve);
        }
        Ok(JetCurve { components })
    }

    /// Builds from `(coefficient, exponent)` lists per component.
    pub fn from_coeffs(components: &[Vec<(GaussianRational, u32)>]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|terms| MixedPolynomial::from_terms(1, terms.iter().map(|(c, k)| (t_monomial(*k), c.clone()))).expect("one variable"))
            .collect();
        Self::new(comps)
    }

    /// Parses `"(t^2, t^3 + t^4, 0)"`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Syntax { pos: 0, msg: "curve must be a parenthesized tuple".into() })?;
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push((start, &inner[start..i]));
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push((start, &inner[start..]));
        let comps = parts
            .into_iter()
            .map(|(off, p)| {
                parse_named(p, &["t"]).map_err(|e| match e {
                    Error::Syntax { pos, msg } => Error::Syntax { pos: pos + off + 1, msg },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MixedPolynomial] {
        &self.components
    }

    /// `ord(γ)`: the smallest order among nonzero components.
    pub fn ord(&self) -> u64 {
        self.components.iter().filter_map(lowest).map(|(k, _)| k as u64).min().expect("nonzero curve")
    }

    pub fn profile(&self) -> DirectionProfile {
        let a_hat: Vec<ExtendedNat> =
            self.components.iter().map(|p| lowest(p).map_or(ExtendedNat::Infinite, |(k, _)| ExtendedNat::Finite(k as u64))).collect();
        let index_set = (0..a_hat.len()).filter(|&j| a_hat[j].is_finite()).collect();
        DirectionProfile { a_hat, index_set }
    }

    /// `γ̃` restricted to `I(γ)`: the lowest monomial of each nonzero component.
    pub fn leading_truncation(&self) -> (Vec<usize>, MonomialCurve) {
        let mut idx = Vec::new();
        let mut c = Vec::new();
        let mut a = Vec::new();
        for (j, p) in self.components.iter().enumerate() {
            if let Some((k, coef)) = lowest(p) {
                idx.push(j);
                c.push(coef);
                a.push(k);
            }
        }
        (idx, MonomialCurve { c, a })
    }

    /// `γ̃` embedded back into all `n` slots (zero outside `I(γ)`).
    pub fn leading_jet(&self) -> JetCurve {
        let comps = self
            .components
            .iter()
            .map(|p| match lowest(p) {
                Some((k, c)) => MixedPolynomial::monomial(t_monomial(k), c),
                None => MixedPolynomial::zero(1),
            })
            .collect();
        JetCurve { components: comps }
    }

    /// Keeps the components indexed by `idx`, in order.
    pub fn select(&self, idx: &[usize]) -> Result<JetCurve> {
        JetCurve::new(idx.iter().map(|&j| self.components[j].clone()).collect())
    }
}

impl fmt::Display for JetCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|p| p.display_named(&["t"])).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for JetCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl MonomialCurve {
    pub fn new(c: Vec<GaussianRational>, a: Vec<u32>) -> Result<Self> {
        if c.len() != a.len() {
            return Err(Error::DimensionMismatch { expected: c.len(), got: a.len() });
        }
        if c.is_empty() {
            return Err(Error::InvalidMonomialCurve("no components".into()));
        }
        if c.iter().any(Zero::is_zero) {
            return Err(Error::InvalidMonomialCurve("zero coefficient".into()));
        }
        if a.contains(&0) {
            return Err(Error::InvalidMonomialCurve("exponents must be positive".into()));
        }
        Ok(MonomialCurve { c, a })
    }

    pub fn unit(a: Vec<u32>) -> Self {
        let c = vec![GaussianRational::one(); a.len()];
        MonomialCurve { c, a }
    }

    pub fn to_jet(&self) -> JetCurve {
        JetCurve { components: self.c.iter().zip(&self.a).map(|(c, &k)| MixedPolynomial::monomial(t_monomial(k), c.clone())).collect() }
    }

    /// Embeds into `n` slots with component `i` placed at `idx[i]`, other slots zero.
    pub fn embed(&self, n: usize, idx: &[usize]) -> JetCurve {
        let mut comps = vec![MixedPolynomial::zero(1); n];
        for (i, &j) in idx.iter().enumerate() {
            comps[j] = MixedPolynomial::monomial(t_monomial(self.a[i]), self.c[i].clone());
        }
        JetCurve { components: comps }
    }

    /// `(c, m·a)`.
    pub fn scale_exponents(&self, m: u32) -> Self {
        MonomialCurve { c: self.c.clone(), a: self.a.iter().map(|k| k * m).collect() }
    }

    pub fn a_i64(&self) -> Vec<i64> {
        self.a.iter().map(|&k| k as i64).collect()
    }
}

impl fmt::Display for MonomialCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_jet().fmt(f)
    }
}

impl MixedPolynomial {
    /// `F(γ(t), conj γ(t))` as a polynomial in `(t, t̄)`.
    pub fn substitute_curve(&self, gamma: &JetCurve) -> Result<MixedPolynomial> {
        if gamma.dim() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: gamma.dim() });
        }
        self.compose_holomorphic(&gamma.components)
    }
}

/// Whether the (partial) direction `â` determines the bounded face `κ` of `P`.
pub fn determines(p: &Polyhedron, kappa: &FaceHandle, a_hat: &[ExtendedNat]) -> Result<bool> {
    if !kappa.bounded {
        return Err(Error::UnboundedFace);
    }
    if !p.owns(kappa) {
        return Err(Error::ForeignFace);
    }
    let sm = p.support_min(a_hat)?;
    Ok(sm.face.is_some_and(|f| f.vertices == kappa.vertices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedpoly::parse;

    #[test]
    fn parse_and_profile() {
        let g = JetCurve::parse("(t^2, t^3 + t^4, 0)").unwrap();
        let p = g.profile();
        assert_eq!(p.a_hat, vec![ExtendedNat::Finite(2), ExtendedNat::Finite(3), ExtendedNat::Infinite]);
        assert_eq!(p.index_set, vec![0, 1]);
        assert_eq!(g.ord(), 2);
        assert_eq!(g.to_string(), "(t^2, t^3 + t^4, 0)");
        assert_eq!(JetCurve::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn rejects_bad_curves() {
        assert_eq!(JetCurve::parse("(1 + t, t)"), Err(Error::CurveNotAtOrigin(0)));
        assert_eq!(JetCurve::parse("(0, 0)"), Err(Error::ZeroCurve));
        assert_eq!(JetCurve::parse("(conj(t), t)"), Err(Error::NotHolomorphic));
        assert!(MonomialCurve::new(vec![GaussianRational::zero()], vec![1]).is_err());
    }

    #[test]
    fn truncation() {
        let g = JetCurve::parse("(3t, -t^2 + t^5)").unwrap();
        let (idx, m) = g.leading_truncation();
        assert_eq!(idx, vec![0, 1]);
        assert_eq!(m.c, vec![GaussianRational::from(3), GaussianRational::from(-1)]);
        assert_eq!(m.a, vec![1, 2]);
        let (idx, m) = JetCurve::parse("(t, 0)").unwrap().leading_truncation();
        assert_eq!((idx, m.a), (vec![0], vec![1]));
    }

    #[test]
    fn substitution_examples() {
        let f = parse("|z1^3 - z2^2|^2", 2).unwrap();
        assert!(f.substitute_curve(&JetCurve::parse("(t^2, t^3)").unwrap()).unwrap().is_zero());
        let g = f.substitute_curve(&JetCurve::parse("(t^2, t^3 + t^4)").unwrap()).unwrap();
        assert_eq!(g, parse("|2 z1^7 + z1^8|^2", 1).unwrap());
        assert_eq!(g.ord(), ExtendedNat::Finite(14));
        let h = parse("|z1|^2", 2).unwrap().substitute_curve(&JetCurve::parse("(t, t^5)").unwrap()).unwrap();
        assert_eq!(h, parse("|z1|^2", 1).unwrap());
    }

    #[test]
    fn determines_partial_directions() {
        let f = parse("|z1^3 - z2^2|^2", 2).unwrap();
        let p = Polyhedron::from_poly(&f);
        let edge = p.find_face(&[vec![6, 0], vec![0, 4]]).unwrap();
        assert!(determines(&p, edge, &[ExtendedNat::Finite(2), ExtendedNat::Finite(3)]).unwrap());
        let v = p.find_face(&[vec![6, 0]]).unwrap();
        assert!(determines(&p, v, &[ExtendedNat::Finite(1), ExtendedNat::Infinite]).unwrap());
    }
}
