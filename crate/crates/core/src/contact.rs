//! Orders of vanishing along curves and their Newton-polyhedral lower bounds.

use serde::Serialize;

use crate::curves::{JetCurve, MonomialCurve};
use crate::error::{Error, Result};
use crate::extended::{ExtendedNat, ExtendedRat};
use crate::mixedpoly::MixedPolynomial;
use crate::nondegen::{Status, Verdict};
use crate::polyhedron::{FaceHandle, Polyhedron};

#[derive(Clone, Debug, Serialize)]
pub struct ContactReport {
    /// `ord(F∘γ)`.
    pub ord_composed: ExtendedNat,
    /// `ord(γ)`.
    pub ord_curve: u64,
    /// `O(F, γ) = ord(F∘γ)/ord(γ)`.
    pub contact_order: ExtendedRat,
    /// `l(φ(γ))`.
    pub l_lower_bound: ExtendedNat,
    /// `d(F, φ(γ))`.
    pub distance: ExtendedRat,
    /// `F_{Φ(γ)}∘γ̃`, homogeneous of degree `l` when nonzero.
    pub leading_part: MixedPolynomial,
    pub face: Option<FaceHandle>,
    /// Both lower bounds are attained.
    pub tight: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeadingAsymptotics {
    pub face: FaceHandle,
    pub index_set: Vec<usize>,
    pub truncation: MonomialCurve,
    pub level: u64,
    /// `F_κ∘γ̃`.
    pub leading: MixedPolynomial,
    /// `ord(F∘γ − F_κ∘γ̃)`, at least `level + 1`.
    pub residual_ord: ExtendedNat,
}

/// `Φ(γ)`, `γ̃` and the leading polynomial `F_{Φ(γ)}∘γ̃` of `F∘γ`.
pub fn leading_asymptotics(f: &MixedPolynomial, gamma: &JetCurve) -> Result<LeadingAsymptotics> {
    let poly = Polyhedron::from_poly(f);
    leading_with(&poly, f, gamma)
}

fn leading_with(poly: &Polyhedron, f: &MixedPolynomial, gamma: &JetCurve) -> Result<LeadingAsymptotics> {
    let profile = gamma.profile();
    let sm = poly.support_min(&profile.a_hat)?;
    let (Some(face), ExtendedNat::Finite(level)) = (sm.face, sm.level) else {
        return Err(Error::Flat);
    };
    let part = f.filter(|m, _| face.contains_point(&m.point()));
    let leading = part.substitute_curve(&gamma.leading_jet())?;
    let composed = f.substitute_curve(gamma)?;
    let residual_ord = composed.sub(&leading).ord();
    assert!(residual_ord > ExtendedNat::Finite(level), "residual of the leading part must vanish to order > l");
    let (_, truncation) = gamma.leading_truncation();
    Ok(LeadingAsymptotics { face, index_set: sm.index_set, truncation, level, leading, residual_ord })
}

pub fn order_of_contact(f: &MixedPolynomial, gamma: &JetCurve) -> Result<ContactReport> {
    if gamma.dim() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), got: gamma.dim() });
    }
    let poly = Polyhedron::from_poly(f);
    order_of_contact_with(&poly, f, gamma)
}

/// As [`order_of_contact`] with a prebuilt `N₊(F)`.
pub fn order_of_contact_with(poly: &Polyhedron, f: &MixedPolynomial, gamma: &JetCurve) -> Result<ContactReport> {
    let composed = f.substitute_curve(gamma)?;
    let ord_composed = composed.ord();
    let ord_curve = gamma.ord();
    let contact_order = ord_composed.div_nat(ord_curve);
    let profile = gamma.profile();
    let nd = poly.newton_distance(&profile.a_hat)?;
    let (l_lower_bound, leading_part, face) = match leading_with(poly, f, gamma) {
        Ok(la) => (ExtendedNat::Finite(la.level), la.leading, Some(la.face)),
        Err(Error::Flat) => (ExtendedNat::Infinite, MixedPolynomial::zero(1), None),
        Err(e) => return Err(e),
    };
    assert!(ord_composed >= l_lower_bound, "ord(F∘γ) ≥ l(φ(γ))");
    assert!(contact_order >= nd.distance, "O(F,γ) ≥ d(F,φ(γ))");
    if let ExtendedNat::Finite(l) = l_lower_bound {
        assert!(leading_part.terms().all(|(m, _)| m.degree() == l), "leading part is homogeneous of degree l");
    }
    let tight = ord_composed == l_lower_bound && contact_order == nd.distance;
    Ok(ContactReport { ord_composed, ord_curve, contact_order, l_lower_bound, distance: nd.distance, leading_part, face, tight })
}

/// `sup_γ O(F, γ) = max_j ρ_j(F)` for nondegenerate `F` (`∞` unless convenient).
pub fn sup_contact_under_nondegeneracy(f: &MixedPolynomial, verdict: &Verdict) -> Result<ExtendedNat> {
    if verdict.status != Status::Nondegenerate {
        return Err(Error::VerdictRequired);
    }
    if f.is_zero() {
        return Err(Error::Flat);
    }
    let rho = Polyhedron::from_poly(f).rho();
    Ok(rho.into_iter().max().expect("at least one variable"))
}
