//! Nondegeneracy of face parts: `F_κ∘γ ≢ 0` for every monomial curve `γ = (c t^a)`
//! with `c ∈ (ℂ*)ⁿ` and `a` determining `κ`.
//!
//! The checker is layered: exact certificates for nondegeneracy, an exact-verified
//! witness search for degeneracy, and `Unknown` when neither succeeds.

pub mod cells;
pub mod search;

use num_traits::Zero;
use serde::Serialize;

use crate::curves::MonomialCurve;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::mixedpoly::MixedPolynomial;
use crate::polyhedron::{FaceHandle, Polyhedron};

pub use search::{Grid, SearchOptions, SearchStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Nondegenerate,
    Degenerate,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupReason {
    /// A group with a single term never vanishes on the torus.
    SingletonGroup,
    /// `Σ C_v |c^v|²` with all `C_v > 0`.
    PositiveDiagonalGroup,
    /// `Σ H_{αβ} c^α c̄^β` with `H` Hermitian positive definite.
    PositiveHermitianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupingCertificate {
    pub normal: Vec<i64>,
    pub reason: GroupReason,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCertificate {
    pub vertices: Vec<Vec<i64>>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Certificate {
    /// The face part depends on a single variable and is nonzero.
    OneVariable { variable: usize },
    /// The face part is `Σ C_v |z^v|²` with all `C_v > 0`.
    PositiveDiagonal,
    /// `F` is rotation invariant and asserted plurisubharmonic.
    RotationPsh,
    /// Every coarsest term grouping has a group that cannot vanish on the torus.
    Groupings { groupings: Vec<GroupingCertificate> },
    /// Conjunction over all bounded faces.
    AllFaces { faces: Vec<FaceCertificate> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRule {
    Search,
    /// Pure (pluriharmonic) face part on a face that is not a vertex.
    Pluriharmonic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub face: FaceHandle,
    pub curve: MonomialCurve,
    /// The curve in literal syntax.
    pub curve_text: String,
    pub rule: WitnessRule,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Diagnostics {
    pub faces_checked: usize,
    pub groupings: usize,
    pub grid_evaluations: usize,
    pub refinements: usize,
    pub grid_truncated: bool,
    pub notes: Vec<String>,
}

impl Diagnostics {
    fn absorb(&mut self, o: &Diagnostics) {
        self.faces_checked += o.faces_checked;
        self.groupings += o.groupings;
        self.grid_evaluations += o.grid_evaluations;
        self.refinements += o.refinements;
        self.grid_truncated |= o.grid_truncated;
        self.notes.extend(o.notes.iter().cloned());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub witness: Option<Witness>,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOptions {
    pub search: SearchOptions,
    /// Component bound for the small representative normal of a grouping.
    pub max_exponent: u32,
    /// Caller asserts that `F` is plurisubharmonic.
    pub assert_psh: bool,
    pub max_groupings: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { search: SearchOptions::default(), max_exponent: 12, assert_psh: false, max_groupings: 2000 }
    }
}

fn nondegenerate(c: Certificate, d: Diagnostics) -> Verdict {
    Verdict { status: Status::Nondegenerate, certificate: Some(c), witness: None, diagnostics: d }
}

fn all_diagonal_positive(p: &MixedPolynomial) -> bool {
    !p.is_zero() && p.terms().all(|(m, c)| m.is_diagonal() && c.is_positive_real())
}

/// Positive definiteness of the Hermitian coefficient matrix `H_{αβ}` of a group.
fn hermitian_positive_definite(p: &MixedPolynomial) -> bool {
    let mut idx: Vec<&Vec<u32>> = p.terms().flat_map(|(m, _)| [&m.alpha, &m.beta]).collect();
    idx.sort();
    idx.dedup();
    let k = idx.len();
    let mut h = vec![vec![GaussianRational::zero(); k]; k];
    for (m, c) in p.terms() {
        let i = idx.binary_search(&&m.alpha).unwrap();
        let j = idx.binary_search(&&m.beta).unwrap();
        h[i][j] = c.clone();
    }
    for i in 0..k {
        for j in 0..k {
            if h[j][i] != h[i][j].conj() {
                return false;
            }
        }
    }
    for i in 0..k {
        if !h[i][i].is_positive_real() {
            return false;
        }
        let inv = h[i][i].inv().unwrap();
        for r in i + 1..k {
            if h[r][i].is_zero() {
                continue;
            }
            let f = &h[r][i] * &inv;
            for col in i..k {
                let sub = &f * &h[i][col];
                h[r][col] -= &sub;
            }
        }
    }
    true
}

fn certify_group(g: &MixedPolynomial) -> Option<GroupReason> {
    if g.len() == 1 {
        Some(GroupReason::SingletonGroup)
    } else if all_diagonal_positive(g) {
        Some(GroupReason::PositiveDiagonalGroup)
    } else if hermitian_positive_definite(g) {
        Some(GroupReason::PositiveHermitianGroup)
    } else {
        None
    }
}

/// Checks `F_κ` for a bounded face `κ` of `N₊(F)`.
pub fn check_face(f: &MixedPolynomial, kappa: &FaceHandle, opts: &CheckOptions) -> Result<Verdict> {
    if !kappa.bounded {
        return Err(Error::UnboundedFace);
    }
    let poly = Polyhedron::from_poly(f);
    let face = poly.find_face(&kappa.vertices).ok_or(Error::ForeignFace)?.clone();
    check_face_in(&poly, f, &face, opts)
}

/// As [`check_face`] with a prebuilt `N₊(F)`; `kappa` must be one of its faces.
pub fn check_face_in(poly: &Polyhedron, f: &MixedPolynomial, kappa: &FaceHandle, opts: &CheckOptions) -> Result<Verdict> {
    if !kappa.bounded {
        return Err(Error::UnboundedFace);
    }
    let part = f.filter(|m, _| kappa.contains_point(&m.point()));
    let mut diag = Diagnostics { faces_checked: 1, ..Default::default() };
    if part.is_zero() {
        return Err(Error::ForeignFace);
    }
    if opts.assert_psh && f.is_rotation_invariant() {
        return Ok(nondegenerate(Certificate::RotationPsh, diag));
    }
    let vars = part.involved_vars();
    if vars.len() == 1 {
        return Ok(nondegenerate(Certificate::OneVariable { variable: vars[0] }, diag));
    }
    if all_diagonal_positive(&part) {
        return Ok(nondegenerate(Certificate::PositiveDiagonal, diag));
    }
    let pluriharmonic = part.is_pure() && part.is_real() && !kappa.is_vertex();

    let cs = cells::coarsest_groupings(poly, kappa, &part, opts.max_groupings, opts.max_exponent);
    diag.groupings = cs.partitions.len();
    if !cs.complete {
        diag.notes.push(format!("grouping enumeration stopped after {} nodes", opts.max_groupings));
    }
    let mut certs = Vec::new();
    let mut open = Vec::new();
    for cell in &cs.partitions {
        match cell.groups.iter().find_map(|g| certify_group(g).map(|r| (r, g))) {
            Some((reason, g)) => certs.push(GroupingCertificate { normal: cell.normal.clone(), reason, group: g.to_string() }),
            None => open.push(cell),
        }
    }
    if open.is_empty() && cs.complete && !pluriharmonic {
        return Ok(nondegenerate(Certificate::Groupings { groupings: certs }, diag));
    }
    let mut stats = SearchStats::default();
    for cell in open {
        if let Some(c) = search::find_torus_zero(&cell.groups, f.nvars(), &opts.search, &mut stats) {
            let curve = MonomialCurve::new(c, cell.normal.iter().map(|&x| x as u32).collect())?;
            assert!(part.substitute_curve(&curve.to_jet())?.is_zero(), "witness must annihilate the face part");
            diag.grid_evaluations = stats.grid_evaluations;
            diag.refinements = stats.refinements;
            diag.grid_truncated = stats.truncated;
            let rule = if pluriharmonic { WitnessRule::Pluriharmonic } else { WitnessRule::Search };
            let curve_text = curve.to_string();
            return Ok(Verdict {
                status: Status::Degenerate,
                certificate: None,
                witness: Some(Witness { face: kappa.clone(), curve, curve_text, rule }),
                diagnostics: diag,
            });
        }
    }
    diag.grid_evaluations = stats.grid_evaluations;
    diag.refinements = stats.refinements;
    diag.grid_truncated = stats.truncated;
    if pluriharmonic {
        diag.notes.push(format!(
            "face {:?}: pure face part on a non-vertex face is degenerate, but no Gaussian-rational witness was found",
            kappa.vertices
        ));
    } else {
        diag.notes.push(format!("face {:?}: no certificate and no witness within search bounds", kappa.vertices));
    }
    Ok(Verdict { status: Status::Unknown, certificate: None, witness: None, diagnostics: diag })
}

/// Verdicts for every bounded face, in face order, without short-circuiting.
pub fn check_faces(f: &MixedPolynomial, opts: &CheckOptions) -> Result<Vec<(FaceHandle, Verdict)>> {
    if f.is_zero() {
        return Err(Error::Flat);
    }
    let poly = Polyhedron::from_poly(f);
    poly.bounded_faces().into_iter().map(|k| Ok((k.clone(), check_face_in(&poly, f, k, opts)?))).collect()
}

/// Nondegeneracy of `F`: every bounded face part is nondegenerate.
pub fn check_all(f: &MixedPolynomial, opts: &CheckOptions) -> Result<Verdict> {
    if f.is_zero() {
        return Err(Error::Flat);
    }
    let poly = Polyhedron::from_poly(f);
    let mut diag = Diagnostics::default();
    let mut faces = Vec::new();
    let mut unknown = false;
    for k in poly.bounded_faces() {
        let v = check_face_in(&poly, f, k, opts)?;
        diag.absorb(&v.diagnostics);
        match v.status {
            Status::Degenerate => return Ok(Verdict { diagnostics: diag, ..v }),
            Status::Unknown => unknown = true,
            Status::Nondegenerate => faces.push(FaceCertificate {
                vertices: k.vertices.clone(),
                certificate: v.certificate.expect("nondegenerate verdicts carry a certificate"),
            }),
        }
    }
    if unknown {
        return Ok(Verdict { status: Status::Unknown, certificate: None, witness: None, diagnostics: diag });
    }
    Ok(nondegenerate(Certificate::AllFaces { faces }, diag))
}

#[derive(Clone, Debug, Serialize)]
pub struct KouchnirenkoFace {
    pub face: FaceHandle,
    pub status: Status,
    /// A common zero in `(ℂ*)ⁿ` of `z_j ∂F_κ/∂z_j`, when degenerate.
    pub witness: Option<Vec<GaussianRational>>,
}

/// Nondegeneracy in Kouchnirenko's sense of a holomorphic polynomial, per bounded face.
pub fn kouchnirenko_check(f: &MixedPolynomial, opts: &CheckOptions) -> Result<Vec<KouchnirenkoFace>> {
    if !f.is_holomorphic() {
        return Err(Error::NotHolomorphic);
    }
    if f.is_zero() {
        return Err(Error::Flat);
    }
    let poly = Polyhedron::from_poly(f);
    let mut out = Vec::new();
    for k in poly.bounded_faces() {
        let part = f.filter(|m, _| k.contains_point(&m.point()));
        let system: Vec<MixedPolynomial> = (0..f.nvars()).map(|j| part.d_holomorphic(j).mul_var(j)).filter(|p| !p.is_zero()).collect();
        let (status, witness) = if system.iter().any(|p| p.len() == 1) {
            (Status::Nondegenerate, None)
        } else {
            let mut stats = SearchStats::default();
            match search::find_torus_zero(&system, f.nvars(), &opts.search, &mut stats) {
                Some(c) => (Status::Degenerate, Some(c)),
                None => (Status::Unknown, None),
            }
        };
        out.push(KouchnirenkoFace { face: k.clone(), status, witness });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedComparison {
    pub index_set: Vec<usize>,
    pub full: Verdict,
    pub restricted: Verdict,
    /// `None` when either side is `Unknown`.
    pub agree: Option<bool>,
}

/// Compares `F_κ` with `(F_I)_{κ_I}` for the coordinate plane `I` spanned by `κ`.
pub fn restricted_equivalence(f: &MixedPolynomial, kappa: &FaceHandle, opts: &CheckOptions) -> Result<RestrictedComparison> {
    let poly = Polyhedron::from_poly(f);
    let face = poly.find_face(&kappa.vertices).ok_or(Error::ForeignFace)?.clone();
    let index_set = face.coordinate_support();
    if index_set.is_empty() {
        return Err(Error::Hypothesis("face at the origin".into()));
    }
    let fi = f.restrict(&index_set)?;
    let pi = Polyhedron::from_poly(&fi);
    let projected: Vec<Vec<i64>> = face.vertices.iter().map(|v| index_set.iter().map(|&j| v[j]).collect()).collect();
    let ki = pi.find_face(&projected).expect("restricted face exists").clone();
    let full = check_face_in(&poly, f, &face, opts)?;
    let restricted = check_face_in(&pi, &fi, &ki, opts)?;
    let agree = match (full.status, restricted.status) {
        (Status::Unknown, _) | (_, Status::Unknown) => None,
        (a, b) => Some(a == b),
    };
    Ok(RestrictedComparison { index_set, full, restricted, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedpoly::parse;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn status_all(s: &str, n: usize) -> Verdict {
        check_all(&parse(s, n).unwrap(), &opts()).unwrap()
    }

    #[test]
    fn diagonal_sum_is_nondegenerate() {
        let v = status_all("|z1|^2 + |z2|^4", 2);
        assert_eq!(v.status, Status::Nondegenerate);
    }

    #[test]
    fn shifted_square_is_degenerate() {
        let v = status_all("|z1 - z2|^2 + |z2|^4", 2);
        assert_eq!(v.status, Status::Degenerate);
        let w = v.witness.unwrap();
        assert_eq!(w.face.vertices, vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(w.curve.a, vec![1, 1]);
        assert_eq!(w.curve.c, vec![GaussianRational::from(1); 2]);
    }

    #[test]
    fn quartic_degenerates_on_the_edge() {
        let v = status_all("|z1|^4 - 2|z1 z2|^2 + |z2|^4 + |z3|^4", 3);
        assert_eq!(v.status, Status::Degenerate);
        assert_eq!(v.witness.unwrap().face.vertices, vec![vec![0, 4, 0], vec![4, 0, 0]]);
    }

    #[test]
    fn mcneal_mernik_second_facet() {
        let f = parse("|z1|^2 Re(z1^2 - z2^3) + |z2|^2 Re(z2^2) - Re(z1^2 conj(z2))", 2).unwrap();
        let p = Polyhedron::from_poly(&f);
        let k2 = p.find_face(&[vec![2, 1], vec![0, 4]]).unwrap();
        let v = check_face(&f, k2, &opts()).unwrap();
        assert_eq!(v.status, Status::Degenerate);
        let w = v.witness.unwrap();
        assert_eq!(w.curve.a, vec![3, 2]);
        let part = f.face_part(k2).unwrap();
        assert!(part.substitute_curve(&w.curve.scale_exponents(3).to_jet()).unwrap().is_zero());
    }

    #[test]
    fn kohn_nirenberg_one_variable() {
        let v = status_all("|z1|^8 + (15/7)|z1|^2 Re(z1^6)", 1);
        assert_eq!(v.status, Status::Nondegenerate);
    }

    #[test]
    fn hermitian_group_certificate() {
        // 2|z1|^2 + Re(z1 conj(z2)) + 2|z2|^2 is positive definite.
        let g = parse("2|z1|^2 + Re(z1 conj(z2)) + 2|z2|^2", 2).unwrap();
        assert!(hermitian_positive_definite(&g));
        let v = check_all(&g, &opts()).unwrap();
        assert_eq!(v.status, Status::Nondegenerate);
        assert!(!hermitian_positive_definite(&parse("|z1 - z2|^2", 2).unwrap()));
    }

    #[test]
    fn pluriharmonic_edge_is_degenerate() {
        let v = status_all("Re(z1^2 - z2^2)", 2);
        assert_eq!(v.status, Status::Degenerate);
        assert_eq!(v.witness.unwrap().rule, WitnessRule::Pluriharmonic);
        assert_eq!(status_all("Re(z1^2 z2^3)", 2).status, Status::Nondegenerate);
    }

    #[test]
    fn kouchnirenko_examples() {
        let good = kouchnirenko_check(&parse("z1^2 + z2^4", 2).unwrap(), &opts()).unwrap();
        assert!(good.iter().all(|f| f.status == Status::Nondegenerate));
        let bad = kouchnirenko_check(&parse("(z1 - z2)^2 + z2^4", 2).unwrap(), &opts()).unwrap();
        assert!(bad.iter().any(|f| f.status == Status::Degenerate));
        assert!(kouchnirenko_check(&parse("|z1|^2", 1).unwrap(), &opts()).is_err());
    }

    #[test]
    fn restriction_comparison() {
        let f = parse("2 Re(z3) + |z1|^2|z2|^2|z1 - z2|^2 + |z1|^10 + |z2|^10", 3).unwrap();
        let p = Polyhedron::from_poly(&f);
        let k = p.find_face(&[vec![4, 2, 0], vec![2, 4, 0]]).unwrap();
        let cmp = restricted_equivalence(&f, k, &opts()).unwrap();
        assert_eq!(cmp.index_set, vec![0, 1]);
        assert_eq!(cmp.full.status, Status::Degenerate);
        assert_eq!(cmp.agree, Some(true));
    }
}
