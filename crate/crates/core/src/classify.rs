//! Recognizers for special classes: single-simplex (semiregular) models, rotation
//! invariance, vertex conditions necessary for positivity along curves, and the
//! type-four normal form `P(z′) + Σ |z_j|²`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extended::ExtendedNat;
use crate::gaussian::GaussianRational;
use crate::mixedpoly::{MixedPolynomial, Monomial, TermClass};
use crate::nondegen::{check_all, CheckOptions, Status};
use crate::polyhedron::Polyhedron;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiregularReport {
    pub holds: bool,
    /// `(m_1, …, m_n)` when the diagram is the simplex `conv{m_j e_j}`.
    pub m: Option<Vec<u64>>,
    pub reason: String,
}

fn axis_vertices(rho: &[ExtendedNat]) -> Option<Vec<Vec<i64>>> {
    let n = rho.len();
    let mut out = Vec::new();
    for (j, r) in rho.iter().enumerate() {
        let mut v = vec![0i64; n];
        v[j] = *r.finite()? as i64;
        out.push(v);
    }
    out.sort();
    Some(out)
}

/// The Newton diagram of `F` is the single facet `conv{m_j e_j}` and `F` is nondegenerate.
pub fn semiregular_model_check(f: &MixedPolynomial, opts: &CheckOptions) -> Result<SemiregularReport> {
    if f.is_zero() {
        return Err(Error::Flat);
    }
    let poly = Polyhedron::from_poly(f);
    let no = |reason: &str| Ok(SemiregularReport { holds: false, m: None, reason: reason.into() });
    let rho = poly.rho();
    let Some(axis) = axis_vertices(&rho) else { return no("not convenient") };
    let facets = poly.bounded_facets();
    if facets.len() != 1 {
        return no(&format!("the diagram has {} bounded facets", facets.len()));
    }
    if facets[0].vertices != axis {
        return no("the diagram is not a coordinate simplex");
    }
    let m: Vec<u64> = rho.iter().map(|r| *r.finite().unwrap()).collect();
    match check_all(f, opts)?.status {
        Status::Nondegenerate => Ok(SemiregularReport { holds: true, m: Some(m), reason: "single simplex facet, nondegenerate".into() }),
        Status::Degenerate => Ok(SemiregularReport { holds: false, m: Some(m), reason: "single simplex facet, but degenerate".into() }),
        Status::Unknown => {
            Ok(SemiregularReport { holds: false, m: Some(m), reason: "single simplex facet, nondegeneracy undecided".into() })
        }
    }
}

/// Invariance under `z_j ↦ e^{iθ_j} z_j` for all `θ`: every term has `α = β`.
pub fn rotation_invariance_check(f: &MixedPolynomial) -> bool {
    f.is_rotation_invariant()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsVertex {
    pub vertex: Vec<i64>,
    pub even: bool,
    /// Coefficient of `|z^{v/2}|²`, when `v` is even.
    pub diagonal_coefficient: Option<GaussianRational>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsReport {
    /// Conjunction over vertices; necessary for positivity along curves, not sufficient.
    pub holds: bool,
    pub vertices: Vec<PsVertex>,
}

/// Every vertex `v` of `N₊(F)` is even and `F` has the term `c |z^{v/2}|²` with `c > 0`.
pub fn ps_vertex_conditions(f: &MixedPolynomial) -> Result<PsReport> {
    if f.is_zero() {
        return Err(Error::Flat);
    }
    if f.principal_part().terms().any(|(m, _)| m.class() == TermClass::Pure) {
        return Err(Error::Hypothesis("the principal part has pure terms".into()));
    }
    let poly = Polyhedron::from_poly(f);
    let vertices: Vec<PsVertex> = poly
        .vertices()
        .iter()
        .map(|v| {
            let even = v.iter().all(|x| x % 2 == 0);
            let diagonal_coefficient = even.then(|| {
                let half: Vec<u32> = v.iter().map(|&x| (x / 2) as u32).collect();
                f.coef(&Monomial { alpha: half.clone(), beta: half })
            });
            let ok = diagonal_coefficient.as_ref().is_some_and(GaussianRational::is_positive_real);
            PsVertex { vertex: v.clone(), even, diagonal_coefficient, ok }
        })
        .collect();
    Ok(PsReport { holds: vertices.iter().all(|v| v.ok), vertices })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Type4Outcome {
    Form,
    NotOfForm,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct Type4Report {
    pub outcome: Type4Outcome,
    /// Number of variables with `ρ_j = 4`.
    pub m: Option<usize>,
    /// The quartic variables first, then the quadratic ones.
    pub permutation: Vec<usize>,
    /// `P(z′)`, the principal part in the quartic variables.
    pub p: Option<MixedPolynomial>,
    /// Coefficients `d_j > 0` of `|u_j|²` for the quadratic variables.
    pub quadratic_coefficients: Vec<GaussianRational>,
    /// The linear change `z = L(u)` that diagonalizes the quadratic part, if nontrivial.
    pub change: Option<String>,
    /// Principal-part terms that are neither in `P` nor diagonal quadratic.
    pub cross_terms: Vec<String>,
    pub reason: String,
}

impl Type4Report {
    fn not_of_form(reason: impl Into<String>) -> Self {
        Type4Report {
            outcome: Type4Outcome::NotOfForm,
            m: None,
            permutation: Vec::new(),
            p: None,
            quadratic_coefficients: Vec::new(),
            change: None,
            cross_terms: Vec::new(),
            reason: reason.into(),
        }
    }
}

/// Completes squares in the quadratic part over the variables with `ρ_j = 2`.
/// Returns the substitution `z = L(u)` and the pivots `d_j`.
fn diagonalize_quadratic(
    f: &MixedPolynomial,
    quad: &[usize],
) -> std::result::Result<(Vec<MixedPolynomial>, Vec<GaussianRational>), String> {
    let n = f.nvars();
    let mut h = vec![vec![GaussianRational::zero(); n]; n];
    for (m, c) in f.terms() {
        if m.degree() != 2 {
            continue;
        }
        let (Some(i), Some(j)) = (m.alpha.iter().position(|&x| x == 1), m.beta.iter().position(|&x| x == 1)) else {
            return Err("the quadratic part has pure terms".into());
        };
        h[i][j] = c.clone();
    }
    let mut done = vec![false; n];
    // For each pivot p, u_p = z_p + Σ c_i z_i over the indices not yet pivoted.
    let mut steps: Vec<(usize, Vec<(usize, GaussianRational)>)> = Vec::new();
    let mut pivots = Vec::new();
    for &p in quad {
        let d = h[p][p].clone();
        if !d.is_positive_real() {
            return Err("the quadratic part is not positive on the quadratic variables".into());
        }
        let inv = d.inv().unwrap();
        done[p] = true;
        let coeffs: Vec<(usize, GaussianRational)> =
            (0..n).filter(|&i| !done[i] && !h[i][p].is_zero()).map(|i| (i, &h[i][p] * &inv)).collect();
        for i in 0..n {
            for j in 0..n {
                if done[i] || done[j] {
                    continue;
                }
                let sub = &(&h[i][p] * &h[p][j]) * &inv;
                h[i][j] -= &sub;
            }
        }
        for i in 0..n {
            h[i][p] = GaussianRational::zero();
            h[p][i] = GaussianRational::zero();
        }
        steps.push((p, coeffs));
        pivots.push(d);
    }
    if h.iter().flatten().any(|x| !x.is_zero()) {
        return Err("quadratic terms remain among the quartic variables".into());
    }
    // Invert in reverse pivot order: z_p = u_p − Σ c_i z_i.
    let mut z: Vec<MixedPolynomial> = (0..n).map(|j| MixedPolynomial::var(n, j)).collect();
    for (p, coeffs) in steps.iter().rev() {
        let mut e = MixedPolynomial::var(n, *p);
        for (i, c) in coeffs {
            e = e.sub(&z[*i].scale(c));
        }
        z[*p] = e;
    }
    Ok((z, pivots))
}

/// Recognizes `N₊(F) = conv{4e_j (j ∈ J₄), 2e_j (j ∈ J₂)} + ℝ≥ⁿ` with principal part
/// `P(z_{J₄}) + Σ_{J₂} d_j |u_j|²` after completing squares in the quadratic part.
pub fn type4_structure(f: &MixedPolynomial) -> Result<Type4Report> {
    let ps = ps_vertex_conditions(f)?;
    let poly = Polyhedron::from_poly(f);
    let rho = poly.rho();
    if rho.iter().any(|r| !matches!(r, ExtendedNat::Finite(2) | ExtendedNat::Finite(4))) || !rho.contains(&ExtendedNat::Finite(4)) {
        let shown: Vec<String> = rho.iter().map(|r| r.to_string()).collect();
        return Ok(Type4Report::not_of_form(format!("rho = ({}) is not made of 2s and 4s with max 4", shown.join(", "))));
    }
    if !ps.holds {
        return Ok(Type4Report::not_of_form("vertex conditions fail"));
    }
    let n = f.nvars();
    let quad: Vec<usize> = (0..n).filter(|&j| rho[j] == ExtendedNat::Finite(2)).collect();
    let quart: Vec<usize> = (0..n).filter(|&j| rho[j] == ExtendedNat::Finite(4)).collect();
    let (maps, pivots) = match diagonalize_quadratic(f, &quad) {
        Ok(x) => x,
        Err(reason) => return Ok(Type4Report { outcome: Type4Outcome::Unknown, ..Type4Report::not_of_form(reason) }),
    };
    let identity = maps.iter().enumerate().all(|(j, m)| *m == MixedPolynomial::var(n, j));
    let g = if identity { f.clone() } else { f.compose_holomorphic(&maps)? };
    let change = (!identity).then(|| {
        let us: Vec<String> = (1..=n).map(|j| format!("u{j}")).collect();
        let ur: Vec<&str> = us.iter().map(String::as_str).collect();
        let zs: Vec<String> = (1..=n).map(|j| format!("z{j}")).collect();
        format!("({}) = ({})", zs.join(", "), maps.iter().map(|m| m.display_named(&ur)).collect::<Vec<_>>().join(", "))
    });
    let gp = Polyhedron::from_poly(&g);
    let Some(axis) = axis_vertices(&gp.rho()) else {
        return Ok(Type4Report::not_of_form("not convenient after the change"));
    };
    if gp.rho() != rho || gp.vertices() != axis.as_slice() {
        return Ok(Type4Report::not_of_form("the diagram is not the simplex conv{4e_j, 2e_j}"));
    }
    let principal = g.principal_part();
    let mut cross_terms = Vec::new();
    for (m, c) in principal.terms() {
        let only_quartic = quad.iter().all(|&j| m.alpha[j] == 0 && m.beta[j] == 0);
        let diag_quadratic = m.degree() == 2 && m.is_diagonal() && quad.iter().any(|&j| m.alpha[j] == 1) && c.is_positive_real();
        if !only_quartic && !diag_quadratic {
            cross_terms.push(MixedPolynomial::monomial(m.clone(), c.clone()).to_string());
        }
    }
    let mut permutation = quart.clone();
    permutation.extend(&quad);
    if !cross_terms.is_empty() {
        return Ok(Type4Report {
            permutation,
            change,
            cross_terms,
            ..Type4Report::not_of_form("the principal part mixes quartic and quadratic variables")
        });
    }
    let p = principal.restrict(&quart)?;
    Ok(Type4Report {
        outcome: Type4Outcome::Form,
        m: Some(quart.len()),
        permutation,
        p: Some(p),
        quadratic_coefficients: pivots,
        change,
        cross_terms,
        reason: "diagram and principal part have the normal form".into(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub semiregular_model: bool,
    pub rotation_invariant: bool,
    /// `(m, n)` when the type-four normal form is recognized.
    pub type4_form: Option<(usize, usize)>,
    /// `None` when the vertex conditions' hypothesis fails.
    pub ps_vertex_ok: Option<bool>,
    pub bounded_facets: usize,
    pub nondegeneracy: Status,
    pub semiregular: SemiregularReport,
    pub ps: Option<PsReport>,
    pub type4: Option<Type4Report>,
    pub notes: Vec<String>,
}

pub fn classify(f: &MixedPolynomial, assert_psh: bool, opts: &CheckOptions) -> Result<ClassReport> {
    let opts = CheckOptions { assert_psh, ..opts.clone() };
    let rotation_invariant = rotation_invariance_check(f);
    let nondegeneracy = check_all(f, &opts)?.status;
    if rotation_invariant && assert_psh {
        assert_ne!(nondegeneracy, Status::Degenerate, "rotation-invariant psh functions are nondegenerate");
    }
    let semiregular = semiregular_model_check(f, &opts)?;
    let mut notes = Vec::new();
    let (ps, type4) = match ps_vertex_conditions(f) {
        Ok(ps) => (Some(ps), Some(type4_structure(f)?)),
        Err(Error::Hypothesis(msg)) => {
            notes.push(format!("vertex conditions not applicable: {msg}"));
            (None, None)
        }
        Err(e) => return Err(e),
    };
    if !assert_psh {
        notes.push("plurisubharmonicity was not asserted; the type-four form is structural only".into());
    }
    let type4_form = type4.as_ref().filter(|t| t.outcome == Type4Outcome::Form).map(|t| (t.m.unwrap(), f.nvars()));
    Ok(ClassReport {
        semiregular_model: semiregular.holds,
        rotation_invariant,
        type4_form,
        ps_vertex_ok: ps.as_ref().map(|p| p.holds),
        bounded_facets: Polyhedron::from_poly(f).bounded_facets().len(),
        nondegeneracy,
        semiregular,
        ps,
        type4,
        notes,
    })
}
