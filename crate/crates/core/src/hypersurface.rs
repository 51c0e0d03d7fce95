//! Model hypersurfaces `Re(w) + F(z, z̄) = 0`: normalization, `ρ₁` on a coordinate,
//! the type computation, and the coordinate ascent that raises `ρ₁`.

use std::collections::HashSet;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::curves::MonomialCurve;
use crate::error::{Error, Result};
use crate::extended::{ExtendedNat, ExtendedRat};
use crate::gaussian::GaussianRational;
use crate::mixedpoly::{q, MixedPolynomial, Monomial, TermClass};
use crate::nondegen::{check_all, check_face_in, search, CheckOptions, Status, Verdict};
use crate::oracle::{sup_contact_lower_bound, OracleReport, SearchConfig};
use crate::polyhedron::{dot, Polyhedron};

/// `r = Re(w) + F(z, z̄)` with `F` real, `F(0) = 0` and `∇F(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelHypersurface {
    pub f: MixedPolynomial,
    /// The input defining function, as given.
    pub source: String,
    /// Coordinate changes applied so far, oldest first.
    pub changes: Vec<String>,
}

fn linear(n: usize, j: usize) -> Monomial {
    let mut m = Monomial::one(n);
    m.alpha[j] = 1;
    m
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|j| if j + 1 == n { "w".to_string() } else { format!("z{}", j + 1) }).collect()
}

impl ModelHypersurface {
    /// Wraps `F` without normalizing it.
    pub fn new(f: MixedPolynomial) -> Result<Self> {
        if !f.is_real() {
            return Err(Error::NotReal);
        }
        if f.constant_value().is_some_and(|c| !c.is_zero()) {
            return Err(Error::Hypothesis("F(0) must vanish".into()));
        }
        if f.terms().any(|(m, _)| m.degree() == 1) {
            return Err(Error::Hypothesis("the gradient of F at 0 must vanish".into()));
        }
        let source = defining(&f).display_with_w();
        Ok(ModelHypersurface { f, source, changes: Vec::new() })
    }

    /// Number of `z` variables.
    pub fn n(&self) -> usize {
        self.f.nvars()
    }

    /// `r = Re(w) + F` in `n + 1` variables, `w` last.
    pub fn defining_function(&self) -> MixedPolynomial {
        defining(&self.f)
    }
}

fn defining(f: &MixedPolynomial) -> MixedPolynomial {
    let n = f.nvars();
    let map: Vec<usize> = (0..n).collect();
    f.embed(n + 1, &map).add(&MixedPolynomial::var(n + 1, n).real_part())
}

/// Brings `r` to the form `Re(w) + F` with `F` free of pure terms.
///
/// The linear part `2 Re(Σ A_j z_j)` becomes `Re(w)` by solving for the last
/// variable with `A_k ≠ 0`; pure terms `h + h̄` are then absorbed by `w ← w − 2h`.
pub fn normalize(r: &MixedPolynomial) -> Result<ModelHypersurface> {
    let nv = r.nvars();
    if nv < 2 {
        return Err(Error::NotModel("need at least one z variable besides w".into()));
    }
    if !r.is_real() {
        return Err(Error::NotReal);
    }
    if r.constant_value().is_some_and(|c| !c.is_zero()) {
        return Err(Error::Hypothesis("r(0) must vanish".into()));
    }
    let n = nv - 1;
    let a: Vec<GaussianRational> = (0..nv).map(|j| r.coef(&linear(nv, j))).collect();
    let k = (0..nv).rev().find(|&j| !a[j].is_zero()).ok_or(Error::DegenerateLinearPart)?;
    let mut changes = Vec::new();
    let standard = k == n && a[n] == q(1, 2) && a[..n].iter().all(Zero::is_zero);
    let r1 = if standard {
        r.clone()
    } else {
        // New variables: the old ones without k, in order, then w' = 2 Σ A_j z_j.
        let pos = |j: usize| if j < k { j } else { j - 1 };
        let inv = a[k].inv().expect("nonzero");
        let maps: Vec<MixedPolynomial> = (0..nv)
            .map(|j| {
                if j != k {
                    return MixedPolynomial::var(nv, pos(j));
                }
                let mut e = MixedPolynomial::var(nv, n).scale(&q(1, 2));
                for (i, ai) in a.iter().enumerate() {
                    if i != k && !ai.is_zero() {
                        e = e.sub(&MixedPolynomial::var(nv, pos(i)).scale(ai));
                    }
                }
                e.scale(&inv)
            })
            .collect();
        let old = names(nv);
        changes.push(format!(
            "({}) = ({})",
            old.join(", "),
            maps.iter().map(MixedPolynomial::display_with_w).collect::<Vec<_>>().join(", ")
        ));
        r.compose_holomorphic(&maps)?
    };
    let rest = r1.sub(&MixedPolynomial::var(nv, n).real_part());
    if rest.involved_vars().contains(&n) {
        return Err(Error::NotModel("F depends on w after straightening the linear part".into()));
    }
    let vars: Vec<usize> = (0..n).collect();
    let f = rest.restrict(&vars)?;
    let (pure, mixed) = f.pure_mixed_split();
    if !pure.is_zero() {
        let h = pure.filter(|m, _| m.beta.iter().all(|&b| b == 0));
        let shift = h.scale(&q(2, 1)).embed(nv, &vars);
        changes.push(format!("w = w - ({})", shift.display_with_w()));
    }
    Ok(ModelHypersurface { f: mixed, source: r.display_with_w(), changes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoReport {
    /// `max_j ρ_j(r)`, `∞` unless convenient.
    pub rho1: ExtendedNat,
    /// `ρ_j(r)` for `z_1, …, z_n, w`; the `w` slot is 1.
    pub rho: Vec<ExtendedNat>,
    /// Indices sorted by decreasing `ρ_j` (stable).
    pub permutation: Vec<usize>,
}

pub fn rho1_on_coordinate(m: &ModelHypersurface) -> RhoReport {
    let rho = Polyhedron::from_poly(&m.defining_function()).rho();
    let rho1 = rho.iter().max().cloned().expect("w slot");
    let mut permutation: Vec<usize> = (0..rho.len()).collect();
    permutation.sort_by(|&x, &y| rho[y].cmp(&rho[x]));
    RhoReport { rho1, rho, permutation }
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeOptions {
    pub check: CheckOptions,
    pub oracle: SearchConfig,
    /// Run the oracle even when the verdict alone settles the type.
    pub oracle_when_nondegenerate: bool,
}

impl Default for TypeOptions {
    fn default() -> Self {
        TypeOptions { check: CheckOptions::default(), oracle: SearchConfig::small(), oracle_when_nondegenerate: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeReport {
    pub rho1: ExtendedNat,
    pub rho: Vec<ExtendedNat>,
    pub permutation: Vec<usize>,
    pub verdict: Verdict,
    /// `Δ₁ = Δ₁^reg = ρ₁`, set only for nondegenerate `F`.
    pub delta1: Option<ExtendedNat>,
    /// Lower bound for the regular type: `max(ρ₁, best regular contact found)`.
    pub delta1_reg_lb: ExtendedNat,
    /// Lower bound for the singular type.
    pub delta1_lb: ExtendedRat,
    /// `r` vanishes identically along a curve, so the singular type is infinite.
    pub infinite_flag: bool,
    pub oracle_regular: Option<OracleReport>,
    pub oracle_singular: Option<OracleReport>,
    pub notes: Vec<String>,
}

fn rat_to_nat(x: &ExtendedRat) -> ExtendedNat {
    match x {
        ExtendedRat::Infinite => ExtendedNat::Infinite,
        ExtendedRat::Finite(v) => ExtendedNat::Finite(v.floor().to_integer().to_u64().unwrap_or(0)),
    }
}

fn run_oracles(r: &MixedPolynomial, cfg: &SearchConfig) -> Result<(OracleReport, OracleReport)> {
    let reg = sup_contact_lower_bound(r, &SearchConfig { reg_only: true, ..cfg.clone() })?;
    let all = sup_contact_lower_bound(r, &SearchConfig { reg_only: false, ..cfg.clone() })?;
    Ok((reg, all))
}

/// Types of the origin on `M`: exact when `F` is certified nondegenerate, bounds otherwise.
pub fn compute_type(m: &ModelHypersurface, opts: &TypeOptions) -> Result<TypeReport> {
    if m.f.principal_part().terms().any(|(mono, _)| mono.class() == TermClass::Pure) {
        return Err(Error::Hypothesis("the principal part of F has pure terms; normalize first".into()));
    }
    let rr = rho1_on_coordinate(m);
    let verdict = check_all(&m.f, &opts.check)?;
    let r = m.defining_function();
    let mut notes = Vec::new();
    let (delta1, mut delta1_reg_lb, mut delta1_lb) = match verdict.status {
        Status::Nondegenerate => (Some(rr.rho1.clone()), rr.rho1.clone(), rr.rho1.to_rat()),
        _ => (None, rr.rho1.clone(), rr.rho1.to_rat()),
    };
    let run = verdict.status != Status::Nondegenerate || opts.oracle_when_nondegenerate;
    let (oracle_regular, oracle_singular) = if run {
        let (reg, all) = run_oracles(&r, &opts.oracle)?;
        (Some(reg), Some(all))
    } else {
        (None, None)
    };
    if let (Some(reg), Some(all)) = (&oracle_regular, &oracle_singular) {
        if verdict.status == Status::Nondegenerate {
            assert!(rat_to_nat(&reg.best) <= rr.rho1, "regular contact cannot exceed the type");
            assert!(all.best <= rr.rho1.to_rat(), "contact cannot exceed the type");
        }
        delta1_reg_lb = delta1_reg_lb.max(rat_to_nat(&reg.best));
        delta1_lb = delta1_lb.max(all.best.clone());
    }
    let infinite_flag = oracle_singular.as_ref().is_some_and(|o| o.infinite_flag);
    match verdict.status {
        Status::Nondegenerate => notes.push(format!("F is nondegenerate: the coordinate is canonical and the types equal {}", rr.rho1)),
        Status::Degenerate => {
            let w = verdict.witness.as_ref().expect("degenerate verdicts carry a witness");
            notes.push(format!("the face part on {:?} vanishes along {}; this coordinate is not canonical", w.face.vertices, w.curve_text));
        }
        Status::Unknown => notes.push("nondegeneracy could not be decided; only bounds are reported".into()),
    }
    if verdict.status != Status::Nondegenerate {
        if infinite_flag {
            let c = oracle_singular.as_ref().and_then(|o| o.infinite_curve.as_ref()).expect("flag has a curve");
            notes.push(format!("r vanishes identically along {c}: the singular type is infinite"));
        }
        if delta1_reg_lb == rr.rho1 {
            notes.push(format!(
                "regular lower bound {} equals rho1 = {}, the value the type takes on a canonical coordinate",
                delta1_reg_lb, rr.rho1
            ));
        } else {
            notes.push(format!("regular contact {} exceeds rho1 = {}: the coordinate is not adapted", delta1_reg_lb, rr.rho1));
        }
    }
    Ok(TypeReport {
        rho1: rr.rho1,
        rho: rr.rho,
        permutation: rr.permutation,
        verdict,
        delta1,
        delta1_reg_lb,
        delta1_lb,
        infinite_flag,
        oracle_regular,
        oracle_singular,
        notes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Improvement {
    /// The coordinate with maximal `ρ_j` along which the witness has order 1.
    pub pivot: usize,
    pub face: Vec<Vec<i64>>,
    pub witness: MonomialCurve,
    /// `z = Ψ(w)` in readable form.
    pub change: String,
    pub rho1_before: ExtendedNat,
    pub rho1_after: ExtendedNat,
    pub result: ModelHypersurface,
}

fn group_signature(part: &MixedPolynomial, a: &[i64]) -> (Vec<i64>, Vec<MixedPolynomial>) {
    let mut keys: Vec<i64> = part.terms().map(|(m, _)| dot(a, &m.alpha.iter().map(|&x| x as i64).collect::<Vec<_>>())).collect();
    let mut distinct = keys.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let groups =
        distinct.iter().map(|&k| part.filter(|m, _| dot(a, &m.alpha.iter().map(|&x| x as i64).collect::<Vec<_>>()) == k)).collect();
    for k in keys.iter_mut() {
        *k = distinct.binary_search(k).unwrap() as i64;
    }
    (keys, groups)
}

/// Vectors with `a_pivot = 1` and other entries in `1..=bound`, by increasing sum.
fn pivot_normals(n: usize, pivot: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut a = vec![1i64; n];
    loop {
        out.push(a.clone());
        let mut k = 0;
        while k < n {
            if k != pivot && a[k] < bound {
                a[k] += 1;
                break;
            }
            if k != pivot {
                a[k] = 1;
            }
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out.sort_by_key(|a| (a.iter().sum::<i64>(), a.clone()));
    out
}

/// One ascent step: if a face through the top vertex `ρ_j e_j` carries a witness
/// `γ = (c t^a)` with `a_j = 1`, the change `z_j = w_j`, `z_i = w_i + c_i w_j^{a_i}`
/// raises `ρ₁`.
pub fn improve_coordinate(m: &ModelHypersurface, opts: &CheckOptions) -> Result<Option<Improvement>> {
    let f = &m.f;
    let n = f.nvars();
    let poly = Polyhedron::from_poly(f);
    if poly.is_flat() || !poly.convenient() {
        return Err(Error::Hypothesis("F must be convenient".into()));
    }
    let rho = poly.rho();
    let rho1 = rho.iter().max().cloned().unwrap();
    let bound = poly.vertices().iter().flatten().copied().max().unwrap_or(0).max(12);
    for pivot in (0..n).rev().filter(|&j| rho[j] == rho1) {
        let mut apex = vec![0i64; n];
        apex[pivot] = *rho1.finite().unwrap() as i64;
        let normals = pivot_normals(n, pivot, bound);
        for kappa in poly.bounded_faces().into_iter().filter(|k| !k.is_vertex() && k.vertices.contains(&apex)) {
            let part = f.filter(|mono, _| kappa.contains_point(&mono.point()));
            let mut seen = HashSet::new();
            for a in &normals {
                if !poly.determines(kappa, a)? {
                    continue;
                }
                let (sig, groups) = group_signature(&part, a);
                if !seen.insert(sig) {
                    continue;
                }
                let mut stats = search::SearchStats::default();
                let Some(c) = search::find_torus_zero(&groups, n, &opts.search, &mut stats) else { continue };
                // Rescale t so that the pivot coefficient is 1.
                let lam = c[pivot].inv().expect("torus point");
                let c: Vec<GaussianRational> = c.iter().zip(a).map(|(ci, &ai)| ci * &lam.pow(ai as u32)).collect();
                let witness = MonomialCurve::new(c, a.iter().map(|&x| x as u32).collect())?;
                assert!(part.substitute_curve(&witness.to_jet())?.is_zero(), "witness annihilates the face part");
                let maps: Vec<MixedPolynomial> = (0..n)
                    .map(|i| {
                        let v = MixedPolynomial::var(n, i);
                        if i == pivot {
                            v
                        } else {
                            v.add(&MixedPolynomial::var(n, pivot).pow(witness.a[i]).scale(&witness.c[i]))
                        }
                    })
                    .collect();
                let g = f.compose_holomorphic(&maps)?;
                let mut result = normalize(&defining(&g))?;
                let zn: Vec<String> = (1..=n).map(|j| format!("z{j}")).collect();
                let zr: Vec<&str> = zn.iter().map(String::as_str).collect();
                let change =
                    format!("({}) = ({})", zn.join(", "), maps.iter().map(|p| p.display_named(&zr)).collect::<Vec<_>>().join(", "));
                let mut changes = m.changes.clone();
                changes.push(change.clone());
                changes.extend(result.changes);
                result.changes = changes;
                result.source = m.source.clone();
                let after = Polyhedron::from_poly(&result.f).rho().into_iter().max().unwrap();
                assert!(after > rho1, "the ascent step must raise rho1");
                return Ok(Some(Improvement {
                    pivot,
                    face: kappa.vertices.clone(),
                    witness,
                    change,
                    rho1_before: rho1,
                    rho1_after: after,
                    result,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AscentStop {
    Nondegenerate,
    Unknown,
    NoQualifyingWitness,
    NotConvenient,
    IterationCap,
}

#[derive(Clone, Debug, Serialize)]
pub struct Ascent {
    pub steps: Vec<Improvement>,
    pub stopped: AscentStop,
    pub report: TypeReport,
    pub result: ModelHypersurface,
}

/// Repeats [`improve_coordinate`] until `F` is nondegenerate or no step applies.
pub fn improve_until_nondegenerate(m: &ModelHypersurface, opts: &TypeOptions, cap: usize) -> Result<Ascent> {
    let mut cur = m.clone();
    let mut steps = Vec::new();
    let stopped = loop {
        match check_all(&cur.f, &opts.check)?.status {
            Status::Nondegenerate => break AscentStop::Nondegenerate,
            Status::Unknown => break AscentStop::Unknown,
            Status::Degenerate => {}
        }
        if steps.len() >= cap {
            break AscentStop::IterationCap;
        }
        match improve_coordinate(&cur, &opts.check) {
            Ok(Some(step)) => {
                cur = step.result.clone();
                steps.push(step);
            }
            Ok(None) => break AscentStop::NoQualifyingWitness,
            Err(Error::Hypothesis(_)) => break AscentStop::NotConvenient,
            Err(e) => return Err(e),
        }
    };
    let report = compute_type(&cur, opts)?;
    Ok(Ascent { steps, stopped, report, result: cur })
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditFace {
    pub vertices: Vec<Vec<i64>>,
    /// A determining normal with a component equal to 1.
    pub regular_normal: Option<Vec<i64>>,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    /// The vertices `ρ₁ e_j` with `ρ_j = ρ₁`.
    pub top_vertices: Vec<Vec<i64>>,
    pub faces: Vec<AuditFace>,
    /// A regular face through a top vertex is degenerate, so the coordinate is not adapted.
    pub not_adapted: bool,
}

/// Verdicts of the bounded faces of `N₊(r)` that meet the top vertices.
pub fn regular_face_audit(m: &ModelHypersurface, opts: &CheckOptions) -> Result<AuditReport> {
    let r = m.defining_function();
    let poly = Polyhedron::from_poly(&r);
    if !poly.convenient() {
        return Err(Error::Hypothesis("F must be convenient".into()));
    }
    let rho = poly.rho();
    let rho1 = rho.iter().max().cloned().unwrap();
    let top: Vec<Vec<i64>> = (0..rho.len())
        .filter(|&j| rho[j] == rho1)
        .map(|j| {
            let mut v = vec![0i64; rho.len()];
            v[j] = *rho1.finite().unwrap() as i64;
            v
        })
        .collect();
    let bound = poly.vertices().iter().flatten().copied().max().unwrap_or(0).max(12);
    let mut faces = Vec::new();
    for k in poly.bounded_faces() {
        if !k.vertices.iter().any(|v| top.contains(v)) {
            continue;
        }
        let regular_normal = poly.regular_normal(k, bound)?;
        let status = check_face_in(&poly, &r, k, opts)?.status;
        faces.push(AuditFace { vertices: k.vertices.clone(), regular_normal, status });
    }
    let not_adapted = faces.iter().any(|f| f.regular_normal.is_some() && f.status == Status::Degenerate);
    Ok(AuditReport { top_vertices: top, faces, not_adapted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedpoly::parse;

    fn model(s: &str) -> ModelHypersurface {
        normalize(&crate::mixedpoly::parse_auto(s).unwrap()).unwrap()
    }

    #[test]
    fn normalize_absorbs_pure_terms() {
        let m = model("Re(w) + Re(z1^2) + |z1|^4");
        assert_eq!(m.f, parse("|z1|^4", 1).unwrap());
        assert_eq!(m.changes, vec!["w = w - (z1^2)".to_string()]);
        let again = normalize(&m.defining_function()).unwrap();
        assert_eq!(again.f, m.f);
        assert!(again.changes.is_empty());
    }

    #[test]
    fn normalize_straightens_the_linear_part() {
        let m = model("2 Re(z3) + |z1^3 - z2^2|^2");
        assert_eq!(m.f, parse("|z1^3 - z2^2|^2", 2).unwrap());
        assert_eq!(m.changes.len(), 1);
        let m = model("Re(w) + Re(z1) + |z1|^2");
        // w' = w + z1, and z1 stays, so F keeps |z1|^2.
        assert_eq!(m.f, parse("|z1|^2", 1).unwrap());
        assert!(normalize(&parse("|z1|^2", 2).unwrap()).is_err());
        assert!(matches!(normalize(&parse("Re(w) + |w|^2 + |z1|^2", 2).unwrap()), Err(Error::NotModel(_))));
    }

    #[test]
    fn kohn_nirenberg_is_unchanged() {
        let m = model("Re(w) + |z1|^8 + (15/7)|z1|^2 Re(z1^6)");
        assert!(m.changes.is_empty());
    }

    #[test]
    fn rho_of_models() {
        let r = rho1_on_coordinate(&model("2 Re(z3) + |z1^3 - z2^2|^2"));
        assert_eq!(r.rho, vec![ExtendedNat::Finite(6), ExtendedNat::Finite(4), ExtendedNat::Finite(1)]);
        assert_eq!(r.rho1, ExtendedNat::Finite(6));
        assert_eq!(r.permutation, vec![0, 1, 2]);
        assert_eq!(rho1_on_coordinate(&model("Re(w) + |z1 z2|^2")).rho1, ExtendedNat::Infinite);
        let r = rho1_on_coordinate(&model("Re(w) + |z1|^2 + |z2|^4"));
        assert_eq!(r.permutation, vec![1, 0, 2]);
    }

    #[test]
    fn type_of_diagonal_model() {
        let t = compute_type(&model("Re(w) + |z1|^2 + |z2|^4"), &TypeOptions::default()).unwrap();
        assert_eq!(t.delta1, Some(ExtendedNat::Finite(4)));
        assert_eq!(t.verdict.status, Status::Nondegenerate);
    }

    #[test]
    fn ascent_on_shifted_square() {
        let m = model("Re(w) + |z1 - z2|^2 + |z2|^4");
        let step = improve_coordinate(&m, &CheckOptions::default()).unwrap().unwrap();
        assert_eq!(step.pivot, 1);
        assert_eq!(step.rho1_before, ExtendedNat::Finite(2));
        assert_eq!(step.rho1_after, ExtendedNat::Finite(4));
        assert_eq!(step.result.f, parse("|z1|^2 + |z2|^4", 2).unwrap());
        let asc = improve_until_nondegenerate(&m, &TypeOptions::default(), 16).unwrap();
        assert_eq!(asc.stopped, AscentStop::Nondegenerate);
        assert_eq!(asc.report.delta1, Some(ExtendedNat::Finite(4)));
    }

    #[test]
    fn no_step_without_apex_witness() {
        let m = model("Re(w) + |z1|^2 + |z2|^4");
        assert!(improve_coordinate(&m, &CheckOptions::default()).unwrap().is_none());
    }
}
