//! Built-in regression table over the named fixtures.

use anyhow::{anyhow, Result};
use newton_core::classify::{classify, ps_vertex_conditions};
use newton_core::fixtures::{self, Fixture};
use newton_core::hypersurface::{compute_type, improve_until_nondegenerate, normalize, rho1_on_coordinate, TypeOptions};
use newton_core::nondegen::{check_all, check_face, CheckOptions, Status};
use newton_core::oracle::{sup_contact_lower_bound, SearchConfig};
use newton_core::polyhedron::Polyhedron;
use newton_core::{ExtendedNat, ExtendedRat, JetCurve};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub fixture: String,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

fn row(fx: &Fixture, check: &str, run: impl FnOnce() -> Result<(bool, String)>) -> Row {
    let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    Row { fixture: fx.name.into(), check: check.into(), pass, detail }
}

fn nat(k: u64) -> ExtendedNat {
    ExtendedNat::Finite(k)
}

pub fn run() -> Vec<Row> {
    let opts = CheckOptions::default();
    let small = |max_exponent, reg_only| SearchConfig { max_exponent, reg_only, ..SearchConfig::default() };
    let mut rows = Vec::new();

    let fx = fixtures::CUSP_MODEL;
    rows.push(row(&fx, "rho1 = 6 and degenerate", || {
        let r = fx.poly()?;
        let rho = rho1_on_coordinate(&normalize(&r)?).rho1;
        let v = check_all(&r, &opts)?;
        let face = v.witness.as_ref().map(|w| w.face.vertices.clone()).unwrap_or_default();
        Ok((rho == nat(6) && v.status == Status::Degenerate, format!("rho1 {rho}, {:?} on {face:?}", v.status)))
    }));
    rows.push(row(&fx, "infinite flag, regular bound 6", || {
        let r = fx.poly()?;
        let all = sup_contact_lower_bound(&r, &small(3, false))?;
        let reg = sup_contact_lower_bound(&r, &small(3, true))?;
        let curve = all.infinite_curve.map(|c| c.to_string()).unwrap_or_default();
        Ok((all.infinite_flag && reg.best == ExtendedRat::from_int(6), format!("vanishes on {curve}, regular best {}", reg.best)))
    }));

    let fx = fixtures::SEXTIC_PRODUCT_MODEL;
    rows.push(row(&fx, "degenerate, types bounded below by 10", || {
        let t = compute_type(&normalize(&fx.poly()?)?, &TypeOptions::default())?;
        let ok = t.rho1 == nat(10) && t.delta1.is_none() && t.delta1_reg_lb == nat(10);
        Ok((ok, format!("rho1 {}, {:?}, regular lb {}", t.rho1, t.verdict.status, t.delta1_reg_lb)))
    }));
    rows.push(row(&fx, "contact 10 along (t, t, 0)", || {
        let r = fx.poly()?;
        let rep = newton_core::contact::order_of_contact(&r, &JetCurve::parse("(t, t, 0)")?)?;
        Ok((rep.contact_order == ExtendedRat::from_int(10), format!("O = {}", rep.contact_order)))
    }));

    let fx = fixtures::KN_MODEL;
    rows.push(row(&fx, "nondegenerate with delta1 = 8", || {
        let t = compute_type(&normalize(&fx.poly()?)?, &TypeOptions::default())?;
        Ok((t.delta1 == Some(nat(8)), format!("{:?}, delta1 {:?}", t.verdict.status, t.delta1.map(|d| d.to_string()))))
    }));

    let fx = fixtures::QUARTIC_EDGE;
    rows.push(row(&fx, "degenerate on an edge", || {
        let v = check_all(&fx.poly()?, &opts)?;
        let dim = v.witness.as_ref().map(|w| w.face.dim);
        Ok((v.status == Status::Degenerate && dim == Some(1), format!("{:?}, face dim {dim:?}", v.status)))
    }));

    let fx = fixtures::DIAGONAL;
    rows.push(row(&fx, "nondegenerate", || {
        let v = check_all(&fx.poly()?, &opts)?;
        Ok((v.status == Status::Nondegenerate, format!("{:?}", v.status)))
    }));

    let fx = fixtures::SHIFTED_SQUARE;
    rows.push(row(&fx, "degenerate with witness (t, t)", || {
        let v = check_all(&fx.poly()?, &opts)?;
        let w = v.witness.map(|w| w.curve_text).unwrap_or_default();
        Ok((w == "(t, t)", format!("{:?}, witness {w}", v.status)))
    }));

    let fx = fixtures::SHIFTED_SQUARE_MODEL;
    rows.push(row(&fx, "ascent ends nondegenerate, delta1 = 4", || {
        let a = improve_until_nondegenerate(&normalize(&fx.poly()?)?, &TypeOptions::default(), 8)?;
        Ok((a.report.delta1 == Some(nat(4)), format!("{} step(s), stopped {:?}", a.steps.len(), a.stopped)))
    }));

    let fx = fixtures::REINHARDT_TWO_FACETS;
    rows.push(row(&fx, "rotation invariant, two facets, nondegenerate", || {
        let c = classify(&fx.poly()?, true, &opts)?;
        let ok = c.rotation_invariant && c.bounded_facets == 2 && c.nondegeneracy == Status::Nondegenerate;
        Ok((ok, format!("{} facets, {:?}", c.bounded_facets, c.nondegeneracy)))
    }));

    let fx = fixtures::MCNEAL_MERNIK;
    rows.push(row(&fx, "facet (0,4)-(2,1) degenerate and not regular", || {
        let f = fx.poly()?;
        let p = Polyhedron::from_poly(&f);
        let k = p.find_face(&[vec![0, 4], vec![2, 1]]).ok_or_else(|| anyhow!("facet missing"))?;
        let v = check_face(&f, k, &opts)?;
        let regular = p.regular_face(k)?;
        Ok((v.status == Status::Degenerate && !regular, format!("{:?}, normal {:?}", v.status, k.normal)))
    }));
    rows.push(row(&fx, "vertex conditions fail at (2,1)", || {
        let ps = ps_vertex_conditions(&fx.poly()?)?;
        let bad = ps.vertices.iter().any(|v| v.vertex == vec![2, 1] && !v.ok);
        Ok((bad && !ps.holds, format!("holds {}", ps.holds)))
    }));

    let fx = fixtures::TYPE4_SIMPLE;
    rows.push(row(&fx, "type-four form with m = 1", || {
        let c = classify(&fx.poly()?, false, &opts)?;
        Ok((c.type4_form.is_some_and(|(m, _)| m == 1), format!("{:?}", c.type4_form)))
    }));
    rows
}

pub fn table(rows: &[Row]) -> String {
    let wf = rows.iter().map(|r| r.fixture.len()).max().unwrap_or(0);
    let wc = rows.iter().map(|r| r.check.len()).max().unwrap_or(0);
    let mut s = String::new();
    for r in rows {
        let mark = if r.pass { "PASS" } else { "FAIL" };
        s.push_str(&format!("{mark}  {:wf$}  {:wc$}  {}\n", r.fixture, r.check, r.detail));
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    s.push_str(&format!("{passed}/{} checks passed\n", rows.len()));
    s
}
