//! Brute-force lower bounds for contact orders over a finite family of curves,
//! and an exact cross-check of the Newton-distance formulas along that family.
//!
//! The family is the set of monomial curves `(c_j t^{a_j})` with `c_j` in a palette
//! (or `0`) and `a_j ≤ max_exponent`, followed by two-term jets that perturb one
//! component of the best monomial curves. Each composition is first evaluated in
//! floating point; any coefficient that might cancel is settled exactly.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contact::order_of_contact_with;
use crate::curves::JetCurve;
use crate::error::{Error, Result};
use crate::extended::{ExtendedNat, ExtendedRat};
use crate::gaussian::{GaussianRational, C64};
use crate::mixedpoly::{q, MixedPolynomial};
use crate::nondegen::{check_face_in, CheckOptions, Status};
use crate::polyhedron::Polyhedron;

const CANCEL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Bound on the exponent of each monomial component.
    pub max_exponent: u32,
    pub palette: Vec<GaussianRational>,
    /// Bound on the exponent of the second term of a two-term jet.
    pub jet_degree: u32,
    pub max_curves: usize,
    /// Only regular curves (`ord γ = 1`).
    pub reg_only: bool,
    /// Number of best monomial curves that seed the two-term jets.
    pub refine_top: usize,
}

impl SearchConfig {
    /// `{±1, ±i, ±1/2, ±2}`.
    pub fn default_palette() -> Vec<GaussianRational> {
        let mut p = Vec::new();
        for v in [q(1, 1), GaussianRational::i(), q(1, 2), q(2, 1)] {
            p.push(v.clone());
            p.push(-v);
        }
        p
    }

    /// A cheap configuration for bounds reported alongside other results.
    pub fn small() -> Self {
        SearchConfig {
            max_exponent: 4,
            palette: vec![q(1, 1), q(-1, 1), GaussianRational::i(), -GaussianRational::i()],
            jet_degree: 8,
            max_curves: 200_000,
            reg_only: false,
            refine_top: 16,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.palette.is_empty() {
            return Err(Error::Config("empty coefficient palette".into()));
        }
        if self.palette.iter().any(Zero::is_zero) {
            return Err(Error::Config("palette must not contain 0".into()));
        }
        if self.max_exponent == 0 {
            return Err(Error::Config("max_exponent must be positive".into()));
        }
        if self.jet_degree < self.max_exponent {
            return Err(Error::Config("jet_degree must be at least max_exponent".into()));
        }
        Ok(())
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_exponent: 6,
            palette: Self::default_palette(),
            jet_degree: 12,
            max_curves: 1_000_000,
            reg_only: false,
            refine_top: 64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    /// Largest `ord(F∘γ)/ord(γ)` over the family.
    pub best: ExtendedRat,
    pub argmax: Option<JetCurve>,
    pub argmax_ord_composed: Option<ExtendedNat>,
    pub argmax_ord_curve: Option<u64>,
    /// Some composition vanishes identically.
    pub infinite_flag: bool,
    /// A curve with `F∘γ ≡ 0`, re-verifiable exactly.
    pub infinite_curve: Option<JetCurve>,
    pub curves_evaluated: usize,
    pub exact_fallbacks: usize,
    /// The monomial family was cut off at `max_curves`.
    pub truncated: bool,
}

/// A curve as sparse components `(coefficient, exponent)`, exponents increasing.
type Sparse = Vec<Vec<(GaussianRational, u32)>>;

struct Term {
    coef: C64,
    alpha: Vec<u32>,
    beta: Vec<u32>,
}

struct Evaluator<'a> {
    f: &'a MixedPolynomial,
    terms: Vec<Term>,
}

#[derive(Clone)]
struct Outcome {
    ord: ExtendedNat,
    ord_curve: u64,
    exact: bool,
}

impl Outcome {
    fn contact(&self) -> ExtendedRat {
        self.ord.div_nat(self.ord_curve)
    }
}

/// Univariate polynomial in `t` with magnitude bounds for cancellation detection.
#[derive(Clone)]
struct TPoly {
    coef: Vec<C64>,
    mag: Vec<f64>,
    low: usize,
}

impl TPoly {
    fn one() -> Self {
        TPoly { coef: vec![C64::ONE], mag: vec![1.0], low: 0 }
    }

    fn from_sparse(c: &[(C64, u32)]) -> Self {
        let hi = c.iter().map(|x| x.1).max().unwrap_or(0) as usize;
        let mut coef = vec![C64::ZERO; hi + 1];
        let mut mag = vec![0.0; hi + 1];
        for &(v, e) in c {
            coef[e as usize] = v;
            mag[e as usize] = v.abs();
        }
        let low = c.iter().map(|x| x.1).min().unwrap_or(0) as usize;
        TPoly { coef, mag, low }
    }

    fn mul(&self, o: &TPoly) -> TPoly {
        let len = self.coef.len() + o.coef.len() - 1;
        let mut coef = vec![C64::ZERO; len];
        let mut mag = vec![0.0; len];
        for i in self.low..self.coef.len() {
            if self.mag[i] == 0.0 {
                continue;
            }
            for k in o.low..o.coef.len() {
                if o.mag[k] == 0.0 {
                    continue;
                }
                coef[i + k] = coef[i + k].add(self.coef[i].mul(o.coef[k]));
                mag[i + k] += self.mag[i] * o.mag[k];
            }
        }
        TPoly { coef, mag, low: self.low + o.low }
    }
}

impl<'a> Evaluator<'a> {
    fn new(f: &'a MixedPolynomial) -> Self {
        let terms = f.terms().map(|(m, c)| Term { coef: c.to_c64(), alpha: m.alpha.clone(), beta: m.beta.clone() }).collect();
        Evaluator { f, terms }
    }

    fn evaluate(&self, curve: &Sparse) -> Outcome {
        let n = curve.len();
        let comps: Vec<Vec<(C64, u32)>> = curve.iter().map(|c| c.iter().map(|(g, e)| (g.to_c64(), *e)).collect()).collect();
        let ord_curve = curve.iter().filter_map(|c| c.first().map(|x| x.1 as u64)).min().expect("nonzero curve");
        let mut powers: Vec<HashMap<u32, TPoly>> = vec![HashMap::new(); n];
        let base: Vec<TPoly> = comps.iter().map(|c| TPoly::from_sparse(c)).collect();
        let mut power = |j: usize, k: u32| -> TPoly {
            if k == 0 {
                return TPoly::one();
            }
            if let Some(p) = powers[j].get(&k) {
                return p.clone();
            }
            let mut acc = TPoly::one();
            for _ in 0..k {
                acc = acc.mul(&base[j]);
            }
            powers[j].insert(k, acc.clone());
            acc
        };
        // (p, q) -> (value, magnitude)
        let mut acc: HashMap<(usize, usize), (C64, f64)> = HashMap::new();
        'terms: for t in &self.terms {
            let mut a = TPoly::one();
            let mut b = TPoly::one();
            for j in 0..n {
                if (t.alpha[j] > 0 || t.beta[j] > 0) && comps[j].is_empty() {
                    continue 'terms;
                }
                if t.alpha[j] > 0 {
                    a = a.mul(&power(j, t.alpha[j]));
                }
                if t.beta[j] > 0 {
                    b = b.mul(&power(j, t.beta[j]));
                }
            }
            let cm = t.coef.abs();
            for p in a.low..a.coef.len() {
                if a.mag[p] == 0.0 {
                    continue;
                }
                for qq in b.low..b.coef.len() {
                    if b.mag[qq] == 0.0 {
                        continue;
                    }
                    let v = t.coef.mul(a.coef[p]).mul(b.coef[qq].conj());
                    let e = acc.entry((p, qq)).or_insert((C64::ZERO, 0.0));
                    e.0 = e.0.add(v);
                    e.1 += cm * a.mag[p] * b.mag[qq];
                }
            }
        }
        let mut certain: Option<usize> = None;
        let mut suspicious: Option<usize> = None;
        for (&(p, qq), &(v, m)) in &acc {
            let d = p + qq;
            if v.abs() > CANCEL_TOL * m {
                certain = Some(certain.map_or(d, |c| c.min(d)));
            } else {
                suspicious = Some(suspicious.map_or(d, |s| s.min(d)));
            }
        }
        let needs_exact = match (certain, suspicious) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(c), Some(s)) => s < c,
        };
        if needs_exact {
            let jet = JetCurve::from_coeffs(curve).expect("valid curve");
            let ord = self.f.substitute_curve(&jet).expect("dimensions agree").ord();
            return Outcome { ord, ord_curve, exact: true };
        }
        let ord = certain.map_or(ExtendedNat::Infinite, |c| ExtendedNat::Finite(c as u64));
        Outcome { ord, ord_curve, exact: false }
    }
}

/// Decodes a monomial-family index: digit 0 is the zero component, digit `d ≥ 1`
/// is `palette[(d-1) / E] t^{1 + (d-1) % E}`.
fn decode(mut idx: u128, n: usize, cfg: &SearchConfig) -> Sparse {
    let e = cfg.max_exponent as u128;
    let radix = 1 + cfg.palette.len() as u128 * e;
    (0..n)
        .map(|_| {
            let d = idx % radix;
            idx /= radix;
            if d == 0 {
                Vec::new()
            } else {
                let k = d - 1;
                vec![(cfg.palette[(k / e) as usize].clone(), 1 + (k % e) as u32)]
            }
        })
        .collect()
}

fn is_regular(c: &Sparse) -> bool {
    c.iter().filter_map(|x| x.first()).any(|x| x.1 == 1)
}

fn monomial_family_size(n: usize, cfg: &SearchConfig) -> (u128, bool) {
    let radix = 1 + cfg.palette.len() as u128 * cfg.max_exponent as u128;
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(radix);
    }
    let cap = cfg.max_curves as u128 + 1;
    if total > cap {
        (cap, true)
    } else {
        (total, false)
    }
}

/// The monomial family in enumeration order (index 0, the zero curve, is skipped).
pub fn monomial_family(n: usize, cfg: &SearchConfig) -> Result<Vec<JetCurve>> {
    cfg.validate()?;
    let (count, _) = monomial_family_size(n, cfg);
    Ok((1..count)
        .map(|i| decode(i, n, cfg))
        .filter(|c| !cfg.reg_only || is_regular(c))
        .map(|c| JetCurve::from_coeffs(&c).expect("nonzero curve"))
        .collect())
}

fn better(a: &(ExtendedRat, u128), b: &(ExtendedRat, u128)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Lower bound for `sup_γ O(F, γ)` over the configured family.
pub fn sup_contact_lower_bound(f: &MixedPolynomial, cfg: &SearchConfig) -> Result<OracleReport> {
    cfg.validate()?;
    if f.is_zero() {
        return Err(Error::Flat);
    }
    let n = f.nvars();
    let ev = Evaluator::new(f);
    let (count, truncated) = monomial_family_size(n, cfg);

    let results: Vec<(u128, Outcome)> = (1..count as u64)
        .into_par_iter()
        .filter_map(|i| {
            let c = decode(i as u128, n, cfg);
            if cfg.reg_only && !is_regular(&c) {
                return None;
            }
            Some((i as u128, ev.evaluate(&c)))
        })
        .collect();

    let mut curves_evaluated = results.len();
    let mut exact_fallbacks = results.iter().filter(|r| r.1.exact).count();
    let mut best: Option<(ExtendedRat, u128, Sparse, Outcome)> = None;
    for (i, o) in &results {
        let key = (o.contact(), *i);
        if best.as_ref().is_none_or(|b| better(&key, &(b.0.clone(), b.1))) {
            best = Some((key.0, *i, decode(*i, n, cfg), o.clone()));
        }
    }

    if best.as_ref().is_some_and(|b| b.0.is_finite()) && cfg.refine_top > 0 {
        let mut ranked: Vec<&(u128, Outcome)> = results.iter().collect();
        ranked.sort_by(|x, y| y.1.contact().cmp(&x.1.contact()).then(x.0.cmp(&y.0)));
        let mut jets: Vec<Sparse> = Vec::new();
        for (i, _) in ranked.into_iter().take(cfg.refine_top) {
            let seed = decode(*i, n, cfg);
            for j in 0..n {
                let Some((c0, a0)) = seed[j].first().cloned() else { continue };
                for a1 in a0 + 1..=cfg.jet_degree {
                    for c1 in &cfg.palette {
                        let mut jet = seed.clone();
                        jet[j] = vec![(c0.clone(), a0), (c1.clone(), a1)];
                        jets.push(jet);
                    }
                }
            }
        }
        let budget = cfg.max_curves.saturating_sub(curves_evaluated);
        jets.truncate(budget);
        let outcomes: Vec<Outcome> = jets.par_iter().map(|c| ev.evaluate(c)).collect();
        curves_evaluated += outcomes.len();
        exact_fallbacks += outcomes.iter().filter(|o| o.exact).count();
        let offset = count;
        for (k, (jet, o)) in jets.into_iter().zip(outcomes).enumerate() {
            let key = (o.contact(), offset + k as u128);
            if best.as_ref().is_none_or(|b| better(&key, &(b.0.clone(), b.1))) {
                best = Some((key.0, key.1, jet, o));
            }
        }
    }

    let Some((best_val, _, curve, outcome)) = best else {
        return Ok(OracleReport {
            best: ExtendedRat::from_int(0),
            argmax: None,
            argmax_ord_composed: None,
            argmax_ord_curve: None,
            infinite_flag: false,
            infinite_curve: None,
            curves_evaluated,
            exact_fallbacks,
            truncated,
        });
    };
    let jet = JetCurve::from_coeffs(&curve).expect("nonzero curve");
    let infinite_flag = outcome.ord.is_infinite();
    let infinite_curve = if infinite_flag {
        assert!(f.substitute_curve(&jet)?.is_zero(), "infinite flag must be exact");
        Some(jet.clone())
    } else {
        None
    };
    Ok(OracleReport {
        best: best_val,
        argmax: Some(jet),
        argmax_ord_composed: Some(outcome.ord),
        argmax_ord_curve: Some(outcome.ord_curve),
        infinite_flag,
        infinite_curve,
        curves_evaluated,
        exact_fallbacks,
        truncated,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StrictCase {
    pub curve: JetCurve,
    pub ord_composed: ExtendedNat,
    pub l_lower_bound: ExtendedNat,
    pub face: Vec<Vec<i64>>,
    pub face_status: Status,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CrosscheckReport {
    pub curves_checked: usize,
    /// Curves whose leading face is certified nondegenerate; equality was asserted.
    pub equalities_checked: usize,
    /// Strict inequalities, all on faces not certified nondegenerate.
    pub strict: Vec<StrictCase>,
}

/// Checks `ord(F∘γ) ≥ l(φ(γ))` and `O(F,γ) ≥ d(F,φ(γ))` on every curve, and
/// equality whenever the leading face `Φ(γ)` is certified nondegenerate.
pub fn formula_crosscheck_curves(f: &MixedPolynomial, curves: &[JetCurve], opts: &CheckOptions) -> Result<CrosscheckReport> {
    if f.is_zero() {
        return Err(Error::Flat);
    }
    let poly = Polyhedron::from_poly(f);
    let mut verdicts: HashMap<Vec<Vec<i64>>, Status> = HashMap::new();
    let mut report = CrosscheckReport::default();
    for g in curves {
        let r = order_of_contact_with(&poly, f, g)?;
        report.curves_checked += 1;
        let Some(face) = r.face else { continue };
        let status = match verdicts.get(&face.vertices) {
            Some(s) => *s,
            None => {
                let s = check_face_in(&poly, f, &face, opts)?.status;
                verdicts.insert(face.vertices.clone(), s);
                s
            }
        };
        if status == Status::Nondegenerate {
            assert_eq!(r.ord_composed, r.l_lower_bound, "ord(F∘γ) = l(φ(γ)) on nondegenerate faces");
            assert_eq!(r.contact_order, r.distance, "O(F,γ) = d(F,φ(γ)) on nondegenerate faces");
            report.equalities_checked += 1;
        } else if r.ord_composed > r.l_lower_bound {
            report.strict.push(StrictCase {
                curve: g.clone(),
                ord_composed: r.ord_composed,
                l_lower_bound: r.l_lower_bound,
                face: face.vertices.clone(),
                face_status: status,
            });
        }
    }
    Ok(report)
}

/// [`formula_crosscheck_curves`] over the monomial family of `cfg`.
pub fn formula_crosscheck(f: &MixedPolynomial, cfg: &SearchConfig, opts: &CheckOptions) -> Result<CrosscheckReport> {
    let curves = monomial_family(f.nvars(), cfg)?;
    formula_crosscheck_curves(f, &curves, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedpoly::parse;

    fn cfg(max_exponent: u32) -> SearchConfig {
        SearchConfig { max_exponent, ..SearchConfig::small() }
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::default().validate().is_ok());
        let mut c = SearchConfig::small();
        c.palette.push(GaussianRational::zero());
        assert!(c.validate().is_err());
        let c = SearchConfig { jet_degree: 2, ..cfg(4) };
        assert!(c.validate().is_err());
    }

    #[test]
    fn cusp_model_has_a_curve_inside() {
        let r = parse("2 Re(z3) + |z1^3 - z2^2|^2", 3).unwrap();
        let rep = sup_contact_lower_bound(&r, &cfg(3)).unwrap();
        assert!(rep.infinite_flag);
        assert_eq!(rep.best, ExtendedRat::Infinite);
        let g = rep.infinite_curve.unwrap();
        assert!(r.substitute_curve(&g).unwrap().is_zero());
        let reg = sup_contact_lower_bound(&r, &SearchConfig { reg_only: true, ..cfg(3) }).unwrap();
        assert_eq!(reg.best, ExtendedRat::from_int(6));
        assert!(!reg.infinite_flag);
    }

    #[test]
    fn float_filter_agrees_with_exact() {
        let f = parse("|z1 - z2|^2 + |z2|^4 + Re(z1^2 conj(z2))", 2).unwrap();
        let ev = Evaluator::new(&f);
        let c = cfg(3);
        for i in 1..169u128 {
            let s = decode(i, 2, &c);
            let jet = JetCurve::from_coeffs(&s).unwrap();
            assert_eq!(ev.evaluate(&s).ord, f.substitute_curve(&jet).unwrap().ord(), "curve {jet}");
        }
    }

    #[test]
    fn two_term_jets_raise_the_bound() {
        // (t, t - t^2) kills the first square; no monomial curve does.
        let f = parse("|z1 - z2|^2 + |z2|^6", 2).unwrap();
        let c = SearchConfig { palette: vec![q(1, 1), q(-1, 1)], refine_top: 0, ..cfg(2) };
        let mono = sup_contact_lower_bound(&f, &c).unwrap();
        assert_eq!(mono.best, ExtendedRat::from_int(6));
        let f = parse("|z1 - z2 - z1^2|^2 + |z2|^6", 2).unwrap();
        let mono = sup_contact_lower_bound(&f, &c).unwrap();
        let jets = sup_contact_lower_bound(&f, &SearchConfig { refine_top: 8, ..c.clone() }).unwrap();
        assert!(jets.best > mono.best);
        assert_eq!(jets.best, ExtendedRat::from_int(6));
    }

    #[test]
    fn crosscheck_records_strict_cases() {
        let f = parse("|z1^3 - z2^2|^2", 2).unwrap();
        let g = JetCurve::parse("(t^2, t^3 + t^4)").unwrap();
        let rep = formula_crosscheck_curves(&f, &[g], &CheckOptions::default()).unwrap();
        assert_eq!(rep.strict.len(), 1);
        assert_eq!(rep.strict[0].ord_composed, ExtendedNat::Finite(14));
        assert_eq!(rep.strict[0].l_lower_bound, ExtendedNat::Finite(12));

        let f = parse("|z1|^4 + |z2|^6 + |z1 z2|^2", 2).unwrap();
        let rep = formula_crosscheck(&f, &cfg(3), &CheckOptions::default()).unwrap();
        assert!(rep.strict.is_empty());
        assert_eq!(rep.equalities_checked, rep.curves_checked);
    }
}
