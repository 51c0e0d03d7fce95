//! Mixed polynomials `F(z, z̄) = Σ C_{αβ} z^α z̄^β` with exact Gaussian-rational coefficients.

pub mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extended::ExtendedNat;
use crate::gaussian::{GaussianRational, C64};

pub use parse::{parse, parse_auto};

/// Exponent pair `(α, β)` of `z^α z̄^β`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TermClass {
    Pure,
    Mixed,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { alpha: vec![0; n], beta: vec![0; n] }
    }

    /// The lattice point `α + β`.
    pub fn point(&self) -> Vec<i64> {
        self.alpha.iter().zip(&self.beta).map(|(a, b)| (*a + *b) as i64).collect()
    }

    pub fn degree(&self) -> u64 {
        self.alpha.iter().chain(&self.beta).map(|&e| e as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.alpha.iter().chain(&self.beta).all(|&e| e == 0)
    }

    pub fn class(&self) -> TermClass {
        if self.alpha.iter().all(|&e| e == 0) || self.beta.iter().all(|&e| e == 0) {
            TermClass::Pure
        } else {
            TermClass::Mixed
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn conj(&self) -> Self {
        Monomial { alpha: self.beta.clone(), beta: self.alpha.clone() }
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            alpha: self.alpha.iter().zip(&o.alpha).map(|(a, b)| a + b).collect(),
            beta: self.beta.iter().zip(&o.beta).map(|(a, b)| a + b).collect(),
        }
    }

    fn involves(&self, j: usize) -> bool {
        self.alpha[j] + self.beta[j] > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MixedPolynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars > 0, "a mixed polynomial needs at least one variable");
        MixedPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::one())
    }

    /// The holomorphic coordinate `z_j` (0-based).
    pub fn var(nvars: usize, j: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.alpha[j] = 1;
        Self::monomial(m, GaussianRational::one())
    }

    /// The antiholomorphic coordinate `z̄_j` (0-based).
    pub fn conj_var(nvars: usize, j: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.beta[j] = 1;
        Self::monomial(m, GaussianRational::one())
    }

    pub fn monomial(m: Monomial, c: GaussianRational) -> Self {
        let mut p = Self::zero(m.alpha.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.alpha.len() != nvars || m.beta.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: m.alpha.len().max(m.beta.len()) });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Adds `c·m`, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        debug_assert_eq!(m.alpha.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial, &GaussianRational) -> bool) -> Self {
        MixedPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, c)| keep(m, c)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MixedPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut r = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Complex conjugate `conj(F)`: swaps `α`, `β` and conjugates coefficients.
    pub fn conj(&self) -> Self {
        MixedPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect() }
    }

    /// `(F + conj F)/2`.
    pub fn real_part(&self) -> Self {
        self.add(&self.conj()).scale(&GaussianRational::from_fracs((1, 2), (0, 1)))
    }

    /// `(F − conj F)/(2i)`.
    pub fn imag_part(&self) -> Self {
        self.sub(&self.conj()).scale(&GaussianRational::from_fracs((0, 1), (-1, 2)))
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(m, c)| self.coef(&m.conj()) == c.conj())
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.beta.iter().all(|&e| e == 0))
    }

    /// Every term is pure (`α = 0` or `β = 0`); such real polynomials are pluriharmonic.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(|m| m.class() == TermClass::Pure)
    }

    /// Every term has `α = β`, i.e. `F` is invariant under all coordinate rotations.
    pub fn is_rotation_invariant(&self) -> bool {
        self.terms.keys().all(Monomial::is_diagonal)
    }

    pub fn support(&self) -> BTreeSet<Vec<i64>> {
        self.terms.keys().map(Monomial::point).collect()
    }

    /// Minimum total bidegree; `∞` for the zero polynomial.
    pub fn ord(&self) -> ExtendedNat {
        self.terms.keys().map(Monomial::degree).min().map_or(ExtendedNat::Infinite, ExtendedNat::Finite)
    }

    /// Terms of total degree at most `n`.
    pub fn jet(&self, n: u64) -> Self {
        self.filter(|m, _| m.degree() <= n)
    }

    /// Terms of total degree exactly `n`.
    pub fn homogeneous_part(&self, n: u64) -> Self {
        self.filter(|m, _| m.degree() == n)
    }

    /// `(pure part, mixed part)`.
    pub fn pure_mixed_split(&self) -> (Self, Self) {
        (self.filter(|m, _| m.class() == TermClass::Pure), self.filter(|m, _| m.class() == TermClass::Mixed))
    }

    /// Indices of variables that occur in some term.
    pub fn involved_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&j| self.terms.keys().any(|m| m.involves(j))).collect()
    }

    /// `F_I`: drops terms involving variables outside `I` and re-indexes to `I`
    /// (sorted, 0-based). An empty result means `F_I` is flat.
    pub fn restrict(&self, vars: &[usize]) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::Config("restriction to an empty variable set".into()));
        }
        if let Some(&bad) = vars.iter().find(|&&j| j >= self.nvars) {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: bad + 1 });
        }
        let mut idx: Vec<usize> = vars.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let mut r = Self::zero(idx.len());
        for (m, c) in &self.terms {
            if (0..self.nvars).any(|j| m.involves(j) && idx.binary_search(&j).is_err()) {
                continue;
            }
            let nm = Monomial { alpha: idx.iter().map(|&j| m.alpha[j]).collect(), beta: idx.iter().map(|&j| m.beta[j]).collect() };
            r.add_term(nm, c.clone());
        }
        Ok(r)
    }

    /// Re-embeds into `n` variables with variable `j` sent to `map[j]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut r = Self::zero(n);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(n);
            for (j, &t) in map.iter().enumerate() {
                nm.alpha[t] += m.alpha[j];
                nm.beta[t] += m.beta[j];
            }
            r.add_term(nm, c.clone());
        }
        r
    }

    /// `F(g_1(w), …, g_n(w), conj)` for holomorphic `g_j` in a common set of variables.
    pub fn compose_holomorphic(&self, maps: &[MixedPolynomial]) -> Result<Self> {
        if maps.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: maps.len() });
        }
        let Some(first) = maps.first() else { unreachable!() };
        let m = first.nvars;
        if maps.iter().any(|g| g.nvars != m) {
            return Err(Error::Config("substitution maps live in different spaces".into()));
        }
        if maps.iter().any(|g| !g.is_holomorphic()) {
            return Err(Error::NotHolomorphic);
        }
        let conj: Vec<MixedPolynomial> = maps.iter().map(MixedPolynomial::conj).collect();
        let mut pow_cache: Vec<PowerCache> = maps.iter().map(|g| PowerCache::new(g.clone())).collect();
        let mut conj_cache: Vec<PowerCache> = conj.into_iter().map(PowerCache::new).collect();
        let mut out = Self::zero(m);
        for (mono, c) in &self.terms {
            let mut acc = Self::constant(m, c.clone());
            for j in 0..self.nvars {
                if mono.alpha[j] > 0 {
                    acc = acc.mul(pow_cache[j].get(mono.alpha[j]));
                }
                if mono.beta[j] > 0 {
                    acc = acc.mul(conj_cache[j].get(mono.beta[j]));
                }
                if acc.is_zero() {
                    break;
                }
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// `F(λ_1 z_1, …, λ_n z_n, conj)`.
    pub fn scale_vars(&self, lambda: &[GaussianRational]) -> Self {
        assert_eq!(lambda.len(), self.nvars);
        let lbar: Vec<GaussianRational> = lambda.iter().map(GaussianRational::conj).collect();
        MixedPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut k = c.clone();
                    for j in 0..self.nvars {
                        k = &k * &lambda[j].pow(m.alpha[j]);
                        k = &k * &lbar[j].pow(m.beta[j]);
                    }
                    (m.clone(), k)
                })
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// `∂F/∂z_j`.
    pub fn d_holomorphic(&self, j: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.alpha[j] == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.alpha[j] -= 1;
            r.add_term(nm, c * &GaussianRational::from(m.alpha[j] as i64));
        }
        r
    }

    /// Multiplies by `z_j`.
    pub fn mul_var(&self, j: usize) -> Self {
        MixedPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut nm = m.clone();
                    nm.alpha[j] += 1;
                    (nm, c.clone())
                })
                .collect(),
        }
    }

    /// Floating-point evaluation, used only to propose candidates.
    pub fn eval_c64(&self, z: &[C64]) -> C64 {
        let mut acc = C64::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.to_c64();
            for j in 0..self.nvars {
                if m.alpha[j] > 0 {
                    t = t.mul(z[j].powi(m.alpha[j]));
                }
                if m.beta[j] > 0 {
                    t = t.mul(z[j].conj().powi(m.beta[j]));
                }
            }
            acc = acc.add(t);
        }
        acc
    }

    /// Renders with the last variable written as `w`, for defining functions.
    pub fn display_with_w(&self) -> String {
        render(self, |j| var_name(j, self.nvars, true))
    }

    /// Renders with caller-chosen variable names.
    pub fn display_named(&self, names: &[&str]) -> String {
        render(self, |j| names[j].to_string())
    }
}

struct PowerCache {
    base: MixedPolynomial,
    powers: Vec<MixedPolynomial>,
}

impl PowerCache {
    fn new(base: MixedPolynomial) -> Self {
        let one = MixedPolynomial::one(base.nvars);
        PowerCache { base, powers: vec![one] }
    }

    fn get(&mut self, k: u32) -> &MixedPolynomial {
        while self.powers.len() <= k as usize {
            let next = self.powers.last().unwrap().mul(&self.base);
            self.powers.push(next);
        }
        &self.powers[k as usize]
    }
}

fn var_name(j: usize, nvars: usize, w_last: bool) -> String {
    if (w_last && j + 1 == nvars) || j >= 9 {
        "w".to_string()
    } else {
        format!("z{}", j + 1)
    }
}

fn render(p: &MixedPolynomial, name_of: impl Fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut ordered: Vec<(&Monomial, &GaussianRational)> = p.terms.iter().collect();
    ordered.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(b.0)));
    let mut out = String::new();
    for (i, (m, c)) in ordered.into_iter().enumerate() {
        let mut factors = Vec::new();
        for j in 0..p.nvars {
            let name = name_of(j);
            match m.alpha[j] {
                0 => {}
                1 => factors.push(name.clone()),
                e => factors.push(format!("{name}^{e}")),
            }
            match m.beta[j] {
                0 => {}
                1 => factors.push(format!("conj({name})")),
                e => factors.push(format!("conj({name})^{e}")),
            }
        }
        let body = factors.join("*");
        let term = if body.is_empty() {
            c.to_string()
        } else if c.is_one() {
            body
        } else if (-c).is_one() {
            format!("-{body}")
        } else {
            format!("{c}*{body}")
        };
        if i == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

/// Canonical form in the expression grammar; `parse(p.to_string(), n) == p`.
impl fmt::Display for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, |j| var_name(j, self.nvars, false)))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    coef: GaussianRational,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for MixedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| TermJson { alpha: m.alpha.clone(), beta: m.beta.clone(), coef: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MixedPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = PolyJson::deserialize(d)?;
        if p.nvars == 0 {
            return Err(serde::de::Error::custom("nvars must be positive"));
        }
        MixedPolynomial::from_terms(p.nvars, p.terms.into_iter().map(|t| (Monomial { alpha: t.alpha, beta: t.beta }, t.coef)))
            .map_err(serde::de::Error::custom)
    }
}

impl MixedPolynomial {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

/// Rational helper for tests and fixtures.
pub fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::real(BigRational::new(n.into(), d.into()))
}
