//! Searching for common zeros in `(ℂ*)ⁿ` of a small system of mixed polynomials.
//!
//! Floating point only proposes candidates; every reported zero is verified exactly.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gaussian::{GaussianRational, C64};
use crate::mixedpoly::{q, MixedPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    /// `{±1, ±i}`.
    Small,
    /// Moduli `{1, 1/2, 2, 1/3, 3}` times Pythagorean phases, plus `±1 ± i`.
    Wide,
}

impl std::str::FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "small" => Ok(Grid::Small),
            "wide" => Ok(Grid::Wide),
            other => Err(format!("unknown grid `{other}` (expected small or wide)")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOptions {
    pub grid: Grid,
    pub refine_starts: usize,
    pub seed: u64,
    /// Maximum number of grid points evaluated per grid.
    pub eval_budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { grid: Grid::Wide, refine_starts: 16, seed: 0, eval_budget: 200_000 }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub grid_evaluations: usize,
    pub refinements: usize,
    pub truncated: bool,
}

fn phases() -> Vec<GaussianRational> {
    let mut v: Vec<GaussianRational> = [(1, 0), (-1, 0), (0, 1), (0, -1)].iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect();
    for (a, b) in [(3, 4), (4, 3)] {
        for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            v.push(GaussianRational::from_fracs((sa * a, 5), (sb * b, 5)));
        }
    }
    v
}

pub fn grid_values(grid: Grid) -> Vec<GaussianRational> {
    match grid {
        Grid::Small => phases().into_iter().take(4).collect(),
        Grid::Wide => {
            let mut out = Vec::new();
            for m in [q(1, 1), q(1, 2), q(2, 1), q(1, 3), q(3, 1)] {
                for ph in phases() {
                    out.push(&m * &ph);
                }
            }
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                out.push(GaussianRational::from_ints(a, b));
            }
            out
        }
    }
}

pub fn eval_exact(p: &MixedPolynomial, c: &[GaussianRational]) -> GaussianRational {
    let cbar: Vec<GaussianRational> = c.iter().map(GaussianRational::conj).collect();
    let mut acc = GaussianRational::zero();
    for (m, coef) in p.terms() {
        let mut t = coef.clone();
        for j in 0..c.len() {
            if m.alpha[j] > 0 {
                t = &t * &c[j].pow(m.alpha[j]);
            }
            if m.beta[j] > 0 {
                t = &t * &cbar[j].pow(m.beta[j]);
            }
        }
        acc += &t;
    }
    acc
}

pub fn is_common_zero(polys: &[MixedPolynomial], c: &[GaussianRational]) -> bool {
    c.iter().all(|x| !x.is_zero()) && polys.iter().all(|p| eval_exact(p, c).is_zero())
}

/// `(coefficient, alpha, beta)`.
type FloatTerm = (C64, Vec<u32>, Vec<u32>);

struct FloatSystem {
    polys: Vec<Vec<FloatTerm>>,
}

impl FloatSystem {
    fn new(polys: &[MixedPolynomial]) -> Self {
        FloatSystem {
            polys: polys.iter().map(|p| p.terms().map(|(m, c)| (c.to_c64(), m.alpha.clone(), m.beta.clone())).collect()).collect(),
        }
    }

    /// Values and absolute term sums.
    fn eval(&self, z: &[C64]) -> Vec<(C64, f64)> {
        self.polys
            .iter()
            .map(|terms| {
                let mut s = C64::ZERO;
                let mut abs = 0.0;
                for (c, a, b) in terms {
                    let mut t = *c;
                    for j in 0..z.len() {
                        if a[j] > 0 {
                            t = t.mul(z[j].powi(a[j]));
                        }
                        if b[j] > 0 {
                            t = t.mul(z[j].conj().powi(b[j]));
                        }
                    }
                    abs += t.abs();
                    s = s.add(t);
                }
                (s, abs)
            })
            .collect()
    }

    fn near_zero(&self, z: &[C64]) -> bool {
        self.eval(z).iter().all(|(v, a)| v.abs() <= 1e-9 * a.max(1e-300))
    }

    fn residual(&self, z: &[C64]) -> Vec<f64> {
        self.eval(z)
            .iter()
            .flat_map(|(v, a)| {
                let s = 1.0 / a.max(1e-12);
                [v.re * s, v.im * s]
            })
            .collect()
    }
}

/// Finds `c ∈ (ℂ*)ⁿ` with Gaussian-rational entries at which all `polys` vanish.
/// Coordinates not occurring in any polynomial are set to 1.
pub fn find_torus_zero(
    polys: &[MixedPolynomial],
    n: usize,
    opts: &SearchOptions,
    stats: &mut SearchStats,
) -> Option<Vec<GaussianRational>> {
    let polys: Vec<MixedPolynomial> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    let ones = vec![GaussianRational::one(); n];
    if polys.is_empty() {
        return Some(ones);
    }
    let mut vars: Vec<usize> = polys.iter().flat_map(|p| p.involved_vars()).collect();
    vars.sort_unstable();
    vars.dedup();
    if vars.is_empty() {
        return None;
    }
    let free = &vars[1..];
    let sys = FloatSystem::new(&polys);

    let mut grids = vec![Grid::Small];
    if opts.grid == Grid::Wide {
        grids.push(Grid::Wide);
    }
    for grid in grids {
        let vals = grid_values(grid);
        let fvals: Vec<C64> = vals.iter().map(GaussianRational::to_c64).collect();
        let total = (vals.len() as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
        let count = total.min(opts.eval_budget as u128) as usize;
        if (count as u128) < total {
            stats.truncated = true;
        }
        stats.grid_evaluations += count;
        let decode = |mut idx: usize| -> Vec<usize> {
            let mut d = Vec::with_capacity(free.len());
            for _ in free {
                d.push(idx % vals.len());
                idx /= vals.len();
            }
            d
        };
        let hit = (0..count).into_par_iter().find_map_first(|idx| {
            let digits = decode(idx);
            let mut z = vec![C64::ONE; n];
            for (k, &j) in free.iter().enumerate() {
                z[j] = fvals[digits[k]];
            }
            if !sys.near_zero(&z) {
                return None;
            }
            let mut c = ones.clone();
            for (k, &j) in free.iter().enumerate() {
                c[j] = vals[digits[k]].clone();
            }
            is_common_zero(&polys, &c).then_some(c)
        });
        if hit.is_some() {
            return hit;
        }
    }
    if free.is_empty() {
        return None;
    }
    stats.refinements += opts.refine_starts;
    (0..opts.refine_starts).into_par_iter().find_map_first(|s| refine(&sys, &polys, n, free, opts.seed.wrapping_add(s as u64)))
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = (c + 1..n).map(|k| a[c][k] * x[k]).sum();
        x[c] = (b[c] - s) / a[c][c];
    }
    Some(x)
}

/// Levenberg–Marquardt from a seeded random start, then rational snapping and exact check.
fn refine(sys: &FloatSystem, polys: &[MixedPolynomial], n: usize, free: &[usize], seed: u64) -> Option<Vec<GaussianRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = free.len();
    let mut x: Vec<f64> = Vec::with_capacity(2 * m);
    for _ in 0..m {
        let r: f64 = rng.gen_range(0.25..2.5);
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        x.push(r * th.cos());
        x.push(r * th.sin());
    }
    let point = |x: &[f64]| -> Vec<C64> {
        let mut z = vec![C64::ONE; n];
        for (k, &j) in free.iter().enumerate() {
            z[j] = C64::new(x[2 * k], x[2 * k + 1]);
        }
        z
    };
    let norm2 = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>();
    let mut r = sys.residual(&point(&x));
    let mut mu = 1e-3;
    for _ in 0..300 {
        let f0 = norm2(&r);
        if f0 < 1e-26 {
            break;
        }
        let h = 1e-7;
        let cols: Vec<Vec<f64>> = (0..2 * m)
            .map(|k| {
                let mut xh = x.clone();
                xh[k] += h;
                sys.residual(&point(&xh)).iter().zip(&r).map(|(a, b)| (a - b) / h).collect()
            })
            .collect();
        let jtj: Vec<Vec<f64>> = (0..2 * m)
            .map(|i| {
                (0..2 * m).map(|k| cols[i].iter().zip(&cols[k]).map(|(a, b)| a * b).sum::<f64>() + if i == k { mu } else { 0.0 }).collect()
            })
            .collect();
        let jtr: Vec<f64> = (0..2 * m).map(|i| -cols[i].iter().zip(&r).map(|(a, b)| a * b).sum::<f64>()).collect();
        let Some(step) = solve(jtj, jtr) else { break };
        let xn: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
        let rn = sys.residual(&point(&xn));
        if norm2(&rn) < f0 {
            x = xn;
            r = rn;
            mu = (mu * 0.3).max(1e-15);
        } else {
            mu *= 10.0;
            if mu > 1e12 {
                break;
            }
        }
    }
    if norm2(&r) > 1e-16 {
        return None;
    }
    let z = point(&x);
    if free.iter().any(|&j| z[j].abs() < 1e-6) {
        return None;
    }
    for max_den in [12, 60, 1000, 100_000] {
        let mut c = vec![GaussianRational::one(); n];
        for &j in free {
            c[j] = GaussianRational::approximate(z[j], max_den);
        }
        if is_common_zero(polys, &c) {
            return Some(c);
        }
    }
    None
}
