//! Coarsest term groupings of a face part along monomial curves.
//!
//! For `γ = (c_1 t^{a_1}, …)` with `a` determining `κ`, every term of `F_κ` becomes
//! `C c^α c̄^β t^{⟨a,α⟩} t̄^{l−⟨a,α⟩}`, so `F_κ∘γ ≡ 0` iff each group of terms sharing
//! `⟨a, α⟩` sums to zero at `c`. The grouping depends on `a` only through which
//! differences `α − α'` it annihilates. Coarser groupings have weaker vanishing
//! conditions, so deciding nondegeneracy only needs the coarsest groupings that some
//! determining `a` realizes. Those are found by merging classes while the linear
//! program for `a` stays feasible.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use crate::linalg::{in_span, primitive_integer};
use crate::lp::{self, Constraint, Rel};
use crate::mixedpoly::MixedPolynomial;
use crate::polyhedron::{dot, FaceHandle, Polyhedron};

#[derive(Clone, Debug)]
pub struct Cells {
    /// An integer vector determining `κ` that realizes this grouping.
    pub normal: Vec<i64>,
    /// Term groups ordered by `⟨a, α⟩`.
    pub groups: Vec<MixedPolynomial>,
}

pub struct CellSearch {
    pub partitions: Vec<Cells>,
    /// False when the node budget ran out before all groupings were visited.
    pub complete: bool,
}

struct Ctx<'a> {
    n: usize,
    v0: Vec<i64>,
    others: Vec<Vec<i64>>,
    alphas: Vec<Vec<i64>>,
    base: Vec<Vec<i64>>,
    part: &'a MixedPolynomial,
    max_exp: u32,
}

impl Ctx<'_> {
    fn labels(&self, span: &[Vec<i64>]) -> Vec<usize> {
        let k = self.alphas.len();
        let mut labels: Vec<usize> = (0..k).collect();
        for i in 0..k {
            if labels[i] != i {
                continue;
            }
            for j in i + 1..k {
                if labels[j] == j {
                    let d: Vec<i64> = self.alphas[j].iter().zip(&self.alphas[i]).map(|(a, b)| a - b).collect();
                    if span.is_empty() && d.iter().all(|&x| x == 0) || !span.is_empty() && in_span(span, &d) {
                        labels[j] = i;
                    }
                }
            }
        }
        labels
    }

    fn constraints(&self, span: &[Vec<i64>]) -> Vec<Constraint> {
        let mut cs = Vec::new();
        for j in 0..self.n {
            let mut e = vec![0; self.n];
            e[j] = 1;
            cs.push(Constraint::from_ints(&e, Rel::Ge, 1));
        }
        for w in &self.others {
            let d: Vec<i64> = w.iter().zip(&self.v0).map(|(a, b)| a - b).collect();
            cs.push(Constraint::from_ints(&d, Rel::Ge, 1));
        }
        for d in span {
            cs.push(Constraint::from_ints(d, Rel::Eq, 0));
        }
        cs
    }

    fn feasible(&self, span: &[Vec<i64>]) -> Option<Vec<BigRational>> {
        lp::feasible_point(self.n, &self.constraints(span))
    }

    fn admissible(&self, a: &[i64], span: &[Vec<i64>]) -> bool {
        a.iter().all(|&x| x >= 1) && self.others.iter().all(|w| dot(a, w) > dot(a, &self.v0)) && span.iter().all(|d| dot(a, d) == 0)
    }

    /// Small integer representative: box search when cheap, else the scaled LP point.
    fn representative(&self, span: &[Vec<i64>], lp_point: &[BigRational]) -> Vec<i64> {
        let b = self.max_exp.max(1) as i64;
        if (b as f64).powi(self.n as i32) <= 2.0e5 {
            for total in self.n as i64..=b * self.n as i64 {
                let mut a = vec![1i64; self.n];
                if let Some(found) = self.compositions(&mut a, 0, total - self.n as i64, b, span) {
                    return found;
                }
            }
        }
        primitive_integer(lp_point)
    }

    fn compositions(&self, a: &mut Vec<i64>, j: usize, rest: i64, b: i64, span: &[Vec<i64>]) -> Option<Vec<i64>> {
        if j + 1 == self.n {
            if 1 + rest > b {
                return None;
            }
            a[j] = 1 + rest;
            return self.admissible(a, span).then(|| a.clone());
        }
        for x in 0..=rest.min(b - 1) {
            a[j] = 1 + x;
            if let Some(f) = self.compositions(a, j + 1, rest - x, b, span) {
                return Some(f);
            }
        }
        None
    }

    fn groups(&self, labels: &[usize], a: &[i64]) -> Vec<MixedPolynomial> {
        let mut by_label: BTreeMap<(i64, usize), MixedPolynomial> = BTreeMap::new();
        for (m, c) in self.part.terms() {
            let al: Vec<i64> = m.alpha.iter().map(|&x| x as i64).collect();
            let idx = self.alphas.iter().position(|x| *x == al).expect("alpha indexed");
            let lab = labels[idx];
            let key = (dot(a, &self.alphas[lab]), lab);
            by_label.entry(key).or_insert_with(|| MixedPolynomial::zero(self.n)).add_term(m.clone(), c.clone());
        }
        by_label.into_values().collect()
    }
}

/// Enumerates the coarsest groupings of `F_κ`'s terms realized by vectors determining `κ`.
pub fn coarsest_groupings(poly: &Polyhedron, kappa: &FaceHandle, part: &MixedPolynomial, max_nodes: usize, max_exp: u32) -> CellSearch {
    let n = poly.dim();
    let v0 = kappa.vertices[0].clone();
    let others: Vec<Vec<i64>> = poly.vertices().iter().filter(|v| !kappa.vertices.contains(v)).cloned().collect();
    let mut alphas: Vec<Vec<i64>> = part.terms().map(|(m, _)| m.alpha.iter().map(|&x| x as i64).collect()).collect();
    alphas.sort();
    alphas.dedup();
    let base: Vec<Vec<i64>> = kappa.vertices[1..].iter().map(|v| v.iter().zip(&v0).map(|(a, b)| a - b).collect()).collect();
    let ctx = Ctx { n, v0, others, alphas, base, part, max_exp };

    let mut feasible_memo: HashMap<Vec<usize>, Option<Vec<BigRational>>> = HashMap::new();
    let mut stack: Vec<Vec<Vec<i64>>> = vec![ctx.base.clone()];
    let root_labels = ctx.labels(&ctx.base);
    let root_point = ctx.feasible(&ctx.base);
    assert!(root_point.is_some(), "a bounded face is determined by some positive vector");
    feasible_memo.insert(root_labels, root_point);
    let mut expanded: std::collections::HashSet<Vec<usize>> = Default::default();
    let mut partitions = Vec::new();
    let mut complete = true;
    let mut nodes = 0usize;

    while let Some(span) = stack.pop() {
        let labels = ctx.labels(&span);
        if !expanded.insert(labels.clone()) {
            continue;
        }
        nodes += 1;
        if nodes > max_nodes {
            complete = false;
            break;
        }
        let reps: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == i).collect();
        let mut maximal = true;
        for (x, &i) in reps.iter().enumerate() {
            for &j in &reps[x + 1..] {
                let d: Vec<i64> = ctx.alphas[j].iter().zip(&ctx.alphas[i]).map(|(a, b)| a - b).collect();
                let mut next = span.clone();
                next.push(d);
                let nl = ctx.labels(&next);
                let feas = feasible_memo.entry(nl.clone()).or_insert_with(|| ctx.feasible(&next)).is_some();
                if feas {
                    maximal = false;
                    if !expanded.contains(&nl) {
                        stack.push(next);
                    }
                }
            }
        }
        if maximal {
            let point =
                feasible_memo.get(&labels).cloned().flatten().unwrap_or_else(|| ctx.feasible(&span).expect("visited nodes are feasible"));
            let a = ctx.representative(&span, &point);
            debug_assert!(ctx.admissible(&a, &span));
            partitions.push(Cells { groups: ctx.groups(&labels, &a), normal: a });
        }
    }
    CellSearch { partitions, complete }
}
