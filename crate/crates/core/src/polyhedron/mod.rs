//! Newton polyhedra `N₊ = conv(S) + ℝ≥ⁿ` of finite lattice supports.

mod dd;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extended::{ExtendedNat, ExtendedRat};
use crate::linalg::{gcd_slice, is_positive_vec, rank_i64};
use crate::lp::{self, Constraint, LpOutcome, Rel};
use crate::mixedpoly::MixedPolynomial;

pub type Point = Vec<i64>;

/// Supporting inequality `⟨normal, ξ⟩ ≥ level` cutting out a facet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub level: i64,
}

/// A nonempty face `N₊ ∩ H(normal, level)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FaceHandle {
    /// Vertices of the face, sorted.
    pub vertices: Vec<Point>,
    /// Coordinate directions `e_j` in the recession cone of the face; empty iff bounded.
    pub recession: Vec<usize>,
    /// Determining normal: primitive, positive exactly when the face is bounded.
    pub normal: Vec<i64>,
    pub level: i64,
    pub bounded: bool,
    pub dim: usize,
    /// Indices into [`Polyhedron::facets`] of the facets containing this face.
    pub facets: Vec<usize>,
}

impl FaceHandle {
    pub fn is_vertex(&self) -> bool {
        self.dim == 0
    }

    /// Whether the lattice point `p` lies on the (bounded) face.
    pub fn contains_point(&self, p: &[i64]) -> bool {
        dot(&self.normal, p) == self.level
    }

    /// Coordinates touched by some vertex.
    pub fn coordinate_support(&self) -> Vec<usize> {
        let n = self.normal.len();
        (0..n).filter(|&j| self.vertices.iter().any(|v| v[j] != 0)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Polyhedron {
    n: usize,
    /// Minimal support points (those not dominated by another), sorted.
    points: Vec<Point>,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    faces: Vec<FaceHandle>,
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Result of minimizing `⟨a, ξ⟩` over `N₊(F_I)` for a partial direction `â`.
#[derive(Clone, Debug, Serialize)]
pub struct SupportMin {
    pub level: ExtendedNat,
    /// The minimizing face, as a face of the full polyhedron; `None` when `F_I` is flat.
    pub face: Option<FaceHandle>,
    /// `I(â)`, the finite coordinates of the direction.
    pub index_set: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonDistance {
    pub distance: ExtendedRat,
    pub rho: Vec<ExtendedRat>,
}

impl Polyhedron {
    pub fn build(n: usize, support: impl IntoIterator<Item = Point>) -> Self {
        let all: BTreeSet<Point> = support.into_iter().inspect(|p| assert_eq!(p.len(), n)).collect();
        let points: Vec<Point> =
            all.iter().filter(|p| !all.iter().any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))).cloned().collect();
        if points.is_empty() {
            return Polyhedron { n, points, vertices: vec![], facets: vec![], faces: vec![] };
        }
        let facets: Vec<Facet> = dd::facets(n, &points).into_iter().map(|(normal, level)| Facet { normal, level }).collect();
        let vertices: Vec<Point> = points
            .iter()
            .filter(|p| {
                let tight: Vec<Vec<i64>> = facets.iter().filter(|f| dot(&f.normal, p) == f.level).map(|f| f.normal.clone()).collect();
                rank_i64(&tight) == n
            })
            .cloned()
            .collect();
        let mut poly = Polyhedron { n, points, vertices, facets, faces: vec![] };
        poly.faces = poly.enumerate_faces();
        poly
    }

    pub fn from_poly(f: &MixedPolynomial) -> Self {
        Self::build(f.nvars(), f.support())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_flat(&self) -> bool {
        self.points.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// All nonempty proper faces, sorted by dimension then vertex list.
    pub fn faces(&self) -> &[FaceHandle] {
        &self.faces
    }

    pub fn bounded_faces(&self) -> Vec<&FaceHandle> {
        self.faces.iter().filter(|f| f.bounded).collect()
    }

    pub fn bounded_facets(&self) -> Vec<&FaceHandle> {
        self.faces.iter().filter(|f| f.bounded && f.dim + 1 == self.n).collect()
    }

    /// Membership of a lattice point in `N₊`.
    pub fn contains(&self, p: &[i64]) -> bool {
        !self.is_flat() && self.facets.iter().all(|f| dot(&f.normal, p) >= f.level)
    }

    fn tight_vertices(&self, f: usize) -> BTreeSet<usize> {
        let fa = &self.facets[f];
        (0..self.vertices.len()).filter(|&v| dot(&fa.normal, &self.vertices[v]) == fa.level).collect()
    }

    fn zero_coords(&self, f: usize) -> BTreeSet<usize> {
        (0..self.n).filter(|&j| self.facets[f].normal[j] == 0).collect()
    }

    fn closure(&self, verts: &BTreeSet<usize>, rec: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| {
                let fa = &self.facets[f];
                verts.iter().all(|&v| dot(&fa.normal, &self.vertices[v]) == fa.level) && rec.iter().all(|&j| fa.normal[j] == 0)
            })
            .collect()
    }

    fn enumerate_faces(&self) -> Vec<FaceHandle> {
        type Key = (BTreeSet<usize>, BTreeSet<usize>);
        let mut seen: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
        let mut queue: VecDeque<Key> = VecDeque::new();
        for f in 0..self.facets.len() {
            let key = (self.tight_vertices(f), self.zero_coords(f));
            if key.0.is_empty() || seen.contains_key(&key) {
                continue;
            }
            let cl = self.closure(&key.0, &key.1);
            seen.insert(key.clone(), cl);
            queue.push_back(key);
        }
        while let Some(key) = queue.pop_front() {
            let active = seen[&key].clone();
            for g in 0..self.facets.len() {
                if active.contains(&g) {
                    continue;
                }
                let v: BTreeSet<usize> = key.0.intersection(&self.tight_vertices(g)).copied().collect();
                if v.is_empty() {
                    continue;
                }
                let r: BTreeSet<usize> = key.1.intersection(&self.zero_coords(g)).copied().collect();
                let nk = (v, r);
                if seen.contains_key(&nk) {
                    continue;
                }
                let cl = self.closure(&nk.0, &nk.1);
                seen.insert(nk.clone(), cl);
                queue.push_back(nk);
            }
        }
        let mut faces: Vec<FaceHandle> = seen.into_iter().map(|((v, r), active)| self.make_face(&v, &r, active)).collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices, &a.recession).cmp(&(b.dim, &b.vertices, &b.recession)));
        faces
    }

    fn make_face(&self, verts: &BTreeSet<usize>, rec: &BTreeSet<usize>, active: Vec<usize>) -> FaceHandle {
        let vertices: Vec<Point> = verts.iter().map(|&v| self.vertices[v].clone()).collect();
        let v0 = &vertices[0];
        let mut span: Vec<Vec<i64>> = vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
        for &j in rec {
            let mut e = vec![0; self.n];
            e[j] = 1;
            span.push(e);
        }
        let dim = rank_i64(&span);
        let bounded = rec.is_empty();
        let sum = |set: &[usize]| -> Vec<i64> {
            let mut s = vec![0i64; self.n];
            for &f in set {
                for (x, y) in s.iter_mut().zip(&self.facets[f].normal) {
                    *x += y;
                }
            }
            s
        };
        let primitive = |v: Vec<i64>| -> Vec<i64> {
            let g = gcd_slice(&v);
            v.into_iter().map(|x| x / g).collect()
        };
        let mut normal = primitive(sum(&active));
        if bounded && active.len() <= 10 {
            for mask in 1u32..(1 << active.len()) {
                let subset: Vec<usize> = (0..active.len()).filter(|i| mask & (1 << i) != 0).map(|i| active[i]).collect();
                let cand = primitive(sum(&subset));
                if !is_positive_vec(&cand) || cand >= normal {
                    continue;
                }
                let minimizers = self.minimizing_vertices(&cand);
                if minimizers == *verts {
                    normal = cand;
                }
            }
        }
        let level = dot(&normal, v0);
        FaceHandle { vertices, recession: rec.iter().copied().collect(), normal, level, bounded, dim, facets: active }
    }

    fn minimizing_vertices(&self, a: &[i64]) -> BTreeSet<usize> {
        let vals: Vec<i64> = self.vertices.iter().map(|v| dot(a, v)).collect();
        let m = *vals.iter().min().expect("nonflat");
        (0..vals.len()).filter(|&i| vals[i] == m).collect()
    }

    /// The bounded face with exactly these vertices.
    pub fn find_face(&self, vertices: &[Point]) -> Option<&FaceHandle> {
        let mut v = vertices.to_vec();
        v.sort();
        self.faces.iter().find(|f| f.bounded && f.vertices == v)
    }

    /// Whether `κ` is a bounded face of this polyhedron (by vertex set).
    pub fn owns(&self, kappa: &FaceHandle) -> bool {
        self.find_face(&kappa.vertices).is_some()
    }

    /// The face `κ_*(a)` minimizing `⟨a, ·⟩` for a strictly positive `a`.
    pub fn face_of_normal(&self, a: &[i64]) -> Result<&FaceHandle> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: a.len() });
        }
        if !is_positive_vec(a) {
            return Err(Error::Config("direction must have positive components".into()));
        }
        if self.is_flat() {
            return Err(Error::Flat);
        }
        let verts: Vec<Point> = self.minimizing_vertices(a).into_iter().map(|i| self.vertices[i].clone()).collect();
        Ok(self.find_face(&verts).expect("minimizing set of a positive direction is a bounded face"))
    }

    /// `a` determines `κ`: the minimizing face of `⟨a, ·⟩` is exactly `κ`.
    pub fn determines(&self, kappa: &FaceHandle, a: &[i64]) -> Result<bool> {
        if !kappa.bounded {
            return Err(Error::UnboundedFace);
        }
        if !self.owns(kappa) {
            return Err(Error::ForeignFace);
        }
        Ok(self.face_of_normal(a)?.vertices == kappa.vertices)
    }

    /// `ρ_j`: where the polyhedron meets the `ξ_j`-axis, `∞` if it does not.
    pub fn rho(&self) -> Vec<ExtendedNat> {
        (0..self.n)
            .map(|j| {
                self.points
                    .iter()
                    .filter(|p| p.iter().enumerate().all(|(i, &x)| i == j || x == 0))
                    .map(|p| p[j] as u64)
                    .min()
                    .map_or(ExtendedNat::Infinite, ExtendedNat::Finite)
            })
            .collect()
    }

    pub fn convenient(&self) -> bool {
        self.rho().iter().all(|r| r.is_finite())
    }

    /// `l_*(â)` and `κ_*(â)` over the restriction to `I(â)`.
    pub fn support_min(&self, a_hat: &[ExtendedNat]) -> Result<SupportMin> {
        let index_set = index_set(a_hat, self.n)?;
        let a: Vec<i64> = a_hat.iter().map(|x| x.finite().map_or(0, |&v| v as i64)).collect();
        let on_plane: Vec<&Point> = self.points.iter().filter(|p| (0..self.n).all(|j| index_set.contains(&j) || p[j] == 0)).collect();
        let Some(level) = on_plane.iter().map(|p| dot(&a, p)).min() else {
            return Ok(SupportMin { level: ExtendedNat::Infinite, face: None, index_set });
        };
        let verts: Vec<Point> = self.vertices.iter().filter(|v| on_plane.contains(v) && dot(&a, v) == level).cloned().collect();
        let face = self.find_face(&verts).cloned();
        debug_assert!(face.is_some(), "restricted minimizer is a face");
        Ok(SupportMin { level: ExtendedNat::Finite(level as u64), face, index_set })
    }

    /// Newton distance `d(F, â) = l_I / min a_I` and the directional intercepts `ρ_j(F, â)`.
    pub fn newton_distance(&self, a_hat: &[ExtendedNat]) -> Result<NewtonDistance> {
        let sm = self.support_min(a_hat)?;
        let min_a = sm.index_set.iter().map(|&j| *a_hat[j].finite().unwrap()).min().unwrap();
        let rho: Vec<ExtendedRat> = (0..self.n)
            .map(|j| if !sm.index_set.contains(&j) { ExtendedRat::from_int(0) } else { sm.level.div_nat(*a_hat[j].finite().unwrap()) })
            .collect();
        let distance = sm.level.div_nat(min_a);
        debug_assert_eq!(Some(&distance), rho.iter().max());
        Ok(NewtonDistance { distance, rho })
    }

    /// A determining normal of `κ` with some component equal to 1, if one exists
    /// among vectors with components at most `bound`.
    pub fn regular_normal(&self, kappa: &FaceHandle, bound: i64) -> Result<Option<Vec<i64>>> {
        if !kappa.bounded {
            return Err(Error::UnboundedFace);
        }
        let kappa = self.find_face(&kappa.vertices).ok_or(Error::ForeignFace)?;
        if kappa.dim + 1 == self.n {
            return Ok(kappa.normal.contains(&1).then(|| kappa.normal.clone()));
        }
        let v0 = &kappa.vertices[0];
        let others: Vec<&Point> = self.vertices.iter().filter(|v| !kappa.vertices.contains(v)).collect();
        for j in 0..self.n {
            // maximize t subject to a_j = 1, a_i >= t, <a, w - v0> >= t, <a, v - v0> = 0
            let nv = self.n + 1;
            let row =
                |coef: Vec<i64>, tcoef: i64| -> Vec<BigRational> { coef.into_iter().chain(std::iter::once(tcoef)).map(lp::int).collect() };
            let mut cs = Vec::new();
            let mut e = vec![0; self.n];
            e[j] = 1;
            cs.push(Constraint::new(row(e, 0), Rel::Eq, lp::int(1)));
            for i in 0..self.n {
                let mut e = vec![0; self.n];
                e[i] = 1;
                cs.push(Constraint::new(row(e, -1), Rel::Ge, lp::int(0)));
            }
            for w in &others {
                cs.push(Constraint::new(row(w.iter().zip(v0).map(|(x, y)| x - y).collect(), -1), Rel::Ge, lp::int(0)));
            }
            for v in &kappa.vertices[1..] {
                cs.push(Constraint::new(row(v.iter().zip(v0).map(|(x, y)| x - y).collect(), 0), Rel::Eq, lp::int(0)));
            }
            cs.push(Constraint::new(row(vec![0; self.n], 1), Rel::Le, lp::int(1)));
            let mut obj = vec![lp::int(0); nv];
            obj[self.n] = lp::int(1);
            let open = matches!(lp::maximize(&obj, &cs), LpOutcome::Optimal { value, .. } if value > lp::int(0));
            if !open {
                continue;
            }
            let mut a = vec![1i64; self.n];
            loop {
                if a[j] == 1 && self.face_of_normal(&a)?.vertices == kappa.vertices {
                    return Ok(Some(a));
                }
                let mut k = 0;
                loop {
                    if k == self.n {
                        break;
                    }
                    if k == j {
                        k += 1;
                        continue;
                    }
                    if a[k] < bound {
                        a[k] += 1;
                        break;
                    }
                    a[k] = 1;
                    k += 1;
                }
                if k == self.n {
                    break;
                }
            }
        }
        Ok(None)
    }

    /// Regular face: determined by a positive normal with some component equal to 1.
    pub fn regular_face(&self, kappa: &FaceHandle) -> Result<bool> {
        let bound = self.vertices.iter().flatten().copied().max().unwrap_or(0).max(12);
        Ok(self.regular_normal(kappa, bound)?.is_some())
    }

    /// The vertex `ρ_j e_j` with `ρ_j` maximal (first such `j`); requires convenience.
    pub fn apex_vertex(&self) -> Option<&FaceHandle> {
        if !self.convenient() {
            return None;
        }
        let rho = self.rho();
        let (j, r) = rho.iter().enumerate().max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(&x.0)))?;
        let mut v = vec![0; self.n];
        v[j] = *r.finite()? as i64;
        self.find_face(&[v])
    }

    /// Points of the original support lying on some bounded face.
    pub fn on_diagram(&self, p: &[i64]) -> bool {
        let mut s = vec![0i64; self.n];
        let mut any = false;
        for f in &self.facets {
            if dot(&f.normal, p) == f.level {
                any = true;
                for (x, y) in s.iter_mut().zip(&f.normal) {
                    *x += y;
                }
            }
        }
        any && is_positive_vec(&s)
    }
}

fn index_set(a_hat: &[ExtendedNat], n: usize) -> Result<Vec<usize>> {
    if a_hat.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a_hat.len() });
    }
    if a_hat.iter().any(|x| x.finite() == Some(&0)) {
        return Err(Error::Config("direction components must be positive".into()));
    }
    let idx: Vec<usize> = (0..n).filter(|&j| a_hat[j].is_finite()).collect();
    if idx.is_empty() {
        return Err(Error::AllInfiniteDirection);
    }
    Ok(idx)
}

impl MixedPolynomial {
    /// `F_κ`: terms whose exponent `α + β` lies on the bounded face `κ` of `N₊(F)`.
    pub fn face_part(&self, kappa: &FaceHandle) -> Result<MixedPolynomial> {
        if !kappa.bounded {
            return Err(Error::UnboundedFace);
        }
        if kappa.normal.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: kappa.normal.len() });
        }
        let poly = Polyhedron::from_poly(self);
        let face = poly.find_face(&kappa.vertices).ok_or(Error::ForeignFace)?;
        Ok(self.filter(|m, _| face.contains_point(&m.point())))
    }

    /// `F₀`: terms on the Newton diagram.
    pub fn principal_part(&self) -> MixedPolynomial {
        let poly = Polyhedron::from_poly(self);
        self.filter(|m, _| poly.on_diagram(&m.point()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedpoly::parse;

    fn poly(s: &str, n: usize) -> Polyhedron {
        Polyhedron::from_poly(&parse(s, n).unwrap())
    }

    fn fin(v: &[u64]) -> Vec<ExtendedNat> {
        v.iter().map(|&x| ExtendedNat::Finite(x)).collect()
    }

    #[test]
    fn r1_hull_drops_interior_support_point() {
        let p = poly("2*Re(z3) + |z1^3 - z2^2|^2", 3);
        assert_eq!(p.vertices(), &[vec![0, 0, 1], vec![0, 4, 0], vec![6, 0, 0]]);
        assert_eq!(p.rho(), fin(&[6, 4, 1]));
        assert!(p.convenient());
    }

    #[test]
    fn mcneal_mernik_diagram() {
        let p = poly("|z1|^2 Re(z1^2 - z2^3) + |z2|^2 Re(z2^2) - Re(z1^2 conj(z2))", 2);
        let facets: Vec<_> = p.bounded_facets().into_iter().map(|f| (f.vertices.clone(), f.normal.clone(), f.level)).collect();
        assert_eq!(facets, vec![(vec![vec![0, 4], vec![2, 1]], vec![3, 2], 8), (vec![vec![2, 1], vec![4, 0]], vec![1, 2], 4)]);
        let k2 = p.find_face(&[vec![2, 1], vec![0, 4]]).unwrap();
        let k1 = p.find_face(&[vec![4, 0], vec![2, 1]]).unwrap();
        assert!(!p.regular_face(k2).unwrap());
        assert!(p.regular_face(k1).unwrap());
        let v = p.find_face(&[vec![2, 1]]).unwrap();
        assert_eq!(v.normal, vec![1, 1]);
        assert!(p.regular_face(v).unwrap());
    }

    #[test]
    fn faces_of_the_three_variable_quartic() {
        let p = poly("|z1|^4 - 2|z1 z2|^2 + |z2|^4 + |z3|^4", 3);
        let bounded = p.bounded_faces();
        // three vertices, three edges, one facet
        assert_eq!(bounded.len(), 7);
        let k2 = p.find_face(&[vec![4, 0, 0], vec![0, 4, 0]]).unwrap();
        assert_eq!(k2.dim, 1);
        assert_eq!(k2.normal, vec![1, 1, 2]);
        let k1 = p.find_face(&[vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4]]).unwrap();
        assert_eq!((k1.dim, k1.level), (2, 4));
    }

    #[test]
    fn single_vertex_and_flat() {
        let p = poly("|z1|^2", 2);
        assert_eq!(p.bounded_faces().len(), 1);
        assert_eq!(p.rho(), vec![ExtendedNat::Finite(2), ExtendedNat::Infinite]);
        let flat = Polyhedron::build(2, std::iter::empty());
        assert!(flat.is_flat());
        assert_eq!(flat.rho(), vec![ExtendedNat::Infinite; 2]);
    }

    #[test]
    fn support_min_and_distance() {
        let p = poly("|z1^3 - z2^2|^2", 2);
        let sm = p.support_min(&fin(&[2, 3])).unwrap();
        assert_eq!(sm.level, ExtendedNat::Finite(12));
        assert_eq!(sm.face.unwrap().vertices, vec![vec![0, 4], vec![6, 0]]);
        let nd = p.newton_distance(&fin(&[2, 3])).unwrap();
        assert_eq!(nd.distance, ExtendedRat::from_int(6));
        assert_eq!(nd.rho, vec![ExtendedRat::from_int(6), ExtendedRat::from_int(4)]);

        let r1 = poly("2*Re(z3) + |z1^3 - z2^2|^2", 3);
        let sm = r1.support_min(&[ExtendedNat::Finite(2), ExtendedNat::Finite(3), ExtendedNat::Infinite]).unwrap();
        assert_eq!(sm.level, ExtendedNat::Finite(12));
        assert_eq!(sm.index_set, vec![0, 1]);

        let q = poly("|z1 z2|^2", 2);
        let sm = q.support_min(&[ExtendedNat::Finite(1), ExtendedNat::Infinite]).unwrap();
        assert_eq!(sm.level, ExtendedNat::Infinite);
        assert!(q.support_min(&[ExtendedNat::Infinite, ExtendedNat::Infinite]).is_err());
    }

    #[test]
    fn determines_and_apex() {
        let p = poly("|z1^3 - z2^2|^2", 2);
        let edge = p.find_face(&[vec![6, 0], vec![0, 4]]).unwrap();
        assert!(p.determines(edge, &[2, 3]).unwrap());
        let v = p.find_face(&[vec![6, 0]]).unwrap();
        assert!(!p.determines(v, &[1, 1]).unwrap());
        let r2 = poly("|z1|^2|z2|^2|z1 - z2|^2 + |z1|^10 + |z2|^10", 2);
        assert_eq!(r2.apex_vertex().unwrap().vertices, vec![vec![10, 0]]);
    }

    #[test]
    fn parts() {
        let f = parse("|z1^3 - z2^2|^2", 2).unwrap();
        let p = Polyhedron::from_poly(&f);
        let edge = p.find_face(&[vec![6, 0], vec![0, 4]]).unwrap();
        assert_eq!(f.face_part(edge).unwrap(), f);
        let g = parse("|z1|^2 + |z1|^4", 1).unwrap();
        assert_eq!(g.principal_part(), parse("|z1|^2", 1).unwrap());
        let mm = parse("|z1|^2 Re(z1^2 - z2^3) + |z2|^2 Re(z2^2) - Re(z1^2 conj(z2))", 2).unwrap();
        let pm = Polyhedron::from_poly(&mm);
        let k2 = pm.find_face(&[vec![2, 1], vec![0, 4]]).unwrap();
        assert_eq!(mm.face_part(k2).unwrap(), parse("|z2|^2 Re(z2^2) - Re(z1^2 conj(z2))", 2).unwrap());
        let unb = pm.faces().iter().find(|f| !f.bounded).unwrap();
        assert_eq!(mm.face_part(unb), Err(Error::UnboundedFace));
    }
}
