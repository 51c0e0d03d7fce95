//! Double description for the cone of valid inequalities of `conv(S) + ℝ≥ⁿ`.
//!
//! A pair `(a, l)` is valid iff `a ≥ 0` and `⟨a, s⟩ ≥ l` for every `s ∈ S`. Writing
//! `y = (−l, a)` these are the linear conditions `a_j ≥ 0` and `y_0 + ⟨a, s⟩ ≥ 0`,
//! whose extreme rays, apart from `(1, 0)`, are exactly the facets.

use num_integer::Integer;

type Ray = Vec<i128>;

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn contains(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

fn constraint(n: usize, points: &[Vec<i64>], k: usize) -> Ray {
    let mut c = vec![0i128; n + 1];
    if k < n {
        c[k + 1] = 1;
    } else {
        c[0] = 1;
        for (j, &s) in points[k - n].iter().enumerate() {
            c[j + 1] = s as i128;
        }
    }
    c
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x.checked_mul(*y).expect("ray overflow")).fold(0i128, |s, v| s.checked_add(v).expect("ray overflow"))
}

fn reduce(mut r: Ray) -> Ray {
    let g = r.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for v in r.iter_mut() {
            *v /= g;
        }
    }
    r
}

/// Facets `(a, l)` of `conv(points) + ℝ≥ⁿ`, unsorted, with `a` primitive.
pub fn facets(n: usize, points: &[Vec<i64>]) -> Vec<(Vec<i64>, i64)> {
    assert!(!points.is_empty());
    let total = n + points.len();
    let d = n + 1;
    let cons: Vec<Ray> = (0..total).map(|k| constraint(n, points, k)).collect();

    // Initial simplicial cone from `a ≥ 0` and the first point.
    let s0 = &points[0];
    let mut rays: Vec<Ray> = Vec::new();
    let mut r0 = vec![0i128; d];
    r0[0] = 1;
    rays.push(r0);
    for j in 0..n {
        let mut r = vec![0i128; d];
        r[0] = -(s0[j] as i128);
        r[j + 1] = 1;
        rays.push(reduce(r));
    }
    let mut processed: Vec<usize> = (0..=n).collect();
    let mut tight: Vec<Bits> = rays
        .iter()
        .map(|r| {
            let mut b = Bits::new(total);
            for &k in &processed {
                if dot(&cons[k], r) == 0 {
                    b.set(k);
                }
            }
            b
        })
        .collect();

    for k in n + 1..total {
        let c = &cons[k];
        let vals: Vec<i128> = rays.iter().map(|r| dot(c, r)).collect();
        if vals.iter().all(|&v| v >= 0) {
            for (i, &v) in vals.iter().enumerate() {
                if v == 0 {
                    tight[i].set(k);
                }
            }
            processed.push(k);
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let mut new_rays = Vec::new();
        let mut new_tight = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = tight[p].and(&tight[q]);
                if (common.count() as usize) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|t| t == p || t == q || !tight[t].contains(&common));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (vals[p], vals[q]);
                let r: Ray = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(&rq, &rp)| {
                        vp.checked_mul(rq).and_then(|a| vq.checked_mul(rp).and_then(|b| a.checked_sub(b))).expect("ray overflow")
                    })
                    .collect();
                let mut t = common;
                t.set(k);
                new_rays.push(reduce(r));
                new_tight.push(t);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_tight = Vec::new();
        for i in 0..rays.len() {
            if vals[i] >= 0 {
                let mut t = tight[i].clone();
                if vals[i] == 0 {
                    t.set(k);
                }
                kept_rays.push(rays[i].clone());
                kept_tight.push(t);
            }
        }
        kept_rays.extend(new_rays);
        kept_tight.extend(new_tight);
        rays = kept_rays;
        tight = kept_tight;
        processed.push(k);
    }

    let mut out = Vec::new();
    for r in rays {
        if r[1..].iter().all(|&v| v == 0) {
            continue;
        }
        let g = r[1..].iter().fold(0i128, |g, &x| g.gcd(&x));
        let a: Vec<i64> = r[1..].iter().map(|&v| i64::try_from(v / g).expect("normal fits")).collect();
        let l = i64::try_from(-r[0] / g).expect("level fits");
        out.push((a, l));
    }
    out.sort();
    out.dedup();
    out
}
