use newton_core::contact::order_of_contact;
use newton_core::curves::MonomialCurve;
use newton_core::hypersurface::{normalize, ModelHypersurface};
use newton_core::mixedpoly::{q, Monomial, TermClass};
use newton_core::nondegen::{check_all, CheckOptions, Status};
use newton_core::oracle::{sup_contact_lower_bound, SearchConfig};
use newton_core::polyhedron::Polyhedron;
use newton_core::{parse, ExtendedNat, GaussianRational, JetCurve, MixedPolynomial};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, -2i64..=2, 1i64..=3)
        .prop_filter("nonzero", |(re, im, _)| *re != 0 || *im != 0)
        .prop_map(|(re, im, d)| GaussianRational::from_fracs((re, d), (im, d)))
}

fn exponents(n: usize, hi: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=hi, n)
}

fn term(n: usize) -> impl Strategy<Value = MixedPolynomial> {
    (exponents(n, 2), exponents(n, 2), gauss())
        .prop_filter("not constant", |(a, b, _)| a.iter().chain(b).any(|&x| x > 0))
        .prop_map(|(alpha, beta, c)| MixedPolynomial::monomial(Monomial { alpha, beta }, c))
}

fn poly(n: usize) -> impl Strategy<Value = MixedPolynomial> {
    prop::collection::vec(term(n), 1..5).prop_map(move |ts| ts.iter().fold(MixedPolynomial::zero(n), |acc, t| acc.add(t)))
}

fn real_poly(n: usize) -> impl Strategy<Value = MixedPolynomial> {
    poly(n).prop_map(|p| p.real_part()).prop_filter("nonzero", |p| !p.is_zero())
}

fn positive_diagonal(n: usize) -> impl Strategy<Value = MixedPolynomial> {
    prop::collection::vec((exponents(n, 3).prop_filter("nonzero", |v| v.iter().any(|&x| x > 0)), 1i64..=4), 1..5).prop_map(move |ts| {
        ts.into_iter().fold(MixedPolynomial::zero(n), |acc, (v, c)| {
            acc.add(&MixedPolynomial::monomial(Monomial { alpha: v.clone(), beta: v }, q(c, 1)))
        })
    })
}

fn jet(n: usize) -> impl Strategy<Value = JetCurve> {
    prop::collection::vec(prop::option::weighted(0.8, prop::collection::vec((gauss(), 1u32..=4), 1..3)), n).prop_filter_map(
        "nonzero curve",
        |comps| {
            let comps: Vec<Vec<(GaussianRational, u32)>> = comps
                .into_iter()
                .map(|c| {
                    let mut c = c.unwrap_or_default();
                    c.sort_by_key(|(_, e)| *e);
                    c.dedup_by_key(|(_, e)| *e);
                    c
                })
                .collect();
            JetCurve::from_coeffs(&comps).ok()
        },
    )
}

fn nat_value(x: &ExtendedNat) -> Option<u64> {
    x.finite().copied()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn display_parses_back(p in poly(3)) {
        prop_assert_eq!(parse(&p.to_string(), 3).unwrap(), p.clone());
        prop_assert_eq!(MixedPolynomial::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn intercepts_and_curve_orders_add_under_products(f in poly(2), g in poly(2), gamma in jet(2)) {
        let fg = f.mul(&g);
        let (rf, rg, rfg) = (Polyhedron::from_poly(&f).rho(), Polyhedron::from_poly(&g).rho(), Polyhedron::from_poly(&fg).rho());
        for j in 0..2 {
            match (nat_value(&rf[j]), nat_value(&rg[j])) {
                (Some(a), Some(b)) => prop_assert_eq!(nat_value(&rfg[j]), Some(a + b)),
                _ => prop_assert!(rfg[j].is_infinite()),
            }
        }
        let o = |p: &MixedPolynomial| p.substitute_curve(&gamma).unwrap().ord();
        match (nat_value(&o(&f)), nat_value(&o(&g))) {
            (Some(a), Some(b)) => prop_assert_eq!(nat_value(&o(&fg)), Some(a + b)),
            _ => prop_assert!(o(&fg).is_infinite()),
        }
    }

    #[test]
    fn restriction_nests(p in poly(4), mask in 1u8..16, sub in 1u8..16) {
        let outer: Vec<usize> = (0..4).filter(|j| mask & (1 << j) != 0).collect();
        let inner_pos: Vec<usize> = (0..outer.len()).filter(|k| sub & (1 << k) != 0).collect();
        prop_assume!(!inner_pos.is_empty());
        let inner: Vec<usize> = inner_pos.iter().map(|&k| outer[k]).collect();
        let two_step = p.restrict(&outer).unwrap().restrict(&inner_pos).unwrap();
        prop_assert_eq!(two_step, p.restrict(&inner).unwrap());
    }

    #[test]
    fn face_parts_are_quasihomogeneous_under_complex_scaling(f in poly(3), re in 1i64..3, im in -2i64..3) {
        // For holomorphic parts the identity holds with complex ζ; for mixed parts only |ζ| matters,
        // so check a real radius here and the holomorphic case below.
        let p = Polyhedron::from_poly(&f);
        let zeta = GaussianRational::from_ints(re, im);
        for k in p.bounded_faces() {
            let part = f.face_part(k).unwrap();
            let r = q(2, 1);
            let lam: Vec<GaussianRational> = k.normal.iter().map(|&a| r.pow(a as u32)).collect();
            prop_assert_eq!(part.scale_vars(&lam), part.scale(&r.pow(k.level as u32)));
            let hol = part.filter(|m, _| m.beta.iter().all(|&b| b == 0));
            let lam: Vec<GaussianRational> = k.normal.iter().map(|&a| zeta.pow(a as u32)).collect();
            prop_assert_eq!(hol.scale_vars(&lam), hol.scale(&zeta.pow(k.level as u32)));
        }
    }

    #[test]
    fn unit_factors_change_nothing(f in real_poly(2), u in poly(2), gamma in jet(2)) {
        let unit = MixedPolynomial::one(2).add(&u);
        let uf = unit.mul(&f);
        let (pf, puf) = (Polyhedron::from_poly(&f), Polyhedron::from_poly(&uf));
        prop_assert_eq!(pf.vertices(), puf.vertices());
        let a = order_of_contact(&f, &gamma).unwrap();
        let b = order_of_contact(&uf, &gamma).unwrap();
        prop_assert_eq!(a.contact_order, b.contact_order);
    }

    #[test]
    fn directional_intercepts_bounded_by_axis_intercepts(f in poly(3), a in prop::collection::vec(prop::option::of(1u64..6), 3)) {
        prop_assume!(a.iter().any(Option::is_some));
        let a_hat: Vec<ExtendedNat> = a.iter().map(|x| x.map_or(ExtendedNat::Infinite, ExtendedNat::Finite)).collect();
        let p = Polyhedron::from_poly(&f);
        let nd = p.newton_distance(&a_hat).unwrap();
        let rho = p.rho();
        prop_assert_eq!(nd.rho.iter().max().unwrap(), &nd.distance);
        for (dir, axis) in nd.rho.iter().zip(&rho) {
            prop_assert!(*dir <= axis.to_rat());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, max_global_rejects: 4096, ..ProptestConfig::default() })]

    #[test]
    fn witnesses_survive_exponent_and_radius_scaling(p in 1u32..4, qq in 1u32..4, c in gauss(), extra in positive_diagonal(2)) {
        // |z1^p - c z2^q|² has a degenerate face; high-order diagonal terms stay off it.
        let h = parse(&format!("z1^{p}"), 2).unwrap().sub(&parse(&format!("z2^{qq}"), 2).unwrap().scale(&c));
        let shift = |m: &Monomial| Monomial { alpha: m.alpha.iter().map(|x| x + 4).collect(), beta: m.beta.iter().map(|x| x + 4).collect() };
        let extra = MixedPolynomial::from_terms(2, extra.terms().map(|(m, v)| (shift(m), v.clone()))).unwrap();
        let f = h.mul(&h.conj()).add(&extra);
        let v = check_all(&f, &CheckOptions::default()).unwrap();
        prop_assume!(v.status == Status::Degenerate);
        let w = v.witness.unwrap();
        let part = f.face_part(&w.face).unwrap();
        for m in 1..4 {
            prop_assert!(part.substitute_curve(&w.curve.scale_exponents(m).to_jet()).unwrap().is_zero());
        }
        let r = q(3, 1);
        let c2: Vec<GaussianRational> = w.curve.c.iter().zip(&w.curve.a).map(|(cj, &aj)| cj.clone() * r.pow(aj)).collect();
        let scaled = MonomialCurve::new(c2, w.curve.a.clone()).unwrap();
        prop_assert!(part.substitute_curve(&scaled.to_jet()).unwrap().is_zero());
    }

    #[test]
    fn oracle_is_deterministic_and_monotone(f in real_poly(2)) {
        let small = SearchConfig { max_exponent: 2, max_curves: 20_000, ..SearchConfig::small() };
        let larger = SearchConfig { max_exponent: 3, ..small.clone() };
        let a = sup_contact_lower_bound(&f, &small).unwrap();
        let b = sup_contact_lower_bound(&f, &small).unwrap();
        prop_assert_eq!(&a.best, &b.best);
        prop_assert_eq!(a.argmax.as_ref().map(|c| c.to_string()), b.argmax.as_ref().map(|c| c.to_string()));
        let c = sup_contact_lower_bound(&f, &larger).unwrap();
        prop_assert!(c.best >= a.best);
    }

    #[test]
    fn normalize_is_idempotent(f in positive_diagonal(2), pure in gauss()) {
        let pure_term = parse("z1^2", 3).unwrap().scale(&pure).real_part();
        let r = parse("Re(z3)", 3).unwrap().add(&f.embed(3, &[0, 1])).add(&pure_term);
        let m = normalize(&r).unwrap();
        let again = normalize(&m.defining_function()).unwrap();
        prop_assert_eq!(&again.f, &m.f);
        prop_assert!(again.changes.is_empty());
        prop_assert_eq!(ModelHypersurface::new(m.f.clone()).unwrap().f, m.f);
    }

    #[test]
    fn adding_re_w_keeps_the_verdict(f in real_poly(2)) {
        // Pure terms on the diagram break the equivalence: |z1 - z2|² + 2 Re(z1 z2) is a counterexample.
        prop_assume!(f.principal_part().terms().all(|(m, _)| m.class() != TermClass::Pure));
        let o = CheckOptions::default();
        let alone = check_all(&f, &o).unwrap().status;
        let r = parse("Re(z3)", 3).unwrap().add(&f.embed(3, &[0, 1]));
        let with_w = check_all(&r, &o).unwrap().status;
        if alone != Status::Unknown && with_w != Status::Unknown {
            prop_assert_eq!(alone, with_w);
        }
    }

    #[test]
    fn psh_assertion_is_consistent_on_rotation_invariant_sums(f in positive_diagonal(3)) {
        prop_assert!(f.is_rotation_invariant());
        let plain = check_all(&f, &CheckOptions::default()).unwrap().status;
        let psh = check_all(&f, &CheckOptions { assert_psh: true, ..CheckOptions::default() }).unwrap().status;
        prop_assert_eq!(plain, Status::Nondegenerate);
        prop_assert_eq!(psh, Status::Nondegenerate);
    }
}
