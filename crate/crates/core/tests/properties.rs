//! Property tests for the exact kernels and cross-module invariants.

use std::collections::BTreeMap;

use num::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sympair_core::criteria::{
    face_parabolic, h_integrability, relative_positivity, theta_parabolics, CoordsMode,
    ExponentProfile, VerdictKind,
};
use sympair_core::families::{instantiate, FamilySpec, SplitType};
use sympair_core::linalg::{
    eigenprojection, lattice_quotient, rat, smith, solve_in_span, Int, IntMat, Rat, RatVec,
};
use sympair_core::sympair::{build_descendent, coset_transversal};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn vec_strategy(dim: usize) -> impl Strategy<Value = RatVec> {
    prop::collection::vec(rat_strategy(), dim).prop_map(RatVec::new)
}

/// Random symmetric involution: an involutive permutation with signs,
/// constant on its two-cycles.
fn involution_strategy(dim: usize) -> impl Strategy<Value = IntMat> {
    (prop::collection::vec(0..dim, dim), prop::collection::vec(any::<bool>(), dim)).prop_map(
        move |(partner_seed, signs)| {
            let mut partner: Vec<usize> = (0..dim).collect();
            for i in 0..dim {
                let j = partner_seed[i];
                if partner[i] == i && partner[j] == j {
                    partner[i] = j;
                    partner[j] = i;
                }
            }
            let mut rows = vec![vec![0i64; dim]; dim];
            for i in 0..dim {
                let s = if signs[i.min(partner[i])] { 1 } else { -1 };
                rows[partner[i]][i] = s;
            }
            IntMat::from_rows_i64(&rows).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenprojections_split_and_commute(v in vec_strategy(4), theta in involution_strategy(4)) {
        prop_assume!(theta.is_involution());
        let plus = eigenprojection(&v, &theta, 1).unwrap();
        let minus = eigenprojection(&v, &theta, -1).unwrap();
        prop_assert_eq!(plus.add(&minus), v);
        prop_assert_eq!(theta.apply(&plus), plus);
        prop_assert_eq!(theta.apply(&minus), minus.neg());
    }

    #[test]
    fn solve_in_span_roundtrip(c0 in rat_strategy(), c1 in rat_strategy()) {
        let gens = [RatVec::from_ints(&[2, 1, 0]), RatVec::from_ints(&[-1, 3, 5])];
        let target = gens[0].scale(&c0).add(&gens[1].scale(&c1));
        let coeffs = solve_in_span(&target, &gens).unwrap().unwrap();
        prop_assert_eq!(&coeffs[0], &c0);
        prop_assert_eq!(&coeffs[1], &c1);
        let mut acc = RatVec::zeros(3);
        for (c, g) in coeffs.iter().zip(&gens) {
            acc = acc.add(&g.scale(c));
        }
        prop_assert_eq!(acc, target);
    }

    #[test]
    fn smith_is_a_valid_decomposition(entries in prop::collection::vec(-9i64..=9, 6)) {
        let a: Vec<Vec<Int>> = vec![
            entries[..3].iter().map(|&x| Int::from(x)).collect(),
            entries[3..].iter().map(|&x| Int::from(x)).collect(),
        ];
        let sf = smith(&a);
        let prod = |m1: &Vec<Vec<Int>>, m2: &Vec<Vec<Int>>| -> Vec<Vec<Int>> {
            (0..m1.len())
                .map(|i| (0..m2[0].len())
                    .map(|j| (0..m2.len()).map(|k| &m1[i][k] * &m2[k][j]).sum())
                    .collect())
                .collect()
        };
        let uav = prod(&prod(&sf.u, &a), &sf.v);
        for i in 0..2 {
            for j in 0..3 {
                let expect = if i == j { sf.diag[i].clone() } else { Int::zero() };
                prop_assert_eq!(&uav[i][j], &expect);
            }
        }
        for k in 0..sf.diag.len().saturating_sub(1) {
            if !sf.diag[k].is_zero() && !sf.diag[k + 1].is_zero() {
                prop_assert!((&sf.diag[k + 1] % &sf.diag[k]).is_zero());
            }
        }
    }

    #[test]
    fn lattice_quotient_covers_boxes(a in -4i64..=4, b in -4i64..=4, c in -4i64..=4, d in -4i64..=4) {
        let det = a * d - b * c;
        prop_assume!(det != 0 && det.abs() <= 30);
        let gens = vec![vec![Int::from(a), Int::from(c)], vec![Int::from(b), Int::from(d)]];
        let q = lattice_quotient(2, &gens).unwrap();
        prop_assert_eq!(&q.index, &Int::from(det.abs()));
        prop_assert_eq!(q.transversal.len(), det.unsigned_abs() as usize);
        for x0 in -6i64..=6 {
            for x1 in -6i64..=6 {
                let x = vec![Int::from(x0), Int::from(x1)];
                let hits = q.transversal.iter().filter(|t| q.same_coset(&x, t)).count();
                prop_assert_eq!(hits, 1);
            }
        }
    }
}

#[test]
fn parabolic_bijection_sanity() {
    for spec in [
        FamilySpec::GlOrthogonal { n: 5, r: 2 },
        FamilySpec::SpUnitary { n: 4, quasi_split: true },
        FamilySpec::GlLinear { n1: 2, n2: 2 },
        FamilySpec::Gl2nGlnE { n: 3 },
    ] {
        let (datum, inv) = instantiate(&spec).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        let pars = theta_parabolics(&ds).unwrap();
        let t = ds.delta_gh().len();
        assert_eq!(pars.len(), 1 << t, "{spec:?}");
        let mut ambient: Vec<Vec<usize>> = pars.iter().map(|p| p.ambient_subset.clone()).collect();
        ambient.sort();
        ambient.dedup();
        assert_eq!(ambient.len(), 1 << t, "{spec:?}: ambient map not injective");
        // Order preservation: subset inclusion carries over.
        for a in &pars {
            for b in &pars {
                let sub: std::collections::BTreeSet<_> = a.subset.iter().collect();
                let sup: std::collections::BTreeSet<_> = b.subset.iter().collect();
                if sub.is_subset(&sup) {
                    let ia: std::collections::BTreeSet<_> = a.ambient_subset.iter().collect();
                    let ib: std::collections::BTreeSet<_> = b.ambient_subset.iter().collect();
                    assert!(ia.is_subset(&ib), "{spec:?}: order not preserved");
                }
            }
        }
    }
}

#[test]
fn minimal_face_agrees_with_direct_extraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for spec in [
        FamilySpec::GlOrthogonal { n: 4, r: 2 },
        FamilySpec::GlLinear { n1: 1, n2: 2 },
        FamilySpec::SpGln { n: 2 },
    ] {
        let (datum, inv) = instantiate(&spec).unwrap();
        let ds = build_descendent(&datum, &inv).unwrap();
        let par = face_parabolic(&ds, &[]).unwrap();
        let delta = ds.delta_gh_roots();
        for _ in 0..200 {
            let v = RatVec::new(
                (0..ds.rank())
                    .map(|_| rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=2)))
                    .collect(),
            );
            let rep = relative_positivity(&par, &v, true).unwrap();
            // Direct route: project, then expand over the restricted simples.
            let plus = eigenprojection(&v, ds.theta(), 1).unwrap();
            match solve_in_span(&plus, &delta).unwrap() {
                None => assert!(!rep.in_span, "{spec:?}: span disagreement"),
                Some(coeffs) => {
                    assert!(rep.in_span, "{spec:?}: span disagreement");
                    // Coefficients agree position by position.
                    let by_pos: BTreeMap<usize, Rat> = rep.coefficients.iter().cloned().collect();
                    for (pos, c) in coeffs.iter().enumerate() {
                        assert_eq!(by_pos.get(&pos), Some(c), "{spec:?}");
                    }
                    let direct_ok = coeffs.iter().all(|c| c.is_positive());
                    assert_eq!(direct_ok, rep.ok, "{spec:?}: verdict disagreement");
                }
            }
        }
    }
}

#[test]
fn integrability_is_monotone_under_dominant_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (datum, inv) = instantiate(&FamilySpec::GlOrthogonal { n: 4, r: 2 }).unwrap();
    let ds = build_descendent(&datum, &inv).unwrap();
    let reps = coset_transversal(&ds).unwrap();
    let pars = theta_parabolics(&ds).unwrap();
    let delta = ds.delta_gh_roots();
    let mut flips = 0;
    for _ in 0..200 {
        let t = ds.delta_gh().len();
        let mut raw = Vec::new();
        for mask in 0u32..(1 << t) {
            let subset: Vec<usize> = (0..t).filter(|&p| mask & (1 << p) != 0).collect();
            let v = RatVec::new(
                (0..ds.rank())
                    .map(|_| rat(rng.gen_range(-3i64..=3), 1))
                    .collect(),
            );
            raw.push((subset, vec![v]));
        }
        let profile = ExponentProfile::new(&ds, &raw, CoordsMode::Full).unwrap();
        let before = h_integrability(&ds, &reps, &pars, &profile).unwrap();
        if before.verdict.kind != VerdictKind::Integrable {
            continue;
        }
        // strictly dominant shift: positive combination of the simples
        let shift = delta
            .iter()
            .fold(RatVec::zeros(ds.rank()), |acc, g| acc.add(&g.scale(&rat(rng.gen_range(1i64..=3), 1))));
        let shifted: Vec<(Vec<usize>, Vec<RatVec>)> = raw
            .iter()
            .map(|(s, vs)| (s.clone(), vs.iter().map(|v| v.add(&shift)).collect()))
            .collect();
        let profile2 = ExponentProfile::new(&ds, &shifted, CoordsMode::Full).unwrap();
        let after = h_integrability(&ds, &reps, &pars, &profile2).unwrap();
        if after.verdict.kind != VerdictKind::Integrable {
            flips += 1;
        }
    }
    assert_eq!(flips, 0, "dominant shifts flipped an integrable verdict");
}

#[test]
fn unlisted_traces_are_rejected_and_parity_enforced() {
    // A datum where the involution fixes roots with multiplicity one must
    // receive odd traces of absolute value one.
    let (datum, _) = instantiate(&FamilySpec::SpGln { n: 2 }).unwrap();
    let theta = IntMat::identity(2);
    let mut traces: BTreeMap<usize, i64> = BTreeMap::new();
    for i in 0..datum.num_roots() {
        traces.insert(i, 0); // wrong parity for multiplicity one
    }
    let err = sympair_core::InvolutionData::new(&datum, theta, traces).unwrap_err();
    assert!(matches!(err, sympair_core::Error::ParityViolation(_)));
}

#[test]
fn group_case_pair_matches_subgroup_weyl_data() {
    // For the doubled pair the restricted and subgroup systems coincide
    // with the base datum and the transversal is trivial.
    for (t, rank) in [(SplitType::A, 2), (SplitType::C, 2), (SplitType::B, 2)] {
        let h = sympair_core::families::split_datum(t, rank).unwrap();
        let (g, inv) = sympair_core::families::doubled_pair(&h).unwrap();
        let ds = build_descendent(&g, &inv).unwrap();
        let reps = coset_transversal(&ds).unwrap();
        assert_eq!(ds.restricted().num_roots(), h.num_roots());
        assert_eq!(ds.sigma_h().num_roots(), h.num_roots());
        assert_eq!(reps.wgh.order(), reps.wh.order());
        assert_eq!(reps.transversal.len(), 1);
        assert!(reps.rho[0].is_zero());
    }
}
