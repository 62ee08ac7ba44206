use mrfw_core::chartab::{fusion_from_table, tables};
use mrfw_core::corpus;
use mrfw_core::matrix::IntMatrix;
use mrfw_core::mr::{integrality_class, mr_extend, mr_fpdim, spherical_witness, IntegralityClass};
use mrfw_core::obstruction::{codegrees, gram_brute_force, gram_search, GramProblem, GramStatus};
use mrfw_core::ring::{fpdims, global_fpdim};
use mrfw_core::scalar::{ratio, QuadExt};
use num_bigint::BigInt;
use proptest::prelude::*;

fn gram_of(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut h = vec![vec![0; n]; n];
    for r in rows {
        for i in 0..n {
            for j in 0..n {
                h[i][j] += r[i] * r[j];
            }
        }
    }
    h
}

fn targets() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(0i64..4, n), 1..5), any::<bool>(), 0usize..16))
        .prop_map(|(n, rows, perturb, at)| {
            let mut h = gram_of(&rows, n);
            if perturb {
                let (i, j) = (at % n, (at / 4) % n);
                h[i][j] += 1;
                if i != j {
                    h[j][i] += 1;
                }
            }
            h
        })
        .prop_filter("entries ≤ 40", |h| h.iter().flatten().all(|&x| x <= 40))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gram_search_matches_brute_force(h in targets()) {
        let out = gram_search(&GramProblem::new(IntMatrix::from_rows(&h)));
        prop_assert_ne!(out.status, GramStatus::CapExceeded);
        prop_assert_eq!(out.status == GramStatus::Feasible, gram_brute_force(&IntMatrix::from_rows(&h)), "H = {:?}", h);
        if let Some(w) = out.witnesses.first() {
            prop_assert_eq!(gram_of(w, h.len()), h);
        }
    }
}

#[test]
fn codegrees_of_group_representation_rings_are_centralizer_orders() {
    for t in tables::all() {
        let ring = fusion_from_table(&t).unwrap();
        let mut got: Vec<QuadExt> = codegrees(&ring).unwrap().values;
        got.sort();
        let mut want: Vec<QuadExt> = t.centralizer_orders().iter().map(|&c| QuadExt::from_int(c as i64)).collect();
        want.sort();
        assert_eq!(got, want, "{:?}", t.name);
    }
}

#[test]
fn mr_fpdim_matches_extension_dims() {
    for a in 1..=20u64 {
        let base = corpus::group_ring(a as usize);
        for kappa in 0..=10u64 {
            let ext = mr_extend(&base, kappa).unwrap();
            let (dn, total) = mr_fpdim(a, kappa);
            let dims = fpdims(&ext).exact().unwrap_or_else(|| panic!("a={a} κ={kappa}"));
            assert_eq!(dims[base.rank()], dn, "a={a} κ={kappa}");
            let sum = dims.iter().fold(QuadExt::zero(), |acc, d| &acc + &(d * d));
            assert_eq!(sum, total, "a={a} κ={kappa}");
            if a <= 6 {
                assert_eq!(global_fpdim(&ext).exact().unwrap(), &total, "a={a} κ={kappa}");
            }
            assert!((&(&total - &QuadExt::from_int(a as i64)) - &(&dn * &dn)).is_zero());
            if integrality_class(a, kappa) == IntegralityClass::Integral {
                assert!(dn.as_integer().is_some());
            }
        }
    }
}

#[test]
fn fibonacci_total_dimension() {
    let want = QuadExt::new(ratio(5, 2), ratio(1, 2), BigInt::from(5));
    assert_eq!(global_fpdim(&corpus::fibonacci()).exact().unwrap(), &want);
    assert_eq!(mr_fpdim(1, 1).1, want);
}

#[test]
fn spherical_conclusion_on_the_grid() {
    for a in 1..=50 {
        for kappa in 0..=20 {
            let c = spherical_witness(a, kappa);
            assert_eq!(c.conclusion, (kappa, 0), "a={a} κ={kappa}");
            assert_eq!(c.survivors(), vec![(kappa, 0)], "a={a} κ={kappa}");
        }
    }
}

#[test]
fn spherical_xy_uses_the_corrected_denominator() {
    let c = spherical_witness(2, 2);
    let top = c.candidates.iter().find(|x| (x.s, x.t) == (2, 0)).unwrap();
    assert_eq!(top.xy, ratio(1, 1));
    for x in &c.candidates {
        assert!(x.matches_closed_form);
        assert_ne!(x.closed_form_xy, x.printed_form_xy);
    }
}
