//! Property tests of the public API against oracles built here from scratch.

use num_traits::{One, Zero};
use proptest::prelude::*;

use kbf_core::exact::{format_rational, parse_rational, upow, Rational};
use kbf_core::five_vertex::{check_rll, check_ybe};
use kbf_core::grothendieck::{groth_det, EvalPoint};
use kbf_core::partitions::{partitions_in_box, Partition};
use kbf_core::phase_model::{apply_B_phase, FockVector};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn distinct(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), n).prop_filter("distinct", |z| {
        z.iter().enumerate().all(|(i, x)| !z[..i].contains(x))
    })
}

/// Sum over set-valued tableaux of shape `lambda` with entries in `1..=n`:
/// rows weakly increase (max of a box at most min of the next),
/// columns strictly increase, weight `beta^(|T| - |lambda|) * prod z_entry`.
fn set_valued_tableaux(lambda: &Partition, z: &[Rational], beta: &Rational) -> Rational {
    let n = z.len();
    let cells: Vec<(usize, usize)> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len as usize).map(move |j| (i, j)))
        .collect();
    let subsets: Vec<u32> = (1..1u32 << n).collect();
    let mut filling = vec![0u32; cells.len()];

    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        subsets: &[u32],
        filling: &mut Vec<u32>,
        z: &[Rational],
        beta: &Rational,
        size: usize,
    ) -> Rational {
        if k == cells.len() {
            let mut w = Rational::one();
            let mut entries = 0;
            for s in filling.iter() {
                for (i, zi) in z.iter().enumerate() {
                    if s >> i & 1 == 1 {
                        w *= zi;
                        entries += 1;
                    }
                }
            }
            return w * upow(beta, (entries - size) as u32);
        }
        let (i, j) = cells[k];
        let lo = |s: u32| s.trailing_zeros();
        let hi = |s: u32| 31 - s.leading_zeros();
        let mut total = Rational::zero();
        for &s in subsets {
            if j > 0 {
                let left = filling[cells.iter().position(|&c| c == (i, j - 1)).unwrap()];
                if hi(left) > lo(s) {
                    continue;
                }
            }
            if i > 0 {
                let up = filling[cells.iter().position(|&c| c == (i - 1, j)).unwrap()];
                if hi(up) >= lo(s) {
                    continue;
                }
            }
            filling[k] = s;
            total += rec(k + 1, cells, subsets, filling, z, beta, size);
        }
        total
    }

    rec(0, &cells, &subsets, &mut filling, z, beta, cells.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_matches_set_valued_tableaux(
        z in distinct(3),
        beta in small_rational(),
        idx in 0usize..20,
    ) {
        let shapes = partitions_in_box(3, 2);
        let lambda = &shapes[idx % shapes.len()];
        let p = EvalPoint::new(z.clone(), beta.clone()).unwrap();
        prop_assert_eq!(groth_det(lambda, &p).unwrap(), set_valued_tableaux(lambda, &z, &beta));
    }

    #[test]
    fn phase_b_operators_commute(
        uv in distinct(2),
        beta in small_rational(),
        sites in 1usize..=4,
    ) {
        prop_assume!(uv.iter().all(|x| !x.is_zero()));
        let vac = FockVector::vacuum(sites);
        let (u, v) = (&uv[0], &uv[1]);
        let uv_state = apply_B_phase(u, &beta, &apply_B_phase(v, &beta, &vac).unwrap()).unwrap();
        let vu_state = apply_B_phase(v, &beta, &apply_B_phase(u, &beta, &vac).unwrap()).unwrap();
        prop_assert_eq!(uv_state, vu_state);
    }

    #[test]
    fn five_vertex_rll_and_ybe(
        uvw in distinct(3),
        beta in small_rational(),
    ) {
        prop_assume!(uvw.iter().all(|x| !x.is_zero()));
        prop_assume!(!beta.is_zero());
        let sq: Vec<Rational> = uvw.iter().map(|x| x * x).collect();
        prop_assume!(sq.iter().enumerate().all(|(i, x)| !sq[..i].contains(x)));
        prop_assert!(check_rll(&uvw[0], &uvw[1], &beta).unwrap());
        prop_assert!(check_ybe(&uvw[0], &uvw[1], &uvw[2]).unwrap());
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}

#[test]
fn set_valued_oracle_small_case() {
    // G_(1) in two variables is z1 + z2 + beta z1 z2.
    let z = [Rational::from_integer(2.into()), Rational::from_integer(5.into())];
    let beta = Rational::new((-1).into(), 3.into());
    let lambda = Partition::new(vec![1, 0]).unwrap();
    let expected = &z[0] + &z[1] + &beta * &z[0] * &z[1];
    assert_eq!(set_valued_tableaux(&lambda, &z, &beta), expected);
    let p = EvalPoint::new(z.to_vec(), beta).unwrap();
    assert_eq!(groth_det(&lambda, &p).unwrap(), expected);
}
