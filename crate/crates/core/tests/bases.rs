use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trilinvar_core::lie::apply_raising;
use trilinvar_core::monomial::{generate_higher_weight, generate_weight_zero, monomial_index};
use trilinvar_core::{DegreeBasis, ExponentArray, OperatorId, Weight};

/// All 3×3 non-negative integer matrices with entry sum `s`.
fn matrices_with_sum(s: u8) -> Vec<[u8; 9]> {
    let mut out = Vec::new();
    let mut cur = [0u8; 9];
    fn rec(pos: usize, left: u8, cur: &mut [u8; 9], out: &mut Vec<[u8; 9]>) {
        if pos == 8 {
            cur[8] = left;
            out.push(*cur);
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(pos + 1, left - v, cur, out);
        }
    }
    rec(0, s, &mut cur, &mut out);
    out
}

/// Independent count of arrays whose nine slice sums all equal `n / 3`:
/// choose each horizontal slice freely, then filter on the other two
/// directions.
fn brute_force_count(n: u8) -> usize {
    let s = n / 3;
    let slices = matrices_with_sum(s);
    let mut count = 0;
    for a in &slices {
        for b in &slices {
            for c in &slices {
                // slice matrices are indexed [3j + k]
                let ok = (0..3).all(|j| (0..3).map(|k| a[3 * j + k] + b[3 * j + k] + c[3 * j + k]).sum::<u8>() == s)
                    && (0..3).all(|k| (0..3).map(|j| a[3 * j + k] + b[3 * j + k] + c[3 * j + k]).sum::<u8>() == s);
                count += usize::from(ok);
            }
        }
    }
    count
}

fn random_monomial(rng: &mut ChaCha8Rng, degree: u32) -> ExponentArray {
    let mut e = ExponentArray::ZERO;
    for _ in 0..degree {
        let c = rng.gen_range(0..27);
        e.set(c / 9, (c / 3) % 3, c % 3, e.get(c / 9, (c / 3) % 3, c % 3) + 1);
    }
    e
}

#[test]
fn weight_zero_counts_match_direct_filter() {
    assert_eq!(generate_weight_zero(3).len(), brute_force_count(3));
    assert_eq!(generate_weight_zero(6).len(), brute_force_count(6));
    assert_eq!(brute_force_count(6), 1152);
    let nine = generate_weight_zero(9);
    assert_eq!(nine.len(), 22620);
    assert_eq!(brute_force_count(9), 22620);
}

#[test]
fn degree_nine_higher_counts() {
    let basis = DegreeBasis::new(9);
    for op in OperatorId::ALL {
        assert_eq!(basis.higher(op).len(), 17802, "{op}");
    }
}

#[test]
fn random_monomials_are_members_iff_weight_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [6u32, 9] {
        let basis = generate_weight_zero(n);
        for _ in 0..5000 {
            let e = random_monomial(&mut rng, n);
            assert_eq!(basis.binary_search(&e).is_ok(), e.is_equal_parallel_slice(), "{e}");
        }
        // plant members too, and perturb them by one unit
        for _ in 0..2000 {
            let e = basis[rng.gen_range(0..basis.len())];
            assert!(e.is_equal_parallel_slice());
            let from = (0..27).find(|&c| e.at(c) > 0).unwrap();
            let to = (from + 1 + rng.gen_range(0..26)) % 27;
            let mut f = e;
            let [i, j, k] = trilinvar_core::monomial::coords(from);
            f.set(i, j, k, e.at(from) - 1);
            let [i, j, k] = trilinvar_core::monomial::coords(to);
            f.set(i, j, k, f.at(to) + 1);
            assert_eq!(basis.binary_search(&f).is_ok(), f.is_equal_parallel_slice());
        }
    }
}

#[test]
fn lists_are_strictly_increasing() {
    let basis = DegreeBasis::new(9);
    assert!(basis.weight_zero.windows(2).all(|w| w[0] < w[1]));
    for op in OperatorId::ALL {
        assert!(basis.higher(op).windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn binary_and_linear_search_agree() {
    let basis = generate_weight_zero(9);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    assert_eq!(monomial_index(&basis[0], &basis).unwrap(), 0);
    assert_eq!(monomial_index(basis.last().unwrap(), &basis).unwrap(), basis.len() - 1);
    for probe in 0..10_000 {
        let e = if probe % 2 == 0 { basis[rng.gen_range(0..basis.len())] } else { random_monomial(&mut rng, 9) };
        let linear = basis.iter().position(|b| *b == e);
        match monomial_index(&e, &basis) {
            Ok(i) => assert_eq!(Some(i), linear),
            Err(_) => assert_eq!(linear, None),
        }
    }
}

#[test]
fn weight_shift_property() {
    for n in [3u32, 6] {
        let basis = DegreeBasis::new(n);
        for op in OperatorId::ALL {
            let higher = basis.higher(op);
            for e in &basis.weight_zero {
                assert_eq!(e.weight(), Weight::ZERO);
                for (_, img) in apply_raising(op, e) {
                    assert_eq!(img.weight(), Weight::raised(op));
                    assert_eq!(img.degree(), n);
                    assert!(higher.binary_search(&img).is_ok());
                }
            }
        }
    }
    // sampled at degree nine
    let basis = DegreeBasis::new(9);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let e = basis.weight_zero[rng.gen_range(0..basis.weight_zero.len())];
        for op in OperatorId::ALL {
            for (_, img) in apply_raising(op, &e) {
                assert_eq!(img.weight(), Weight::raised(op));
                assert!(basis.higher(op).binary_search(&img).is_ok());
            }
        }
    }
}

#[test]
fn higher_weight_lists_are_exactly_the_raising_images() {
    let w0 = generate_weight_zero(6);
    for op in OperatorId::ALL {
        let mut direct: Vec<ExponentArray> =
            w0.iter().flat_map(|e| apply_raising(op, e).into_iter().map(|(_, img)| img)).collect();
        direct.sort_unstable();
        direct.dedup();
        assert_eq!(generate_higher_weight(&w0, op), direct);
    }
}
