//! Independent oracles for the constructors: brute-force products, direct
//! divisor sums, naive generating-function inversion and a second linear
//! algebra route for Hecke matrices. None of them go through `QSeries`
//! arithmetic except where the quantity under test is compared.

use modform_core::classical::{bernoulli, delta, eisenstein, j_invariant};
use modform_core::hecke::{hecke_coefficient, hecke_matrix, linalg, miller_basis};
use modform_core::nonordinary::{four_six_rep, g_form, solve_part1};
use modform_core::{BigInt, BigRational, QSeries};
use num_traits::{One, Zero};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `q prod_{n < len} (1 - q^n)^24` by repeated multiplication with `1 - q^n`.
fn delta_brute(len: usize) -> Vec<i128> {
    let mut poly = vec![0i128; len];
    poly[0] = 1;
    for n in 1..len {
        for _ in 0..24 {
            for i in (n..len).rev() {
                poly[i] -= poly[i - n];
            }
        }
    }
    // shift by q
    let mut out = vec![0i128; len];
    out[1..len].copy_from_slice(&poly[..len - 1]);
    out
}

fn sigma_direct(n: u64, power: u32) -> BigInt {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| BigInt::from(d).pow(power))
        .sum()
}

/// `B_n = n! [t^n] (sum_{i>=0} t^i / (i+1)!)^{-1}`.
fn bernoulli_generating(max: usize) -> Vec<BigRational> {
    let mut fact = vec![BigInt::one()];
    for i in 1..=max + 1 {
        fact.push(&fact[i - 1] * BigInt::from(i));
    }
    let a: Vec<BigRational> = (0..=max)
        .map(|i| BigRational::new(BigInt::one(), fact[i + 1].clone()))
        .collect();
    let mut inv = vec![BigRational::one()];
    for n in 1..=max {
        let mut acc = BigRational::zero();
        for i in 1..=n {
            acc += &a[i] * &inv[n - i];
        }
        inv.push(-acc);
    }
    inv.into_iter()
        .enumerate()
        .map(|(n, c)| c * BigRational::from_integer(fact[n].clone()))
        .collect()
}

#[test]
fn delta_matches_brute_force_product() {
    let len = 30;
    let brute = delta_brute(len);
    let d = delta(len as i64);
    for (n, &c) in brute.iter().enumerate() {
        assert_eq!(d.coefficient(n as i64).unwrap(), int(c as i64), "tau({n})");
    }
    assert_eq!(brute[3], 252);
    assert_eq!(brute[5], 4830);
    assert_eq!(brute[7], -16744);
    assert_eq!(brute[11], 534612);
}

#[test]
fn eisenstein_matches_divisor_sums() {
    for (k, factor) in [(4u32, 240i64), (6, -504), (8, 480), (10, -264), (14, -24)] {
        let e = eisenstein(k as i64, 25).unwrap();
        for n in 1..25u64 {
            let expected = BigRational::from_integer(sigma_direct(n, k - 1) * factor);
            assert_eq!(e.coefficient(n as i64).unwrap(), expected, "E{k} at q^{n}");
        }
    }
    let sum = &eisenstein(4, 5).unwrap() + &eisenstein(6, 5).unwrap();
    assert_eq!(sum.coefficient(1).unwrap(), int(-264));
}

#[test]
fn bernoulli_matches_generating_function() {
    let oracle = bernoulli_generating(40);
    for (k, expected) in oracle.iter().enumerate() {
        assert_eq!(&bernoulli(k as u32), expected, "B_{k}");
    }
}

#[test]
fn delta_inverse_by_back_substitution() {
    // Solve Delta * x = 1 with x = q^-1 (x0 + x1 q + ...).
    let len = 12;
    let brute = delta_brute(len + 1);
    let d: Vec<i128> = brute[1..].to_vec(); // Delta / q
    let mut x = vec![0i128; len];
    x[0] = 1;
    for n in 1..len {
        let s: i128 = (1..=n).map(|i| d[i] * x[n - i]).sum();
        x[n] = -s;
    }
    let inv = delta(len as i64 + 1).pow(-1).unwrap();
    assert_eq!(inv.valuation(), -1);
    for (i, &c) in x.iter().enumerate() {
        assert_eq!(inv.coefficient(i as i64 - 1).unwrap(), int(c as i64));
    }
    let short = delta(3).pow(-1).unwrap();
    assert_eq!(
        short,
        QSeries::from_integers(-1, [1, 24], 1).with_weight(Some(-12))
    );
}

#[test]
fn j_from_product_against_known_head() {
    let j = j_invariant(4);
    let expected = [1i64, 744, 196884, 21493760, 864299970];
    for (i, &c) in expected.iter().enumerate() {
        assert_eq!(j.coefficient(i as i64 - 1).unwrap(), int(c));
    }
}

#[test]
fn g6_is_j_over_e4_by_naive_division() {
    // g6 * E4 = j, solved coefficient by coefficient from j and E4.
    let n = 10;
    let j = j_invariant(n);
    let e4 = eisenstein(4, n + 2).unwrap();
    let mut g: Vec<BigRational> = Vec::new();
    for i in 0..(n + 1) as usize {
        let mut acc = j.coefficient(i as i64 - 1).unwrap();
        for t in 1..=i {
            acc -= e4.coefficient(t as i64).unwrap() * &g[i - t];
        }
        g.push(acc);
    }
    let g6 = g_form(6, n).unwrap();
    for (i, c) in g.iter().enumerate() {
        assert_eq!(&g6.coefficient(i as i64 - 1).unwrap(), c);
    }
    assert_eq!(g[1], int(504));
}

#[test]
fn weight_24_reduced_basis_by_hand() {
    // Clear q^2 from E4^3 Delta using Delta^2.
    let n = 8;
    let e4 = eisenstein(4, n).unwrap();
    let d = delta(n);
    let g1 = e4.pow(3).unwrap().multiply(&d);
    let g2 = d.pow(2).unwrap();
    let f1 = &g1 - &g2.scale(&g1.coefficient(2).unwrap());
    let space = miller_basis(24, n).unwrap();
    assert_eq!(
        space.basis[1].clone().with_weight(None),
        f1.with_weight(None)
    );
    let head: Vec<BigRational> = (0..6)
        .map(|i| space.basis[1].coefficient(i).unwrap())
        .collect();
    assert_eq!(
        head,
        vec![
            int(0),
            int(1),
            int(0),
            int(195660),
            int(12080128),
            int(44656110)
        ]
    );
    assert_eq!(
        space.basis[2],
        d.pow(2).unwrap().truncate(n).with_weight(Some(24))
    );
    assert_eq!(space.basis[0].coefficient(1).unwrap(), int(0));
    assert_eq!(space.basis[0].coefficient(2).unwrap(), int(0));
}

/// Trace and determinant of T_2 on S_24 from the unreduced basis
/// `{E4^3 Delta, Delta^2}`, solving for coordinates by Cramer's rule.
#[test]
fn t2_weight_24_via_monomial_basis() {
    let n = 12;
    let e4 = eisenstein(4, n).unwrap();
    let d = delta(n);
    let u = e4.pow(3).unwrap().multiply(&d);
    let w = d.pow(2).unwrap();
    let c = |f: &QSeries, i: i64| f.coefficient(i).unwrap();
    // Basis matrix B with columns (u, w) read at q^1, q^2.
    let b = [[c(&u, 1), c(&w, 1)], [c(&u, 2), c(&w, 2)]];
    let det_b = &b[0][0] * &b[1][1] - &b[0][1] * &b[1][0];
    let coords = |f: &QSeries| -> [BigRational; 2] {
        let y1 = hecke_coefficient(f, 24, 2, 1).unwrap();
        let y2 = hecke_coefficient(f, 24, 2, 2).unwrap();
        [
            (&y1 * &b[1][1] - &y2 * &b[0][1]) / &det_b,
            (&b[0][0] * &y2 - &b[1][0] * &y1) / &det_b,
        ]
    };
    let tu = coords(&u);
    let tw = coords(&w);
    let trace = &tu[0] + &tw[1];
    let det = &tu[0] * &tw[1] - &tu[1] * &tw[0];
    assert_eq!(trace, int(1080));
    assert_eq!(det, int(-20468736));

    let h = hecke_matrix(24, 2, 5).unwrap();
    assert_eq!(BigRational::from_integer(linalg::trace(&h.matrix)), trace);
    assert_eq!(
        h.charpoly,
        vec![
            BigInt::from(-20468736),
            BigInt::from(-1080),
            BigInt::from(1)
        ]
    );
}

#[test]
fn four_six_rep_exhaustive() {
    for n in 0..=200i64 {
        let brute = (0..=n / 4).rev().find_map(|c1| {
            let rest = n - 4 * c1;
            (rest % 6 == 0).then_some((c1, rest / 6))
        });
        match brute {
            Some(rep) => assert_eq!(four_six_rep(n).unwrap(), rep, "n = {n}"),
            None => assert!(four_six_rep(n).is_err(), "n = {n}"),
        }
    }
}

#[test]
fn part1_exponents_by_search() {
    // c from the defining identity, found by linear search.
    for (p, k, m, b) in [
        (5u64, 26i64, 6i64, 2u32),
        (7, 14, 14, 1),
        (7, 12, 6, 1),
        (5, 4, 4, 1),
    ] {
        let e = solve_part1(p, k, m, Some(b)).unwrap();
        let pb = (p as i64).pow(b);
        let c = (0..10_000)
            .find(|&c| 2 - k == c * (p as i64 - 1) - (m - 2) * pb)
            .unwrap();
        assert_eq!(e.c, c);
        let a = (0..10)
            .find(|&a| k - 2 <= (m - 2) * (p as i64).pow(a))
            .unwrap();
        assert_eq!(e.a, a);
    }
}
