use hiccup::catalog::load_catalog;
use hiccup::formula::parse_beatty;
use hiccup::interval::Interval;
use hiccup::morphism::Morphism;
use hiccup::sequence::{characteristic_word, generate_hiccup};
use hiccup::sturmian::{
    apply_transformation, beatty_from_mechanical, compose, hiccup_beatty, mechanical_word,
    perron_density, sturmian_decomposition, transformation_fixed_point, Anchor, BeattyParams,
    Generator, MechanicalParams, Rounding,
};
use hiccup::verify::beatty_inapplicable;
use hiccup::{HiccupParams, QuadraticNumber};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use Generator::{E, L, R};

fn m(s: &str) -> Morphism {
    s.parse().unwrap()
}

fn p(j: u64, x: u64, y: u64, z: u64) -> HiccupParams {
    HiccupParams::new(j, x, y, z)
}

fn q(p: i64, s: i64, r: i64, d: u64) -> QuadraticNumber {
    QuadraticNumber::new(p, s, r, d)
}

fn phi() -> QuadraticNumber {
    q(1, 1, 2, 5)
}

/// Catalog entries whose Beatty form is derived.
fn sturmian_entries() -> Vec<HiccupParams> {
    load_catalog()
        .iter()
        .map(|e| e.params)
        .filter(|params| beatty_inapplicable(params).is_none())
        .collect()
}

#[test]
fn generators() {
    assert_eq!(compose(&[L, E]), m("0->0, 1->01"));
    assert_eq!(compose(&[E, R, E]), m("0->1, 1->01"));
    assert_eq!(compose(&[E, E]), m("0->0, 1->1"));
    assert_eq!(compose(&[R, R]), m("0->010, 1->10"));
    let w: Vec<char> = "0110100".chars().collect();
    assert_eq!(E.morphism().apply(&E.morphism().apply(&w).unwrap()).unwrap(), w);
}

#[test]
fn decompositions() {
    let d = sturmian_decomposition(&p(0, 2, 3, 2)).unwrap();
    let g = m("0->0, 1->01");
    let h = m("0->1, 1->01");
    assert_eq!(d.morphism(), g.compose(&h).unwrap());
    assert_eq!(d.to_string(), "G H (fixed point from 0)");

    let d = sturmian_decomposition(&p(0, 1, 2, 3)).unwrap();
    assert_eq!(d.morphism(), m("0->010, 1->10"));
    assert_eq!(d.anchor, Anchor::Seed('1'));

    assert!(sturmian_decomposition(&p(0, 1, 4, 2)).is_err());
    assert!(sturmian_decomposition(&p(0, 4, 4, 3)).is_err());
}

#[test]
fn decomposition_matches_hiccup_word() {
    for params in sturmian_entries() {
        let d = sturmian_decomposition(&params).unwrap();
        let seq = generate_hiccup(&d.core, 2001).unwrap();
        let want = characteristic_word(&seq, 2000).unwrap();
        let w = match d.anchor {
            Anchor::Seed(c) => {
                let fp = hiccup::morphism::fixed_point(&d.morphism(), &c.to_string(), 2000).unwrap();
                fp.iter().map(|c| (*c == '1') as u8).collect::<Vec<_>>()
            }
            Anchor::Prefixed(_) => continue,
        };
        assert_eq!(w, want.0, "{params}");
    }
}

#[test]
fn golden_transformation_fixed_point() {
    let alpha = q(3, -1, 2, 5);
    let beta = QuadraticNumber::one() - &alpha;
    let (a2, b2) = apply_transformation(&[R, R], &alpha, &beta);
    assert_eq!(a2, alpha);
    assert_eq!(b2, beta);
    assert_eq!(perron_density(&compose(&[R, R])).unwrap(), alpha);

    let up = mechanical_word(
        &MechanicalParams { alpha: alpha.clone(), beta: beta.clone(), rounding: Rounding::Ceil },
        6,
    );
    let down = mechanical_word(&MechanicalParams { alpha, beta, rounding: Rounding::Floor }, 6);
    assert_eq!(up[0], 0);
    assert_eq!(down[0], 1);
}

#[test]
fn fixed_points_are_exact() {
    for params in sturmian_entries() {
        let d = sturmian_decomposition(&params).unwrap();
        let mp = transformation_fixed_point(&d).unwrap();
        let (a, rho) = apply_transformation(&d.generators(), &mp.alpha, &mp.beta);
        assert_eq!(a, mp.alpha, "{params}");
        // A prefixed word w with s(w) = c w maps to the intercept of c w.
        let shifted = match d.anchor {
            Anchor::Seed(_) => rho.clone(),
            Anchor::Prefixed(_) => &rho + &mp.alpha,
        };
        let diff = &shifted - &mp.beta;
        assert!(diff.is_integer(), "{params}: {rho} vs {}", mp.beta);
    }
}

#[test]
fn not_primitive_is_rejected() {
    assert!(perron_density(&compose(&[E])).is_err());
    assert!(perron_density(&m("0->001, 1->1")).is_err());
}

#[test]
fn mechanical_word_telescopes() {
    let mp = MechanicalParams {
        alpha: q(-1, 1, 1, 2),
        beta: QuadraticNumber::zero(),
        rounding: Rounding::Floor,
    };
    let w = mechanical_word(&mp, 1000);
    for n in [1usize, 10, 999] {
        let sum: u64 = w[..n].iter().map(|&b| b as u64).sum();
        let want = (&mp.alpha * n as i64).floor();
        assert_eq!(BigInt::from(sum), want);
    }
}

#[test]
fn beatty_examples() {
    let wythoff = BeattyParams::new(phi(), QuadraticNumber::zero(), Rounding::Floor);
    assert_eq!(wythoff.terms(1, 5), [1, 3, 4, 6, 8]);

    let f = hiccup_beatty(&p(1, 1, 3, 2)).unwrap();
    assert_eq!(f.beatty.render(), "floor((1 + sqrt(2))*n - sqrt(2)/2)");
    assert_eq!(f.beatty.terms(1, 3), [1, 4, 6]);

    let stated = parse_beatty("ceil((1 + sqrt(2))*(n - 1) + 1 - sqrt(2)/2)").unwrap();
    assert_eq!(stated.term(1), BigInt::from(1));
    let derived = hiccup_beatty(&p(0, 1, 3, 2)).unwrap().beatty;
    assert_eq!(stated.terms(1, 10_000), derived.terms(1, 10_000));

    let stated = parse_beatty("ceil((n - 1)*(3 + sqrt(5))/2 + 1)").unwrap();
    let derived = hiccup_beatty(&p(0, 1, 2, 3)).unwrap().beatty;
    assert_eq!(stated.terms(1, 10_000), derived.terms(1, 10_000));
}

#[test]
fn beatty_from_mechanical_roundings() {
    let alpha = q(3, -1, 2, 5);
    let beta = QuadraticNumber::one() - &alpha;
    let up = MechanicalParams { alpha: alpha.clone(), beta: beta.clone(), rounding: Rounding::Ceil };
    let bp = beatty_from_mechanical(&up).unwrap();
    assert_eq!(bp.rounding(), Rounding::Floor);
    assert_eq!(bp.slope(), &(QuadraticNumber::one() / &alpha));
    let down = MechanicalParams { alpha, beta, rounding: Rounding::Floor };
    assert_eq!(beatty_from_mechanical(&down).unwrap().rounding(), Rounding::Ceil);
    let bad = MechanicalParams { beta: QuadraticNumber::integer(2), ..up };
    assert!(beatty_from_mechanical(&bad).is_err());
}

#[test]
fn four_way_equivalence() {
    for params in sturmian_entries() {
        let a = generate_hiccup(&params, 10_000).unwrap();
        let hm = hiccup::morphism::hiccup_morphism(&params).unwrap();
        assert_eq!(hm.terms(10_000).unwrap(), a, "{params}");
        let f = hiccup_beatty(&params).unwrap();
        let from = f.first_index;
        let got = f.beatty.terms(from as i64, 10_000 - from + 1);
        assert_eq!(&a.terms()[from - 1..], &got[..], "{params}");
    }
}

#[test]
fn duality() {
    let n = 10_000;
    for params in sturmian_entries() {
        let mp = hiccup_beatty(&params).unwrap().mechanical;
        let word = mechanical_word(&mp, n);
        let ones: Vec<i64> = word
            .iter()
            .enumerate()
            .filter(|(_, b)| **b == 1)
            .map(|(i, _)| i as i64 + 1)
            .collect();
        let bp = beatty_from_mechanical(&mp).unwrap();
        let beatty: Vec<i64> = (1..)
            .map(|k| bp.terms(k, 1)[0])
            .take_while(|v| *v <= n as i64)
            .collect();
        assert_eq!(ones, beatty, "{params}");
    }
}

#[test]
fn density() {
    let n = 100_000;
    for params in sturmian_entries() {
        let d = sturmian_decomposition(&params).unwrap();
        let alpha = perron_density(&d.morphism()).unwrap().to_f64();
        let seq = generate_hiccup(&d.core, n).unwrap();
        let w = characteristic_word(&seq, n).unwrap();
        let count = w.0.iter().filter(|b| **b == 1).count() as f64;
        assert!((count / n as f64 - alpha).abs() < 2.0 / n as f64, "{params}");
    }
}

#[test]
fn formula_round_trip() {
    for params in sturmian_entries() {
        let bp = hiccup_beatty(&params).unwrap().beatty;
        assert_eq!(parse_beatty(&bp.render()).unwrap(), bp, "{}", bp.render());
    }
    let compact = parse_beatty("floor((1+sqrt(2))*n - sqrt(2)/2)").unwrap();
    assert_eq!(compact, hiccup_beatty(&p(1, 1, 3, 2)).unwrap().beatty);
}

fn interval_term(bp: &BeattyParams, n: i64, bits: u32) -> Option<BigInt> {
    let slope = Interval::from_quadratic(bp.slope(), bits).mul_int(&BigInt::from(n));
    let x = &slope + &Interval::from_quadratic(bp.intercept(), bits);
    match bp.rounding() {
        Rounding::Floor => x.floor(),
        Rounding::Ceil => (-&x).floor().map(|v| -v),
    }
}

#[test]
fn exact_floor_matches_interval_evaluation() {
    let mut forms: Vec<BeattyParams> = sturmian_entries()
        .iter()
        .map(|params| hiccup_beatty(params).unwrap().beatty)
        .collect();
    for e in load_catalog() {
        if let Some(f) = e.stated_formula {
            forms.push(parse_beatty(f).unwrap());
        }
    }
    forms.push(BeattyParams::new(phi(), QuadraticNumber::zero(), Rounding::Floor));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..1_000_000u32 {
        let bp = &forms[i as usize % forms.len()];
        let n: i64 = if i % 2 == 0 {
            rng.gen_range(1..=1_000_000)
        } else {
            rng.gen_range(1..=1_000_000_000_000)
        };
        let enclosed = interval_term(bp, n, 200).expect("argument is never within 2^-190 of an integer");
        assert_eq!(bp.term(n), enclosed, "{} at n = {n}", bp.render());
    }
}
