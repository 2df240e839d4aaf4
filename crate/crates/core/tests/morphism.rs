use hiccup::morphism::{
    cyclic_shift, drop_special_letter, fixed_point, hiccup_morphism, hiccup_morphism_with,
    ones_positions, pure_morphism, Coding, Construction, Morphism, Preference,
};
use hiccup::sequence::generate_hiccup;
use hiccup::{Error, HiccupParams};
use proptest::prelude::*;

fn m(s: &str) -> Morphism {
    s.parse().unwrap()
}

fn word(s: &str) -> Vec<char> {
    s.chars().collect()
}

fn text(w: &[char]) -> String {
    w.iter().collect()
}

fn p(j: u64, x: u64, y: u64, z: u64) -> HiccupParams {
    HiccupParams::new(j, x, y, z)
}

#[test]
fn apply_examples() {
    let s = m("0->10, 1->100");
    assert_eq!(text(&s.apply(&word("10")).unwrap()), "10010");
    assert_eq!(text(&m("0->010, 1->10").apply(&word("0")).unwrap()), "010");
    assert!(s.apply(&[]).unwrap().is_empty());
    assert!(s.apply(&word("1b")).is_err());
}

#[test]
fn fixed_point_examples() {
    let s = m("0->10, 1->100");
    assert_eq!(text(&fixed_point(&s, "1", 10).unwrap()), "1001010100");
    let omega = include_str!("../fixtures/omega.txt").lines().last().unwrap();
    assert_eq!(text(&fixed_point(&m("0->10, 1->1000"), "1", 22).unwrap()), omega);
    assert_eq!(
        ones_positions(&m("0->10, 1->1000"), &Coding::identity(), "1", 22).unwrap(),
        [1, 5, 7, 9, 11, 15, 17, 21]
    );
}

#[test]
fn two_letter_seed() {
    let s = m("0->001, 1->1");
    let pos = ones_positions(&s, &Coding::identity(), "10", 20_000).unwrap();
    assert_eq!(&pos[..5], [1, 4, 7, 8, 11]);
    let a = generate_hiccup(&p(0, 1, 1, 3), pos.len()).unwrap();
    assert_eq!(pos, a.terms());
}

#[test]
fn not_prolongable() {
    assert!(matches!(
        fixed_point(&m("0->10, 1->010"), "0", 10),
        Err(Error::NotProlongable(_))
    ));
}

#[test]
fn hiccup_morphism_examples() {
    let hm = hiccup_morphism(&p(0, 1, 3, 4)).unwrap();
    assert_eq!(hm.morphism, m("0->0100, 1->100"));
    assert_eq!(hm.seed, "10");

    let lit = hiccup_morphism_with(&p(0, 2, 4, 2), Preference::Literal).unwrap();
    assert_eq!(lit.morphism, m("b->b10, 0->10, 1->0010"));
    assert_eq!(lit.construction, Construction::LargeStep);
    let pure = hiccup_morphism_with(&p(0, 2, 4, 2), Preference::Pure).unwrap();
    assert_eq!(pure.morphism.to_string(), "0->01, 1->0001");
    assert!(pure.is_pure());

    assert_eq!(hiccup_morphism(&p(1, 1, 3, 2)).unwrap().morphism, m("0->10, 1->100"));
    assert_eq!(hiccup_morphism(&p(1, 1, 2, 1)).unwrap().morphism, m("0->1, 1->10"));
}

#[test]
fn hiccup_morphism_errors() {
    assert!(matches!(hiccup_morphism(&p(2, 1, 3, 2)), Err(Error::ReduceFirst(2))));
    assert!(hiccup_morphism(&p(0, 1, 5, 1)).is_err());
    assert!(matches!(hiccup_morphism(&p(0, 1, 3, 3)), Err(Error::InvalidParams(_))));
}

#[test]
fn zero_start_uses_prepended_letter() {
    let hm = hiccup_morphism_with(&p(0, 0, 4, 2), Preference::Literal).unwrap();
    assert_eq!(hm.construction, Construction::Prepended);
    assert_eq!(hm.first_index, 2);
    let a = generate_hiccup(&p(0, 0, 4, 2), 5000).unwrap();
    assert_eq!(hm.terms(5000).unwrap(), a);
}

#[test]
fn cyclic_shift_examples() {
    let lit = m("b->b10, 0->10, 1->0010");
    let once = cyclic_shift(&lit).unwrap();
    assert_eq!(once, m("b->b1, 0->01, 1->0001"));
    let (dropped, into) = drop_special_letter(&once, &Coding::identity().with('b', '0')).unwrap();
    assert_eq!(into, '0');
    assert_eq!(dropped, m("0->01, 1->0001"));

    let rotated = cyclic_shift(&m("0->0100, 1->100")).unwrap();
    assert_eq!(rotated, m("0->0010, 1->010"));
    assert!(cyclic_shift(&m("0->01, 1->10")).is_err());
}

fn factors(w: &[char], k: usize) -> std::collections::BTreeSet<String> {
    w.windows(k).map(|f| f.iter().collect()).collect()
}

#[test]
fn cyclic_shift_preserves_language() {
    let s = m("0->0100, 1->100");
    let r = cyclic_shift(&s).unwrap();
    let a = fixed_point(&s, "10", 10_000).unwrap();
    let b = fixed_point(&r, "0", 10_000).unwrap();
    for k in 1..=12 {
        let (fa, fb) = (factors(&a[..9000], k), factors(&b[..9000], k));
        assert_eq!(fa, fb, "length {k}");
    }
    // The rotated word is the pure (0,3,3,4) word.
    let pos = ones_positions(&r, &Coding::identity(), "0", 10_000).unwrap();
    assert_eq!(pos, generate_hiccup(&p(0, 3, 3, 4), pos.len()).unwrap().terms());
    assert_eq!(Some(r), pure_morphism(&p(0, 3, 3, 4)));
}

#[test]
fn rotating_out_the_start_letter_keeps_the_sequence() {
    let lit = hiccup_morphism_with(&p(0, 2, 4, 2), Preference::Literal).unwrap();
    let (pure, _) = drop_special_letter(&cyclic_shift(&lit.morphism).unwrap(), &lit.coding).unwrap();
    let want = lit.terms(5000).unwrap();
    let len = *want.terms().last().unwrap() as usize;
    let got = ones_positions(&pure, &Coding::identity(), "0", len).unwrap();
    assert_eq!(got, want.terms());
}

#[test]
fn adjacency_examples() {
    assert_eq!(m("0->0100, 1->100").adjacency_matrix(), [[3, 2], [1, 1]]);
    assert_eq!(m("0->1, 1->10").adjacency_matrix(), [[0, 1], [1, 1]]);
    let lit = m("b->b10, 0->10, 1->0010");
    assert_eq!(lit.adjacency_on(&['0', '1']), [[1, 3], [1, 1]]);
}

#[test]
fn primitivity() {
    assert!(hiccup_morphism(&p(0, 1, 3, 2)).unwrap().morphism.is_primitive());
    assert!(!m("0->001, 1->1").is_primitive());
    assert!(m("0->01, 1->10").is_primitive());
    assert!(m("0->1, 1->10").is_primitive());
}

fn swept() -> impl Iterator<Item = HiccupParams> {
    (0..=1).flat_map(|j| {
        (0..=5).flat_map(move |x| {
            (1..=6).flat_map(move |y| (1..=6).map(move |z| p(j, x, y, z)))
        })
    })
    .filter(|q| q.validate().is_ok() && !q.is_degenerate())
}

#[test]
fn morphic_equivalence_sweep() {
    let mut checked = 0;
    for params in swept() {
        let a = generate_hiccup(&params, 10_000).unwrap();
        for pref in [Preference::Pure, Preference::Literal] {
            let hm = hiccup_morphism_with(&params, pref).unwrap();
            assert_eq!(hm.terms(10_000).unwrap(), a, "{params} {pref:?}: {hm}");
            let w = fixed_point(&hm.morphism, &hm.seed, 2000).unwrap();
            for special in w.iter().skip(1).filter(|c| !matches!(c, '0' | '1')) {
                assert!(
                    hm.construction == Construction::Prepended && w[1] == *special,
                    "{params}: {special} inside the fixed point"
                );
            }
            checked += 1;
        }
    }
    assert!(checked > 300, "{checked}");
}

#[test]
fn purity() {
    for params in swept().filter(|q| q.j == 0 && q.x >= 1) {
        let HiccupParams { x, y, z, .. } = params;
        let hm = hiccup_morphism(&params).unwrap();
        let pure_window = x >= 2 && x <= z && x + y >= z + 1;
        if pure_window || (x == 1 && y < z) {
            assert!(hm.is_pure(), "{params}: {hm}");
        }
        if pure_window {
            assert_eq!(Some(hm.morphism), pure_morphism(&params));
        }
    }
}

#[test]
fn adjacency_invariant() {
    for params in swept().filter(|q| q.j == 0 && q.x >= 1) {
        let HiccupParams { y, z, .. } = params;
        let hm = hiccup_morphism_with(&params, Preference::Literal).unwrap();
        assert_eq!(
            hm.morphism.adjacency_on(&['0', '1']),
            [[z - 1, y - 1], [1, 1]],
            "{params}: {}",
            hm.morphism
        );
        assert_eq!(hm.morphism.is_primitive(), y > 1, "{params}");
    }
}

#[test]
fn composition_is_substitution_of_images() {
    let f = m("0->01, 1->0");
    let g = m("0->1, 1->0");
    let fg = f.compose(&g).unwrap();
    let w = word("0110");
    assert_eq!(fg.apply(&w).unwrap(), f.apply(&g.apply(&w).unwrap()).unwrap());
}

fn morphism_strategy() -> impl Strategy<Value = Morphism> {
    ("0[01]{0,4}", "[01]{1,5}").prop_map(|(a, b)| m(&format!("0->{a}, 1->{b}")))
}

proptest! {
    #[test]
    fn display_parse_round_trip(s in morphism_strategy()) {
        prop_assert_eq!(s.to_string().parse::<Morphism>().unwrap(), s);
    }

    #[test]
    fn fixed_points_are_fixed(s in morphism_strategy(), n in 1usize..300) {
        prop_assume!(s.image('0').unwrap().len() > 1);
        let w = fixed_point(&s, "0", n).unwrap();
        let image = s.apply(&w).unwrap();
        prop_assert_eq!(&image[..n], &w[..]);
    }
}
