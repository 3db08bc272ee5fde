//! End-to-end acceptance gate. Each test covers one numbered criterion and
//! prints a `[criterion N] PASS` line; runtime budgets are asserted inline.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypoplactic::checker::{
    build_pk, build_qk, chaos, check, find_critical, in_pk, in_qk, is_balanced, isoterm_scan,
    Identity, MonoidTag,
};
use hypoplactic::hypo::{element_of, inver, schutzenberger, tableau_of, RankedWord};
use hypoplactic::models::{build_a01, build_b, build_c, holds_exhaustive};
use hypoplactic::repr::{psi2, psi2_closed, psi3, psi3_closed, psi_n};
use hypoplactic::semiring::TropMatrix;
use hypoplactic::words::{parse_word, InvWord, Symbol};

/// All nonempty words over {1..rank} of length ≤ max_len.
fn all_words(rank: u32, max_len: usize) -> Vec<RankedWord> {
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    let mut out = Vec::new();
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (1..=rank).map(move |a| {
                    let mut n = w.clone();
                    n.push(a);
                    n
                })
            })
            .collect();
        out.extend(layer.iter().map(|w| RankedWord::new(rank, w.clone()).unwrap()));
    }
    out
}

/// Matrix equality must induce a bijection with hypoplactic classes.
fn assert_faithful(words: &[RankedWord], image: impl Fn(&RankedWord) -> TropMatrix) {
    let mut by_class: HashMap<_, TropMatrix> = HashMap::new();
    let mut by_matrix: HashMap<TropMatrix, _> = HashMap::new();
    for w in words {
        let e = element_of(w);
        let m = image(w);
        match by_class.get(&e) {
            Some(prev) => assert_eq!(*prev, m, "class of {w} has two images"),
            None => {
                by_class.insert(e.clone(), m.clone());
            }
        }
        match by_matrix.get(&m) {
            Some(prev) => assert_eq!(*prev, e, "matrix of {w} hit by two classes"),
            None => {
                by_matrix.insert(m, e);
            }
        }
    }
    assert_eq!(by_class.len(), by_matrix.len());
}

fn random_inv_word(rng: &mut ChaCha8Rng, max_len: usize) -> InvWord {
    let len = rng.gen_range(1..=max_len);
    let symbols = (0..len)
        .map(|_| Symbol::new(["x", "y", "z"][rng.gen_range(0..3)], rng.gen_bool(0.5)))
        .collect();
    InvWord::new(symbols)
}

fn random_identity(rng: &mut ChaCha8Rng, max_len: usize) -> Identity {
    Identity::new(random_inv_word(rng, max_len), random_inv_word(rng, max_len)).unwrap()
}

#[test]
fn criterion_01_tableau_fixture() {
    let w = RankedWord::parse(6, "36131512665").unwrap();
    let start = Instant::now();
    let t = tableau_of(&w);
    let elapsed = start.elapsed();
    assert_eq!(t.rows(), &[vec![1, 1, 1, 2], vec![3, 3, 5, 5], vec![6, 6, 6]]);
    assert_eq!(inver(&w), BTreeSet::from([(3, 2), (6, 5)]));
    assert!(elapsed < Duration::from_millis(1), "tableau took {elapsed:?}");
    println!("[criterion 1] PASS");
}

#[test]
fn criterion_02_psi2_faithful() {
    let start = Instant::now();
    let words = all_words(2, 7);
    assert_eq!(words.len(), 254);
    for w in &words {
        assert_eq!(psi2(w).unwrap(), psi2_closed(w).unwrap(), "closed form at {w}");
    }
    assert_faithful(&words, |w| psi2(w).unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("[criterion 2] PASS");
}

#[test]
fn criterion_03_psi3_faithful() {
    let start = Instant::now();
    let words = all_words(3, 5);
    assert_eq!(words.len(), 363);
    for w in &words {
        assert_eq!(psi3(w).unwrap(), psi3_closed(w).unwrap(), "closed form at {w}");
    }
    assert_faithful(&words, |w| psi3(w).unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("[criterion 3] PASS");
}

#[test]
fn criterion_04_psi4() {
    let start = Instant::now();
    let words = all_words(4, 4);
    assert_eq!(words.len(), 340);
    assert_faithful(&words, |w| psi_n(w).unwrap());
    for w in &words {
        assert_eq!(
            psi_n(&schutzenberger(w)).unwrap(),
            psi_n(w).unwrap().skew_transpose(),
            "skew compatibility at {w}"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e4);
    for _ in 0..1000 {
        let u = words.choose(&mut rng).unwrap();
        let v = words.choose(&mut rng).unwrap();
        let uv = u.concat(v).unwrap();
        assert_eq!(
            psi_n(&uv).unwrap(),
            psi_n(u).unwrap().mat_mul(&psi_n(v).unwrap()).unwrap(),
            "homomorphism at {u} · {v}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("[criterion 4] PASS");
}

#[test]
fn criterion_05_model_closures() {
    // the builders themselves verify the unit, associativity and involution
    // axioms exhaustively and assert the closure sizes
    let a01 = build_a01();
    let b = build_b();
    let c = build_c();
    assert_eq!(a01.size(), 5);
    assert_eq!(b.size(), 14);
    assert_eq!(c.size(), 25);
    // presentation relations of B
    let e = |l: &str| b.element(l).unwrap();
    let prod = |labels: &[&str]| {
        labels
            .iter()
            .fold(b.unit(), |acc, l| b.mul(acc, e(l)))
    };
    for (lhs, rhs) in [
        (vec!["a", "a"], vec!["a"]),
        (vec!["b", "b"], vec!["b"]),
        (vec!["c", "c"], vec!["c"]),
        (vec!["a", "b", "a"], vec!["b", "a"]),
        (vec!["b", "a", "b"], vec!["b", "a"]),
        (vec!["a", "c", "a"], vec!["c", "a"]),
        (vec!["c", "a", "c"], vec!["c", "a"]),
        (vec!["b", "c", "b"], vec!["c", "b"]),
        (vec!["c", "b", "c"], vec!["c", "b"]),
        (vec!["a", "c", "b"], vec!["c", "a", "b"]),
        (vec!["b", "a", "c"], vec!["b", "c", "a"]),
        (vec!["b", "c", "a", "b"], vec!["c", "b", "a"]),
    ] {
        assert_eq!(prod(&lhs), prod(&rhs), "{lhs:?} = {rhs:?}");
    }
    println!("[criterion 5] PASS");
}

#[test]
fn criterion_06_checker_oracle_equivalence() {
    let start = Instant::now();
    let a01 = build_a01();
    let b = build_b();
    let c = build_c();
    let mut rng = ChaCha8Rng::seed_from_u64(0x51c6);
    for _ in 0..500 {
        let i = random_identity(&mut rng, 6);
        let in_a01 = holds_exhaustive(&a01, i.lhs(), i.rhs(), 3).unwrap().is_none();
        let in_b = holds_exhaustive(&b, i.lhs(), i.rhs(), 3).unwrap().is_none();
        let in_c = holds_exhaustive(&c, i.lhs(), i.rhs(), 3).unwrap().is_none();
        let balanced = is_balanced(&i);
        assert_eq!(check(&i, MonoidTag::A01).holds, in_a01, "{i} in a01");
        assert_eq!(check(&i, MonoidTag::B).holds, in_b, "{i} in B");
        assert_eq!(check(&i, MonoidTag::C).holds, in_c, "{i} in C");
        assert_eq!(check(&i, MonoidTag::Hypo2).holds, balanced && in_a01, "{i} in hypo2");
        assert_eq!(check(&i, MonoidTag::Hypo3).holds, balanced && in_b, "{i} in hypo3");
        assert_eq!(check(&i, MonoidTag::HypoN).holds, balanced && in_c, "{i} in hypoN");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!("[criterion 6] PASS");
}

#[test]
fn criterion_07_basis_fixtures() {
    let e1 = Identity::parse("x z x t x ≈ x z t x").unwrap();
    let e2 = Identity::parse("x y z x t y ≈ y x z x t y").unwrap();
    let e3 = Identity::parse("x z y t x y ≈ x z y t y x").unwrap();
    let e4 = Identity::parse("x z x y t x ≈ x z y x t x").unwrap();
    for i in [&e1, &e2, &e3] {
        assert!(check(i, MonoidTag::C).holds, "{i} in C");
    }
    for i in [&e2, &e3, &e4] {
        assert!(check(i, MonoidTag::HypoN).holds, "{i} in hypoN");
    }
    let v = check(&e1, MonoidTag::HypoN);
    assert!(!v.holds);
    assert_eq!(v.failed_condition.unwrap().clause, "(i)");

    for k in 2..=4 {
        let p = build_pk(k).unwrap();
        let q = build_qk(k).unwrap();
        assert!(in_pk(&p, k).unwrap());
        assert!(in_qk(&q, k).unwrap());
        let i = Identity::new(p, q).unwrap();
        assert!(check(&i, MonoidTag::Hypo3).holds, "p{k} ≈ q{k} in hypo3");
    }

    for text in ["x x* y y*", "x y y* x*"] {
        let w = parse_word(text).unwrap();
        for tag in [MonoidTag::B, MonoidTag::C, MonoidTag::Hypo3, MonoidTag::HypoN] {
            assert_eq!(isoterm_scan(&w, tag).unwrap(), None, "{text} under {tag}");
        }
        let witness = isoterm_scan(&w, MonoidTag::Hypo2).unwrap().expect("hypo2 witness");
        let i = Identity::new(w, witness).unwrap();
        assert!(check(&i, MonoidTag::Hypo2).holds);
    }
    println!("[criterion 7] PASS");
}

#[test]
fn criterion_08_implication_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc8a1);
    for _ in 0..1000 {
        let i = random_identity(&mut rng, 6);
        let holds = |tag| check(&i, tag).holds;
        if holds(MonoidTag::HypoN) {
            assert!(holds(MonoidTag::Hypo3), "{i}");
        }
        if holds(MonoidTag::Hypo3) {
            assert!(holds(MonoidTag::Hypo2), "{i}");
        }
        if holds(MonoidTag::Hypo2) {
            assert!(holds(MonoidTag::A01), "{i}");
        }
        if holds(MonoidTag::C) {
            assert!(holds(MonoidTag::B), "{i}");
        }
        if holds(MonoidTag::B) {
            assert!(holds(MonoidTag::A01), "{i}");
        }
    }
    println!("[criterion 8] PASS");
}

#[test]
fn criterion_09_long_identity_performance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x95ed);
    let alphabet: Vec<String> = (b'a'..=b'z').map(|c| (c as char).to_string()).collect();
    let lhs: Vec<Symbol> = (0..5000)
        .map(|_| Symbol::new(&alphabet[rng.gen_range(0..26)], rng.gen_bool(0.5)))
        .collect();
    let mut rhs = lhs.clone();
    rhs.shuffle(&mut rng);
    let i = Identity::new(InvWord::new(lhs), InvWord::new(rhs)).unwrap();
    assert!(is_balanced(&i));
    let start = Instant::now();
    let _ = check(&i, MonoidTag::HypoN);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("[criterion 9] PASS");
}

#[test]
fn criterion_10_critical_pair_guarantee() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x54c1);
    for _ in 0..500 {
        let u = random_inv_word(&mut rng, 8);
        let mut shuffled = u.symbols().to_vec();
        shuffled.shuffle(&mut rng);
        let i = Identity::new(u, InvWord::new(shuffled)).unwrap();
        let has_chaos = !chaos(&i).unwrap().is_empty();
        match find_critical(&i).unwrap() {
            Some(_) => assert!(has_chaos, "{i}"),
            None => assert!(!has_chaos, "{i}"),
        }
    }
    println!("[criterion 10] PASS");
}
