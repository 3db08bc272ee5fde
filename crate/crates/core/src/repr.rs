//! Faithful tropical matrix representations: ψ₁, ψ₂, ψ₃ with closed forms,
//! the rank-reduction maps φ_ij into hypo₃ × hypo₃, the embedding φ_n, and
//! the assembled block representation ψ_n for n ≥ 4.

use thiserror::Error;

use crate::hypo::{element_of, ev, inver, HypoElement, RankedWord};
use crate::semiring::{
    block_j, block_k, block_p, block_q, block_s_pow, block_unit, Matrix, TropMatrix, TropValue,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReprError {
    #[error("word of rank {0} exceeds the representation's rank {1}")]
    RankTooLarge(u32, u32),
    #[error("invalid index pair ({i},{j}) for rank {n}")]
    InvalidIndexPair { i: u32, j: u32, n: u32 },
}

/// An element of hypo₃ × hypo₃ with the swap-and-sharp involution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairElement {
    pub first: HypoElement,
    pub second: HypoElement,
}

impl PairElement {
    pub fn identity() -> PairElement {
        PairElement { first: HypoElement::identity(3), second: HypoElement::identity(3) }
    }

    pub fn mult(&self, other: &PairElement) -> PairElement {
        PairElement {
            first: self.first.mult(&other.first).unwrap(),
            second: self.second.mult(&other.second).unwrap(),
        }
    }

    /// (e₁, e₂)♯ = (e₂♯, e₁♯).
    pub fn sharp(&self) -> PairElement {
        PairElement { first: self.second.sharp(), second: self.first.sharp() }
    }
}

/// I_n = {(i,j) : 1 ≤ i < j ≤ n} in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    n: u32,
    pairs: Vec<(u32, u32)>,
}

impl IndexSet {
    pub fn new(n: u32) -> IndexSet {
        let pairs = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect::<Vec<_>>();
        debug_assert_eq!(pairs.len(), (n * (n - 1) / 2) as usize);
        IndexSet { n, pairs }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn check_rank(w: &RankedWord, max: u32) -> Result<(), ReprError> {
    if w.rank() > max {
        return Err(ReprError::RankTooLarge(w.rank(), max));
    }
    Ok(())
}

/// ψ₁: 1 ↦ PQ; ε ↦ E₂.
pub fn psi1(w: &RankedWord) -> Result<TropMatrix, ReprError> {
    check_rank(w, 1)?;
    let pq = block_p::<TropValue>().mat_mul(&block_q()).unwrap();
    Ok(w.letters().iter().fold(Matrix::identity(2), |m, _| m.mat_mul(&pq).unwrap()))
}

fn psi2_gen(a: u32) -> TropMatrix {
    match a {
        1 => Matrix::block_diag(&[block_s_pow(1), block_j(), block_unit()]),
        2 => Matrix::block_diag(&[block_unit(), block_k(), block_s_pow(1)]),
        _ => unreachable!("rank-2 letter"),
    }
}

/// ψ₂: 1 ↦ diag{s, J, 𝟏}, 2 ↦ diag{𝟏, K, s}; generator products.
pub fn psi2(w: &RankedWord) -> Result<TropMatrix, ReprError> {
    check_rank(w, 2)?;
    Ok(w.letters()
        .iter()
        .fold(Matrix::identity(5), |m, &a| m.mat_mul(&psi2_gen(a)).unwrap()))
}

fn psi3_gen(a: u32) -> TropMatrix {
    let e2 = Matrix::identity(2);
    let e3 = Matrix::identity(3);
    let kj = block_k::<TropValue>().mat_mul(&block_j()).unwrap();
    match a {
        1 => Matrix::block_diag(&[block_p(), block_j(), block_j(), e3, e2]),
        2 => Matrix::block_diag(&[block_q(), block_k(), kj, block_j(), block_p()]),
        3 => Matrix::block_diag(&[e2, e3, block_k(), block_k(), block_q()]),
        _ => unreachable!("rank-3 letter"),
    }
}

/// ψ₃: 1 ↦ diag{P,J,J,E₃,E₂}, 2 ↦ diag{Q,K,KJ,J,P}, 3 ↦ diag{E₂,E₃,K,K,Q}.
pub fn psi3(w: &RankedWord) -> Result<TropMatrix, ReprError> {
    check_rank(w, 3)?;
    Ok(w.letters()
        .iter()
        .fold(Matrix::identity(13), |m, &a| m.mat_mul(&psi3_gen(a)).unwrap()))
}

/// Closed form of ψ₂ computed directly from (con, occ, inver).
pub fn psi2_closed(w: &RankedWord) -> Result<TropMatrix, ReprError> {
    check_rank(w, 2)?;
    let counts = ev(w);
    let occ = |a: u32| counts.get(&a).copied().unwrap_or(0);
    let con: Vec<u32> = counts.keys().copied().collect();
    let m = match con.as_slice() {
        [] => Matrix::identity(5),
        [1] => Matrix::block_diag(&[block_s_pow(occ(1)), block_j(), block_unit()]),
        [2] => Matrix::block_diag(&[block_unit(), block_k(), block_s_pow(occ(2))]),
        [1, 2] => {
            let mid = if inver(w).contains(&(2, 1)) {
                block_k::<TropValue>().mat_mul(&block_j()).unwrap()
            } else {
                block_j::<TropValue>().mat_mul(&block_k()).unwrap()
            };
            Matrix::block_diag(&[block_s_pow(occ(1)), mid, block_s_pow(occ(2))])
        }
        _ => unreachable!("content over {{1,2}}"),
    };
    Ok(m)
}

/// Closed form of ψ₃: diag{Λ₁,…,Λ₅} read off the per-block case tables.
pub fn psi3_closed(w: &RankedWord) -> Result<TropMatrix, ReprError> {
    check_rank(w, 3)?;
    if w.is_empty() {
        return Ok(Matrix::identity(13));
    }
    let counts = ev(w);
    let occ = |a: u32| counts.get(&a).copied().unwrap_or(0);
    let con: Vec<u32> = counts.keys().copied().collect();
    let inv = inver(w);
    let e3 = Matrix::identity(3);
    let j = block_j::<TropValue>();
    let k = block_k::<TropValue>();
    let jk = j.mat_mul(&k).unwrap();
    let kj = k.mat_mul(&j).unwrap();

    // Λ₁ = P^occ(1) Q^occ(2) = diag(s^occ(1), s^occ(2)); Λ₅ likewise shifted.
    let lambda_1 = Matrix::block_diag(&[block_s_pow(occ(1)), block_s_pow(occ(2))]);
    let lambda_5 = Matrix::block_diag(&[block_s_pow(occ(2)), block_s_pow(occ(3))]);
    let lambda_2 = match con.as_slice() {
        [3] => e3.clone(),
        [1] | [1, 3] => j.clone(),
        [2] | [2, 3] => k.clone(),
        [1, 2] | [1, 2, 3] => if inv.contains(&(2, 1)) { kj.clone() } else { jk.clone() },
        _ => unreachable!("content over {{1,2,3}}"),
    };
    let lambda_3 = match con.as_slice() {
        [1] => j.clone(),
        [3] => k.clone(),
        [1, 3] => if inv.contains(&(3, 1)) { kj.clone() } else { jk.clone() },
        _ => kj.clone(), // every remaining case contains 2
    };
    let lambda_4 = match con.as_slice() {
        [1] => e3,
        [2] | [1, 2] => j,
        [3] | [1, 3] => k,
        [2, 3] | [1, 2, 3] => if inv.contains(&(3, 2)) { kj } else { jk },
        _ => unreachable!("content over {{1,2,3}}"),
    };
    Ok(Matrix::block_diag(&[lambda_1, lambda_2, lambda_3, lambda_4, lambda_5]))
}

#[derive(Debug, Clone, Copy)]
enum PhiCase {
    Lambda,
    Theta(u32, u32, u32, u32),
    Kappa(u32, u32, u32, u32),
}

fn phi_case(n: u32, i: u32, j: u32) -> PhiCase {
    // k♯ = n+1−k; the five order types of i, j, i♯, j♯ reduce to three maps.
    let sh = |k: u32| n + 1 - k;
    if i + j == n + 1 {
        PhiCase::Lambda
    } else if 2 * j <= n + 1 {
        // i < j ≤ j♯ < i♯
        PhiCase::Theta(i, j, sh(j), sh(i))
    } else if 2 * i >= n + 1 {
        // j♯ < i♯ ≤ i < j
        PhiCase::Theta(sh(j), sh(i), i, j)
    } else if i + j < n + 1 {
        // i < j♯ < j < i♯
        PhiCase::Kappa(i, sh(j), j, sh(i))
    } else {
        // j♯ < i < i♯ < j
        PhiCase::Kappa(sh(j), i, sh(i), j)
    }
}

fn h3(letters: &[u32]) -> HypoElement {
    element_of(&RankedWord::new(3, letters.to_vec()).unwrap())
}

fn phi_letter(case: PhiCase, k: u32) -> PairElement {
    let side = |letters: &[u32]| h3(letters);
    let (first, second) = match case {
        PhiCase::Lambda => unreachable!("lambda handled by caller"),
        PhiCase::Theta(i1, i2, i3, i4) => {
            let first = if k == i1 {
                side(&[1])
            } else if k == i2 {
                side(&[2])
            } else if i1 < k && k < i2 {
                side(&[2, 1])
            } else {
                side(&[])
            };
            let second = if k == i3 {
                side(&[2])
            } else if k == i4 {
                side(&[3])
            } else if i3 < k && k < i4 {
                side(&[3, 2])
            } else {
                side(&[])
            };
            (first, second)
        }
        PhiCase::Kappa(i1, i2, i3, i4) => {
            let first = if k == i1 {
                side(&[1])
            } else if k == i3 {
                side(&[2])
            } else if i1 < k && k < i3 {
                side(&[2, 1])
            } else {
                side(&[])
            };
            let second = if k == i2 {
                side(&[2])
            } else if k == i4 {
                side(&[3])
            } else if i2 < k && k < i4 {
                side(&[3, 2])
            } else {
                side(&[])
            };
            (first, second)
        }
    };
    PairElement { first, second }
}

/// φ_ij: hypo_n → hypo₃ × hypo₃, the (i,j)-indexed rank reduction.
pub fn phi_ij(w: &RankedWord, i: u32, j: u32) -> Result<PairElement, ReprError> {
    let n = w.rank();
    if n < 4 || i < 1 || i >= j || j > n {
        return Err(ReprError::InvalidIndexPair { i, j, n });
    }
    let case = phi_case(n, i, j);
    let mut acc = PairElement::identity();
    for &k in w.letters() {
        let image = match case {
            PhiCase::Lambda => {
                let l = if k == i {
                    h3(&[1])
                } else if k == j {
                    h3(&[3])
                } else if i < k && k < j {
                    h3(&[3, 1])
                } else {
                    h3(&[])
                };
                PairElement { first: l.clone(), second: l }
            }
            _ => phi_letter(case, k),
        };
        acc = acc.mult(&image);
    }
    Ok(acc)
}

/// φ_n: one PairElement per (i,j) ∈ I_n.
pub fn phi_n(w: &RankedWord) -> Result<Vec<PairElement>, ReprError> {
    IndexSet::new(w.rank())
        .pairs()
        .iter()
        .map(|&(i, j)| phi_ij(w, i, j))
        .collect()
}

fn psi3_elem(e: &HypoElement) -> TropMatrix {
    psi3(e.canon()).expect("canonical rank-3 word")
}

/// ψ_n for n ≥ 4: block diagonal of 2|I_n| ψ₃-blocks, the first components in
/// I_n order followed by the second components in reverse I_n order, so the
/// whole-matrix skew transposition realizes ♯.
pub fn psi_n(w: &RankedWord) -> Result<TropMatrix, ReprError> {
    let n = w.rank();
    if n < 4 {
        return Err(ReprError::InvalidIndexPair { i: 0, j: 0, n });
    }
    let phi = phi_n(w)?;
    let mut blocks: Vec<TropMatrix> = phi.iter().map(|p| psi3_elem(&p.first)).collect();
    blocks.extend(phi.iter().rev().map(|p| psi3_elem(&p.second)));
    Ok(Matrix::block_diag(&blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypo::{equivalent, schutzenberger};
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn rw(rank: u32, text: &str) -> RankedWord {
        RankedWord::parse(rank, text).unwrap()
    }

    fn all_words(rank: u32, max_len: usize) -> Vec<RankedWord> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<u32>| {
                    (1..=rank).map(move |a| {
                        let mut next = w.clone();
                        next.push(a);
                        next
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out.into_iter()
            .map(|letters| RankedWord::new(rank, letters).unwrap())
            .collect()
    }

    /// Matrix equality must coincide with hypoplactic equivalence: the map
    /// matrix ↦ (ev, inver) is well-defined and injective over the sample.
    fn assert_faithful<F>(words: &[RankedWord], image: F)
    where
        F: Fn(&RankedWord) -> TropMatrix,
    {
        let mut by_matrix: HashMap<TropMatrix, HypoElement> = HashMap::new();
        let mut by_elem: HashMap<HypoElement, TropMatrix> = HashMap::new();
        for w in words {
            let m = image(w);
            let e = element_of(w);
            if let Some(prev) = by_matrix.get(&m) {
                assert_eq!(*prev, e, "matrix collision for inequivalent words at {w}");
            }
            if let Some(prev) = by_elem.get(&e) {
                assert_eq!(*prev, m, "equivalent words mapped to different matrices at {w}");
            }
            by_matrix.insert(m.clone(), e.clone());
            by_elem.insert(e, m);
        }
    }

    #[test]
    fn psi1_cases() {
        assert_eq!(psi1(&RankedWord::empty(1)).unwrap(), Matrix::identity(2));
        let s = TropValue::Int(1);
        let mut pq: TropMatrix = Matrix::zeros(2);
        pq.set(0, 0, s);
        pq.set(1, 1, s);
        assert_eq!(psi1(&rw(1, "1")).unwrap(), pq);
        let mut pq2: TropMatrix = Matrix::zeros(2);
        pq2.set(0, 0, TropValue::Int(2));
        pq2.set(1, 1, TropValue::Int(2));
        assert_eq!(psi1(&rw(1, "11")).unwrap(), pq2);
    }

    #[test]
    fn psi2_generators_and_inversion() {
        assert_eq!(psi2(&rw(2, "1")).unwrap(), psi2_gen(1));
        let jk = block_j::<TropValue>().mat_mul(&block_k()).unwrap();
        let kj = block_k::<TropValue>().mat_mul(&block_j()).unwrap();
        let s1 = block_s_pow::<TropValue>(1);
        assert_eq!(
            psi2(&rw(2, "12")).unwrap(),
            Matrix::block_diag(&[s1.clone(), jk, s1.clone()])
        );
        assert_eq!(psi2(&rw(2, "21")).unwrap(), Matrix::block_diag(&[s1.clone(), kj, s1]));
    }

    #[test]
    fn psi2_closed_cases() {
        assert_eq!(psi2_closed(&RankedWord::empty(2)).unwrap(), Matrix::identity(5));
        let jk = block_j::<TropValue>().mat_mul(&block_k()).unwrap();
        assert_eq!(
            psi2_closed(&rw(2, "112")).unwrap(),
            Matrix::block_diag(&[block_s_pow(2), jk, block_s_pow(1)])
        );
    }

    #[test]
    fn psi2_matches_closed_form() {
        for w in all_words(2, 7) {
            assert_eq!(psi2(&w).unwrap(), psi2_closed(&w).unwrap(), "at {w}");
        }
    }

    #[test]
    fn psi2_faithful() {
        assert_faithful(&all_words(2, 7), |w| psi2(w).unwrap());
    }

    #[test]
    fn psi3_generators() {
        let e2: TropMatrix = Matrix::identity(2);
        let e3: TropMatrix = Matrix::identity(3);
        let kj = block_k::<TropValue>().mat_mul(&block_j()).unwrap();
        assert_eq!(
            psi3(&rw(3, "2")).unwrap(),
            Matrix::block_diag(&[block_q(), block_k(), kj, block_j(), block_p()])
        );
        assert_eq!(
            psi3(&rw(3, "3")).unwrap(),
            Matrix::block_diag(&[e2, e3, block_k(), block_k(), block_q()])
        );
        assert_eq!(
            psi3(&rw(3, "1")).unwrap().skew_transpose(),
            psi3(&rw(3, "3")).unwrap()
        );
        assert_eq!(
            psi3(&rw(3, "2")).unwrap().skew_transpose(),
            psi3(&rw(3, "2")).unwrap()
        );
    }

    #[test]
    fn psi3_closed_case_13() {
        // con = {1,3} without a 3-1 inversion: Λ₃ = JK
        let m = psi3_closed(&rw(3, "13")).unwrap();
        let jk = block_j::<TropValue>().mat_mul(&block_k()).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(m.get(5 + r, 5 + c), jk.get(r, c));
            }
        }
    }

    #[test]
    fn psi3_matches_closed_form() {
        for w in all_words(3, 4) {
            assert_eq!(psi3(&w).unwrap(), psi3_closed(&w).unwrap(), "at {w}");
        }
    }

    #[test]
    fn psi3_faithful() {
        assert_faithful(&all_words(3, 4), |w| psi3(w).unwrap());
    }

    #[test]
    fn rank_guards() {
        assert_eq!(psi1(&rw(2, "1")), Err(ReprError::RankTooLarge(2, 1)));
        assert_eq!(psi2(&rw(3, "1")), Err(ReprError::RankTooLarge(3, 2)));
        assert!(psi2(&rw(1, "11")).is_ok());
    }

    #[test]
    fn index_set_shape() {
        let idx = IndexSet::new(4);
        assert_eq!(idx.len(), 6);
        assert_eq!(idx.pairs()[0], (1, 2));
        assert_eq!(idx.pairs()[5], (3, 4));
        assert_eq!(IndexSet::new(5).len(), 10);
    }

    #[test]
    fn phi_case_dispatch_total() {
        for n in 4..=9 {
            for i in 1..n {
                for j in i + 1..=n {
                    // must not panic, and the chosen tuple must be ordered
                    match phi_case(n, i, j) {
                        PhiCase::Lambda => assert_eq!(i + j, n + 1),
                        PhiCase::Theta(i1, i2, i3, i4) => {
                            assert!(i1 < i2 && i2 <= i3 && i3 < i4, "({n},{i},{j})")
                        }
                        PhiCase::Kappa(i1, i2, i3, i4) => {
                            assert!(i1 < i2 && i2 < i3 && i3 < i4, "({n},{i},{j})")
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn phi_letter_images() {
        let pair = |a: &[u32], b: &[u32]| PairElement { first: h3(a), second: h3(b) };
        assert_eq!(phi_ij(&rw(4, "2"), 1, 4).unwrap(), pair(&[3, 1], &[3, 1]));
        assert_eq!(phi_ij(&rw(4, "3"), 1, 2).unwrap(), pair(&[], &[2]));
        assert_eq!(phi_ij(&rw(4, "2"), 1, 3).unwrap(), pair(&[2, 1], &[2]));
        assert_eq!(phi_ij(&RankedWord::empty(4), 2, 3).unwrap(), PairElement::identity());
        assert_eq!(
            phi_ij(&rw(3, "1"), 1, 2),
            Err(ReprError::InvalidIndexPair { i: 1, j: 2, n: 3 })
        );
    }

    #[test]
    fn phi_n_separates() {
        let mut by_vector: HashMap<Vec<PairElement>, HypoElement> = HashMap::new();
        for w in all_words(4, 4) {
            let v = phi_n(&w).unwrap();
            let e = element_of(&w);
            match by_vector.get(&v) {
                Some(prev) => assert_eq!(*prev, e, "phi_n collision at {w}"),
                None => {
                    by_vector.insert(v, e);
                }
            }
        }
        assert_ne!(phi_n(&rw(4, "12")).unwrap()[0], phi_n(&rw(4, "21")).unwrap()[0]);
    }

    #[test]
    fn psi_n_shape_and_sharp() {
        assert_eq!(psi_n(&RankedWord::empty(4)).unwrap(), Matrix::identity(156));
        for w in all_words(4, 3) {
            assert_eq!(
                psi_n(&schutzenberger(&w)).unwrap(),
                psi_n(&w).unwrap().skew_transpose(),
                "at {w}"
            );
        }
    }

    #[test]
    fn psi_n_faithful_short() {
        assert_faithful(&all_words(4, 3), |w| psi_n(w).unwrap());
    }

    proptest! {
        #[test]
        fn psi3_is_homomorphism(
            u in proptest::collection::vec(1u32..=3, 0..6),
            v in proptest::collection::vec(1u32..=3, 0..6),
        ) {
            let u = RankedWord::new(3, u).unwrap();
            let v = RankedWord::new(3, v).unwrap();
            let lhs = psi3(&u.concat(&v).unwrap()).unwrap();
            let rhs = psi3(&u).unwrap().mat_mul(&psi3(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn phi_ij_is_sharp_homomorphism(
            u in proptest::collection::vec(1u32..=5, 0..7),
            v in proptest::collection::vec(1u32..=5, 0..7),
        ) {
            let u = RankedWord::new(5, u).unwrap();
            let v = RankedWord::new(5, v).unwrap();
            for &(i, j) in IndexSet::new(5).pairs() {
                let cat = phi_ij(&u.concat(&v).unwrap(), i, j).unwrap();
                prop_assert_eq!(cat, phi_ij(&u, i, j).unwrap().mult(&phi_ij(&v, i, j).unwrap()));
                let sh = phi_ij(&schutzenberger(&u), i, j).unwrap();
                prop_assert_eq!(sh, phi_ij(&u, i, j).unwrap().sharp());
            }
        }

        #[test]
        fn psi_n_respects_equivalence(
            u in proptest::collection::vec(1u32..=4, 0..5),
            v in proptest::collection::vec(1u32..=4, 0..5),
        ) {
            let u = RankedWord::new(4, u).unwrap();
            let v = RankedWord::new(4, v).unwrap();
            prop_assert_eq!(
                psi_n(&u).unwrap() == psi_n(&v).unwrap(),
                equivalent(&u, &v)
            );
        }
    }
}
