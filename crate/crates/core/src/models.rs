//! Finite involution monoids A₀¹, B and C as explicit tables built by
//! boolean matrix closure, the infinite commutative model A, word evaluation
//! and the brute-force identity oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::semiring::{block_j, block_k, BoolMatrix, Matrix};
use crate::words::{analyze, InvWord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("variable {0} is not assigned")]
    Unassigned(String),
    #[error("identity has {0} base variables, oracle cap is {1}")]
    TooManyVariables(usize, usize),
}

/// A finite involution monoid as explicit tables. All structural axioms are
/// verified exhaustively when the tables are built.
#[derive(Debug, Clone)]
pub struct FiniteInvMonoid {
    name: String,
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    unit: usize,
    generators: BTreeMap<String, usize>,
}

/// Serialized table form.
#[derive(Serialize)]
pub struct ModelDump<'a> {
    pub labels: &'a [String],
    pub mul: &'a [Vec<usize>],
    pub inv: &'a [usize],
    pub unit: usize,
}

impl FiniteInvMonoid {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn generators(&self) -> &BTreeMap<String, usize> {
        &self.generators
    }

    pub fn dump(&self) -> ModelDump<'_> {
        ModelDump { labels: &self.labels, mul: &self.mul, inv: &self.inv, unit: self.unit }
    }

    /// Build from named boolean generator matrices: BFS closure from the
    /// identity, labels being the shortest (then lexicographically least)
    /// generator word reaching each element, involution by skew transposition.
    fn closure(name: &str, dim: usize, gens: &[(&str, BoolMatrix)]) -> FiniteInvMonoid {
        let unit_matrix: BoolMatrix = Matrix::identity(dim);
        let mut matrices = vec![unit_matrix.clone()];
        let mut labels = vec!["1".to_string()];
        let mut index: HashMap<BoolMatrix, usize> = HashMap::from([(unit_matrix, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (gname, g) in gens {
                let m = matrices[e].mat_mul(g).unwrap();
                if !index.contains_key(&m) {
                    let label = if e == 0 {
                        gname.to_string()
                    } else {
                        format!("{}{}", labels[e], gname)
                    };
                    index.insert(m.clone(), matrices.len());
                    queue.push_back(matrices.len());
                    matrices.push(m);
                    labels.push(label);
                }
            }
        }

        let size = matrices.len();
        let mul: Vec<Vec<usize>> = (0..size)
            .map(|a| {
                (0..size)
                    .map(|b| index[&matrices[a].mat_mul(&matrices[b]).unwrap()])
                    .collect()
            })
            .collect();
        let inv: Vec<usize> = (0..size)
            .map(|a| index[&matrices[a].skew_transpose()])
            .collect();
        let generators = gens
            .iter()
            .map(|(gname, g)| (gname.to_string(), index[g]))
            .collect();
        let m = FiniteInvMonoid { name: name.to_string(), labels, mul, inv, unit: 0, generators };
        m.verify_axioms();
        m
    }

    fn verify_axioms(&self) {
        let n = self.size();
        for a in 0..n {
            assert_eq!(self.mul(self.unit, a), a, "left unit law");
            assert_eq!(self.mul(a, self.unit), a, "right unit law");
            assert_eq!(self.inv(self.inv(a)), a, "involution is an involution");
            for b in 0..n {
                assert_eq!(
                    self.inv(self.mul(a, b)),
                    self.mul(self.inv(b), self.inv(a)),
                    "involution anti-automorphism"
                );
                for c in 0..n {
                    assert_eq!(
                        self.mul(self.mul(a, b), c),
                        self.mul(a, self.mul(b, c)),
                        "associativity"
                    );
                }
            }
        }
    }

    /// Direct product with componentwise multiplication and the twisted
    /// involution (x, y)* = (y*, x*).
    fn twisted_square(name: &str, base: &FiniteInvMonoid) -> FiniteInvMonoid {
        let n = base.size();
        let id = |x: usize, y: usize| x * n + y;
        let labels = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", base.label(x), base.label(y)))
            .collect();
        let mul = (0..n * n)
            .map(|p| {
                (0..n * n)
                    .map(|q| id(base.mul(p / n, q / n), base.mul(p % n, q % n)))
                    .collect()
            })
            .collect();
        let inv = (0..n * n)
            .map(|p| id(base.inv(p % n), base.inv(p / n)))
            .collect();
        let generators = base
            .generators()
            .iter()
            .flat_map(|(g, &e)| {
                [
                    (format!("({},1)", g), id(e, base.unit())),
                    (format!("(1,{})", g), id(base.unit(), e)),
                ]
            })
            .collect();
        let m = FiniteInvMonoid {
            name: name.to_string(),
            labels,
            mul,
            inv,
            unit: id(base.unit(), base.unit()),
            generators,
        };
        m.verify_axioms();
        m
    }
}

/// A₀¹ = {1, a, b, ab, ba}: boolean closure of {J, K} under skew transposition.
pub fn build_a01() -> FiniteInvMonoid {
    let m = FiniteInvMonoid::closure("a01", 3, &[("a", block_j()), ("b", block_k())]);
    assert_eq!(m.size(), 5, "A01 closure size");
    m
}

/// B, the 14-element quotient: closure of diag{J,J,E₃}, diag{K,KJ,J},
/// diag{E₃,K,K}.
pub fn build_b() -> FiniteInvMonoid {
    let e3: BoolMatrix = Matrix::identity(3);
    let j = block_j();
    let k = block_k();
    let kj = k.mat_mul(&j).unwrap();
    let gens = [
        ("a", Matrix::block_diag(&[j.clone(), j.clone(), e3.clone()])),
        ("b", Matrix::block_diag(&[k.clone(), kj, j])),
        ("c", Matrix::block_diag(&[e3, k.clone(), k])),
    ];
    let m = FiniteInvMonoid::closure("b", 9, &gens);
    assert_eq!(m.size(), 14, "B closure size");
    m
}

/// C = A₀¹ × A₀¹ with the involution (x, y)* = (y*, x*); 25 elements.
pub fn build_c() -> FiniteInvMonoid {
    let m = FiniteInvMonoid::twisted_square("c", &build_a01());
    assert_eq!(m.size(), 25, "C size");
    m
}

/// Evaluate a word under a substitution; starred symbols evaluate through the
/// involution.
pub fn eval_word(
    m: &FiniteInvMonoid,
    w: &InvWord,
    assign: &HashMap<String, usize>,
) -> Result<usize, ModelError> {
    let mut acc = m.unit();
    for s in w.symbols() {
        let e = *assign
            .get(s.base())
            .ok_or_else(|| ModelError::Unassigned(s.base().to_string()))?;
        let e = if s.is_starred() { m.inv(e) } else { e };
        acc = m.mul(acc, e);
    }
    Ok(acc)
}

pub const DEFAULT_MAX_VARS: usize = 3;

/// Brute-force oracle: try every assignment of monoid elements to the base
/// variables; returns the first refuting assignment, or None when the
/// identity holds.
pub fn holds_exhaustive(
    m: &FiniteInvMonoid,
    lhs: &InvWord,
    rhs: &InvWord,
    max_vars: usize,
) -> Result<Option<HashMap<String, usize>>, ModelError> {
    let vars: BTreeSet<String> = lhs
        .symbols()
        .iter()
        .chain(rhs.symbols())
        .map(|s| s.base().to_string())
        .collect();
    let vars: Vec<String> = vars.into_iter().collect();
    if vars.len() > max_vars {
        return Err(ModelError::TooManyVariables(vars.len(), max_vars));
    }
    let mut counters = vec![0usize; vars.len()];
    loop {
        let assign: HashMap<String, usize> = vars
            .iter()
            .cloned()
            .zip(counters.iter().copied())
            .collect();
        if eval_word(m, lhs, &assign)? != eval_word(m, rhs, &assign)? {
            return Ok(Some(assign));
        }
        // odometer step over size^k assignments
        let mut pos = 0;
        loop {
            if pos == counters.len() {
                return Ok(None);
            }
            counters[pos] += 1;
            if counters[pos] < m.size() {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}

/// aᵐbⁿ in the free commutative involution monoid A; * swaps the exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ACommElement {
    pub m: u64,
    pub n: u64,
}

impl ACommElement {
    pub fn unit() -> ACommElement {
        ACommElement { m: 0, n: 0 }
    }

    pub fn mult(&self, other: &ACommElement) -> ACommElement {
        ACommElement { m: self.m + other.m, n: self.n + other.n }
    }

    pub fn star(&self) -> ACommElement {
        ACommElement { m: self.n, n: self.m }
    }
}

/// Satisfaction in (A, *) reduces to balance: equal per-symbol occurrence
/// counts on both sides, starred symbols counted separately.
pub fn holds_in_a(lhs: &InvWord, rhs: &InvWord) -> bool {
    analyze(lhs).occ == analyze(rhs).occ
}
