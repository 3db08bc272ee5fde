//! Idempotent commutative semirings, dense square matrices over them, skew
//! transposition, block assembly and the constant generator blocks.

use std::fmt;
use std::hash::Hash;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
}

/// Element contract for a commutative idempotent semiring with a
/// distinguished element of infinite multiplicative order.
pub trait SemiringValue: Clone + Eq + Hash + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    /// The distinguished element s of infinite multiplicative order.
    fn generator() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

/// Integer tropical semiring: ⊕ = max with −∞, ⊗ = +, s = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropValue {
    NegInf,
    Int(i64),
}

impl SemiringValue for TropValue {
    fn zero() -> Self {
        TropValue::NegInf
    }

    fn one() -> Self {
        TropValue::Int(0)
    }

    fn generator() -> Self {
        TropValue::Int(1)
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (TropValue::NegInf, x) | (x, TropValue::NegInf) => *x,
            (TropValue::Int(a), TropValue::Int(b)) => TropValue::Int((*a).max(*b)),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (TropValue::NegInf, _) | (_, TropValue::NegInf) => TropValue::NegInf,
            (TropValue::Int(a), TropValue::Int(b)) => TropValue::Int(a + b),
        }
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::NegInf => write!(f, "."),
            TropValue::Int(v) => write!(f, "{}", v),
        }
    }
}

impl Serialize for TropValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            TropValue::NegInf => serializer.serialize_str("-inf"),
            TropValue::Int(v) => serializer.serialize_i64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for TropValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(TropValue::Int(v)),
            Raw::Str(s) if s == "-inf" => Ok(TropValue::NegInf),
            Raw::Str(s) => Err(D::Error::custom(format!("unexpected entry {s:?}"))),
        }
    }
}

/// Boolean semiring ({0,1}, or, and); used for finite matrix closures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoolValue(pub bool);

impl SemiringValue for BoolValue {
    fn zero() -> Self {
        BoolValue(false)
    }

    fn one() -> Self {
        BoolValue(true)
    }

    fn generator() -> Self {
        // No element of infinite order exists here; the boolean instance is
        // only used for generator sets whose entries are 0/1.
        BoolValue(true)
    }

    fn add(&self, other: &Self) -> Self {
        BoolValue(self.0 || other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        BoolValue(self.0 && other.0)
    }
}

/// Dense square matrix over a semiring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<V: SemiringValue> {
    dim: usize,
    entries: Vec<V>,
}

pub type TropMatrix = Matrix<TropValue>;
pub type BoolMatrix = Matrix<BoolValue>;

impl<V: SemiringValue> Matrix<V> {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, entries: vec![V::zero(); dim * dim] }
    }

    /// E_n: 1 on the main diagonal, 0 elsewhere.
    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, V::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<V>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix { dim, entries: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &V {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: V) {
        self.entries[i * self.dim + j] = v;
    }

    /// (AB)_{ij} = ⊕_k A_{ik} ⊗ B_{kj}; zero entries of A are skipped.
    pub fn mat_mul(&self, other: &Matrix<V>) -> Result<Matrix<V>, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let zero = V::zero();
        let mut out = Matrix::<V>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if *a == zero {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if *b == zero {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Matrix<V> {
        let mut out = Matrix::identity(self.dim);
        for _ in 0..e {
            out = out.mat_mul(self).unwrap();
        }
        out
    }

    /// Skew transposition: (Aᴰ)_{ij} = A_{(n+1−j)(n+1−i)} in 1-based indices.
    pub fn skew_transpose(&self) -> Matrix<V> {
        let n = self.dim;
        let mut out = Matrix::<V>::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(n - 1 - j, n - 1 - i).clone());
            }
        }
        out
    }

    pub fn block_diag(blocks: &[Matrix<V>]) -> Matrix<V> {
        let dim = blocks.iter().map(|b| b.dim).sum();
        let mut out = Matrix::zeros(dim);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    out.set(offset + i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.dim;
        }
        out
    }

    pub fn is_upper_triangular(&self) -> bool {
        let zero = V::zero();
        (0..self.dim).all(|i| (0..i).all(|j| *self.get(i, j) == zero))
    }
}

/// P = diag(s, 1).
pub fn block_p<V: SemiringValue>() -> Matrix<V> {
    diag2(V::generator(), V::one())
}

/// Q = diag(1, s).
pub fn block_q<V: SemiringValue>() -> Matrix<V> {
    diag2(V::one(), V::generator())
}

/// J: identity plus a 1 at (2,3).
pub fn block_j<V: SemiringValue>() -> Matrix<V> {
    let mut m = Matrix::identity(3);
    m.set(1, 2, V::one());
    m
}

/// K: identity plus a 1 at (1,2).
pub fn block_k<V: SemiringValue>() -> Matrix<V> {
    let mut m = Matrix::identity(3);
    m.set(0, 1, V::one());
    m
}

/// 1×1 matrix holding the multiplicative identity.
pub fn block_unit<V: SemiringValue>() -> Matrix<V> {
    Matrix::identity(1)
}

/// 1×1 matrix holding s^e.
pub fn block_s_pow<V: SemiringValue>(e: usize) -> Matrix<V> {
    let mut v = V::one();
    for _ in 0..e {
        v = v.mul(&V::generator());
    }
    Matrix::from_rows(vec![vec![v]])
}

fn diag2<V: SemiringValue>(a: V, b: V) -> Matrix<V> {
    let mut m = Matrix::zeros(2);
    m.set(0, 0, a);
    m.set(1, 1, b);
    m
}

/// Serialized matrix form: {dim, entries} with −∞ as the string "-inf".
#[derive(Serialize, Deserialize)]
pub struct TropMatrixJson {
    pub dim: usize,
    pub entries: Vec<Vec<TropValue>>,
}

impl From<&TropMatrix> for TropMatrixJson {
    fn from(m: &TropMatrix) -> Self {
        let entries = (0..m.dim)
            .map(|i| (0..m.dim).map(|j| *m.get(i, j)).collect())
            .collect();
        TropMatrixJson { dim: m.dim, entries }
    }
}

impl TryFrom<TropMatrixJson> for TropMatrix {
    type Error = MatrixError;

    fn try_from(j: TropMatrixJson) -> Result<Self, MatrixError> {
        if j.entries.len() != j.dim || j.entries.iter().any(|r| r.len() != j.dim) {
            return Err(MatrixError::DimMismatch(j.dim, j.entries.len()));
        }
        Ok(Matrix::from_rows(j.entries))
    }
}

/// Right-aligned text rendering with "." for −∞.
pub fn render_trop(m: &TropMatrix) -> String {
    let width = (0..m.dim)
        .flat_map(|i| (0..m.dim).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).to_string().len())
        .max()
        .unwrap_or(1);
    (0..m.dim)
        .map(|i| {
            (0..m.dim)
                .map(|j| format!("{:>width$}", m.get(i, j).to_string()))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
