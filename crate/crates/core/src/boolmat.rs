//! Square matrices over the Boolean semiring and the monoid `B_n` of binary
//! relations.
//!
//! Matrix entries are addressed 0-based through [`BoolMatrix::get`]; the
//! top-row encodings [`code`], [`decode`], [`fold`] and [`unfold`] use the
//! 1-based `(i, j)` convention of the relation monoid.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semigroup::FiniteMonoid;

/// An `n x n` matrix over `{0,1}`, stored as row bitsets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        let words_per_row = n.div_ceil(64);
        BoolMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses rows written as strings over `{0,1}`, e.g. `["01", "00"]`.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("matrix needs at least one row".into()));
        }
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.chars().count() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: row.chars().count(),
                });
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    other => return Err(Error::Invalid(format!("matrix entry `{other}`"))),
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.n && j < self.n);
        let w = &mut self.bits[i * self.words_per_row + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Boolean product; `c[i][j] = OR_k a[i][k] AND b[k][j]`.
    pub fn mul(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(self.mul_same(other))
    }

    /// Product of two matrices already known to have the same dimension.
    pub(crate) fn mul_same(&self, other: &BoolMatrix) -> BoolMatrix {
        let mut out = BoolMatrix::zero(self.n);
        let wpr = self.words_per_row;
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    let src = other.row(k);
                    let dst = &mut out.bits[i * wpr..(i + 1) * wpr];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d |= s;
                    }
                }
            }
        }
        out
    }

    /// Rows as `{0,1}` strings.
    pub fn rows(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rows().join(","))
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rows().join("/"))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    rows: Vec<String>,
}

impl Serialize for BoolMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            n: self.n,
            rows: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoolMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let m = BoolMatrix::from_rows(&raw.rows).map_err(serde::de::Error::custom)?;
        if m.n != raw.n {
            return Err(serde::de::Error::custom(format!(
                "declared n = {} but {} rows given",
                raw.n, m.n
            )));
        }
        Ok(m)
    }
}

fn common_dimension(mats: &[BoolMatrix], n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "dimension",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    for m in mats {
        if m.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.n,
            });
        }
    }
    Ok(())
}

/// Left fold of [`BoolMatrix::mul`]; the empty product is `I_n`.
///
/// `n` must agree with every matrix in `mats`; it is needed only to fix the
/// identity when the list is empty.
pub fn iterated_product(mats: &[BoolMatrix], n: usize) -> Result<BoolMatrix> {
    common_dimension(mats, n)?;
    Ok(mats
        .iter()
        .fold(BoolMatrix::identity(n), |acc, m| acc.mul_same(m)))
}

/// Whether some index sequence `i_1 .. i_{k+1}` threads a 1-entry through
/// every matrix, `A_h[i_h][i_{h+1}] = 1`.
///
/// This enumerates all `n^(k+1)` sequences and never multiplies matrices, so
/// it can serve as an oracle for [`iterated_product`].
pub fn path_exists(mats: &[BoolMatrix], n: usize) -> Result<bool> {
    common_dimension(mats, n)?;
    let len = mats.len() + 1;
    let mut seq = vec![0usize; len];
    loop {
        if mats
            .iter()
            .enumerate()
            .all(|(h, a)| a.get(seq[h], seq[h + 1]))
        {
            return Ok(true);
        }
        // odometer increment
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(false);
            }
            pos -= 1;
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
        }
    }
}

/// `code_n(i, j) = (i - 1) n + j`, 1-based.
pub fn code(n: usize, i: usize, j: usize) -> Result<usize> {
    for v in [i, j] {
        if v < 1 || v > n {
            return Err(Error::OutOfRange {
                what: "matrix index",
                value: v,
                min: 1,
                max: n,
            });
        }
    }
    Ok((i - 1) * n + j)
}

/// Inverse of [`code`].
pub fn decode(n: usize, k: usize) -> Result<(usize, usize)> {
    if n == 0 || k < 1 || k > n * n {
        return Err(Error::OutOfRange {
            what: "code position",
            value: k,
            min: 1,
            max: n * n,
        });
    }
    Ok(((k - 1) / n + 1, (k - 1) % n + 1))
}

/// `fold_n(w)[i][j] = w[code_n(i, j)]` for a bit word of length `n^2`.
pub fn fold(n: usize, word: &[bool]) -> Result<BoolMatrix> {
    if word.len() != n * n {
        return Err(Error::LengthMismatch {
            expected: n * n,
            found: word.len(),
        });
    }
    Ok(BoolMatrix::from_fn(n, |i, j| word[i * n + j]))
}

/// Reads the entries back in code order.
pub fn unfold(a: &BoolMatrix) -> Vec<bool> {
    let n = a.n();
    (0..n * n).map(|k| a.get(k / n, k % n)).collect()
}

/// Parses a `{0,1}` string into bits.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Invalid(format!("bit `{other}`"))),
        })
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// The matrix whose unfolded bit word, read as a binary number with the
/// first code position most significant, equals `index`.
pub fn bn_element(n: usize, index: usize) -> BoolMatrix {
    let nn = n * n;
    BoolMatrix::from_fn(n, |i, j| {
        let k = i * n + j;
        index >> (nn - 1 - k) & 1 == 1
    })
}

/// Inverse of [`bn_element`].
pub fn bn_index(a: &BoolMatrix) -> usize {
    unfold(a)
        .into_iter()
        .fold(0usize, |acc, b| (acc << 1) | b as usize)
}

/// The full monoid `B_n` of all `2^(n^2)` Boolean matrices under the
/// relation product. Element `x` is [`bn_element`]`(n, x)`.
pub fn bn_monoid(n: usize, cap: usize) -> Result<FiniteMonoid> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "dimension",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let nn = (n * n) as u32;
    if nn >= usize::BITS - 1 || (1usize << nn) > cap {
        return Err(Error::cap("B_n size", 1u128 << nn.min(127), cap));
    }
    let size = 1usize << nn;
    let elems: Vec<BoolMatrix> = (0..size).map(|x| bn_element(n, x)).collect();
    let mut table = Vec::with_capacity(size * size);
    for a in &elems {
        for b in &elems {
            table.push(bn_index(&a.mul_same(b)) as u32);
        }
    }
    let identity = bn_index(&BoolMatrix::identity(n)) as u32;
    let mut m = FiniteMonoid::from_table(size, identity, table)?;
    m.set_labels(elems.iter().map(|e| bits_to_string(&unfold(e))).collect())?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BoolMatrix {
        BoolMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn mul_examples() {
        let a = m(&["10", "11"]);
        assert_eq!(BoolMatrix::identity(2).mul(&a).unwrap(), a);
        assert_eq!(BoolMatrix::zero(2).mul(&a).unwrap(), BoolMatrix::zero(2));
        let nil = m(&["01", "00"]);
        assert_eq!(nil.mul(&nil).unwrap(), BoolMatrix::zero(2));
        assert!(matches!(
            nil.mul(&BoolMatrix::zero(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn iterated_product_examples() {
        assert_eq!(iterated_product(&[], 3).unwrap(), BoolMatrix::identity(3));
        let a = m(&["10", "01"]);
        assert_eq!(iterated_product(std::slice::from_ref(&a), 2).unwrap(), a);
        let p = iterated_product(&[m(&["10", "00"]), m(&["01", "00"])], 2).unwrap();
        assert_eq!(p, m(&["01", "00"]));
        assert!(iterated_product(&[m(&["1"]), a], 1).is_err());
    }

    #[test]
    fn path_exists_examples() {
        assert!(path_exists(&[], 2).unwrap());
        assert!(path_exists(&[BoolMatrix::identity(2)], 2).unwrap());
        let nil = m(&["01", "00"]);
        assert!(!path_exists(&[nil.clone(), nil], 2).unwrap());
    }

    #[test]
    fn code_examples() {
        assert_eq!(code(2, 1, 1).unwrap(), 1);
        assert_eq!(code(2, 2, 1).unwrap(), 3);
        assert_eq!(decode(2, 4).unwrap(), (2, 2));
        assert!(code(2, 3, 1).is_err());
        assert!(decode(2, 0).is_err());
        assert!(decode(2, 5).is_err());
    }

    #[test]
    fn fold_examples() {
        assert_eq!(fold(1, &[true]).unwrap(), m(&["1"]));
        assert_eq!(
            fold(2, &parse_bits("0110").unwrap()).unwrap(),
            m(&["01", "10"])
        );
        assert_eq!(bits_to_string(&unfold(&BoolMatrix::identity(2))), "1001");
        assert!(fold(2, &[true]).is_err());
    }

    #[test]
    fn json_format() {
        let a = m(&["01", "10"]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":2,"rows":["01","10"]}"#);
        let back: BoolMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<BoolMatrix>(r#"{"n":3,"rows":["01","10"]}"#).is_err());
    }

    #[test]
    fn wide_matrices() {
        let n = 70;
        let shift = BoolMatrix::from_fn(n, |i, j| j == (i + 1) % n);
        let mut p = BoolMatrix::identity(n);
        for _ in 0..n {
            p = p.mul_same(&shift);
        }
        assert_eq!(p, BoolMatrix::identity(n));
    }

    #[test]
    fn bn_small() {
        let b1 = bn_monoid(1, 1 << 20).unwrap();
        assert_eq!(b1.size(), 2);
        let b2 = bn_monoid(2, 1 << 20).unwrap();
        assert_eq!(b2.size(), 16);
        assert_eq!(b2.identity() as usize, bn_index(&BoolMatrix::identity(2)));
        assert!(bn_monoid(3, 100).unwrap_err().is_cap());
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = BoolMatrix> {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |v| fold(n, &v).unwrap())
    }

    proptest! {
        #[test]
        fn code_decode_roundtrip(n in 1usize..8, i in 1usize..8, j in 1usize..8) {
            prop_assume!(i <= n && j <= n);
            let k = code(n, i, j).unwrap();
            prop_assert!(k >= 1 && k <= n * n);
            prop_assert_eq!(decode(n, k).unwrap(), (i, j));
        }

        #[test]
        fn fold_unfold_inverse(a in arb_matrix(3)) {
            prop_assert_eq!(fold(3, &unfold(&a)).unwrap(), a);
        }

        #[test]
        fn mul_associative_with_identity(a in arb_matrix(3), b in arb_matrix(3), c in arb_matrix(3)) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let id = BoolMatrix::identity(3);
            prop_assert_eq!(id.mul(&a).unwrap(), a.clone());
            prop_assert_eq!(a.mul(&id).unwrap(), a);
        }

        #[test]
        fn product_zero_iff_no_path(mats in proptest::collection::vec(arb_matrix(3), 0..4)) {
            let p = iterated_product(&mats, 3).unwrap();
            prop_assert_eq!(p.is_zero(), !path_exists(&mats, 3).unwrap());
        }
    }
}
