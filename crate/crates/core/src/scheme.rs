// SPDX-License-Identifier: MIT OR Apache-2.0

//! Association schemes given by a relation matrix, and their brute-force
//! certification.
//!
//! A scheme on `n` points with class `d` is stored as the `n × n` matrix of
//! relation indices. Index `0` is the identity relation. The transpose
//! pairing `i ↦ i'` is read off the matrix, never assumed.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exec::{map_range, Parallelism};
use crate::linalg::IntMatrix;

/// Partition of `X × X` as a matrix of relation indices in `0..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationMatrix {
    n: usize,
    d: usize,
    cells: Vec<usize>,
}

impl RelationMatrix {
    pub fn new(n: usize, d: usize, cells: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRelationMatrix("no points".into()));
        }
        if cells.len() != n * n {
            return Err(Error::InvalidRelationMatrix(format!(
                "expected {} cells, found {}",
                n * n,
                cells.len()
            )));
        }
        let mut seen = vec![false; d + 1];
        for x in 0..n {
            for y in 0..n {
                let v = cells[x * n + y];
                if v > d {
                    return Err(Error::InvalidRelationMatrix(format!(
                        "cell ({x},{y}) = {v} exceeds class {d}"
                    )));
                }
                if (x == y) != (v == 0) {
                    return Err(Error::InvalidRelationMatrix(format!(
                        "cell ({x},{y}) = {v}: relation 0 must be exactly the diagonal"
                    )));
                }
                seen[v] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidRelationMatrix(format!(
                "relation {missing} is empty"
            )));
        }
        Ok(RelationMatrix { n, d, cells })
    }

    /// Class is taken to be the largest index present.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidRelationMatrix("matrix is not square".into()));
        }
        let d = rows.iter().flatten().copied().max().unwrap_or(0);
        RelationMatrix::new(n, d, rows.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }
}

/// A certified-shape association scheme: relation matrix, 0/1 adjacency
/// matrices, valencies and the transpose pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    relation: RelationMatrix,
    adjacency: Vec<IntMatrix>,
    valencies: Vec<usize>,
    pairing: Vec<usize>,
}

impl Scheme {
    /// Checks constant row and column sums and closure under transpose.
    /// Intersection numbers are checked separately by [`Scheme::certify`].
    pub fn from_relation_matrix(relation: RelationMatrix) -> Result<Self> {
        let (n, d) = (relation.n, relation.d);

        let mut row_counts = vec![vec![0usize; d + 1]; n];
        let mut col_counts = vec![vec![0usize; d + 1]; n];
        for x in 0..n {
            for y in 0..n {
                let v = relation.get(x, y);
                row_counts[x][v] += 1;
                col_counts[y][v] += 1;
            }
        }
        let valencies = row_counts[0].clone();
        for (kind, counts) in [("row", &row_counts), ("column", &col_counts)] {
            for per_point in counts.iter() {
                for i in 0..=d {
                    if per_point[i] != valencies[i] {
                        return Err(Error::NonConstantValency {
                            relation: i,
                            kind,
                            first: valencies[i],
                            other: per_point[i],
                        });
                    }
                }
            }
        }

        let mut pairing: Vec<Option<usize>> = vec![None; d + 1];
        for x in 0..n {
            for y in 0..n {
                let (i, j) = (relation.get(x, y), relation.get(y, x));
                match pairing[i] {
                    None => pairing[i] = Some(j),
                    Some(p) if p != j => return Err(Error::NotTransposeClosed(i)),
                    Some(_) => {}
                }
            }
        }
        let pairing: Vec<usize> = pairing.into_iter().map(|p| p.expect("relation non-empty")).collect();

        let adjacency = (0..=d)
            .map(|i| IntMatrix::from_fn(n, n, |x, y| i64::from(relation.get(x, y) == i)))
            .collect();
        Ok(Scheme {
            relation,
            adjacency,
            valencies,
            pairing,
        })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        Scheme::from_relation_matrix(RelationMatrix::from_rows(rows)?)
    }

    /// Builds a scheme from 0/1 adjacency matrices `A_0 = I, A_1, …, A_d`.
    pub fn from_adjacency(mats: &[IntMatrix]) -> Result<Self> {
        let n = mats
            .first()
            .map(IntMatrix::rows)
            .ok_or_else(|| Error::InvalidRelationMatrix("no relations".into()))?;
        let mut cells = vec![usize::MAX; n * n];
        for (i, m) in mats.iter().enumerate() {
            if m.shape() != (n, n) {
                return Err(Error::DimensionMismatch {
                    op: "from_adjacency",
                    left: (n, n),
                    right: m.shape(),
                });
            }
            for x in 0..n {
                for y in 0..n {
                    let v = m.get(x, y);
                    if *v == BigInt::from(1) {
                        if cells[x * n + y] != usize::MAX {
                            return Err(Error::InvalidRelationMatrix(format!(
                                "cell ({x},{y}) lies in relations {} and {i}",
                                cells[x * n + y]
                            )));
                        }
                        cells[x * n + y] = i;
                    } else if *v != BigInt::from(0) {
                        return Err(Error::InvalidRelationMatrix(format!(
                            "A_{i} has entry {v} at ({x},{y})"
                        )));
                    }
                }
            }
        }
        if let Some(pos) = cells.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidRelationMatrix(format!(
                "cell ({},{}) is in no relation",
                pos / n,
                pos % n
            )));
        }
        Scheme::from_relation_matrix(RelationMatrix::new(n, mats.len() - 1, cells)?)
    }

    pub fn n(&self) -> usize {
        self.relation.n
    }

    pub fn d(&self) -> usize {
        self.relation.d
    }

    pub fn relation(&self) -> &RelationMatrix {
        &self.relation
    }

    pub fn adjacency(&self, i: usize) -> &IntMatrix {
        &self.adjacency[i]
    }

    pub fn adjacency_matrices(&self) -> &[IntMatrix] {
        &self.adjacency
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    /// `i'` with `A_{i'} = A_iᵀ`.
    pub fn pairing(&self, i: usize) -> usize {
        self.pairing[i]
    }

    pub fn pairings(&self) -> &[usize] {
        &self.pairing
    }

    pub fn is_symmetric_relation(&self, i: usize) -> bool {
        self.pairing[i] == i
    }

    pub fn is_symmetric(&self) -> bool {
        (0..=self.d()).all(|i| self.is_symmetric_relation(i))
    }

    /// `A_i A_j` as an explicit matrix product.
    pub fn product(&self, i: usize, j: usize) -> IntMatrix {
        self.adjacency[i]
            .try_mul(&self.adjacency[j])
            .expect("adjacency matrices are square of equal size")
    }

    pub fn certify(&self) -> Result<IntersectionTensor> {
        self.certify_with(Parallelism::default())
    }

    /// Computes every entry of every product `A_iA_j` and checks that it is
    /// constant on each relation class.
    ///
    /// One pass over all triples `(x, z, y)`: entry `(x, y)` of `A_iA_j` is
    /// the number of `z` with `x R_i z` and `z R_j y`. Rows `x` are
    /// independent and run in parallel.
    pub fn certify_with(&self, mode: Parallelism) -> Result<IntersectionTensor> {
        let (n, d) = (self.n(), self.d());
        let w = d + 1;
        let rel = &self.relation;

        // Per row x: for each relation l, the count vector of the first
        // y with x R_l y, or the first conflict found.
        let per_row: Vec<Result<Vec<Option<Vec<u64>>>>> = map_range(n, mode, |x| {
            let mut seen: Vec<Option<Vec<u64>>> = vec![None; w];
            let mut counts = vec![0u64; w * w];
            let row_x = rel.row(x);
            for y in 0..n {
                counts.iter_mut().for_each(|c| *c = 0);
                for (z, &i) in row_x.iter().enumerate() {
                    counts[i * w + rel.get(z, y)] += 1;
                }
                let l = rel.get(x, y);
                match &seen[l] {
                    None => seen[l] = Some(counts.clone()),
                    Some(first) => {
                        if let Some(k) = (0..w * w).find(|&k| first[k] != counts[k]) {
                            return Err(Error::NonConstantIntersection {
                                i: k / w,
                                j: k % w,
                                l,
                                first: first[k],
                                other: counts[k],
                            });
                        }
                    }
                }
            }
            Ok(seen)
        });

        let mut p: Vec<Option<Vec<u64>>> = vec![None; w];
        for row in per_row {
            for (l, found) in row?.into_iter().enumerate() {
                let Some(found) = found else { continue };
                match &p[l] {
                    None => p[l] = Some(found),
                    Some(first) => {
                        if let Some(k) = (0..w * w).find(|&k| first[k] != found[k]) {
                            return Err(Error::NonConstantIntersection {
                                i: k / w,
                                j: k % w,
                                l,
                                first: first[k],
                                other: found[k],
                            });
                        }
                    }
                }
            }
        }

        let mut values = vec![0u64; w * w * w];
        for (l, counts) in p.into_iter().enumerate() {
            let counts = counts.expect("every relation is non-empty");
            for i in 0..w {
                for j in 0..w {
                    values[(i * w + j) * w + l] = counts[i * w + j];
                }
            }
        }
        let tensor = IntersectionTensor::new(d, values);
        tensor.check_identities(&self.valencies, &self.pairing)?;
        Ok(tensor)
    }

    /// Certifies and additionally requires `A_iA_j = A_jA_i` for all pairs.
    pub fn certify_commutative(&self) -> Result<IntersectionTensor> {
        let t = self.certify()?;
        if let Some((i, j)) = t.first_noncommuting_pair() {
            return Err(Error::NotCommutative(i, j));
        }
        Ok(t)
    }

    /// `cell'(σ(x), σ(y)) = cell(x, y)`; `sigma[x]` is the new position of
    /// point `x`.
    pub fn permute_points(&self, sigma: &[usize]) -> Result<Scheme> {
        let n = self.n();
        check_permutation(sigma, n)?;
        let mut cells = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[sigma[x] * n + sigma[y]] = self.relation.get(x, y);
            }
        }
        Scheme::from_relation_matrix(RelationMatrix::new(n, self.d(), cells)?)
    }

    /// Renames relation `i` to `map[i]`. `map` must fix 0.
    pub fn relabel(&self, map: &[usize]) -> Result<Scheme> {
        let d = self.d();
        check_permutation(map, d + 1)?;
        if map[0] != 0 {
            return Err(Error::Precondition("relabeling must fix relation 0".into()));
        }
        let cells = self.relation.cells.iter().map(|&c| map[c]).collect();
        Scheme::from_relation_matrix(RelationMatrix::new(self.n(), d, cells)?)
    }

    /// Cell-by-cell equality of the labeled relation matrices.
    pub fn relations_equal(&self, other: &Scheme) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                op: "relations_equal",
                left: (self.n(), self.n()),
                right: (other.n(), other.n()),
            });
        }
        Ok(self.relation == other.relation)
    }
}

pub(crate) fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut hit = vec![false; n];
    for &s in sigma {
        if s >= n || hit[s] {
            return Err(Error::NotAPermutation(n));
        }
        hit[s] = true;
    }
    Ok(())
}

/// Inverse of a permutation given as image list.
pub fn invert_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (x, &s) in sigma.iter().enumerate() {
        inv[s] = x;
    }
    inv
}

/// All structure constants `p_{i,j}^l` of a scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTensor {
    d: usize,
    values: Vec<u64>,
}

impl IntersectionTensor {
    /// `values[(i·(d+1) + j)·(d+1) + l] = p_{i,j}^l`.
    pub fn new(d: usize, values: Vec<u64>) -> Self {
        assert_eq!(values.len(), (d + 1).pow(3));
        IntersectionTensor { d, values }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        let w = self.d + 1;
        self.values[(i * w + j) * w + l]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn first_noncommuting_pair(&self) -> Option<(usize, usize)> {
        let w = self.d + 1;
        for i in 0..w {
            for j in i + 1..w {
                if (0..w).any(|l| self.get(i, j, l) != self.get(j, i, l)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.first_noncommuting_pair().is_none()
    }

    /// `(B_i)_{j,l} = p_{i,j}^l`.
    pub fn intersection_matrices(&self) -> Vec<IntMatrix> {
        let w = self.d + 1;
        (0..w)
            .map(|i| IntMatrix::from_fn(w, w, |j, l| self.get(i, j, l) as i64))
            .collect()
    }

    /// The tensor after renaming relation `i` to `map[i]`.
    pub fn relabeled(&self, map: &[usize]) -> Self {
        let w = self.d + 1;
        let mut values = vec![0; w * w * w];
        for i in 0..w {
            for j in 0..w {
                for l in 0..w {
                    values[(map[i] * w + map[j]) * w + map[l]] = self.get(i, j, l);
                }
            }
        }
        IntersectionTensor { d: self.d, values }
    }

    /// `Σ_l p_{ij}^l k_l = k_i k_j` and `p_{ij}^0 = k_i [j = i']`.
    pub fn check_identities(&self, valencies: &[usize], pairing: &[usize]) -> Result<()> {
        let w = self.d + 1;
        for i in 0..w {
            for j in 0..w {
                let total: u64 = (0..w).map(|l| self.get(i, j, l) * valencies[l] as u64).sum();
                if total != (valencies[i] * valencies[j]) as u64 {
                    return Err(Error::IdentityFailed(format!(
                        "sum_l p_({i},{j})^l k_l = {total} != k_{i} k_{j}"
                    )));
                }
                let expect = if j == pairing[i] { valencies[i] as u64 } else { 0 };
                if self.get(i, j, 0) != expect {
                    return Err(Error::IdentityFailed(format!(
                        "p_({i},{j})^0 = {} != {expect}",
                        self.get(i, j, 0)
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntersectionTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.intersection_matrices().iter().enumerate() {
            writeln!(f, "B_{i}:")?;
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// `(B_i)_{j,l} = p_{i,j}^l` for a certified scheme.
pub fn intersection_matrices(s: &Scheme, t: &IntersectionTensor) -> Result<Vec<IntMatrix>> {
    if t.d() != s.d() {
        return Err(Error::DimensionMismatch {
            op: "intersection_matrices",
            left: (s.d(), s.d()),
            right: (t.d(), t.d()),
        });
    }
    Ok(t.intersection_matrices())
}

/// Outcome of [`check_class2_nonsym_identities`]: the number of points and
/// the three coefficients `((m−3)/4, (m+1)/4, (m−1)/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class2Report {
    pub m: usize,
    pub p11_1: u64,
    pub p11_2: u64,
    pub p12_0: u64,
}

/// Verifies, as exact matrix identities, the product rules of a
/// non-symmetric class-2 scheme on `m` points (a doubly regular
/// tournament), after checking `m ≡ 3 (mod 4)`:
///
/// * `4A₁² = (m−3)A₁ + (m+1)A₂` and the mirror identity for `A₂²`,
/// * `4A₁A₂ = 2(m−1)A₀ + (m−3)(A₁+A₂)`,
/// * `2(A₁² + A₂²) = (m−1)(A₁+A₂)`,
/// * `2(J + 2A₁A₂) = 2mA₀ + (m−1)(A₁+A₂)`.
pub fn check_class2_nonsym_identities(s: &Scheme) -> Result<Class2Report> {
    if s.d() != 2 {
        return Err(Error::Precondition(format!(
            "class 2 required, found class {}",
            s.d()
        )));
    }
    if s.pairing(1) != 2 {
        return Err(Error::Precondition(
            "non-symmetric scheme required (A_1^T must be A_2)".into(),
        ));
    }
    let t = s.certify()?;
    let m = s.n();
    if m % 4 != 3 {
        return Err(Error::IdentityFailed(format!("m = {m} is not 3 mod 4")));
    }
    let mi = m as i64;
    let a0 = s.adjacency(0);
    let a1 = s.adjacency(1);
    let a2 = s.adjacency(2);
    let a1a1 = s.product(1, 1);
    let a2a2 = s.product(2, 2);
    let a1a2 = s.product(1, 2);
    let a2a1 = s.product(2, 1);
    let sum12 = a1.try_add(a2)?;
    let comb = |terms: &[(i64, &IntMatrix)]| -> Result<IntMatrix> {
        terms.iter().try_fold(IntMatrix::zeros(m, m), |acc, (k, mat)| {
            acc.try_add(&mat.scale_i64(*k))
        })
    };

    let checks: [(&str, IntMatrix, IntMatrix); 6] = [
        (
            "A1^2 = (m-3)/4 A1 + (m+1)/4 A2",
            a1a1.scale_i64(4),
            comb(&[(mi - 3, a1), (mi + 1, a2)])?,
        ),
        (
            "A2^2 = (m+1)/4 A1 + (m-3)/4 A2",
            a2a2.scale_i64(4),
            comb(&[(mi + 1, a1), (mi - 3, a2)])?,
        ),
        (
            "A1A2 = (m-1)/2 A0 + (m-3)/4 (A1+A2)",
            a1a2.scale_i64(4),
            comb(&[(2 * (mi - 1), a0), (mi - 3, &sum12)])?,
        ),
        ("A1A2 = A2A1", a1a2.clone(), a2a1),
        (
            "A1^2 + A2^2 = (m-1)/2 (A1+A2)",
            a1a1.try_add(&a2a2)?.scale_i64(2),
            sum12.scale_i64(mi - 1),
        ),
        (
            "J + 2A1A2 = mA0 + (m-1)/2 (A1+A2)",
            IntMatrix::ones(m, m).try_add(&a1a2.scale_i64(2))?.scale_i64(2),
            comb(&[(2 * mi, a0), (mi - 1, &sum12)])?,
        ),
    ];
    for (name, lhs, rhs) in checks {
        if lhs != rhs {
            return Err(Error::IdentityFailed(format!("{name} (m = {m})")));
        }
    }
    Ok(Class2Report {
        m,
        p11_1: t.get(1, 1, 1),
        p11_2: t.get(1, 1, 2),
        p12_0: t.get(1, 2, 0),
    })
}
