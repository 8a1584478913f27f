// SPDX-License-Identifier: MIT OR Apache-2.0

//! Constructions of schemes from schemes.
//!
//! Block matrices use fixed point orders:
//!
//! * extended double cover / Taylor analogue: top point, first copy of `X`,
//!   second copy of `X`, bottom point (`2(m+1)` points);
//! * doubling: new point, first copy, second copy (`2m+1` points);
//! * block form of the cover of a doubling: two copies of the cover of `X`
//!   (`4(m+1)` points).

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::scheme::{check_permutation, Scheme};

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// `residue[r]` is true iff `r` is a nonzero square mod `p`.
fn quadratic_residues(p: usize) -> Vec<bool> {
    let mut residue = vec![false; p];
    for x in 1..p {
        residue[x * x % p] = true;
    }
    residue
}

fn circulant(p: usize, label: impl Fn(usize) -> usize) -> Result<Scheme> {
    let rows: Vec<Vec<usize>> = (0..p)
        .map(|x| (0..p).map(|y| label((y + p - x) % p)).collect())
        .collect();
    Scheme::from_rows(&rows)
}

/// Quadratic-residue tournament on `Z_m`: `x → y` iff `y − x` is a nonzero
/// square. Requires `m` prime, `m ≡ 3 (mod 4)`.
pub fn paley_tournament(m: usize) -> Result<Scheme> {
    if !is_prime(m) {
        return Err(Error::Inadmissible {
            name: "m",
            value: m as i64,
            reason: "must be prime",
        });
    }
    if m % 4 != 3 {
        return Err(Error::Inadmissible {
            name: "m",
            value: m as i64,
            reason: "must be 3 mod 4",
        });
    }
    let residue = quadratic_residues(m);
    circulant(m, |r| match r {
        0 => 0,
        r if residue[r] => 1,
        _ => 2,
    })
}

/// Paley graph on `Z_q` as a symmetric class-2 scheme (relation 1 =
/// adjacency). Requires `q` prime, `q ≡ 1 (mod 4)`.
pub fn paley_graph(q: usize) -> Result<Scheme> {
    if !is_prime(q) {
        return Err(Error::Inadmissible {
            name: "q",
            value: q as i64,
            reason: "must be prime",
        });
    }
    if q % 4 != 1 {
        return Err(Error::Inadmissible {
            name: "q",
            value: q as i64,
            reason: "must be 1 mod 4",
        });
    }
    let residue = quadratic_residues(q);
    circulant(q, |r| match r {
        0 => 0,
        r if residue[r] => 1,
        _ => 2,
    })
}

fn require_class2_nonsymmetric(s: &Scheme) -> Result<()> {
    if s.d() != 2 || s.pairing(1) != 2 {
        return Err(Error::Precondition(format!(
            "non-symmetric class-2 scheme required (class {}, A_1^T = A_{})",
            s.d(),
            s.pairing(1).min(s.d())
        )));
    }
    s.certify()?;
    Ok(())
}

/// `J − Σ terms`, the complementary relation.
fn complement(n: usize, terms: &[&IntMatrix]) -> Result<IntMatrix> {
    terms
        .iter()
        .try_fold(IntMatrix::ones(n, n), |acc, t| acc.try_sub(t))
}

/// The class-3 extended double cover of a non-symmetric class-2 scheme on
/// `m` points:
///
/// ```text
///        ⎡ 0   1   0   0  ⎤
///   C₁ = ⎢ 0   A₁  A₂  1ᵀ ⎥ ,  C₂ = C₁ᵀ,  C₃ = J − C₀ − C₁ − C₂
///        ⎢ 1ᵀ  A₂  A₁  0  ⎥
///        ⎣ 0   0   1   0  ⎦
/// ```
pub fn extended_double_cover(s: &Scheme) -> Result<Scheme> {
    require_class2_nonsymmetric(s)?;
    let m = s.n();
    let (a1, a2) = (s.adjacency(1).clone(), s.adjacency(2).clone());
    let one = IntMatrix::ones(1, m);
    let zero_row = IntMatrix::zeros(1, m);
    let z = IntMatrix::zeros(1, 1);
    let c1 = IntMatrix::from_blocks(&[
        vec![z.clone(), one.clone(), zero_row.clone(), z.clone()],
        vec![zero_row.transpose(), a1.clone(), a2.clone(), one.transpose()],
        vec![one.transpose(), a2, a1, zero_row.transpose()],
        vec![z.clone(), zero_row, one, z],
    ])?;
    let n = 2 * (m + 1);
    let c0 = IntMatrix::identity(n);
    let c2 = c1.transpose();
    let c3 = complement(n, &[&c0, &c1, &c2])?;
    Scheme::from_adjacency(&[c0, c1, c2, c3])
}

/// Number of base points `m` of an extended double cover on `2(m+1)` points.
pub fn edc_parameter(s_edc: &Scheme) -> Result<usize> {
    let n = s_edc.n();
    if s_edc.d() != 3 || n < 4 || n % 2 != 0 {
        return Err(Error::Precondition(format!(
            "class-3 scheme on 2(m+1) points required (class {}, {} points)",
            s_edc.d(),
            n
        )));
    }
    Ok(n / 2 - 1)
}

/// The five product rules of the cover's adjacency matrices, checked as
/// exact matrix identities. Returns the base parameter `m`.
///
/// * `C₁² = C₂² = ((m−1)/2)(C₁+C₂) + mC₃`
/// * `C₁C₂ = C₂C₁ = mC₀ + ((m−1)/2)(C₁+C₂)`
/// * `C₁C₃ = C₃C₁ = C₂`, `C₂C₃ = C₃C₂ = C₁`
/// * `C₃² = C₀`
pub fn check_lemma_products(s_edc: &Scheme) -> Result<usize> {
    let m = edc_parameter(s_edc)?;
    let mi = m as i64;
    let c = s_edc.adjacency_matrices();
    let sum12 = c[1].try_add(&c[2])?;
    // doubled to keep (m−1)/2 integral
    let square_rhs = sum12.scale_i64(mi - 1).try_add(&c[3].scale_i64(2 * mi))?;
    let cross_rhs = c[0].scale_i64(2 * mi).try_add(&sum12.scale_i64(mi - 1))?;
    let checks: [(&str, IntMatrix, &IntMatrix); 9] = [
        ("C1^2 = (m-1)/2 (C1+C2) + m C3", s_edc.product(1, 1).scale_i64(2), &square_rhs),
        ("C2^2 = (m-1)/2 (C1+C2) + m C3", s_edc.product(2, 2).scale_i64(2), &square_rhs),
        ("C1C2 = m C0 + (m-1)/2 (C1+C2)", s_edc.product(1, 2).scale_i64(2), &cross_rhs),
        ("C2C1 = m C0 + (m-1)/2 (C1+C2)", s_edc.product(2, 1).scale_i64(2), &cross_rhs),
        ("C1C3 = C2", s_edc.product(1, 3), &c[2]),
        ("C3C1 = C2", s_edc.product(3, 1), &c[2]),
        ("C2C3 = C1", s_edc.product(2, 3), &c[1]),
        ("C3C2 = C1", s_edc.product(3, 2), &c[1]),
        ("C3^2 = C0", s_edc.product(3, 3), &c[0]),
    ];
    for (name, lhs, rhs) in checks {
        if lhs != *rhs {
            return Err(Error::IdentityFailed(format!("{name} (m = {m})")));
        }
    }
    Ok(m)
}

/// Swaps every relation with its transpose partner, i.e. replaces the
/// scheme by its transpose.
pub fn reverse(s: &Scheme) -> Scheme {
    s.relabel(s.pairings())
        .expect("transpose pairing is an involution fixing 0")
}

/// Symmetric class-3 scheme on `2(m+1)` points from a symmetric class-2
/// scheme with `k = 2μ`; `D₁` is a Taylor graph.
pub fn taylor_extension(s: &Scheme) -> Result<Scheme> {
    if s.d() != 2 || !s.is_symmetric() {
        return Err(Error::Precondition(
            "symmetric class-2 scheme required".into(),
        ));
    }
    let t = s.certify()?;
    let k = s.valencies()[1] as u64;
    let mu = t.get(1, 1, 2);
    if k != 2 * mu {
        return Err(Error::Precondition(format!("k = {k} but mu = {mu}; k = 2 mu required")));
    }
    let m = s.n();
    let (a1, a2) = (s.adjacency(1).clone(), s.adjacency(2).clone());
    let one = IntMatrix::ones(1, m);
    let zero_row = IntMatrix::zeros(1, m);
    let z = IntMatrix::zeros(1, 1);
    let d1 = IntMatrix::from_blocks(&[
        vec![z.clone(), one.clone(), zero_row.clone(), z.clone()],
        vec![one.transpose(), a1.clone(), a2.clone(), zero_row.transpose()],
        vec![zero_row.transpose(), a2.clone(), a1.clone(), one.transpose()],
        vec![z.clone(), zero_row.clone(), one.clone(), z.clone()],
    ])?;
    let d2 = IntMatrix::from_blocks(&[
        vec![z.clone(), zero_row.clone(), one.clone(), z.clone()],
        vec![zero_row.transpose(), a2.clone(), a1.clone(), one.transpose()],
        vec![one.transpose(), a1, a2, zero_row.transpose()],
        vec![z.clone(), one, zero_row, z],
    ])?;
    let n = 2 * (m + 1);
    let d0 = IntMatrix::identity(n);
    let d3 = complement(n, &[&d0, &d1, &d2])?;
    Scheme::from_adjacency(&[d0, d1, d2, d3])
}

/// Pasechnik's doubling: a non-symmetric class-2 scheme on `2m+1` points.
///
/// ```text
///        ⎡ 0   1    0      ⎤        ⎡ 0   0       1  ⎤
///   Ã₁ = ⎢ 0   A₁   A₂ + I ⎥ ,  Ã₂ = ⎢ 1ᵀ  A₂      A₁ ⎥
///        ⎣ 1ᵀ  A₂   A₂     ⎦        ⎣ 0   A₁ + I  A₁ ⎦
/// ```
pub fn doubling(s: &Scheme) -> Result<Scheme> {
    require_class2_nonsymmetric(s)?;
    let m = s.n();
    let (a1, a2) = (s.adjacency(1), s.adjacency(2));
    let i = IntMatrix::identity(m);
    let one = IntMatrix::ones(1, m);
    let zero_row = IntMatrix::zeros(1, m);
    let z = IntMatrix::zeros(1, 1);
    let t1 = IntMatrix::from_blocks(&[
        vec![z.clone(), one.clone(), zero_row.clone()],
        vec![zero_row.transpose(), a1.clone(), a2.try_add(&i)?],
        vec![one.transpose(), a2.clone(), a2.clone()],
    ])?;
    let t2 = IntMatrix::from_blocks(&[
        vec![z, zero_row.clone(), one.clone()],
        vec![one.transpose(), a2.clone(), a1.clone()],
        vec![zero_row.transpose(), a1.try_add(&i)?, a1.clone()],
    ])?;
    Scheme::from_adjacency(&[IntMatrix::identity(2 * m + 1), t1, t2])
}

/// The extended double cover of the doubling, written directly in terms of
/// the cover `C₀…C₃` of the input:
///
/// ```text
///   C₁' = ⎡ C₁       C₂ + I ⎤   C₂' = ⎡ C₂      C₁ + C₃ ⎤   C₃' = ⎡ C₃  0  ⎤
///         ⎣ C₂ + C₃  C₂     ⎦         ⎣ C₁ + I  C₁      ⎦         ⎣ 0   C₃ ⎦
/// ```
pub fn edc_of_doubling_blockform(s: &Scheme) -> Result<Scheme> {
    let cover = extended_double_cover(s)?;
    let c = cover.adjacency_matrices();
    let half = cover.n();
    let i = IntMatrix::identity(half);
    let z = IntMatrix::zeros(half, half);
    let c1 = IntMatrix::from_blocks(&[
        vec![c[1].clone(), c[2].try_add(&i)?],
        vec![c[2].try_add(&c[3])?, c[2].clone()],
    ])?;
    let c2 = IntMatrix::from_blocks(&[
        vec![c[2].clone(), c[1].try_add(&c[3])?],
        vec![c[1].try_add(&i)?, c[1].clone()],
    ])?;
    let c3 = IntMatrix::from_blocks(&[vec![c[3].clone(), z.clone()], vec![z, c[3].clone()]])?;
    Scheme::from_adjacency(&[IntMatrix::identity(2 * half), c1, c2, c3])
}

/// Point permutation that lists the blocks of sizes `sizes` in the order
/// `order` (1-based block numbers). `sigma[x]` is the new position of `x`.
pub fn block_permutation(sizes: &[usize], order: &[usize]) -> Result<Vec<usize>> {
    let blocks = sizes.len();
    let zero_based: Vec<usize> = order.iter().map(|&b| b.wrapping_sub(1)).collect();
    check_permutation(&zero_based, blocks)?;
    let mut starts = Vec::with_capacity(blocks);
    let mut acc = 0;
    for &s in sizes {
        starts.push(acc);
        acc += s;
    }
    let mut sigma = vec![0; acc];
    let mut next = 0;
    for &b in &zero_based {
        for x in starts[b]..starts[b] + sizes[b] {
            sigma[x] = next;
            next += 1;
        }
    }
    Ok(sigma)
}

/// Blocks of the cover of a doubling, in its natural point order: top,
/// then (new, copy 1, copy 2) twice, then bottom.
pub fn theorem44_block_sizes(m: usize) -> [usize; 8] {
    [1, 1, m, m, 1, m, m, 1]
}

/// New block order taking the cover of the doubling to the block form.
pub const THEOREM44_BLOCK_ORDER: [usize; 8] = [5, 6, 3, 2, 1, 7, 4, 8];

/// Permutation of the `4(m+1)` points carrying
/// `extended_double_cover(doubling(s))` onto `edc_of_doubling_blockform(s)`.
pub fn theorem44_permutation(m: usize) -> Result<Vec<usize>> {
    if m < 3 || m % 4 != 3 {
        return Err(Error::Inadmissible {
            name: "m",
            value: m as i64,
            reason: "must be 3 mod 4",
        });
    }
    block_permutation(&theorem44_block_sizes(m), &THEOREM44_BLOCK_ORDER)
}

/// A ±1 matrix with `H + Hᵀ = 2I` and `HHᵀ = order·I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewHadamardMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl SkewHadamardMatrix {
    /// Validates both defining identities.
    pub fn new(order: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::DimensionMismatch {
                op: "skew_hadamard",
                left: (order, order),
                right: (entries.len(), 1),
            });
        }
        if entries.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::IdentityFailed("entries must be +1 or -1".into()));
        }
        let h = SkewHadamardMatrix { order, entries };
        let m = h.to_int_matrix();
        let two_i = IntMatrix::identity(order).scale_i64(2);
        if m.try_add(&m.transpose())? != two_i {
            return Err(Error::IdentityFailed("H + H^T = 2I".into()));
        }
        if m.try_mul(&m.transpose())? != IntMatrix::identity(order).scale_i64(order as i64) {
            return Err(Error::IdentityFailed(format!("H H^T = {order} I")));
        }
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.entries[r * self.order + c]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.order, self.order, |r, c| i64::from(self.get(r, c)))
    }
}

/// Borders `S = A₁ − A₂` of a doubly regular tournament:
///
/// ```text
///   H = ⎡  1   1ᵀ    ⎤
///       ⎣ −1   S + I ⎦
/// ```
///
/// so the first row is all `+1` and the diagonal is all `+1`.
pub fn skew_hadamard_from_tournament(s: &Scheme) -> Result<SkewHadamardMatrix> {
    require_class2_nonsymmetric(s)?;
    let m = s.n();
    let order = m + 1;
    let mut entries = vec![0i8; order * order];
    for r in 0..order {
        for c in 0..order {
            entries[r * order + c] = match (r, c) {
                (0, _) => 1,
                (_, 0) => -1,
                (r, c) if r == c => 1,
                (r, c) => match s.relation().get(r - 1, c - 1) {
                    1 => 1,
                    _ => -1,
                },
            };
        }
    }
    SkewHadamardMatrix::new(order, entries)
}
