// SPDX-License-Identifier: MIT OR Apache-2.0

//! Eigenmatrices of commutative schemes of class at most 3.
//!
//! Conventions: `A_i = Σ_ν P_{ν,i} E_ν`, `Q = n·P⁻¹`, `E_ν = (1/n) Σ_i Q_{i,ν} A_i`.
//! Row `ν` of `P` (as a column vector) is a common right eigenvector of the
//! intersection matrices: `B_i·P_{ν,·}ᵀ = P_{ν,i}·P_{ν,·}ᵀ`.
//!
//! Rows after the valency row are sorted descending by the lexicographic
//! order of `(a, b)` pairs of their entries, `ω` read as a positive
//! imaginary unit. This reproduces the conventional row order of all four
//! closed forms.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, rat, squarefree_decompose, QuadraticNumber, Rational};
use crate::exec::{map_range, Parallelism};
use crate::linalg::{factor_rational, IntMatrix, QuadMatrix};
use crate::scheme::{IntersectionTensor, Scheme};

/// Disc used when every eigenvalue is rational.
pub const RATIONAL_DISC: i64 = -1;

/// The four closed-form spectra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Doubly regular tournament on `m` points.
    Class2Nonsym,
    /// Extended double cover of a tournament on `m` points.
    Edc,
    /// Taylor analogue over a symmetric class-2 scheme on `m` points.
    Taylor,
    /// Doubling of a tournament on `m` points.
    Doubling,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Class2Nonsym,
        Family::Edc,
        Family::Taylor,
        Family::Doubling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Class2Nonsym => "class2-nonsym",
            Family::Edc => "edc",
            Family::Taylor => "taylor",
            Family::Doubling => "doubling",
        }
    }

    /// Number of points of the scheme built from parameter `m`.
    pub fn points(self, m: usize) -> usize {
        match self {
            Family::Class2Nonsym => m,
            Family::Edc | Family::Taylor => 2 * (m + 1),
            Family::Doubling => 2 * m + 1,
        }
    }

    pub fn disc(self, m: usize) -> i64 {
        let m = m as i64;
        match self {
            Family::Class2Nonsym | Family::Edc => -m,
            Family::Taylor => m,
            Family::Doubling => -(2 * m + 1),
        }
    }

    pub fn check_parameter(self, m: usize) -> Result<()> {
        let bad = |reason| {
            Err(Error::Inadmissible {
                name: "m",
                value: m as i64,
                reason,
            })
        };
        match self {
            Family::Taylor => {
                if m < 5 || m % 4 != 1 {
                    return bad("must be 1 mod 4 and at least 5");
                }
                if squarefree_decompose(m as i64).1 == 1 {
                    return bad("must not be a perfect square");
                }
                Ok(())
            }
            _ if m < 3 || m % 4 != 3 => bad("must be 3 mod 4"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown family {s:?}")))
    }
}

/// First and second eigenmatrices with valencies and multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    p: QuadMatrix,
    q: QuadMatrix,
    valencies: Vec<u64>,
    multiplicities: Vec<u64>,
    n: usize,
}

fn positive_integer(x: &QuadraticNumber, what: &str) -> Result<u64> {
    x.as_rational()
        .filter(|r| r.is_integer() && r.is_positive())
        .and_then(|r| r.to_integer().to_u64())
        .ok_or_else(|| Error::InconsistentEigenData(format!("{what} {x} is not a positive integer")))
}

impl EigenData {
    /// Completes `P` with `Q = nP⁻¹` and checks every structural invariant.
    pub fn from_p(p: QuadMatrix, n: usize) -> Result<Self> {
        if p.rows() != p.cols() {
            return Err(Error::NotSquare {
                rows: p.rows(),
                cols: p.cols(),
            });
        }
        let w = p.rows();
        if (0..w).any(|r| !p.get(r, 0).is_one()) {
            return Err(Error::InconsistentEigenData("column 0 of P must be all ones".into()));
        }
        let valencies = (0..w)
            .map(|i| positive_integer(p.get(0, i), "valency"))
            .collect::<Result<Vec<_>>>()?;
        if valencies.iter().sum::<u64>() != n as u64 {
            return Err(Error::InconsistentEigenData(format!(
                "valencies sum to {} but n = {n}",
                valencies.iter().sum::<u64>()
            )));
        }
        let n_rat = int(n as i64);
        let q = p.inverse()?.scale_rational(&n_rat);
        let multiplicities = (0..w)
            .map(|v| positive_integer(q.get(0, v), "multiplicity"))
            .collect::<Result<Vec<_>>>()?;
        if multiplicities.iter().sum::<u64>() != n as u64 {
            return Err(Error::InconsistentEigenData("multiplicities do not sum to n".into()));
        }
        let n_identity = QuadMatrix::identity(w, p.disc()).scale_rational(&n_rat);
        if p.try_mul(&q)? != n_identity || q.try_mul(&p)? != n_identity {
            return Err(Error::InconsistentEigenData("PQ != nI".into()));
        }
        Ok(EigenData {
            p,
            q,
            valencies,
            multiplicities,
            n,
        })
    }

    pub fn p(&self) -> &QuadMatrix {
        &self.p
    }

    pub fn q(&self) -> &QuadMatrix {
        &self.q
    }

    pub fn valencies(&self) -> &[u64] {
        &self.valencies
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.p.rows() - 1
    }

    pub fn disc(&self) -> i64 {
        self.p.disc()
    }

    /// `Σ_i P_{ν,i}·conj(P_{μ,i}) / k_i = δ_{νμ}·n/m_ν`.
    pub fn check_orthogonality(&self) -> Result<()> {
        let w = self.d() + 1;
        for nu in 0..w {
            for mu in 0..w {
                let mut acc = QuadraticNumber::zero(self.disc());
                for i in 0..w {
                    let term = (self.p.get(nu, i) * &self.p.get(mu, i).complex_conj())
                        .scale(&rat(1, self.valencies[i] as i64));
                    acc = &acc + &term;
                }
                let expect = if nu == mu {
                    rat(self.n as i64, self.multiplicities[nu] as i64)
                } else {
                    Rational::zero()
                };
                if acc != QuadraticNumber::from_rational(expect, self.disc()) {
                    return Err(Error::InconsistentEigenData(format!(
                        "row orthogonality fails for rows {nu}, {mu}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// For each row of `other`, the index of the equal row of `P`; `None`
    /// if the two matrices differ by more than a row permutation.
    pub fn row_alignment(&self, other: &QuadMatrix) -> Option<Vec<usize>> {
        if other.shape() != self.p.shape() {
            return None;
        }
        let w = self.p.rows();
        let mut used = vec![false; w];
        let mut map = Vec::with_capacity(w);
        for r in 0..w {
            let hit = (0..w).find(|&c| !used[c] && other.row(r) == self.p.row(c))?;
            used[hit] = true;
            map.push(hit);
        }
        Some(map)
    }

    /// Same `n` and the same `P` up to the order of rows.
    pub fn same_up_to_row_order(&self, other: &EigenData) -> bool {
        self.n == other.n && self.row_alignment(&other.p).is_some()
    }
}

impl fmt::Display for EigenData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, disc = {}", self.n, self.disc())?;
        writeln!(f, "valencies: {:?}", self.valencies)?;
        writeln!(f, "multiplicities: {:?}", self.multiplicities)?;
        writeln!(f, "P:")?;
        write!(f, "{}", self.p)?;
        writeln!(f, "Q:")?;
        write!(f, "{}", self.q)
    }
}

/// The closed-form first eigenmatrix of `family` at parameter `m`, with
/// `Q = nP⁻¹` and multiplicities from row 0 of `Q`.
pub fn closed_form_p(family: Family, m: usize) -> Result<EigenData> {
    family.check_parameter(m)?;
    let disc = family.disc(m);
    let mi = m as i64;
    let n = family.points(m);
    let c = |v: i64| QuadraticNumber::from_int(v, disc);
    let omega = QuadraticNumber::omega(disc);
    let p = match family {
        Family::Class2Nonsym | Family::Doubling => {
            let k = if family == Family::Doubling { mi } else { (mi - 1) / 2 };
            let alpha = QuadraticNumber::new(rat(-1, 2), rat(1, 2), disc);
            let alpha_bar = alpha.conj();
            QuadMatrix::from_rows(
                disc,
                vec![
                    vec![c(1), c(k), c(k)],
                    vec![c(1), alpha.clone(), alpha_bar.clone()],
                    vec![c(1), alpha_bar, alpha],
                ],
            )
        }
        Family::Edc | Family::Taylor => QuadMatrix::from_rows(
            disc,
            vec![
                vec![c(1), c(mi), c(mi), c(1)],
                vec![c(1), omega.clone(), -&omega, c(-1)],
                vec![c(1), -&omega, omega, c(-1)],
                vec![c(1), c(-1), c(-1), c(1)],
            ],
        ),
    };
    EigenData::from_p(p, n)
}

/// Primitive idempotents `E_ν = (1/n) Σ_i Q_{i,ν} A_i` of a commutative
/// scheme, verified against `e` by exact matrix algebra:
/// `E_νE_μ = δ_{νμ}E_ν`, `Σ E_ν = I`, `A_i = Σ_ν P_{ν,i}E_ν` and
/// `trace E_ν = m_ν`.
pub fn idempotents_from_p(s: &Scheme, e: &EigenData) -> Result<Vec<QuadMatrix>> {
    idempotents_from_p_with(s, e, Parallelism::default())
}

pub fn idempotents_from_p_with(
    s: &Scheme,
    e: &EigenData,
    mode: Parallelism,
) -> Result<Vec<QuadMatrix>> {
    s.certify_commutative()?;
    let w = s.d() + 1;
    if e.d() + 1 != w || e.n() != s.n() {
        return Err(Error::DimensionMismatch {
            op: "idempotents_from_p",
            left: (s.n(), w),
            right: (e.n(), e.d() + 1),
        });
    }
    let n = s.n();
    let disc = e.disc();
    let inv_n = rat(1, n as i64);
    let idempotents: Vec<QuadMatrix> = (0..w)
        .map(|nu| {
            let coeff: Vec<QuadraticNumber> = (0..w).map(|i| e.q().get(i, nu).scale(&inv_n)).collect();
            let data = s.relation().cells().iter().map(|&i| coeff[i].clone()).collect();
            QuadMatrix::new(n, n, disc, data)
        })
        .collect::<Result<_>>()?;

    let fail = |msg: String| Err(Error::InconsistentEigenData(msg));

    let products: Vec<Result<bool>> = map_range(w * w, mode, |k| {
        let (nu, mu) = (k / w, k % w);
        let prod = idempotents[nu].mul_with(&idempotents[mu], mode)?;
        Ok(if nu == mu { prod == idempotents[nu] } else { prod.is_zero() })
    });
    for (k, ok) in products.into_iter().enumerate() {
        if !ok? {
            return fail(format!("E_{} E_{} != delta E", k / w, k % w));
        }
    }

    let total = idempotents
        .iter()
        .try_fold(QuadMatrix::zeros(n, n, disc), |acc, m| acc.try_add(m))?;
    if !total.is_identity() {
        return fail("sum of idempotents is not I".into());
    }

    for i in 0..w {
        let rebuilt = idempotents.iter().enumerate().try_fold(
            QuadMatrix::zeros(n, n, disc),
            |acc, (nu, en)| acc.try_add(&en.scale(e.p().get(nu, i))?),
        )?;
        if rebuilt != QuadMatrix::from_int_matrix(s.adjacency(i), disc) {
            return fail(format!("A_{i} != sum_nu P_(nu,{i}) E_nu"));
        }
    }

    for (nu, en) in idempotents.iter().enumerate() {
        let tr = en.trace()?;
        if tr != QuadraticNumber::from_int(e.multiplicities()[nu] as i64, disc) {
            return fail(format!("trace E_{nu} = {tr}, multiplicity {}", e.multiplicities()[nu]));
        }
    }
    Ok(idempotents)
}

/// Intersection numbers from eigen data (`conj` is complex conjugation):
/// `p_{i,j}^l = (1/(n k_l)) Σ_ν m_ν conj(P_{ν,i}) conj(P_{ν,j}) P_{ν,l}`.
pub fn intersection_from_eigen(
    e: &EigenData,
    valencies: &[u64],
    n: usize,
) -> Result<IntersectionTensor> {
    let w = e.d() + 1;
    if valencies.len() != w || valencies != e.valencies() || n != e.n() {
        return Err(Error::InconsistentEigenData(format!(
            "valencies {valencies:?} / n = {n} do not match P (row 0 {:?}, n = {})",
            e.valencies(),
            e.n()
        )));
    }
    let disc = e.disc();
    let p = e.p();
    let p_conj = p.complex_conj();
    let mut values = Vec::with_capacity(w * w * w);
    for i in 0..w {
        for j in 0..w {
            for l in 0..w {
                let mut acc = QuadraticNumber::zero(disc);
                for nu in 0..w {
                    let term = &(p_conj.get(nu, i) * p_conj.get(nu, j)) * p.get(nu, l);
                    acc = &acc + &term.scale(&int(e.multiplicities()[nu] as i64));
                }
                let value = acc.scale(&rat(1, n as i64 * valencies[l] as i64));
                let integer = value
                    .as_rational()
                    .filter(|r| r.is_integer() && !r.is_negative())
                    .and_then(|r| r.to_integer().to_u64())
                    .ok_or_else(|| {
                        Error::InconsistentEigenData(format!(
                            "p_({i},{j})^{l} = {value} is not a nonnegative integer"
                        ))
                    })?;
                values.push(integer);
            }
        }
    }
    Ok(IntersectionTensor::new(w - 1, values))
}

fn descending_rows(a: &[QuadraticNumber], b: &[QuadraticNumber]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match y.lex_cmp(x) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Recovers the first eigenmatrix from the intersection matrices of a
/// commutative scheme of class at most 3.
///
/// The characteristic polynomial of each `B_i` is factored over `Q` into
/// linear and quadratic factors (all quadratic factors must share one
/// squarefree discriminant `D`); the space is then split into common
/// eigenspaces of `B_1, …, B_d`, each of which must be one-dimensional.
pub fn eigen_from_intersection(b: &[IntMatrix], valencies: &[u64], n: usize) -> Result<EigenData> {
    let w = b.len();
    if w == 0 || w > 4 {
        return Err(Error::Unsupported(format!("class {} (only 0..=3 supported)", w as i64 - 1)));
    }
    if valencies.len() != w || b.iter().any(|m| m.shape() != (w, w)) {
        return Err(Error::DimensionMismatch {
            op: "eigen_from_intersection",
            left: (w, w),
            right: (valencies.len(), valencies.len()),
        });
    }

    let mut factorizations = Vec::with_capacity(w);
    for bi in &b[1..] {
        factorizations.push(factor_rational(&bi.char_poly()?)?);
    }
    let mut fields: Vec<i64> = factorizations
        .iter()
        .flatten()
        .filter_map(|f| f.field_disc())
        .collect();
    fields.sort_unstable();
    fields.dedup();
    let disc = match fields.as_slice() {
        [] => RATIONAL_DISC,
        [d] => *d,
        many => {
            return Err(Error::Unsupported(format!(
                "eigenvalues span several quadratic fields {many:?}"
            )))
        }
    };

    let identity_basis: Vec<Vec<QuadraticNumber>> = (0..w)
        .map(|r| {
            (0..w)
                .map(|c| QuadraticNumber::from_int(i64::from(r == c), disc))
                .collect()
        })
        .collect();
    let mut spaces = vec![identity_basis];
    for (bi, factors) in b[1..].iter().zip(&factorizations) {
        let mut roots: Vec<QuadraticNumber> = Vec::new();
        for f in factors {
            for r in f.roots(disc)? {
                if !roots.contains(&r) {
                    roots.push(r.with_disc(disc)?);
                }
            }
        }
        let bq = QuadMatrix::from_int_matrix(bi, disc);
        let mut refined = Vec::new();
        for space in &spaces {
            let basis = QuadMatrix::new(w, space.len(), disc, {
                let mut data = Vec::with_capacity(w * space.len());
                for r in 0..w {
                    data.extend(space.iter().map(|v| v[r].clone()));
                }
                data
            })?;
            for lambda in &roots {
                let shifted = bq.try_sub(&QuadMatrix::identity(w, disc).scale(lambda)?)?;
                let restricted = shifted.try_mul(&basis)?;
                let coefficient_vectors = restricted.null_space();
                if coefficient_vectors.is_empty() {
                    continue;
                }
                let vectors = coefficient_vectors
                    .iter()
                    .map(|c| basis.apply(c))
                    .collect::<Result<Vec<_>>>()?;
                refined.push(vectors);
            }
        }
        let total: usize = refined.iter().map(Vec::len).sum();
        if total != w {
            return Err(Error::InconsistentEigenData(format!(
                "B_i is not diagonalizable over Q(sqrt {disc})"
            )));
        }
        spaces = refined;
    }
    if spaces.len() != w {
        return Err(Error::InconsistentEigenData(
            "common eigenspaces of the intersection matrices are not one-dimensional".into(),
        ));
    }

    let mut rows = Vec::with_capacity(w);
    for space in spaces {
        let v = &space[0];
        let lead_inv = v[0].inv().map_err(|_| {
            Error::InconsistentEigenData("common eigenvector with zero first coordinate".into())
        })?;
        let row: Vec<QuadraticNumber> = v.iter().map(|x| x * &lead_inv).collect();
        for (i, bi) in b.iter().enumerate() {
            let image = QuadMatrix::from_int_matrix(bi, disc).apply(&row)?;
            if image.iter().zip(&row).any(|(x, y)| x != &(y * &row[i])) {
                return Err(Error::InconsistentEigenData(format!(
                    "eigenvector check failed for B_{i}"
                )));
            }
        }
        rows.push(row);
    }

    let valency_row: Vec<QuadraticNumber> = valencies
        .iter()
        .map(|&k| QuadraticNumber::from_int(k as i64, disc))
        .collect();
    let trivial = rows
        .iter()
        .position(|r| *r == valency_row)
        .ok_or_else(|| Error::InconsistentEigenData("no eigenvalue row equals the valencies".into()))?;
    let first = rows.remove(trivial);
    rows.sort_by(|x, y| descending_rows(&x[1..], &y[1..]));
    rows.insert(0, first);
    let p = QuadMatrix::new(w, w, disc, rows.into_iter().flatten().collect())?;
    EigenData::from_p(p, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{doubling, extended_double_cover, paley_graph, paley_tournament, taylor_extension};
    use crate::linalg::IntPoly;

    fn qn(a: (i64, i64), b: (i64, i64), disc: i64) -> QuadraticNumber {
        QuadraticNumber::new(rat(a.0, a.1), rat(b.0, b.1), disc)
    }

    #[test]
    fn edc_closed_form_rows() {
        let e = closed_form_p(Family::Edc, 7).unwrap();
        let w = QuadraticNumber::omega(-7);
        assert_eq!(
            e.p().row(1),
            &[QuadraticNumber::one(-7), w.clone(), -&w, QuadraticNumber::from_int(-1, -7)]
        );
        assert_eq!(e.multiplicities(), &[1, 4, 4, 7]);
        assert_eq!(e.valencies(), &[1, 7, 7, 1]);
        let q0: Vec<QuadraticNumber> = [1, 4, 4, 7].iter().map(|&v| QuadraticNumber::from_int(v, -7)).collect();
        assert_eq!(e.q().row(0), q0.as_slice());
    }

    #[test]
    fn doubling_closed_form_eigenvalues() {
        let e = closed_form_p(Family::Doubling, 3).unwrap();
        assert_eq!(e.disc(), -7);
        assert_eq!(e.p().get(1, 1), &qn((-1, 2), (1, 2), -7));
        assert_eq!(e.p().get(1, 2), &qn((-1, 2), (-1, 2), -7));
    }

    #[test]
    fn inadmissible_parameters() {
        assert!(closed_form_p(Family::Edc, 5).is_err());
        assert!(closed_form_p(Family::Class2Nonsym, 1).is_err());
        assert!(closed_form_p(Family::Taylor, 7).is_err());
        assert!(closed_form_p(Family::Taylor, 9).is_err());
        assert!(closed_form_p(Family::Taylor, 13).is_ok());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("paley".parse::<Family>().is_err());
    }

    #[test]
    fn closed_forms_are_orthogonal() {
        for (f, m) in [
            (Family::Class2Nonsym, 7),
            (Family::Edc, 11),
            (Family::Taylor, 13),
            (Family::Doubling, 7),
        ] {
            let e = closed_form_p(f, m).unwrap();
            e.check_orthogonality().unwrap();
            assert_eq!(e.multiplicities().iter().sum::<u64>(), f.points(m) as u64);
        }
    }

    #[test]
    fn edc_idempotents() {
        let s = extended_double_cover(&paley_tournament(3).unwrap()).unwrap();
        let e = closed_form_p(Family::Edc, 3).unwrap();
        let es = idempotents_from_p(&s, &e).unwrap();
        // E_0 = J/8
        let j8 = QuadMatrix::from_int_matrix(&IntMatrix::ones(8, 8), -3).scale_rational(&rat(1, 8));
        assert_eq!(es[0], j8);
        assert_eq!(es[3].trace().unwrap(), QuadraticNumber::from_int(3, -3));
    }

    #[test]
    fn wrong_eigenmatrix_is_rejected() {
        let s = extended_double_cover(&paley_tournament(3).unwrap()).unwrap();
        let e = closed_form_p(Family::Edc, 3).unwrap();
        // negate the irrational entries of row 1 only: no longer a scheme's P
        let mut rows: Vec<Vec<QuadraticNumber>> = (0..4).map(|r| e.p().row(r).to_vec()).collect();
        rows[1][1] = -&rows[1][1];
        rows[1][2] = -&rows[1][2];
        let p = QuadMatrix::from_rows(-3, rows);
        match EigenData::from_p(p, 8) {
            Err(_) => {}
            Ok(bad) => assert!(idempotents_from_p(&s, &bad).is_err()),
        }
        // the Taylor form (√+3) is a valid P of a different scheme
        let taylor_like = QuadMatrix::from_rows(3, {
            let w = QuadraticNumber::omega(3);
            let c = |v| QuadraticNumber::from_int(v, 3);
            vec![
                vec![c(1), c(3), c(3), c(1)],
                vec![c(1), w.clone(), -&w, c(-1)],
                vec![c(1), -&w, w, c(-1)],
                vec![c(1), c(-1), c(-1), c(1)],
            ]
        });
        let other = EigenData::from_p(taylor_like, 8).unwrap();
        assert!(matches!(
            idempotents_from_p(&s, &other),
            Err(Error::InconsistentEigenData(_))
        ));
    }

    #[test]
    fn tensor_from_eigen_class2() {
        let e = closed_form_p(Family::Class2Nonsym, 7).unwrap();
        let t = intersection_from_eigen(&e, &[1, 3, 3], 7).unwrap();
        assert_eq!((t.get(1, 1, 1), t.get(1, 1, 2)), (1, 2));
        assert!(intersection_from_eigen(&e, &[1, 3, 3], 8).is_err());
    }

    #[test]
    fn tensor_from_eigen_edc_matches_b_matrices() {
        let e = closed_form_p(Family::Edc, 3).unwrap();
        let t = intersection_from_eigen(&e, &[1, 3, 3, 1], 8).unwrap();
        let b = t.intersection_matrices();
        assert_eq!(b[1], IntMatrix::from_rows(&[vec![0, 1, 0, 0], vec![0, 1, 1, 3], vec![3, 1, 1, 0], vec![0, 0, 1, 0]]));
        assert_eq!(b[2], IntMatrix::from_rows(&[vec![0, 0, 1, 0], vec![3, 1, 1, 0], vec![0, 1, 1, 3], vec![0, 1, 0, 0]]));
        assert_eq!(b[3], IntMatrix::from_rows(&[vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0]]));
        assert_eq!(t.get(3, 3, 0), 1);
    }

    #[test]
    fn tensor_from_eigen_matches_certified_schemes() {
        let cases = [
            (Family::Class2Nonsym, 11, paley_tournament(11).unwrap()),
            (Family::Edc, 7, extended_double_cover(&paley_tournament(7).unwrap()).unwrap()),
            (Family::Taylor, 13, taylor_extension(&paley_graph(13).unwrap()).unwrap()),
            (Family::Taylor, 5, taylor_extension(&paley_graph(5).unwrap()).unwrap()),
        ];
        for (f, m, s) in cases {
            let e = closed_form_p(f, m).unwrap();
            let t = intersection_from_eigen(&e, e.valencies(), e.n()).unwrap();
            assert_eq!(t, s.certify().unwrap(), "{f} m = {m}");
        }
    }

    #[test]
    fn char_polys_of_cover_b_matrices() {
        let s = extended_double_cover(&paley_tournament(3).unwrap()).unwrap();
        let b = s.certify().unwrap().intersection_matrices();
        assert_eq!(b[1].char_poly().unwrap(), IntPoly::from_i64(&[-9, -6, 0, -2, 1]));
        assert_eq!(b[3].char_poly().unwrap(), IntPoly::from_i64(&[1, 0, -2, 0, 1]));
    }

    #[test]
    fn eigen_recovery_edc3() {
        let s = extended_double_cover(&paley_tournament(3).unwrap()).unwrap();
        let b = s.certify().unwrap().intersection_matrices();
        let e = eigen_from_intersection(&b, &[1, 3, 3, 1], 8).unwrap();
        let closed = closed_form_p(Family::Edc, 3).unwrap();
        assert_eq!(e.p(), closed.p());
        let mut col1: Vec<String> = (0..4).map(|r| e.p().get(r, 1).to_string()).collect();
        col1.sort();
        assert_eq!(col1, vec!["-1", "-1·√-3", "1·√-3", "3"]);
    }

    #[test]
    fn eigen_recovery_tournament7() {
        let s = paley_tournament(7).unwrap();
        let b = s.certify().unwrap().intersection_matrices();
        let e = eigen_from_intersection(&b, &[1, 3, 3], 7).unwrap();
        assert_eq!(e.disc(), -7);
        assert_eq!(e.p().get(0, 1), &QuadraticNumber::from_int(3, -7));
        assert_eq!(e.p().get(1, 1), &qn((-1, 2), (1, 2), -7));
        assert_eq!(e.p().get(2, 1), &qn((-1, 2), (-1, 2), -7));
        assert_eq!(e.p(), closed_form_p(Family::Class2Nonsym, 7).unwrap().p());
    }

    #[test]
    fn eigen_recovery_matches_other_families() {
        let t = taylor_extension(&paley_graph(13).unwrap()).unwrap();
        let b = t.certify().unwrap().intersection_matrices();
        let e = eigen_from_intersection(&b, &[1, 13, 13, 1], 28).unwrap();
        assert_eq!(e.p(), closed_form_p(Family::Taylor, 13).unwrap().p());

        let dbl = doubling(&paley_tournament(7).unwrap()).unwrap();
        let b = dbl.certify().unwrap().intersection_matrices();
        let e = eigen_from_intersection(&b, &[1, 7, 7], 15).unwrap();
        assert!(e.same_up_to_row_order(&closed_form_p(Family::Doubling, 7).unwrap()));
    }

    #[test]
    fn eigen_recovery_of_symmetric_paley_graph() {
        let s = paley_graph(5).unwrap();
        let b = s.certify().unwrap().intersection_matrices();
        let e = eigen_from_intersection(&b, &[1, 2, 2], 5).unwrap();
        assert_eq!(e.disc(), 5);
        assert_eq!(e.p().get(1, 1), &qn((-1, 2), (1, 2), 5));
        assert_eq!(e.multiplicities(), &[1, 2, 2]);
    }

    #[test]
    fn rational_spectrum_uses_default_disc() {
        // K_4 as a class-1 scheme
        let b = vec![IntMatrix::identity(2), IntMatrix::from_rows(&[vec![0, 1], vec![3, 2]])];
        let e = eigen_from_intersection(&b, &[1, 3], 4).unwrap();
        assert_eq!(e.disc(), RATIONAL_DISC);
        assert_eq!(e.p().get(1, 1), &QuadraticNumber::from_int(-1, RATIONAL_DISC));
        assert_eq!(e.multiplicities(), &[1, 3]);
    }

    #[test]
    fn irreducible_cubic_is_unsupported() {
        // B_1 with characteristic polynomial (x − 1)(x³ − 2)
        let b1 = IntMatrix::from_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 2],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
        ]);
        let b = vec![IntMatrix::identity(4), b1.clone(), b1.clone(), b1];
        assert!(matches!(
            eigen_from_intersection(&b, &[1, 1, 1, 1], 4),
            Err(Error::Unsupported(_))
        ));
    }
}
