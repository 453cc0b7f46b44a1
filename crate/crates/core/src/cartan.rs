//! Root data of types A–D and the parabolic data of a commutative node.
//!
//! Conventions: `a[i][j] = α_j(H_i)`, so the simple root `α_j` has
//! fundamental-weight coordinates given by column `j` of the Cartan matrix,
//! `(α_i, α_j) = d_i a_ij` and `(ϖ_i, α_j) = d_i δ_ij`. Node labels are 1-based
//! in the public interface.

use crate::error::{QpvError, Result};
use crate::linalg::Matrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    pub fn parse(s: &str) -> Option<Series> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(Series::A),
            "B" => Some(Series::B),
            "C" => Some(Series::C),
            "D" => Some(Series::D),
            _ => None,
        }
    }

    pub fn letter(&self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootDatum {
    pub series: Series,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    /// `(ϖ_i, ϖ_j)`, equal to `d_i (a^{-1})_{ij}`.
    gram_fund: Vec<Vec<BigRational>>,
    positive_roots: Vec<Vec<i64>>,
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn cartan_matrix(series: &Series, l: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut a = vec![vec![0i64; l]; l];
    for i in 0..l {
        a[i][i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    let mut d = vec![1i64; l];
    match series {
        Series::A => {
            for i in 0..l.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        Series::B => {
            // α_l short
            for i in 0..l - 2 {
                link(i, i + 1, -1, -1);
            }
            link(l - 2, l - 1, -1, -2);
            for x in d.iter_mut().take(l - 1) {
                *x = 2;
            }
        }
        Series::C => {
            // α_l long
            for i in 0..l - 2 {
                link(i, i + 1, -1, -1);
            }
            link(l - 2, l - 1, -2, -1);
            d[l - 1] = 2;
        }
        Series::D => {
            for i in 0..l - 2 {
                link(i, i + 1, -1, -1);
            }
            link(l - 3, l - 1, -1, -1);
        }
    }
    (a, d)
}

/// Standard Cartan data for the supported types: A1–A6, B2–B4, C2–C4, D4.
pub fn build_root_datum(series: Series, rank: usize) -> Result<RootDatum> {
    let ok = match series {
        Series::A => (1..=6).contains(&rank),
        Series::B | Series::C => (2..=4).contains(&rank),
        Series::D => rank == 4,
    };
    if !ok {
        return Err(QpvError::UnsupportedType { series: series.letter(), rank });
    }
    let (cartan, d) = cartan_matrix(&series, rank);
    let am: Matrix<BigRational> =
        Matrix::from_rows(cartan.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect());
    let inv = am.inverse().expect("Cartan matrix is invertible");
    let gram_fund = (0..rank)
        .map(|i| (0..rank).map(|j| r(d[i]) * inv.get(i, j)).collect())
        .collect();
    let mut datum = RootDatum { series, rank, cartan, d, gram_fund, positive_roots: Vec::new() };
    datum.positive_roots = datum.enumerate_positive_roots();
    Ok(datum)
}

impl RootDatum {
    pub fn label(&self) -> String {
        format!("{}{}", self.series.letter(), self.rank)
    }

    /// `α_j` in fundamental-weight coordinates (0-based `j`).
    pub fn simple_root(&self, j: usize) -> Weight {
        (0..self.rank).map(|i| self.cartan[i][j]).collect()
    }

    pub fn rho(&self) -> Weight {
        vec![1; self.rank]
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = vec![0; self.rank];
        w[i] = 1;
        w
    }

    /// Converts simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, coeffs: &[i64]) -> Weight {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.cartan[i][j] * coeffs[j]).sum()).collect()
    }

    /// Converts a weight in the root lattice to simple-root coordinates.
    pub fn weight_to_root(&self, w: &[i64]) -> Option<Vec<i64>> {
        let am: Matrix<BigRational> = Matrix::from_rows(
            self.cartan.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect(),
        );
        let x = am.solve(&w.iter().map(|&c| r(c)).collect::<Vec<_>>())?;
        x.iter()
            .map(|c| if c.is_integer() { i64::try_from(c.to_integer()).ok() } else { None })
            .collect()
    }

    /// `s = |P/Q|`, the determinant of the Cartan matrix.
    pub fn s(&self) -> i64 {
        determinant(&self.cartan)
    }

    pub fn inner(&self, lambda: &[i64], mu: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &li) in lambda.iter().enumerate() {
            if li == 0 {
                continue;
            }
            for (j, &mj) in mu.iter().enumerate() {
                if mj != 0 {
                    acc += &self.gram_fund[i][j] * r(li * mj);
                }
            }
        }
        acc
    }

    /// Form on simple roots, `(α_i, α_j) = d_i a_ij`.
    pub fn root_form(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.cartan[i][j]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        self.positive_roots.iter().any(|b| b == coeffs || *b == neg)
    }

    /// Root-string closure from the simple roots, level by level in height.
    fn enumerate_positive_roots(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut roots: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                let mut e = vec![0; l];
                e[i] = 1;
                e
            })
            .collect();
        let mut seen: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut level = roots.clone();
        while !level.is_empty() {
            let mut next = Vec::new();
            for beta in &level {
                for i in 0..l {
                    // p = largest k with beta - k α_i a root
                    let mut p = 0;
                    loop {
                        let mut down = beta.clone();
                        down[i] -= p + 1;
                        if down.iter().all(|&c| c >= 0) && seen.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..l).map(|j| self.cartan[i][j] * beta[j]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            level = next;
        }
        roots.sort_by_key(|b| (b.iter().sum::<i64>(), b.iter().map(|c| -c).collect::<Vec<_>>()));
        roots
    }

    pub fn highest_root(&self) -> Vec<i64> {
        let top = self.positive_roots.iter().max_by_key(|b| b.iter().sum::<i64>()).expect("nonempty");
        debug_assert!(self.positive_roots.iter().all(|b| b.iter().zip(top).all(|(x, y)| x <= y)));
        top.clone()
    }

    /// 1-based nodes whose coefficient in the highest root is 1.
    pub fn admissible_nodes(&self) -> Vec<usize> {
        self.highest_root().iter().enumerate().filter(|(_, &c)| c == 1).map(|(i, _)| i + 1).collect()
    }

    pub fn coxeter_number(&self) -> usize {
        2 * self.positive_roots.len() / self.rank
    }

    /// `w(λ)` is dominant when all coordinates are non-negative.
    pub fn is_dominant(&self, w: &[i64]) -> bool {
        w.iter().all(|&c| c >= 0)
    }

    /// Height of `λ − w₀λ` for dominant `λ`. Since `−w₀ϖ_j = ϖ_{j*}` and the
    /// heights of `ϖ_j`, `ϖ_{j*}` agree, this is `2 Σ_j λ_j ht(ϖ_j)`.
    pub fn depth_bound(&self, lambda: &[i64]) -> usize {
        let am: Matrix<BigRational> = Matrix::from_rows(
            self.cartan.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect(),
        );
        let inv = am.inverse().expect("invertible");
        let mut total = BigRational::zero();
        for (j, &lj) in lambda.iter().enumerate() {
            let ht: BigRational = (0..self.rank).map(|i| inv.get(i, j).clone()).fold(BigRational::zero(), |a, b| a + b);
            total += ht * r(2 * lj);
        }
        usize::try_from(total.to_integer()).expect("non-negative depth")
    }

    /// Symmetry and positive definiteness checks.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let l = self.rank;
        for i in 0..l {
            for j in 0..l {
                if self.d[i] * self.cartan[i][j] != self.d[j] * self.cartan[j][i] {
                    return Err(format!("d_i a_ij not symmetric at ({}, {})", i + 1, j + 1));
                }
            }
        }
        for k in 1..=l {
            let minor: Vec<Vec<i64>> =
                (0..k).map(|i| (0..k).map(|j| self.root_form(i, j)).collect()).collect();
            if determinant(&minor) <= 0 {
                return Err(format!("leading minor {k} not positive"));
            }
        }
        for i in 0..l {
            for j in 0..l {
                let expected = if i == j { r(self.d[i]) } else { BigRational::zero() };
                if self.inner(&self.fundamental_weight(i), &self.simple_root(j)) != expected {
                    return Err("(ϖ_i, α_j) ≠ d_i δ_ij".into());
                }
            }
        }
        Ok(())
    }
}

/// Integer determinant by Bareiss elimination.
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

#[derive(Clone, Debug)]
pub struct ParabolicDatum {
    pub base: RootDatum,
    /// 1-based marked node.
    pub l0: usize,
    /// `H₀ = Σ c_i H_i`.
    pub h0_coeffs: Vec<BigRational>,
    pub h0_norm: BigRational,
    /// Positive roots with `α_{l0}`-coefficient 1, in ascending lexicographic order
    /// of their simple-root coefficient strings.
    pub pminus_roots: Vec<Vec<i64>>,
}

pub fn parabolic(datum: &RootDatum, l0: usize) -> Result<ParabolicDatum> {
    if l0 == 0 || l0 > datum.rank || !datum.admissible_nodes().contains(&l0) {
        return Err(QpvError::InadmissibleNode { series: datum.series.letter(), rank: datum.rank, node: l0 });
    }
    let k = l0 - 1;
    let am: Matrix<BigRational> =
        Matrix::from_rows(datum.cartan.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect());
    // Σ_i c_i a_ij = 2 δ_{j,l0}  ⇔  aᵀ c = 2 e_{l0}
    let mut rhs = vec![BigRational::zero(); datum.rank];
    rhs[k] = r(2);
    let c = am.transpose().solve(&rhs).expect("invertible");
    let w = datum.fundamental_weight(k);
    let dl = r(datum.d[k]);
    let h0_norm = datum.inner(&w, &w) * r(4) / (&dl * &dl);
    let mut pminus: Vec<Vec<i64>> = datum.positive_roots().iter().filter(|b| b[k] == 1).cloned().collect();
    pminus.sort();
    Ok(ParabolicDatum { base: datum.clone(), l0, h0_coeffs: c, h0_norm, pminus_roots: pminus })
}

impl ParabolicDatum {
    pub fn n(&self) -> usize {
        self.pminus_roots.len()
    }

    pub fn l0_index(&self) -> usize {
        self.l0 - 1
    }

    pub fn rank(&self) -> usize {
        self.base.rank
    }

    /// Levi indices `S` (0-based).
    pub fn levi(&self) -> Vec<usize> {
        (0..self.base.rank).filter(|&i| i != self.l0_index()).collect()
    }

    pub fn label(&self) -> String {
        format!("{}{} l0={}", self.base.series.letter(), self.base.rank, self.l0)
    }

    /// `μ(H₀)` for a weight in fundamental coordinates.
    pub fn h0_eigenvalue(&self, mu: &[i64]) -> BigRational {
        self.h0_coeffs.iter().zip(mu).map(|(c, &m)| c * r(m)).fold(BigRational::zero(), |a, b| a + b)
    }

    /// `r` with `H₀ v = 2 r v`, for weights whose `H₀`-eigenvalue is even.
    pub fn h0_grade(&self, mu: &[i64]) -> BigRational {
        self.h0_eigenvalue(mu) / r(2)
    }

    /// Levi-dominance: `λ_i ≥ 0` for `i ∈ S`.
    pub fn in_weight_cone(&self, lambda: &[i64]) -> bool {
        self.levi().iter().all(|&i| lambda[i] >= 0)
    }

    pub fn pminus_weights(&self) -> Vec<Weight> {
        self.pminus_roots.iter().map(|b| self.base.root_to_weight(b).iter().map(|x| -x).collect()).collect()
    }

    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let k = self.l0_index();
        if self.base.highest_root()[k] != 1 {
            return Err("highest-root coefficient at l0 is not 1".into());
        }
        for j in 0..self.base.rank {
            let alpha = self.base.simple_root(j);
            let expected = if j == k { r(2) } else { BigRational::zero() };
            if self.h0_eigenvalue(&alpha) != expected {
                return Err(format!("α_{}(H₀) wrong", j + 1));
            }
        }
        for a in &self.pminus_roots {
            for b in &self.pminus_roots {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if self.base.is_root(&s) {
                    return Err("𝔭⁺ is not commutative".into());
                }
            }
        }
        for beta in self.base.positive_roots() {
            let e = self.h0_eigenvalue(&self.base.root_to_weight(beta));
            let want = if beta[k] == 1 { r(2) } else { BigRational::zero() };
            if e != want {
                return Err("β(H₀) ∉ {0, 2} pattern".into());
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "series": self.base.series.letter().to_string(),
            "rank": self.base.rank,
            "l0": self.l0,
            "cartan": self.base.cartan,
            "d": self.base.d,
            "h0": self.h0_coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "h0_norm": self.h0_norm.to_string(),
            "pminus_roots": self.pminus_roots,
        })
    }
}

/// Rational number formatting helper shared by reports.
pub fn fmt_rat(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else if x.is_negative() {
        format!("-{}/{}", x.numer().abs(), x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
