//! Series identities for triangular algebras with a repeated bimodule.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::poly::PoincarePoly;
use crate::algcore::{end_algebra, intertwiners, kron, mat_to_vec, opposite, BasisAlgebra, Bimodule, EndSide};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Solver};
use crate::hochschild::{ext_dims, hh_dims, Budget};
use crate::trireduce::triangular_hh;

pub fn poincare_poly<F: Field>(t: &Arc<BasisAlgebra<F>>, n_max: usize, budget: Budget) -> Result<PoincarePoly> {
    Ok(PoincarePoly::new(hh_dims(t, n_max, budget)?, n_max))
}

/// `Σ t^i dim Ext^i(M, M)`.
pub fn ext_series<F: Field>(m: &Bimodule<F>, n_max: usize, budget: Budget) -> Result<PoincarePoly> {
    Ok(PoincarePoly::new(ext_dims(m, m, n_max, budget)?, n_max))
}

/// Both sides of `χ[A M^k; 0 B] = χ[A M; 0 B] + t(k² − 1)·Ξ(M)`, computed independently.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesCheck {
    pub lhs: PoincarePoly,
    pub rhs: PoincarePoly,
    pub per_degree: Vec<bool>,
}

impl SeriesCheck {
    pub fn holds(&self) -> bool {
        self.per_degree.iter().all(|b| *b)
    }
}

pub fn kronecker_series_check<F: Field>(m: &Bimodule<F>, mult: usize, n_max: usize, budget: Budget) -> Result<SeriesCheck> {
    if mult == 0 {
        return Err(Error::InvalidArgument("multiplicity must be at least 1".into()));
    }
    let lhs = PoincarePoly::new(triangular_hh(&m.power(mult), n_max, budget)?, n_max);
    let base = PoincarePoly::new(triangular_hh(m, n_max, budget)?, n_max);
    let xi = ext_series(m, n_max, budget)?;
    let rhs = base.plus_shifted(mult * mult - 1, &xi);
    let per_degree = (0..lhs.degrees()).map(|i| lhs.coefficient(i) == rhs.coefficient(i)).collect();
    Ok(SeriesCheck { lhs, rhs, per_degree })
}

/// The series of `[A M^k; 0 B]` for each requested `k`.
pub fn multiplicity_family<F: Field>(
    m: &Bimodule<F>,
    mults: &[usize],
    n_max: usize,
    budget: Budget,
) -> Result<BTreeMap<usize, PoincarePoly>> {
    mults
        .iter()
        .map(|&k| Ok((k, PoincarePoly::new(triangular_hh(&m.power(k), n_max, budget)?, n_max))))
        .collect()
}

/// Comparisons `χ(k) ≡ χ(k′) mod p` for every pair with `k² ≡ k′² mod p`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub p: u64,
    /// `(k, k′, coefficients agree mod p)`.
    pub comparisons: Vec<(usize, usize, bool)>,
}

impl PeriodicityReport {
    pub fn holds(&self) -> bool {
        self.comparisons.iter().all(|(_, _, ok)| *ok)
    }
}

pub fn modp_periodicity_check(family: &BTreeMap<usize, PoincarePoly>, p: u64) -> Result<PeriodicityReport> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("modulus {p} is not a prime")));
    }
    let keys: Vec<usize> = family.keys().copied().collect();
    let mut comparisons = Vec::new();
    for (i, &k) in keys.iter().enumerate() {
        for &k2 in &keys[i + 1..] {
            let (s, s2) = ((k as u64 * k as u64) % p, (k2 as u64 * k2 as u64) % p);
            if s == s2 {
                comparisons.push((k, k2, family[&k].reduce_mod(p) == family[&k2].reduce_mod(p)));
            }
        }
    }
    Ok(PeriodicityReport { p, comparisons })
}

/// `dim HH^n T = dim HH^n A + (k² − 1) dim HH^{n−1} B` for `T = [A M^k; 0 B]` with
/// `B = (End_A M)^o`, and `dim HH^n B = dim Ext^n(M, M)` over `A ⊗ B^o`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ProjectiveSplitReport {
    pub hh_t: Vec<usize>,
    pub hh_a: Vec<usize>,
    pub hh_b: Vec<usize>,
    pub ext_mm: Vec<usize>,
    pub identity_holds: Vec<bool>,
    pub end_identity_holds: Vec<bool>,
}

impl ProjectiveSplitReport {
    pub fn holds(&self) -> bool {
        self.identity_holds.iter().chain(&self.end_identity_holds).all(|b| *b)
    }
}

/// Only the left `A`-action of `m` is used; its right action is replaced by `(End_A M)^o`.
pub fn projective_split_check<F: Field>(
    a: &Arc<BasisAlgebra<F>>,
    m: &Bimodule<F>,
    mult: usize,
    n_max: usize,
    budget: Budget,
) -> Result<ProjectiveSplitReport> {
    if mult == 0 {
        return Err(Error::InvalidArgument("multiplicity must be at least 1".into()));
    }
    if !Arc::ptr_eq(a, m.left_algebra()) && **a != **m.left_algebra() {
        return Err(Error::IncompatibleBimodule("the module is not over the given algebra".into()));
    }
    check_projective(a, m)?;
    let bimodule = over_endomorphisms(a, m)?;
    let k2 = mult * mult - 1;
    let hh_t = triangular_hh(&bimodule.power(mult), n_max, budget)?;
    let hh_a = hh_dims(a, n_max, budget)?;
    let hh_b = hh_dims(bimodule.right_algebra(), n_max, budget)?;
    let ext_mm = ext_dims(&bimodule, &bimodule, n_max, budget)?;
    let identity_holds = (0..hh_t.len())
        .map(|n| hh_t[n] == hh_a[n] + if n == 0 { 0 } else { k2 * hh_b[n - 1] })
        .collect();
    let end_identity_holds = hh_b.iter().zip(&ext_mm).map(|(x, y)| x == y).collect();
    Ok(ProjectiveSplitReport { hh_t, hh_a, hh_b, ext_mm, identity_holds, end_identity_holds })
}

/// `M` as an `A`–`B` bimodule with `B = (End_A M)^o` acting by evaluation.
pub fn over_endomorphisms<F: Field>(a: &Arc<BasisAlgebra<F>>, m: &Bimodule<F>) -> Result<Bimodule<F>> {
    let end = end_algebra(m, EndSide::OverA);
    let b = Arc::new(opposite(&end.algebra));
    Bimodule::from_matrices(a.clone(), b, m.labels().to_vec(), m.left_matrices().to_vec(), end.matrices)
}

/// Solves for an `A`-linear section of the evaluation map `A^{dim M} → M`.
fn check_projective<F: Field>(a: &Arc<BasisAlgebra<F>>, m: &Bimodule<F>) -> Result<()> {
    let f = *a.field();
    let (da, dm) = (a.dim(), m.dim());
    if dm == 0 {
        return Ok(());
    }
    // The free module A^{dm} has basis (k, e_i) at k·da + i; π(k, e_i) = e_i·m_k.
    let free_actions: Vec<Mat<F>> =
        (0..da).map(|i| kron(&Mat::identity(f, dm), &a.left_mult(&a.basis_vec(i)))).collect();
    let unit_actions: Vec<Mat<F>> = (0..da).map(|i| m.left_basis_action(i).clone()).collect();
    let mut pi_cols = Vec::with_capacity(dm * da);
    for k in 0..dm {
        for i in 0..da {
            pi_cols.push(unit_actions[i].column(k));
        }
    }
    let pi = Mat::from_columns(f, dm, &pi_cols);
    let ops: Vec<(&Mat<F>, &Mat<F>)> = unit_actions.iter().zip(&free_actions).collect();
    let sections = intertwiners(f, dm, dm * da, &ops);
    let composites: Vec<_> = sections.iter().map(|s| mat_to_vec(&pi.mul(s))).collect();
    let solver = Solver::from_columns(f, dm * dm, &composites);
    match solver.solve(&mat_to_vec(&Mat::identity(f, dm))) {
        Some(_) => Ok(()),
        None => Err(Error::NotProjective("no A-linear section of a free cover exists".into())),
    }
}
