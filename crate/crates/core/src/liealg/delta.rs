//! Extension of derivations from `[A M; 0 B]` to `[A N; 0 B]`: the membership test `N ∈ δ[M]`,
//! its five-term exact sequence, and stability checks.

use std::sync::Arc;

use super::decomposition::central_pairs;
use super::prime::PrimeDerivations;
use super::triangular::TriangularDerivation;
use crate::algcore::{hom_subspace, kron, mat_to_vec, vec_to_mat, Bimodule, EndSide};
use crate::error::Result;
use crate::exactla::{Field, Mat, Quotient, Solver, SparseVec, Subspace};
use crate::hochschild::SequenceReport;

/// Whether every `(α, β, μ)` over `M` admits some `ν` over `N`.
#[derive(Clone, Debug)]
pub struct DeltaReport<F: Field> {
    pub member: bool,
    /// A basis triple `(α, β, μ)` (with `m₀ = 0`) for which no `ν` exists.
    pub obstruction_witness: Option<TriangularDerivation<F>>,
    /// One `ν` per basis triple of the solution space over `M`, when `member` holds.
    pub extensions: Vec<Mat<F>>,
    /// `0 → Z[A M⊕N; 0 B] → Z[A M; 0 B] → End_Λ(N) → H¹{M,N} → HH¹[A M; 0 B] → 0`, built when
    /// `member` holds.
    pub sequence: Option<SequenceReport<F>>,
}

/// The linear system `ν L_a − L_a ν = L_{α(a)}`, `ν R_b − R_b ν = R_{β(b)}` for `ν ∈ End_K(N)`.
pub struct ExtensionSystem<F: Field> {
    n: Arc<Bimodule<F>>,
    solver: Solver<F>,
}

impl<F: Field> ExtensionSystem<F> {
    pub fn new(n: &Arc<Bimodule<F>>) -> Self {
        let f = *n.field();
        let d = n.dim();
        let mut trip = Vec::new();
        let mut row = 0;
        for act in n.left_matrices().iter().chain(n.right_matrices()) {
            let act_t = act.transpose();
            for r in 0..d {
                for c in 0..d {
                    for (t, v) in act_t.row(c).entries() {
                        trip.push((row, r * d + t, v.clone()));
                    }
                    for (t, v) in act.row(r).entries() {
                        trip.push((row, t * d + c, f.neg(v)));
                    }
                    row += 1;
                }
            }
        }
        let system = Mat::from_triplets(f, row, d * d, trip);
        ExtensionSystem { n: n.clone(), solver: Solver::new(&system) }
    }

    fn rhs(&self, alpha: &Mat<F>, beta: &Mat<F>) -> SparseVec<F::Elem> {
        let d = self.n.dim();
        let mut parts = Vec::new();
        for i in 0..alpha.cols() {
            parts.push(mat_to_vec(&self.n.alpha(&alpha.column(i))));
        }
        for j in 0..beta.cols() {
            parts.push(mat_to_vec(&self.n.beta(&beta.column(j))));
        }
        let refs: Vec<_> = parts.iter().map(|p| (p, d * d)).collect();
        SparseVec::concat(&refs)
    }

    /// Some `ν` compatible with `(α, β)`, if one exists.
    pub fn solve(&self, alpha: &Mat<F>, beta: &Mat<F>) -> Option<Mat<F>> {
        let d = self.n.dim();
        self.solver.solve(&self.rhs(alpha, beta)).map(|v| vec_to_mat(*self.n.field(), &v, d, d))
    }

    /// Whether `ν` is compatible with `(α, β)`.
    pub fn accepts(&self, alpha: &Mat<F>, beta: &Mat<F>, nu: &Mat<F>) -> bool {
        let d = self.n.dim();
        let left = self.n.left_matrices().iter().enumerate().all(|(i, l)| {
            nu.mul(l).sub(&l.mul(nu)) == self.n.alpha(&alpha.column(i))
        });
        let right = self.n.right_matrices().iter().enumerate().all(|(j, r)| {
            nu.mul(r).sub(&r.mul(nu)) == self.n.beta(&beta.column(j))
        });
        nu.rows() == d && nu.cols() == d && left && right
    }
}

/// `ν = α ⊗ id + id ⊗ β` on `A ⊗ B` (basis `a_i ⊗ b_j` at `i·dim B + j`).
pub fn free_module_extension<F: Field>(alpha: &Mat<F>, beta: &Mat<F>) -> Mat<F> {
    let f = *alpha.field();
    kron(alpha, &Mat::identity(f, beta.rows())).add(&kron(&Mat::identity(f, alpha.rows()), beta))
}

/// Decides `N ∈ δ[M]`; when it holds, builds and checks the five-term sequence.
pub fn delta_report<F: Field>(m: &Arc<Bimodule<F>>, n: &Arc<Bimodule<F>>) -> Result<DeltaReport<F>> {
    m.check_compatible(n)?;
    let (a, b) = (m.left_algebra().clone(), m.right_algebra().clone());
    let over_m = PrimeDerivations::new(a.clone(), b.clone(), vec![m.clone()], false)?;
    let system = ExtensionSystem::new(n);
    let mut extensions = Vec::new();
    for v in over_m.space().basis() {
        let triple = over_m.to_triangular(v);
        match system.solve(&triple.alpha, &triple.beta) {
            Some(nu) => extensions.push(nu),
            None => {
                return Ok(DeltaReport { member: false, obstruction_witness: Some(triple), extensions: Vec::new(), sequence: None })
            }
        }
    }
    let sequence = five_term_sequence(m, n, &over_m)?;
    Ok(DeltaReport { member: true, obstruction_witness: None, extensions, sequence: Some(sequence) })
}

/// Membership only.
pub fn is_member<F: Field>(m: &Arc<Bimodule<F>>, n: &Arc<Bimodule<F>>) -> Result<bool> {
    m.check_compatible(n)?;
    let over_m = PrimeDerivations::new(m.left_algebra().clone(), m.right_algebra().clone(), vec![m.clone()], false)?;
    let system = ExtensionSystem::new(n);
    Ok(over_m.space().basis().iter().all(|v| {
        let t = over_m.to_triangular(v);
        system.solve(&t.alpha, &t.beta).is_some()
    }))
}

fn five_term_sequence<F: Field>(
    m: &Arc<Bimodule<F>>,
    n: &Arc<Bimodule<F>>,
    over_m: &PrimeDerivations<F>,
) -> Result<SequenceReport<F>> {
    let f = *m.field();
    let (a, b) = (m.left_algebra().clone(), m.right_algebra().clone());
    let sum = Arc::new(m.direct_sum(n)?);
    let (_, z_sum) = central_pairs(&sum);
    let (_, z_m) = central_pairs(m);
    let end_n = hom_subspace(n, n, EndSide::OverBoth)?;
    let diag = PrimeDerivations::new(a.clone(), b, vec![m.clone(), n.clone()], true)?;

    let coords = |space: &Subspace<F>, v: &SparseVec<F::Elem>| {
        space.coordinates(v).map(|c| SparseVec::from_dense(&f, &c))
    };
    let columns_in = |space: &Subspace<F>, images: Vec<SparseVec<F::Elem>>| -> Result<Mat<F>> {
        let cols = images
            .iter()
            .map(|v| coords(space, v))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| crate::error::Error::BlockStructureViolated("a map leaves its target".into()))?;
        Ok(Mat::from_columns(f, space.dim(), &cols))
    };
    let in_quotient = |q: &Quotient<F>, images: Vec<SparseVec<F::Elem>>| -> Result<Mat<F>> {
        q.matrix_of(&images)
            .ok_or_else(|| crate::error::Error::BlockStructureViolated("a map leaves its target".into()))
    };

    let da = a.dim();
    let r0 = columns_in(&z_m, z_sum.basis().to_vec())?;
    let to_end: Vec<_> = z_m
        .basis()
        .iter()
        .map(|v| mat_to_vec(&n.alpha(&v.slice(0, da)).sub(&n.beta(&v.slice(da, usize::MAX)))))
        .collect();
    let to_end = columns_in(&end_n, to_end)?;
    let dn = n.dim();
    let to_h1: Vec<_> = end_n
        .basis()
        .iter()
        .map(|v| diag.embed_block(&vec_to_mat(f, v, dn, dn), 1, 1))
        .collect();
    let to_h1 = in_quotient(diag.hh1(), to_h1)?;
    let restrict: Vec<_> = diag.hh1().reps().iter().map(|r| diag.restrict(r, &[0])).collect();
    let restrict = in_quotient(over_m.hh1(), restrict)?;

    let dims = [z_sum.dim(), z_m.dim(), end_n.dim(), diag.hh1().dim(), over_m.hh1().dim()];
    let labels = ["Z(T[M+N])", "Z(T[M])", "End(N)", "H1{M,N}", "HH1(T[M])"];
    let mut nodes = vec![("0".to_string(), 0)];
    nodes.extend(labels.iter().zip(dims).map(|(l, d)| (l.to_string(), d)));
    nodes.push(("0".to_string(), 0));
    let maps = vec![
        Mat::zeros(f, dims[0], 0),
        r0,
        to_end,
        to_h1,
        restrict,
        Mat::zeros(f, 0, dims[4]),
    ];
    SequenceReport::from_maps(nodes, maps)
}

/// Stability verdicts for `δ[M]`.
#[derive(Clone, Debug, serde::Serialize, PartialEq, Eq)]
pub struct ClosureReport {
    pub pairs: Vec<PairClosure>,
    /// `(k, M^k ∈ δ[M])` for the requested powers.
    pub powers: Vec<(usize, bool)>,
}

#[derive(Clone, Debug, serde::Serialize, PartialEq, Eq)]
pub struct PairClosure {
    pub first: bool,
    pub second: bool,
    pub sum: bool,
}

impl PairClosure {
    /// Both members imply the sum is a member, and the sum being a member implies both are.
    pub fn consistent(&self) -> bool {
        (self.first && self.second) == self.sum
    }
}

impl ClosureReport {
    pub fn all_hold(&self) -> bool {
        self.pairs.iter().all(PairClosure::consistent) && self.powers.iter().all(|(_, ok)| *ok)
    }
}

/// For each `(N, N′)`: memberships of `N`, `N′`, `N ⊕ N′`. For each `k`: whether
/// `K^k ⊗_K M = M^k` is a member.
pub fn delta_closure_checks<F: Field>(
    m: &Arc<Bimodule<F>>,
    witnesses: &[(Arc<Bimodule<F>>, Arc<Bimodule<F>>)],
    powers: &[usize],
) -> Result<ClosureReport> {
    let mut pairs = Vec::new();
    for (n1, n2) in witnesses {
        let sum = Arc::new(n1.direct_sum(n2)?);
        pairs.push(PairClosure { first: is_member(m, n1)?, second: is_member(m, n2)?, sum: is_member(m, &sum)? });
    }
    let powers = powers
        .iter()
        .map(|&k| Ok((k, is_member(m, &Arc::new(m.power(k)))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClosureReport { pairs, powers })
}
