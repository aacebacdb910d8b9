//! Cone complexes assembled from blocks indexed by a family of bimodules `M_0, …, M_{k−1}`.
//!
//! The source of `λ` is made of `C(A)`, `C(B)` (the "ends") and triangular complexes
//! `C_tri(M_i, M_j)`; its target is made of the Hochschild complexes
//! `C(A, Hom_{B^o}(M_i, M_j))` and `C(B, Hom_A(M_i, M_j))`. A [`ConeShape`] says which blocks
//! are present:
//! * ends with all pairs of a subset gives a complex computing `HH` of the triangular algebra
//!   of the direct sum,
//! * ends with the diagonal pairs gives the modified cohomology of the subset,
//! * a single off-diagonal or diagonal pair without ends gives a `Σ`-complex,
//! * ends alone gives `C(A) × C(B)`.
//!
//! Maps between cones built by the same [`FamilyCones`] are identity blocks on the common
//! pieces: projections when the smaller shape is a quotient, inclusions for kernels.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;
use std::sync::Arc;

use super::cone::ConeComplex;
use super::tri::{hom_coords, triangular_cochain, TriangularCochainComplex};
use crate::algcore::{same_algebra, BasisAlgebra, Bimodule, BimoduleFamily};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::hochschild::{bar_cochain_complex, coefficient_map, BarBasis, Budget, ChainMap, CochainComplex};

/// One block of a family cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Piece {
    SrcA,
    Tri(usize, usize),
    SrcB,
    TgtA(usize, usize),
    TgtB(usize, usize),
}

/// Which blocks a family cone contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeShape {
    pub ends: bool,
    /// Sorted, without repetitions.
    pub pairs: Vec<(usize, usize)>,
}

impl ConeShape {
    pub fn new(ends: bool, mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        ConeShape { ends, pairs }
    }

    /// Ends plus the diagonal pairs of `subset`: the modified cohomology of `subset`.
    pub fn modified(subset: &[usize]) -> Self {
        Self::new(true, subset.iter().map(|&i| (i, i)).collect())
    }

    /// Ends plus all pairs of `subset`: `HH` of the triangular algebra of `⊕_{i ∈ subset} M_i`.
    pub fn full(subset: &[usize]) -> Self {
        Self::new(true, subset.iter().flat_map(|&i| subset.iter().map(move |&j| (i, j))).collect())
    }

    /// `Σ_{M_i, M_j}`, with cohomology `Ext^{*−1}(M_i, M_j)`.
    pub fn sigma(i: usize, j: usize) -> Self {
        Self::new(false, vec![(i, j)])
    }

    pub fn ends_only() -> Self {
        Self::new(true, Vec::new())
    }

    /// The blocks of `self` that are not in `other`.
    pub fn minus(&self, other: &ConeShape) -> Self {
        let pairs = self.pairs.iter().copied().filter(|p| !other.pairs.contains(p)).collect();
        Self::new(self.ends && !other.ends, pairs)
    }

    pub fn source_pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        if self.ends {
            out.push(Piece::SrcA);
        }
        out.extend(self.pairs.iter().map(|&(i, j)| Piece::Tri(i, j)));
        if self.ends {
            out.push(Piece::SrcB);
        }
        out
    }

    pub fn target_pieces(&self) -> Vec<Piece> {
        self.pairs.iter().flat_map(|&(i, j)| [Piece::TgtA(i, j), Piece::TgtB(i, j)]).collect()
    }

    fn max_index(&self) -> Option<usize> {
        self.pairs.iter().map(|&(i, j)| i.max(j)).max()
    }
}

struct PairData<F: Field> {
    tri: TriangularCochainComplex<F>,
    /// `a ↦ L_a`, from `C(A)` to `C(A, End_{B^o} M_i)`, for diagonal pairs.
    alpha: Option<ChainMap<F>>,
    /// `b ↦ R_b`, from `C(B)` to `C(B, End_A M_i)`, for diagonal pairs.
    beta: Option<ChainMap<F>>,
}

/// Builds and caches the blocks of the cones attached to a list of bimodules.
pub struct FamilyCones<F: Field> {
    a: Arc<BasisAlgebra<F>>,
    b: Arc<BasisAlgebra<F>>,
    members: Vec<Arc<Bimodule<F>>>,
    n_max: usize,
    budget: Budget,
    src_a: CochainComplex<F>,
    src_b: CochainComplex<F>,
    pairs: RefCell<BTreeMap<(usize, usize), Rc<PairData<F>>>>,
}

/// A family cone together with its block layout.
#[derive(Clone, Debug)]
pub struct BlockCone<F: Field> {
    pub shape: ConeShape,
    pub source_pieces: Vec<Piece>,
    pub target_pieces: Vec<Piece>,
    /// `piece_dims[k][n]`: dimension of the `k`-th piece (sources first) in its own degree `n`.
    piece_dims: Vec<Vec<usize>>,
    pub cone: ConeComplex<F>,
}

impl<F: Field> BlockCone<F> {
    pub fn complex(&self) -> &CochainComplex<F> {
        &self.cone.cone
    }

    pub fn top(&self) -> usize {
        self.cone.top()
    }

    /// Offset and dimension of `piece` inside cone degree `n`. Target pieces sit in their
    /// degree `n − 1`.
    pub fn locate(&self, piece: Piece, n: usize) -> Option<(usize, usize)> {
        let ns = self.source_pieces.len();
        if let Some(k) = self.source_pieces.iter().position(|p| *p == piece) {
            let off = (0..k).map(|i| self.piece_dims[i][n]).sum();
            return Some((off, self.piece_dims[k][n]));
        }
        let k = self.target_pieces.iter().position(|p| *p == piece)?;
        if n == 0 {
            return Some((self.cone.source.dim(0), 0));
        }
        let off = self.cone.source.dim(n) + (0..k).map(|i| self.piece_dims[ns + i][n - 1]).sum::<usize>();
        Some((off, self.piece_dims[ns + k][n - 1]))
    }

    fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        self.source_pieces.iter().chain(&self.target_pieces).copied()
    }
}

/// The map between two cones that is the identity on their common pieces and zero elsewhere.
pub fn coordinate_map<F: Field>(from: &BlockCone<F>, to: &BlockCone<F>) -> ChainMap<F> {
    let f = *from.complex().field();
    let top = from.top().min(to.top());
    let maps = (0..=top)
        .map(|n| {
            let mut trip = Vec::new();
            for piece in to.pieces() {
                if let (Some((ot, d)), Some((of, _))) = (to.locate(piece, n), from.locate(piece, n)) {
                    trip.extend((0..d).map(|i| (ot + i, of + i, f.one())));
                }
            }
            Mat::from_triplets(f, to.complex().dim(n), from.complex().dim(n), trip)
        })
        .collect();
    ChainMap::new(maps)
}

impl<F: Field> FamilyCones<F> {
    pub fn new(
        a: Arc<BasisAlgebra<F>>,
        b: Arc<BasisAlgebra<F>>,
        members: Vec<Arc<Bimodule<F>>>,
        n_max: usize,
        budget: Budget,
    ) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::InvalidArgument("max degree must be at least 2".into()));
        }
        for (i, m) in members.iter().enumerate() {
            if !same_algebra(&a, m.left_algebra()) || !same_algebra(&b, m.right_algebra()) {
                return Err(Error::IncompatibleBimodule(format!("member {i} is over different algebras")));
            }
        }
        let ra = Bimodule::regular(a.clone());
        let rb = Bimodule::regular(b.clone());
        let src_a = bar_cochain_complex(&a, &ra, n_max, true, budget)?;
        let src_b = bar_cochain_complex(&b, &rb, n_max, true, budget)?;
        Ok(FamilyCones { a, b, members, n_max, budget, src_a, src_b, pairs: RefCell::new(BTreeMap::new()) })
    }

    /// Cones over the members of `family`, each repeated according to its multiplicity.
    pub fn for_family(family: &BimoduleFamily<F>, n_max: usize, budget: Budget) -> Result<Self> {
        Self::new(family.left_algebra().clone(), family.right_algebra().clone(), family.expanded(), n_max, budget)
    }

    pub fn members(&self) -> &[Arc<Bimodule<F>>] {
        &self.members
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn field(&self) -> F {
        *self.a.field()
    }

    /// All member indices.
    pub fn all(&self) -> Vec<usize> {
        (0..self.members.len()).collect()
    }

    fn pair(&self, i: usize, j: usize) -> Result<Rc<PairData<F>>> {
        if let Some(p) = self.pairs.borrow().get(&(i, j)) {
            return Ok(p.clone());
        }
        let (mi, mj) = (&self.members[i], &self.members[j]);
        let tri = triangular_cochain(mi, mj, self.n_max, self.budget)?;
        let (alpha, beta) = if i == j {
            let alpha = self.endo_map(&self.a, &tri.hom_a, |x| mi.left_basis_action(x).clone());
            let beta = self.endo_map(&self.b, &tri.hom_b, |y| mi.right_basis_action(y).clone());
            (Some(alpha), Some(beta))
        } else {
            (None, None)
        };
        let data = Rc::new(PairData { tri, alpha, beta });
        self.pairs.borrow_mut().insert((i, j), data.clone());
        Ok(data)
    }

    /// The chain map `C(X) → C(X, H)` induced by `x ↦ action(x)` into the Hom space `H`.
    fn endo_map(
        &self,
        alg: &Arc<BasisAlgebra<F>>,
        space: &crate::exactla::Subspace<F>,
        action: impl Fn(usize) -> Mat<F>,
    ) -> ChainMap<F> {
        let f = self.field();
        let cols: Vec<_> = (0..alg.dim())
            .map(|x| hom_coords(space, &action(x)).expect("the action lies in the Hom space"))
            .collect();
        let phi = Mat::from_columns(f, space.dim(), &cols);
        let bar = BarBasis::new(alg.clone(), true);
        ChainMap::new((0..self.n_max).map(|n| coefficient_map(&bar, &phi, n)).collect())
    }

    fn piece_complex(&self, piece: Piece) -> Result<CochainComplex<F>> {
        Ok(match piece {
            Piece::SrcA => self.src_a.clone(),
            Piece::SrcB => self.src_b.clone(),
            Piece::Tri(i, j) => self.pair(i, j)?.tri.complex.clone(),
            Piece::TgtA(i, j) => self.pair(i, j)?.tri.a_complex.clone(),
            Piece::TgtB(i, j) => self.pair(i, j)?.tri.b_complex.clone(),
        })
    }

    /// The block of `λ^n` from source piece `from` to target piece `to`.
    fn lambda_block(&self, from: Piece, to: Piece, n: usize) -> Result<Option<Mat<F>>> {
        Ok(match (from, to) {
            (Piece::Tri(i, j), Piece::TgtA(k, l)) if (i, j) == (k, l) => Some(self.pair(i, j)?.tri.proj_a(n)),
            (Piece::Tri(i, j), Piece::TgtB(k, l)) if (i, j) == (k, l) => Some(self.pair(i, j)?.tri.proj_b(n)),
            (Piece::SrcA, Piece::TgtA(k, l)) if k == l => {
                self.pair(k, l)?.alpha.as_ref().map(|m| m.maps[n].clone())
            }
            (Piece::SrcB, Piece::TgtB(k, l)) if k == l => self.pair(k, l)?.beta.as_ref().map(|m| m.maps[n].clone()),
            _ => None,
        })
    }

    /// The cone of the given shape.
    pub fn cone(&self, shape: &ConeShape) -> Result<BlockCone<F>> {
        if let Some(k) = shape.max_index() {
            if k >= self.members.len() {
                return Err(Error::InvalidArgument(format!("member index {k} out of range")));
            }
        }
        let f = self.field();
        let top = self.n_max - 1;
        let source_pieces = shape.source_pieces();
        let target_pieces = shape.target_pieces();
        let src: Vec<CochainComplex<F>> =
            source_pieces.iter().map(|p| self.piece_complex(*p)).collect::<Result<_>>()?;
        let tgt: Vec<CochainComplex<F>> =
            target_pieces.iter().map(|p| self.piece_complex(*p)).collect::<Result<_>>()?;
        let source = sum_or_zero(f, top, &src)?;
        let target = sum_or_zero(f, top, &tgt)?;
        let mut maps = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let rd: Vec<usize> = tgt.iter().map(|c| c.dim(n)).collect();
            let cd: Vec<usize> = src.iter().map(|c| c.dim(n)).collect();
            let mut owned: Vec<Vec<Option<Mat<F>>>> = Vec::with_capacity(tgt.len());
            for to in &target_pieces {
                let row = source_pieces
                    .iter()
                    .map(|from| self.lambda_block(*from, *to, n))
                    .collect::<Result<Vec<_>>>()?;
                owned.push(row);
            }
            let blocks: Vec<Vec<Option<&Mat<F>>>> =
                owned.iter().map(|r| r.iter().map(|b| b.as_ref()).collect()).collect();
            maps.push(Mat::block(f, &rd, &cd, &blocks));
        }
        let piece_dims = src.iter().chain(&tgt).map(|c| c.dims().to_vec()).collect();
        let cone = ConeComplex::new(source, target, ChainMap::new(maps))?;
        Ok(BlockCone { shape: shape.clone(), source_pieces, target_pieces, piece_dims, cone })
    }

    /// The triangular complex `C_tri(M_i, M_j)`.
    pub fn triangular(&self, i: usize, j: usize) -> Result<TriangularCochainComplex<F>> {
        Ok(self.pair(i, j)?.tri.clone())
    }
}

/// Direct sum of `parts`, or the zero complex with the given top degree when there are none.
pub(crate) fn sum_or_zero<F: Field>(field: F, top: usize, parts: &[CochainComplex<F>]) -> Result<CochainComplex<F>> {
    if parts.is_empty() {
        return Ok(CochainComplex::zero(field, top));
    }
    let refs: Vec<&CochainComplex<F>> = parts.iter().collect();
    CochainComplex::direct_sum(&refs)
}
