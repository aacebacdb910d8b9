//! Finite families of bimodules over a fixed pair of algebras.

use std::sync::Arc;

use super::algebra::BasisAlgebra;
use super::bimodule::{same_algebra, Bimodule};
use crate::error::{Error, Result};
use crate::exactla::Field;

/// An ordered family `E = {M_1, …, M_n}` of `A`–`B` bimodules with multiplicities.
#[derive(Clone, Debug)]
pub struct BimoduleFamily<F: Field> {
    a: Arc<BasisAlgebra<F>>,
    b: Arc<BasisAlgebra<F>>,
    members: Vec<Arc<Bimodule<F>>>,
    multiplicities: Vec<usize>,
}

impl<F: Field> BimoduleFamily<F> {
    pub fn new(
        a: Arc<BasisAlgebra<F>>,
        b: Arc<BasisAlgebra<F>>,
        members: Vec<Arc<Bimodule<F>>>,
        multiplicities: Vec<usize>,
    ) -> Result<Self> {
        if members.len() != multiplicities.len() {
            return Err(Error::InvalidArgument(format!(
                "{} members but {} multiplicities",
                members.len(),
                multiplicities.len()
            )));
        }
        if let Some(i) = multiplicities.iter().position(|m| *m == 0) {
            return Err(Error::InvalidArgument(format!("multiplicity of member {i} is zero")));
        }
        for (i, m) in members.iter().enumerate() {
            if !same_algebra(&a, m.left_algebra()) || !same_algebra(&b, m.right_algebra()) {
                return Err(Error::IncompatibleBimodule(format!("member {i} is over different algebras")));
            }
        }
        Ok(BimoduleFamily { a, b, members, multiplicities })
    }

    /// Each member with multiplicity one.
    pub fn simple(a: Arc<BasisAlgebra<F>>, b: Arc<BasisAlgebra<F>>, members: Vec<Arc<Bimodule<F>>>) -> Result<Self> {
        let ones = vec![1; members.len()];
        Self::new(a, b, members, ones)
    }

    pub fn empty(a: Arc<BasisAlgebra<F>>, b: Arc<BasisAlgebra<F>>) -> Self {
        BimoduleFamily { a, b, members: Vec::new(), multiplicities: Vec::new() }
    }

    pub fn left_algebra(&self) -> &Arc<BasisAlgebra<F>> {
        &self.a
    }

    pub fn right_algebra(&self) -> &Arc<BasisAlgebra<F>> {
        &self.b
    }

    pub fn field(&self) -> &F {
        self.a.field()
    }

    pub fn members(&self) -> &[Arc<Bimodule<F>>] {
        &self.members
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The members repeated according to their multiplicities.
    pub fn expanded(&self) -> Vec<Arc<Bimodule<F>>> {
        self.members
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(m, k)| std::iter::repeat_n(m.clone(), *k))
            .collect()
    }

    /// `⊕ M_i^{m_i}`.
    pub fn direct_sum(&self) -> Bimodule<F> {
        self.sum_over(&self.expanded())
    }

    /// `⊕ M_i`, ignoring multiplicities.
    pub fn base_sum(&self) -> Bimodule<F> {
        self.sum_over(&self.members)
    }

    fn sum_over(&self, parts: &[Arc<Bimodule<F>>]) -> Bimodule<F> {
        let mut acc = Bimodule::zero(self.a.clone(), self.b.clone());
        for p in parts {
            acc = acc.direct_sum(p).expect("members share the algebras");
        }
        acc
    }

    /// The subfamily on the given member indices, keeping multiplicities.
    pub fn subfamily(&self, indices: &[usize]) -> Result<Self> {
        let mut members = Vec::new();
        let mut mult = Vec::new();
        for &i in indices {
            let m = self
                .members
                .get(i)
                .ok_or_else(|| Error::InvalidArgument(format!("member index {i} out of range")))?;
            members.push(m.clone());
            mult.push(self.multiplicities[i]);
        }
        Self::new(self.a.clone(), self.b.clone(), members, mult)
    }
}
