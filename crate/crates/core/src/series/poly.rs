use std::fmt;

use serde::Serialize;

/// A truncated Hilbert–Poincaré series `Σ c_i t^i`, exact in degrees `0..coefficients.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincarePoly {
    pub coefficients: Vec<usize>,
    /// The `n_max` the coefficients were computed with.
    pub truncation: usize,
}

impl PoincarePoly {
    pub fn new(coefficients: Vec<usize>, truncation: usize) -> Self {
        PoincarePoly { coefficients, truncation }
    }

    pub fn coefficient(&self, i: usize) -> usize {
        self.coefficients.get(i).copied().unwrap_or(0)
    }

    pub fn degrees(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficients reduced modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        self.coefficients.iter().map(|c| *c as u64 % p).collect()
    }

    /// `self + k·t·other`, truncated to the degrees of `self`.
    pub fn plus_shifted(&self, k: usize, other: &PoincarePoly) -> PoincarePoly {
        let coefficients = (0..self.degrees())
            .map(|i| self.coefficients[i] + if i == 0 { 0 } else { k * other.coefficient(i - 1) })
            .collect();
        PoincarePoly { coefficients, truncation: self.truncation }
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
