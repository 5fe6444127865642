//! The progress measure and branching-vector calculus.

use std::fmt;

use crate::termsep::TermSepInstance;

pub const ALPHA_T: f64 = 0.59950;
pub const ALPHA_NU: f64 = 0.29774;
pub const ALPHA_K: f64 = 0.10276;
/// Base of the running-time bound the vectors are checked against.
pub const BASE: f64 = 1.977;
/// A vector counts as good only when its sum stays below `1 - GOOD_MARGIN`.
pub const GOOD_MARGIN: f64 = 1e-6;

/// (t, ν, k) of an instance; ν is kept doubled so it stays integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Potential {
    pub t: usize,
    pub nu2: i64,
    pub k: i64,
}

impl Potential {
    pub fn of(inst: &TermSepInstance) -> Self {
        Potential { t: inst.unresolved_count(), nu2: inst.nu2(), k: inst.k }
    }

    /// ν = k − cost(A°, B°).
    pub fn nu(&self) -> f64 {
        self.nu2 as f64 / 2.0
    }

    pub fn mu(&self) -> f64 {
        ALPHA_T * self.t as f64 + ALPHA_NU * self.nu() + ALPHA_K * self.k as f64
    }

    /// Componentwise decrease from `self` to `child`.
    pub fn gain_to(&self, child: &Potential) -> Gain {
        Gain { t: self.t as i64 - child.t as i64, nu: self.nu2 - child.nu2, k: self.k - child.k }
    }
}

/// One side of a branching vector. `nu` counts half units of cost growth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Gain {
    pub t: i64,
    pub nu: i64,
    pub k: i64,
}

impl Gain {
    pub const fn new(t: i64, nu: i64, k: i64) -> Self {
        Gain { t, nu, k }
    }

    /// Decrease of μ this gain stands for.
    pub fn delta(&self) -> f64 {
        ALPHA_T * self.t as f64 + ALPHA_NU * self.nu as f64 / 2.0 + ALPHA_K * self.k as f64
    }

    pub fn dominates(&self, other: &Gain) -> bool {
        self.t >= other.t && self.nu >= other.nu && self.k >= other.k
    }
}

impl fmt::Display for Gain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.t, self.nu, self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchingVector(pub [Gain; 2]);

impl BranchingVector {
    pub const fn new(first: [i64; 3], second: [i64; 3]) -> Self {
        BranchingVector([Gain::new(first[0], first[1], first[2]), Gain::new(second[0], second[1], second[2])])
    }

    pub fn swapped(self) -> Self {
        BranchingVector([self.0[1], self.0[0]])
    }

    /// Σ BASE^(−δ_i).
    pub fn sum(&self) -> f64 {
        self.0.iter().map(|g| BASE.powf(-g.delta())).sum()
    }

    pub fn is_valid(&self) -> bool {
        self.0.iter().all(|g| g.t >= 0 && g.nu >= 0 && g.k >= 0)
    }
}

impl fmt::Display for BranchingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{}]", self.0[0], self.0[1])
    }
}

pub fn is_good_vector(v: &BranchingVector) -> bool {
    v.is_valid() && v.sum() < 1.0 - GOOD_MARGIN
}

/// The ten vectors every branching step is reduced to.
pub const GOOD_TABLE: [BranchingVector; 10] = [
    BranchingVector::new([1, 1, 0], [2, 1, 0]),
    BranchingVector::new([1, 1, 1], [1, 2, 3]),
    BranchingVector::new([1, 2, 0], [1, 3, 1]),
    BranchingVector::new([1, 1, 0], [1, 4, 3]),
    BranchingVector::new([1, 1, 2], [1, 2, 2]),
    BranchingVector::new([1, 1, 1], [1, 3, 2]),
    BranchingVector::new([1, 3, 0], [1, 3, 0]),
    BranchingVector::new([1, 1, 0], [1, 5, 2]),
    BranchingVector::new([1, 2, 1], [1, 2, 2]),
    BranchingVector::new([1, 1, 1], [1, 4, 1]),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_sum_to_one() {
        assert!((ALPHA_T + ALPHA_NU + ALPHA_K - 1.0).abs() < 1e-12);
    }

    #[test]
    fn table() {
        for v in GOOD_TABLE {
            assert!(is_good_vector(&v), "{v} sums to {}", v.sum());
            assert!(is_good_vector(&v.swapped()));
        }
        let bad = BranchingVector::new([1, 1, 0], [1, 1, 0]);
        assert!(!is_good_vector(&bad));
        assert!((bad.sum() - 1.2009).abs() < 1e-3);
        assert!(!is_good_vector(&BranchingVector::new([0, 1, 0], [0, 1, 0])));
    }

    #[test]
    fn fresh_compression_measure() {
        for k in 0..20i64 {
            let p = Potential { t: k as usize + 1, nu2: 2 * k, k };
            assert!(p.mu() < k as f64 + 1.0);
        }
    }
}
