use crate::util::subsets_of_size;

use super::intdet::is_zero_or_power_of_two;
use super::{BareissKernel, Dyadic, Matrix, PrimeFieldMatrix};

impl Matrix<Dyadic> {
    /// True iff every maximal (`rows x rows`) subdeterminant lies in `{0} ∪ {±2^k}`.
    ///
    /// Exhaustive over all column subsets, stopping at the first violation.
    pub fn is_weak_dyadic(&self) -> bool {
        let r = self.rows();
        if r > self.cols() {
            return false;
        }
        let kernel = BareissKernel::from_dyadic(self);
        subsets_of_size(self.cols(), r).all(|cols| is_zero_or_power_of_two(&kernel.det_of(&cols)))
    }

    /// Column subsets (as bitmasks) with a nonzero maximal subdeterminant.
    pub fn nonzero_maximal_minors(&self) -> Vec<u64> {
        let kernel = BareissKernel::from_dyadic(self);
        subsets_of_size(self.cols(), self.rows())
            .filter(|cols| !num_traits::Zero::is_zero(&kernel.det_of(cols)))
            .map(|cols| crate::util::mask_of(&cols))
            .collect()
    }

    pub fn project_mod_p(&self, p: u64) -> PrimeFieldMatrix {
        PrimeFieldMatrix::project(self, p)
    }
}

impl PrimeFieldMatrix {
    pub fn nonzero_maximal_minors(&self) -> Vec<u64> {
        subsets_of_size(self.cols(), self.rows())
            .filter(|cols| self.rank_of(cols) == self.rows())
            .map(|cols| crate::util::mask_of(&cols))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_weak_dyadic() {
        assert!(Matrix::<Dyadic>::identity(2).is_weak_dyadic());
    }

    #[test]
    fn entry_three_breaks_dyadicity() {
        let m = Matrix::<Dyadic>::from_ints(&[&[1, 0, 2], &[0, 1, 3]]);
        assert!(!m.is_weak_dyadic());
    }

    #[test]
    fn nonfano_is_weak_dyadic() {
        let m = Matrix::<Dyadic>::from_ints(&[
            &[1, 0, 0, 0, 1, 1, 1],
            &[0, 1, 0, 1, 0, 1, 1],
            &[0, 0, 1, 1, 1, 0, 1],
        ]);
        assert!(m.is_weak_dyadic());
        assert_eq!(m.nonzero_maximal_minors().len(), 29);
    }
}
