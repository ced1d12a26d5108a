use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The shifted interval module `M_[lo,hi][shift]` in the bounded derived
/// category of the linearly oriented quiver `1 <- 2 <- ... <- n`.
///
/// `M_[i,j]` is the cone of `P_{i-1} -> P_j`; the projective `P_j` is
/// `M_[1,j]` and the simple `S_i` is `M_[i,i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntervalObject {
    pub lo: usize,
    pub hi: usize,
    pub shift: i32,
}

impl IntervalObject {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        Self::shifted(lo, hi, 0)
    }

    pub fn shifted(lo: usize, hi: usize, shift: i32) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Self { lo, hi, shift })
    }

    pub fn simple(i: usize) -> Result<Self> {
        Self::new(i, i)
    }

    pub fn projective(j: usize) -> Result<Self> {
        Self::new(1, j)
    }

    /// Number of vertices in the support.
    pub fn support_size(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_projective(&self) -> bool {
        self.lo == 1
    }

    pub fn shift_by(self, k: i32) -> Self {
        Self {
            shift: self.shift + k,
            ..self
        }
    }

    pub fn unshifted(self) -> Self {
        Self { shift: 0, ..self }
    }

    pub fn same_orbit(&self, other: &Self) -> bool {
        self.lo == other.lo && self.hi == other.hi
    }

    /// Endpoints of the diagonal `V_{lo-1} V_hi` of the `(n+1)`-gon.
    pub fn chord(&self) -> (usize, usize) {
        (self.lo - 1, self.hi)
    }
}

impl fmt::Display for IntervalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]", self.lo, self.hi)?;
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

/// Result of the Auslander-Reiten translate on an unshifted interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Translate {
    Object(IntervalObject),
    /// `M_[1,b] = P_b` is projective and has no translate in the module category.
    Projective,
}

/// The linearly oriented `A_n` quiver; carries the rank every interval is
/// checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AnQuiver {
    n: usize,
}

impl AnQuiver {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(n));
        }
        Ok(Self { n })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: &IntervalObject) -> bool {
        1 <= x.lo && x.lo <= x.hi && x.hi <= self.n
    }

    pub fn check(&self, x: &IntervalObject) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                rank: self.n,
                lo: x.lo,
                hi: x.hi,
            })
        }
    }

    /// All `n(n+1)/2` unshifted intervals in lexicographic order.
    pub fn indecomposables(&self) -> Vec<IntervalObject> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * (n + 1) / 2);
        for lo in 1..=n {
            for hi in lo..=n {
                out.push(IntervalObject { lo, hi, shift: 0 });
            }
        }
        out
    }

    /// Coxeter number `h = n + 1` of type `A_n`.
    pub fn coxeter_number(&self) -> usize {
        self.n + 1
    }
}

pub fn all_indecomposables(n: usize) -> Result<Vec<IntervalObject>> {
    Ok(AnQuiver::new(n)?.indecomposables())
}

pub fn coxeter_number(n: usize) -> usize {
    n + 1
}

/// `tau M_[a,b] = M_[a-1,b-1]` for `a >= 2`; projectives map to the marker.
pub fn ar_translate(x: IntervalObject) -> Translate {
    if x.lo == 1 {
        Translate::Projective
    } else {
        Translate::Object(IntervalObject {
            lo: x.lo - 1,
            hi: x.hi - 1,
            shift: x.shift,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> IntervalObject {
        IntervalObject::new(lo, hi).unwrap()
    }

    #[test]
    fn indecomposable_lists() {
        assert_eq!(all_indecomposables(1).unwrap(), vec![iv(1, 1)]);
        assert_eq!(
            all_indecomposables(2).unwrap(),
            vec![iv(1, 1), iv(1, 2), iv(2, 2)]
        );
        assert_eq!(all_indecomposables(5).unwrap().len(), 15);
        assert_eq!(all_indecomposables(0), Err(Error::InvalidRank(0)));
    }

    #[test]
    fn translate_examples() {
        assert_eq!(ar_translate(iv(2, 2)), Translate::Object(iv(1, 1)));
        assert_eq!(ar_translate(iv(1, 3)), Translate::Projective);
        assert_eq!(ar_translate(iv(3, 5)), Translate::Object(iv(2, 4)));
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(coxeter_number(2), 3);
        assert_eq!(coxeter_number(1), 2);
        assert_eq!(coxeter_number(9), 10);
        assert_eq!(AnQuiver::new(4).unwrap().coxeter_number(), 5);
    }

    #[test]
    fn orbit_equality_ignores_shift() {
        let a = IntervalObject::shifted(2, 3, 1).unwrap();
        let b = iv(2, 3);
        assert_ne!(a, b);
        assert!(a.same_orbit(&b));
        assert_eq!(a.unshifted(), b);
        assert_eq!(b.shift_by(1), a);
    }

    #[test]
    fn malformed_intervals_rejected() {
        assert!(IntervalObject::new(0, 2).is_err());
        assert!(IntervalObject::new(3, 2).is_err());
        let q = AnQuiver::new(3).unwrap();
        assert!(q.check(&iv(2, 4)).is_err());
        assert!(q.check(&iv(2, 3)).is_ok());
    }
}
