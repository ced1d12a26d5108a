use std::collections::BTreeMap;

use super::interval::{AnQuiver, IntervalObject};
use crate::error::Result;

/// Graded dimensions of `Hom(A, B[d])`.
///
/// The path algebra is hereditary, so between two intervals only two
/// consecutive degrees can be nonzero; `dims[k]` is the dimension in degree
/// `base + k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomDims {
    base: i32,
    dims: [usize; 2],
}

impl HomDims {
    /// Dimensions for unshifted modules: `Hom^0` and `Ext^1`.
    pub fn from_module_degrees(hom: usize, ext: usize) -> Self {
        Self {
            base: 0,
            dims: [hom, ext],
        }
    }

    /// Re-express module-level dimensions for `Hom(A[k], B[l][d])`.
    pub fn shifted(self, source_shift: i32, target_shift: i32) -> Self {
        Self {
            base: self.base + source_shift - target_shift,
            dims: self.dims,
        }
    }

    pub fn degree(&self, d: i32) -> usize {
        match d - self.base {
            0 => self.dims[0],
            1 => self.dims[1],
            _ => 0,
        }
    }

    pub fn total(&self) -> usize {
        self.dims[0] + self.dims[1]
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    /// `(degree, dimension)` for every nonzero degree, ascending.
    pub fn nonzero(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(move |(k, &d)| (self.base + k as i32, d))
    }
}

/// Hom between module intervals `[a,b] -> [c,e]`, closed form.
///
/// Degree 0 is nonzero iff `a <= c <= b <= e`; degree 1 iff `a >= 2` and
/// `c <= a-1 <= e <= b-1` (equivalently `Hom([c,e], tau [a,b]) != 0`).
fn module_hom(x: &IntervalObject, y: &IntervalObject) -> HomDims {
    let (a, b, c, e) = (x.lo, x.hi, y.lo, y.hi);
    let hom = usize::from(a <= c && c <= b && b <= e);
    let ext = usize::from(a >= 2 && c < a && a - 1 <= e && e < b);
    HomDims::from_module_degrees(hom, ext)
}

impl AnQuiver {
    pub fn hom_dim(&self, x: &IntervalObject, y: &IntervalObject) -> Result<HomDims> {
        self.check(x)?;
        self.check(y)?;
        Ok(module_hom(x, y).shifted(x.shift, y.shift))
    }

    pub fn hom_table(&self) -> HomDegreeTable {
        let objs = self.indecomposables();
        let mut entries = BTreeMap::new();
        for x in &objs {
            for y in &objs {
                let dims = module_hom(x, y);
                if !dims.is_zero() {
                    entries.insert((*x, *y), dims.nonzero().map(|(d, _)| d).collect());
                }
            }
        }
        HomDegreeTable {
            n: self.rank(),
            entries,
        }
    }

    /// Intersection count of the diagonals of `x` and `y` at `q = 1`, both
    /// directions: shared endpoints count once, interior crossings twice.
    pub fn geometric_int_count(&self, x: &IntervalObject, y: &IntervalObject) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        let c = chord_intersections(x.chord(), y.chord());
        Ok(c.shared_endpoints + 2 * c.crossings)
    }
}

/// Degrees carrying a one-dimensional Hom between unshifted intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDegreeTable {
    pub n: usize,
    pub entries: BTreeMap<(IntervalObject, IntervalObject), Vec<i32>>,
}

impl HomDegreeTable {
    pub fn degrees(&self, x: &IntervalObject, y: &IntervalObject) -> &[i32] {
        self.entries
            .get(&(x.unshifted(), y.unshifted()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChordIntersections {
    pub shared_endpoints: usize,
    pub crossings: usize,
}

/// Intersections of two diagonals `{p,q}`, `{r,s}` of a convex polygon with
/// vertices labeled cyclically.
pub fn chord_intersections(a: (usize, usize), b: (usize, usize)) -> ChordIntersections {
    let (p, q) = (a.0.min(a.1), a.0.max(a.1));
    let (r, s) = (b.0.min(b.1), b.0.max(b.1));
    if (p, q) == (r, s) {
        return ChordIntersections {
            shared_endpoints: 2,
            crossings: 0,
        };
    }
    let shared = [r, s].iter().filter(|&&v| v == p || v == q).count();
    let inside = |v: usize| p < v && v < q;
    let crossings = usize::from(shared == 0 && inside(r) != inside(s));
    ChordIntersections {
        shared_endpoints: shared,
        crossings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> IntervalObject {
        IntervalObject::new(lo, hi).unwrap()
    }

    #[test]
    fn hom_examples() {
        let q = AnQuiver::new(2).unwrap();
        let id = q.hom_dim(&iv(1, 1), &iv(1, 1)).unwrap();
        assert_eq!((id.degree(0), id.degree(1), id.degree(-1)), (1, 0, 0));

        let ext = q.hom_dim(&iv(2, 2), &iv(1, 1)).unwrap();
        assert_eq!((ext.degree(0), ext.degree(1)), (0, 1));

        let top = q.hom_dim(&iv(1, 2), &iv(2, 2)).unwrap();
        assert_eq!(top.degree(0), 1);
    }

    #[test]
    fn shifts_translate_degrees() {
        let q = AnQuiver::new(2).unwrap();
        let s2 = iv(2, 2);
        let s1_shifted = iv(1, 1).shift_by(1);
        // Hom(S_2, S_1[1]) = Ext^1(S_2, S_1) sits in degree 0 after the shift.
        let h = q.hom_dim(&s2, &s1_shifted).unwrap();
        assert_eq!(h.degree(0), 1);
        assert_eq!(h.degree(1), 0);
        let h = q.hom_dim(&s2.shift_by(2), &iv(1, 1)).unwrap();
        assert_eq!(h.degree(3), 1);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let q = AnQuiver::new(2).unwrap();
        assert!(q.hom_dim(&iv(1, 3), &iv(1, 1)).is_err());
        assert!(q.geometric_int_count(&iv(1, 1), &iv(3, 3)).is_err());
    }

    #[test]
    fn table_has_identities_and_hereditary_degrees() {
        for n in 1..=6 {
            let q = AnQuiver::new(n).unwrap();
            let t = q.hom_table();
            for x in q.indecomposables() {
                assert!(t.degrees(&x, &x).contains(&0));
            }
            assert!(t.entries.values().flatten().all(|d| *d == 0 || *d == 1));
        }
    }

    #[test]
    fn intersection_examples() {
        let q2 = AnQuiver::new(2).unwrap();
        assert_eq!(q2.geometric_int_count(&iv(1, 1), &iv(2, 2)).unwrap(), 1);
        let q3 = AnQuiver::new(3).unwrap();
        assert_eq!(q3.geometric_int_count(&iv(1, 1), &iv(3, 3)).unwrap(), 0);
        // {0,2} and {1,3} cross in the interior: one morphism each way.
        assert_eq!(q3.geometric_int_count(&iv(1, 2), &iv(2, 3)).unwrap(), 2);
        // Nested diagonals {0,3} and {1,2} are disjoint.
        assert_eq!(q3.geometric_int_count(&iv(1, 3), &iv(2, 2)).unwrap(), 0);
    }
}
