use std::collections::BTreeMap;

use super::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactlin::RatMatrix;

/// The good truncation `τC` of a complex starting in degree -1: degree 0 becomes
/// `ker ∂_0`, degree -1 disappears, everything above is unchanged.
///
/// Also returns the inclusion `τC -> brutal(C)`.
pub fn good_truncation(c: &ChainComplex) -> Result<(ChainComplex, ChainMap)> {
    if c.lower() != -1 {
        return Err(Error::IllegalShift(format!("good truncation needs lower bound -1, found {}", c.lower())));
    }
    let brutal = brutal_truncation(c)?;
    let kernel = c.differential(0).kernel_basis();
    let mut dims = brutal.dims().to_vec();
    dims[0] = kernel.cols();
    let mut diff = brutal.differentials().clone();
    if c.truncation() >= 1 {
        diff.insert(1, kernel.solve(&c.differential(1))?);
    }
    let tau = ChainComplex::new(0, c.truncation(), dims, diff)?;
    let mut comps: BTreeMap<i32, RatMatrix> = tau.degrees().map(|n| (n, RatMatrix::identity(tau.dim(n)))).collect();
    comps.insert(0, kernel);
    let inclusion = ChainMap::new(tau.clone(), brutal, comps)?;
    Ok((tau, inclusion))
}

/// Drops degree -1.
pub fn brutal_truncation(c: &ChainComplex) -> Result<ChainComplex> {
    if c.lower() != -1 {
        return Err(Error::IllegalShift(format!("brutal truncation needs lower bound -1, found {}", c.lower())));
    }
    let dims = c.dims()[1..].to_vec();
    let diff = c
        .differentials()
        .iter()
        .filter(|(n, _)| **n >= 1)
        .map(|(n, d)| (*n, d.clone()))
        .collect();
    ChainComplex::new(0, c.truncation(), dims, diff)
}

/// `τ(f)`: the restriction of `f_0` to the kernels of the augmentations, unchanged above.
pub fn good_truncation_map(f: &ChainMap) -> Result<ChainMap> {
    let (tx, _) = good_truncation(f.source())?;
    let (ty, _) = good_truncation(f.target())?;
    let kx = f.source().differential(0).kernel_basis();
    let ky = f.target().differential(0).kernel_basis();
    let mut comps: BTreeMap<i32, RatMatrix> = tx.degrees().map(|n| (n, f.component(n))).collect();
    comps.insert(0, ky.solve(&(&f.component(0) * &kx))?);
    ChainMap::new(tx, ty, comps)
}

/// `f` with degree -1 dropped.
pub fn brutal_truncation_map(f: &ChainMap) -> Result<ChainMap> {
    let comps = f.components().iter().filter(|(n, _)| **n >= 0).map(|(n, m)| (*n, m.clone())).collect();
    ChainMap::new(brutal_truncation(f.source())?, brutal_truncation(f.target())?, comps)
}

/// Relabels degrees: `(shift C)_n = C_{n - by}` with `by = ±1`; the lower bound must stay in {-1, 0}.
pub fn reindex_shift(c: &ChainComplex, by: i32) -> Result<ChainComplex> {
    if by.abs() != 1 || !(-1..=0).contains(&(c.lower() + by)) {
        return Err(Error::IllegalShift(format!("cannot shift a complex starting at {} by {by}", c.lower())));
    }
    let diff = c.differentials().iter().map(|(n, d)| (n + by, d.clone())).collect();
    ChainComplex::new(c.lower() + by, c.truncation() + by, c.dims().to_vec(), diff)
}

/// Relabels a chain map along [`reindex_shift`].
pub fn reindex_shift_map(f: &ChainMap, by: i32) -> Result<ChainMap> {
    let comps = f.components().iter().map(|(n, m)| (n + by, m.clone())).collect();
    ChainMap::new(reindex_shift(f.source(), by)?, reindex_shift(f.target(), by)?, comps)
}

/// Elementary complexes: a disk `k -> k` in degrees `n, n-1`, or a sphere `k` in degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Disk(i32),
    Sphere(i32),
}

/// Direct sum of cells, in order, optionally conjugated degreewise: `∂'_n = T_{n-1} ∂_n T_n^{-1}`.
pub fn disk_sphere_complex(
    lower: i32,
    truncation: i32,
    cells: &[Cell],
    twist: Option<&BTreeMap<i32, RatMatrix>>,
) -> Result<ChainComplex> {
    let mut c = ChainComplex::zero(lower, truncation);
    for cell in cells {
        let (lo, hi) = match *cell {
            Cell::Disk(n) => (n - 1, n),
            Cell::Sphere(n) => (n, n),
        };
        if lo < lower || hi > truncation {
            return Err(Error::OutOfWindow {
                degree: hi,
                lo: lower,
                hi: truncation,
            });
        }
        let dims = (lower..=truncation).map(|k| usize::from(lo <= k && k <= hi)).collect();
        let mut diff = BTreeMap::new();
        if let Cell::Disk(n) = *cell {
            diff.insert(n, RatMatrix::identity(1));
        }
        c = c.direct_sum(&ChainComplex::new(lower, truncation, dims, diff)?)?;
    }
    let Some(t) = twist else { return Ok(c) };
    let mut diff = BTreeMap::new();
    for n in lower + 1..=truncation {
        let (a, b) = (&t[&(n - 1)], t[&n].inverse()?);
        diff.insert(n, &(a * &c.differential(n)) * &b);
    }
    ChainComplex::new(lower, truncation, c.dims().to_vec(), diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainkit::homology;

    #[test]
    fn cells_have_expected_homology() {
        let d = disk_sphere_complex(0, 4, &[Cell::Disk(2)], None).unwrap();
        assert!(homology(&d).unwrap().dims().iter().all(|(_, h)| *h == 0));
        let s = disk_sphere_complex(0, 4, &[Cell::Sphere(1)], None).unwrap();
        assert_eq!(homology(&s).unwrap().dim(1).unwrap(), 1);
    }

    #[test]
    fn conjugation_preserves_homology() {
        let mut t = BTreeMap::new();
        t.insert(0, RatMatrix::from_i64(&[&[1, 2], &[3, 5]]));
        t.insert(1, RatMatrix::from_i64(&[&[-2]]));
        t.insert(2, RatMatrix::identity(0));
        let c = disk_sphere_complex(0, 2, &[Cell::Sphere(0), Cell::Disk(1)], Some(&t)).unwrap();
        assert!(!c.differential(1).is_zero());
        let h = homology(&c).unwrap();
        assert_eq!(h.dim(0).unwrap(), 1);
        assert_eq!(h.dim(1).unwrap(), 0);
    }

    #[test]
    fn shifts_relabel() {
        let c = disk_sphere_complex(-1, 3, &[Cell::Sphere(-1), Cell::Disk(2), Cell::Sphere(1)], None).unwrap();
        let s = reindex_shift(&c, 1).unwrap();
        assert_eq!((s.lower(), s.truncation()), (0, 4));
        assert_eq!(reindex_shift(&s, -1).unwrap(), c);
        let (hc, hs) = (homology(&c).unwrap(), homology(&s).unwrap());
        assert_eq!(hs.window, (0, 3));
        for n in 0..=3 {
            assert_eq!(hs.dim(n).unwrap(), hc.dim(n - 1).unwrap());
        }
        assert!(reindex_shift(&s, 1).is_err());
        assert!(reindex_shift(&c, -1).is_err());
    }

    #[test]
    fn good_truncation_cases() {
        // ∂_0 = id kills degree 0
        let mut diff = BTreeMap::new();
        diff.insert(0, RatMatrix::identity(1));
        let c = ChainComplex::new(-1, 2, vec![1, 1, 0, 0], diff).unwrap();
        let (tau, inc) = good_truncation(&c).unwrap();
        assert_eq!(tau.dim(0), 0);
        assert_eq!(inc.target(), &brutal_truncation(&c).unwrap());

        let c = disk_sphere_complex(-1, 3, &[Cell::Sphere(-1), Cell::Disk(1), Cell::Sphere(0)], None).unwrap();
        let (tau, _) = good_truncation(&c).unwrap();
        assert_eq!(tau, brutal_truncation(&c).unwrap());
        assert!(good_truncation(&tau).is_err());
    }

    #[test]
    fn truncation_maps_of_identity() {
        let c = disk_sphere_complex(-1, 3, &[Cell::Disk(0), Cell::Sphere(0), Cell::Disk(2)], None).unwrap();
        let id = ChainMap::identity(&c);
        let t = good_truncation_map(&id).unwrap();
        assert_eq!(t.source().dim(0), 1);
        assert!(t.components().values().all(RatMatrix::is_identity));
        assert!(brutal_truncation_map(&id).unwrap().components().values().all(RatMatrix::is_identity));
    }
}
