use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactlin::{quotient_map, RatMatrix};

/// Homology in one degree, with bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: i32,
    pub dim: usize,
    /// columns: a basis of `ker ∂_n`
    pub cycles: RatMatrix,
    /// columns: a basis of `im ∂_{n+1}`
    pub boundaries: RatMatrix,
    /// `dim × #cycles`: sends cycle coordinates to homology coordinates
    pub projection: RatMatrix,
    /// columns: cycles representing the homology basis
    pub representatives: RatMatrix,
}

impl DegreeHomology {
    /// Homology coordinates of the cycles given as columns of `v`.
    pub fn classify(&self, v: &RatMatrix) -> Result<RatMatrix> {
        let coords = self.cycles.solve(v).map_err(|_| Error::Invalid(format!("not a cycle in degree {}", self.degree)))?;
        Ok(&self.projection * &coords)
    }
}

/// Homology of a complex on its window `[lower, truncation - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub lower: i32,
    pub window: (i32, i32),
    pub degrees: BTreeMap<i32, DegreeHomology>,
}

impl HomologyReport {
    pub fn in_window(&self, n: i32) -> bool {
        self.window.0 <= n && n <= self.window.1
    }

    pub fn degree(&self, n: i32) -> Result<&DegreeHomology> {
        self.degrees.get(&n).ok_or(Error::OutOfWindow {
            degree: n,
            lo: self.window.0,
            hi: self.window.1,
        })
    }

    pub fn dim(&self, n: i32) -> Result<usize> {
        Ok(self.degree(n)?.dim)
    }

    /// `(degree, dim)` for every degree in the window.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        self.degrees.iter().map(|(n, h)| (*n, h.dim)).collect()
    }

    pub fn summary(&self) -> HomologySummary {
        HomologySummary {
            window: self.window,
            dims: self.degrees.iter().map(|(n, h)| (n.to_string(), h.dim)).collect(),
        }
    }
}

/// Serializable dimensions-only view of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub window: (i32, i32),
    pub dims: BTreeMap<String, usize>,
}

/// Homology of `c` in one degree, given the incoming and outgoing differentials.
pub fn degree_homology(degree: i32, dim: usize, outgoing: &RatMatrix, incoming: &RatMatrix) -> Result<DegreeHomology> {
    let cycles = if outgoing.rows() == 0 {
        RatMatrix::identity(dim)
    } else {
        outgoing.kernel_basis()
    };
    let boundaries = incoming.image_basis();
    let in_cycles = cycles.solve(&boundaries)?;
    let projection = quotient_map(cycles.cols(), &in_cycles)?;
    let section = projection.solve(&RatMatrix::identity(projection.rows()))?;
    let representatives = &cycles * &section;
    Ok(DegreeHomology {
        degree,
        dim: projection.rows(),
        cycles,
        boundaries,
        projection,
        representatives,
    })
}

/// Homology in every degree of `[lower, truncation - 1]`; the top degree is withheld
/// because its boundaries are unknown.
pub fn homology(c: &ChainComplex) -> Result<HomologyReport> {
    let window = (c.lower(), c.truncation() - 1);
    let mut degrees = BTreeMap::new();
    for n in window.0..=window.1 {
        degrees.insert(n, degree_homology(n, c.dim(n), &c.differential(n), &c.differential(n + 1))?);
    }
    Ok(HomologyReport {
        lower: c.lower(),
        window,
        degrees,
    })
}

/// The matrices of `H_n(f)` in the representative bases, for every degree of the window.
pub fn homology_map_with(f: &ChainMap, hx: &HomologyReport, hy: &HomologyReport) -> Result<BTreeMap<i32, RatMatrix>> {
    let mut out = BTreeMap::new();
    for (n, dx) in &hx.degrees {
        if let Ok(dy) = hy.degree(*n) {
            let image = &f.component(*n) * &dx.representatives;
            out.insert(*n, dy.classify(&image)?);
        }
    }
    Ok(out)
}

pub fn homology_map(f: &ChainMap) -> Result<BTreeMap<i32, RatMatrix>> {
    homology_map_with(f, &homology(f.source())?, &homology(f.target())?)
}

/// A quasi-isomorphism verdict with the window it covers and the failing degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoVerdict {
    pub holds: bool,
    pub window: (i32, i32),
    /// `(degree, dim H source, dim H target, rank H(f))` for every failing degree
    pub failures: Vec<(i32, usize, usize, usize)>,
}

pub fn is_quasi_iso(f: &ChainMap) -> Result<QuasiIsoVerdict> {
    let hx = homology(f.source())?;
    let hy = homology(f.target())?;
    let maps = homology_map_with(f, &hx, &hy)?;
    let mut failures = Vec::new();
    for (n, m) in &maps {
        let r = m.rank();
        if !(m.rows() == m.cols() && r == m.rows()) {
            failures.push((*n, m.cols(), m.rows(), r));
        }
    }
    Ok(QuasiIsoVerdict {
        holds: failures.is_empty(),
        window: hx.window,
        failures,
    })
}

/// The mapping cone: `Cone_n = X_{n-1} ⊕ Y_n`, `∂(x, y) = (-∂x, f x + ∂y)`.
pub fn mapping_cone(f: &ChainMap) -> Result<ChainComplex> {
    let (x, y) = (f.source(), f.target());
    let dims = x.degrees().map(|n| x.dim(n - 1) + y.dim(n)).collect();
    let mut diff = BTreeMap::new();
    for n in x.lower() + 1..=x.truncation() {
        let top = (-&x.differential(n - 1)).hstack(&RatMatrix::zeros(x.dim(n - 2), y.dim(n)))?;
        let bottom = f.component(n - 1).hstack(&y.differential(n))?;
        diff.insert(n, top.vstack(&bottom)?);
    }
    ChainComplex::new(x.lower(), x.truncation(), dims, diff)
}

/// Whether `f` is a quasi-isomorphism on the window, decided through its cone: the cone
/// is acyclic on the window, and every top-degree cone cycle has a source component that
/// bounds in the source.
pub fn cone_criterion(f: &ChainMap) -> Result<bool> {
    let cone = mapping_cone(f)?;
    let h = homology(&cone)?;
    if h.degrees.values().any(|d| d.dim > 0) {
        return Ok(false);
    }
    let top = cone.truncation();
    let x = f.source();
    if top - 1 < x.lower() {
        return Ok(true);
    }
    let cycles = cone.differential(top).kernel_basis();
    let xs = cycles.select_rows(&(0..x.dim(top - 1)).collect::<Vec<_>>());
    let bounds = x.differential(top).image_basis();
    Ok(bounds.solve(&xs).is_ok())
}
