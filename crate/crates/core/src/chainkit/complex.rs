use std::collections::BTreeMap;
use std::fmt;

use crate::diagmod::{DiagramModule, ModuleMap};
use crate::error::{Error, Result};
use crate::exactlin::RatMatrix;
use crate::simplexcat::{GeneratorId, Kind};

/// A chain complex in degrees `lower..=truncation` with `∂_n : C_n -> C_{n-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    lower: i32,
    truncation: i32,
    dims: Vec<usize>,
    diff: BTreeMap<i32, RatMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `∂∘∂ = 0`. Missing differentials are zero.
    pub fn new(lower: i32, truncation: i32, dims: Vec<usize>, diff: BTreeMap<i32, RatMatrix>) -> Result<Self> {
        if !(-1..=0).contains(&lower) {
            return Err(Error::IllegalShift(format!("lower bound {lower} is not -1 or 0")));
        }
        if truncation < lower {
            return Err(Error::Invalid(format!("truncation {truncation} below lower bound {lower}")));
        }
        let expected = (truncation - lower + 1) as usize;
        if dims.len() != expected {
            return Err(Error::DimensionMismatch {
                context: "complex dims".into(),
                expected,
                found: dims.len(),
            });
        }
        let mut c = ChainComplex {
            lower,
            truncation,
            dims,
            diff: BTreeMap::new(),
        };
        if let Some(n) = diff.keys().find(|&&n| n <= lower || n > truncation) {
            return Err(Error::OutOfWindow {
                degree: *n,
                lo: lower + 1,
                hi: truncation,
            });
        }
        for n in lower + 1..=truncation {
            let shape = (c.dim(n - 1), c.dim(n));
            let d = diff.get(&n).cloned().unwrap_or_else(|| RatMatrix::zeros(shape.0, shape.1));
            if d.shape() != shape {
                return Err(Error::ShapeMismatch {
                    context: format!("differential {n}"),
                    left: shape,
                    right: d.shape(),
                });
            }
            c.diff.insert(n, d);
        }
        for n in lower + 2..=truncation {
            if !(&c.diff[&(n - 1)] * &c.diff[&n]).is_zero() {
                return Err(Error::Invalid(format!("∂_{}∂_{n} ≠ 0", n - 1)));
            }
        }
        Ok(c)
    }

    pub fn zero(lower: i32, truncation: i32) -> Self {
        ChainComplex::new(lower, truncation, vec![0; (truncation - lower + 1) as usize], BTreeMap::new())
            .expect("zero complex")
    }

    pub fn lower(&self) -> i32 {
        self.lower
    }

    pub fn truncation(&self) -> i32 {
        self.truncation
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lower..=self.truncation
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lower || n > self.truncation {
            return 0;
        }
        self.dims[(n - self.lower) as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_n`; outside `lower < n <= truncation` it is the zero map of the right shape.
    pub fn differential(&self, n: i32) -> RatMatrix {
        self.diff
            .get(&n)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.dim(n - 1), self.dim(n)))
    }

    pub fn differentials(&self) -> &BTreeMap<i32, RatMatrix> {
        &self.diff
    }

    pub fn kind(&self) -> Kind {
        if self.lower == 0 {
            Kind::Chain0
        } else {
            Kind::ChainNeg1
        }
    }

    pub fn from_module(x: &DiagramModule) -> Result<Self> {
        if !x.kind().is_chain() {
            return Err(Error::KindMismatch {
                expected: "chain0 or chain_neg1".into(),
                found: x.kind().to_string(),
            });
        }
        let diff = x
            .actions()
            .iter()
            .map(|(g, a)| (g.target(), a.clone()))
            .collect();
        ChainComplex::new(x.min_degree(), x.truncation(), x.dims().to_vec(), diff)
    }

    pub fn to_module(&self) -> DiagramModule {
        let actions = self
            .diff
            .iter()
            .map(|(n, d)| (GeneratorId::OmegaD { n: *n }, d.clone()))
            .collect();
        DiagramModule::new(self.kind(), self.truncation, self.dims.clone(), actions)
            .and_then(DiagramModule::validated)
            .expect("a chain complex is a module")
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<Self> {
        if self.lower != other.lower || self.truncation != other.truncation {
            return Err(Error::Invalid("direct sum of complexes with different ranges".into()));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let diff = self
            .diff
            .iter()
            .map(|(n, d)| (*n, d.block_diag(&other.diff[n])))
            .collect();
        ChainComplex::new(self.lower, self.truncation, dims, diff)
    }

    /// `Σ (-1)^n dim C_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(n) as i64).sum()
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex(lower={}, N={}, dims={:?})", self.lower, self.truncation, self.dims)
    }
}

/// A degreewise map of complexes commuting with the differentials.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<i32, RatMatrix>,
}

impl ChainMap {
    /// Checks shapes and `∂ f = f ∂`. Missing components are zero.
    pub fn new(source: ChainComplex, target: ChainComplex, components: BTreeMap<i32, RatMatrix>) -> Result<Self> {
        let f = ChainMap::unchecked(source, target, components)?;
        for n in f.source.lower + 1..=f.source.truncation {
            let lhs = &f.components[&(n - 1)] * &f.source.diff[&n];
            let rhs = &f.target.diff[&n] * &f.components[&n];
            if lhs != rhs {
                return Err(Error::Invalid(format!("chain map fails to commute with ∂_{n}")));
            }
        }
        Ok(f)
    }

    fn unchecked(source: ChainComplex, target: ChainComplex, components: BTreeMap<i32, RatMatrix>) -> Result<Self> {
        if source.lower != target.lower || source.truncation != target.truncation {
            return Err(Error::Invalid(format!("chain map between {source:?} and {target:?}")));
        }
        let mut comps = BTreeMap::new();
        for n in source.degrees() {
            let shape = (target.dim(n), source.dim(n));
            let c = components.get(&n).cloned().unwrap_or_else(|| RatMatrix::zeros(shape.0, shape.1));
            if c.shape() != shape {
                return Err(Error::ShapeMismatch {
                    context: format!("chain map component {n}"),
                    left: shape,
                    right: c.shape(),
                });
            }
            comps.insert(n, c);
        }
        Ok(ChainMap {
            source,
            target,
            components: comps,
        })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c.degrees().map(|n| (n, RatMatrix::identity(c.dim(n)))).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<Self> {
        ChainMap::unchecked(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn from_module_map(f: &ModuleMap) -> Result<Self> {
        ChainMap::new(
            ChainComplex::from_module(f.source())?,
            ChainComplex::from_module(f.target())?,
            f.components().clone(),
        )
    }

    pub fn to_module_map(&self) -> Result<ModuleMap> {
        ModuleMap::new(self.source.to_module(), self.target.to_module(), self.components.clone())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: i32) -> RatMatrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.target.dim(n), self.source.dim(n)))
    }

    pub fn components(&self) -> &BTreeMap<i32, RatMatrix> {
        &self.components
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        if inner.target != self.source {
            return Err(Error::BoundaryMismatch {
                outer: format!("{:?}", self.source),
                inner: format!("{:?}", inner.target),
            });
        }
        let components = self
            .components
            .iter()
            .map(|(n, c)| (*n, c * &inner.components[n]))
            .collect();
        Ok(ChainMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        })
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} -> {:?})", self.source, self.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonzero_square() {
        let mut diff = BTreeMap::new();
        diff.insert(1, RatMatrix::from_i64(&[&[1]]));
        diff.insert(2, RatMatrix::from_i64(&[&[1]]));
        assert!(ChainComplex::new(0, 2, vec![1, 1, 1], diff).is_err());
        assert!(ChainComplex::new(1, 2, vec![1, 1], BTreeMap::new()).is_err());
    }

    #[test]
    fn module_round_trip() {
        let x = DiagramModule::representable(Kind::ChainNeg1, 1, 3).unwrap();
        let c = ChainComplex::from_module(&x).unwrap();
        assert_eq!(c.dims(), &[0, 1, 1, 0, 0]);
        assert_eq!(c.to_module(), x);
    }
}
