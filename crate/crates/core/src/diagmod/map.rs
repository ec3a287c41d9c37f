use std::collections::BTreeMap;
use std::fmt;

use super::module::{DiagramModule, Violation};
use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Rational};
use crate::simplexcat::basis::basis_index;
use crate::simplexcat::{hom_basis, Kind, LinComb, Morphism};

/// A morphism of modules: one matrix per degree, `component(n) : X_n -> Y_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: DiagramModule,
    target: DiagramModule,
    components: BTreeMap<i32, RatMatrix>,
}

impl ModuleMap {
    /// Builds a map after checking shapes; missing degrees are zero.
    pub fn new(
        source: DiagramModule,
        target: DiagramModule,
        components: BTreeMap<i32, RatMatrix>,
    ) -> Result<Self> {
        source.same_shape(&target)?;
        let mut out = BTreeMap::new();
        for n in source.degrees() {
            let shape = (target.dim(n), source.dim(n));
            let c = components.get(&n).cloned().unwrap_or_else(|| RatMatrix::zeros(shape.0, shape.1));
            if c.shape() != shape {
                return Err(Error::ShapeMismatch {
                    context: format!("map component in degree {n}"),
                    left: shape,
                    right: c.shape(),
                });
            }
            out.insert(n, c);
        }
        if let Some(n) = components.keys().find(|n| !source.degrees().contains(n)) {
            return Err(Error::OutOfWindow {
                degree: *n,
                lo: source.min_degree(),
                hi: source.truncation(),
            });
        }
        Ok(ModuleMap {
            source,
            target,
            components: out,
        })
    }

    /// Builds a map and rejects it unless it commutes with every generator.
    pub fn checked(
        source: DiagramModule,
        target: DiagramModule,
        components: BTreeMap<i32, RatMatrix>,
    ) -> Result<Self> {
        let f = ModuleMap::new(source, target, components)?;
        f.check().map_err(|v| Error::Invalid(v.to_string()))?;
        Ok(f)
    }

    pub fn identity(x: &DiagramModule) -> Self {
        let components = x.degrees().map(|n| (n, RatMatrix::identity(x.dim(n)))).collect();
        ModuleMap {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    pub fn zero(source: &DiagramModule, target: &DiagramModule) -> Result<Self> {
        ModuleMap::new(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &DiagramModule {
        &self.source
    }

    pub fn target(&self) -> &DiagramModule {
        &self.target
    }

    pub fn kind(&self) -> Kind {
        self.source.kind()
    }

    pub fn component(&self, n: i32) -> Result<&RatMatrix> {
        self.components.get(&n).ok_or(Error::OutOfWindow {
            degree: n,
            lo: self.source.min_degree(),
            hi: self.source.truncation(),
        })
    }

    pub fn components(&self) -> &BTreeMap<i32, RatMatrix> {
        &self.components
    }

    /// Verifies `f_{n-1} X(g) = Y(g) f_n` for every generator `g : n-1 -> n`.
    pub fn check(&self) -> std::result::Result<(), Violation> {
        for (g, xa) in self.source.actions() {
            let ya = &self.target.actions()[g];
            let lhs = &self.components[&g.source()] * xa;
            let rhs = ya * &self.components[&g.target()];
            if lhs != rhs {
                return Err(Violation {
                    degree: g.target(),
                    relation: format!("commutation with {g}"),
                });
            }
        }
        Ok(())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap> {
        if inner.target != self.source {
            return Err(Error::BoundaryMismatch {
                outer: format!("{self:?}"),
                inner: format!("{inner:?}"),
            });
        }
        let components = self
            .components
            .iter()
            .map(|(n, c)| (*n, c * &inner.components[n]))
            .collect();
        Ok(ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Invalid("adding maps with different endpoints".into()));
        }
        let components = self
            .components
            .iter()
            .map(|(n, c)| (*n, c + &other.components[n]))
            .collect();
        Ok(ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn scale(&self, c: &Rational) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|(n, m)| (*n, m.scale(c))).collect(),
        }
    }

    /// The natural map `A(-, c) -> A(-, c')` given by postcomposition with `w : c -> c'`.
    pub fn yoneda(kind: Kind, w: &LinComb, truncation: i32) -> Result<ModuleMap> {
        let (c, c2) = (w.source(), w.target());
        let source = DiagramModule::representable(kind, c, truncation)?;
        let target = DiagramModule::representable(kind, c2, truncation)?;
        let mut components = BTreeMap::new();
        for n in source.degrees() {
            let (from, to) = (hom_basis(kind, n, c), hom_basis(kind, n, c2));
            let index = basis_index(&to);
            let mut m = RatMatrix::zeros(to.len(), from.len());
            for (col, phi) in from.iter().enumerate() {
                for (g, x) in w.terms() {
                    if let Some(h) = g.compose(phi)? {
                        let e = &mut m[(index[&h], col)];
                        *e += x;
                    }
                }
            }
            components.insert(n, m);
        }
        ModuleMap::new(source, target, components)
    }

    pub fn yoneda_morphism(kind: Kind, g: &Morphism, truncation: i32) -> Result<ModuleMap> {
        if !kind.contains(g) {
            return Err(Error::KindMismatch {
                expected: kind.to_string(),
                found: g.to_string(),
            });
        }
        ModuleMap::yoneda(kind, &LinComb::from_morphism(g.clone()), truncation)
    }

    /// The inclusions and projections of `X ⊕ Y`.
    pub fn sum_structure(x: &DiagramModule, y: &DiagramModule) -> Result<[ModuleMap; 4]> {
        let s = x.direct_sum(y)?;
        let mut inx = BTreeMap::new();
        let mut iny = BTreeMap::new();
        let mut prx = BTreeMap::new();
        let mut pry = BTreeMap::new();
        for n in s.degrees() {
            let (a, b) = (x.dim(n), y.dim(n));
            let ia = RatMatrix::identity(a).vstack(&RatMatrix::zeros(b, a))?;
            let ib = RatMatrix::zeros(a, b).vstack(&RatMatrix::identity(b))?;
            prx.insert(n, ia.transpose());
            pry.insert(n, ib.transpose());
            inx.insert(n, ia);
            iny.insert(n, ib);
        }
        Ok([
            ModuleMap::new(x.clone(), s.clone(), inx)?,
            ModuleMap::new(y.clone(), s.clone(), iny)?,
            ModuleMap::new(s.clone(), x.clone(), prx)?,
            ModuleMap::new(s, y.clone(), pry)?,
        ])
    }

    /// Block-diagonal sum of two maps.
    pub fn direct_sum(&self, other: &ModuleMap) -> Result<ModuleMap> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let components = self
            .components
            .iter()
            .map(|(n, c)| (*n, c.block_diag(&other.components[n])))
            .collect();
        ModuleMap::new(source, target, components)
    }
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?})", self.source, self.target)
    }
}
