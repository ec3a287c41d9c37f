use std::collections::BTreeMap;

use serde::Serialize;

use super::coend::{Coend, LeftModuleData};
use super::restrict::{restrict, restricted_truncation};
use crate::diagmod::{DiagramModule, ModuleMap};
use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Rational};
use crate::simplexcat::{hom_basis, ComparisonFunctor, Kind, Morphism};

/// One basis vector of an induced module: the class of `e_index ⊗ morphism` with
/// `morphism : a -> u(object)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationLabel {
    pub object: i32,
    pub morphism: String,
    pub index: usize,
}

/// `u_! M`, computed degreewise as the coend `M ⊗ A(a, u -)`.
#[derive(Clone, Debug)]
pub struct InductionResult {
    pub functor: ComparisonFunctor,
    pub module: DiagramModule,
    /// target degrees on which the answer does not depend on the truncation of `M`
    pub valid_window: (i32, i32),
    pub presentation: BTreeMap<i32, Vec<PresentationLabel>>,
    source: DiagramModule,
    coends: BTreeMap<i32, Coend>,
}

fn check_inducible(u: ComparisonFunctor, m: &DiagramModule) -> Result<()> {
    if !matches!(
        u,
        ComparisonFunctor::UDelta | ComparisonFunctor::UAug | ComparisonFunctor::USquare | ComparisonFunctor::V
    ) {
        return Err(Error::Invalid(format!("induction along {u} is not supported")));
    }
    if m.kind() != u.source_kind() {
        return Err(Error::KindMismatch {
            expected: u.source_kind().to_string(),
            found: m.kind().to_string(),
        });
    }
    if !m.is_verified() {
        return Err(Error::Unvalidated);
    }
    Ok(())
}

fn stable(m: &DiagramModule, l: &LeftModuleData, full: &Coend) -> Result<bool> {
    let short = Coend::new(m, l, m.truncation() - 1)?;
    if short.dim() != full.dim() {
        return Ok(false);
    }
    let natural = short.map_to(full, None, None)?;
    Ok(natural.rank() == full.dim())
}

/// Matrix of `φ ↦ φ∘g` between hom bases, for a target generator `g : a-1 -> a`.
fn precomposition(kind: Kind, g: &Morphism, object: i32) -> Result<RatMatrix> {
    let from = hom_basis(kind, g.target(), object);
    let to = hom_basis(kind, g.source(), object);
    let index = crate::simplexcat::basis::basis_index(&to);
    let mut m = RatMatrix::zeros(to.len(), from.len());
    for (col, phi) in from.iter().enumerate() {
        if let Some(h) = phi.compose(g)? {
            m[(index[&h], col)] = Rational::one();
        }
    }
    Ok(m)
}

/// Left Kan extension along `u ∈ {u_delta, u_a, u_square, v}`. The result is cut at the
/// longest initial run of target degrees where dropping the top degree of `M` changes
/// nothing.
pub fn induce(u: ComparisonFunctor, m: &DiagramModule) -> Result<InductionResult> {
    check_inducible(u, m)?;
    let (src, tgt) = (u.source_kind(), u.target_kind());
    let n = m.truncation();
    let mut coends = BTreeMap::new();
    let mut presentation = BTreeMap::new();
    let mut top = None;
    for a in tgt.min_degree()..=u.on_object(n) {
        let l = LeftModuleData::along(u, a, n)?;
        let c = Coend::new(m, &l, n)?;
        if !stable(m, &l, &c)? {
            break;
        }
        let labels = c
            .labels()
            .into_iter()
            .map(|(b, i, j)| PresentationLabel {
                object: b,
                morphism: hom_basis(tgt, a, u.on_object(b))[j].to_string(),
                index: i,
            })
            .collect();
        presentation.insert(a, labels);
        coends.insert(a, c);
        top = Some(a);
    }
    let top = top.ok_or_else(|| {
        Error::EmptyWindow(format!(
            "{u}_! of a {src} module is unstable already in degree {}",
            tgt.min_degree()
        ))
    })?;
    let dims = coends.values().map(Coend::dim).collect();
    let mut actions = BTreeMap::new();
    for g in tgt.generators(top) {
        let gm = g.morphism()?;
        let left: BTreeMap<i32, RatMatrix> = m
            .degrees()
            .map(|b| Ok((b, precomposition(tgt, &gm, u.on_object(b))?)))
            .collect::<Result<_>>()?;
        actions.insert(g, coends[&g.target()].map_to(&coends[&g.source()], None, Some(&left))?);
    }
    let module = DiagramModule::new(tgt, top, dims, actions)?.validated()?;
    Ok(InductionResult {
        functor: u,
        module,
        valid_window: (tgt.min_degree(), top),
        presentation,
        source: m.clone(),
        coends,
    })
}

impl InductionResult {
    pub fn source(&self) -> &DiagramModule {
        &self.source
    }

    /// The unit `M -> u* u_! M`, on the source degrees whose image is in the window.
    pub fn unit(&self) -> Result<ModuleMap> {
        let u = self.functor;
        let restricted = restrict(u, &self.module)?;
        let top = restricted_truncation(u, self.valid_window.1)?;
        let mut comps = BTreeMap::new();
        for b in restricted.degrees() {
            let c = &self.coends[&u.on_object(b)];
            let cols = (0..self.source.dim(b))
                .map(|i| c.class_of(b, i, 0))
                .collect::<Result<Vec<_>>>()?;
            comps.insert(b, RatMatrix::from_columns(c.dim(), &cols));
        }
        ModuleMap::checked(self.source.truncate_to(top)?, restricted, comps)
    }
}

pub fn unit_map(u: ComparisonFunctor, m: &DiagramModule) -> Result<ModuleMap> {
    induce(u, m)?.unit()
}

/// The counit `u_! u* X -> X` on the window of the induced module.
pub fn counit_map(u: ComparisonFunctor, x: &DiagramModule) -> Result<(InductionResult, ModuleMap)> {
    let restricted = restrict(u, x)?;
    let ind = induce(u, &restricted)?;
    let top = ind.valid_window.1.min(x.truncation());
    let mut comps = BTreeMap::new();
    for a in ind.module.min_degree()..=top {
        let mut cols = Vec::new();
        for (b, i, j) in ind.coends[&a].labels() {
            let phi = &hom_basis(x.kind(), a, u.on_object(b))[j];
            cols.push(x.act_morphism(phi)?.column(i));
        }
        comps.insert(a, RatMatrix::from_columns(x.dim(a), &cols));
    }
    let source = ind.module.truncate_to(top)?;
    let map = ModuleMap::checked(source, x.truncate_to(top)?, comps)?;
    Ok((ind, map))
}

/// `u_! f`, on the common window of both induced modules.
pub fn induce_map(u: ComparisonFunctor, f: &ModuleMap) -> Result<(InductionResult, InductionResult, ModuleMap)> {
    let src = induce(u, f.source())?;
    let tgt = induce(u, f.target())?;
    let top = src.valid_window.1.min(tgt.valid_window.1);
    let mut comps = BTreeMap::new();
    for a in src.module.min_degree()..=top {
        comps.insert(a, src.coends[&a].map_to(&tgt.coends[&a], Some(f.components()), None)?);
    }
    let map = ModuleMap::checked(src.module.truncate_to(top)?, tgt.module.truncate_to(top)?, comps)?;
    Ok((src, tgt, map))
}
