use std::collections::BTreeMap;

use crate::chainkit::{ChainComplex, ChainMap};
use crate::diagmod::{DiagramModule, ModuleMap};
use crate::error::{Error, Result};
use crate::simplexcat::{ComparisonFunctor, Kind};

fn check_target(u: ComparisonFunctor, kind: Kind) -> Result<()> {
    if kind != u.target_kind() {
        return Err(Error::KindMismatch {
            expected: u.target_kind().to_string(),
            found: kind.to_string(),
        });
    }
    Ok(())
}

/// Largest source degree whose image lies in `[.., top]`.
pub fn restricted_truncation(u: ComparisonFunctor, top: i32) -> Result<i32> {
    let lo = u.source_kind().min_degree();
    if u.on_object(lo) > top {
        return Err(Error::EmptyWindow(format!("{u} has no object below degree {top}")));
    }
    let mut b = lo;
    while u.on_object(b + 1) <= top {
        b += 1;
    }
    Ok(b)
}

/// `u* X = X ∘ u`.
pub fn restrict(u: ComparisonFunctor, x: &DiagramModule) -> Result<DiagramModule> {
    check_target(u, x.kind())?;
    let src = u.source_kind();
    let top = restricted_truncation(u, x.truncation())?;
    let dims = (src.min_degree()..=top).map(|b| x.dim(u.on_object(b))).collect();
    let mut actions = BTreeMap::new();
    for h in src.generators(top) {
        actions.insert(h, x.act(&u.on_generator(h)?)?);
    }
    DiagramModule::new(src, top, dims, actions)?.validated()
}

/// `u* f`, with components `f_{u b}`.
pub fn restrict_map(u: ComparisonFunctor, f: &ModuleMap) -> Result<ModuleMap> {
    let source = restrict(u, f.source())?;
    let target = restrict(u, f.target())?;
    let components = source
        .degrees()
        .map(|b| Ok((b, f.component(u.on_object(b))?.clone())))
        .collect::<Result<_>>()?;
    ModuleMap::new(source, target, components)
}

/// The functor from a module's indexing algebra down to chain complexes.
pub fn chain_functor(kind: Kind) -> Result<ComparisonFunctor> {
    match kind {
        Kind::Ssimp => Ok(ComparisonFunctor::UDelta),
        Kind::AugSsimp => Ok(ComparisonFunctor::UAug),
        Kind::Scube => Ok(ComparisonFunctor::USquare),
        _ => Err(Error::KindMismatch {
            expected: "ssimp, aug_ssimp or scube".into(),
            found: kind.to_string(),
        }),
    }
}

/// The chain complex `u* X`; for chain kinds, `X` itself.
pub fn underlying_complex(x: &DiagramModule) -> Result<ChainComplex> {
    if x.kind().is_chain() {
        return ChainComplex::from_module(x);
    }
    ChainComplex::from_module(&restrict(chain_functor(x.kind())?, x)?)
}

pub fn underlying_complex_map(f: &ModuleMap) -> Result<ChainMap> {
    if f.kind().is_chain() {
        return ChainMap::from_module_map(f);
    }
    ChainMap::from_module_map(&restrict_map(chain_functor(f.kind())?, f)?)
}

/// The augmented chain complex `C^a X = u_a* X` of an augmented semi-simplicial module.
pub fn augmented_chain(x: &DiagramModule) -> Result<ChainComplex> {
    ChainComplex::from_module(&restrict(ComparisonFunctor::UAug, x)?)
}

pub fn augmented_chain_map(f: &ModuleMap) -> Result<ChainMap> {
    ChainMap::from_module_map(&restrict_map(ComparisonFunctor::UAug, f)?)
}

/// `v* X`, an augmented semi-simplicial module of truncation `N - 1`.
pub fn restrict_v(x: &DiagramModule) -> Result<DiagramModule> {
    restrict(ComparisonFunctor::V, x)
}

pub fn restrict_v_map(f: &ModuleMap) -> Result<ModuleMap> {
    restrict_map(ComparisonFunctor::V, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chainkit::reindex_shift;

    #[test]
    fn sign_embedding_recovers_cubical_chains() {
        for c in 0..=3 {
            let x = DiagramModule::representable(Kind::Scube, c, 4).unwrap();
            let v = restrict_v(&x).unwrap();
            assert_eq!((v.kind(), v.truncation()), (Kind::AugSsimp, 3));
            let shifted = reindex_shift(&augmented_chain(&v).unwrap(), 1).unwrap();
            assert_eq!(shifted, underlying_complex(&x).unwrap());
        }
    }

    #[test]
    fn restriction_of_representable_simplex() {
        let x = DiagramModule::representable(Kind::Ssimp, 2, 3).unwrap();
        let c = underlying_complex(&x).unwrap();
        assert_eq!(c.dims(), &[3, 3, 1, 0]);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn restriction_along_q_and_j() {
        let x = DiagramModule::representable(Kind::AugSsimp, 1, 3).unwrap();
        let q = restrict(ComparisonFunctor::Q, &x).unwrap();
        assert_eq!(q.kind(), Kind::Scube);
        assert_eq!(q.truncation(), 4);
        let y = DiagramModule::representable(Kind::Scube, 2, 3).unwrap();
        for u in [ComparisonFunctor::J0, ComparisonFunctor::J1] {
            assert_eq!(restrict(u, &y).unwrap().truncation(), 2);
        }
        assert!(restrict(ComparisonFunctor::UDelta, &y).is_err());
    }
}
