use std::collections::BTreeMap;

use serde::Serialize;

use crate::chainkit::{
    brutal_truncation_map, cone_criterion, good_truncation_map, homology_map, is_quasi_iso, ChainMap,
};
use crate::diagmod::ModuleMap;
use crate::error::{Error, Result};
use crate::exactlin::{quotient_map, RatMatrix};
use crate::simplexcat::Kind;
use crate::transport::{
    augmented_chain_map, chain_functor, restrict_map, restrict_v_map, tor_map, underlying_complex_map, CoefficientId,
};

/// Verdicts of the four equivalent characterizations of weak equivalences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeqVerdict {
    pub kind: Kind,
    /// conditions (1)-(4), in order
    pub conditions: [bool; 4],
    pub holds: bool,
    pub agree: bool,
    pub window: (i32, i32),
    /// `(degree, dim H source, dim H target, rank)` where the detecting homology map fails
    pub failures: Vec<(i32, usize, usize, usize)>,
}

fn is_iso(m: &RatMatrix) -> bool {
    m.rows() == m.cols() && m.rank() == m.rows()
}

fn iso_by_degree(f: &ChainMap) -> Result<BTreeMap<i32, bool>> {
    Ok(homology_map(f)?.iter().map(|(n, m)| (*n, is_iso(m))).collect())
}

/// `coker ∂_0 -> coker ∂_0` induced by `f_{-1}`, decided without the homology machinery.
fn h_minus_one_iso(f: &ChainMap) -> Result<bool> {
    let (x, y) = (f.source(), f.target());
    let qx = quotient_map(x.dim(-1), &x.differential(0).image_basis())?;
    let qy = quotient_map(y.dim(-1), &y.differential(0).image_basis())?;
    let section = qx.solve(&RatMatrix::identity(qx.rows()))?;
    Ok(is_iso(&(&(&qy * &f.component(-1)) * &section)))
}

/// Decides whether `f` is a weak equivalence four ways and reports whether they agree.
///
/// For semi-simplicial and semi-cubical modules: `u*f` is a quasi-isomorphism; the mapping
/// cone of `u*f` is acyclic; `Tor(f, k_•)` is an isomorphism; `Tor^Ω(u*f, k[0])` is an
/// isomorphism. For augmented modules: `τ(f)` is a quasi-isomorphism and `H_{-1}(f)` an
/// isomorphism; `C^a(f)` is a quasi-isomorphism; `Tor_n(f, k_•[0])` for `n ≥ 1`;
/// `Tor_n^Ω` of the nonnegative part for `n ≥ 1`. The last two are completed by `H_0(τ f)`
/// and `H_{-1}(f)`.
pub fn check_weak_equivalence(f: &ModuleMap) -> Result<WeqVerdict> {
    let kind = f.kind();
    match kind {
        Kind::Ssimp | Kind::Scube => {
            let u = chain_functor(kind)?;
            let cf = underlying_complex_map(f)?;
            let defining = is_quasi_iso(&cf)?;
            let c2 = cone_criterion(&cf)?;
            let c3 = is_quasi_iso(&tor_map(f, CoefficientId::KConstant)?)?.holds;
            let c4 = is_quasi_iso(&tor_map(&restrict_map(u, f)?, CoefficientId::KPoint)?)?.holds;
            let conditions = [defining.holds, c2, c3, c4];
            Ok(WeqVerdict {
                kind,
                conditions,
                holds: defining.holds,
                agree: conditions.iter().all(|c| *c == defining.holds),
                window: defining.window,
                failures: defining.failures,
            })
        }
        Kind::AugSsimp => {
            let ca = augmented_chain_map(f)?;
            let tau = iso_by_degree(&good_truncation_map(&ca)?)?;
            let h0 = tau.get(&0).copied().unwrap_or(true);
            let hm1 = h_minus_one_iso(&ca)?;
            let c1 = tau.values().all(|b| *b) && hm1;
            let full = is_quasi_iso(&ca)?;
            let positive = |m: &BTreeMap<i32, bool>| m.iter().filter(|(n, _)| **n >= 1).all(|(_, b)| *b);
            let t3 = iso_by_degree(&tor_map(f, CoefficientId::KConstantShifted)?)?;
            let c3 = positive(&t3) && h0 && hm1;
            let nonneg = brutal_truncation_map(&ca)?.to_module_map()?;
            let t4 = iso_by_degree(&tor_map(&nonneg, CoefficientId::KPoint)?)?;
            let c4 = positive(&t4) && h0 && hm1;
            let conditions = [c1, full.holds, c3, c4];
            Ok(WeqVerdict {
                kind,
                conditions,
                holds: c1,
                agree: conditions.iter().all(|c| *c == c1),
                window: full.window,
                failures: full.failures,
            })
        }
        _ => {
            let v = is_quasi_iso(&ChainMap::from_module_map(f)?)?;
            Ok(WeqVerdict {
                kind,
                conditions: [v.holds; 4],
                holds: v.holds,
                agree: true,
                window: v.window,
                failures: v.failures,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationVerdict {
    pub holds: bool,
    /// which restriction was tested
    pub route: String,
    /// `(degree, rank, target dim)` where surjectivity fails
    pub failures: Vec<(i32, usize, usize)>,
}

fn surjectivity(route: &str, comps: &BTreeMap<i32, RatMatrix>) -> FibrationVerdict {
    let failures: Vec<(i32, usize, usize)> = comps
        .iter()
        .filter_map(|(n, m)| {
            let r = m.rank();
            (r != m.rows()).then_some((*n, r, m.rows()))
        })
        .collect();
    FibrationVerdict {
        holds: failures.is_empty(),
        route: route.to_string(),
        failures,
    }
}

/// Fibrations: `u_Δ* f` degreewise epi (semi-simplicial), `C^a(f)` degreewise epi
/// (augmented), `v* f` a fibration of augmented modules (semi-cubical), degreewise epi
/// (chain complexes).
pub fn check_fibration(f: &ModuleMap) -> Result<FibrationVerdict> {
    Ok(match f.kind() {
        Kind::Ssimp => surjectivity("u_delta", underlying_complex_map(f)?.components()),
        Kind::AugSsimp => surjectivity("augmented chains", augmented_chain_map(f)?.components()),
        Kind::Scube => {
            let v = restrict_v_map(f)?;
            let inner = check_fibration(&v)?;
            FibrationVerdict {
                route: format!("v then {}", inner.route),
                failures: inner.failures.into_iter().map(|(n, r, d)| (n + 1, r, d)).collect(),
                holds: inner.holds,
            }
        }
        Kind::Chain0 | Kind::ChainNeg1 => surjectivity("components", f.components()),
    })
}

/// Plain degreewise surjectivity of the stored components.
pub fn degreewise_surjective(f: &ModuleMap) -> bool {
    f.components().values().all(|m| m.rank() == m.rows())
}

/// Builds a surjection onto `x` by padding: the projection `x ⊕ y -> x`.
pub fn padded_epimorphism(x: &crate::diagmod::DiagramModule, y: &crate::diagmod::DiagramModule) -> Result<ModuleMap> {
    let [_, _, prx, _] = ModuleMap::sum_structure(x, y)?;
    if !degreewise_surjective(&prx) {
        return Err(Error::Invalid("projection of a sum is not surjective".into()));
    }
    Ok(prx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagmod::DiagramModule;
    use crate::simplexcat::{ComparisonFunctor, Kind};
    use crate::transport::induce;

    #[test]
    fn identities_and_zero_maps() {
        for kind in [Kind::Ssimp, Kind::AugSsimp, Kind::Scube] {
            let x = DiagramModule::representable(kind, 1, 3).unwrap();
            let v = check_weak_equivalence(&ModuleMap::identity(&x)).unwrap();
            assert!(v.holds && v.agree, "{kind}");
            let z = DiagramModule::zero(kind, 3);
            let to_zero = ModuleMap::zero(&x, &z).unwrap();
            let v = check_weak_equivalence(&to_zero).unwrap();
            assert!(v.agree, "{kind} {v:?}");
            assert!(check_fibration(&to_zero).unwrap().holds);
            assert!(!check_fibration(&ModuleMap::zero(&z, &x).unwrap()).unwrap().holds);
        }
    }

    #[test]
    fn augmented_representables_are_contractible() {
        let x = DiagramModule::representable(Kind::AugSsimp, 2, 4).unwrap();
        let z = DiagramModule::zero(Kind::AugSsimp, 4);
        let v = check_weak_equivalence(&ModuleMap::zero(&x, &z).unwrap()).unwrap();
        assert!(v.holds && v.agree);
        let y = DiagramModule::representable(Kind::Ssimp, 2, 4).unwrap();
        let v = check_weak_equivalence(&ModuleMap::zero(&y, &DiagramModule::zero(Kind::Ssimp, 4)).unwrap()).unwrap();
        assert!(!v.holds && v.agree);
        assert_eq!(v.failures, vec![(0, 1, 0, 0)]);
    }

    #[test]
    fn the_sign_embedding_unit_is_rejected() {
        let m = DiagramModule::representable(Kind::AugSsimp, 0, 3).unwrap();
        let unit = induce(ComparisonFunctor::V, &m).unwrap().unit().unwrap();
        let v = check_weak_equivalence(&unit).unwrap();
        assert!(!v.holds && v.agree);
        assert_eq!(v.failures, vec![(-1, 0, 1, 0)]);
    }

    #[test]
    fn padded_projection_is_a_fibration() {
        let x = DiagramModule::representable(Kind::Scube, 1, 3).unwrap();
        let y = DiagramModule::representable(Kind::Scube, 2, 3).unwrap();
        let p = padded_epimorphism(&x, &y).unwrap();
        assert!(check_fibration(&p).unwrap().holds);
        let [inx, ..] = ModuleMap::sum_structure(&x, &y).unwrap();
        let v = check_fibration(&inx).unwrap();
        assert!(!v.holds);
        assert_eq!(v.holds, degreewise_surjective(&inx));
    }
}
