use serde_json::json;

use super::predicates::check_weak_equivalence;
use super::report::{CheckRecord, Verdict, VerificationReport};
use crate::chainkit::{homology, homology_map, ChainComplex, ChainMap};
use crate::diagmod::DiagramModule;
use crate::error::Result;
use crate::exactlin::RatMatrix;
use crate::simplexcat::basis::{ones_then_lex, sign_family, transition_check};
use crate::simplexcat::{hom_basis, hom_count, strictly_decreasing_basis, ComparisonFunctor, Kind, LinComb, Morphism, SignFamily};
use crate::transport::{augmented_chain, augmented_chain_map, induce, resolution_at, restrict_v, CoefficientId};

fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Monotone injections `[m] -> [n]`, counted as bitmasks on `n + 1` points.
pub fn brute_injections(m: i32, n: i32) -> u64 {
    (0u32..1 << (n + 1)).filter(|s| s.count_ones() as i32 == m + 1).count() as u64
}

/// Cube maps `□_m -> □_n`, counted as words over `{0, 1, x_1..x_m}` of length `n` in which the
/// variables appear exactly once each, in order.
pub fn brute_cube_maps(m: i32, n: i32) -> u64 {
    let letters = (m + 2) as u64;
    let mut count = 0;
    for code in 0..letters.pow(n as u32) {
        let mut c = code;
        let mut next = 1;
        let mut ok = true;
        for _ in 0..n {
            let l = (c % letters) as i32;
            c /= letters;
            if l >= 2 {
                if l - 1 != next {
                    ok = false;
                    break;
                }
                next += 1;
            }
        }
        if ok && next == m + 1 {
            count += 1;
        }
    }
    count
}

pub fn hom_dimension_checks(max_n: i32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for kind in [Kind::Ssimp, Kind::Scube] {
        let mut mismatches = Vec::new();
        for n in 0..=max_n {
            for m in 0..=n {
                let (brute, formula) = match kind {
                    Kind::Ssimp => (brute_injections(m, n), binomial((n + 1).into(), (m + 1).into())),
                    _ => (brute_cube_maps(m, n), binomial(n.into(), m.into()) << (n - m)),
                };
                let counted = hom_count(kind, m, n);
                let listed = hom_basis(kind, m, n).len() as u64;
                if brute != formula || counted != formula || listed != formula {
                    mismatches.push(json!({"m": m, "n": n, "brute": brute, "formula": formula, "count": counted, "basis": listed}));
                }
            }
        }
        out.push(CheckRecord::expect(
            "hom_dimensions",
            format!("{kind} 0<=m<=n<={max_n}"),
            mismatches.is_empty(),
            Some((0, max_n)),
            json!({ "mismatches": mismatches }),
        ));
    }
    out
}

fn monomial_transition(kind: Kind, m: i32, n: i32) -> Result<(bool, serde_json::Value)> {
    let fam = strictly_decreasing_basis(kind, m, n)?;
    let values: Vec<LinComb> = fam.iter().map(|d| d.value()).collect::<Result<_>>()?;
    let leading: Vec<Morphism> = fam.iter().map(|d| d.leading()).collect::<Result<_>>()?;
    let t = transition_check(&values, &leading, &hom_basis(kind, m, n))?;
    let ok = t.full_rank() && t.triangular() && t.signed_unit_diagonal();
    Ok((ok, json!({"dim": t.dim, "rank": t.rank, "triangular": t.triangular()})))
}

fn sign_transition(family: SignFamily, m: i32, n: i32) -> Result<(bool, serde_json::Value)> {
    let mut fam = sign_family(family, m, n)?;
    fam.sort_by_key(|e| ones_then_lex(&e.leading));
    let values: Vec<LinComb> = fam.iter().map(|e| e.value.clone()).collect();
    let leading: Vec<Morphism> = fam.iter().map(|e| Morphism::Cube(e.leading.clone())).collect();
    let t = transition_check(&values, &leading, &hom_basis(Kind::Scube, m, n))?;
    let ok = t.full_rank() && t.lower_triangular && t.unit_diagonal();
    Ok((ok, json!({"dim": t.dim, "rank": t.rank, "lower_triangular": t.lower_triangular})))
}

pub fn freeness_checks(max_n: i32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let families: [(&str, Box<dyn Fn(i32, i32) -> Result<(bool, serde_json::Value)>>, i32); 4] = [
        ("v(a)j0(b)", Box::new(|m, n| sign_transition(SignFamily::VAfterJ0, m, n)), 0),
        ("j0(b)v(a)", Box::new(|m, n| sign_transition(SignFamily::J0AfterV, m, n)), 0),
        ("d-monomials ssimp", Box::new(|m, n| monomial_transition(Kind::Ssimp, m, n)), 0),
        ("d-monomials aug_ssimp", Box::new(|m, n| monomial_transition(Kind::AugSsimp, m, n)), -1),
    ];
    for (name, check, lo) in families.iter() {
        let mut failures = Vec::new();
        for n in (*lo).max(0)..=max_n {
            for m in *lo..=n {
                match check(m, n) {
                    Ok((true, _)) => {}
                    Ok((false, w)) => failures.push(json!({"m": m, "n": n, "transition": w})),
                    Err(e) => failures.push(json!({"m": m, "n": n, "error": e.to_string()})),
                }
            }
        }
        out.push(CheckRecord::expect(
            "freeness_bases",
            format!("{name} m<=n<={max_n}"),
            failures.is_empty(),
            Some((*lo, max_n)),
            json!({ "failures": failures }),
        ));
    }
    out
}

pub fn resolution_checks(max_object: i32) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for kind in Kind::ALL {
        for coeff in CoefficientId::ALL {
            if !coeff.pairs_with(kind) {
                continue;
            }
            let mut nonzero = Vec::new();
            let mut error = None;
            for c in kind.min_degree()..=max_object {
                match resolution_at(kind, coeff, c).and_then(|r| homology(&r)) {
                    Ok(h) => {
                        for (deg, d) in h.dims() {
                            if d > 0 {
                                nonzero.push(json!({"object": c, "degree": deg, "dim": d}));
                            }
                        }
                    }
                    Err(e) => error = Some(e.to_string()),
                }
            }
            out.push(CheckRecord::expect(
                "resolution_exactness",
                format!("{kind} -> {coeff}"),
                nonzero.is_empty() && error.is_none(),
                Some((kind.min_degree(), max_object)),
                json!({ "nonzero_homology": nonzero, "error": error }),
            ));
        }
    }
    out
}

/// `k[0] -> k_•` over `Ω` is a quasi-isomorphism: `k_•` has homology `k` in degree 0 only.
pub fn constant_coefficient_check(truncation: i32) -> Vec<CheckRecord> {
    let run = || -> Result<CheckRecord> {
        let constant = CoefficientId::KConstant.left_module(Kind::Chain0, truncation)?.dual()?;
        let point = CoefficientId::KPoint.left_module(Kind::Chain0, truncation)?.dual()?;
        let (cc, cp) = (ChainComplex::from_module(&constant)?, ChainComplex::from_module(&point)?);
        let h = homology(&cc)?;
        let expected: Vec<(i32, usize)> = (0..truncation).map(|n| (n, usize::from(n == 0))).collect();
        let mut comps = std::collections::BTreeMap::new();
        comps.insert(0, RatMatrix::identity(1));
        // dual of the inclusion k[0] -> k_•
        let dual = ChainMap::new(cc.clone(), cp, comps)?;
        let iso = homology_map(&dual)?.values().all(|m| m.rows() == m.cols() && m.rank() == m.rows());
        Ok(CheckRecord::expect(
            "k_point_to_k_constant",
            format!("Ω, N={truncation}"),
            h.dims() == expected && iso,
            Some(h.window),
            json!({ "homology": h.summary(), "induced_iso": iso }),
        ))
    };
    vec![run().unwrap_or_else(|e| CheckRecord::error("k_point_to_k_constant", "Ω", &e))]
}

/// The sign-embedding unit at the augmented representable at `[0]`; `truncation` is that of
/// the induced cube module.
pub fn counterexample_checks(truncation: i32) -> Vec<CheckRecord> {
    let run = || -> Result<Vec<CheckRecord>> {
        let instance = format!("aug_ssimp rep[0], N={}", truncation - 1);
        let m = DiagramModule::representable(Kind::AugSsimp, 0, truncation - 1)?;
        let ind = induce(ComparisonFunctor::V, &m)?;
        let mut expected_dims = vec![0; (truncation + 1) as usize];
        expected_dims[0] = 2;
        expected_dims[1] = 1;
        let dims_ok = ind.module.dims() == expected_dims.as_slice() && ind.valid_window == (0, truncation);
        let hm = homology(&augmented_chain(&m)?)?.dim(-1)?;
        let hv = homology(&augmented_chain(&restrict_v(&ind.module)?)?)?.dim(-1)?;
        let unit = ind.unit()?;
        let verdict = check_weak_equivalence(&unit)?;
        let expected_failure = !verdict.holds && verdict.agree && verdict.failures == vec![(-1, 0, 1, 0)];
        let maps = homology_map(&augmented_chain_map(&unit)?)?;
        let others: Vec<(i32, bool)> = maps
            .iter()
            .filter(|(n, _)| **n >= 0)
            .map(|(n, f)| (*n, f.rows() == f.cols() && f.rank() == f.rows()))
            .collect();
        Ok(vec![
            CheckRecord::expect(
                "counterexample.induced_dims",
                instance.clone(),
                dims_ok,
                Some(ind.valid_window),
                json!({ "dims": ind.module.dims(), "expected": expected_dims }),
            ),
            CheckRecord::expect("counterexample.source_h_minus1", instance.clone(), hm == 0, None, json!({ "dim": hm })),
            CheckRecord::expect("counterexample.target_h_minus1", instance.clone(), hv == 1, None, json!({ "dim": hv })),
            CheckRecord::new(
                "counterexample.unit",
                instance.clone(),
                if expected_failure { Verdict::ExpectedFail } else { Verdict::Fail },
                Some(verdict.window),
                json!({ "weak_equivalence": verdict.holds, "conditions": verdict.conditions, "failures": verdict.failures }),
            ),
            CheckRecord::expect(
                "counterexample.unit_other_degrees",
                instance,
                others.iter().all(|(_, b)| *b),
                Some((0, truncation - 2)),
                json!({ "iso_by_degree": others }),
            ),
        ])
    };
    run().unwrap_or_else(|e| vec![CheckRecord::error("counterexample", "aug_ssimp rep[0]", &e)])
}

/// The canonical reproduction of the sign-embedding obstruction.
pub fn run_counterexample(truncation: i32) -> VerificationReport {
    VerificationReport::new(None, truncation, counterexample_checks(truncation))
}
