use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::corpus::{generate_corpus, Corpus, CorpusModule, CorpusSpec, Origin};
use super::predicates::{check_fibration, check_weak_equivalence, degreewise_surjective, padded_epimorphism, WeqVerdict};
use super::report::{CheckRecord, Verdict, VerificationReport};
use super::structural::{
    constant_coefficient_check, counterexample_checks, freeness_checks, hom_dimension_checks, resolution_checks,
};
use crate::chainkit::{
    brutal_truncation, good_truncation, homology, is_quasi_iso, reindex_shift, ChainMap,
};
use crate::diagmod::json::{map_to_value, module_to_value};
use crate::diagmod::{DiagramModule, ModuleMap};
use crate::error::Result;
use crate::simplexcat::{ComparisonFunctor, Kind};
use crate::transport::{
    augmented_chain, counit_map, induce, low_degree_sequence, restrict_v, tor, tor_coyoneda_complex, tor_zero_direct,
    underlying_complex, CoefficientId,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BatteryOptions {
    /// record per-task wall time; reports stop being byte-identical
    pub timed: bool,
}

type Task<'a> = Box<dyn Fn() -> Vec<CheckRecord> + Send + Sync + 'a>;

fn guarded(check: &'static str, instance: String, f: impl FnOnce() -> Result<Vec<CheckRecord>>) -> Vec<CheckRecord> {
    f().unwrap_or_else(|e| vec![CheckRecord::error(check, instance, &e)])
}

fn with_module(mut r: CheckRecord, x: &DiagramModule) -> CheckRecord {
    if r.verdict == Verdict::Fail {
        if let Value::Object(m) = &mut r.witness {
            m.insert("instance_data".into(), module_to_value(x));
        }
    }
    r
}

fn with_map(mut r: CheckRecord, f: &ModuleMap) -> CheckRecord {
    if r.verdict == Verdict::Fail {
        if let Value::Object(m) = &mut r.witness {
            m.insert("instance_data".into(), map_to_value(f));
        }
    }
    r
}

fn tor_identification(m: &CorpusModule) -> Vec<CheckRecord> {
    let x = &m.module;
    guarded("tor_identification", m.label.clone(), || {
        let mut out = Vec::new();
        match x.kind() {
            Kind::Ssimp | Kind::Scube => {
                let c = underlying_complex(x)?;
                let t = tor(x, CoefficientId::KConstant)?;
                let h = homology(&c)?;
                let coyoneda = tor_coyoneda_complex(x, CoefficientId::KConstant)? == c;
                let direct = tor_zero_direct(x, CoefficientId::KConstant)?;
                let ok = t.dims() == h.dims() && coyoneda && Some(direct) == t.dim(0).ok();
                out.push(CheckRecord::expect(
                    "tor_identification",
                    m.label.clone(),
                    ok,
                    Some(t.window),
                    json!({"tor": t.dims(), "restricted_homology": h.dims(), "coyoneda_equal": coyoneda, "tor0_direct": direct}),
                ));
            }
            Kind::AugSsimp => {
                let brutal = brutal_truncation(&augmented_chain(x)?)?;
                let t = tor(x, CoefficientId::KConstantShifted)?;
                let h = homology(&brutal)?;
                let coyoneda = tor_coyoneda_complex(x, CoefficientId::KConstantShifted)? == brutal;
                let direct = tor_zero_direct(x, CoefficientId::KConstantShifted)?;
                let ok = t.dims() == h.dims() && coyoneda && Some(direct) == t.dim(0).ok();
                out.push(CheckRecord::expect(
                    "tor_identification",
                    format!("{} (shifted constant)", m.label),
                    ok,
                    Some(t.window),
                    json!({"tor": t.dims(), "nonnegative_homology": h.dims(), "coyoneda_equal": coyoneda, "tor0_direct": direct}),
                ));
                // k_• over the augmented category is free on [-1]
                let t = tor(x, CoefficientId::KConstant)?;
                let ok = t.dims().iter().all(|&(n, d)| d == if n == 0 { x.dim(-1) } else { 0 });
                out.push(CheckRecord::expect(
                    "tor_identification",
                    format!("{} (constant)", m.label),
                    ok,
                    Some(t.window),
                    json!({"tor": t.dims(), "dim_minus_one": x.dim(-1)}),
                ));
            }
            _ => {}
        }
        Ok(out.into_iter().map(|r| with_module(r, x)).collect())
    })
}

fn low_degree(m: &CorpusModule) -> Vec<CheckRecord> {
    if m.module.kind() != Kind::AugSsimp {
        return Vec::new();
    }
    guarded("low_degree_sequence", m.label.clone(), || {
        let s = low_degree_sequence(&m.module)?;
        let r = CheckRecord::expect(
            "low_degree_sequence",
            m.label.clone(),
            s.is_exact(),
            None,
            json!({"dims": s.dims, "exact_at": s.exactness()}),
        );
        Ok(vec![with_module(r, &m.module)])
    })
}

fn sign_shadow(m: &CorpusModule) -> Vec<CheckRecord> {
    let x = &m.module;
    if x.kind() != Kind::Scube {
        return Vec::new();
    }
    guarded("sign_shadow", m.label.clone(), || {
        let n = x.truncation();
        let cube_complex = underlying_complex(x)?;
        let cube = homology(&cube_complex)?;
        let ca = augmented_chain(&restrict_v(x)?)?;
        let aug = homology(&ca)?;
        let (tau, _) = good_truncation(&ca)?;
        let tau_h = homology(&tau)?;
        let mut mismatches = Vec::new();
        for k in 0..=n - 2 {
            let (l, r) = (tau_h.dim(k)?, cube.dim(k + 1)?);
            if l != r {
                mismatches.push(json!({"degree": k, "tau": l, "cube": r}));
            }
        }
        let (hm1, h0) = (aug.dim(-1)?, cube.dim(0)?);
        let same_spaces = reindex_shift(&ca, 1)? == cube_complex;
        let r = CheckRecord::expect(
            "sign_shadow",
            m.label.clone(),
            mismatches.is_empty() && hm1 == h0 && same_spaces,
            Some((0, n - 2)),
            json!({"mismatches": mismatches, "h_minus_one": hm1, "cube_h0": h0, "identical_complexes": same_spaces}),
        );
        Ok(vec![with_module(r, x)])
    })
}

fn choose(n: i64, k: i64) -> usize {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as usize
}

/// Free generators at `b` of `A(a, u -)` over the chain algebra, by the alternating recursion.
fn free_count(a: i32, b: i32) -> usize {
    if b < a {
        return 0;
    }
    let mut g = 0i64;
    for n in a..=b {
        g = choose((n + 1).into(), (a + 1).into()) as i64 - g;
    }
    g as usize
}

fn expected_induced_dim(functor: ComparisonFunctor, source: &DiagramModule, a: i32) -> usize {
    match functor {
        ComparisonFunctor::V => source.degrees().map(|q| choose((q + 1).into(), a.into()) * source.dim(q)).sum(),
        _ => source.degrees().map(|b| free_count(a, b) * source.dim(b)).sum(),
    }
}

fn induction_checks(m: &CorpusModule) -> Vec<CheckRecord> {
    let Origin::Induced { functor, source } = &m.origin else {
        return Vec::new();
    };
    let functor = *functor;
    guarded("induction_freeness", m.label.clone(), || {
        let ind = induce(functor, source)?;
        let (lo, hi) = ind.valid_window;
        let mut mismatches = Vec::new();
        for a in lo..=hi.min(m.module.truncation()) {
            let (found, expected) = (ind.module.dim(a), expected_induced_dim(functor, source, a));
            if found != expected || m.module.dim(a) != found {
                mismatches.push(json!({"degree": a, "dim": found, "free_count": expected}));
            }
        }
        let mut out = vec![with_module(
            CheckRecord::expect(
                "induction_freeness",
                m.label.clone(),
                mismatches.is_empty(),
                Some(ind.valid_window),
                json!({"mismatches": mismatches}),
            ),
            source,
        )];
        if functor != ComparisonFunctor::V {
            let unit = ind.unit()?;
            let v = is_quasi_iso(&ChainMap::from_module_map(&unit)?)?;
            out.push(unit_counit_record(functor, "unit", &m.label, v.holds, v.window, &v.failures, &unit));
        }
        Ok(out)
    })
}

fn unit_counit_record(
    functor: ComparisonFunctor,
    which: &str,
    label: &str,
    holds: bool,
    window: (i32, i32),
    failures: &[(i32, usize, usize, usize)],
    map: &ModuleMap,
) -> CheckRecord {
    let verdict = match (holds, functor) {
        (true, _) => Verdict::Pass,
        // the claim for the nonaugmented functor does not survive computation
        (false, ComparisonFunctor::UDelta) => Verdict::Refuted,
        (false, _) => Verdict::Fail,
    };
    with_map(
        CheckRecord::new(
            "unit_counit",
            format!("{which} {functor} at {label}"),
            verdict,
            Some(window),
            json!({"failures": failures}),
        ),
        map,
    )
}

fn counit_checks(m: &CorpusModule, max_dim: usize) -> Vec<CheckRecord> {
    let x = &m.module;
    let functor = match x.kind() {
        Kind::Ssimp => ComparisonFunctor::UDelta,
        Kind::AugSsimp => ComparisonFunctor::UAug,
        _ => return Vec::new(),
    };
    if x.total_dim() > 4 * max_dim {
        return Vec::new();
    }
    guarded("unit_counit", m.label.clone(), || {
        let (_, eps) = counit_map(functor, x)?;
        let c = match functor {
            ComparisonFunctor::UDelta => crate::transport::underlying_complex_map(&eps)?,
            _ => crate::transport::augmented_chain_map(&eps)?,
        };
        let v = is_quasi_iso(&c)?;
        Ok(vec![unit_counit_record(functor, "counit", &m.label, v.holds, v.window, &v.failures, &eps)])
    })
}

fn v_unit(m: &CorpusModule, max_dim: usize) -> Vec<CheckRecord> {
    let x = &m.module;
    if x.kind() != Kind::AugSsimp || x.total_dim() > 4 * max_dim {
        return Vec::new();
    }
    guarded("v_unit", m.label.clone(), || {
        let ind = induce(ComparisonFunctor::V, x)?;
        let unit = ind.unit()?;
        let w = check_weak_equivalence(&unit)?;
        Ok(vec![CheckRecord::new(
            "v_unit",
            m.label.clone(),
            if w.agree { Verdict::Recorded } else { Verdict::Fail },
            Some(w.window),
            json!({"weak_equivalence": w.holds, "conditions": w.conditions, "failures": w.failures}),
        )])
    })
}

fn fibration_fixtures(m: &CorpusModule) -> Vec<CheckRecord> {
    let x = &m.module;
    guarded("fibration_detection", m.label.clone(), || {
        let pad = DiagramModule::representable(x.kind(), x.kind().min_degree().max(0), x.truncation())?;
        let p = padded_epimorphism(x, &pad)?;
        let mut out = vec![with_map(
            CheckRecord::expect(
                "fibration_detection",
                format!("padded projection onto {}", m.label),
                check_fibration(&p)?.holds,
                None,
                json!({}),
            ),
            &p,
        )];
        if !x.is_zero() {
            let z = ModuleMap::zero(&DiagramModule::zero(x.kind(), x.truncation()), x)?;
            let v = check_fibration(&z)?;
            out.push(with_map(
                CheckRecord::expect(
                    "fibration_detection",
                    format!("zero into {}", m.label),
                    !v.holds,
                    None,
                    json!({"route": v.route, "failures": v.failures}),
                ),
                &z,
            ));
        }
        Ok(out)
    })
}

fn weq_record(label: &str, f: &ModuleMap, w: &Result<WeqVerdict>) -> CheckRecord {
    match w {
        Ok(w) => with_map(
            CheckRecord::expect(
                "weak_equivalence_agreement",
                label,
                w.agree,
                Some(w.window),
                json!({"kind": w.kind, "conditions": w.conditions, "holds": w.holds, "failures": w.failures}),
            ),
            f,
        ),
        Err(e) => CheckRecord::error("weak_equivalence_agreement", label, e),
    }
}

fn fibration_record(label: &str, f: &ModuleMap) -> CheckRecord {
    match check_fibration(f) {
        Ok(v) => {
            let plain = degreewise_surjective(f);
            with_map(
                CheckRecord::expect(
                    "fibration_detection",
                    label,
                    v.holds == plain,
                    None,
                    json!({"route": v.route, "holds": v.holds, "degreewise_surjective": plain, "failures": v.failures}),
                ),
                f,
            )
        }
        Err(e) => CheckRecord::error("fibration_detection", label, &e),
    }
}

fn two_out_of_three(corpus: &Corpus, verdicts: &[Option<bool>], f: usize, g: usize) -> CheckRecord {
    let label = format!("{} then {}", corpus.maps[f].label, corpus.maps[g].label);
    let composite = corpus.maps[g]
        .map
        .compose(&corpus.maps[f].map)
        .and_then(|gf| check_weak_equivalence(&gf));
    match (verdicts[f], verdicts[g], composite) {
        (Some(a), Some(b), Ok(c)) => {
            let count = [a, b, c.holds].iter().filter(|x| **x).count();
            CheckRecord::expect(
                "two_out_of_three",
                label,
                count != 2,
                None,
                json!({"f": a, "g": b, "gf": c.holds}),
            )
        }
        (_, _, Err(e)) => CheckRecord::error("two_out_of_three", label, &e),
        _ => CheckRecord::new(
            "two_out_of_three",
            label,
            Verdict::Fail,
            None,
            json!({"error": "a factor has no verdict"}),
        ),
    }
}

fn structural_tasks<'a>(truncation: i32) -> Vec<Task<'a>> {
    vec![
        Box::new(|| hom_dimension_checks(6)),
        Box::new(|| freeness_checks(5)),
        Box::new(|| resolution_checks(4)),
        Box::new(move || constant_coefficient_check(truncation)),
        Box::new(move || counterexample_checks(truncation)),
    ]
}

fn run_tasks(tasks: &[Task<'_>], options: BatteryOptions) -> Vec<CheckRecord> {
    tasks
        .par_iter()
        .map(|t| {
            let start = Instant::now();
            let mut records = t();
            if options.timed {
                let ms = start.elapsed().as_millis() as u64;
                for r in &mut records {
                    r.elapsed_ms = Some(ms);
                }
            }
            records
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Structural checks, the counterexample, and every per-instance check over the corpus.
/// Records are ordered by instance, whatever order the workers finish in.
pub fn run_battery_with(spec: &CorpusSpec, options: BatteryOptions) -> Result<VerificationReport> {
    let corpus = generate_corpus(spec)?;
    let max_dim = spec.max_dim;
    let mut tasks: Vec<Task<'_>> = structural_tasks(spec.truncation);
    for m in &corpus.modules {
        tasks.push(Box::new(move || tor_identification(m)));
        tasks.push(Box::new(move || low_degree(m)));
        tasks.push(Box::new(move || sign_shadow(m)));
        tasks.push(Box::new(move || induction_checks(m)));
        tasks.push(Box::new(move || counit_checks(m, max_dim)));
        tasks.push(Box::new(move || v_unit(m, max_dim)));
        tasks.push(Box::new(move || fibration_fixtures(m)));
    }
    let mut checks = run_tasks(&tasks, options);

    let weq: Vec<Result<WeqVerdict>> = corpus.maps.par_iter().map(|f| check_weak_equivalence(&f.map)).collect();
    for (f, w) in corpus.maps.iter().zip(&weq) {
        checks.push(weq_record(&f.label, &f.map, w));
    }
    let fib: Vec<CheckRecord> = corpus.maps.par_iter().map(|f| fibration_record(&f.label, &f.map)).collect();
    checks.extend(fib);
    let holds: Vec<Option<bool>> = weq.iter().map(|w| w.as_ref().ok().map(|w| w.holds)).collect();
    let pairs: Vec<CheckRecord> = corpus
        .pairs
        .par_iter()
        .map(|&(f, g)| two_out_of_three(&corpus, &holds, f, g))
        .collect();
    checks.extend(pairs);

    Ok(VerificationReport::new(Some(spec.seed), spec.truncation, checks))
}

pub fn run_battery(spec: &CorpusSpec) -> Result<VerificationReport> {
    run_battery_with(spec, BatteryOptions::default())
}
