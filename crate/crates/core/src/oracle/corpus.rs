use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chainkit::{disk_sphere_complex, Cell, ChainComplex};
use crate::diagmod::{DiagramModule, ModuleMap};
use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Rational};
use crate::simplexcat::{hom_basis, hom_count, ComparisonFunctor, Kind, LinComb};
use crate::transport::{counit_map, induce};

pub const DEFAULT_SEED: u64 = 20_240_607;
pub const MAX_TRUNC_VAR: &str = "SEMIHOMOLOGY_MAX_TRUNC";
const DEFAULT_MAX_TRUNC: i32 = 8;

/// The hard cap on truncations, from `SEMIHOMOLOGY_MAX_TRUNC` (default 8).
pub fn max_truncation() -> i32 {
    std::env::var(MAX_TRUNC_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_TRUNC)
}

/// Parameters of a random corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub truncation: i32,
    /// bound on the dimension of representables and generating complexes in each degree
    pub max_dim: usize,
    pub representables: usize,
    pub induced: usize,
    pub sums: usize,
    pub yoneda_maps: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: DEFAULT_SEED,
            truncation: 5,
            max_dim: 6,
            representables: 9,
            induced: 9,
            sums: 7,
            yoneda_maps: 8,
        }
    }
}

impl CorpusSpec {
    pub fn empty(seed: u64, truncation: i32) -> Self {
        CorpusSpec {
            seed,
            truncation,
            representables: 0,
            induced: 0,
            sums: 0,
            yoneda_maps: 0,
            ..CorpusSpec::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let cap = max_truncation();
        if self.truncation < 2 || self.truncation > cap {
            return Err(Error::Invalid(format!(
                "truncation {} outside 2..={cap} (cap from {MAX_TRUNC_VAR})",
                self.truncation
            )));
        }
        if self.max_dim == 0 {
            return Err(Error::Invalid("max_dim must be positive".into()));
        }
        Ok(())
    }

    pub fn module_count(&self) -> usize {
        self.representables + self.induced + self.sums
    }
}

/// How a corpus module was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Representable(i32),
    /// `functor_!` of `source`
    Induced {
        functor: ComparisonFunctor,
        source: DiagramModule,
    },
    Sum(usize, usize),
}

#[derive(Clone, Debug)]
pub struct CorpusModule {
    pub label: String,
    pub module: DiagramModule,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct CorpusMap {
    pub label: String,
    pub map: ModuleMap,
}

/// Modules, maps and composable pairs `(f, g)` of maps with `g ∘ f` defined.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub spec: CorpusSpec,
    pub modules: Vec<CorpusModule>,
    pub maps: Vec<CorpusMap>,
    pub pairs: Vec<(usize, usize)>,
}

const KINDS: [Kind; 3] = [Kind::Ssimp, Kind::AugSsimp, Kind::Scube];

fn representable_objects(kind: Kind, n: i32, max_dim: usize) -> Vec<i32> {
    (kind.min_degree()..n)
        .filter(|&c| (kind.min_degree()..=n).all(|m| hom_count(kind, m, c) as usize <= max_dim))
        .collect()
}

fn small_entry(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-2..=2)
}

/// A random matrix of determinant 1: lower times upper unitriangular.
fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let mut l = RatMatrix::identity(n);
    let mut u = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = Rational::from(small_entry(rng));
            u[(j, i)] = Rational::from(small_entry(rng));
        }
    }
    &l * &u
}

/// A twisted sum of one to three cells between `lower` and `hi`.
pub fn random_complex(rng: &mut ChaCha8Rng, lower: i32, hi: i32, truncation: i32) -> Result<(ChainComplex, String)> {
    let count = rng.gen_range(1..=3);
    let mut cells = Vec::new();
    let mut names = Vec::new();
    for _ in 0..count {
        let cell = if hi > lower && rng.gen_bool(0.5) {
            Cell::Disk(rng.gen_range(lower + 1..=hi))
        } else {
            Cell::Sphere(rng.gen_range(lower..=hi))
        };
        names.push(match cell {
            Cell::Disk(n) => format!("D{n}"),
            Cell::Sphere(n) => format!("S{n}"),
        });
        cells.push(cell);
    }
    let plain = disk_sphere_complex(lower, truncation, &cells, None)?;
    let twist: BTreeMap<i32, RatMatrix> = plain
        .degrees()
        .map(|n| (n, random_invertible(rng, plain.dim(n))))
        .collect();
    let c = disk_sphere_complex(lower, truncation, &cells, Some(&twist))?;
    Ok((c, names.join("+")))
}

fn random_lincomb(rng: &mut ChaCha8Rng, kind: Kind, c: i32, c2: i32) -> Result<LinComb> {
    let mut w = LinComb::zero(c, c2);
    for m in hom_basis(kind, c, c2) {
        let x = small_entry(rng);
        if x != 0 {
            w.add_term(m, &Rational::from(x))?;
        }
    }
    Ok(w)
}

fn induced_module(
    rng: &mut ChaCha8Rng,
    kind: Kind,
    n: i32,
    cap: usize,
) -> Result<Option<(DiagramModule, Origin, String)>> {
    let (functor, source, name) = match kind {
        Kind::Ssimp => {
            let (c, name) = random_complex(rng, 0, n - 1, n)?;
            (ComparisonFunctor::UDelta, c.to_module(), name)
        }
        Kind::AugSsimp => {
            let (c, name) = random_complex(rng, -1, n - 1, n)?;
            (ComparisonFunctor::UAug, c.to_module(), name)
        }
        _ => {
            let (c, name) = random_complex(rng, -1, (n - 3).max(-1), n - 1)?;
            let inner = induce(ComparisonFunctor::UAug, &c.to_module())?;
            (ComparisonFunctor::V, inner.module, format!("u_a!({name})"))
        }
    };
    let ind = induce(functor, &source)?;
    if ind.valid_window.1 < n || ind.module.dims().iter().any(|&d| d > cap) {
        return Ok(None);
    }
    let module = ind.module.truncate_to(n)?;
    Ok(Some((module, Origin::Induced { functor, source }, format!("{functor}!({name})"))))
}

/// Deterministic in the seed; every module validates and vanishes in the top degree.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.truncation;
    let mut modules: Vec<CorpusModule> = Vec::new();

    for i in 0..spec.representables {
        let kind = KINDS[i % 3];
        let objects = representable_objects(kind, n, spec.max_dim);
        let c = objects[rng.gen_range(0..objects.len())];
        modules.push(CorpusModule {
            label: format!("{kind} rep[{c}]"),
            module: DiagramModule::representable(kind, c, n)?,
            origin: Origin::Representable(c),
        });
    }

    for i in 0..spec.induced {
        let kind = KINDS[i % 3];
        let mut made = None;
        for _ in 0..32 {
            if let Some(x) = induced_module(&mut rng, kind, n, 3 * spec.max_dim)? {
                made = Some(x);
                break;
            }
        }
        let (module, origin, label) = match made {
            Some(x) => x,
            None => {
                let c = representable_objects(kind, n, spec.max_dim)[0];
                (DiagramModule::representable(kind, c, n)?, Origin::Representable(c), format!("{kind} rep[{c}]"))
            }
        };
        modules.push(CorpusModule {
            label: format!("{kind} {label}"),
            module,
            origin,
        });
    }

    let base = modules.len();
    for i in 0..spec.sums {
        let kind = KINDS[i % 3];
        let pool: Vec<usize> = (0..base).filter(|&j| modules[j].module.kind() == kind).collect();
        if pool.is_empty() {
            continue;
        }
        let (a, b) = (pool[rng.gen_range(0..pool.len())], pool[rng.gen_range(0..pool.len())]);
        modules.push(CorpusModule {
            label: format!("#{a} ⊕ #{b}"),
            module: modules[a].module.direct_sum(&modules[b].module)?,
            origin: Origin::Sum(a, b),
        });
    }

    let mut maps: Vec<CorpusMap> = Vec::new();
    let mut pairs = Vec::new();
    let push = |maps: &mut Vec<CorpusMap>, label: String, map: ModuleMap| {
        maps.push(CorpusMap { label, map });
        maps.len() - 1
    };

    for (i, m) in modules.iter().enumerate() {
        let id = push(&mut maps, format!("id #{i}"), ModuleMap::identity(&m.module));
        if let Origin::Sum(a, b) = m.origin {
            let [inx, iny, prx, pry] = ModuleMap::sum_structure(&modules[a].module, &modules[b].module)?;
            let ix = push(&mut maps, format!("in1 #{i}"), inx);
            let iy = push(&mut maps, format!("in2 #{i}"), iny);
            let px = push(&mut maps, format!("pr1 #{i}"), prx);
            let py = push(&mut maps, format!("pr2 #{i}"), pry);
            pairs.extend([(ix, px), (iy, px), (ix, py), (px, ix), (id, px)]);
        }
    }

    for i in 0..modules.len() {
        let j = rng.gen_range(0..modules.len());
        let (x, y) = (&modules[i].module, &modules[j].module);
        if x.kind() == y.kind() && i != j {
            push(&mut maps, format!("0: #{i} -> #{j}"), ModuleMap::zero(x, y)?);
        }
    }

    for (i, m) in modules.iter().enumerate() {
        let u = match m.module.kind() {
            Kind::Ssimp => ComparisonFunctor::UDelta,
            Kind::AugSsimp => ComparisonFunctor::UAug,
            _ => continue,
        };
        if m.module.total_dim() > 4 * spec.max_dim {
            continue;
        }
        let (_, eps) = counit_map(u, &m.module)?;
        let e = push(&mut maps, format!("counit {u} #{i}"), eps.clone());
        let id = push(&mut maps, format!("id of counit target #{i}"), ModuleMap::identity(eps.target()));
        pairs.push((e, id));
    }

    for i in 0..spec.yoneda_maps {
        let kind = KINDS[i % 3];
        let objects = representable_objects(kind, n, spec.max_dim);
        let mut pick = || objects[rng.gen_range(0..objects.len())];
        let mut cs = [pick(), pick(), pick()];
        cs.sort();
        let w1 = random_lincomb(&mut rng, kind, cs[0], cs[1])?;
        let w2 = random_lincomb(&mut rng, kind, cs[1], cs[2])?;
        let f = push(&mut maps, format!("{kind} y({})", w1), ModuleMap::yoneda(kind, &w1, n)?);
        let g = push(&mut maps, format!("{kind} y({})", w2), ModuleMap::yoneda(kind, &w2, n)?);
        pairs.push((f, g));
    }

    Ok(Corpus {
        spec: spec.clone(),
        modules,
        maps,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_shape() {
        let spec = CorpusSpec::default();
        let corpus = generate_corpus(&spec).unwrap();
        assert_eq!(corpus.modules.len(), 25);
        for m in &corpus.modules {
            assert!(m.module.validate().is_ok(), "{}", m.label);
            assert_eq!(m.module.truncation(), spec.truncation);
            assert_eq!(m.module.dim(spec.truncation), 0, "{}", m.label);
        }
        for f in &corpus.maps {
            assert!(f.map.check().is_ok(), "{}", f.label);
        }
        for &(f, g) in &corpus.pairs {
            assert!(corpus.maps[g].map.compose(&corpus.maps[f].map).is_ok());
        }
    }

    #[test]
    fn deterministic_in_the_seed() {
        let spec = CorpusSpec::default();
        let a = generate_corpus(&spec).unwrap();
        let b = generate_corpus(&spec).unwrap();
        let labels = |c: &Corpus| c.modules.iter().map(|m| (m.label.clone(), m.module.clone())).collect::<Vec<_>>();
        assert_eq!(labels(&a), labels(&b));
        assert!(generate_corpus(&CorpusSpec::empty(1, 4)).unwrap().modules.is_empty());
    }

    #[test]
    fn truncation_cap() {
        let spec = CorpusSpec {
            truncation: 40,
            ..CorpusSpec::default()
        };
        assert!(spec.validate().is_err());
    }
}
