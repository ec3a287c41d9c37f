use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::coend::{Coend, LeftModuleData};
use super::restrict::augmented_chain;
use crate::chainkit::{brutal_truncation, good_truncation, homology, ChainComplex, ChainMap, HomologyReport};
use crate::diagmod::{DiagramModule, ModuleMap};
use crate::error::{Error, Result};
use crate::exactlin::{quotient_map, RatMatrix, Rational};
use crate::simplexcat::basis::{basis_index, coordinates};
use crate::simplexcat::{hom_basis, ComparisonFunctor, GeneratorId, Kind, LinComb, Morphism, OmegaMap};

/// The coefficient left modules Tor is taken against.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientId {
    /// `k[0]` over `Ω`
    KPoint,
    /// `k_•`, over `Ω` or over an indexing category
    KConstant,
    /// `k_•[0]` over `Δ_{a,inj}`
    KConstantShifted,
    /// `k[-1]` over `Ω_a`
    KPointNeg1,
}

impl CoefficientId {
    pub const ALL: [CoefficientId; 4] = [
        CoefficientId::KPoint,
        CoefficientId::KConstant,
        CoefficientId::KConstantShifted,
        CoefficientId::KPointNeg1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CoefficientId::KPoint => "k_point",
            CoefficientId::KConstant => "k_constant",
            CoefficientId::KConstantShifted => "k_constant_shifted",
            CoefficientId::KPointNeg1 => "k_point_neg1",
        }
    }

    pub fn pairs_with(&self, kind: Kind) -> bool {
        matches!(
            (self, kind),
            (CoefficientId::KPoint, Kind::Chain0)
                | (CoefficientId::KConstant, Kind::Ssimp | Kind::Scube | Kind::AugSsimp | Kind::Chain0)
                | (CoefficientId::KConstantShifted, Kind::AugSsimp)
                | (CoefficientId::KPointNeg1, Kind::ChainNeg1)
        )
    }

    pub fn check_pairing(&self, kind: Kind) -> Result<()> {
        if self.pairs_with(kind) {
            Ok(())
        } else {
            Err(Error::IllegalPairing {
                kind: kind.to_string(),
                coeff: self.to_string(),
            })
        }
    }

    /// The coefficient as a left module on objects up to `top`.
    pub fn left_module(&self, kind: Kind, top: i32) -> Result<LeftModuleData> {
        self.check_pairing(kind)?;
        let lo = kind.min_degree();
        let value = |b: i32| -> usize {
            match self {
                CoefficientId::KPoint => usize::from(b == 0),
                CoefficientId::KPointNeg1 => usize::from(b == -1),
                CoefficientId::KConstantShifted => usize::from(b >= 0),
                CoefficientId::KConstant => 1,
            }
        };
        let dims: Vec<usize> = (lo..=top).map(value).collect();
        let mut actions = BTreeMap::new();
        for g in kind.generators(top) {
            let (s, t) = (value(g.source()), value(g.target()));
            let entry = match (self, g) {
                (CoefficientId::KConstant, GeneratorId::OmegaD { n }) => {
                    // Σ_{i=0}^n (-1)^i
                    if n % 2 == 0 {
                        1
                    } else {
                        0
                    }
                }
                _ => 1,
            };
            let m = if s * t == 1 {
                RatMatrix::from_i64(&[&[entry]])
            } else {
                RatMatrix::zeros(t, s)
            };
            actions.insert(g, m);
        }
        LeftModuleData::new(kind, top, dims, actions)
    }

    /// Objects of the representable summands of `P_n`, up to object `bound`.
    pub fn summands(&self, kind: Kind, n: i32, bound: i32) -> Vec<i32> {
        let objects = match (self, kind) {
            (CoefficientId::KConstant, Kind::AugSsimp) => {
                if n == 0 {
                    vec![-1]
                } else {
                    vec![]
                }
            }
            (CoefficientId::KConstant, Kind::Chain0) if n == 0 => {
                let mut v = vec![0];
                v.extend((1..=bound.max(0)).filter(|k| k % 2 == 1));
                v
            }
            (CoefficientId::KPointNeg1, _) => vec![n - 1],
            _ => vec![n],
        };
        objects.into_iter().filter(|&c| c <= bound).collect()
    }

    /// `(t, s, w)`: the block `P_n[s] -> P_{n-1}[t]` is precomposition with `w`.
    pub fn differential(&self, kind: Kind, n: i32, bound: i32) -> Result<Vec<(usize, usize, LinComb)>> {
        if self.summands(kind, n, bound).is_empty() || n < 1 {
            return Ok(Vec::new());
        }
        let w = match (self, kind) {
            (CoefficientId::KConstant, Kind::Ssimp) => ComparisonFunctor::UDelta.on_generator(GeneratorId::OmegaD { n })?,
            (CoefficientId::KConstant, Kind::Scube) => ComparisonFunctor::USquare.on_generator(GeneratorId::OmegaD { n })?,
            (CoefficientId::KConstantShifted, Kind::AugSsimp) => {
                ComparisonFunctor::UAug.on_generator(GeneratorId::OmegaD { n })?
            }
            (CoefficientId::KPoint | CoefficientId::KConstant, Kind::Chain0) => {
                LinComb::from_morphism(Morphism::Omega(OmegaMap::differential(n)))
            }
            (CoefficientId::KPointNeg1, Kind::ChainNeg1) => {
                LinComb::from_morphism(Morphism::Omega(OmegaMap::differential(n - 1)))
            }
            _ => return Ok(Vec::new()),
        };
        Ok(vec![(0, 0, w)])
    }

    /// Generator of `L(c_s)` hit by each summand of `P_0`.
    fn augmentation(&self, kind: Kind, bound: i32) -> Vec<Vec<Rational>> {
        self.summands(kind, 0, bound).iter().map(|_| vec![Rational::one()]).collect()
    }

    /// Highest homological degree whose terms are all known from a truncation `n`.
    pub fn top_degree(&self, truncation: i32) -> i32 {
        match self {
            CoefficientId::KPointNeg1 => truncation + 1,
            _ => truncation,
        }
    }
}

impl fmt::Display for CoefficientId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoefficientId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CoefficientId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown coefficient {s:?}")))
    }
}

/// Matrix of `φ ↦ φ∘w` from `A(w.target, b)` to `A(w.source, b)`.
fn precompose(kind: Kind, w: &LinComb, b: i32) -> Result<RatMatrix> {
    let from = hom_basis(kind, w.target(), b);
    let to = hom_basis(kind, w.source(), b);
    let index = basis_index(&to);
    let mut m = RatMatrix::zeros(to.len(), from.len());
    for (col, phi) in from.iter().enumerate() {
        for (g, c) in w.terms() {
            if let Some(h) = phi.compose(g)? {
                m[(index[&h], col)] += c;
            }
        }
    }
    Ok(m)
}

fn block_matrix(rows: &[usize], cols: &[usize], blocks: &[(usize, usize, RatMatrix)]) -> RatMatrix {
    let (r, c): (usize, usize) = (rows.iter().sum(), cols.iter().sum());
    let mut out = RatMatrix::zeros(r, c);
    for (t, s, b) in blocks {
        let (r0, c0): (usize, usize) = (rows[..*t].iter().sum(), cols[..*s].iter().sum());
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }
    out
}

/// `X ⊗ P_•` for the hard-coded resolution `P_• -> coeff`, with its coends.
#[derive(Clone, Debug)]
pub struct TorComplex {
    pub coefficient: CoefficientId,
    pub complex: ChainComplex,
    /// per homological degree, the representable objects and their coends
    terms: BTreeMap<i32, Vec<(i32, Coend)>>,
}

impl TorComplex {
    pub fn new(x: &DiagramModule, coeff: CoefficientId) -> Result<Self> {
        let kind = x.kind();
        coeff.check_pairing(kind)?;
        let n = x.truncation();
        let top = coeff.top_degree(n);
        let mut terms = BTreeMap::new();
        for deg in 0..=top {
            let parts = coeff
                .summands(kind, deg, n)
                .into_iter()
                .map(|c| Ok((c, Coend::new(x, &LeftModuleData::representable(kind, c, n)?, n)?)))
                .collect::<Result<Vec<_>>>()?;
            terms.insert(deg, parts);
        }
        let dims_of = |parts: &Vec<(i32, Coend)>| parts.iter().map(|(_, c)| c.dim()).collect::<Vec<_>>();
        let mut diff = BTreeMap::new();
        for deg in 1..=top {
            let (from, to) = (&terms[&deg], &terms[&(deg - 1)]);
            let mut blocks = Vec::new();
            for (t, s, w) in coeff.differential(kind, deg, n)? {
                let left = x
                    .degrees()
                    .map(|b| Ok((b, precompose(kind, &w, b)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                blocks.push((t, s, from[s].1.map_to(&to[t].1, None, Some(&left))?));
            }
            diff.insert(deg, block_matrix(&dims_of(to), &dims_of(from), &blocks));
        }
        let dims = terms.values().map(|p| dims_of(p).iter().sum()).collect();
        let complex = ChainComplex::new(0, top, dims, diff)?;
        Ok(TorComplex {
            coefficient: coeff,
            complex,
            terms,
        })
    }

    /// `f ⊗ P_•`.
    pub fn map_to(&self, target: &TorComplex, f: &ModuleMap) -> Result<ChainMap> {
        let mut comps = BTreeMap::new();
        for (deg, parts) in &self.terms {
            let tparts = &target.terms[deg];
            let rows: Vec<usize> = tparts.iter().map(|(_, c)| c.dim()).collect();
            let cols: Vec<usize> = parts.iter().map(|(_, c)| c.dim()).collect();
            let blocks = parts
                .iter()
                .zip(tparts)
                .enumerate()
                .map(|(s, ((_, a), (_, b)))| Ok((s, s, a.map_to(b, Some(f.components()), None)?)))
                .collect::<Result<Vec<_>>>()?;
            comps.insert(*deg, block_matrix(&rows, &cols, &blocks));
        }
        ChainMap::new(self.complex.clone(), target.complex.clone(), comps)
    }
}

/// `Tor_n(X, coeff)` on the window `[0, top - 1]`.
pub fn tor(x: &DiagramModule, coeff: CoefficientId) -> Result<HomologyReport> {
    homology(&TorComplex::new(x, coeff)?.complex)
}

/// The chain map `Tor(f, coeff)` between the two resolution complexes.
pub fn tor_map(f: &ModuleMap, coeff: CoefficientId) -> Result<ChainMap> {
    let a = TorComplex::new(f.source(), coeff)?;
    let b = TorComplex::new(f.target(), coeff)?;
    a.map_to(&b, f)
}

/// The same complex through co-Yoneda: `X ⊗ A(c, -) = X(c)`, with differential blocks `X(w)`.
pub fn tor_coyoneda_complex(x: &DiagramModule, coeff: CoefficientId) -> Result<ChainComplex> {
    let kind = x.kind();
    coeff.check_pairing(kind)?;
    let n = x.truncation();
    let top = coeff.top_degree(n);
    let dims_at = |deg: i32| -> Vec<usize> { coeff.summands(kind, deg, n).iter().map(|&c| x.dim(c)).collect() };
    let mut diff = BTreeMap::new();
    for deg in 1..=top {
        let blocks = coeff
            .differential(kind, deg, n)?
            .into_iter()
            .map(|(t, s, w)| Ok((t, s, x.act(&w)?)))
            .collect::<Result<Vec<_>>>()?;
        diff.insert(deg, block_matrix(&dims_at(deg - 1), &dims_at(deg), &blocks));
    }
    let dims = (0..=top).map(|d| dims_at(d).iter().sum()).collect();
    ChainComplex::new(0, top, dims, diff)
}

/// `Tor_0` as the plain coend `X ⊗ L` with the coefficient left module.
pub fn tor_zero_direct(x: &DiagramModule, coeff: CoefficientId) -> Result<usize> {
    let l = coeff.left_module(x.kind(), x.truncation())?;
    Ok(Coend::new(x, &l, x.truncation())?.dim())
}

/// The augmented resolution `P_• -> coeff` evaluated at object `c`, as a complex with
/// the coefficient in degree -1.
pub fn resolution_at(kind: Kind, coeff: CoefficientId, c: i32) -> Result<ChainComplex> {
    let l = coeff.left_module(kind, c)?;
    let top = c + 3;
    let mut bases: Vec<Vec<Vec<Morphism>>> = Vec::new();
    for deg in 0..=top {
        bases.push(coeff.summands(kind, deg, c).iter().map(|&o| hom_basis(kind, o, c)).collect());
    }
    let sizes = |deg: usize| -> Vec<usize> { bases[deg].iter().map(Vec::len).collect() };
    let mut diff = BTreeMap::new();
    let objects = coeff.summands(kind, 0, c);
    let gens = coeff.augmentation(kind, c);
    let mut eps = RatMatrix::zeros(l.dim(c), sizes(0).iter().sum());
    let mut col = 0;
    for (s, basis) in bases[0].iter().enumerate() {
        for phi in basis {
            let image = l.act_morphism(phi)?.apply(&gens[s]);
            for (r, v) in image.into_iter().enumerate() {
                eps[(r, col)] = v;
            }
            col += 1;
        }
        debug_assert_eq!(objects[s], basis.first().map_or(objects[s], Morphism::source));
    }
    diff.insert(0, eps);
    for deg in 1..=top {
        let mut blocks = Vec::new();
        for (t, s, w) in coeff.differential(kind, deg, c)? {
            let (from, to) = (&bases[deg as usize][s], &bases[deg as usize - 1][t]);
            let mut m = RatMatrix::zeros(to.len(), from.len());
            for (j, phi) in from.iter().enumerate() {
                let image = LinComb::from_morphism(phi.clone()).compose(&w)?;
                for (i, v) in coordinates(&image, to)?.into_iter().enumerate() {
                    m[(i, j)] = v;
                }
            }
            blocks.push((t, s, m));
        }
        diff.insert(deg, block_matrix(&sizes(deg as usize - 1), &sizes(deg as usize), &blocks));
    }
    let mut dims = vec![l.dim(c)];
    dims.extend((0..=top as usize).map(|d| sizes(d).iter().sum::<usize>()));
    ChainComplex::new(-1, top, dims, diff)
}

/// `0 -> H_0(τX) -> Tor_0(X, k_•[0]) -> X_{-1} -> H^a_{-1}(X) -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegreeSequence {
    /// dimensions of `H_0(τX)`, `Tor_0(X, k_•[0])`, `X_{-1}`, `H^a_{-1}(X)`
    pub dims: [usize; 4],
    /// the three connecting matrices, in order
    pub maps: [RatMatrix; 3],
}

impl LowDegreeSequence {
    /// Exactness at each of the four nodes, including injectivity on the left and
    /// surjectivity on the right.
    pub fn exactness(&self) -> [bool; 4] {
        let r: Vec<usize> = self.maps.iter().map(RatMatrix::rank).collect();
        let composed = [&self.maps[1] * &self.maps[0], &self.maps[2] * &self.maps[1]];
        [
            r[0] == self.dims[0],
            composed[0].is_zero() && r[0] + r[1] == self.dims[1],
            composed[1].is_zero() && r[1] + r[2] == self.dims[2],
            r[2] == self.dims[3],
        ]
    }

    pub fn is_exact(&self) -> bool {
        self.exactness().iter().all(|b| *b)
    }
}

pub fn low_degree_sequence(x: &DiagramModule) -> Result<LowDegreeSequence> {
    if x.kind() != Kind::AugSsimp {
        return Err(Error::KindMismatch {
            expected: Kind::AugSsimp.to_string(),
            found: x.kind().to_string(),
        });
    }
    if x.truncation() < 1 {
        return Err(Error::EmptyWindow("the low-degree sequence needs truncation at least 1".into()));
    }
    let c = augmented_chain(x)?;
    let (tau, inclusion) = good_truncation(&c)?;
    let brutal = brutal_truncation(&c)?;
    let h_tau = homology(&tau)?;
    let h_brutal = homology(&brutal)?;
    let (h0t, h0b) = (h_tau.degree(0)?, h_brutal.degree(0)?);
    let alpha = h0b.classify(&(&inclusion.component(0) * &h0t.representatives))?;
    let beta = &c.differential(0) * &h0b.representatives;
    let gamma = quotient_map(c.dim(-1), &c.differential(0).image_basis())?;
    Ok(LowDegreeSequence {
        dims: [h0t.dim, h0b.dim, c.dim(-1), gamma.rows()],
        maps: [alpha, beta, gamma],
    })
}
