use std::collections::BTreeMap;

use crate::diagmod::DiagramModule;
use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Rational, SparseQuotient};
use crate::simplexcat::basis::{basis_index, coordinates};
use crate::simplexcat::{
    coface_factorization, cube_coface_factorization, hom_basis, ComparisonFunctor, GeneratorId, Kind, LinComb,
    Morphism,
};

/// A left module over a truncated indexing algebra: `action(g)` for `g : b-1 -> b` is the
/// `dim(b) × dim(b-1)` matrix of `L(g) : L(b-1) -> L(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModuleData {
    kind: Kind,
    top: i32,
    dims: Vec<usize>,
    actions: BTreeMap<GeneratorId, RatMatrix>,
}

impl LeftModuleData {
    /// Checks shapes; missing generators act by zero.
    pub fn new(kind: Kind, top: i32, dims: Vec<usize>, actions: BTreeMap<GeneratorId, RatMatrix>) -> Result<Self> {
        let lo = kind.min_degree();
        if dims.len() as i32 != top - lo + 1 {
            return Err(Error::DimensionMismatch {
                context: "left module dims".into(),
                expected: (top - lo + 1).max(0) as usize,
                found: dims.len(),
            });
        }
        let mut l = LeftModuleData {
            kind,
            top,
            dims,
            actions: BTreeMap::new(),
        };
        for g in kind.generators(top) {
            let shape = (l.dim(g.target()), l.dim(g.source()));
            let a = actions.get(&g).cloned().unwrap_or_else(|| RatMatrix::zeros(shape.0, shape.1));
            if a.shape() != shape {
                return Err(Error::ShapeMismatch {
                    context: format!("left action of {g}"),
                    left: shape,
                    right: a.shape(),
                });
            }
            l.actions.insert(g, a);
        }
        Ok(l)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn top(&self) -> i32 {
        self.top
    }

    pub fn dim(&self, b: i32) -> usize {
        if b < self.kind.min_degree() || b > self.top {
            return 0;
        }
        self.dims[(b - self.kind.min_degree()) as usize]
    }

    pub fn action(&self, g: &GeneratorId) -> &RatMatrix {
        &self.actions[g]
    }

    /// The right module with transposed actions; it validates exactly when `self` is a left module.
    pub fn dual(&self) -> Result<DiagramModule> {
        let actions = self.actions.iter().map(|(g, a)| (*g, a.transpose())).collect();
        DiagramModule::new(self.kind, self.top, self.dims.clone(), actions)
    }

    /// `L(f)` for one morphism, covariantly: `L(f∘g) = L(f) L(g)`.
    pub fn act_morphism(&self, f: &Morphism) -> Result<RatMatrix> {
        let word = match f {
            Morphism::Inj(g) => coface_factorization(g),
            Morphism::Cube(g) => cube_coface_factorization(g),
            Morphism::Omega(g) if g.is_identity() => Vec::new(),
            Morphism::Omega(g) => vec![GeneratorId::OmegaD { n: g.target() }],
        };
        let mut out = RatMatrix::identity(self.dim(f.source()));
        for g in word.iter().rev() {
            out = &self.actions[g] * &out;
        }
        Ok(out)
    }

    /// The representable left module `A(c, -)` with postcomposition actions.
    pub fn representable(kind: Kind, c: i32, top: i32) -> Result<Self> {
        let bases: BTreeMap<i32, Vec<Morphism>> =
            (kind.min_degree()..=top).map(|b| (b, hom_basis(kind, c, b))).collect();
        let dims = bases.values().map(Vec::len).collect();
        let mut actions = BTreeMap::new();
        for g in kind.generators(top) {
            let (from, to) = (&bases[&g.source()], &bases[&g.target()]);
            let index = basis_index(to);
            let gm = g.morphism()?;
            let mut a = RatMatrix::zeros(to.len(), from.len());
            for (col, phi) in from.iter().enumerate() {
                if let Some(h) = gm.compose(phi)? {
                    a[(index[&h], col)] = Rational::one();
                }
            }
            actions.insert(g, a);
        }
        LeftModuleData::new(kind, top, dims, actions)
    }

    /// `b ↦ A(a, u b)` over the source of `u`, acted on by `φ ↦ u(h)∘φ`.
    pub fn along(u: ComparisonFunctor, a: i32, top: i32) -> Result<Self> {
        let (src, tgt) = (u.source_kind(), u.target_kind());
        let bases: BTreeMap<i32, Vec<Morphism>> = (src.min_degree()..=top)
            .map(|b| (b, hom_basis(tgt, a, u.on_object(b))))
            .collect();
        let dims = bases.values().map(Vec::len).collect();
        let mut actions = BTreeMap::new();
        for h in src.generators(top) {
            let (from, to) = (&bases[&h.source()], &bases[&h.target()]);
            let uh = u.on_generator(h)?;
            let mut m = RatMatrix::zeros(to.len(), from.len());
            for (col, phi) in from.iter().enumerate() {
                let image = uh.compose(&LinComb::from_morphism(phi.clone()))?;
                for (row, x) in coordinates(&image, to)?.into_iter().enumerate() {
                    m[(row, col)] = x;
                }
            }
            actions.insert(h, m);
        }
        LeftModuleData::new(src, top, dims, actions)
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &LeftModuleData) -> Result<Self> {
        if self.kind != other.kind || self.top != other.top {
            return Err(Error::Invalid("direct sum of left modules of different shapes".into()));
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let actions = self
            .actions
            .iter()
            .map(|(g, a)| (*g, a.block_diag(&other.actions[g])))
            .collect();
        LeftModuleData::new(self.kind, self.top, dims, actions)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Layer {
    offset: usize,
    right: usize,
    left: usize,
}

/// The coend `X ⊗ L = ⊕_b X(b) ⊗ L(b)` modulo `X(g)x ⊗ l - x ⊗ L(g)l`, over the
/// objects `b <= top`.
///
/// Ambient coordinates run over layers in decreasing `b`, so the surviving basis
/// prefers low layers.
#[derive(Clone, Debug)]
pub struct Coend {
    layers: BTreeMap<i32, Layer>,
    quotient: SparseQuotient,
}

impl Coend {
    pub fn new(x: &DiagramModule, l: &LeftModuleData, top: i32) -> Result<Self> {
        if x.kind() != l.kind() {
            return Err(Error::KindMismatch {
                expected: x.kind().to_string(),
                found: l.kind().to_string(),
            });
        }
        let lo = x.min_degree();
        let top = top.min(x.truncation()).min(l.top());
        let mut layers = BTreeMap::new();
        let mut offset = 0;
        for b in (lo..=top).rev() {
            let layer = Layer {
                offset,
                right: x.dim(b),
                left: l.dim(b),
            };
            offset += layer.right * layer.left;
            layers.insert(b, layer);
        }
        let ambient = offset;
        let mut relations = Vec::new();
        for b in lo + 1..=top {
            let (hi, lw) = (layers[&b], layers[&(b - 1)]);
            for g in x.kind().generators_into(b) {
                let xg = x.action(&g)?;
                let lg = l.action(&g);
                for i in 0..hi.right {
                    for j in 0..lw.left {
                        let mut rel: Vec<(usize, Rational)> = Vec::new();
                        for r in 0..lw.right {
                            let c = &xg[(r, i)];
                            if !c.is_zero() {
                                rel.push((lw.offset + r * lw.left + j, c.clone()));
                            }
                        }
                        for s in 0..hi.left {
                            let c = &lg[(s, j)];
                            if !c.is_zero() {
                                rel.push((hi.offset + i * hi.left + s, -c));
                            }
                        }
                        if !rel.is_empty() {
                            relations.push(rel);
                        }
                    }
                }
            }
        }
        let quotient = SparseQuotient::new(ambient, relations);
        Ok(Coend { layers, quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    pub fn top_layer(&self) -> Option<i32> {
        self.layers.keys().next_back().copied()
    }

    pub fn coordinate(&self, b: i32, i: usize, j: usize) -> Option<usize> {
        let l = self.layers.get(&b)?;
        (i < l.right && j < l.left).then(|| l.offset + i * l.left + j)
    }

    fn label_of(&self, c: usize) -> (i32, usize, usize) {
        for (b, l) in &self.layers {
            if c >= l.offset && c < l.offset + l.right * l.left {
                let k = c - l.offset;
                return (*b, k / l.left, k % l.left);
            }
        }
        unreachable!("coordinate inside the ambient space")
    }

    /// `(b, right index, left index)` of each basis vector of the coend, in basis order.
    pub fn labels(&self) -> Vec<(i32, usize, usize)> {
        self.quotient.basis_coordinates().iter().map(|&c| self.label_of(c)).collect()
    }

    /// Class of `x_i ⊗ l_j` in layer `b`.
    pub fn class_of(&self, b: i32, i: usize, j: usize) -> Result<Vec<Rational>> {
        let c = self
            .coordinate(b, i, j)
            .ok_or_else(|| Error::Invalid(format!("no coordinate ({b}, {i}, {j}) in the coend")))?;
        Ok(self.quotient.project(&[(c, Rational::one())]))
    }

    /// The map of coends induced by `X(b) -> X'(b)` and `L(b) -> L'(b)` in each layer of
    /// `self`; `None` means the identity.
    pub fn map_to(
        &self,
        target: &Coend,
        right: Option<&BTreeMap<i32, RatMatrix>>,
        left: Option<&BTreeMap<i32, RatMatrix>>,
    ) -> Result<RatMatrix> {
        let mut cols = Vec::with_capacity(self.dim());
        for (b, i, j) in self.labels() {
            let tl = target
                .layers
                .get(&b)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("target coend lacks layer {b}")))?;
            let ri: Vec<(usize, Rational)> = match right.and_then(|m| m.get(&b)) {
                Some(m) => (0..m.rows()).filter(|&r| !m[(r, i)].is_zero()).map(|r| (r, m[(r, i)].clone())).collect(),
                None => vec![(i, Rational::one())],
            };
            let lj: Vec<(usize, Rational)> = match left.and_then(|m| m.get(&b)) {
                Some(m) => (0..m.rows()).filter(|&s| !m[(s, j)].is_zero()).map(|s| (s, m[(s, j)].clone())).collect(),
                None => vec![(j, Rational::one())],
            };
            let mut v = Vec::with_capacity(ri.len() * lj.len());
            for (r, a) in &ri {
                for (s, c) in &lj {
                    if *r >= tl.right || *s >= tl.left {
                        return Err(Error::ShapeMismatch {
                            context: format!("coend map in layer {b}"),
                            left: (tl.right, tl.left),
                            right: (r + 1, s + 1),
                        });
                    }
                    v.push((tl.offset + r * tl.left + s, a * c));
                }
            }
            cols.push(target.quotient.project(&v));
        }
        Ok(RatMatrix::from_columns(target.dim(), &cols))
    }
}
