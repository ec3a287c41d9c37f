use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Rational};
use crate::simplexcat::basis::basis_index;
use crate::simplexcat::{
    coface_factorization, cube_coface_factorization, hom_basis, GeneratorId, Kind, LinComb, Morphism,
};

/// The first defining identity a module or map fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub degree: i32,
    pub relation: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relation {} fails at degree {}", self.relation, self.degree)
    }
}

/// A right module over the truncation of an indexing algebra at degree `N`.
///
/// `action(g)` for a generator `g : n-1 -> n` is the `dim(n-1) × dim(n)` matrix of
/// `X(g) : X_n -> X_{n-1}`.
#[derive(Clone)]
pub struct DiagramModule {
    kind: Kind,
    truncation: i32,
    dims: Vec<usize>,
    actions: BTreeMap<GeneratorId, RatMatrix>,
    verified: bool,
}

impl DiagramModule {
    /// Builds a module after checking shapes. Generators left out act by zero.
    /// The defining identities are not checked; call [`DiagramModule::validated`].
    pub fn new(
        kind: Kind,
        truncation: i32,
        dims: Vec<usize>,
        actions: BTreeMap<GeneratorId, RatMatrix>,
    ) -> Result<Self> {
        let lo = kind.min_degree();
        if truncation < lo {
            return Err(Error::Invalid(format!("truncation {truncation} below {lo} for {kind}")));
        }
        let expected = (truncation - lo + 1) as usize;
        if dims.len() != expected {
            return Err(Error::DimensionMismatch {
                context: format!("dims of a {kind} module truncated at {truncation}"),
                expected,
                found: dims.len(),
            });
        }
        let mut x = DiagramModule {
            kind,
            truncation,
            dims,
            actions: BTreeMap::new(),
            verified: false,
        };
        let legal = kind.generators(truncation);
        for (g, a) in actions {
            if !legal.contains(&g) {
                return Err(Error::Invalid(format!("generator {g} is not in {kind} up to {truncation}")));
            }
            let shape = (x.dim(g.source()), x.dim(g.target()));
            if a.shape() != shape {
                return Err(Error::ShapeMismatch {
                    context: format!("action of {g}"),
                    left: shape,
                    right: a.shape(),
                });
            }
            x.actions.insert(g, a);
        }
        for g in legal {
            let shape = (x.dim(g.source()), x.dim(g.target()));
            x.actions.entry(g).or_insert_with(|| RatMatrix::zeros(shape.0, shape.1));
        }
        Ok(x)
    }

    /// Checks the defining identities and marks the module usable by [`DiagramModule::act`].
    pub fn validated(mut self) -> Result<Self> {
        if let Err(v) = self.validate() {
            return Err(Error::Invalid(v.to_string()));
        }
        self.verified = true;
        Ok(self)
    }

    pub(crate) fn assume_valid(mut self) -> Self {
        self.verified = true;
        self
    }

    pub fn zero(kind: Kind, truncation: i32) -> Self {
        let n = (truncation - kind.min_degree() + 1).max(0) as usize;
        DiagramModule::new(kind, truncation, vec![0; n], BTreeMap::new())
            .expect("zero module")
            .assume_valid()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn truncation(&self) -> i32 {
        self.truncation
    }

    pub fn min_degree(&self) -> i32 {
        self.kind.min_degree()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.min_degree()..=self.truncation
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Dimension in degree `n`; zero outside the stored range.
    pub fn dim(&self, n: i32) -> usize {
        if n < self.min_degree() || n > self.truncation {
            return 0;
        }
        self.dims[(n - self.min_degree()) as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn actions(&self) -> &BTreeMap<GeneratorId, RatMatrix> {
        &self.actions
    }

    pub fn action(&self, g: &GeneratorId) -> Result<&RatMatrix> {
        self.actions.get(g).ok_or_else(|| Error::Invalid(format!("{g} is not a generator of this module")))
    }

    /// The first failing identity, if any.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let lo = self.min_degree();
        let x = |g: GeneratorId| &self.actions[&g];
        let fail = |n: i32, relation: String| Err(Violation { degree: n, relation });
        for n in lo + 2..=self.truncation {
            match self.kind {
                Kind::Ssimp | Kind::AugSsimp => {
                    let n_ = n as usize;
                    for j in 1..=n_ {
                        for i in 0..j {
                            let lhs = x(GeneratorId::Delta { i, n: n - 1 }) * x(GeneratorId::Delta { i: j, n });
                            let rhs = x(GeneratorId::Delta { i: j - 1, n: n - 1 }) * x(GeneratorId::Delta { i, n });
                            if lhs != rhs {
                                return fail(n, format!("δ^{j}δ^{i} = δ^{i}δ^{}", j - 1));
                            }
                        }
                    }
                }
                Kind::Scube => {
                    let n_ = n as usize;
                    for j in 2..=n_ {
                        for i in 1..j {
                            for e in 0..2u8 {
                                for h in 0..2u8 {
                                    let lhs = x(GeneratorId::Cube { i, e, n: n - 1 })
                                        * x(GeneratorId::Cube { i: j, e: h, n });
                                    let rhs = x(GeneratorId::Cube { i: j - 1, e: h, n: n - 1 })
                                        * x(GeneratorId::Cube { i, e, n });
                                    if lhs != rhs {
                                        return fail(
                                            n,
                                            format!("δ_{j}^{h}δ_{i}^{e} = δ_{i}^{e}δ_{}^{h}", j - 1),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
                Kind::Chain0 | Kind::ChainNeg1 => {
                    let dd = x(GeneratorId::OmegaD { n: n - 1 }) * x(GeneratorId::OmegaD { n });
                    if !dd.is_zero() {
                        return fail(n, format!("d_{}d_{n} = 0", n - 1));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_degree(&self, n: i32) -> Result<()> {
        if n < self.min_degree() || n > self.truncation {
            return Err(Error::OutOfWindow {
                degree: n,
                lo: self.min_degree(),
                hi: self.truncation,
            });
        }
        Ok(())
    }

    /// Matrix of `X(f) : X_target -> X_source` for a single normal-form morphism.
    pub fn act_morphism(&self, f: &Morphism) -> Result<RatMatrix> {
        if !self.verified {
            return Err(Error::Unvalidated);
        }
        if !self.kind.contains(f) {
            return Err(Error::KindMismatch {
                expected: self.kind.to_string(),
                found: f.to_string(),
            });
        }
        self.check_degree(f.source())?;
        self.check_degree(f.target())?;
        let word = match f {
            Morphism::Inj(g) => coface_factorization(g),
            Morphism::Cube(g) => cube_coface_factorization(g),
            Morphism::Omega(g) if g.is_identity() => Vec::new(),
            Morphism::Omega(g) => vec![GeneratorId::OmegaD { n: g.target() }],
        };
        let mut out = RatMatrix::identity(self.dim(f.target()));
        for g in word {
            out = &self.actions[&g] * &out;
        }
        Ok(out)
    }

    /// Matrix of `X(φ)`, extended linearly; `act(φ∘ψ) = act(ψ)·act(φ)`.
    pub fn act(&self, phi: &LinComb) -> Result<RatMatrix> {
        if !self.verified {
            return Err(Error::Unvalidated);
        }
        self.check_degree(phi.source())?;
        self.check_degree(phi.target())?;
        let mut out = RatMatrix::zeros(self.dim(phi.source()), self.dim(phi.target()));
        for (f, c) in phi.terms() {
            out = &out + &self.act_morphism(f)?.scale(c);
        }
        Ok(out)
    }

    /// The right module `A(-, c)` with the standard hom bases and precomposition actions.
    pub fn representable(kind: Kind, c: i32, truncation: i32) -> Result<Self> {
        if c < kind.min_degree() || c > truncation {
            return Err(Error::OutOfWindow {
                degree: c,
                lo: kind.min_degree(),
                hi: truncation,
            });
        }
        let bases: BTreeMap<i32, Vec<Morphism>> =
            (kind.min_degree()..=truncation).map(|n| (n, hom_basis(kind, n, c))).collect();
        let dims = bases.values().map(Vec::len).collect();
        let mut actions = BTreeMap::new();
        for g in kind.generators(truncation) {
            let (src, tgt) = (&bases[&g.source()], &bases[&g.target()]);
            let index = basis_index(src);
            let gm = g.morphism()?;
            let mut a = RatMatrix::zeros(src.len(), tgt.len());
            for (col, phi) in tgt.iter().enumerate() {
                if let Some(h) = phi.compose(&gm)? {
                    a[(index[&h], col)] = Rational::one();
                }
            }
            actions.insert(g, a);
        }
        Ok(DiagramModule::new(kind, truncation, dims, actions)?.assume_valid())
    }

    pub fn direct_sum(&self, other: &DiagramModule) -> Result<Self> {
        self.same_shape(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let actions = self
            .actions
            .iter()
            .map(|(g, a)| (*g, a.block_diag(&other.actions[g])))
            .collect();
        let out = DiagramModule::new(self.kind, self.truncation, dims, actions)?;
        Ok(if self.verified && other.verified { out.assume_valid() } else { out })
    }

    /// Forgets every degree above `n`.
    pub fn truncate_to(&self, n: i32) -> Result<Self> {
        if n > self.truncation || n < self.min_degree() {
            return Err(Error::OutOfWindow {
                degree: n,
                lo: self.min_degree(),
                hi: self.truncation,
            });
        }
        let dims = self.dims[..(n - self.min_degree() + 1) as usize].to_vec();
        let actions = self
            .actions
            .iter()
            .filter(|(g, _)| g.target() <= n)
            .map(|(g, a)| (*g, a.clone()))
            .collect();
        let out = DiagramModule::new(self.kind, n, dims, actions)?;
        Ok(if self.verified { out.assume_valid() } else { out })
    }

    pub(crate) fn same_shape(&self, other: &DiagramModule) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                expected: self.kind.to_string(),
                found: other.kind.to_string(),
            });
        }
        if self.truncation != other.truncation {
            return Err(Error::Invalid(format!(
                "truncations differ: {} vs {}",
                self.truncation, other.truncation
            )));
        }
        Ok(())
    }
}

impl PartialEq for DiagramModule {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.truncation == other.truncation
            && self.dims == other.dims
            && self.actions == other.actions
    }
}

impl Eq for DiagramModule {}

impl fmt::Debug for DiagramModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagramModule({}, N={}, dims={:?})", self.kind, self.truncation, self.dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplexcat::{ComparisonFunctor, CubeMap};

    #[test]
    fn representable_examples() {
        let x = DiagramModule::representable(Kind::Scube, 1, 4).unwrap();
        assert_eq!(x.dims(), &[2, 1, 0, 0, 0]);
        assert!(x.validate().is_ok());

        let y = DiagramModule::representable(Kind::AugSsimp, 0, 3).unwrap();
        assert_eq!(y.dims(), &[1, 1, 0, 0, 0]);
        assert!(y.action(&GeneratorId::Delta { i: 0, n: 0 }).unwrap().is_identity());
    }

    #[test]
    fn every_representable_validates() {
        for kind in Kind::ALL {
            for c in kind.min_degree()..=4 {
                let x = DiagramModule::representable(kind, c, 4).unwrap();
                assert!(x.validate().is_ok(), "{kind} {c}");
                for n in x.degrees() {
                    assert_eq!(x.dim(n), hom_basis(kind, n, c).len());
                }
            }
        }
    }

    #[test]
    fn deliberate_violation() {
        let mut actions = BTreeMap::new();
        actions.insert(GeneratorId::Delta { i: 0, n: 1 }, RatMatrix::from_i64(&[&[1]]));
        actions.insert(GeneratorId::Delta { i: 0, n: 2 }, RatMatrix::from_i64(&[&[1]]));
        let x = DiagramModule::new(Kind::Ssimp, 2, vec![1, 1, 1], actions).unwrap();
        let v = x.validate().unwrap_err();
        assert_eq!(v.degree, 2);
        assert!(x.clone().validated().is_err());
        assert_eq!(x.act(&LinComb::from_morphism(Kind::Ssimp.identity(0))), Err(Error::Unvalidated));
        assert!(DiagramModule::zero(Kind::Scube, 3).validate().is_ok());
    }

    #[test]
    fn act_examples() {
        let x = DiagramModule::representable(Kind::Ssimp, 2, 3).unwrap();
        assert!(x.act(&LinComb::from_morphism(Kind::Ssimp.identity(1))).unwrap().is_identity());
        let d = ComparisonFunctor::UDelta.on_generator(GeneratorId::OmegaD { n: 2 }).unwrap();
        let mut expected = RatMatrix::zeros(x.dim(1), x.dim(2));
        for i in 0..=2usize {
            let a = x.action(&GeneratorId::Delta { i, n: 2 }).unwrap();
            expected = &expected + &a.scale(&Rational::sign(i as i64));
        }
        assert_eq!(x.act(&d).unwrap(), expected);

        let c = DiagramModule::representable(Kind::Scube, 1, 2).unwrap();
        let v0 = ComparisonFunctor::V.on_generator(GeneratorId::Delta { i: 0, n: 0 }).unwrap();
        let expected = c.action(&GeneratorId::Cube { i: 1, e: 1, n: 1 }).unwrap()
            - c.action(&GeneratorId::Cube { i: 1, e: 0, n: 1 }).unwrap();
        assert_eq!(c.act(&v0).unwrap(), expected);
    }

    #[test]
    fn act_is_contravariant() {
        for kind in [Kind::AugSsimp, Kind::Scube] {
            let x = DiagramModule::representable(kind, 3, 3)
                .unwrap()
                .direct_sum(&DiagramModule::representable(kind, 2, 3).unwrap())
                .unwrap();
            let lo = kind.min_degree();
            for a in lo..=3 {
                for b in a..=3 {
                    for c in b..=3 {
                        for f in hom_basis(kind, b, c) {
                            for g in hom_basis(kind, a, b) {
                                let fg = f.compose(&g).unwrap().unwrap();
                                let lhs = x.act_morphism(&fg).unwrap();
                                let rhs = &x.act_morphism(&g).unwrap() * &x.act_morphism(&f).unwrap();
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sums_and_truncation() {
        let x = DiagramModule::representable(Kind::Scube, 2, 3).unwrap();
        let z = DiagramModule::zero(Kind::Scube, 3);
        assert_eq!(x.direct_sum(&z).unwrap().dims(), x.dims());
        let t = x.truncate_to(1).unwrap();
        assert_eq!(t.dims(), &x.dims()[..2]);
        assert!(x.direct_sum(&DiagramModule::zero(Kind::Ssimp, 3)).is_err());
        let f = Morphism::Cube(CubeMap::coface(1, 0, 1).unwrap());
        assert!(x.act_morphism(&f).is_ok());
    }
}
