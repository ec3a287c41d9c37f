use std::fmt;
use std::str::FromStr;

use super::factor::{coface_factorization, monochrome};
use super::kind::{GeneratorId, Kind};
use super::lincomb::LinComb;
use super::morphism::{CubeMap, InjMap, Morphism};
use crate::error::{Error, Result};
use crate::exactlin::Rational;

/// The functors between indexing algebras used throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ComparisonFunctor {
    /// `Ω -> k[Δ_inj]`
    UDelta,
    /// `Ω_a -> k[Δ_{a,inj}]`
    UAug,
    /// `Ω -> k[□_inj]`
    USquare,
    /// the sign embedding `k[Δ_{a,inj}] -> k[□_inj]`, `[n] ↦ □_{n+1}`
    V,
    J0,
    J1,
    /// `□_inj -> Δ_{a,inj}`, `□_n ↦ [n-1]`
    Q,
}

impl ComparisonFunctor {
    pub const ALL: [ComparisonFunctor; 7] = [
        ComparisonFunctor::UDelta,
        ComparisonFunctor::UAug,
        ComparisonFunctor::USquare,
        ComparisonFunctor::V,
        ComparisonFunctor::J0,
        ComparisonFunctor::J1,
        ComparisonFunctor::Q,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ComparisonFunctor::UDelta => "u_delta",
            ComparisonFunctor::UAug => "u_a",
            ComparisonFunctor::USquare => "u_square",
            ComparisonFunctor::V => "v",
            ComparisonFunctor::J0 => "j0",
            ComparisonFunctor::J1 => "j1",
            ComparisonFunctor::Q => "q",
        }
    }

    pub fn source_kind(&self) -> Kind {
        match self {
            ComparisonFunctor::UDelta | ComparisonFunctor::USquare => Kind::Chain0,
            ComparisonFunctor::UAug => Kind::ChainNeg1,
            ComparisonFunctor::V | ComparisonFunctor::J0 | ComparisonFunctor::J1 => Kind::AugSsimp,
            ComparisonFunctor::Q => Kind::Scube,
        }
    }

    pub fn target_kind(&self) -> Kind {
        match self {
            ComparisonFunctor::UDelta => Kind::Ssimp,
            ComparisonFunctor::UAug | ComparisonFunctor::Q => Kind::AugSsimp,
            _ => Kind::Scube,
        }
    }

    /// Degree of the image of the object of degree `n`.
    pub fn on_object(&self, n: i32) -> i32 {
        match self {
            ComparisonFunctor::V | ComparisonFunctor::J0 | ComparisonFunctor::J1 => n + 1,
            ComparisonFunctor::Q => n - 1,
            _ => n,
        }
    }

    fn not_in_source(&self, what: impl fmt::Display) -> Error {
        Error::NotInSource {
            functor: self.name().into(),
            input: what.to_string(),
        }
    }

    pub fn on_generator(&self, g: GeneratorId) -> Result<LinComb> {
        let ok = g.belongs_to(self.source_kind())
            && !(matches!(self, ComparisonFunctor::UDelta | ComparisonFunctor::USquare)
                && g.target() < 1);
        if !ok {
            return Err(self.not_in_source(g));
        }
        match (self, g) {
            (ComparisonFunctor::UDelta | ComparisonFunctor::UAug, GeneratorId::OmegaD { n }) => {
                alternating_coface_sum(0, n)
            }
            (ComparisonFunctor::USquare, GeneratorId::OmegaD { n }) => {
                let mut out = LinComb::zero(n - 1, n);
                for i in 1..=n as usize {
                    let s = Rational::sign(i as i64 - 1);
                    out.add_term(Morphism::Cube(CubeMap::coface(i, 1, n)?), &s)?;
                    out.add_term(Morphism::Cube(CubeMap::coface(i, 0, n)?), &-s)?;
                }
                Ok(out)
            }
            (ComparisonFunctor::V, GeneratorId::Delta { i, n }) => {
                let mut out = LinComb::zero(n, n + 1);
                out.add_term(Morphism::Cube(CubeMap::coface(i + 1, 1, n + 1)?), &Rational::one())?;
                out.add_term(Morphism::Cube(CubeMap::coface(i + 1, 0, n + 1)?), &-Rational::one())?;
                Ok(out)
            }
            _ => self.on_morphism(&g.morphism()?),
        }
    }

    pub fn on_morphism(&self, f: &Morphism) -> Result<LinComb> {
        if !self.source_kind().contains(f) {
            return Err(self.not_in_source(f));
        }
        match (self, f) {
            (ComparisonFunctor::UDelta | ComparisonFunctor::UAug | ComparisonFunctor::USquare, Morphism::Omega(w)) => {
                if w.is_identity() {
                    if *self != ComparisonFunctor::UAug && w.source() < 0 {
                        return Err(self.not_in_source(f));
                    }
                    Ok(LinComb::from_morphism(self.target_kind().identity(w.source())))
                } else {
                    self.on_generator(GeneratorId::OmegaD { n: w.target() })
                }
            }
            (ComparisonFunctor::V, Morphism::Inj(a)) => {
                let mut acc = LinComb::from_morphism(Morphism::Cube(CubeMap::identity(a.source() + 1)));
                for g in coface_factorization(a).into_iter().rev() {
                    acc = self.on_generator(g)?.compose(&acc)?;
                }
                Ok(acc)
            }
            (ComparisonFunctor::J0, Morphism::Inj(a)) => Ok(LinComb::from_morphism(Morphism::Cube(monochrome(a, 0)))),
            (ComparisonFunctor::J1, Morphism::Inj(a)) => Ok(LinComb::from_morphism(Morphism::Cube(monochrome(a, 1)))),
            (ComparisonFunctor::Q, Morphism::Cube(c)) => {
                let image: Vec<usize> = c
                    .assignment()
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_constant())
                    .map(|(p, _)| p)
                    .collect();
                let q = InjMap::new(c.source() - 1, c.target() - 1, image)?;
                Ok(LinComb::from_morphism(Morphism::Inj(q)))
            }
            _ => Err(self.not_in_source(f)),
        }
    }

    pub fn on_lincomb(&self, x: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero(self.on_object(x.source()), self.on_object(x.target()));
        for (m, c) in x.terms() {
            out = out.add(&self.on_morphism(m)?.scale(c))?;
        }
        Ok(out)
    }
}

/// `Σ_{j=i}^{n} (-1)^j δ^j : [n-1] -> [n]`.
pub(crate) fn alternating_coface_sum(i: usize, n: i32) -> Result<LinComb> {
    if n < 0 || i as i32 > n {
        return Err(Error::IndexOutOfRange {
            context: format!("alternating coface sum into [{n}]"),
            index: i as i64,
        });
    }
    let mut out = LinComb::zero(n - 1, n);
    for j in i..=n as usize {
        out.add_term(Morphism::Inj(InjMap::coface(j, n)?), &Rational::sign(j as i64))?;
    }
    Ok(out)
}

impl fmt::Display for ComparisonFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComparisonFunctor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ComparisonFunctor::ALL
            .into_iter()
            .find(|u| u.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown functor {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplexcat::morphism::Face;

    fn one(m: Morphism) -> LinComb {
        LinComb::from_morphism(m)
    }

    #[test]
    fn named_values() {
        let v0 = ComparisonFunctor::V.on_generator(GeneratorId::Delta { i: 0, n: 0 }).unwrap();
        let expected = one(Morphism::Cube(CubeMap::coface(1, 1, 1).unwrap()))
            .sub(&one(Morphism::Cube(CubeMap::coface(1, 0, 1).unwrap())))
            .unwrap();
        assert_eq!(v0, expected);

        let u = ComparisonFunctor::UDelta.on_generator(GeneratorId::OmegaD { n: 1 }).unwrap();
        let expected = one(Morphism::Inj(InjMap::coface(0, 1).unwrap()))
            .sub(&one(Morphism::Inj(InjMap::coface(1, 1).unwrap())))
            .unwrap();
        assert_eq!(u, expected);

        let q = ComparisonFunctor::Q.on_generator(GeneratorId::Cube { i: 2, e: 1, n: 2 }).unwrap();
        assert_eq!(q, one(Morphism::Inj(InjMap::coface(1, 1).unwrap())));
    }

    #[test]
    fn rejects_foreign_generators() {
        assert!(ComparisonFunctor::UDelta.on_generator(GeneratorId::OmegaD { n: 0 }).is_err());
        assert!(ComparisonFunctor::UAug.on_generator(GeneratorId::OmegaD { n: 0 }).is_ok());
        assert!(ComparisonFunctor::V.on_generator(GeneratorId::Cube { i: 1, e: 0, n: 1 }).is_err());
    }

    #[test]
    fn differentials_square_to_zero() {
        for u in [ComparisonFunctor::UDelta, ComparisonFunctor::UAug, ComparisonFunctor::USquare] {
            let lo = u.source_kind().min_degree() + 1;
            for n in lo..6 {
                let a = u.on_generator(GeneratorId::OmegaD { n }).unwrap();
                let b = u.on_generator(GeneratorId::OmegaD { n: n + 1 }).unwrap();
                assert!(b.compose(&a).unwrap().is_zero(), "{u} at {n}");
            }
        }
    }

    #[test]
    fn sign_embedding_of_augmented_differential() {
        for n in 0..6 {
            let ua = ComparisonFunctor::UAug.on_generator(GeneratorId::OmegaD { n }).unwrap();
            let lhs = ComparisonFunctor::V.on_lincomb(&ua).unwrap();
            let rhs = ComparisonFunctor::USquare.on_generator(GeneratorId::OmegaD { n: n + 1 }).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sign_embedding_closed_form() {
        // every colouring of the omitted positions, signed by the number of zeros
        let a = InjMap::new(0, 2, vec![1]).unwrap();
        let v = ComparisonFunctor::V.on_morphism(&Morphism::Inj(a)).unwrap();
        assert_eq!(v.len(), 4);
        let f = CubeMap::new(1, vec![Face::Zero, Face::Coord(1), Face::One]).unwrap();
        assert_eq!(v.coefficient(&Morphism::Cube(f)), -Rational::one());
        let f = CubeMap::new(1, vec![Face::Zero, Face::Coord(1), Face::Zero]).unwrap();
        assert_eq!(v.coefficient(&Morphism::Cube(f)), Rational::one());
    }

    #[test]
    fn quotient_inverts_monochrome() {
        let a = InjMap::new(1, 3, vec![0, 2]).unwrap();
        for j in [ComparisonFunctor::J0, ComparisonFunctor::J1] {
            let c = j.on_morphism(&Morphism::Inj(a.clone())).unwrap();
            assert_eq!(ComparisonFunctor::Q.on_lincomb(&c).unwrap(), one(Morphism::Inj(a.clone())));
        }
    }
}
