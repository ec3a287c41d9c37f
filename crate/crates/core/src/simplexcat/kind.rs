use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::morphism::{CubeMap, InjMap, Morphism, OmegaMap};
use crate::error::{Error, Result};

/// The five indexing algebras. A right module over one of them is a
/// `DiagramModule` of the same kind.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Kind {
    /// injective simplex category `Δ_inj`
    #[serde(rename = "ssimp")]
    Ssimp,
    /// augmented injective simplex category `Δ_{a,inj}`
    #[serde(rename = "aug_ssimp")]
    AugSsimp,
    /// injective cube category `□_inj`
    #[serde(rename = "scube")]
    Scube,
    /// differential algebra `Ω`; modules are complexes in degrees ≥ 0
    #[serde(rename = "chain0")]
    Chain0,
    /// augmented differential algebra `Ω_a`; complexes in degrees ≥ -1
    #[serde(rename = "chain_neg1")]
    ChainNeg1,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::Ssimp,
        Kind::AugSsimp,
        Kind::Scube,
        Kind::Chain0,
        Kind::ChainNeg1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Ssimp => "ssimp",
            Kind::AugSsimp => "aug_ssimp",
            Kind::Scube => "scube",
            Kind::Chain0 => "chain0",
            Kind::ChainNeg1 => "chain_neg1",
        }
    }

    pub fn min_degree(&self) -> i32 {
        match self {
            Kind::AugSsimp | Kind::ChainNeg1 => -1,
            _ => 0,
        }
    }

    pub fn is_chain(&self) -> bool {
        matches!(self, Kind::Chain0 | Kind::ChainNeg1)
    }

    /// Generators with target degree `n`, in canonical order.
    pub fn generators_into(&self, n: i32) -> Vec<GeneratorId> {
        if n <= self.min_degree() {
            return Vec::new();
        }
        match self {
            Kind::Ssimp | Kind::AugSsimp => (0..=n as usize)
                .map(|i| GeneratorId::Delta { i, n })
                .collect(),
            Kind::Scube => (1..=n as usize)
                .flat_map(|i| [0u8, 1].map(|e| GeneratorId::Cube { i, e, n }))
                .collect(),
            Kind::Chain0 | Kind::ChainNeg1 => vec![GeneratorId::OmegaD { n }],
        }
    }

    /// All generators between degrees within `min_degree..=truncation`.
    pub fn generators(&self, truncation: i32) -> Vec<GeneratorId> {
        (self.min_degree() + 1..=truncation)
            .flat_map(|n| self.generators_into(n))
            .collect()
    }

    pub fn identity(&self, n: i32) -> Morphism {
        match self {
            Kind::Ssimp | Kind::AugSsimp => Morphism::Inj(InjMap::identity(n)),
            Kind::Scube => Morphism::Cube(CubeMap::identity(n)),
            Kind::Chain0 | Kind::ChainNeg1 => Morphism::Omega(OmegaMap::identity(n)),
        }
    }

    /// Whether `m` is a morphism of this category.
    pub fn contains(&self, m: &Morphism) -> bool {
        let lo = self.min_degree();
        m.source() >= lo
            && match (self, m) {
                (Kind::Ssimp | Kind::AugSsimp, Morphism::Inj(_)) => true,
                (Kind::Scube, Morphism::Cube(_)) => true,
                (Kind::Chain0 | Kind::ChainNeg1, Morphism::Omega(_)) => true,
                _ => false,
            }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown kind {s:?}")))
    }
}

/// A generating morphism: `δ^i`, `δ_i^e`, or the differential `d_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GeneratorId {
    Delta { i: usize, n: i32 },
    Cube { i: usize, e: u8, n: i32 },
    OmegaD { n: i32 },
}

impl GeneratorId {
    pub fn target(&self) -> i32 {
        match *self {
            GeneratorId::Delta { n, .. } | GeneratorId::Cube { n, .. } | GeneratorId::OmegaD { n } => n,
        }
    }

    pub fn source(&self) -> i32 {
        self.target() - 1
    }

    pub fn morphism(&self) -> Result<Morphism> {
        Ok(match *self {
            GeneratorId::Delta { i, n } => Morphism::Inj(InjMap::coface(i, n)?),
            GeneratorId::Cube { i, e, n } => Morphism::Cube(CubeMap::coface(i, e, n)?),
            GeneratorId::OmegaD { n } => {
                if n < 0 {
                    return Err(Error::IndexOutOfRange {
                        context: "differential".into(),
                        index: n as i64,
                    });
                }
                Morphism::Omega(OmegaMap::differential(n))
            }
        })
    }

    /// Whether this generator belongs to `kind`.
    pub fn belongs_to(&self, kind: Kind) -> bool {
        let n = self.target();
        n > kind.min_degree()
            && match (*self, kind) {
                (GeneratorId::Delta { i, .. }, Kind::Ssimp | Kind::AugSsimp) => i as i32 <= n,
                (GeneratorId::Cube { i, e, .. }, Kind::Scube) => i >= 1 && i as i32 <= n && e <= 1,
                (GeneratorId::OmegaD { .. }, Kind::Chain0 | Kind::ChainNeg1) => true,
                _ => false,
            }
    }

    pub fn token(&self) -> String {
        match *self {
            GeneratorId::Delta { i, n } => format!("delta {i} {n}"),
            GeneratorId::Cube { i, e, n } => format!("cube {i} {e} {n}"),
            GeneratorId::OmegaD { n } => format!("d {n}"),
        }
    }

    fn sort_key(&self) -> (i32, u8, usize, u8) {
        match *self {
            GeneratorId::Delta { i, n } => (n, 0, i, 0),
            GeneratorId::Cube { i, e, n } => (n, 1, i, e),
            GeneratorId::OmegaD { n } => (n, 2, 0, 0),
        }
    }
}

impl PartialOrd for GeneratorId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneratorId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl FromStr for GeneratorId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad generator token {s:?}"));
        let int = |t: &str| t.parse::<i64>().map_err(|_| bad());
        match parts.as_slice() {
            ["delta", i, n] => {
                let (i, n) = (int(i)?, int(n)?);
                if i < 0 {
                    return Err(bad());
                }
                Ok(GeneratorId::Delta { i: i as usize, n: n as i32 })
            }
            ["cube", i, e, n] => {
                let (i, e, n) = (int(i)?, int(e)?, int(n)?);
                if i < 1 || !(0..=1).contains(&e) {
                    return Err(bad());
                }
                Ok(GeneratorId::Cube { i: i as usize, e: e as u8, n: n as i32 })
            }
            ["d", n] => Ok(GeneratorId::OmegaD { n: int(n)? as i32 }),
            _ => Err(bad()),
        }
    }
}
