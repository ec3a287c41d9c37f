use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An injective order-preserving map `[m] -> [n]`, stored by its image.
///
/// Degree `-1` is the empty ordinal; its only maps out are the empty-image maps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct InjMap {
    source: i32,
    target: i32,
    image: Vec<usize>,
}

impl InjMap {
    pub fn new(source: i32, target: i32, image: Vec<usize>) -> Result<Self> {
        let bad = |why: &str| {
            Err(Error::InvalidMorphism(format!(
                "inj {source}->{target} {image:?}: {why}"
            )))
        };
        if source < -1 || target < -1 {
            return bad("degrees must be at least -1");
        }
        if image.len() as i32 != source + 1 {
            return bad("image size must be source + 1");
        }
        if image.windows(2).any(|w| w[0] >= w[1]) {
            return bad("image must be strictly increasing");
        }
        if image.last().is_some_and(|&x| x as i32 > target) {
            return bad("image exceeds target");
        }
        Ok(InjMap {
            source,
            target,
            image,
        })
    }

    pub fn identity(n: i32) -> Self {
        assert!(n >= -1);
        InjMap {
            source: n,
            target: n,
            image: (0..(n + 1) as usize).collect(),
        }
    }

    /// The coface `δ^i : [n-1] -> [n]` omitting `i`.
    pub fn coface(i: usize, n: i32) -> Result<Self> {
        if n < 0 || i as i32 > n {
            return Err(Error::IndexOutOfRange {
                context: format!("coface into [{n}]"),
                index: i as i64,
            });
        }
        let image = (0..=n as usize).filter(|&x| x != i).collect();
        Ok(InjMap {
            source: n - 1,
            target: n,
            image,
        })
    }

    pub fn source(&self) -> i32 {
        self.source
    }

    pub fn target(&self) -> i32 {
        self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    /// Elements of the target missed by the map, increasing.
    pub fn omitted(&self) -> Vec<usize> {
        (0..(self.target + 1) as usize)
            .filter(|x| !self.image.contains(x))
            .collect()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &InjMap) -> Result<InjMap> {
        if f.target != self.source {
            return Err(Error::BoundaryMismatch {
                outer: self.to_string(),
                inner: f.to_string(),
            });
        }
        Ok(InjMap {
            source: f.source,
            target: self.target,
            image: f.image.iter().map(|&x| self.image[x]).collect(),
        })
    }
}

impl fmt::Display for InjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im: Vec<String> = self.image.iter().map(|x| x.to_string()).collect();
        write!(f, "inj {}->{} {{{}}}", self.source, self.target, im.join(","))
    }
}

/// One output coordinate of a cube map: a source coordinate (1-based) or a constant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Face {
    Zero,
    One,
    Coord(usize),
}

impl Face {
    pub fn constant(e: u8) -> Face {
        if e == 0 {
            Face::Zero
        } else {
            Face::One
        }
    }

    pub fn is_constant(&self) -> bool {
        !matches!(self, Face::Coord(_))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Zero => write!(f, "0"),
            Face::One => write!(f, "1"),
            Face::Coord(k) => write!(f, "x{k}"),
        }
    }
}

impl FromStr for Face {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Face::Zero),
            "1" => Ok(Face::One),
            t => t
                .strip_prefix('x')
                .and_then(|k| k.parse().ok())
                .filter(|&k: &usize| k >= 1)
                .map(Face::Coord)
                .ok_or_else(|| Error::Parse(format!("bad cube token {t:?}"))),
        }
    }
}

/// An injective cube map `□_m -> □_n`, stored by its coordinate assignment.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CubeMap {
    source: i32,
    target: i32,
    assignment: Vec<Face>,
}

impl CubeMap {
    pub fn new(source: i32, assignment: Vec<Face>) -> Result<Self> {
        let target = assignment.len() as i32;
        let coords: Vec<usize> = assignment
            .iter()
            .filter_map(|f| match f {
                Face::Coord(k) => Some(*k),
                _ => None,
            })
            .collect();
        let expected: Vec<usize> = (1..=source.max(0) as usize).collect();
        if source < 0 || coords != expected {
            return Err(Error::InvalidMorphism(format!(
                "cube {source}->{target}: coordinates must be x1..x{source} in order"
            )));
        }
        Ok(CubeMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(n: i32) -> Self {
        assert!(n >= 0);
        CubeMap {
            source: n,
            target: n,
            assignment: (1..=n as usize).map(Face::Coord).collect(),
        }
    }

    /// The coface `δ_i^e : □_{n-1} -> □_n` inserting the constant `e` at position `i`.
    pub fn coface(i: usize, e: u8, n: i32) -> Result<Self> {
        if n < 1 || i < 1 || i as i32 > n || e > 1 {
            return Err(Error::IndexOutOfRange {
                context: format!("cubical coface into □_{n} with colour {e}"),
                index: i as i64,
            });
        }
        let assignment = (1..=n as usize)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => Face::Coord(j),
                std::cmp::Ordering::Equal => Face::constant(e),
                std::cmp::Ordering::Greater => Face::Coord(j - 1),
            })
            .collect();
        Ok(CubeMap {
            source: n - 1,
            target: n,
            assignment,
        })
    }

    pub fn source(&self) -> i32 {
        self.source
    }

    pub fn target(&self) -> i32 {
        self.target
    }

    pub fn assignment(&self) -> &[Face] {
        &self.assignment
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    pub fn count_ones(&self) -> usize {
        self.assignment.iter().filter(|f| **f == Face::One).count()
    }

    /// `self ∘ f`, by substituting `f`'s assignment into `self`'s coordinates.
    pub fn compose(&self, f: &CubeMap) -> Result<CubeMap> {
        if f.target != self.source {
            return Err(Error::BoundaryMismatch {
                outer: self.to_string(),
                inner: f.to_string(),
            });
        }
        let assignment = self
            .assignment
            .iter()
            .map(|face| match face {
                Face::Coord(k) => f.assignment[k - 1],
                c => *c,
            })
            .collect();
        Ok(CubeMap {
            source: f.source,
            target: self.target,
            assignment,
        })
    }
}

impl fmt::Display for CubeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.assignment.iter().map(|x| x.to_string()).collect();
        write!(f, "cube {}->{} [{}]", self.source, self.target, a.join(","))
    }
}

/// A basis morphism of the differential algebra: an identity or a generator `d_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct OmegaMap {
    source: i32,
    target: i32,
}

impl OmegaMap {
    pub fn new(source: i32, target: i32) -> Result<Self> {
        if source < -1 || !(target == source || target == source + 1) {
            return Err(Error::InvalidMorphism(format!("omega {source}->{target}")));
        }
        Ok(OmegaMap { source, target })
    }

    pub fn identity(n: i32) -> Self {
        OmegaMap {
            source: n,
            target: n,
        }
    }

    pub fn differential(n: i32) -> Self {
        OmegaMap {
            source: n - 1,
            target: n,
        }
    }

    pub fn source(&self) -> i32 {
        self.source
    }

    pub fn target(&self) -> i32 {
        self.target
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    /// `self ∘ f`; `None` when two differentials compose to zero.
    pub fn compose(&self, f: &OmegaMap) -> Result<Option<OmegaMap>> {
        if f.target != self.source {
            return Err(Error::BoundaryMismatch {
                outer: self.to_string(),
                inner: f.to_string(),
            });
        }
        Ok(match (self.is_identity(), f.is_identity()) {
            (true, _) => Some(*f),
            (false, true) => Some(*self),
            (false, false) => None,
        })
    }
}

impl fmt::Display for OmegaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.is_identity() { "id" } else { "d" };
        write!(f, "omega {}->{} {}", self.source, self.target, tag)
    }
}

/// A normal-form morphism in any of the indexing categories.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Morphism {
    Inj(InjMap),
    Cube(CubeMap),
    Omega(OmegaMap),
}

impl Morphism {
    pub fn source(&self) -> i32 {
        match self {
            Morphism::Inj(f) => f.source(),
            Morphism::Cube(f) => f.source(),
            Morphism::Omega(f) => f.source(),
        }
    }

    pub fn target(&self) -> i32 {
        match self {
            Morphism::Inj(f) => f.target(),
            Morphism::Cube(f) => f.target(),
            Morphism::Omega(f) => f.target(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source() == self.target()
    }

    /// `self ∘ f`. `Ok(None)` is the zero morphism.
    pub fn compose(&self, f: &Morphism) -> Result<Option<Morphism>> {
        match (self, f) {
            (Morphism::Inj(g), Morphism::Inj(f)) => Ok(Some(Morphism::Inj(g.compose(f)?))),
            (Morphism::Cube(g), Morphism::Cube(f)) => Ok(Some(Morphism::Cube(g.compose(f)?))),
            (Morphism::Omega(g), Morphism::Omega(f)) => Ok(g.compose(f)?.map(Morphism::Omega)),
            _ => Err(Error::BoundaryMismatch {
                outer: self.to_string(),
                inner: f.to_string(),
            }),
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Morphism::Inj(g) => g.fmt(f),
            Morphism::Cube(g) => g.fmt(f),
            Morphism::Omega(g) => g.fmt(f),
        }
    }
}

fn parse_arrow(s: &str) -> Result<(i32, i32)> {
    let (a, b) = s
        .split_once("->")
        .ok_or_else(|| Error::Parse(format!("expected m->n, got {s:?}")))?;
    let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad degree {a:?}")))?;
    let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad degree {b:?}")))?;
    Ok((a, b))
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (tag, rest) = s
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad morphism {s:?}")))?;
        let rest = rest.trim();
        let (arrow, body) = rest
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad morphism {s:?}")))?;
        let (m, n) = parse_arrow(arrow)?;
        let body = body.trim();
        match tag {
            "inj" => {
                let inner = body
                    .strip_prefix('{')
                    .and_then(|b| b.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse(format!("bad image in {s:?}")))?;
                let image = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
                    .collect::<Result<Vec<usize>>>()?;
                Ok(Morphism::Inj(InjMap::new(m, n, image)?))
            }
            "cube" => {
                let inner = body
                    .strip_prefix('[')
                    .and_then(|b| b.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("bad assignment in {s:?}")))?;
                let faces = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(str::parse)
                    .collect::<Result<Vec<Face>>>()?;
                let f = CubeMap::new(m, faces)?;
                if f.target() != n {
                    return Err(Error::Parse(format!("target mismatch in {s:?}")));
                }
                Ok(Morphism::Cube(f))
            }
            "omega" => {
                let f = OmegaMap::new(m, n)?;
                let ok = matches!((body, f.is_identity()), ("id", true) | ("d", false));
                if !ok {
                    return Err(Error::Parse(format!("bad omega tag in {s:?}")));
                }
                Ok(Morphism::Omega(f))
            }
            _ => Err(Error::Parse(format!("unknown morphism tag {tag:?}"))),
        }
    }
}
