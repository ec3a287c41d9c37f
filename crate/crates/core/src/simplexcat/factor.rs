use super::kind::GeneratorId;
use super::morphism::{CubeMap, Face, InjMap};
use crate::error::Result;

/// The canonical coface word of `f`, outermost first: the omitted indices in
/// strictly decreasing order, each with the target degree it acts into.
pub fn coface_factorization(f: &InjMap) -> Vec<GeneratorId> {
    let mut omitted = f.omitted();
    omitted.reverse();
    omitted
        .into_iter()
        .enumerate()
        .map(|(k, i)| GeneratorId::Delta {
            i,
            n: f.target() - k as i32,
        })
        .collect()
}

/// The canonical cubical coface word of `f`, outermost first: constant positions in
/// strictly decreasing order with their colours.
pub fn cube_coface_factorization(f: &CubeMap) -> Vec<GeneratorId> {
    let consts: Vec<(usize, u8)> = f
        .assignment()
        .iter()
        .enumerate()
        .rev()
        .filter_map(|(p, face)| match face {
            Face::Zero => Some((p + 1, 0)),
            Face::One => Some((p + 1, 1)),
            Face::Coord(_) => None,
        })
        .collect();
    consts
        .into_iter()
        .enumerate()
        .map(|(k, (i, e))| GeneratorId::Cube {
            i,
            e,
            n: f.target() - k as i32,
        })
        .collect()
}

/// `j^ε(g)`: the cube map `□_{p+1} -> □_{q+1}` that fills every position missed by
/// `g : [p] -> [q]` with the constant `ε`.
pub fn monochrome(g: &InjMap, e: u8) -> CubeMap {
    let mut next = 0;
    let assignment = (0..(g.target() + 1) as usize)
        .map(|t| {
            if g.image().contains(&t) {
                next += 1;
                Face::Coord(next)
            } else {
                Face::constant(e)
            }
        })
        .collect();
    CubeMap::new(g.source() + 1, assignment).expect("monochrome image is a valid cube map")
}

/// The injective map recording where `keep` holds among the entries of `faces`.
fn positions_where(faces: &[Face], keep: impl Fn(&Face) -> bool) -> Result<InjMap> {
    let image: Vec<usize> = faces
        .iter()
        .enumerate()
        .filter(|(_, f)| keep(f))
        .map(|(p, _)| p)
        .collect();
    InjMap::new(image.len() as i32 - 1, faces.len() as i32 - 1, image)
}

/// Splits `f = j^1(a) ∘ j^0(b)`: `a` keeps the positions of `f` not filled with 1,
/// and `b` places the coordinates among those, leaving the 0s.
pub fn monochromatic_factorization(f: &CubeMap) -> Result<(InjMap, InjMap)> {
    let faces = f.assignment();
    let a = positions_where(faces, |x| *x != Face::One)?;
    let inner: Vec<Face> = faces.iter().copied().filter(|x| *x != Face::One).collect();
    let b = positions_where(&inner, |x| !x.is_constant())?;
    Ok((a, b))
}

/// The opposite split `f = j^0(b) ∘ j^1(a)`, returned as `(b, a)`.
pub fn opposite_monochromatic_factorization(f: &CubeMap) -> Result<(InjMap, InjMap)> {
    let faces = f.assignment();
    let b = positions_where(faces, |x| *x != Face::Zero)?;
    let inner: Vec<Face> = faces.iter().copied().filter(|x| *x != Face::Zero).collect();
    let a = positions_where(&inner, |x| !x.is_constant())?;
    Ok((b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplexcat::morphism::Morphism;

    fn recompose(word: &[GeneratorId], source: Morphism) -> Morphism {
        word.iter()
            .rev()
            .fold(source, |acc, g| g.morphism().unwrap().compose(&acc).unwrap().unwrap())
    }

    #[test]
    fn coface_examples() {
        assert!(coface_factorization(&InjMap::identity(3)).is_empty());
        let f = InjMap::new(0, 2, vec![2]).unwrap();
        let w = coface_factorization(&f);
        assert_eq!(
            w,
            vec![GeneratorId::Delta { i: 1, n: 2 }, GeneratorId::Delta { i: 0, n: 1 }]
        );
        assert_eq!(recompose(&w, Morphism::Inj(InjMap::identity(0))), Morphism::Inj(f));
        let d0 = InjMap::coface(0, 0).unwrap();
        assert_eq!(coface_factorization(&d0), vec![GeneratorId::Delta { i: 0, n: 0 }]);
    }

    #[test]
    fn cube_word_recomposes() {
        let f = CubeMap::new(1, vec![Face::One, Face::Coord(1), Face::Zero]).unwrap();
        let w = cube_coface_factorization(&f);
        assert_eq!(w.len(), 2);
        assert_eq!(recompose(&w, Morphism::Cube(CubeMap::identity(1))), Morphism::Cube(f));
    }

    #[test]
    fn monochromatic_examples() {
        let f = CubeMap::coface(1, 0, 1).unwrap();
        let (a, b) = monochromatic_factorization(&f).unwrap();
        assert_eq!(a, InjMap::identity(0));
        assert_eq!(b, InjMap::coface(0, 0).unwrap());

        let id = CubeMap::identity(2);
        let (a, b) = monochromatic_factorization(&id).unwrap();
        assert!(a.is_identity() && b.is_identity());

        let f = CubeMap::new(1, vec![Face::One, Face::Coord(1), Face::Zero]).unwrap();
        let (a, b) = monochromatic_factorization(&f).unwrap();
        assert_eq!(a.omitted(), vec![0]);
        assert_eq!(b.omitted(), vec![1]);
        assert_eq!(monochrome(&a, 1).compose(&monochrome(&b, 0)).unwrap(), f);

        let (b2, a2) = opposite_monochromatic_factorization(&f).unwrap();
        assert_eq!(monochrome(&b2, 0).compose(&monochrome(&a2, 1)).unwrap(), f);
    }
}
