use num_integer::binomial;

use super::factor::{monochromatic_factorization, monochrome, opposite_monochromatic_factorization};
use super::functor::{alternating_coface_sum, ComparisonFunctor};
use super::kind::Kind;
use super::lincomb::LinComb;
use super::morphism::{CubeMap, Face, InjMap, Morphism, OmegaMap};
use crate::error::{Error, Result};
use crate::exactlin::{RatMatrix, Rational};

/// All `k`-subsets of `0..n`, lexicographically.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// The standard basis of `kind(m, n)`, sorted by normal form. Empty when no morphism exists.
pub fn hom_basis(kind: Kind, m: i32, n: i32) -> Vec<Morphism> {
    if m < kind.min_degree() || m > n {
        return Vec::new();
    }
    let mut out: Vec<Morphism> = match kind {
        Kind::Ssimp | Kind::AugSsimp => subsets((n + 1) as usize, (m + 1) as usize)
            .into_iter()
            .map(|im| Morphism::Inj(InjMap::new(m, n, im).expect("subset is a valid image")))
            .collect(),
        Kind::Scube => {
            let (m, n) = (m as usize, n as usize);
            let mut out = Vec::new();
            for coords in subsets(n, m) {
                for colours in 0u32..(1 << (n - m)) {
                    let mut bit = 0;
                    let mut next = 0;
                    let assignment = (0..n)
                        .map(|p| {
                            if coords.contains(&p) {
                                next += 1;
                                Face::Coord(next)
                            } else {
                                bit += 1;
                                Face::constant(((colours >> (bit - 1)) & 1) as u8)
                            }
                        })
                        .collect();
                    out.push(Morphism::Cube(CubeMap::new(m as i32, assignment).expect("valid assignment")));
                }
            }
            out
        }
        Kind::Chain0 | Kind::ChainNeg1 => {
            if n - m <= 1 {
                vec![Morphism::Omega(OmegaMap::new(m, n).expect("degrees checked"))]
            } else {
                Vec::new()
            }
        }
    };
    out.sort();
    out
}

/// Closed-form size of `kind(m, n)`.
pub fn hom_count(kind: Kind, m: i32, n: i32) -> u64 {
    if m < kind.min_degree() || m > n {
        return 0;
    }
    match kind {
        Kind::Ssimp | Kind::AugSsimp => binomial((n + 1) as u64, (m + 1) as u64),
        Kind::Scube => binomial(n as u64, m as u64) << (n - m),
        Kind::Chain0 | Kind::ChainNeg1 => u64::from(n - m <= 1),
    }
}

/// Position of each morphism of `basis`, for coordinate lookups.
pub fn basis_index(basis: &[Morphism]) -> std::collections::HashMap<&Morphism, usize> {
    basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Coordinates of `x` in `basis`; fails if a term is not a basis element.
pub fn coordinates(x: &LinComb, basis: &[Morphism]) -> Result<Vec<Rational>> {
    let index = basis_index(basis);
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in x.terms() {
        let &i = index
            .get(m)
            .ok_or_else(|| Error::InvalidMorphism(format!("{m} is not in the basis")))?;
        v[i] = c.clone();
    }
    Ok(v)
}

/// The tail sum `d_{i,n} = Σ_{j=i}^{n} (-1)^j δ^j`.
pub fn d_lower(i: usize, n: i32, kind: Kind) -> Result<LinComb> {
    let lo = match kind {
        Kind::Ssimp => 1,
        Kind::AugSsimp => 0,
        other => {
            return Err(Error::KindMismatch {
                expected: "ssimp or aug_ssimp".into(),
                found: other.to_string(),
            })
        }
    };
    if n < lo || i as i32 > n {
        return Err(Error::IndexOutOfRange {
            context: format!("d_lower into [{n}] for {kind}"),
            index: i as i64,
        });
    }
    alternating_coface_sum(i, n)
}

/// A word `d_{i_n,n} ⋯ d_{i_{m+1},m+1}` with strictly decreasing indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMonomial {
    pub source: i32,
    pub target: i32,
    /// `i_n, …, i_{m+1}`, outermost first
    pub indices: Vec<usize>,
    pub factors: Vec<LinComb>,
}

impl DMonomial {
    pub fn value(&self) -> Result<LinComb> {
        if self.factors.is_empty() {
            return Ok(LinComb::from_morphism(Morphism::Inj(InjMap::identity(self.target))));
        }
        LinComb::compose_word(&self.factors)
    }

    /// The coface composite with the same indices, which the word reduces to modulo lower terms.
    pub fn leading(&self) -> Result<Morphism> {
        let image = (0..(self.target + 1) as usize)
            .filter(|x| !self.indices.contains(x))
            .collect();
        Ok(Morphism::Inj(InjMap::new(self.source, self.target, image)?))
    }
}

/// The strictly decreasing d-monomials `kind(m, n)`, sorted by index tuple.
pub fn strictly_decreasing_basis(kind: Kind, m: i32, n: i32) -> Result<Vec<DMonomial>> {
    if !matches!(kind, Kind::Ssimp | Kind::AugSsimp) {
        return Err(Error::KindMismatch {
            expected: "ssimp or aug_ssimp".into(),
            found: kind.to_string(),
        });
    }
    if m < kind.min_degree() || m > n {
        return Ok(Vec::new());
    }
    let len = (n - m) as usize;
    let mut out = Vec::new();
    for mut set in subsets((n + 1) as usize, len) {
        set.reverse();
        let factors = set
            .iter()
            .enumerate()
            .map(|(k, &i)| d_lower(i, n - k as i32, kind))
            .collect::<Result<Vec<_>>>()?;
        out.push(DMonomial {
            source: m,
            target: n,
            indices: set,
            factors,
        });
    }
    out.sort_by(|a, b| a.indices.cmp(&b.indices));
    Ok(out)
}

/// The two cubical sign families: `v(a) j^0(b)` and `j^0(b) v(a)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SignFamily {
    VAfterJ0,
    J0AfterV,
}

/// One member of a sign family together with its leading cube map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignElement {
    pub a: InjMap,
    pub b: InjMap,
    pub value: LinComb,
    pub leading: CubeMap,
}

/// The family members `□_m -> □_n`, indexed through the monochromatic factorizations
/// of the standard basis.
pub fn sign_family(family: SignFamily, m: i32, n: i32) -> Result<Vec<SignElement>> {
    let v = ComparisonFunctor::V;
    let j0 = ComparisonFunctor::J0;
    hom_basis(Kind::Scube, m, n)
        .into_iter()
        .map(|f| {
            let Morphism::Cube(f) = f else { unreachable!() };
            match family {
                SignFamily::VAfterJ0 => {
                    let (a, b) = monochromatic_factorization(&f)?;
                    let value = v
                        .on_morphism(&Morphism::Inj(a.clone()))?
                        .compose(&j0.on_morphism(&Morphism::Inj(b.clone()))?)?;
                    let leading = monochrome(&a, 1).compose(&monochrome(&b, 0))?;
                    Ok(SignElement { a, b, value, leading })
                }
                SignFamily::J0AfterV => {
                    let (b, a) = opposite_monochromatic_factorization(&f)?;
                    let value = j0
                        .on_morphism(&Morphism::Inj(b.clone()))?
                        .compose(&v.on_morphism(&Morphism::Inj(a.clone()))?)?;
                    let leading = monochrome(&b, 0).compose(&monochrome(&a, 1))?;
                    Ok(SignElement { a, b, value, leading })
                }
            }
        })
        .collect()
}

/// Sort key putting cube maps in (number of 1s, normal form) order.
pub fn ones_then_lex(f: &CubeMap) -> (usize, CubeMap) {
    (f.count_ones(), f.clone())
}

/// Outcome of expanding a family in a standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionCheck {
    pub dim: usize,
    pub rank: usize,
    /// every entry above the diagonal vanishes
    pub lower_triangular: bool,
    /// every entry below the diagonal vanishes
    pub upper_triangular: bool,
    pub diagonal: Vec<Rational>,
}

impl TransitionCheck {
    pub fn full_rank(&self) -> bool {
        self.rank == self.dim
    }

    pub fn triangular(&self) -> bool {
        self.lower_triangular || self.upper_triangular
    }

    pub fn unit_diagonal(&self) -> bool {
        self.diagonal.iter().all(Rational::is_one)
    }

    pub fn signed_unit_diagonal(&self) -> bool {
        self.diagonal.iter().all(|d| d.abs().is_one())
    }
}

/// Expands `family` in `basis` with rows ordered as given and columns permuted so the
/// `i`-th column is `leading[i]`.
pub fn transition_check(family: &[LinComb], leading: &[Morphism], basis: &[Morphism]) -> Result<TransitionCheck> {
    if family.len() != leading.len() {
        return Err(Error::DimensionMismatch {
            context: "transition family".into(),
            expected: family.len(),
            found: leading.len(),
        });
    }
    let index = basis_index(basis);
    let perm = leading
        .iter()
        .map(|m| {
            index
                .get(m)
                .copied()
                .ok_or_else(|| Error::InvalidMorphism(format!("{m} is not in the basis")))
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = family
        .iter()
        .map(|x| {
            let c = coordinates(x, basis)?;
            Ok(perm.iter().map(|&j| c[j].clone()).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = TransitionCheck {
        dim: basis.len(),
        rank: 0,
        lower_triangular: true,
        upper_triangular: true,
        diagonal: Vec::new(),
    };
    if perm.len() != basis.len() {
        out.lower_triangular = false;
        out.upper_triangular = false;
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                out.lower_triangular &= j <= i;
                out.upper_triangular &= j >= i;
            }
        }
        out.diagonal.push(row.get(i).cloned().unwrap_or_else(Rational::zero));
    }
    out.rank = RatMatrix::from_rows(rows, perm.len())?.rank();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_hom_sets() {
        assert_eq!(hom_basis(Kind::Ssimp, 0, 1).len(), 2);
        assert_eq!(hom_basis(Kind::Scube, 0, 1).len(), 2);
        assert_eq!(
            hom_basis(Kind::Scube, 0, 1),
            vec![
                Morphism::Cube(CubeMap::coface(1, 0, 1).unwrap()),
                Morphism::Cube(CubeMap::coface(1, 1, 1).unwrap())
            ]
        );
        for k in Kind::ALL {
            assert_eq!(hom_basis(k, 2, 2), vec![k.identity(2)]);
        }
        assert_eq!(hom_basis(Kind::AugSsimp, -1, 2).len(), 1);
        assert!(hom_basis(Kind::Ssimp, -1, 2).is_empty());
        assert!(hom_basis(Kind::Chain0, 0, 2).is_empty());
    }

    #[test]
    fn counts_match_formula() {
        for k in Kind::ALL {
            for n in -1..6 {
                for m in -1..=n {
                    assert_eq!(hom_basis(k, m, n).len() as u64, hom_count(k, m, n), "{k} {m} {n}");
                }
            }
        }
    }

    #[test]
    fn tail_sums() {
        for n in 1..5 {
            assert_eq!(
                d_lower(0, n, Kind::Ssimp).unwrap(),
                ComparisonFunctor::UDelta
                    .on_generator(crate::simplexcat::GeneratorId::OmegaD { n })
                    .unwrap()
            );
            let top = d_lower(n as usize, n, Kind::Ssimp).unwrap();
            assert_eq!(top.len(), 1);
        }
        let z = d_lower(1, 2, Kind::Ssimp).unwrap().compose(&d_lower(1, 1, Kind::Ssimp).unwrap()).unwrap();
        assert!(z.is_zero());
        assert!(d_lower(0, 0, Kind::Ssimp).is_err());
        assert!(d_lower(3, 2, Kind::AugSsimp).is_err());
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(strictly_decreasing_basis(Kind::Ssimp, 1, 1).unwrap().len(), 1);
        assert_eq!(strictly_decreasing_basis(Kind::Ssimp, 0, 1).unwrap().len(), 2);
        let aug = strictly_decreasing_basis(Kind::AugSsimp, -1, 0).unwrap();
        assert_eq!(aug.len(), 1);
        assert_eq!(
            aug[0].value().unwrap(),
            LinComb::from_morphism(Morphism::Inj(InjMap::coface(0, 0).unwrap()))
        );
    }

    fn monomial_check(kind: Kind, m: i32, n: i32) -> TransitionCheck {
        let fam = strictly_decreasing_basis(kind, m, n).unwrap();
        let values: Vec<LinComb> = fam.iter().map(|d| d.value().unwrap()).collect();
        let leading: Vec<Morphism> = fam.iter().map(|d| d.leading().unwrap()).collect();
        transition_check(&values, &leading, &hom_basis(kind, m, n)).unwrap()
    }

    #[test]
    fn monomials_are_triangular() {
        for n in 0..5 {
            for m in -1..=n {
                let t = monomial_check(Kind::AugSsimp, m, n);
                assert!(t.full_rank() && t.triangular() && t.signed_unit_diagonal(), "{m} {n} {t:?}");
            }
        }
    }

    #[test]
    fn sign_families_are_unitriangular() {
        for family in [SignFamily::VAfterJ0, SignFamily::J0AfterV] {
            for n in 0..5 {
                for m in 0..=n {
                    let mut fam = sign_family(family, m, n).unwrap();
                    fam.sort_by_key(|e| ones_then_lex(&e.leading));
                    let values: Vec<LinComb> = fam.iter().map(|e| e.value.clone()).collect();
                    let leading: Vec<Morphism> = fam.iter().map(|e| Morphism::Cube(e.leading.clone())).collect();
                    let t = transition_check(&values, &leading, &hom_basis(Kind::Scube, m, n)).unwrap();
                    assert!(t.full_rank() && t.lower_triangular && t.unit_diagonal(), "{family:?} {m} {n}");
                }
            }
        }
    }
}
