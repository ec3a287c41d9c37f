use std::collections::BTreeMap;
use std::fmt;

use super::morphism::Morphism;
use crate::error::{Error, Result};
use crate::exactlin::Rational;

/// A formal linear combination of parallel normal-form morphisms `source -> target`.
///
/// Zero coefficients are never stored; the empty combination is the zero morphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb {
    source: i32,
    target: i32,
    terms: BTreeMap<Morphism, Rational>,
}

impl LinComb {
    pub fn zero(source: i32, target: i32) -> Self {
        LinComb {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_morphism(m: Morphism) -> Self {
        let mut terms = BTreeMap::new();
        let (source, target) = (m.source(), m.target());
        terms.insert(m, Rational::one());
        LinComb {
            source,
            target,
            terms,
        }
    }

    pub fn from_terms<I>(source: i32, target: i32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Morphism, Rational)>,
    {
        let mut out = LinComb::zero(source, target);
        for (m, c) in terms {
            out.add_term(m, &c)?;
        }
        Ok(out)
    }

    pub fn source(&self) -> i32 {
        self.source
    }

    pub fn target(&self) -> i32 {
        self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Morphism, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Morphism) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Morphism, c: &Rational) -> Result<()> {
        if m.source() != self.source || m.target() != self.target {
            return Err(Error::BoundaryMismatch {
                outer: format!("combination {}->{}", self.source, self.target),
                inner: m.to_string(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> LinComb {
        if c.is_zero() {
            return LinComb::zero(self.source, self.target);
        }
        LinComb {
            source: self.source,
            target: self.target,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb> {
        let mut out = self.clone();
        if other.source != self.source || other.target != self.target {
            return Err(Error::BoundaryMismatch {
                outer: format!("combination {}->{}", self.source, self.target),
                inner: format!("combination {}->{}", other.source, other.target),
            });
        }
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// `self ∘ inner`, extended bilinearly.
    pub fn compose(&self, inner: &LinComb) -> Result<LinComb> {
        if inner.target != self.source {
            return Err(Error::BoundaryMismatch {
                outer: format!("combination {}->{}", self.source, self.target),
                inner: format!("combination {}->{}", inner.source, inner.target),
            });
        }
        let mut out = LinComb::zero(inner.source, self.target);
        for (g, a) in &self.terms {
            for (f, b) in &inner.terms {
                if let Some(gf) = g.compose(f)? {
                    out.add_term(gf, &(a * b))?;
                }
            }
        }
        Ok(out)
    }

    /// Composes a word of factors listed outermost first; an empty word is rejected.
    pub fn compose_word(factors: &[LinComb]) -> Result<LinComb> {
        let (last, rest) = factors
            .split_last()
            .ok_or_else(|| Error::Invalid("empty word".into()))?;
        rest.iter().rev().try_fold(last.clone(), |acc, f| f.compose(&acc))
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 ({}->{})", self.source, self.target);
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*[{m}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
