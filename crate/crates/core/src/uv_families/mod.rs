//! Explicit collision families of univariate polynomials: polynomials with
//! two or more decompositions `f = g ∘ h` into monic original components.

mod classify;
mod decompose;
mod families;

use std::fmt;

use thiserror::Error;

use crate::ff::{FfError, FqElem, UniPoly};

pub use classify::{classify_p2, P2Classification, P2Classifier, P2Label, P2Witness};
pub use decompose::{find_decompositions, left_component, tame_right_component};
pub use families::{
    dickson, frobenius_family, m_family, ritt_family_first, ritt_family_second, s_family, t_set,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("degenerate first-case parameters")]
    Degenerate,
    #[error("wild left component: characteristic {p} divides {what}")]
    Wild { p: u32, what: String },
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("not a collision: {0}")]
    NotCollision(String),
    #[error("polynomial must be monic and original")]
    NotMonicOriginal,
    #[error("expected degree {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error(transparent)]
    Field(#[from] FfError),
}

/// A pair `(g, h)` with `f = g ∘ h`, both of degree at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub g: UniPoly,
    pub h: UniPoly,
}

impl Decomposition {
    pub fn new(g: UniPoly, h: UniPoly) -> Self {
        Decomposition { g, h }
    }

    pub fn compose(&self) -> UniPoly {
        self.g.compose(&self.h).expect("components share a field")
    }

    /// `(g, h)^{[a]} = (g^{[h(a)]}, h^{[a]})`.
    pub fn shift(&self, a: FqElem) -> Self {
        Decomposition {
            g: self.g.original_shift(self.h.eval(a)),
            h: self.h.original_shift(a),
        }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ∘ ({})", self.g, self.h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyLabel {
    Ritt1,
    Ritt2,
    Frobenius,
    S,
    M,
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyLabel::Ritt1 => "ritt1",
            FamilyLabel::Ritt2 => "ritt2",
            FamilyLabel::Frobenius => "frobenius",
            FamilyLabel::S => "S",
            FamilyLabel::M => "M",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    Ritt1 { ell: u32, k: u32, w: UniPoly, a: FqElem },
    Ritt2 { ell: u32, m: u32, z: FqElem, a: FqElem },
    Frobenius { h: UniPoly },
    S { u: FqElem, s: FqElem, eps: bool, m: u32, r: u32, t: Vec<FqElem> },
    M { a: FqElem, b: FqElem, m: u32, r: u32, a_star: FqElem, m_star: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionFamily {
    pub f: UniPoly,
    pub decompositions: Vec<Decomposition>,
    pub label: FamilyLabel,
    pub params: FamilyParams,
}

impl CollisionFamily {
    /// Checks that every decomposition composes to `f`, has monic original
    /// components of degree at least 2, and that they are pairwise distinct.
    pub fn verify(&self) -> Result<(), FamilyError> {
        for (i, d) in self.decompositions.iter().enumerate() {
            for c in [&d.g, &d.h] {
                if !(c.is_monic() && c.is_original()) {
                    return Err(FamilyError::NotMonicOriginal);
                }
                if c.degree().unwrap_or(0) < 2 {
                    return Err(FamilyError::NotCollision(format!("component {c} has degree below 2")));
                }
            }
            if d.compose() != self.f {
                return Err(FamilyError::NotCollision(format!("{d} does not compose to {}", self.f)));
            }
            if self.decompositions[..i].contains(d) {
                return Err(FamilyError::NotCollision(format!("{d} is listed twice")));
            }
        }
        Ok(())
    }
}

/// The original shift `f^{[a]} = (x - f(a)) ∘ f ∘ (x + a)` of a monic
/// original polynomial.
pub fn original_shift(f: &UniPoly, a: FqElem) -> Result<UniPoly, FamilyError> {
    if !(f.is_monic() && f.is_original()) {
        return Err(FamilyError::NotMonicOriginal);
    }
    Ok(f.original_shift(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldCtx;

    #[test]
    fn shift_examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let sq = UniPoly::parse(&f3, "x^2").unwrap();
        assert_eq!(original_shift(&sq, FqElem::ONE).unwrap().to_string(), "x^2+2*x");
        assert_eq!(original_shift(&sq, FqElem::ZERO).unwrap(), sq);
        let bad = UniPoly::parse(&f3, "x^2+1").unwrap();
        assert_eq!(original_shift(&bad, FqElem::ONE), Err(FamilyError::NotMonicOriginal));
    }

    #[test]
    fn shift_respects_decompositions() {
        let f = FieldCtx::new(5, 1).unwrap();
        let d = Decomposition::new(
            UniPoly::parse(&f, "x^2+3*x").unwrap(),
            UniPoly::parse(&f, "x^3+x^2+4*x").unwrap(),
        );
        for a in f.elements() {
            assert_eq!(d.shift(a).compose(), d.compose().original_shift(a));
        }
    }
}
