use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{find_decompositions, m_family, s_family, FamilyError};
use crate::ff::{enumeration_budget, FieldCtx, FqElem, UniPoly};
use crate::series::divisors;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum P2Label {
    F,
    S,
    M,
    None,
}

impl fmt::Display for P2Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            P2Label::F => "F",
            P2Label::S => "S",
            P2Label::M => "M",
            P2Label::None => "none",
        })
    }
}

/// Parameters under which a shift of `f` lands in a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum P2Witness {
    Frobenius,
    S { w: FqElem, u: FqElem, s: FqElem, eps: bool, m: u32, t_count: usize },
    M { w: FqElem, a: FqElem, b: FqElem, m: u32 },
}

impl P2Witness {
    pub fn label(&self) -> P2Label {
        match self {
            P2Witness::Frobenius => P2Label::F,
            P2Witness::S { .. } => P2Label::S,
            P2Witness::M { .. } => P2Label::M,
        }
    }

    /// The number of decompositions the family predicts.
    pub fn predicted_count(&self) -> usize {
        match self {
            P2Witness::Frobenius | P2Witness::M { .. } => 2,
            P2Witness::S { t_count, .. } => *t_count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Classification {
    pub decompositions: usize,
    /// Every case that holds; a collision matches exactly one.
    pub matches: Vec<P2Witness>,
}

impl P2Classification {
    pub fn label(&self) -> P2Label {
        if self.decompositions < 2 {
            return P2Label::None;
        }
        self.matches.first().map_or(P2Label::None, P2Witness::label)
    }

    pub fn witness(&self) -> Option<&P2Witness> {
        (self.decompositions >= 2).then(|| self.matches.first()).flatten()
    }

    pub fn is_exclusive(&self) -> bool {
        self.decompositions < 2 || self.matches.len() == 1
    }
}

#[derive(Clone, Copy, Debug)]
struct SKey {
    u: FqElem,
    s: FqElem,
    eps: bool,
    m: u32,
    t_count: usize,
}

#[derive(Clone, Copy, Debug)]
struct MKey {
    a: FqElem,
    b: FqElem,
    m: u32,
}

/// Precomputed S and M families of degree `p^2` over one field, for
/// classifying many polynomials.
pub struct P2Classifier {
    ctx: Arc<FieldCtx>,
    p: u32,
    s_map: HashMap<UniPoly, SKey>,
    m_map: HashMap<UniPoly, MKey>,
}

impl P2Classifier {
    pub fn new(ctx: &Arc<FieldCtx>) -> Result<Self, FamilyError> {
        let p = ctx.characteristic();
        let nonzero: Vec<FqElem> = ctx.elements().filter(|a| !a.is_zero()).collect();
        let mut s_map = HashMap::new();
        for m in divisors(p as u64 - 1).into_iter().map(|m| m as u32) {
            for eps in [false, true] {
                for &u in &nonzero {
                    for &s in &nonzero {
                        let fam = s_family(ctx, u, s, eps, m, p)?;
                        let t_count = fam.decompositions.len();
                        if t_count >= 2 {
                            s_map.entry(fam.f).or_insert(SKey { u, s, eps, m, t_count });
                        }
                    }
                }
            }
        }
        let mut m_map = HashMap::new();
        for m in 2..p.saturating_sub(1) {
            for &b in &nonzero {
                let bp = ctx.pow(b, p as u64);
                for a in nonzero.iter().copied().filter(|&a| a != bp) {
                    let fam = m_family(ctx, a, b, m, p)?;
                    m_map.entry(fam.f).or_insert(MKey { a, b, m });
                }
            }
        }
        Ok(P2Classifier { ctx: ctx.clone(), p, s_map, m_map })
    }

    pub fn classify(&self, f: &UniPoly) -> Result<P2Classification, FamilyError> {
        let n = (self.p * self.p) as usize;
        match f.degree() {
            Some(d) if d == n => {}
            d => return Err(FamilyError::Degree { expected: n, found: d.unwrap_or(0) }),
        }
        if !(f.is_monic() && f.is_original()) {
            return Err(FamilyError::NotMonicOriginal);
        }
        let decompositions = find_decompositions(f, enumeration_budget())?.len();
        let mut matches = Vec::new();
        if decompositions < 2 {
            return Ok(P2Classification { decompositions, matches });
        }
        if f.in_powers_of(self.p as usize) {
            matches.push(P2Witness::Frobenius);
        }
        let mut s_hit = None;
        let mut m_hit = None;
        for w in self.ctx.elements() {
            let fw = f.original_shift(w);
            if s_hit.is_none() {
                if let Some(k) = self.s_map.get(&fw) {
                    s_hit = Some(P2Witness::S { w, u: k.u, s: k.s, eps: k.eps, m: k.m, t_count: k.t_count });
                }
            }
            if m_hit.is_none() {
                if let Some(k) = self.m_map.get(&fw) {
                    m_hit = Some(P2Witness::M { w, a: k.a, b: k.b, m: k.m });
                }
            }
        }
        matches.extend(s_hit);
        matches.extend(m_hit);
        Ok(P2Classification { decompositions, matches })
    }
}

/// Classifies a monic original polynomial of degree `p^2` by the family
/// its collision belongs to.
pub fn classify_p2(f: &UniPoly) -> Result<P2Classification, FamilyError> {
    P2Classifier::new(f.ctx())?.classify(f)
}
