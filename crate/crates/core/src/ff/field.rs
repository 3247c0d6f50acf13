use std::fmt;
use std::sync::Arc;

use super::FfError;
use crate::series::is_prime;

/// Largest field size for which log/exp tables are built.
const MAX_FIELD_SIZE: u64 = 1 << 22;
/// Fields up to this size also get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

/// An element of some [`FieldCtx`], stored as the base-`p` integer
/// `c0 + c1 p + ... + c_{d-1} p^{d-1}` of its coordinates in the power basis
/// of the modulus. Elements of the prime field are `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The finite field `F_{p^d}` with a fixed monic irreducible modulus.
pub struct FieldCtx {
    p: u32,
    d: u32,
    q: u32,
    /// Non-leading coefficients `c0..c_{d-1}` of the modulus (none for d = 1).
    modulus: Option<Vec<u32>>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl std::hash::Hash for FieldCtx {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.d.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)?;
        if let Some(m) = &self.modulus {
            write!(f, " mod {}", fp_poly_string(m))?;
        }
        Ok(())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FieldCtx {
    /// `F_{p^d}` with the smallest irreducible modulus: the one whose
    /// non-leading coefficients, read as a base-`p` number with `c0` least
    /// significant, are smallest.
    pub fn new(p: u32, d: u32) -> Result<Arc<Self>, FfError> {
        check_size(p, d)?;
        if d == 1 {
            return Ok(Arc::new(Self::build(p, 1, None)));
        }
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let low = digits(idx, p, d);
            let mut f = low.clone();
            f.push(1);
            if fp_irreducible(&f, p) {
                return Ok(Arc::new(Self::build(p, d, Some(low))));
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    /// `F_{p^d}` with an explicit monic modulus given by its coefficients
    /// `c0..c_d` (low first, `c_d = 1`).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Arc<Self>, FfError> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(FfError::BadModulus("modulus must be monic of degree at least 1".into()));
        }
        let d = (modulus.len() - 1) as u32;
        check_size(p, d)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(FfError::BadModulus("coefficients must lie in 0..p".into()));
        }
        if !fp_irreducible(modulus, p) {
            return Err(FfError::BadModulus(format!("{} is reducible", fp_poly_string(&modulus[..modulus.len() - 1]))));
        }
        if d == 1 {
            return Ok(Arc::new(Self::build(p, 1, None)));
        }
        Ok(Arc::new(Self::build(p, d, Some(modulus[..d as usize].to_vec()))))
    }

    fn build(p: u32, d: u32, modulus: Option<Vec<u32>>) -> Self {
        let q = p.pow(d);
        let mut ctx = FieldCtx {
            p,
            d,
            q,
            modulus,
            add_table: None,
            neg: Vec::new(),
            log: Vec::new(),
            exp: Vec::new(),
        };
        ctx.neg = (0..q).map(|a| ctx.slow_neg(a)).collect();
        if q <= ADD_TABLE_LIMIT {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = ctx.slow_add(a, b);
                }
            }
            ctx.add_table = Some(t);
        }
        ctx.build_log_tables();
        ctx
    }

    fn build_log_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        let mut log = vec![0u32; q as usize];
        let mut exp = vec![0u32; order as usize];
        for g in 1..q {
            let mut x = 1u32;
            let mut ok = true;
            for (k, slot) in exp.iter_mut().enumerate() {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                *slot = x;
                x = self.slow_mul(x, g);
            }
            if ok && x == 1 {
                for (k, &e) in exp.iter().enumerate() {
                    log[e as usize] = k as u32;
                }
                self.log = log;
                self.exp = exp;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let (p, d) = (self.p, self.d);
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut pw = 1;
        for _ in 0..d {
            out += ((a % p + b % p) % p) * pw;
            a /= p;
            b /= p;
            pw *= p;
        }
        out
    }

    fn slow_neg(&self, a: u32) -> u32 {
        let (p, d) = (self.p, self.d);
        let mut a = a;
        let mut out = 0;
        let mut pw = 1;
        for _ in 0..d {
            out += ((p - a % p) % p) * pw;
            a /= p;
            pw *= p;
        }
        out
    }

    /// Schoolbook product of coordinate vectors reduced by the modulus.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let d = self.d as usize;
        let x = digits(a as u64, self.p, self.d);
        let y = digits(b as u64, self.p, self.d);
        let mut prod = vec![0u64; 2 * d - 1];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        if let Some(m) = &self.modulus {
            for k in (d..2 * d - 1).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                prod[k] = 0;
                // x^d = -(c0 + ... + c_{d-1} x^{d-1})
                for (i, &mi) in m.iter().enumerate() {
                    prod[k - d + i] = (prod[k - d + i] + (p - mi as u64) * c) % p;
                }
            }
        }
        let mut out = 0u64;
        for &c in prod[..d].iter().rev() {
            out = out * p + c;
        }
        out as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients `c0..c_d` (low first), `None` for a prime field.
    pub fn modulus(&self) -> Option<Vec<u32>> {
        self.modulus.as_ref().map(|m| {
            let mut v = m.clone();
            v.push(1);
            v
        })
    }

    pub fn elem(&self, index: u32) -> Result<FqElem, FfError> {
        if index < self.q {
            Ok(FqElem(index))
        } else {
            Err(FfError::Parse(format!("element index {index} outside F_{}", self.q)))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FqElem, FfError> {
        if coords.len() != self.d as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(FfError::Parse(format!(
                "expected {} coordinates in 0..{}",
                self.d, self.p
            )));
        }
        let mut out = 0;
        for &c in coords.iter().rev() {
            out = out * self.p + c;
        }
        Ok(FqElem(out))
    }

    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        digits(a.0 as u64, self.p, self.d)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> FqElem {
        if self.q == 2 {
            FqElem::ONE
        } else {
            FqElem(self.exp[1])
        }
    }

    /// The residue class of `x` (a root of the modulus); `None` for prime fields.
    pub fn generator(&self) -> Option<FqElem> {
        (self.d > 1).then_some(FqElem(self.p))
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        match &self.add_table {
            Some(t) => FqElem(t[(a.0 * self.q + b.0) as usize]),
            None if self.d == 1 => {
                let s = a.0 + b.0;
                FqElem(if s >= self.p { s - self.p } else { s })
            }
            None => FqElem(self.slow_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        let order = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FqElem(self.exp[(if s >= order { s - order } else { s }) as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem, FfError> {
        if a.0 == 0 {
            return Err(FfError::ZeroDivisor);
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FqElem(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem, FfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.0 == 0 {
            return FqElem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FqElem(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `a^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p as u64)
    }

    /// Whether `a` lies in the subfield `F_{p^e}`.
    pub fn in_subfield(&self, a: FqElem, e: u32) -> bool {
        self.pow(a, (self.p as u64).pow(e)) == a
    }

    pub fn format_elem(&self, a: FqElem) -> String {
        if self.d == 1 {
            a.0.to_string()
        } else {
            let c: Vec<String> = self.coords(a).iter().map(u32::to_string).collect();
            format!("({})", c.join(","))
        }
    }
}

fn check_size(p: u32, d: u32) -> Result<(), FfError> {
    if !is_prime(p as u64) {
        return Err(FfError::NotPrime(p));
    }
    if d == 0 {
        return Err(FfError::BadModulus("extension degree must be positive".into()));
    }
    match (p as u64).checked_pow(d) {
        Some(q) if q <= MAX_FIELD_SIZE => Ok(()),
        _ => Err(FfError::FieldTooLarge { p, d }),
    }
}

fn digits(mut x: u64, p: u32, d: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(d as usize);
    for _ in 0..d {
        out.push((x % p as u64) as u32);
        x /= p as u64;
    }
    out
}

fn fp_poly_string(low: &[u32]) -> String {
    let d = low.len();
    let mut terms = vec![if d == 1 { "x".to_string() } else { format!("x^{d}") }];
    for (i, &c) in low.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    terms.join("+")
}

/// Remainder of `a` modulo monic `b` over `F_p`.
fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k];
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[k - db + i] = (r[k - db + i] + (p64 - bi as u64) * c) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg f / 2`.
fn fp_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d <= 1 {
        return d == 1;
    }
    for k in 1..=d / 2 {
        let count = (p as u64).pow(k as u32);
        for idx in 0..count {
            let mut g = digits(idx, p, k as u32);
            g.push(1);
            if fp_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// An injective homomorphism `F_{p^d} -> F_{p^{dk}}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<FieldCtx>,
    target: Arc<FieldCtx>,
    image: Vec<FqElem>,
    preimage: Vec<Option<FqElem>>,
}

impl Embedding {
    pub fn source(&self) -> &Arc<FieldCtx> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FieldCtx> {
        &self.target
    }

    pub fn apply(&self, a: FqElem) -> FqElem {
        self.image[a.0 as usize]
    }

    /// The source element mapping to `b`, if `b` lies in the image.
    pub fn preimage(&self, b: FqElem) -> Option<FqElem> {
        self.preimage[b.0 as usize]
    }
}

/// Builds `F_{p^{dk}}` (with its own smallest modulus) and embeds `base` in
/// it by sending the base generator to a root of the base modulus.
pub fn field_embed(base: &Arc<FieldCtx>, k: u32) -> Result<Embedding, FfError> {
    if k == 0 {
        return Err(FfError::BadModulus("embedding degree must be positive".into()));
    }
    let target = if k == 1 {
        base.clone()
    } else {
        FieldCtx::new(base.p, base.d * k)?
    };
    let image: Vec<FqElem> = if k == 1 {
        base.elements().collect()
    } else {
        match base.modulus() {
            None => base.elements().map(|a| FqElem(a.0)).collect(),
            Some(m) => {
                let root = target
                    .elements()
                    .find(|&t| {
                        let mut acc = FqElem::ZERO;
                        for &c in m.iter().rev() {
                            acc = target.add(target.mul(acc, t), FqElem(c));
                        }
                        acc.is_zero()
                    })
                    .expect("the base modulus splits in the extension");
                base.elements()
                    .map(|a| {
                        let mut acc = FqElem::ZERO;
                        for &c in base.coords(a).iter().rev() {
                            acc = target.add(target.mul(acc, root), FqElem(c));
                        }
                        acc
                    })
                    .collect()
            }
        }
    };
    let mut preimage = vec![None; target.q as usize];
    for (i, &b) in image.iter().enumerate() {
        preimage[b.0 as usize] = Some(FqElem(i as u32));
    }
    Ok(Embedding {
        source: base.clone(),
        target,
        image,
        preimage,
    })
}
