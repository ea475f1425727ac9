//! Arithmetic in GF(2^m) with an explicit irreducible modulus.
//!
//! Elements are m-bit words in the polynomial basis {1, w, ..., w^{m-1}}
//! (bit i = coefficient of w^i). Multiplication and inversion run over
//! log/antilog tables built once at context creation, so everything
//! downstream is plain table lookups.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} out of range (2..=16)")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus} does not have degree {m}")]
    ModulusDegree { modulus: u32, m: u32 },
    #[error("modulus {0} is reducible over GF(2)")]
    ReducibleModulus(u32),
    #[error("encoding {bits} is not an element of GF(2^{m})")]
    ElementOutOfRange { bits: u32, m: u32 },
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("{e} does not divide the extension degree {m}")]
    BadSubfield { e: u32, m: u32 },
    #[error("operands belong to different field contexts")]
    ContextMismatch,
}

/// An element of a specific `FieldCtx`, tagged so cross-field arithmetic
/// is caught at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    bits: u16,
    field: u32,
}

impl FieldElement {
    /// The coefficient word (bit i = coefficient of w^i).
    pub fn bits(self) -> u32 {
        self.bits as u32
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits)
    }
}

static NEXT_CTX_ID: AtomicU32 = AtomicU32::new(1);

/// GF(2^m) with a verified-irreducible modulus and a discovered
/// primitive element. Immutable after construction and freely shareable.
pub struct FieldCtx {
    id: u32,
    m: u32,
    modulus: u32,
    q: usize,
    primitive: u16,
    /// exp[i] = primitive^i, doubled so `exp[log a + log b]` needs no reduction.
    exp: Vec<u16>,
    /// log[x] for x != 0; log[0] is a sentinel and never read.
    log: Vec<u16>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for FieldCtx {}

/// Remainder of `f` modulo `g` over GF(2), both as coefficient words.
fn poly_mod(mut f: u64, g: u64) -> u64 {
    let dg = 63 - g.leading_zeros() as i32;
    loop {
        let df = 63 - (f | 1).leading_zeros() as i32;
        if f == 0 || df < dg {
            return f;
        }
        f ^= g << (df - dg);
    }
}

/// Brute-force irreducibility over GF(2): trial division by every
/// polynomial of degree 1..=deg/2.
pub fn poly_irreducible(f: u32) -> bool {
    if f < 2 {
        return false;
    }
    let deg = 31 - f.leading_zeros();
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for g in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_mod(f as u64, g as u64) == 0 {
                return false;
            }
        }
    }
    true
}

/// Smallest irreducible degree-m polynomial by integer encoding.
fn default_modulus(m: u32) -> u32 {
    // constant term must be 1, otherwise w divides
    ((1u32 << m) + 1..(1u32 << (m + 1)))
        .step_by(2)
        .find(|&f| poly_irreducible(f))
        .expect("an irreducible polynomial exists for every degree")
}

/// Build a GF(2^m) context. With `modulus = None` the lexicographically
/// smallest irreducible degree-m polynomial is used. Deterministic for
/// fixed inputs.
pub fn build_field(m: u32, modulus: Option<u32>) -> Result<FieldCtx, FieldError> {
    if !(2..=16).contains(&m) {
        return Err(FieldError::DegreeOutOfRange(m));
    }
    let modulus = match modulus {
        Some(f) => {
            if f < (1 << m) || f >= (1 << (m + 1)) {
                return Err(FieldError::ModulusDegree { modulus: f, m });
            }
            if !poly_irreducible(f) {
                return Err(FieldError::ReducibleModulus(f));
            }
            f
        }
        None => default_modulus(m),
    };
    let q = 1usize << m;

    // Multiply without tables, used only while building them.
    let slow_mul = |a: u64, b: u64| -> u16 {
        let mut acc = 0u64;
        for i in 0..m {
            if (b >> i) & 1 == 1 {
                acc ^= a << i;
            }
        }
        poly_mod(acc, modulus as u64) as u16
    };

    // Find the smallest primitive element: its powers must visit every
    // nonzero element exactly once.
    let mut exp = vec![0u16; 2 * (q - 1)];
    let mut log = vec![0u16; q];
    let mut primitive = 0u16;
    'cand: for gamma in 2..q as u32 {
        let mut seen = vec![false; q];
        let mut x = 1u16;
        for i in 0..q - 1 {
            if seen[x as usize] {
                continue 'cand;
            }
            seen[x as usize] = true;
            exp[i] = x;
            log[x as usize] = i as u16;
            x = slow_mul(x as u64, gamma as u64);
        }
        if x == 1 {
            primitive = gamma as u16;
            break;
        }
    }
    debug_assert!(primitive != 0);
    for i in 0..q - 1 {
        exp[q - 1 + i] = exp[i];
    }

    Ok(FieldCtx {
        id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
        m,
        modulus,
        q,
        primitive,
        exp,
        log,
    })
}

impl FieldCtx {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Field size q = 2^m.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.el(self.primitive)
    }

    fn el(&self, bits: u16) -> FieldElement {
        FieldElement {
            bits,
            field: self.id,
        }
    }

    /// Wrap an encoding as an element of this field.
    pub fn element(&self, bits: u32) -> Result<FieldElement, FieldError> {
        if bits as usize >= self.q {
            return Err(FieldError::ElementOutOfRange { bits, m: self.m });
        }
        Ok(self.el(bits as u16))
    }

    pub fn zero(&self) -> FieldElement {
        self.el(0)
    }

    pub fn one(&self) -> FieldElement {
        self.el(1)
    }

    /// The polynomial-basis generator w (the class of x).
    pub fn gen_w(&self) -> FieldElement {
        self.el(2)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as u16).map(move |b| self.el(b))
    }

    fn expect_member(&self, x: FieldElement) -> u16 {
        assert!(
            x.field == self.id,
            "{}",
            FieldError::ContextMismatch.to_string()
        );
        x.bits
    }

    // --- raw-index arithmetic, used by the hot loops -------------------

    #[inline]
    pub(crate) fn mul_bits(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
        }
    }

    #[inline]
    pub(crate) fn inv_bits(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.exp[self.q - 1 - self.log[a as usize] as usize]
    }

    // --- element arithmetic --------------------------------------------

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b) = (self.expect_member(a), self.expect_member(b));
        self.el(a ^ b)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b) = (self.expect_member(a), self.expect_member(b));
        self.el(self.mul_bits(a, b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        let a = self.expect_member(a);
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.el(self.inv_bits(a)))
    }

    /// a^e with 0^0 = 1.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        let a = self.expect_member(a);
        if e == 0 {
            return self.one();
        }
        if a == 0 {
            return self.zero();
        }
        let idx = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.el(self.exp[idx as usize])
    }

    /// The unique square root, computed as (m-1)-fold squaring
    /// (squaring is a bijection in characteristic 2).
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        let mut x = self.expect_member(a);
        for _ in 0..self.m - 1 {
            x = self.mul_bits(x, x);
        }
        self.el(x)
    }

    /// Absolute trace onto GF(2): sum of the conjugates x^{2^i}.
    pub fn trace_abs(&self, x: FieldElement) -> u8 {
        let x = self.expect_member(x);
        let mut acc = 0u16;
        let mut c = x;
        for _ in 0..self.m {
            acc ^= c;
            c = self.mul_bits(c, c);
        }
        debug_assert!(acc <= 1);
        acc as u8
    }

    /// Relative trace onto the subfield GF(2^e), for e | m.
    pub fn trace_rel(&self, x: FieldElement, e: u32) -> Result<FieldElement, FieldError> {
        if e == 0 || self.m % e != 0 {
            return Err(FieldError::BadSubfield { e, m: self.m });
        }
        let x = self.expect_member(x);
        let mut acc = 0u16;
        let mut c = x;
        for _ in 0..self.m / e {
            acc ^= c;
            // c -> c^{2^e}
            for _ in 0..e {
                c = self.mul_bits(c, c);
            }
        }
        Ok(self.el(acc))
    }

    /// True iff x^2 + beta*x + 1 has no root in GF(2^m), decided by
    /// exhaustive root search (the trace criterion stays available as an
    /// independent property test).
    pub fn quadratic_irreducible(&self, beta: FieldElement) -> bool {
        let beta = self.expect_member(beta);
        for x in 0..self.q as u16 {
            let v = self.mul_bits(x, x) ^ self.mul_bits(beta, x) ^ 1;
            if v == 0 {
                return false;
            }
        }
        true
    }

    /// Smallest beta (by integer encoding) with x^2 + beta*x + 1 irreducible.
    pub fn default_beta(&self) -> FieldElement {
        for b in 0..self.q as u32 {
            let beta = self.el(b as u16);
            if self.quadratic_irreducible(beta) {
                return beta;
            }
        }
        unreachable!("half of the nonzero beta values are admissible")
    }
}
