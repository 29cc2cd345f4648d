//! Exact `GF(2^k)` arithmetic with a fixed multiplicative generator,
//! discrete logarithms, and the symplectic form on pairs.
//!
//! The modulus and generator are canonicalized (smallest irreducible by bit
//! value, smallest element of full multiplicative order) so all downstream
//! outputs are reproducible bit for bit.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Element of `GF(2^k)`: the k-bit mask of its polynomial residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A binary field `GF(2^k)` with its modulus, generator, and log tables.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    k: u32,
    q: u32,
    modulus: u32,
    generator: FieldElement,
    /// log[bits] = exponent e with generator^e = bits, for bits in 1..q.
    log: Vec<u32>,
    /// exp[e] = generator^e for e in 0..q-1.
    exp: Vec<u32>,
}

/// Builds `GF(2^k)` for `1 <= k <= 16`.
pub fn field_build(k: u32) -> Result<FieldSpec> {
    if !(1..=16).contains(&k) {
        return Err(Error::OutOfRange {
            name: "k",
            value: i64::from(k),
            min: 1,
            max: 16,
        });
    }
    let q: u32 = 1 << k;
    let modulus = smallest_irreducible(k);

    // Smallest element of full multiplicative order q - 1. Building its
    // power table doubles as the order check: the walk must first return
    // to 1 after exactly q - 1 steps.
    let mut generator = None;
    let mut exp = Vec::new();
    'candidates: for cand in 1..q {
        exp.clear();
        let mut x = 1u32;
        for e in 0..(q - 1) {
            exp.push(x);
            x = mul_mod(x, cand, modulus, k);
            if x == 1 && e + 1 < q - 1 {
                continue 'candidates;
            }
        }
        if x == 1 {
            generator = Some(FieldElement(cand));
            break;
        }
    }
    let generator = generator.expect("the multiplicative group of a finite field is cyclic");

    let mut log = vec![0u32; q as usize];
    for (e, &bits) in exp.iter().enumerate() {
        log[bits as usize] = e as u32;
    }

    Ok(FieldSpec {
        k,
        q,
        modulus,
        generator,
        log,
        exp,
    })
}

impl FieldSpec {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Field order `q = 2^k`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// The irreducible modulus as a (k+1)-bit mask.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if bits >= self.q {
            return Err(Error::OutOfRange {
                name: "element bits",
                value: i64::from(bits),
                min: 0,
                max: i64::from(self.q) - 1,
            });
        }
        Ok(FieldElement(bits))
    }

    /// Addition is xor of coefficient masks.
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(mul_mod(a.0, b.0, self.modulus, self.k))
    }

    /// Exponent `e` with `generator^e = x`.
    pub fn dlog(&self, x: FieldElement) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.log[x.0 as usize])
    }

    /// `generator^e`, with `e` reduced modulo `q - 1`.
    pub fn generator_pow(&self, e: i64) -> FieldElement {
        let order = i64::from(self.q) - 1;
        FieldElement(self.exp[e.rem_euclid(order) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let e = self.dlog(a)?;
        Ok(self.generator_pow(-i64::from(e)))
    }
}

/// The alternating form `B(u, v) = u_1 v_2 + u_2 v_1` on pairs; symmetric in
/// characteristic 2, with `B(u, u) = 0`.
pub fn symplectic(
    spec: &FieldSpec,
    u: (FieldElement, FieldElement),
    v: (FieldElement, FieldElement),
) -> FieldElement {
    spec.add(spec.mul(u.0, v.1), spec.mul(u.1, v.0))
}

/// Carryless product reduced modulo `modulus`.
fn mul_mod(a: u32, b: u32, modulus: u32, k: u32) -> u32 {
    let mut prod: u64 = 0;
    let mut aa = u64::from(a);
    let mut bb = b;
    while bb != 0 {
        if bb & 1 == 1 {
            prod ^= aa;
        }
        aa <<= 1;
        bb >>= 1;
    }
    // reduce: degree of prod is at most 2k - 2
    let m = u64::from(modulus);
    let mut deg = 63 - prod.leading_zeros() as i64;
    let kk = i64::from(k);
    while prod != 0 && deg >= kk {
        prod ^= m << (deg - kk);
        deg = if prod == 0 {
            -1
        } else {
            63 - prod.leading_zeros() as i64
        };
    }
    prod as u32
}

fn degree(f: u32) -> i32 {
    31 - f.leading_zeros() as i32
}

/// Remainder of `f` under polynomial division by `g` over GF(2).
fn poly_rem(f: u32, g: u32) -> u32 {
    let dg = degree(g);
    let mut r = f;
    while r != 0 && degree(r) >= dg {
        r ^= g << (degree(r) - dg);
    }
    r
}

/// Trial division by every polynomial of degree 1..=k/2.
fn is_irreducible(f: u32, k: u32) -> bool {
    for g in 2u32..(1 << (k / 2 + 1)) {
        if degree(g) < 1 {
            continue;
        }
        if poly_rem(f, g) == 0 {
            return false;
        }
    }
    true
}

/// Smallest degree-k irreducible with nonzero constant term (a modulus
/// divisible by x would not be a valid residue ring representative).
fn smallest_irreducible(k: u32) -> u32 {
    let lo = 1u32 << k;
    let hi = 1u32 << (k + 1);
    for f in lo..hi {
        if f & 1 == 1 && is_irreducible(f, k) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(2)")
}
