//! Arithmetic in GF(q) for prime powers q <= 9, via precomputed tables.
//!
//! Elements are encoded as integers in `0..q`: the base-p digits of the
//! encoding are the coefficients of the residue polynomial, so 0 is the
//! additive identity and 1 the multiplicative identity. The moduli are
//! fixed per order so that canonical forms downstream are reproducible.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Lookup-table arithmetic for one finite field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub q: u32,
    /// Characteristic.
    pub p: u32,
    /// Extension degree; q = p^d.
    pub d: u32,
    /// Coefficients of the irreducible modulus, low degree first, degree d.
    pub modulus: Vec<u8>,
    add_table: Vec<u8>,
    mul_table: Vec<u8>,
    inv_table: Vec<u8>,
}

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    for p in [2u32, 3, 5, 7] {
        if q % p == 0 {
            let mut d = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                d += 1;
            }
            return if m == 1 { Some((p, d)) } else { None };
        }
    }
    None
}

/// Modulus polynomial per extension order, low degree first, including the
/// leading coefficient. GF(4): x^2+x+1, GF(8): x^3+x+1, GF(9): x^2+1.
fn modulus_for(q: u32) -> Vec<u8> {
    match q {
        4 => vec![1, 1, 1],
        8 => vec![1, 1, 0, 1],
        9 => vec![1, 0, 1],
        _ => vec![],
    }
}

fn digits(mut e: u32, p: u32, d: u32) -> Vec<u8> {
    let mut out = vec![0u8; d as usize];
    for c in out.iter_mut() {
        *c = (e % p) as u8;
        e /= p;
    }
    out
}

fn undigits(cs: &[u8], p: u32) -> u32 {
    cs.iter().rev().fold(0u32, |acc, &c| acc * p + c as u32)
}

fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8], p: u32) -> Vec<u8> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * d];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u32 * bj as u32) % p;
        }
    }
    // Reduce by the (monic) modulus.
    for k in (d..2 * d).rev() {
        let c = prod[k];
        if c != 0 {
            for (m, &mc) in modulus.iter().enumerate() {
                let idx = k - d + m;
                prod[idx] = (prod[idx] + (p - 1) * c * mc as u32) % p;
            }
        }
    }
    prod[..d].iter().map(|&c| c as u8).collect()
}

impl FieldSpec {
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add_table[a as usize * self.q as usize + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul_table[a as usize * self.q as usize + b as usize]
    }

    /// Multiplicative inverse; panics on 0.
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv_table[a as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        for b in 0..self.q as u8 {
            if self.add(a, b) == 0 {
                return b;
            }
        }
        unreachable!("additive inverse must exist")
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// The Frobenius map x -> x^p.
    pub fn frobenius(&self, a: u8) -> u8 {
        let mut out = a;
        for _ in 1..self.p {
            out = self.mul(out, a);
        }
        out
    }
}

/// Builds the arithmetic tables for GF(q).
///
/// Deterministic: the modulus is fixed per order, so two calls always
/// produce identical tables.
pub fn make_field(q: u32) -> Result<FieldSpec> {
    if !SUPPORTED_ORDERS.contains(&q) {
        return Err(Error::UnsupportedOrder(q));
    }
    let (p, d) = factor_prime_power(q).expect("supported orders are prime powers");
    let modulus = modulus_for(q);
    let n = q as usize;
    let mut add_table = vec![0u8; n * n];
    let mut mul_table = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            let (s, m) = if d == 1 {
                (
                    ((a + b) % n) as u8,
                    ((a * b) % n) as u8,
                )
            } else {
                let da = digits(a as u32, p, d);
                let db = digits(b as u32, p, d);
                let sum: Vec<u8> = da
                    .iter()
                    .zip(&db)
                    .map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8)
                    .collect();
                let prod = poly_mul_mod(&da, &db, &modulus, p);
                (undigits(&sum, p) as u8, undigits(&prod, p) as u8)
            };
            add_table[a * n + b] = s;
            mul_table[a * n + b] = m;
        }
    }
    let mut inv_table = vec![0u8; n];
    for a in 1..n {
        let mut found = false;
        for b in 1..n {
            if mul_table[a * n + b] == 1 {
                inv_table[a] = b as u8;
                found = true;
                break;
            }
        }
        assert!(found, "GF({q}) element {a} has no inverse; modulus not irreducible?");
    }
    Ok(FieldSpec {
        q,
        p,
        d,
        modulus,
        add_table,
        mul_table,
        inv_table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsupported_order_rejected() {
        assert!(matches!(make_field(6), Err(Error::UnsupportedOrder(6))));
        assert!(matches!(make_field(11), Err(Error::UnsupportedOrder(11))));
        assert!(matches!(make_field(16), Err(Error::UnsupportedOrder(16))));
    }

    #[test]
    fn gf2_arithmetic() {
        let f = make_field(2).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn gf3_inverse() {
        let f = make_field(3).unwrap();
        assert_eq!(f.inv(2), 2);
    }

    #[test]
    fn gf4_polynomial_multiplication() {
        // x * x = x + 1 modulo x^2 + x + 1, i.e. 2 * 2 = 3.
        let f = make_field(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in SUPPORTED_ORDERS {
            let f = make_field(q).unwrap();
            let n = q as u8;
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "GF({q}): {a} * inv");
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)), "GF({q}) add assoc");
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)), "GF({q}) mul assoc");
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "GF({q}) distributivity"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic_tables() {
        for q in SUPPORTED_ORDERS {
            assert_eq!(make_field(q).unwrap(), make_field(q).unwrap());
        }
    }

    #[test]
    fn frobenius_is_automorphism() {
        for q in [4u32, 8, 9] {
            let f = make_field(q).unwrap();
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }
}
