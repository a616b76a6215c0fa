//! Small finite fields `GF(p^k)` with precomputed operation tables.
//!
//! An element is encoded as the integer `Σ c_j p^j` of its coefficient vector
//! in the basis `1, t, ..., t^{k-1}`, so `0` and `1` encode themselves and the
//! prime subfield is `0..p`.

use crate::error::{Error, Result};

pub type Elem = u32;

/// Largest supported field order; tables are `order²` entries.
pub const MAX_ORDER: u32 = 1024;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    order: u32,
    /// Coefficients of the monic modulus, lowest first, leading 1 omitted.
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// Splits `q` as `p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

fn poly_mod(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    // m is monic of degree m.len() - 1, given in full
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let off = a.len() - dm;
            for (j, &c) in m[..dm].iter().enumerate() {
                let idx = off + j;
                a[idx] = (a[idx] + p - lead * c % p) % p;
            }
        }
    }
    a
}

fn is_irreducible(full: &[u32], p: u32) -> bool {
    let k = full.len() - 1;
    for d in 1..=k / 2 {
        // every monic polynomial of degree d
        for code in 0..(p as u64).pow(d as u32) {
            let mut divisor: Vec<u32> = (0..d)
                .map(|j| ((code / (p as u64).pow(j as u32)) % p as u64) as u32)
                .collect();
            divisor.push(1);
            if poly_mod(full.to_vec(), &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn find_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 2 {
        // t^2 - c for the smallest quadratic non-residue c
        let residues: Vec<u32> = (1..p).map(|a| a * a % p).collect();
        let c = (2..p)
            .find(|c| !residues.contains(c))
            .expect("odd prime has a non-residue");
        return vec![p - c, 0, 1];
    }
    for code in 0..(p as u64).pow(k) {
        let mut full: Vec<u32> = (0..k)
            .map(|j| ((code / (p as u64).pow(j)) % p as u64) as u32)
            .collect();
        full.push(1);
        if is_irreducible(&full, p) {
            return full;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(order: u64) -> Result<Self> {
        let (p, degree) = prime_power(order)
            .ok_or_else(|| Error::Field(format!("{order} is not a prime power")))?;
        if order > u64::from(MAX_ORDER) {
            return Err(Error::Field(format!(
                "field of order {order} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let order = order as u32;
        let modulus_full = if degree == 1 {
            vec![0, 1]
        } else {
            find_modulus(p, degree)
        };
        let k = degree as usize;

        let decode = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k);
            let mut x = x;
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let n = order as usize;
        let digits: Vec<Vec<u32>> = (0..order).map(decode).collect();
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * n + b] = encode(&s);
                let mut prod = vec![0u32; 2 * k - 1];
                for (i, x) in digits[a].iter().enumerate() {
                    for (j, y) in digits[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut reduced = if degree == 1 {
                    prod
                } else {
                    poly_mod(prod, &modulus_full, p)
                };
                reduced.resize(k, 0);
                mul[a * n + b] = encode(&reduced);
            }
        }
        let neg: Vec<Elem> = (0..n)
            .map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as Elem)
            .collect();
        let mut inv = vec![0; n];
        for a in 1..n {
            inv[a] = (1..n)
                .find(|&b| mul[a * n + b] == 1)
                .expect("field element invertible") as Elem;
        }
        Ok(FiniteField {
            p,
            degree,
            order,
            modulus: modulus_full[..k].to_vec(),
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[(a * self.order + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[(a * self.order + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        debug_assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(i64::from(self.p)) as Elem
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    fn check_axioms(f: &FiniteField) {
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.mul(a, 1), a);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements().step_by(3) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        // multiplicative group is cyclic of order q - 1: a^(q-1) = 1
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, u64::from(f.order() - 1)), 1);
        }
    }

    #[test]
    fn field_axioms() {
        for q in [3, 5, 9, 25, 27] {
            check_axioms(&FiniteField::new(q).unwrap());
        }
    }

    #[test]
    fn quadratic_extension_uses_non_residue() {
        let f9 = FiniteField::new(9).unwrap();
        // t^2 = -1 over F_3
        assert_eq!(f9.modulus(), &[1, 0]);
        let f25 = FiniteField::new(25).unwrap();
        // 2 is the smallest non-residue mod 5
        assert_eq!(f25.modulus(), &[3, 0]);
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = FiniteField::new(81).unwrap();
        let fixed: Vec<Elem> = f.elements().filter(|&a| f.pow(a, 3) == a).collect();
        assert_eq!(fixed, vec![0, 1, 2]);
        let fixed9 = f.elements().filter(|&a| f.pow(a, 9) == a).count();
        assert_eq!(fixed9, 9);
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(2048).is_err());
    }
}
