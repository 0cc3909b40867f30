//! Arithmetic in GF(2), GF(3) and GF(4).
//!
//! Elements are encoded as the integers `0..q`. Codes `0` and `1` are the
//! additive and multiplicative identities. For GF(4) the code `2` is a root
//! `w` of `x^2 + x + 1` and `3` is `w + 1 = w^2`, so the bit pattern of a code
//! is the coefficient vector `(c0, c1)` of `c0 + c1 w`.
//!
//! All operations go through precomputed tables so the three fields share
//! one code path.

use thiserror::Error;

/// Errors raised by field construction and element-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unsupported field order {0}; supported orders are 2, 3 and 4")]
    UnsupportedOrder(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("automorphism index {index} out of range (field has {count})")]
    AutomorphismIndex { index: u8, count: u8 },
    #[error("vector lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("the Hermitian form is only defined over GF(4), not GF({0})")]
    HermitianNeedsGf4(u8),
    #[error("element code {0} is not valid in GF({1})")]
    InvalidElement(u8, u8),
}

/// Bilinear (or sesquilinear) form used for orthogonality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    /// `sum x_i y_i`
    Euclidean,
    /// `sum x_i y_i^2`, GF(4) only.
    Hermitian,
}

/// A finite field of order 2, 3 or 4 with full operation tables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    q: u8,
    p: u8,
    add: [[u8; 4]; 4],
    mul: [[u8; 4]; 4],
    neg: [u8; 4],
    inv: [u8; 4],
    frob: [u8; 4],
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl Field {
    pub fn new(q: u32) -> Result<Field, FieldError> {
        let mut add = [[0u8; 4]; 4];
        let mut mul = [[0u8; 4]; 4];
        let (q8, p) = match q {
            2 | 3 => {
                let q8 = q as u8;
                for a in 0..q8 {
                    for b in 0..q8 {
                        add[a as usize][b as usize] = (a + b) % q8;
                        mul[a as usize][b as usize] = (a * b) % q8;
                    }
                }
                (q8, q8)
            }
            4 => {
                // Elements are polynomials c0 + c1 w modulo w^2 + w + 1.
                for a in 0..4u8 {
                    for b in 0..4u8 {
                        add[a as usize][b as usize] = a ^ b;
                        // carryless product, then reduce w^2 -> w + 1
                        let mut prod = 0u8;
                        for bit in 0..2 {
                            if b >> bit & 1 == 1 {
                                prod ^= a << bit;
                            }
                        }
                        if prod & 0b100 != 0 {
                            prod ^= 0b111;
                        }
                        mul[a as usize][b as usize] = prod;
                    }
                }
                (4, 2)
            }
            other => return Err(FieldError::UnsupportedOrder(other)),
        };
        let mut neg = [0u8; 4];
        let mut inv = [0u8; 4];
        for a in 0..q8 {
            for b in 0..q8 {
                if add[a as usize][b as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[a as usize][b as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        let mut frob = [0u8, 1, 2, 3];
        if q8 == 4 {
            for a in 0..4 {
                frob[a] = mul[a][a];
            }
        }
        Ok(Field { q: q8, p, add, mul, neg, inv, frob })
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u8 {
        self.p
    }

    /// Number of field automorphisms: 2 for GF(4), otherwise 1.
    #[inline]
    pub fn automorphism_count(&self) -> u8 {
        if self.q == 4 {
            2
        } else {
            1
        }
    }

    /// A generator of the multiplicative group.
    #[inline]
    pub fn primitive(&self) -> u8 {
        match self.q {
            2 => 1,
            _ => 2,
        }
    }

    pub fn elements(&self) -> std::ops::Range<u8> {
        0..self.q
    }

    pub fn nonzero(&self) -> std::ops::Range<u8> {
        1..self.q
    }

    pub fn check(&self, a: u8) -> Result<u8, FieldError> {
        if a < self.q {
            Ok(a)
        } else {
            Err(FieldError::InvalidElement(a, self.q))
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][self.neg[b as usize] as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8, FieldError> {
        if a == 0 {
            Err(FieldError::ZeroInverse)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    /// Inverse without the zero check; returns 0 for 0.
    #[inline]
    pub fn inv_unchecked(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn apply_automorphism(&self, a: u8, index: u8) -> Result<u8, FieldError> {
        if index >= self.automorphism_count() {
            return Err(FieldError::AutomorphismIndex { index, count: self.automorphism_count() });
        }
        Ok(self.auto(a, index))
    }

    /// Automorphism `index` applied to `a`; index 1 is Frobenius on GF(4).
    #[inline]
    pub fn auto(&self, a: u8, index: u8) -> u8 {
        if index & 1 == 1 {
            self.frob[a as usize]
        } else {
            a
        }
    }

    /// Composition of automorphism indices: `auto(auto(x, b), a) == auto(x, compose(a, b))`.
    #[inline]
    pub fn auto_compose(&self, a: u8, b: u8) -> u8 {
        if self.q == 4 {
            (a + b) & 1
        } else {
            0
        }
    }

    #[inline]
    pub fn auto_inverse(&self, a: u8) -> u8 {
        a
    }

    /// Conjugation used by the Hermitian form (`x -> x^2` on GF(4)).
    #[inline]
    pub fn conj(&self, a: u8) -> u8 {
        self.frob[a as usize]
    }

    pub fn inner_product(&self, x: &[u8], y: &[u8], form: Form) -> Result<u8, FieldError> {
        if x.len() != y.len() {
            return Err(FieldError::LengthMismatch(x.len(), y.len()));
        }
        if form == Form::Hermitian && self.q != 4 {
            return Err(FieldError::HermitianNeedsGf4(self.q));
        }
        Ok(self.inner_product_unchecked(x, y, form))
    }

    #[inline]
    pub fn inner_product_unchecked(&self, x: &[u8], y: &[u8], form: Form) -> u8 {
        let mut acc = 0u8;
        match form {
            Form::Euclidean => {
                for (&a, &b) in x.iter().zip(y) {
                    acc = self.add(acc, self.mul(a, b));
                }
            }
            Form::Hermitian => {
                for (&a, &b) in x.iter().zip(y) {
                    acc = self.add(acc, self.mul(a, self.conj(b)));
                }
            }
        }
        acc
    }

    /// Dot product `sum x_i y_i` without length checks.
    #[inline]
    pub fn dot(&self, x: &[u8], y: &[u8]) -> u8 {
        self.inner_product_unchecked(x, y, Form::Euclidean)
    }

    /// `count` copies of `a` summed (an integer multiple in the prime field).
    #[inline]
    pub fn times(&self, count: usize, a: u8) -> u8 {
        let c = (count % self.p as usize) as u8;
        match c {
            0 => 0,
            1 => a,
            _ => self.mul(c, a),
        }
    }

    /// `y += c * x` elementwise.
    pub fn axpy(&self, y: &mut [u8], c: u8, x: &[u8]) {
        if c == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = self.add(*yi, self.mul(c, xi));
        }
    }

    pub fn scale(&self, x: &mut [u8], c: u8) {
        for xi in x.iter_mut() {
            *xi = self.mul(c, *xi);
        }
    }

    /// Number of vectors in `F_q^dim`, or `None` on overflow.
    pub fn space_size(&self, dim: usize) -> Option<usize> {
        (self.q as usize).checked_pow(dim as u32)
    }

    /// Index of `v` in lexicographic order (`v[0]` most significant).
    #[inline]
    pub fn vec_index(&self, v: &[u8]) -> usize {
        v.iter().fold(0usize, |acc, &x| acc * self.q as usize + x as usize)
    }

    /// Inverse of [`Field::vec_index`].
    pub fn index_vec(&self, mut idx: usize, dim: usize) -> Vec<u8> {
        let mut v = vec![0u8; dim];
        for slot in v.iter_mut().rev() {
            *slot = (idx % self.q as usize) as u8;
            idx /= self.q as usize;
        }
        v
    }

    /// Scale `v` so its first nonzero entry is 1; returns the factor removed.
    pub fn normalize(&self, v: &mut [u8]) -> u8 {
        match v.iter().find(|&&x| x != 0) {
            Some(&lead) => {
                let s = self.inv_unchecked(lead);
                self.scale(v, s);
                lead
            }
            None => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<Field> {
        [2, 3, 4].iter().map(|&q| Field::new(q).unwrap()).collect()
    }

    #[test]
    fn rejects_other_orders() {
        for q in [0, 1, 5, 7, 8, 9] {
            let err = Field::new(q).unwrap_err();
            assert!(err.to_string().contains("2, 3 and 4"));
        }
    }

    #[test]
    fn small_tables() {
        let f2 = Field::new(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.inv(2).unwrap(), 2);
        let f4 = Field::new(4).unwrap();
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.mul(2, 3), 1);
        assert_eq!(f4.mul(3, 3), 2);
        assert_eq!(f4.add(2, 3), 1);
        assert_eq!(f4.inv(2).unwrap(), 3);
        assert_eq!(f4.inv(0), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn gf4_from_polynomial_quotient() {
        // Independent construction: pairs (c0, c1) with w^2 = w + 1.
        let f4 = Field::new(4).unwrap();
        let as_pair = |a: u8| ((a & 1) as u32, (a >> 1) as u32);
        for a in 0..4u8 {
            for b in 0..4u8 {
                let (a0, a1) = as_pair(a);
                let (b0, b1) = as_pair(b);
                // (a0 + a1 w)(b0 + b1 w) = a0b0 + (a0b1 + a1b0) w + a1b1 (w + 1)
                let c0 = (a0 * b0 + a1 * b1) % 2;
                let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2;
                assert_eq!(f4.mul(a, b) as u32, c0 + 2 * c1);
                assert_eq!(f4.add(a, b) as u32, (a0 + b0) % 2 + 2 * ((a1 + b1) % 2));
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields() {
            let els: Vec<u8> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn automorphisms() {
        let f4 = Field::new(4).unwrap();
        assert_eq!(f4.apply_automorphism(2, 1).unwrap(), 3);
        assert_eq!(f4.apply_automorphism(3, 1).unwrap(), 2);
        assert_eq!(f4.apply_automorphism(1, 1).unwrap(), 1);
        assert_eq!(f4.apply_automorphism(0, 1).unwrap(), 0);
        assert!(f4.apply_automorphism(1, 2).is_err());
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.apply_automorphism(2, 0).unwrap(), 2);
        assert!(f3.apply_automorphism(2, 1).is_err());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f4.auto(f4.add(a, b), 1), f4.add(f4.auto(a, 1), f4.auto(b, 1)));
                assert_eq!(f4.auto(f4.mul(a, b), 1), f4.mul(f4.auto(a, 1), f4.auto(b, 1)));
            }
        }
    }

    #[test]
    fn inner_products() {
        let f2 = Field::new(2).unwrap();
        assert_eq!(f2.inner_product(&[1, 1], &[1, 1], Form::Euclidean).unwrap(), 0);
        let f4 = Field::new(4).unwrap();
        assert_eq!(f4.inner_product(&[2], &[2], Form::Hermitian).unwrap(), 1);
        let f3 = Field::new(3).unwrap();
        assert_eq!(f3.inner_product(&[1, 1, 1], &[1, 2, 0], Form::Euclidean).unwrap(), 0);
        assert!(f3.inner_product(&[1], &[1], Form::Hermitian).is_err());
        assert!(f3.inner_product(&[1], &[1, 2], Form::Euclidean).is_err());
    }

    #[test]
    fn form_symmetries_gf4() {
        let f4 = Field::new(4).unwrap();
        for idx in 0..256usize {
            let x = f4.index_vec(idx / 16, 2);
            let y = f4.index_vec(idx % 16, 2);
            let e1 = f4.inner_product(&x, &y, Form::Euclidean).unwrap();
            let e2 = f4.inner_product(&y, &x, Form::Euclidean).unwrap();
            assert_eq!(e1, e2);
            let h1 = f4.inner_product(&x, &y, Form::Hermitian).unwrap();
            let h2 = f4.inner_product(&y, &x, Form::Hermitian).unwrap();
            assert_eq!(h1, f4.conj(h2));
        }
    }

    #[test]
    fn vec_index_roundtrip() {
        let f3 = Field::new(3).unwrap();
        for i in 0..81 {
            assert_eq!(f3.vec_index(&f3.index_vec(i, 4)), i);
        }
        assert_eq!(f3.index_vec(5, 2), vec![1, 2]);
    }
}
