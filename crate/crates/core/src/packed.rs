//! Bit-sliced vectors of length at most 64.
//!
//! A vector is stored as two bit planes: `lo` holds bit 0 of each element
//! code and `hi` holds bit 1. Over GF(2) only `lo` is used. Over GF(3) the
//! code 1 sets `lo` and the code 2 sets `hi`. Over GF(4) the planes are the
//! coefficients of `1` and `w`. The weight of any vector is
//! `popcount(lo | hi)`.

use crate::gf::Field;

pub const MAX_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Packed {
    pub lo: u64,
    pub hi: u64,
}

impl Packed {
    pub const ZERO: Packed = Packed { lo: 0, hi: 0 };

    pub fn from_slice(v: &[u8]) -> Packed {
        debug_assert!(v.len() <= MAX_LEN);
        let mut p = Packed::ZERO;
        for (i, &x) in v.iter().enumerate() {
            p.lo |= ((x & 1) as u64) << i;
            p.hi |= (((x >> 1) & 1) as u64) << i;
        }
        p
    }

    pub fn to_vec(self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.get(i)).collect()
    }

    #[inline]
    pub fn get(self, i: usize) -> u8 {
        ((self.lo >> i) & 1) as u8 | ((((self.hi >> i) & 1) as u8) << 1)
    }

    #[inline]
    pub fn support(self) -> u64 {
        self.lo | self.hi
    }

    #[inline]
    pub fn weight(self) -> u32 {
        self.support().count_ones()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.support() == 0
    }

    #[inline]
    pub fn add(self, other: Packed, field: &Field) -> Packed {
        match field.q() {
            3 => {
                let t = (self.lo | other.hi) ^ (self.hi | other.lo);
                Packed { lo: (self.hi | other.hi) ^ t, hi: (self.lo | other.lo) ^ t }
            }
            _ => Packed { lo: self.lo ^ other.lo, hi: self.hi ^ other.hi },
        }
    }

    #[inline]
    pub fn scale(self, c: u8, field: &Field) -> Packed {
        match (field.q(), c) {
            (_, 0) => Packed::ZERO,
            (_, 1) => self,
            (3, _) => Packed { lo: self.hi, hi: self.lo },
            (4, 2) => Packed { lo: self.hi, hi: self.lo ^ self.hi },
            (4, _) => Packed { lo: self.lo ^ self.hi, hi: self.lo },
            _ => unreachable!("invalid scalar"),
        }
    }

    /// Frobenius applied elementwise (identity outside GF(4)).
    #[inline]
    pub fn frobenius(self, field: &Field) -> Packed {
        if field.q() == 4 {
            Packed { lo: self.lo ^ self.hi, hi: self.hi }
        } else {
            self
        }
    }

    /// Keep only the coordinates selected by `mask`.
    #[inline]
    pub fn mask(self, mask: u64) -> Packed {
        Packed { lo: self.lo & mask, hi: self.hi & mask }
    }
}

/// All `q^k` linear combinations of `rows`, indexed by message in
/// lexicographic order (`m[0]` most significant).
pub fn span(rows: &[Packed], field: &Field) -> Vec<Packed> {
    let q = field.q() as usize;
    let mut words = vec![Packed::ZERO];
    // Build from the last row up so that the first row is the most
    // significant digit of the message index.
    for (step, row) in rows.iter().rev().enumerate() {
        let block = q.pow(step as u32);
        let mut next = Vec::with_capacity(block * q);
        for c in 0..q as u8 {
            let shift = row.scale(c, field);
            next.extend(words.iter().map(|w| w.add(shift, field)));
        }
        debug_assert_eq!(next.len(), block * q);
        words = next;
    }
    words
}
