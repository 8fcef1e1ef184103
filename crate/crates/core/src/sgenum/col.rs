//! GF(3) column vectors packed as two bitmasks (`plus` = entries equal to 1,
//! `minus` = entries equal to -1), one bit per row.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub(crate) struct Col {
    pub plus: u32,
    pub minus: u32,
}

impl Col {
    pub fn from_residues(v: impl IntoIterator<Item = u8>) -> Col {
        let mut c = Col::default();
        for (i, x) in v.into_iter().enumerate() {
            match x % 3 {
                1 => c.plus |= 1 << i,
                2 => c.minus |= 1 << i,
                _ => {}
            }
        }
        c
    }

    pub fn support(self) -> u32 {
        self.plus | self.minus
    }

    pub fn get(self, i: usize) -> u8 {
        if self.plus >> i & 1 == 1 {
            1
        } else if self.minus >> i & 1 == 1 {
            2
        } else {
            0
        }
    }

    pub fn neg(self) -> Col {
        Col {
            plus: self.minus,
            minus: self.plus,
        }
    }

    pub fn scale(self, by: u8) -> Col {
        match by % 3 {
            0 => Col::default(),
            1 => self,
            _ => self.neg(),
        }
    }

    #[inline]
    pub fn add(self, o: Col) -> Col {
        let (xa, xb, ya, yb) = (self.plus, self.minus, o.plus, o.minus);
        let xz = !(xa | xb);
        let yz = !(ya | yb);
        Col {
            plus: (xa & yz) | (xz & ya) | (xb & yb),
            minus: (xb & yz) | (xz & yb) | (xa & ya),
        }
    }

    #[inline]
    pub fn swap_rows(self, a: usize, b: usize) -> Col {
        fn swap_bits(x: u32, a: usize, b: usize) -> u32 {
            let d = (x >> a ^ x >> b) & 1;
            x ^ (d << a | d << b)
        }
        Col {
            plus: swap_bits(self.plus, a, b),
            minus: swap_bits(self.minus, a, b),
        }
    }

    /// Row operations of a pivot on entry `s` of `pivot`: row `s` is scaled by the
    /// pivot's inverse and `pivot[s]`'s column is cleared elsewhere.
    #[inline]
    pub fn pivoted(self, pivot: Col, s: usize) -> Col {
        let bit = 1u32 << s;
        if self.support() & bit == 0 {
            return self;
        }
        // lambda = self[s] * pivot[s] (every unit of GF(3) is its own inverse)
        let negative = ((self.minus ^ pivot.minus) & bit) != 0;
        let sub = if negative { pivot } else { pivot.neg() };
        let sum = self.add(sub);
        let (plus, minus) = if negative { (0, bit) } else { (bit, 0) };
        Col {
            plus: (sum.plus & !bit) | plus,
            minus: (sum.minus & !bit) | minus,
        }
    }
}
