use std::fmt;

const DT_BIT: u32 = 1 << 31;

/// Wedge monomial `dx_I` or `dx_I ∧ dt`. Generators are kept sorted with
/// `dt` last, so each monomial has a single normal form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FormMonomial(u32);

impl FormMonomial {
    pub const ONE: FormMonomial = FormMonomial(0);
    pub const DT: FormMonomial = FormMonomial(DT_BIT);

    /// `dx_i` for a one-based coordinate index.
    pub fn dx(i: usize) -> Self {
        assert!((1..=30).contains(&i), "coordinate index out of range");
        FormMonomial(1 << (i - 1))
    }

    pub fn from_parts(dx: &[usize], dt: bool) -> Option<Self> {
        let mut bits = 0u32;
        for i in dx {
            if !(1..=30).contains(i) {
                return None;
            }
            let b = 1 << (i - 1);
            if bits & b != 0 {
                return None;
            }
            bits |= b;
        }
        if dt {
            bits |= DT_BIT;
        }
        Some(FormMonomial(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn has_dt(self) -> bool {
        self.0 & DT_BIT != 0
    }

    pub fn without_dt(self) -> Self {
        FormMonomial(self.0 & !DT_BIT)
    }

    pub fn with_dt(self) -> Self {
        FormMonomial(self.0 | DT_BIT)
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// Number of `dx` generators.
    pub fn dx_count(self) -> u32 {
        (self.0 & !DT_BIT).count_ones()
    }

    /// One-based indices of the `dx` generators, ascending.
    pub fn dx_indices(self) -> Vec<usize> {
        (0..30).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Highest coordinate index used, zero if none.
    pub fn max_dx(self) -> usize {
        let x = self.0 & !DT_BIT;
        (32 - x.leading_zeros()) as usize
    }

    /// `self ∧ other` as `(sign is negative, product)`, or `None` when a
    /// generator repeats.
    pub fn wedge(self, other: Self) -> Option<(bool, Self)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            let above = if j == 31 { 0 } else { !((2u32 << j) - 1) };
            inversions += (self.0 & above).count_ones();
        }
        Some((inversions % 2 == 1, FormMonomial(self.0 | other.0)))
    }
}

impl fmt::Debug for FormMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FormMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self.dx_indices().iter().map(|i| format!("dx{i}")).collect();
        if self.has_dt() {
            parts.push("dt".into());
        }
        write!(f, "{}", parts.join("^"))
    }
}
