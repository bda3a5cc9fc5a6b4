use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

/// A value in `{+, -, 0}`.
///
/// The derived ordering is `Plus < Minus < Zero`, which coincides with the
/// ASCII order of the characters `+`, `-`, `0` used in sign strings. Canonical
/// forms are lexicographic minima under this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Plus, Sign::Minus, Sign::Zero];

    pub fn from_i8(v: i8) -> Sign {
        match v.signum() {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => Sign::Zero,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }

    pub fn of<T: num_traits::Signed>(value: &T) -> Sign {
        if value.is_positive() {
            Sign::Plus
        } else if value.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn is_nonzero(self) -> bool {
        self != Sign::Zero
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '\u{2212}' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }

    /// Multiplies by `-1` when `flip` is set.
    pub fn flip_if(self, flip: bool) -> Sign {
        if flip {
            -self
        } else {
            self
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.to_i8() * rhs.to_i8())
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Renders a sign sequence as a string over `+`, `-`, `0`.
pub fn sign_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.to_char()).collect()
}
