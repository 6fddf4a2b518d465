use std::fmt;

use serde::{Deserialize, Serialize};

pub const NVARS: usize = 7;

/// The global variables, listed in monomial-order significance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    Z,
    W,
    Q,
    T,
    S,
    /// The series grading variable, written `T`.
    BigT,
    U,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Z, Var::W, Var::Q, Var::T, Var::S, Var::BigT, Var::U];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::W => "w",
            Var::Q => "q",
            Var::T => "t",
            Var::S => "s",
            Var::BigT => "T",
            Var::U => "u",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector with non-negative entries. The derived ordering is
/// lexicographic with `z` most significant, which is the global monomial order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[v.index()] = to_exp(e);
        m
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Monomial {
        let mut m = Monomial::ONE;
        for &(v, e) in pairs {
            m.0[v.index()] = to_exp(m.0[v.index()] as u32 + e);
        }
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()] as u32
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("exponent overflow");
        }
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..NVARS).all(|i| self.0[i] <= other.0[i])
    }

    /// `self / other`, if exact.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].min(other.0[i]);
        }
        Monomial(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].max(other.0[i]);
        }
        Monomial(out)
    }

    pub fn pow(&self, r: u32) -> Monomial {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = to_exp(self.0[i] as u32 * r);
        }
        Monomial(out)
    }

    pub fn with_exp(&self, v: Var, e: u32) -> Monomial {
        let mut m = *self;
        m.0[v.index()] = to_exp(e);
        m
    }

    pub fn to_laurent(&self) -> LaurentMonomial {
        let mut out = [0i32; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i] as i32;
        }
        LaurentMonomial(out)
    }
}

fn to_exp(e: u32) -> u16 {
    u16::try_from(e).expect("exponent overflow")
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e > 0 {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}:{}", v, e)?;
                first = false;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Exponent vector with integer (possibly negative) entries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct LaurentMonomial(pub [i32; NVARS]);

impl LaurentMonomial {
    pub const ONE: LaurentMonomial = LaurentMonomial([0; NVARS]);

    pub fn var(v: Var, e: i32) -> LaurentMonomial {
        let mut m = LaurentMonomial::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn mul(&self, other: &LaurentMonomial) -> LaurentMonomial {
        let mut out = [0; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i] + other.0[i];
        }
        LaurentMonomial(out)
    }

    pub fn inv(&self) -> LaurentMonomial {
        let mut out = [0; NVARS];
        for i in 0..NVARS {
            out[i] = -self.0[i];
        }
        LaurentMonomial(out)
    }

    pub fn pow(&self, r: i32) -> LaurentMonomial {
        let mut out = [0; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i] * r;
        }
        LaurentMonomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &LaurentMonomial) -> LaurentMonomial {
        let mut out = [0; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].min(other.0[i]);
        }
        LaurentMonomial(out)
    }

    /// Split into `(positive part, negative part)` so that `self = pos / neg`.
    pub fn split(&self) -> (Monomial, Monomial) {
        let mut pos = [0u16; NVARS];
        let mut neg = [0u16; NVARS];
        for i in 0..NVARS {
            let e = self.0[i];
            if e >= 0 {
                pos[i] = to_exp(e as u32);
            } else {
                neg[i] = to_exp((-e) as u32);
            }
        }
        (Monomial(pos), Monomial(neg))
    }

    pub fn to_monomial(&self) -> Option<Monomial> {
        let (pos, neg) = self.split();
        neg.is_one().then_some(pos)
    }
}
