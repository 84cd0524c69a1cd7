use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rat;

/// Element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rat,
    pub im: Rat,
}

pub type GR = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self { re: Rat::ZERO, im: Rat::ZERO }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        Self { re: Rat::ZERO, im: Rat::ONE }
    }

    pub fn int(n: i64) -> Self {
        Self { re: Rat::int(n), im: Rat::ZERO }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self { re: Rat::new(n, d), im: Rat::ZERO }
    }

    /// `(a + b i)` with integer parts.
    pub fn cint(a: i64, b: i64) -> Self {
        Self { re: Rat::int(a), im: Rat::int(b) }
    }

    pub fn real(r: Rat) -> Self {
        Self { re: r, im: Rat::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sq(&self) -> Rat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq().recip();
        Self { re: &self.re * &n, im: -(&self.im * &n) }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplication by `i^k`.
    pub fn times_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Self { re: -&self.im, im: self.re.clone() },
            2 => -self,
            _ => Self { re: self.im.clone(), im: -&self.re },
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(-1)^s · self` for any integer `s`.
    pub fn signed(self, s: i64) -> Self {
        if s.rem_euclid(2) == 1 {
            -self
        } else {
            self
        }
    }
}

impl<'a> Add<&'a GR> for &'a GR {
    type Output = GR;
    fn add(self, o: &GR) -> GR {
        GR { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GR> for &'a GR {
    type Output = GR;
    fn sub(self, o: &GR) -> GR {
        GR { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GR> for &'a GR {
    type Output = GR;
    fn mul(self, o: &GR) -> GR {
        if self.im.is_zero() && o.im.is_zero() {
            return GR::real(&self.re * &o.re);
        }
        GR {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl<'a> Div<&'a GR> for &'a GR {
    type Output = GR;
    fn div(self, o: &GR) -> GR {
        self * &o.inv()
    }
}

impl Neg for &GR {
    type Output = GR;
    fn neg(self) -> GR {
        GR { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GR {
    type Output = GR;
    fn neg(self) -> GR {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<GR> for GR {
            type Output = GR;
            fn $f(self, o: GR) -> GR {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a GR> for GR {
            type Output = GR;
            fn $f(self, o: &GR) -> GR {
                (&self).$f(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&GR> for GR {
    fn add_assign(&mut self, o: &GR) {
        self.re = &self.re + &o.re;
        self.im = &self.im + &o.im;
    }
}

impl SubAssign<&GR> for GR {
    fn sub_assign(&mut self, o: &GR) {
        self.re = &self.re - &o.re;
        self.im = &self.im - &o.im;
    }
}

impl From<i64> for GR {
    fn from(n: i64) -> Self {
        GR::int(n)
    }
}

impl fmt::Display for GR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_one() => write!(f, "I"),
            (true, false) if (-&self.im).is_one() => write!(f, "-I"),
            (true, false) => write!(f, "{}*I", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({}-{}*I)", self.re, -&self.im)
                } else {
                    write!(f, "({}+{}*I)", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct GrJson {
    re: String,
    im: String,
}

impl Serialize for GR {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GrJson { re: self.re.to_string(), im: self.im.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GR {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GrJson::deserialize(d)?;
        Ok(GR {
            re: j.re.parse().map_err(D::Error::custom)?,
            im: j.im.parse().map_err(D::Error::custom)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared() {
        assert_eq!(&GR::i() * &GR::i(), GR::int(-1));
        assert_eq!(GR::cint(3, 4).inv() * GR::cint(3, 4), GR::one());
    }

    #[test]
    fn json_round_trip() {
        let z = GR::new(Rat::new(-1, 2), Rat::new(7, 3));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"-1/2","im":"7/3"}"#);
        assert_eq!(serde_json::from_str::<GR>(&s).unwrap(), z);
    }
}
