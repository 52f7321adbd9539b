//! Exact arithmetic in PSL(2,Z).
//!
//! A [`ProjMat2`] is an integral 2x2 matrix of determinant one, stored in a
//! sign-normalized form so that `M` and `-M` share one representative and
//! equality is entrywise.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMat2 {
    e: [BigInt; 4],
}

/// Order of an element of PSL(2,Z). Only 1, 2, 3 and infinity occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl ProjMat2 {
    /// Builds the class of `[[e11, e12], [e21, e22]]`, rejecting anything whose
    /// determinant is not `+1`.
    pub fn new<T: Into<BigInt>>(e11: T, e12: T, e21: T, e22: T) -> Result<Self> {
        Self::from_entries([e11.into(), e12.into(), e21.into(), e22.into()])
    }

    pub fn from_entries(mut e: [BigInt; 4]) -> Result<Self> {
        let det = &e[0] * &e[3] - &e[1] * &e[2];
        if !det.is_one() {
            return Err(Error::NotUnimodular {
                entries: e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
                determinant: det.to_string(),
            });
        }
        let leading_negative = e.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        if leading_negative {
            for x in e.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        Ok(Self { e })
    }

    /// Small-integer convenience constructor for fixed matrices.
    ///
    /// # Panics
    /// Panics if the determinant is not one.
    pub fn from_i64(e11: i64, e12: i64, e21: i64, e22: i64) -> Self {
        Self::new(e11, e12, e21, e22).expect("fixed matrix must be unimodular")
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    /// The order-2 generator `a = [[0,-1],[1,0]]`.
    pub fn gen_a() -> Self {
        Self::from_i64(0, -1, 1, 0)
    }

    /// The order-3 generator `b = [[1,-1],[1,0]]`.
    pub fn gen_b() -> Self {
        Self::from_i64(1, -1, 1, 0)
    }

    /// `p = ab^2ab`, first free generator of the kernel of abelianization.
    pub fn gen_p() -> Self {
        Self::from_i64(2, -1, -1, 1)
    }

    /// `q = bab^2a`, second free generator of the kernel of abelianization.
    pub fn gen_q() -> Self {
        Self::from_i64(2, 1, 1, 1)
    }

    pub fn entries(&self) -> &[BigInt; 4] {
        &self.e
    }

    pub fn is_identity(&self) -> bool {
        self.e[0].is_one() && self.e[1].is_zero() && self.e[2].is_zero() && self.e[3].is_one()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &rhs.e;
        Self::renormalize([a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s])
    }

    pub fn inv(&self) -> Self {
        let [a, b, c, d] = &self.e;
        Self::renormalize([d.clone(), -b, -c, a.clone()])
    }

    /// `self^n` for any integer `n` (negative powers invert first).
    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        &self.e[0] + &self.e[3]
    }

    /// Order via the trace: `|tr| = 0` gives 2, `|tr| = 1` gives 3, and
    /// everything else is infinite unless the matrix is the identity. Each
    /// answer is confirmed by explicit powering.
    pub fn order(&self) -> Order {
        if self.is_identity() {
            return Order::Finite(1);
        }
        let t = self.trace().abs();
        let claimed = if t.is_zero() {
            Order::Finite(2)
        } else if t.is_one() {
            Order::Finite(3)
        } else {
            Order::Infinite
        };
        let square = self.mul(self);
        let cube = square.mul(self);
        let confirmed = match claimed {
            Order::Finite(2) => square.is_identity(),
            Order::Finite(3) => cube.is_identity() && !square.is_identity(),
            _ => !square.is_identity() && !cube.is_identity(),
        };
        assert!(confirmed, "trace criterion disagrees with powering for {self}");
        claimed
    }

    // Products and adjugates of determinant-one matrices have determinant one,
    // so only the sign needs fixing.
    fn renormalize(mut e: [BigInt; 4]) -> Self {
        if e.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in e.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        Self { e }
    }
}

impl Default for ProjMat2 {
    fn default() -> Self {
        Self::identity()
    }
}

impl fmt::Display for ProjMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl fmt::Debug for ProjMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Mul for &ProjMat2 {
    type Output = ProjMat2;
    fn mul(self, rhs: &ProjMat2) -> ProjMat2 {
        ProjMat2::mul(self, rhs)
    }
}

// JSON form: [[a,b],[c,d]]. Entries that fit in an i64 are numbers, larger
// ones are decimal strings.
impl Serialize for ProjMat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(2))?;
        rows.serialize_element(&[JsonInt(&self.e[0]), JsonInt(&self.e[1])])?;
        rows.serialize_element(&[JsonInt(&self.e[2]), JsonInt(&self.e[3])])?;
        rows.end()
    }
}

struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(self.0) {
            Ok(v) => serializer.serialize_i64(v),
            Err(_) => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonEntry {
    Int(i64),
    Text(String),
}

impl JsonEntry {
    fn into_bigint<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            JsonEntry::Int(v) => Ok(BigInt::from(v)),
            JsonEntry::Text(s) => s.trim().parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for ProjMat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[JsonEntry; 2]; 2]>::deserialize(deserializer)?;
        let e = [a.into_bigint()?, b.into_bigint()?, c.into_bigint()?, d.into_bigint()?];
        ProjMat2::from_entries(e).map_err(de::Error::custom)
    }
}
