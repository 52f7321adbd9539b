//! Normal forms in `PSL(2,Z) = C2 * C3 = <a, b | a^2, b^3>`.
//!
//! Every element has a unique reduced word alternating between the syllable
//! `a` and one of `b`, `b^2`. [`decompose`] finds that word for a matrix by
//! Euclidean reduction of its first column.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ProjMat2;

/// Generator letters before reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AbLetter {
    A,
    AInv,
    B,
    BInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Syllable {
    /// `a`
    A,
    /// `b`
    B1,
    /// `b^2`, also the spelling of `b^-1`
    B2,
}

impl Syllable {
    pub fn matrix(self) -> ProjMat2 {
        match self {
            Syllable::A => ProjMat2::gen_a(),
            Syllable::B1 => ProjMat2::gen_b(),
            Syllable::B2 => ProjMat2::gen_b().inv(),
        }
    }

    pub fn image(self) -> C2xC3 {
        match self {
            Syllable::A => C2xC3::new(1, 0),
            Syllable::B1 => C2xC3::new(0, 1),
            Syllable::B2 => C2xC3::new(0, 2),
        }
    }

    fn b_power(self) -> u8 {
        match self {
            Syllable::A => 0,
            Syllable::B1 => 1,
            Syllable::B2 => 2,
        }
    }
}

/// A reduced word in `C2 * C3`; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbWord {
    syllables: Vec<Syllable>,
}

impl AbWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    /// Expands the syllables back into generator letters (`b^2` becomes `b b`).
    pub fn letters(&self) -> Vec<AbLetter> {
        let mut out = Vec::with_capacity(self.syllables.len() * 2);
        for s in &self.syllables {
            match s {
                Syllable::A => out.push(AbLetter::A),
                Syllable::B1 => out.push(AbLetter::B),
                Syllable::B2 => out.extend([AbLetter::B, AbLetter::B]),
            }
        }
        out
    }

    pub fn concat(&self, other: &AbWord) -> AbWord {
        let mut acc = Reducer::default();
        for &s in self.syllables.iter().chain(&other.syllables) {
            acc.push(s);
        }
        acc.finish()
    }

    pub fn inverse(&self) -> AbWord {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|s| match s {
                Syllable::A => Syllable::A,
                Syllable::B1 => Syllable::B2,
                Syllable::B2 => Syllable::B1,
            })
            .collect();
        AbWord { syllables }
    }
}

#[derive(Default)]
struct Reducer {
    out: Vec<Syllable>,
}

impl Reducer {
    fn push(&mut self, s: Syllable) {
        match (self.out.last().copied(), s) {
            (Some(Syllable::A), Syllable::A) => {
                self.out.pop();
            }
            (Some(top), _) if top != Syllable::A && s != Syllable::A => {
                self.out.pop();
                match (top.b_power() + s.b_power()) % 3 {
                    1 => self.out.push(Syllable::B1),
                    2 => self.out.push(Syllable::B2),
                    _ => {}
                }
            }
            _ => self.out.push(s),
        }
    }

    fn finish(self) -> AbWord {
        AbWord { syllables: self.out }
    }
}

/// Reduces a product of generator letters to its normal form.
pub fn reduce_ab(letters: &[AbLetter]) -> AbWord {
    let mut acc = Reducer::default();
    for l in letters {
        match l {
            AbLetter::A | AbLetter::AInv => acc.push(Syllable::A),
            AbLetter::B => acc.push(Syllable::B1),
            AbLetter::BInv => acc.push(Syllable::B2),
        }
    }
    acc.finish()
}

pub fn eval_ab(w: &AbWord) -> ProjMat2 {
    let (a, b, bb) = (ProjMat2::gen_a(), ProjMat2::gen_b(), ProjMat2::gen_b().inv());
    w.syllables.iter().fold(ProjMat2::identity(), |acc, s| match s {
        Syllable::A => acc.mul(&a),
        Syllable::B1 => acc.mul(&b),
        Syllable::B2 => acc.mul(&bb),
    })
}

/// The unique normal-form word of `m`.
///
/// Works on the first column `(e11, e21)`: left multiplication by a power of
/// `T = ba = [[1,1],[0,1]]` replaces `e11` by its remainder modulo `e21`, and
/// left multiplication by `a` swaps the column entries. Once `e21 = 0` the
/// matrix is a power of `T`.
pub fn decompose(m: &ProjMat2) -> AbWord {
    let [p, q, r, s] = m.entries().clone();
    let (mut p, mut q, mut r, mut s) = (p, q, r, s);
    // Left factors applied so far, each recorded as its inverse word.
    let mut undo: Vec<Vec<AbLetter>> = Vec::new();
    while !r.is_zero() {
        let k = -p.div_floor(&r);
        if !k.is_zero() {
            p += &k * &r;
            q += &k * &s;
            undo.push(t_power_letters(&-k));
        }
        // a * [[p,q],[r,s]] = [[-r,-s],[p,q]]
        let (np, nq) = (-r, -s);
        r = std::mem::replace(&mut p, np);
        s = std::mem::replace(&mut q, nq);
        undo.push(vec![AbLetter::A]);
    }
    debug_assert!(p.is_one() || (-&p).is_one());
    let t = &q * &p;
    let mut letters: Vec<AbLetter> = undo.into_iter().flatten().collect();
    letters.extend(t_power_letters(&t));
    let w = reduce_ab(&letters);
    debug_assert_eq!(&eval_ab(&w), m);
    w
}

// T = ba, T^-1 = a b^-1.
fn t_power_letters(k: &BigInt) -> Vec<AbLetter> {
    let n = k.magnitude().to_usize().expect("normal form longer than addressable memory");
    let unit: [AbLetter; 2] =
        if k.sign() == num_bigint::Sign::Minus { [AbLetter::A, AbLetter::BInv] } else { [AbLetter::B, AbLetter::A] };
    unit.iter().copied().cycle().take(2 * n).collect()
}

pub fn abelianize(w: &AbWord) -> C2xC3 {
    w.syllables.iter().map(|s| s.image()).fold(C2xC3::zero(), |acc, x| acc + x)
}

/// Element of the abelianization `C2 x C3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct C2xC3 {
    pub c2: u8,
    pub c3: u8,
}

impl C2xC3 {
    pub fn new(c2: u8, c3: u8) -> Self {
        Self { c2: c2 % 2, c3: c3 % 3 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(self) -> bool {
        self == Self::zero()
    }

    pub fn all() -> impl Iterator<Item = C2xC3> {
        (0..2).flat_map(|c2| (0..3).map(move |c3| C2xC3::new(c2, c3)))
    }
}

impl Add for C2xC3 {
    type Output = C2xC3;
    fn add(self, rhs: C2xC3) -> C2xC3 {
        C2xC3::new(self.c2 + rhs.c2, self.c3 + rhs.c3)
    }
}

impl Neg for C2xC3 {
    type Output = C2xC3;
    fn neg(self) -> C2xC3 {
        C2xC3::new(self.c2, 3 - self.c3)
    }
}

impl Sub for C2xC3 {
    type Output = C2xC3;
    fn sub(self, rhs: C2xC3) -> C2xC3 {
        self + (-rhs)
    }
}

impl fmt::Display for C2xC3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c2, self.c3)
    }
}

/// Subgroup of `C2 x C3` generated by `images`.
pub fn quotient_subgroup<I: IntoIterator<Item = C2xC3>>(images: I) -> BTreeSet<C2xC3> {
    let gens: Vec<C2xC3> = images.into_iter().collect();
    let mut set = BTreeSet::from([C2xC3::zero()]);
    let mut frontier = vec![C2xC3::zero()];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = x + g;
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

impl fmt::Display for AbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.syllables {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(match s {
                Syllable::A => "a",
                Syllable::B1 => "b",
                Syllable::B2 => "b^2",
            })?;
        }
        Ok(())
    }
}

/// Parses juxtaposed letters `a`, `b` with optional exponents (`b2`, `b^2`,
/// `b^-1`, `a^{-1}`); whitespace, `*` and `.` are separators.
impl FromStr for AbWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            let (pos, neg) = match c {
                'a' => (AbLetter::A, AbLetter::AInv),
                'b' => (AbLetter::B, AbLetter::BInv),
                c if c.is_whitespace() || c == '*' || c == '.' || c == '\u{b7}' => continue,
                other => return Err(Error::Parse(format!("unexpected character {other:?} in word {s:?}"))),
            };
            let (exp, used) =
                parse_exponent(&chars[i..]).ok_or_else(|| Error::Parse(format!("bad exponent in word {s:?}")))?;
            i += used;
            let letter = if exp < 0 { neg } else { pos };
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(reduce_ab(&letters))
    }
}

/// Reads an optional exponent (`2`, `^2`, `^-1`, `^{-2}`) and returns it with
/// the number of characters consumed. No exponent means 1.
pub(crate) fn parse_exponent(rest: &[char]) -> Option<(i64, usize)> {
    let mut i = 0;
    let caret = rest.first() == Some(&'^');
    if caret {
        i += 1;
    }
    let braced = caret && rest.get(i) == Some(&'{');
    if braced {
        i += 1;
    }
    let start = i;
    if matches!(rest.get(i), Some('-') | Some('+')) && caret {
        i += 1;
    }
    while rest.get(i).is_some_and(|c| c.is_ascii_digit()) {
        i += 1;
    }
    let text: String = rest[start..i].iter().collect();
    if braced {
        if rest.get(i) != Some(&'}') {
            return None;
        }
        i += 1;
    }
    if text.is_empty() {
        return if caret { None } else { Some((1, 0)) };
    }
    let exp: i64 = text.parse().ok()?;
    if exp == 0 {
        return None;
    }
    Some((exp, i))
}
