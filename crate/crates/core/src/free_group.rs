//! Free group words, and the free normal subgroup `F = <p, q>` of PSL(2,Z).
//!
//! `F` is the kernel of abelianization onto `C2 x C3`, freely generated by
//! `p = ab^2ab` and `q = bab^2a`. [`rewrite_kernel`] rewrites a normal-form
//! word lying in `F` as a word in `p, q` by Reidemeister-Schreier rewriting
//! along the transversal `{1, b, b^2, a, ab, ab^2}`.

use std::fmt::Write as _;

use crate::ab_word::{abelianize, eval_ab, AbLetter, AbWord, C2xC3};
use crate::error::{Error, Result};
use crate::matrix::ProjMat2;

/// Generator index of `p` in `{p, q}` words.
pub const P: usize = 0;
/// Generator index of `q` in `{p, q}` words.
pub const Q: usize = 1;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Self { gen, inv }
    }

    pub fn pos(gen: usize) -> Self {
        Self { gen, inv: false }
    }

    pub fn neg(gen: usize) -> Self {
        Self { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Self { gen: self.gen, inv: !self.inv }
    }
}

/// Freely reduced word over an indexed alphabet.
///
/// Used for words in `{p, q}` (indices [`P`], [`Q`]) as well as for abstract
/// relators over generators `x1, ..., xn` (index `i` is `x(i+1)`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn generator(gen: usize) -> Self {
        Self { letters: vec![Letter::pos(gen)] }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Self::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Appends a letter, cancelling against the last one if inverse.
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Removes matching inverse letters from both ends (a conjugate).
    pub fn cyclically_reduced(&self) -> FreeWord {
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo] == self.letters[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        FreeWord { letters: self.letters[lo..hi].to_vec() }
    }

    /// Substitutes `values[i]` for generator `i`.
    pub fn substitute(&self, values: &[FreeWord]) -> Result<FreeWord> {
        let mut out = FreeWord::empty();
        for l in &self.letters {
            let v = values.get(l.gen).ok_or(Error::IndexOutOfRange { index: l.gen + 1, count: values.len() })?;
            let piece = if l.inv { v.inverse() } else { v.clone() };
            out = out.concat(&piece);
        }
        Ok(out)
    }

    /// Renders with run-length exponents, e.g. `q p q^-2 p^-1`.
    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let exp = (j - i) as i64 * if l.inv { -1 } else { 1 };
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&name(l.gen));
            if exp != 1 {
                let _ = write!(out, "^{exp}");
            }
            i = j;
        }
        out
    }

    pub fn pq_string(&self) -> String {
        self.render(|g| match g {
            P => "p".to_string(),
            Q => "q".to_string(),
            other => format!("?{other}"),
        })
    }

    /// Renders as an abstract relator over `x1, x2, ...`.
    pub fn x_string(&self) -> String {
        self.render(|g| format!("x{}", g + 1))
    }

    /// Parses a `{p, q}` word such as `q p q^-2 p^-1 q^-1` or `qpq^{-2}`.
    /// `1` or an empty string is the empty word.
    pub fn parse_pq(s: &str) -> Result<FreeWord> {
        parse_word(s, |name| match name {
            "p" => Some(P),
            "q" => Some(Q),
            _ => None,
        })
    }

    /// Parses a relator over `x1, x2, ...` (also accepts `v1, v2, ...`).
    pub fn parse_x(s: &str) -> Result<FreeWord> {
        parse_word(s, |name| {
            let digits = name.strip_prefix('x').or_else(|| name.strip_prefix('v'))?;
            let i: usize = digits.parse().ok()?;
            i.checked_sub(1)
        })
    }
}

fn parse_word(s: &str, lookup: impl Fn(&str) -> Option<usize>) -> Result<FreeWord> {
    let trimmed = s.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(FreeWord::empty());
    }
    let chars: Vec<char> = trimmed.chars().collect();
    let mut w = FreeWord::empty();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '.' || c == '\u{b7}' {
            i += 1;
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(Error::Parse(format!("unexpected character {c:?} in word {s:?}")));
        }
        // a name is one letter plus an optional subscript, written `x12` or `x_{12}`
        let mut name = String::from(c);
        i += 1;
        if chars.get(i) == Some(&'_') {
            i += 1;
            let braced = chars.get(i) == Some(&'{');
            if braced {
                i += 1;
            }
            while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                name.push(chars[i]);
                i += 1;
            }
            if braced {
                if chars.get(i) != Some(&'}') {
                    return Err(Error::Parse(format!("unclosed subscript in {s:?}")));
                }
                i += 1;
            }
        } else if lookup(&name).is_none() {
            while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                name.push(chars[i]);
                i += 1;
            }
        }
        let gen = lookup(&name).ok_or_else(|| Error::Parse(format!("unknown generator {name:?} in {s:?}")))?;
        let (exp, used) = crate::ab_word::parse_exponent(&chars[i..])
            .ok_or_else(|| Error::Parse(format!("bad exponent in word {s:?}")))?;
        i += used;
        let l = Letter::new(gen, exp < 0);
        for _ in 0..exp.unsigned_abs() {
            w.push(l);
        }
    }
    Ok(w)
}

/// Matrix of a `{p, q}` word.
pub fn pq_to_matrix(w: &FreeWord) -> ProjMat2 {
    let p = ProjMat2::gen_p();
    let q = ProjMat2::gen_q();
    let (pi, qi) = (p.inv(), q.inv());
    w.letters.iter().fold(ProjMat2::identity(), |acc, l| {
        let m = match (l.gen, l.inv) {
            (P, false) => &p,
            (P, true) => &pi,
            (Q, false) => &q,
            (Q, true) => &qi,
            (g, _) => panic!("generator {g} is not p or q"),
        };
        acc.mul(m)
    })
}

/// Coset representatives of `F`, indexed by [`coset_index`]:
/// `1, b, b^2, a, ab, ab^2`.
pub const TRANSVERSAL: [&str; 6] = ["", "b", "b2", "a", "ab", "ab2"];

/// Position in [`TRANSVERSAL`] of the coset with the given image.
pub fn coset_index(image: C2xC3) -> usize {
    3 * image.c2 as usize + image.c3 as usize
}

/// Schreier generators `u * l * rep(u l)^-1` for `u` in the transversal and
/// `l` in `{a, b}`, indexed `[coset][0 for a, 1 for b]`.
pub const GAMMA: [[Option<Letter>; 2]; 6] = [
    // 1
    [None, None],
    // b: b a (ab)^-1 = q
    [Some(Letter { gen: Q, inv: false }), None],
    // b^2: b^2 a (ab^2)^-1 = p^-1
    [Some(Letter { gen: P, inv: true }), None],
    // a
    [None, None],
    // ab: ab a b^-1 = q^-1
    [Some(Letter { gen: Q, inv: true }), None],
    // ab^2: ab^2 a b^-2 = p
    [Some(Letter { gen: P, inv: false }), None],
];

/// Checks each entry of [`GAMMA`] against the matrix identity
/// `u * l * rep(u l)^-1 = gamma(u, l)`. Returns `(coset, column, holds)`.
pub fn gamma_self_check() -> Vec<(usize, usize, bool)> {
    let gens = [(ProjMat2::gen_a(), C2xC3::new(1, 0)), (ProjMat2::gen_b(), C2xC3::new(0, 1))];
    let mut out = Vec::new();
    for (u, rep) in TRANSVERSAL.iter().enumerate() {
        let u_word: AbWord = rep.parse().expect("transversal word");
        let u_image = abelianize(&u_word);
        for (column, (gen_m, step)) in gens.iter().enumerate() {
            let target: AbWord = TRANSVERSAL[coset_index(u_image + *step)].parse().expect("transversal word");
            let expected = eval_ab(&u_word).mul(gen_m).mul(&eval_ab(&target).inv());
            let got = pq_to_matrix(&FreeWord::from_letters(GAMMA[u][column]));
            out.push((u, column, coset_index(u_image) == u && got == expected));
        }
    }
    out
}

/// Rewrites a normal-form word lying in `F` as a reduced `{p, q}` word.
pub fn rewrite_kernel(w: &AbWord) -> Result<FreeWord> {
    let image = abelianize(w);
    if !image.is_zero() {
        return Err(Error::NotInKernel { word: w.to_string(), image: image.to_string() });
    }
    let mut coset = C2xC3::zero();
    let mut out = FreeWord::empty();
    for l in w.letters() {
        let (column, step) = match l {
            AbLetter::A | AbLetter::AInv => (0, C2xC3::new(1, 0)),
            AbLetter::B => (1, C2xC3::new(0, 1)),
            AbLetter::BInv => unreachable!("normal forms spell b^-1 as b b"),
        };
        if let Some(g) = GAMMA[coset_index(coset)][column] {
            out.push(g);
        }
        coset = coset + step;
    }
    debug_assert!(coset.is_zero());
    Ok(out)
}
