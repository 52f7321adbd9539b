//! The free product `H * <x>` of H-equations.
//!
//! An [`EqWord`] is a raw word over `h1^±1, ..., hs^±1, x^±1`. Reducing it
//! multiplies consecutive coefficients out as matrices and cancels `x^e x^-e`
//! pairs around trivial coefficients, giving the normal form
//! `c0 x^e1 c1 x^e2 ... x^ed cd` as an [`HEquation`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ab_word::{abelianize, decompose, eval_ab, AbWord, C2xC3};
use crate::error::{Error, Result};
use crate::free_group::FreeWord;
use crate::matrix::ProjMat2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EqLetter {
    /// `h(index+1)` or its inverse.
    H {
        index: usize,
        inv: bool,
    },
    X {
        inv: bool,
    },
}

impl EqLetter {
    pub fn inverse(self) -> Self {
        match self {
            EqLetter::H { index, inv } => EqLetter::H { index, inv: !inv },
            EqLetter::X { inv } => EqLetter::X { inv: !inv },
        }
    }

    pub fn is_x(self) -> bool {
        matches!(self, EqLetter::X { .. })
    }
}

/// Unreduced word in `H * <x>`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EqWord {
    pub letters: Vec<EqLetter>,
}

impl EqWord {
    pub fn new(letters: Vec<EqLetter>) -> Self {
        Self { letters }
    }

    pub fn x() -> Self {
        Self::new(vec![EqLetter::X { inv: false }])
    }

    pub fn h(index: usize) -> Self {
        Self::new(vec![EqLetter::H { index, inv: false }])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &EqWord) -> EqWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::new(letters)
    }

    pub fn max_h_index(&self) -> Option<usize> {
        self.letters
            .iter()
            .filter_map(|l| match l {
                EqLetter::H { index, .. } => Some(*index),
                EqLetter::X { .. } => None,
            })
            .max()
    }
}

/// The subgroup `H = <h1, ..., hs>` and the element `g`, as matrices together
/// with their normal-form words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HContext {
    pub h_mats: Vec<ProjMat2>,
    #[serde(with = "ab_list")]
    pub h_words: Vec<AbWord>,
    pub g_mat: ProjMat2,
    #[serde(with = "ab_single")]
    pub g_word: AbWord,
}

impl HContext {
    pub fn new(h_mats: Vec<ProjMat2>, g_mat: ProjMat2) -> Self {
        let h_words = h_mats.iter().map(decompose).collect();
        let g_word = decompose(&g_mat);
        Self { h_mats, h_words, g_mat, g_word }
    }

    pub fn generator_count(&self) -> usize {
        self.h_mats.len()
    }

    pub fn h_images(&self) -> Vec<C2xC3> {
        self.h_words.iter().map(abelianize).collect()
    }

    pub fn g_image(&self) -> C2xC3 {
        abelianize(&self.g_word)
    }

    /// `eval_ab` of the stored words agrees with the stored matrices.
    pub fn is_consistent(&self) -> bool {
        self.h_mats.len() == self.h_words.len()
            && self.h_mats.iter().zip(&self.h_words).all(|(m, w)| &eval_ab(w) == m)
            && eval_ab(&self.g_word) == self.g_mat
    }

    fn h_matrix(&self, index: usize, inv: bool) -> ProjMat2 {
        let m = &self.h_mats[index];
        if inv {
            m.inv()
        } else {
            m.clone()
        }
    }

    fn letter_matrix(&self, l: EqLetter) -> ProjMat2 {
        match l {
            EqLetter::H { index, inv } => self.h_matrix(index, inv),
            EqLetter::X { inv: false } => self.g_mat.clone(),
            EqLetter::X { inv: true } => self.g_mat.inv(),
        }
    }

    /// Image in `C2 x C3` of `w(g)`, computed letterwise.
    pub fn abelian_image(&self, w: &EqWord) -> C2xC3 {
        let h = self.h_images();
        let g = self.g_image();
        w.letters.iter().fold(C2xC3::zero(), |acc, l| {
            let img = match l {
                EqLetter::H { index, .. } => h[*index],
                EqLetter::X { .. } => g,
            };
            let inv = matches!(l, EqLetter::H { inv: true, .. } | EqLetter::X { inv: true });
            if inv {
                acc - img
            } else {
                acc + img
            }
        })
    }
}

/// A coefficient of a reduced equation: its matrix and the `h` letters it
/// was multiplied from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Coefficient {
    pub matrix: ProjMat2,
    #[serde(with = "eq_single")]
    pub letters: EqWord,
}

impl Coefficient {
    fn identity() -> Self {
        Self { matrix: ProjMat2::identity(), letters: EqWord::default() }
    }
}

/// Reduced element `c0 x^e1 c1 ... x^ed cd` of `H * <x>`.
///
/// Equality compares coefficient matrices and exponents only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HEquation {
    pub coefficients: Vec<Coefficient>,
    pub exponents: Vec<i8>,
}

impl PartialEq for HEquation {
    fn eq(&self, other: &Self) -> bool {
        self.exponents == other.exponents
            && self.coefficients.len() == other.coefficients.len()
            && self.coefficients.iter().zip(&other.coefficients).all(|(a, b)| a.matrix == b.matrix)
    }
}

impl Eq for HEquation {}

impl HEquation {
    pub fn trivial() -> Self {
        Self { coefficients: vec![Coefficient::identity()], exponents: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.exponents.iter().map(|&e| e as i64).sum::<i64>() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty() && self.coefficients[0].matrix.is_identity()
    }

    /// Normal-form invariant: no trivial inner coefficient between opposite
    /// exponents, and one more coefficient than exponents.
    pub fn is_reduced(&self) -> bool {
        self.coefficients.len() == self.exponents.len() + 1
            && self.exponents.iter().all(|&e| e == 1 || e == -1)
            && (1..self.exponents.len())
                .all(|i| !self.coefficients[i].matrix.is_identity() || self.exponents[i - 1] == self.exponents[i])
    }

    /// The word read off coefficients' letters and the `x` exponents.
    pub fn to_eq_word(&self) -> EqWord {
        let mut letters = Vec::new();
        for (i, c) in self.coefficients.iter().enumerate() {
            letters.extend_from_slice(&c.letters.letters);
            if let Some(&e) = self.exponents.get(i) {
                letters.push(EqLetter::X { inv: e < 0 });
            }
        }
        EqWord::new(letters)
    }

    /// Tokens of the matrix rendering: non-identity coefficients and runs of
    /// `x` powers.
    pub fn matrix_tokens(&self) -> Vec<MatrixToken> {
        let mut tokens: Vec<MatrixToken> = Vec::new();
        for (i, c) in self.coefficients.iter().enumerate() {
            if !c.matrix.is_identity() {
                tokens.push(MatrixToken::Coefficient(c.matrix.clone()));
            }
            if let Some(&e) = self.exponents.get(i) {
                match tokens.last_mut() {
                    Some(MatrixToken::XPower(k)) if k.signum() == e as i64 => *k += e as i64,
                    _ => tokens.push(MatrixToken::XPower(e as i64)),
                }
            }
        }
        tokens
    }

    /// Rendering with matrix coefficients, `X` for the unknown.
    pub fn matrix_string(&self) -> String {
        let tokens = self.matrix_tokens();
        if tokens.is_empty() {
            return "I".to_string();
        }
        tokens.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixToken {
    Coefficient(ProjMat2),
    XPower(i64),
}

impl fmt::Display for MatrixToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixToken::Coefficient(m) => write!(f, "{m}"),
            MatrixToken::XPower(1) => f.write_str("X"),
            MatrixToken::XPower(k) => write!(f, "X^{k}"),
        }
    }
}

/// Letter form: coefficients by their (freely reduced) `h` letters, identity
/// coefficients omitted, equal adjacent letters collected into powers.
impl fmt::Display for HEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut letters = Vec::new();
        for (i, c) in self.coefficients.iter().enumerate() {
            if !c.matrix.is_identity() {
                letters.extend(freely_reduce(&c.letters.letters));
            }
            if let Some(&e) = self.exponents.get(i) {
                letters.push(EqLetter::X { inv: e < 0 });
            }
        }
        f.write_str(&render_letters(&letters))
    }
}

fn freely_reduce(letters: &[EqLetter]) -> Vec<EqLetter> {
    let mut out: Vec<EqLetter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn render_letters(letters: &[EqLetter]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let (name, inv) = match letters[i] {
            EqLetter::H { index, inv } => (format!("h{}", index + 1), inv),
            EqLetter::X { inv } => ("x".to_string(), inv),
        };
        let exp = (j - i) as i64 * if inv { -1 } else { 1 };
        parts.push(if exp == 1 { name } else { format!("{name}^{exp}") });
        i = j;
    }
    parts.join(" ")
}

impl fmt::Display for EqWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.letters))
    }
}

/// Parses `h1 x h2^-1 x^-1`, `h_1^{-2} x^3`, `h2xh2^-1`, `1` (empty).
impl FromStr for EqWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        let mut letters = Vec::new();
        if chars == ['1'] {
            return Ok(EqWord::default());
        }
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            let base = match c {
                c if c.is_whitespace() || c == '*' || c == '.' || c == '\u{b7}' => continue,
                'x' | 'X' => EqLetter::X { inv: false },
                'h' | 'H' => {
                    if chars.get(i) == Some(&'_') {
                        i += 1;
                    }
                    let braced = chars.get(i) == Some(&'{');
                    if braced {
                        i += 1;
                    }
                    let start = i;
                    while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                        i += 1;
                    }
                    let digits: String = chars[start..i].iter().collect();
                    if braced {
                        if chars.get(i) != Some(&'}') {
                            return Err(Error::Parse(format!("unclosed subscript in {s:?}")));
                        }
                        i += 1;
                    }
                    let n: usize =
                        digits.parse().map_err(|_| Error::Parse(format!("missing index after h in {s:?}")))?;
                    let index =
                        n.checked_sub(1).ok_or_else(|| Error::Parse(format!("h indices start at 1 in {s:?}")))?;
                    EqLetter::H { index, inv: false }
                }
                other => return Err(Error::Parse(format!("unexpected character {other:?} in equation {s:?}"))),
            };
            // only `^` exponents here, bare digits would be ambiguous with indices
            let (exp, used) = if chars.get(i) == Some(&'^') {
                crate::ab_word::parse_exponent(&chars[i..])
                    .ok_or_else(|| Error::Parse(format!("bad exponent in {s:?}")))?
            } else {
                (1, 0)
            };
            i += used;
            let l = if exp < 0 { base.inverse() } else { base };
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(EqWord::new(letters))
    }
}

/// Normal form of `w` in `H * <x>`.
pub fn reduce_equation(w: &EqWord, ctx: &HContext) -> HEquation {
    let mut coefficients = vec![Coefficient::identity()];
    let mut exponents: Vec<i8> = Vec::new();
    for &l in &w.letters {
        match l {
            EqLetter::H { index, inv } => {
                let last = coefficients.last_mut().expect("at least one coefficient");
                last.matrix = last.matrix.mul(&ctx.h_matrix(index, inv));
                last.letters.letters.push(l);
            }
            EqLetter::X { inv } => {
                let e: i8 = if inv { -1 } else { 1 };
                let cancels = exponents.last() == Some(&-e)
                    && coefficients.last().expect("at least one coefficient").matrix.is_identity();
                if cancels {
                    coefficients.pop();
                    exponents.pop();
                } else {
                    exponents.push(e);
                    coefficients.push(Coefficient::identity());
                }
            }
        }
    }
    HEquation { coefficients, exponents }
}

/// `w(g)` for a raw word.
pub fn evaluate_word(w: &EqWord, ctx: &HContext) -> ProjMat2 {
    w.letters.iter().fold(ProjMat2::identity(), |acc, &l| acc.mul(&ctx.letter_matrix(l)))
}

/// `e(g)` for a reduced equation, from its coefficient matrices.
pub fn evaluate(e: &HEquation, g: &ProjMat2) -> ProjMat2 {
    let g_inv = g.inv();
    let mut acc = ProjMat2::identity();
    for (i, c) in e.coefficients.iter().enumerate() {
        acc = acc.mul(&c.matrix);
        if let Some(&x) = e.exponents.get(i) {
            acc = acc.mul(if x > 0 { g } else { &g_inv });
        }
    }
    acc
}

/// Replaces `x(i+1)` in `relator` by `ws[i]`.
pub fn substitute(relator: &FreeWord, ws: &[EqWord]) -> Result<EqWord> {
    let mut letters = Vec::new();
    for l in relator.letters() {
        let w = ws.get(l.gen).ok_or(Error::IndexOutOfRange { index: l.gen + 1, count: ws.len() })?;
        if l.inv {
            letters.extend(w.letters.iter().rev().map(|x| x.inverse()));
        } else {
            letters.extend_from_slice(&w.letters);
        }
    }
    Ok(EqWord::new(letters))
}

pub(crate) fn serialize_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) mod eq_single {
    use super::*;

    pub fn serialize<S: Serializer>(w: &EqWord, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_display(w, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<EqWord, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

mod ab_single {
    use super::*;

    pub fn serialize<S: Serializer>(w: &AbWord, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_display(w, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<AbWord, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

mod ab_list {
    use super::*;

    pub fn serialize<S: Serializer>(ws: &[AbWord], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(ws.iter().map(|w| w.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<AbWord>, D::Error> {
        Vec::<String>::deserialize(d)?.into_iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::{pq_to_matrix, FreeWord};
    use proptest::prelude::*;

    fn transcendental_case() -> HContext {
        HContext::new(
            vec![ProjMat2::from_i64(2, -1, -1, 1), ProjMat2::from_i64(2, -5, 1, -2)],
            ProjMat2::from_i64(5, 3, 3, 2),
        )
    }

    fn algebraic_case() -> HContext {
        HContext::new(
            vec![ProjMat2::from_i64(2, -1, -1, 1), ProjMat2::from_i64(2, -5, 1, -2)],
            ProjMat2::from_i64(1, 0, -2, 1),
        )
    }

    fn eq(s: &str) -> EqWord {
        s.parse().unwrap()
    }

    #[test]
    fn context_words() {
        let ctx = transcendental_case();
        assert!(ctx.is_consistent());
        assert_eq!(ctx.g_word.to_string(), "b a b^2 a b a b^2 a");
        assert_eq!(ctx.h_images(), vec![C2xC3::new(0, 0), C2xC3::new(1, 0)]);
    }

    #[test]
    fn reduce_examples() {
        let ctx = transcendental_case();
        assert!(reduce_equation(&eq("h2 h2"), &ctx).is_trivial());
        assert!(reduce_equation(&eq("x x^-1"), &ctx).is_trivial());
        let e = reduce_equation(&eq("h2 x h2^-1"), &ctx);
        assert_eq!(e.exponents, vec![1]);
        assert_eq!(e.coefficients[0].matrix, ctx.h_mats[1]);
        assert_eq!(e.coefficients[1].matrix, ctx.h_mats[1].inv());
        assert!(!e.is_trivial());
        // torsion lets x h2 h2 x^-1 collapse
        assert!(reduce_equation(&eq("h1 x h2^2 x^-1 h1^-1"), &ctx).is_trivial());
    }

    #[test]
    fn degree_and_balance() {
        let ctx = transcendental_case();
        let e = reduce_equation(&eq("h1 x^2 h2 x^-2"), &ctx);
        assert_eq!(e.degree(), 4);
        assert!(e.is_balanced());
        let c = reduce_equation(&eq("h1"), &ctx);
        assert_eq!(c.degree(), 0);
        assert!(c.is_balanced());
        assert!(!c.is_trivial());
        let t = HEquation::trivial();
        assert_eq!(t.degree(), 0);
        assert!(t.is_trivial());
        assert!(!reduce_equation(&eq("x^3"), &ctx).is_balanced());
    }

    #[test]
    fn evaluate_examples() {
        let ctx = transcendental_case();
        assert_eq!(evaluate_word(&eq("x"), &ctx), ProjMat2::from_i64(5, 3, 3, 2));
        let v5 = FreeWord::parse_pq("q p q^-2 p^-1 q^-1").unwrap();
        assert_eq!(evaluate_word(&eq("h2 x h2^-1"), &ctx), pq_to_matrix(&v5));
        assert!(evaluate(&HEquation::trivial(), &ctx.g_mat).is_identity());
    }

    #[test]
    fn substitute_examples() {
        let ctx = algebraic_case();
        let ws: Vec<EqWord> = ["h1"].map(eq).to_vec();
        assert_eq!(substitute(&FreeWord::parse_x("x1").unwrap(), &ws).unwrap(), eq("h1"));
        assert!(substitute(&FreeWord::empty(), &ws).unwrap().is_empty());
        assert!(matches!(
            substitute(&FreeWord::parse_x("x2").unwrap(), &ws),
            Err(Error::IndexOutOfRange { index: 2, count: 1 })
        ));

        // relator v2 v1^-1 v2^-1 v1 v12^-1 with w1 = h1, w2 = x h1 x^-1, w12 = x^3
        let mut ws = vec![EqWord::default(); 12];
        ws[0] = eq("h1");
        ws[1] = eq("x h1 x^-1");
        ws[11] = eq("x^3");
        let r = FreeWord::parse_x("x2 x1^-1 x2^-1 x1 x12^-1").unwrap();
        let got = reduce_equation(&substitute(&r, &ws).unwrap(), &ctx);
        let expected = reduce_equation(&eq("x h1 x^-1 h1^-1 x h1^-1 x^-1 h1 x^-3"), &ctx);
        assert_eq!(got, expected);
        assert!(evaluate(&got, &ctx.g_mat).is_identity());
        // a cyclic conjugate of the reference equation h1 x^-1 h1^-1 x h1^-1 x^-1 h1 x^-2
        let reference = reduce_equation(&eq("h1 x^-1 h1^-1 x h1^-1 x^-1 h1 x^-2"), &ctx);
        let conj = reduce_equation(&eq("x^-1").concat(&substitute(&r, &ws).unwrap()).concat(&eq("x")), &ctx);
        assert_eq!(conj, reference);
    }

    #[test]
    fn rendering() {
        let ctx = algebraic_case();
        let e = reduce_equation(&eq("h1^-2 x h1^-1 x^-1 h1 x^-1 h1^-1 x"), &ctx);
        assert_eq!(e.to_string(), "h1^-2 x h1^-1 x^-1 h1 x^-1 h1^-1 x");
        assert_eq!(e.matrix_string(), "[[2,3],[3,5]] X [[1,1],[1,2]] X^-1 [[2,-1],[-1,1]] X^-1 [[1,1],[1,2]] X");
        let e = reduce_equation(&eq("x h2 h2 x"), &ctx);
        assert_eq!(e.to_string(), "x^2");
        assert_eq!(e.matrix_string(), "X^2");
        assert_eq!(HEquation::trivial().matrix_string(), "I");
        assert_eq!(HEquation::trivial().to_string(), "1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(eq("h_1^{-2} x^3"), eq("h1^-2 x x x"));
        assert_eq!(eq("h2xh2^-1"), eq("h2 x h2^-1"));
        assert!(eq("1").is_empty());
        assert!("h0".parse::<EqWord>().is_err());
        assert!("y".parse::<EqWord>().is_err());
        assert_eq!(eq("h12").letters, vec![EqLetter::H { index: 11, inv: false }]);
        assert_eq!(eq("h_{12}").letters, vec![EqLetter::H { index: 11, inv: false }]);
    }

    fn arb_word(s: usize) -> impl Strategy<Value = EqWord> {
        proptest::collection::vec((0..=s, any::<bool>()), 0..16).prop_map(move |ls| {
            EqWord::new(
                ls.into_iter()
                    .map(|(i, inv)| if i == s { EqLetter::X { inv } } else { EqLetter::H { index: i, inv } })
                    .collect(),
            )
        })
    }

    fn arb_ctx() -> impl Strategy<Value = HContext> {
        let mat = proptest::collection::vec(
            prop_oneof![Just(ProjMat2::gen_a()), Just(ProjMat2::gen_b()), Just(ProjMat2::gen_b().inv())],
            0..8,
        )
        .prop_map(|ms| ms.iter().fold(ProjMat2::identity(), |acc, m| acc.mul(m)));
        (proptest::collection::vec(mat.clone(), 2..=2), mat).prop_map(|(h, g)| HContext::new(h, g))
    }

    proptest! {
        #[test]
        fn evaluation_is_homomorphism(ctx in arb_ctx(), u in arb_word(2), v in arb_word(2)) {
            prop_assert_eq!(evaluate_word(&u.concat(&v), &ctx), evaluate_word(&u, &ctx).mul(&evaluate_word(&v, &ctx)));
        }

        #[test]
        fn reduction_preserves_value(ctx in arb_ctx(), w in arb_word(2)) {
            let e = reduce_equation(&w, &ctx);
            prop_assert!(e.is_reduced());
            prop_assert_eq!(evaluate(&e, &ctx.g_mat), evaluate_word(&w, &ctx));
            for c in &e.coefficients {
                prop_assert_eq!(&evaluate_word(&c.letters, &ctx), &c.matrix);
            }
            let again = reduce_equation(&e.to_eq_word(), &ctx);
            prop_assert_eq!(&again, &e);
            if e.is_trivial() {
                prop_assert!(evaluate(&e, &ctx.g_mat).is_identity());
            }
        }

        #[test]
        fn inverse_reduces_to_trivial(ctx in arb_ctx(), w in arb_word(2)) {
            prop_assert!(reduce_equation(&w.concat(&w.inverse()), &ctx).is_trivial());
        }

        #[test]
        fn text_roundtrip(w in arb_word(2)) {
            prop_assert_eq!(w.to_string().parse::<EqWord>().unwrap(), w);
        }
    }
}
