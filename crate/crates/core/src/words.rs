//! Generators `a_α`, `â_{α,r}` and `x_i`, signed words, shifts, and the
//! partial action of words on trees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, TamariError};
use crate::trees::{Address, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        })
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            other => Err(serde::de::Error::custom(format!("sign must be 1 or -1, got {other}"))),
        }
    }
}

/// `â_{α,r}` or its inverse; `r = 1` is the plain generator `a_α`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HatLetter {
    pub addr: Address,
    pub r: usize,
    pub sign: Sign,
}

impl HatLetter {
    pub fn new(addr: Address, r: usize, sign: Sign) -> Self {
        assert!(r >= 1, "hat letters need r >= 1");
        HatLetter { addr, r, sign }
    }

    /// `a_α`
    pub fn plain(addr: Address) -> Self {
        HatLetter::new(addr, 1, Sign::Pos)
    }

    /// `â_{α,r}`
    pub fn hat(addr: Address, r: usize) -> Self {
        HatLetter::new(addr, r, Sign::Pos)
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn is_plain(&self) -> bool {
        self.r == 1
    }

    pub fn inverse(&self) -> Self {
        HatLetter { sign: self.sign.flip(), ..self.clone() }
    }

    /// `â_{α,r} = a_α a_{α0} … a_{α0^{r−1}}`; the inverse reverses the order.
    pub fn expand(&self) -> SignedWord {
        let letters = (0..self.r).map(|k| HatLetter::plain(self.addr.repeat_push(false, k)));
        match self.sign {
            Sign::Pos => SignedWord(letters.collect()),
            Sign::Neg => SignedWord(letters.rev().map(|l| l.inverse()).collect()),
        }
    }
}

impl fmt::Display for HatLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "a[{}]", self.addr)?;
        } else {
            write!(f, "a[{},{}]", self.addr, self.r)?;
        }
        if self.sign == Sign::Neg {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// Word over `Â ∪ Â⁻¹`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedWord(pub Vec<HatLetter>);

impl SignedWord {
    pub fn empty() -> Self {
        SignedWord(Vec::new())
    }

    pub fn letters(&self) -> &[HatLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: HatLetter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &SignedWord) -> Self {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        SignedWord(out)
    }

    /// Number of letters after expansion into plain generators.
    pub fn a_length(&self) -> usize {
        self.0.iter().map(|l| l.r).sum()
    }

    /// Number of positive and negative plain letters after expansion.
    pub fn sign_profile(&self) -> (usize, usize) {
        self.0.iter().fold((0, 0), |(p, q), l| match l.sign {
            Sign::Pos => (p + l.r, q),
            Sign::Neg => (p, q + l.r),
        })
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(HatLetter::is_positive)
    }

    /// Formal inverse: reversed order, flipped signs.
    pub fn inverse(&self) -> Self {
        SignedWord(self.0.iter().rev().map(HatLetter::inverse).collect())
    }

    pub fn expand(&self) -> Self {
        SignedWord(self.0.iter().flat_map(|l| l.expand().0).collect())
    }

    /// The endomorphism `a_β ↦ a_{αβ}`.
    pub fn shift(&self, alpha: &Address) -> Self {
        SignedWord(
            self.0
                .iter()
                .map(|l| HatLetter { addr: alpha.concat(&l.addr), ..l.clone() })
                .collect(),
        )
    }

    /// `w ↦ w̃`: expand, reverse the order and exchange 0 and 1 in every
    /// address. This anti-automorphism maps the relations onto themselves.
    pub fn mirror(&self) -> Self {
        SignedWord(
            self.expand()
                .0
                .iter()
                .rev()
                .map(|l| HatLetter { addr: l.addr.swapped(), ..l.clone() })
                .collect(),
        )
    }

    /// `|w|₁`: plain letters (either sign) whose address lies in `{1}*`.
    pub fn weight1(&self) -> usize {
        // only the first letter of an expansion can have an all-ones address
        self.0.iter().filter(|l| l.addr.is_all_ones()).count()
    }

    /// Positive prefix and negative suffix, when the word has the shape
    /// `P·N⁻¹` with `P`, `N` positive.
    pub fn split_fraction(&self) -> Option<(SignedWord, SignedWord)> {
        let cut = self.0.iter().position(|l| !l.is_positive()).unwrap_or(self.0.len());
        let (p, n) = self.0.split_at(cut);
        if n.iter().any(HatLetter::is_positive) {
            return None;
        }
        Some((SignedWord(p.to_vec()), SignedWord(n.to_vec()).inverse()))
    }
}

impl FromIterator<HatLetter> for SignedWord {
    fn from_iter<I: IntoIterator<Item = HatLetter>>(iter: I) -> Self {
        SignedWord(iter.into_iter().collect())
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for SignedWord {
    type Err = TamariError;

    /// Tokens `a[<bits>]`, `a[<bits>,<r>]` and `x<i>` (read as `a_{1^i}`),
    /// each optionally followed by `'` for the inverse. Whitespace between
    /// tokens is optional; `e` or `ε` alone is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if matches!(trimmed, "" | "e" | "ε") {
            return Ok(SignedWord::empty());
        }
        let mut out = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let (letter, tail) = parse_token(rest, s)?;
            out.push(letter);
            rest = tail.trim_start();
        }
        Ok(SignedWord(out))
    }
}

fn parse_token<'a>(input: &'a str, src: &str) -> Result<(HatLetter, &'a str)> {
    let err = |msg: &str| TamariError::Parse(format!("{msg} in word {src:?}"));
    let (letter, tail) = if let Some(body) = input.strip_prefix("a[") {
        let close = body.find(']').ok_or_else(|| err("missing ']'"))?;
        let inner = &body[..close];
        let (bits, r) = match inner.split_once(',') {
            Some((bits, r)) => {
                let r: usize = r.trim().parse().map_err(|_| err("invalid exponent"))?;
                if r == 0 {
                    return Err(err("hat exponent must be at least 1"));
                }
                (bits, r)
            }
            None => (inner, 1),
        };
        let addr: Address = bits.parse()?;
        (HatLetter::new(addr, r, Sign::Pos), &body[close + 1..])
    } else if let Some(body) = input.strip_prefix('x') {
        let digits = body.chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(err("expected index after 'x'"));
        }
        let i: usize = body[..digits].parse().map_err(|_| err("invalid index"))?;
        (HatLetter::plain(Address::ones(i)), &body[digits..])
    } else {
        return Err(err(&format!("unexpected token at {:?}", input.chars().take(8).collect::<String>())));
    };
    match tail.strip_prefix('\'') {
        Some(t) => Ok((letter.inverse(), t)),
        None => Ok((letter, tail)),
    }
}

/// Result of applying `â_{α,r}^{±1}` to `tree`, if defined.
pub fn act_letter(tree: &Tree, letter: &HatLetter) -> Option<Tree> {
    match letter.sign {
        Sign::Pos => tree.map_at(&letter.addr, |sub| hat_rotate(sub, letter.r).ok_or(undefined())).ok(),
        Sign::Neg => letter
            .expand()
            .0
            .iter()
            .try_fold(tree.clone(), |t, l| t.map_at(&l.addr, |sub| right_rotate(sub).ok_or(undefined())).ok()),
    }
}

fn undefined() -> TamariError {
    TamariError::UndefinedSubtree(String::new())
}

/// `T₀ ∧ ((…(T₁∧T₂)∧…)∧T_{r+1}) ↦ ((…((T₀∧T₁)∧T₂)∧…)∧T_{r+1})`
fn hat_rotate(sub: &Tree, r: usize) -> Option<Tree> {
    let (t0, mut x) = sub.children()?;
    let mut rights = Vec::with_capacity(r);
    for _ in 0..r {
        let (l, rt) = x.children()?;
        rights.push(rt);
        x = l;
    }
    let mut acc = Tree::node(t0.clone(), x.clone());
    for t in rights.into_iter().rev() {
        acc = Tree::node(acc, t.clone());
    }
    Some(acc)
}

/// `(T₀∧T₁)∧T₂ ↦ T₀∧(T₁∧T₂)`
fn right_rotate(sub: &Tree) -> Option<Tree> {
    let (l, t2) = sub.children()?;
    let (t0, t1) = l.children()?;
    Some(Tree::node(t0.clone(), Tree::node(t1.clone(), t2.clone())))
}

/// Letterwise left fold of the action. On failure reports how many letters
/// acted before the undefined one.
pub fn act(tree: &Tree, word: &SignedWord) -> Result<Tree> {
    let mut cur = tree.clone();
    for (i, letter) in word.0.iter().enumerate() {
        cur = act_letter(&cur, letter)
            .ok_or_else(|| TamariError::UndefinedAction { prefix: i, letter: letter.to_string() })?;
    }
    Ok(cur)
}

/// Word in the generators `x_i = a_{1^i}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct XWord(pub Vec<(usize, Sign)>);

impl XWord {
    pub fn to_signed_word(&self) -> SignedWord {
        self.0
            .iter()
            .map(|&(i, sign)| HatLetter::new(Address::ones(i), 1, sign))
            .collect()
    }

    /// Raises every index by one; the image of the shift by `1`.
    pub fn shifted(&self) -> Self {
        XWord(self.0.iter().map(|&(i, s)| (i + 1, s)).collect())
    }

    pub fn inverse(&self) -> Self {
        XWord(self.0.iter().rev().map(|&(i, s)| (i, s.flip())).collect())
    }

    /// Cancels adjacent `x_i^{±1} x_i^{∓1}` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<(usize, Sign)> = Vec::with_capacity(self.0.len());
        for &(i, s) in &self.0 {
            match out.last() {
                Some(&(j, t)) if j == i && t != s => {
                    out.pop();
                }
                _ => out.push((i, s)),
            }
        }
        XWord(out)
    }

    fn conjugate_by_x0(&self) -> Self {
        let mut out = vec![(0, Sign::Neg)];
        out.extend_from_slice(&self.0);
        out.push((0, Sign::Pos));
        XWord(out)
    }
}

impl fmt::Display for XWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (k, (i, s)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{i}")?;
            if *s == Sign::Neg {
                f.write_str("'")?;
            }
        }
        Ok(())
    }
}

impl FromStr for XWord {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self> {
        let w: SignedWord = s.parse()?;
        w.0.iter()
            .map(|l| {
                if l.r == 1 && l.addr.is_all_ones() {
                    Ok((l.addr.len(), l.sign))
                } else {
                    Err(TamariError::Parse(format!("{l} is not an x-generator")))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(XWord)
    }
}

pub fn x_to_a(xw: &XWord) -> SignedWord {
    xw.to_signed_word()
}

/// Expresses `a_α` in the generators `x_i`, using
/// `a_{1β} = sh_1(a_β)`, `a_0 = x_0⁻¹x_1⁻¹x_0²`, `a_{00β} = x_0⁻¹a_{0β}x_0`
/// and `a_{01β} = x_0⁻¹ sh_1(a_{0β}) x_0`.
pub fn a_to_x(alpha: &Address) -> XWord {
    fn go(bits: &[bool]) -> XWord {
        match bits {
            [] => XWord(vec![(0, Sign::Pos)]),
            [true, rest @ ..] => go(rest).shifted(),
            [false] => XWord(vec![(0, Sign::Neg), (1, Sign::Neg), (0, Sign::Pos), (0, Sign::Pos)]),
            [false, false, rest @ ..] => {
                let mut inner = vec![false];
                inner.extend_from_slice(rest);
                go(&inner).conjugate_by_x0()
            }
            [false, true, rest @ ..] => {
                let mut inner = vec![false];
                inner.extend_from_slice(rest);
                go(&inner).shifted().conjugate_by_x0()
            }
        }
    }
    go(alpha.bits()).free_reduce()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    /// `a_α a_β = a_β a_α` for `α ⊥ β`
    Commutation,
    /// `a_{α11β} a_α = a_α a_{α1β}`
    QuasiCommutation11,
    /// `a_{α10β} a_α = a_α a_{α01β}`
    QuasiCommutation10,
    /// `a_{α0β} a_α = a_α a_{α00β}`
    QuasiCommutation0,
    /// `a_α² = a_{α1} a_α a_{α0}`
    Pentagon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub kind: RelationKind,
    pub left: SignedWord,
    pub right: SignedWord,
}

/// Every address of length at most `max_len`, shortest first.
pub fn addresses_up_to(max_len: usize) -> Vec<Address> {
    let mut out = vec![Address::root()];
    let mut layer = vec![Address::root()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|a| [a.child(false), a.child(true)]).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// All relations of the presentation whose addresses have length at most
/// `max_len`. Commutations are listed once per unordered pair.
pub fn relation_instances(max_len: usize) -> Vec<RelationInstance> {
    let a = |addr: &Address| HatLetter::plain(addr.clone());
    let word = |letters: Vec<HatLetter>| SignedWord(letters);
    let addrs = addresses_up_to(max_len);
    let mut out = Vec::new();
    for (i, x) in addrs.iter().enumerate() {
        for y in &addrs[i + 1..] {
            if x.is_orthogonal(y) {
                out.push(RelationInstance {
                    kind: RelationKind::Commutation,
                    left: word(vec![a(x), a(y)]),
                    right: word(vec![a(y), a(x)]),
                });
            }
        }
    }
    for alpha in &addrs {
        for beta in &addrs {
            let quasi = [
                (RelationKind::QuasiCommutation11, "11", "1"),
                (RelationKind::QuasiCommutation10, "10", "01"),
                (RelationKind::QuasiCommutation0, "0", "00"),
            ];
            for (kind, lhs, rhs) in quasi {
                let lhs: Address = lhs.parse().unwrap();
                let rhs: Address = rhs.parse().unwrap();
                let long = alpha.concat(&lhs).concat(beta);
                let short = alpha.concat(&rhs).concat(beta);
                if long.len().max(short.len()) <= max_len {
                    out.push(RelationInstance {
                        kind,
                        left: word(vec![a(&long), a(alpha)]),
                        right: word(vec![a(alpha), a(&short)]),
                    });
                }
            }
        }
        if alpha.len() < max_len {
            out.push(RelationInstance {
                kind: RelationKind::Pentagon,
                left: word(vec![a(alpha), a(alpha)]),
                right: word(vec![a(&alpha.child(true)), a(alpha), a(&alpha.child(false))]),
            });
        }
    }
    out
}
