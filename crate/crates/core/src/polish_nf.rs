//! The Polish algorithm: clashes between Polish encodings, the unique
//! rotation that resolves a clash, and the resulting normal form on F.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Result, TamariError};
use crate::group::GroupElement;
use crate::trees::{Address, PolishLetter, Tree};
use crate::words::{act_letter, HatLetter, SignedWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Smaller {
    First,
    Second,
}

/// First position where two Polish encodings differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clash {
    /// 1-based position.
    pub position: usize,
    pub lex_smaller: Smaller,
    /// Origin of the LEAF letter at `position` in the smaller tree.
    pub leaf_origin: Address,
}

fn check_sizes(t: &Tree, s: &Tree) -> Result<()> {
    let (a, b) = (t.size(), s.size());
    if a != b {
        return Err(TamariError::SizeMismatch { left: a, right: b });
    }
    Ok(())
}

pub fn clash(t: &Tree, s: &Tree) -> Result<Option<Clash>> {
    check_sizes(t, s)?;
    let (pt, ps) = (t.polish(), s.polish());
    let k = match pt.letters().iter().zip(ps.letters()).position(|(a, b)| a != b) {
        Some(k) => k,
        None => return Ok(None),
    };
    let (lex_smaller, smaller) = if pt.letters()[k] == PolishLetter::Leaf { (Smaller::First, t) } else { (Smaller::Second, s) };
    Ok(Some(Clash { position: k + 1, lex_smaller, leaf_origin: smaller.origin_of_position(k + 1)? }))
}

/// Splits `δ = α·1·0^j·1·0^m` and returns `â_{α,j+1}`.
pub fn letter_for_origin(delta: &Address) -> Result<HatLetter> {
    let bits = delta.bits();
    let bad = || TamariError::InternalInvariantViolation(format!("clash origin {delta:?} has fewer than two 1s"));
    let mut end = bits.len();
    while end > 0 && !bits[end - 1] {
        end -= 1;
    }
    if end == 0 {
        return Err(bad());
    }
    end -= 1;
    let mut j = 0;
    while end > 0 && !bits[end - 1] {
        end -= 1;
        j += 1;
    }
    if end == 0 {
        return Err(bad());
    }
    end -= 1;
    Ok(HatLetter::hat(Address::from_bits(bits[..end].iter().copied()), j + 1))
}

/// `s(T, T')` for `⟨T⟩ <Lex ⟨T'⟩`.
pub fn polish_step(t: &Tree, s: &Tree) -> Result<HatLetter> {
    match clash(t, s)? {
        Some(c) if c.lex_smaller == Smaller::First => letter_for_origin(&c.leaf_origin),
        _ => Err(TamariError::InternalInvariantViolation("polish step needs a lexicographically smaller first tree".into())),
    }
}

/// `S(T, T')`: the positive letters moving `T` up, then the inverses of the
/// letters moving `T'` up, in reverse order. `T ∗ S(T,T') = T'`.
pub fn polish_run(t: &Tree, s: &Tree) -> Result<SignedWord> {
    check_sizes(t, s)?;
    let (mut a, mut b) = (t.clone(), s.clone());
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    while let Some(c) = clash(&a, &b)? {
        let (tree, out) = match c.lex_smaller {
            Smaller::First => (&mut a, &mut pos),
            Smaller::Second => (&mut b, &mut neg),
        };
        let letter = letter_for_origin(&c.leaf_origin)?;
        *tree = act_letter(tree, &letter).ok_or_else(|| {
            TamariError::InternalInvariantViolation(format!("{letter} does not act on {tree}"))
        })?;
        out.push(letter);
    }
    let mut word = SignedWord(pos);
    for l in neg.iter().rev() {
        word.push(l.inverse());
    }
    Ok(word)
}

/// The Polish normal form of `f`: `S(f₋, f₊)`.
pub fn normal_form(f: &GroupElement) -> SignedWord {
    polish_run(&f.neg, &f.pos).expect("reduced pairs have equal sizes")
}

/// Local normality of a positive hat word: for every `t`, `α_t0^{r_t}` lies
/// strictly left of `α_{t+1}10^{r_{t+1}−1}1`, i.e. the two addresses are
/// orthogonal and the first one is on the 0 side. Prefix-related addresses
/// are not comparable.
pub fn is_normal(w: &SignedWord) -> bool {
    w.is_positive()
        && w.letters().windows(2).all(|pair| {
            let lhs = pair[0].addr.repeat_push(false, pair[0].r);
            let rhs = pair[1].addr.child(true).repeat_push(false, pair[1].r - 1).child(true);
            lhs.is_orthogonal(&rhs) && lhs.postorder_cmp(&rhs) == Ordering::Less
        })
}
