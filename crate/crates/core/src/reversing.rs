//! Right and left subword reversing over the Thompson relations, working
//! natively on hat letters.

use serde::Serialize;

use crate::error::{Result, TamariError};
use crate::trees::{Address, AddressRelation};
use crate::words::{HatLetter, Sign, SignedWord};

/// For right reversing `w ⟶ numerator · denominator⁻¹`; for left reversing
/// `w ⟶ denominator⁻¹ · numerator`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReversalOutcome {
    pub numerator: SignedWord,
    pub denominator: SignedWord,
    pub steps: usize,
}

impl ReversalOutcome {
    /// Combined A-length of numerator and denominator.
    pub fn a_length(&self) -> usize {
        self.numerator.a_length() + self.denominator.a_length()
    }

    /// The reversed word, `N·D⁻¹`.
    pub fn right_word(&self) -> SignedWord {
        self.numerator.concat(&self.denominator.inverse())
    }

    /// The reversed word, `D⁻¹·N`.
    pub fn left_word(&self) -> SignedWord {
        self.denominator.inverse().concat(&self.numerator)
    }
}

fn hat(addr: Address, r: usize) -> SignedWord {
    SignedWord(vec![HatLetter::hat(addr, r)])
}

/// The unique `(v, u)` with `neg⁻¹·pos ⟶ v·u⁻¹`, that is `neg·v = pos·u`.
/// Both arguments are read as positive hat letters.
pub fn relation_right(neg: &HatLetter, pos: &HatLetter) -> (SignedWord, SignedWord) {
    let (beta, s) = (&neg.addr, neg.r);
    let (alpha, r) = (&pos.addr, pos.r);
    match beta.relation(alpha) {
        AddressRelation::Equal => match s.cmp(&r) {
            std::cmp::Ordering::Equal => (SignedWord::empty(), SignedWord::empty()),
            std::cmp::Ordering::Less => (hat(alpha.repeat_push(false, s), r - s), SignedWord::empty()),
            std::cmp::Ordering::Greater => (SignedWord::empty(), hat(alpha.repeat_push(false, r), s - r)),
        },
        AddressRelation::Orthogonal => (hat(alpha.clone(), r), hat(beta.clone(), s)),
        AddressRelation::ProperExtension => {
            let rest = beta.strip_prefix(alpha).expect("extension");
            deeper_negative(alpha, r, &rest, s)
        }
        AddressRelation::ProperPrefix => {
            let rest = alpha.strip_prefix(beta).expect("extension");
            let (v, u) = deeper_negative(beta, s, &rest, r);
            (u, v)
        }
    }
}

/// Case `neg = â_{α·rest,s}`, `pos = â_{α,r}` with `rest` nonempty.
fn deeper_negative(alpha: &Address, r: usize, rest: &Address, s: usize) -> (SignedWord, SignedWord) {
    let bits = rest.bits();
    if !bits[0] {
        // rest = 0γ: the subtree at α0 sinks r levels down the left spine
        let addr = alpha.repeat_push(false, r).concat(rest);
        return (hat(alpha.clone(), r), hat(addr, s));
    }
    let zeros = bits[1..].iter().take_while(|b| !**b).count();
    if zeros >= r {
        // rest = 1 0^r γ
        let gamma = Address::from_bits(bits[1 + r..].iter().copied());
        let addr = alpha.repeat_push(false, r).child(true).concat(&gamma);
        return (hat(alpha.clone(), r), hat(addr, s));
    }
    if 1 + zeros == bits.len() {
        // rest = 1 0^i with i < r
        (hat(alpha.clone(), r + s), hat(alpha.repeat_push(false, zeros), s))
    } else {
        // rest = 1 0^i 1 γ with i < r
        let gamma = Address::from_bits(bits[2 + zeros..].iter().copied());
        let addr = alpha.repeat_push(false, zeros).child(true).concat(&gamma);
        (hat(alpha.clone(), r), hat(addr, s))
    }
}

/// Reverses `u⁻¹·v` for positive words `u`, `v`, returning `(v', u')` with
/// `u⁻¹v ⟶ v'·u'⁻¹`.
fn reverse_fraction(u: &[HatLetter], v: &[HatLetter], steps: &mut usize) -> (Vec<HatLetter>, Vec<HatLetter>) {
    // u⁻¹ = … u₂⁻¹u₁⁻¹: push u₁ through v first, then u₂ through the result
    let mut pos: Vec<HatLetter> = v.to_vec();
    let mut den: Vec<HatLetter> = Vec::new();
    for b in u {
        let (new_pos, extra_den) = push_through(b, &pos, steps);
        pos = new_pos;
        den.extend(extra_den);
    }
    (pos, den)
}

/// `b⁻¹·v ⟶ v'·d⁻¹` for a single positive letter `b`.
fn push_through(b: &HatLetter, v: &[HatLetter], steps: &mut usize) -> (Vec<HatLetter>, Vec<HatLetter>) {
    let mut out = Vec::with_capacity(v.len());
    let mut negs: Vec<HatLetter> = vec![b.clone()];
    for a in v {
        let (num, den) = reverse_fraction_step(&negs, a, steps);
        out.extend(num);
        negs = den;
    }
    (out, negs)
}

/// `negs⁻¹·a ⟶ num·den⁻¹` for a positive word `negs` and a letter `a`.
fn reverse_fraction_step(negs: &[HatLetter], a: &HatLetter, steps: &mut usize) -> (Vec<HatLetter>, Vec<HatLetter>) {
    match negs.split_first() {
        None => (vec![a.clone()], Vec::new()),
        Some((first, rest)) => {
            *steps += 1;
            let (v, u) = relation_right(first, a);
            // rest⁻¹·v·u⁻¹
            let (v2, u2) = reverse_fraction(rest, &v.0, steps);
            let mut den = u.0;
            den.extend(u2);
            (v2, den)
        }
    }
}

/// Right reversing with the default schedule.
pub fn reverse_right(w: &SignedWord) -> ReversalOutcome {
    let mut steps = 0;
    let mut num: Vec<HatLetter> = Vec::new();
    let mut den: Vec<HatLetter> = Vec::new();
    for letter in w.letters() {
        match letter.sign {
            Sign::Pos => {
                let (v, u) = reverse_fraction(&den, std::slice::from_ref(&pos_of(letter)), &mut steps);
                num.extend(v);
                den = u;
            }
            Sign::Neg => den.insert(0, pos_of(letter)),
        }
    }
    ReversalOutcome { numerator: SignedWord(num), denominator: SignedWord(den), steps }
}

fn pos_of(letter: &HatLetter) -> HatLetter {
    HatLetter { sign: Sign::Pos, ..letter.clone() }
}

/// Right reversing by repeated rewriting of a `b⁻¹a` factor. `choose` picks
/// which of the currently reversible positions to rewrite; any choice yields
/// the same final word.
pub fn reverse_right_scheduled(w: &SignedWord, mut choose: impl FnMut(&[usize]) -> usize) -> ReversalOutcome {
    let mut cur: Vec<HatLetter> = w.letters().to_vec();
    let mut steps = 0;
    loop {
        let spots: Vec<usize> = (0..cur.len().saturating_sub(1))
            .filter(|&i| !cur[i].is_positive() && cur[i + 1].is_positive())
            .collect();
        if spots.is_empty() {
            break;
        }
        let i = spots[choose(&spots) % spots.len()];
        let (v, u) = relation_right(&pos_of(&cur[i]), &cur[i + 1]);
        let replacement: Vec<HatLetter> = v.0.into_iter().chain(u.inverse().0).collect();
        cur.splice(i..i + 2, replacement);
        steps += 1;
    }
    let (num, den) = SignedWord(cur).split_fraction().expect("terminal word is positive-negative");
    ReversalOutcome { numerator: num, denominator: den, steps }
}

/// Left reversing `w ⟶ D⁻¹·N`, computed by mirroring: reverse `w̃` to the
/// right and mirror the result back.
pub fn reverse_left(w: &SignedWord) -> ReversalOutcome {
    let right = reverse_right(&w.mirror());
    ReversalOutcome {
        numerator: right.numerator.mirror(),
        denominator: right.denominator.mirror(),
        steps: right.steps,
    }
}

/// `(N_er, D_er)`: right reversing applied to the left fraction of `w`.
pub fn double_reverse(w: &SignedWord) -> ReversalOutcome {
    let left = reverse_left(w);
    let right = reverse_right(&left.left_word());
    ReversalOutcome { steps: left.steps + right.steps, ..right }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lcm {
    pub lcm: SignedWord,
    /// `u·v_complement = v·u_complement = lcm`
    pub v_complement: SignedWord,
    pub u_complement: SignedWord,
}

/// Right lcm of the elements represented by positive words `u`, `v`.
pub fn right_lcm(u: &SignedWord, v: &SignedWord) -> Lcm {
    let out = reverse_right(&u.inverse().concat(v));
    Lcm { lcm: u.concat(&out.numerator), v_complement: out.numerator, u_complement: out.denominator }
}

/// Left gcd of the elements represented by positive words `u`, `v`.
pub fn left_gcd(u: &SignedWord, v: &SignedWord) -> Result<SignedWord> {
    let lcm = right_lcm(u, v);
    // v'·u'⁻¹ ⟶ x⁻¹·y, the left-irreducible form of u⁻¹v
    let left = reverse_left(&lcm.v_complement.concat(&lcm.u_complement.inverse()));
    let g = reverse_left(&u.concat(&left.denominator.inverse()));
    if !g.denominator.is_empty() {
        return Err(TamariError::InternalInvariantViolation(format!(
            "gcd of {u} and {v} left a nonempty denominator {}",
            g.denominator
        )));
    }
    Ok(g.numerator)
}

/// Whether reversing `u⁻¹v` ends with an empty denominator, i.e. `u` left
/// divides `v` for positive `u`, `v`.
pub fn left_divides(u: &SignedWord, v: &SignedWord) -> bool {
    reverse_right(&u.inverse().concat(v)).denominator.is_empty()
}

/// The cube condition for plain positive letters `a`, `b`, `c`: if
/// `a⁻¹cc⁻¹b ⟶ vu⁻¹`, then `v⁻¹a⁻¹bu ⟶ ε`.
pub fn cube_check(a: &HatLetter, b: &HatLetter, c: &HatLetter) -> bool {
    let (a, b, c) = (pos_of(a), pos_of(b), pos_of(c));
    let w = SignedWord(vec![a.inverse(), c.clone(), c.inverse(), b.clone()]);
    let out = reverse_right(&w);
    let check = out
        .numerator
        .inverse()
        .concat(&SignedWord(vec![a.inverse(), b]))
        .concat(&out.denominator);
    let res = reverse_right(&check);
    res.numerator.is_empty() && res.denominator.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> SignedWord {
        s.parse().unwrap()
    }

    fn l(s: &str) -> HatLetter {
        w(s).0.remove(0)
    }

    #[test]
    fn table_examples() {
        let out = reverse_right(&w("a[10,3]' a[,4]"));
        assert_eq!(out.numerator, w("a[,7]"));
        assert_eq!(out.denominator, w("a[0,3]"));
        assert_eq!(relation_right(&l("a[1]"), &l("a[]")), (w("a[,2]"), w("a[]")));
        assert_eq!(relation_right(&l("a[01]"), &l("a[01]")), (w("e"), w("e")));
        assert_eq!(relation_right(&l("a[,3]"), &l("a[,1]")), (w("e"), w("a[0,2]")));
    }

    #[test]
    fn worked_reversals() {
        let out = reverse_right(&w("a[1]' a[] a[00]' a[1]"));
        assert_eq!(out.numerator.expand(), w("a[] a[0] a[]"));
        assert_eq!(out.denominator.expand(), w("a[00] a[] a[0]"));

        let out = reverse_right(&w("a[]' a[1] a[1]' a[11]"));
        assert_eq!(out.numerator.expand(), w("a[] a[]"));
        assert_eq!(out.denominator.expand(), w("a[1] a[10] a[] a[0] a[00]"));

        assert_eq!(reverse_right(&w("e")).a_length(), 0);
    }

    #[test]
    fn left_reversal() {
        let out = reverse_left(&w("a[] a[0]'"));
        assert_eq!(out.denominator, w("a[]"));
        assert_eq!(out.numerator, w("a[1] a[]"));
        let out = reverse_left(&w("a[01] a[01]'"));
        assert!(out.numerator.is_empty() && out.denominator.is_empty());
        assert_eq!(reverse_left(&w("e")).a_length(), 0);
    }

    #[test]
    fn double_reversal_examples() {
        let out = double_reverse(&w("a[] a[]'"));
        assert!(out.numerator.is_empty() && out.denominator.is_empty());
        let out = double_reverse(&w("a[]"));
        assert_eq!((out.numerator, out.denominator), (w("a[]"), w("e")));
        let out = double_reverse(&w("a[1]' a[]"));
        assert_eq!((out.numerator, out.denominator), (w("a[,2]"), w("a[]")));
    }

    #[test]
    fn lcm_and_gcd_examples() {
        assert_eq!(right_lcm(&w("a[]"), &w("a[]")).lcm, w("a[]"));
        let lcm = right_lcm(&w("a[]"), &w("a[1]"));
        assert_eq!(lcm.lcm, w("a[] a[]"));
        assert_eq!(w("a[1]").concat(&lcm.u_complement).expand(), w("a[1] a[] a[0]"));
        let lcm = right_lcm(&w("a[11] a[1] a[1]"), &w("a[1] a[]"));
        assert_eq!(lcm.v_complement.expand(), w("a[100] a[] a[0] a[00]"));
        assert_eq!(lcm.u_complement.expand(), w("a[] a[]"));

        assert_eq!(left_gcd(&w("a[]"), &w("a[] a[0]")).unwrap(), w("a[]"));
        assert_eq!(left_gcd(&w("a[0]"), &w("a[1]")).unwrap(), w("e"));
    }

    #[test]
    fn cube_examples() {
        assert!(cube_check(&l("a[]"), &l("a[11]"), &l("a[1]")));
        assert!(cube_check(&l("a[10]"), &l("a[10]"), &l("a[10]")));
        assert!(cube_check(&l("a[0]"), &l("a[1]"), &l("a[10]")));
    }

    #[test]
    fn scheduled_matches_default() {
        let word = w("a[1]' a[] a[00]' a[1] a[0]' a[,2]");
        let a = reverse_right(&word);
        let b = reverse_right_scheduled(&word, |_| 0);
        let c = reverse_right_scheduled(&word, |s| s.len() - 1);
        assert_eq!(a, b);
        assert_eq!(b.numerator, c.numerator);
        assert_eq!(b.denominator, c.denominator);
    }
}
