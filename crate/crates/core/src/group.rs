//! Thompson's group F as reduced tree pairs, and the matching dyadic
//! piecewise-linear maps of `[0,1]`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TamariError};
use crate::trees::{unify, Address, PolishLetter, PolishWord, Tree};
use crate::words::{act_letter, HatLetter, Sign, SignedWord};

/// Element of F stored as its reduced pair of trees. Products read left to
/// right: `fg` is `f` followed by `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub neg: Tree,
    pub pos: Tree,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { neg: Tree::Leaf, pos: Tree::Leaf }
    }

    pub fn is_identity(&self) -> bool {
        self.neg.is_leaf()
    }

    /// Reduces the pair `(neg, pos)` by collapsing carets present in both.
    pub fn from_pair(neg: &Tree, pos: &Tree) -> Result<Self> {
        let (n, m) = (neg.size(), pos.size());
        if n != m {
            return Err(TamariError::SizeMismatch { left: n, right: m });
        }
        let mut a = neg.polish().0;
        let mut b = pos.polish().0;
        loop {
            let ca = carets(&a);
            let cb = carets(&b);
            let common = ca.iter().find_map(|(leaf, pa)| cb.iter().find(|(l, _)| l == leaf).map(|(_, pb)| (*pa, *pb)));
            match common {
                Some((pa, pb)) => {
                    a.splice(pa..pa + 3, [PolishLetter::Leaf]);
                    b.splice(pb..pb + 3, [PolishLetter::Leaf]);
                }
                None => break,
            }
        }
        let neg = Tree::from_polish(&PolishWord(a))?;
        let pos = Tree::from_polish(&PolishWord(b))?;
        Ok(GroupElement { neg, pos })
    }

    /// Element of one hat letter: the minimal tree on which it acts, paired
    /// with its image.
    pub fn from_letter(letter: &HatLetter) -> Self {
        let base = Tree::zigzag(&letter.addr.child(true).repeat_push(false, letter.r));
        let image = act_letter(&base, &HatLetter::hat(letter.addr.clone(), letter.r)).expect("minimal tree is in the domain");
        let e = GroupElement::from_pair(&base, &image).expect("rotations keep the size");
        match letter.sign {
            Sign::Pos => e,
            Sign::Neg => e.inverse(),
        }
    }

    pub fn inverse(&self) -> Self {
        GroupElement { neg: self.pos.clone(), pos: self.neg.clone() }
    }

    pub fn multiply(&self, other: &GroupElement) -> Self {
        let u = unify(&self.pos, &other.neg);
        let neg = self.neg.substitute(&u.left);
        let pos = other.pos.substitute(&u.right);
        GroupElement::from_pair(&neg, &pos).expect("unification keeps sizes equal")
    }

    pub fn eval_word(w: &SignedWord) -> Self {
        w.letters()
            .iter()
            .fold(GroupElement::identity(), |acc, l| acc.multiply(&GroupElement::from_letter(l)))
    }

    /// `T ∗ f`: defined when `T` is an instance of `f₋`.
    pub fn act(&self, tree: &Tree) -> Result<Tree> {
        let sub = tree.match_pattern(&self.neg).ok_or_else(|| TamariError::UndefinedAction {
            prefix: 0,
            letter: format!("({}, {})", self.neg, self.pos),
        })?;
        Ok(self.pos.substitute(&sub))
    }

    /// `λ(f) = µ(f₊) − µ(f₋)`
    pub fn lambda(&self) -> i64 {
        self.pos.mu() as i64 - self.neg.mu() as i64
    }

    /// Maps the dyadic decomposition of `f₋` affinely onto that of `f₊`.
    pub fn to_pl_map(&self) -> DyadicPLMap {
        let xs = self.neg.leaf_addresses();
        let ys = self.pos.leaf_addresses();
        let mut pts: Vec<(Dyadic, Dyadic)> = xs.iter().zip(&ys).map(|(x, y)| (Dyadic::of_address(x), Dyadic::of_address(y))).collect();
        pts.push((Dyadic::one(), Dyadic::one()));
        DyadicPLMap::new(pts)
    }
}

/// `(leaf index, Polish position)` of every `xxo` factor.
fn carets(word: &[PolishLetter]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut leaf = 0;
    for p in 0..word.len() {
        if word[p] == PolishLetter::Leaf {
            if p + 2 < word.len() && word[p + 1] == PolishLetter::Leaf && word[p + 2] == PolishLetter::Node {
                out.push((leaf, p));
            }
            leaf += 1;
        }
    }
    out
}

pub fn lambda_word(w: &SignedWord) -> i64 {
    GroupElement::eval_word(w).lambda()
}

/// Exact dyadic rational `num / 2^exp`, normalized so that `num` is odd or
/// `exp = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: i128, exp: i64) -> Self {
        if exp < 0 {
            return Dyadic { num: num << (-exp) as u32, exp: 0 };
        }
        let mut d = Dyadic { num, exp: exp as u32 };
        if d.num == 0 {
            d.exp = 0;
        }
        while d.exp > 0 && d.num % 2 == 0 {
            d.num /= 2;
            d.exp -= 1;
        }
        d
    }

    pub fn zero() -> Self {
        Dyadic { num: 0, exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: 1, exp: 0 }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// `0.α` in binary: left endpoint of the interval coded by `α`.
    pub fn of_address(addr: &Address) -> Self {
        let num = addr.bits().iter().fold(0i128, |acc, b| 2 * acc + *b as i128);
        Dyadic::new(num, addr.len() as i64)
    }

    fn aligned(self, other: Dyadic) -> (i128, i128, u32) {
        let e = self.exp.max(other.exp);
        (self.num << (e - self.exp), other.num << (e - other.exp), e)
    }

    pub fn add(self, other: Dyadic) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e as i64)
    }

    pub fn sub(self, other: Dyadic) -> Self {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a - b, e as i64)
    }

    pub fn mul(self, other: Dyadic) -> Self {
        Dyadic::new(self.num * other.num, self.exp as i64 + other.exp as i64)
    }

    /// Exact quotient, if it is dyadic.
    pub fn div(self, other: Dyadic) -> Option<Self> {
        if other.num == 0 {
            return None;
        }
        let twos = other.num.trailing_zeros();
        let odd = other.num >> twos;
        if self.num % odd != 0 {
            return None;
        }
        let q = self.num / odd;
        Some(Dyadic::new(q, self.exp as i64 + twos as i64 - other.exp as i64))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl FromStr for Dyadic {
    type Err = TamariError;

    /// `k`, `k/2^e` or `k/m` with `m` a power of two.
    fn from_str(s: &str) -> Result<Self> {
        let err = || TamariError::Parse(format!("invalid dyadic {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i128>().map(|n| Dyadic::new(n, 0)).map_err(|_| err()),
            Some((n, d)) => {
                let n: i128 = n.trim().parse().map_err(|_| err())?;
                let d = d.trim();
                let e = if let Some(e) = d.strip_prefix("2^") {
                    e.parse::<u32>().map_err(|_| err())?
                } else {
                    let m: u128 = d.parse().map_err(|_| err())?;
                    if !m.is_power_of_two() {
                        return Err(err());
                    }
                    m.trailing_zeros()
                };
                Ok(Dyadic::new(n, e as i64))
            }
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Piecewise-linear homeomorphism of `[0,1]` given by its breakpoints,
/// collinear points removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DyadicPLMap {
    pub breakpoints: Vec<(Dyadic, Dyadic)>,
}

impl DyadicPLMap {
    pub fn new(mut pts: Vec<(Dyadic, Dyadic)>) -> Self {
        pts.sort();
        pts.dedup();
        let mut out: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(pts.len());
        for p in pts {
            while out.len() >= 2 {
                let (a, b) = (out[out.len() - 2], out[out.len() - 1]);
                let lhs = b.1.sub(a.1).mul(p.0.sub(b.0));
                let rhs = p.1.sub(b.1).mul(b.0.sub(a.0));
                if lhs == rhs {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }
        DyadicPLMap { breakpoints: out }
    }

    pub fn identity() -> Self {
        DyadicPLMap::new(vec![(Dyadic::zero(), Dyadic::zero()), (Dyadic::one(), Dyadic::one())])
    }

    pub fn eval(&self, t: Dyadic) -> Result<Dyadic> {
        let bp = &self.breakpoints;
        let i = bp.partition_point(|(x, _)| *x <= t);
        if i == 0 || t > Dyadic::one() {
            return Err(TamariError::Parse(format!("{t} lies outside [0,1]")));
        }
        if i == bp.len() {
            return Ok(bp[i - 1].1);
        }
        let ((x0, y0), (x1, y1)) = (bp[i - 1], bp[i]);
        let slope = y1
            .sub(y0)
            .div(x1.sub(x0))
            .ok_or_else(|| TamariError::InternalInvariantViolation("non-dyadic slope".into()))?;
        Ok(y0.add(t.sub(x0).mul(slope)))
    }

    pub fn inverse(&self) -> Self {
        DyadicPLMap::new(self.breakpoints.iter().map(|(x, y)| (*y, *x)).collect())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &DyadicPLMap) -> Result<Self> {
        let inv = self.inverse();
        let mut xs: Vec<Dyadic> = self.breakpoints.iter().map(|p| p.0).collect();
        for (x, _) in &other.breakpoints {
            xs.push(inv.eval(*x)?);
        }
        let pts = xs
            .into_iter()
            .map(|x| Ok((x, other.eval(self.eval(x)?)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DyadicPLMap::new(pts))
    }
}
