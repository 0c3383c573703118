//! Binary trees, addresses, Polish encodings and minimal unification.
//!
//! Trees are plain immutable values. Leaves carry no labels: the `i`-th leaf
//! in left-to-right order is identified by its index, which rotations never
//! permute, so substitutions are indexed by leaf position.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, TamariError};

/// A finite 0/1 path from the root; `false` is 0 (left), `true` is 1 (right).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(Vec<bool>);

/// Mutual position of two addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddressRelation {
    Equal,
    /// The first address is a proper prefix of the second.
    ProperPrefix,
    /// The second address is a proper prefix of the first.
    ProperExtension,
    Orthogonal,
}

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        Address(bits.into_iter().collect())
    }

    /// `1^n`
    pub fn ones(n: usize) -> Self {
        Address(vec![true; n])
    }

    /// `0^n`
    pub fn zeros(n: usize) -> Self {
        Address(vec![false; n])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, bit: bool) -> Self {
        let mut bits = self.0.clone();
        bits.push(bit);
        Address(bits)
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn concat(&self, other: &Address) -> Self {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Address(bits)
    }

    /// Appends `bit` `n` times.
    pub fn repeat_push(&self, bit: bool, n: usize) -> Self {
        let mut bits = self.0.clone();
        bits.extend(std::iter::repeat(bit).take(n));
        Address(bits)
    }

    pub fn parent(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(Address(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn last(&self) -> Option<bool> {
        self.0.last().copied()
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Suffix of `self` after `prefix`, if `prefix` is a prefix.
    pub fn strip_prefix(&self, prefix: &Address) -> Option<Address> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Address(s.to_vec()))
    }

    pub fn relation(&self, other: &Address) -> AddressRelation {
        let common = self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count();
        if common == self.len() && common == other.len() {
            AddressRelation::Equal
        } else if common == self.len() {
            AddressRelation::ProperPrefix
        } else if common == other.len() {
            AddressRelation::ProperExtension
        } else {
            AddressRelation::Orthogonal
        }
    }

    pub fn is_orthogonal(&self, other: &Address) -> bool {
        self.relation(other) == AddressRelation::Orthogonal
    }

    pub fn count_zeros(&self) -> usize {
        self.0.iter().filter(|b| !**b).count()
    }

    /// True for addresses of the form `1^i`.
    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|b| *b)
    }

    /// Exchanges 0 and 1 everywhere.
    pub fn swapped(&self) -> Self {
        Address(self.0.iter().map(|b| !b).collect())
    }

    /// Left-right-root (postorder) comparison: a descendant precedes its
    /// ancestors, and across a fork the 0 side comes first.
    pub fn postorder_cmp(&self, other: &Address) -> Ordering {
        match self.relation(other) {
            AddressRelation::Equal => Ordering::Equal,
            AddressRelation::ProperPrefix => Ordering::Greater,
            AddressRelation::ProperExtension => Ordering::Less,
            AddressRelation::Orthogonal => {
                let i = self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count();
                if self.0[i] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Address {
    type Err = TamariError;

    /// Accepts a string over `{0,1}`; the empty address may be written as the
    /// empty string, `e`, `ε` or `∅`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "" | "e" | "ε" | "∅") {
            return Ok(Address::root());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(TamariError::Parse(format!("invalid address character {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Address)
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Address {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Finite binary rooted tree. Size is the number of internal nodes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Tree {
    pub fn leaf() -> Self {
        Tree::Leaf
    }

    /// `left ∧ right`
    pub fn node(left: Tree, right: Tree) -> Self {
        Tree::Node(Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn children(&self) -> Option<(&Tree, &Tree)> {
        match self {
            Tree::Leaf => None,
            Tree::Node(l, r) => Some((l, r)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => l.size() + r.size() + 1,
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.size() + 1
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Right comb `C_n` (Tamari bottom) or left comb `C̃_n` (Tamari top).
    pub fn comb(n: usize, side: Side) -> Self {
        (0..n).fold(Tree::Leaf, |acc, _| match side {
            Side::Right => Tree::node(Tree::Leaf, acc),
            Side::Left => Tree::node(acc, Tree::Leaf),
        })
    }

    /// The zigzag tree `⟨α⟩`: `⟨ε⟩ = •`, `⟨0α⟩ = ⟨α⟩ ∧ •`, `⟨1α⟩ = • ∧ ⟨α⟩`.
    /// Its size is `|α|`.
    pub fn zigzag(addr: &Address) -> Self {
        addr.bits().iter().rev().fold(Tree::Leaf, |acc, bit| {
            if *bit {
                Tree::node(Tree::Leaf, acc)
            } else {
                Tree::node(acc, Tree::Leaf)
            }
        })
    }

    /// Swaps the two children at every node.
    pub fn mirror(&self) -> Self {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(l, r) => Tree::node(r.mirror(), l.mirror()),
        }
    }

    pub fn subtree_at(&self, addr: &Address) -> Result<&Tree> {
        let mut cur = self;
        for bit in addr.bits() {
            cur = match cur {
                Tree::Node(l, r) => {
                    if *bit {
                        r
                    } else {
                        l
                    }
                }
                Tree::Leaf => return Err(TamariError::UndefinedSubtree(format!("{addr:?}"))),
            };
        }
        Ok(cur)
    }

    pub fn contains_address(&self, addr: &Address) -> bool {
        self.subtree_at(addr).is_ok()
    }

    /// Returns a copy with the subtree at `addr` replaced by `f(subtree)`.
    pub fn map_at(&self, addr: &Address, f: impl FnOnce(&Tree) -> Result<Tree>) -> Result<Tree> {
        fn go(t: &Tree, bits: &[bool], f: impl FnOnce(&Tree) -> Result<Tree>, addr: &Address) -> Result<Tree> {
            match bits.split_first() {
                None => f(t),
                Some((bit, rest)) => match t {
                    Tree::Leaf => Err(TamariError::UndefinedSubtree(format!("{addr:?}"))),
                    Tree::Node(l, r) => {
                        if *bit {
                            Ok(Tree::Node(l.clone(), Box::new(go(r, rest, f, addr)?)))
                        } else {
                            Ok(Tree::Node(Box::new(go(l, rest, f, addr)?), r.clone()))
                        }
                    }
                },
            }
        }
        go(self, addr.bits(), f, addr)
    }

    /// All addresses in the tree, internal nodes and leaves, in preorder.
    pub fn skeleton(&self) -> Vec<Address> {
        fn go(t: &Tree, cur: &mut Address, out: &mut Vec<Address>) {
            out.push(cur.clone());
            if let Tree::Node(l, r) = t {
                cur.push(false);
                go(l, cur, out);
                cur.0.pop();
                cur.push(true);
                go(r, cur, out);
                cur.0.pop();
            }
        }
        let mut out = Vec::with_capacity(2 * self.size() + 1);
        go(self, &mut Address::root(), &mut out);
        out
    }

    /// Leaf addresses in left-to-right order.
    pub fn leaf_addresses(&self) -> Vec<Address> {
        fn go(t: &Tree, cur: &mut Address, out: &mut Vec<Address>) {
            match t {
                Tree::Leaf => out.push(cur.clone()),
                Tree::Node(l, r) => {
                    cur.push(false);
                    go(l, cur, out);
                    cur.0.pop();
                    cur.push(true);
                    go(r, cur, out);
                    cur.0.pop();
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaf_count());
        go(self, &mut Address::root(), &mut out);
        out
    }

    pub fn leaf_address(&self, i: usize) -> Result<Address> {
        let n = self.size();
        if i > n {
            return Err(TamariError::IndexOutOfRange { index: i, min: 0, max: n });
        }
        Ok(self.leaf_addresses().swap_remove(i))
    }

    /// Total number of 0's in the leaf addresses.
    pub fn mu(&self) -> usize {
        fn go(t: &Tree, zeros: usize) -> usize {
            match t {
                Tree::Leaf => zeros,
                Tree::Node(l, r) => go(l, zeros + 1) + go(r, zeros),
            }
        }
        go(self, 0)
    }

    pub fn polish(&self) -> PolishWord {
        fn go(t: &Tree, out: &mut Vec<PolishLetter>) {
            match t {
                Tree::Leaf => out.push(PolishLetter::Leaf),
                Tree::Node(l, r) => {
                    go(l, out);
                    go(r, out);
                    out.push(PolishLetter::Node);
                }
            }
        }
        let mut out = Vec::with_capacity(2 * self.size() + 1);
        go(self, &mut out);
        PolishWord(out)
    }

    pub fn from_polish(word: &PolishWord) -> Result<Self> {
        word.validate()?;
        let mut stack: Vec<Tree> = Vec::new();
        for letter in &word.0 {
            match letter {
                PolishLetter::Leaf => stack.push(Tree::Leaf),
                PolishLetter::Node => {
                    let r = stack.pop().expect("validated");
                    let l = stack.pop().expect("validated");
                    stack.push(Tree::node(l, r));
                }
            }
        }
        Ok(stack.pop().expect("validated"))
    }

    /// Origins of the letters of `⟨T⟩`, in order (positions 1..=2n+1).
    pub fn origins(&self) -> Vec<Address> {
        fn go(t: &Tree, cur: &mut Address, out: &mut Vec<Address>) {
            if let Tree::Node(l, r) = t {
                cur.push(false);
                go(l, cur, out);
                cur.0.pop();
                cur.push(true);
                go(r, cur, out);
                cur.0.pop();
            }
            out.push(cur.clone());
        }
        let mut out = Vec::with_capacity(2 * self.size() + 1);
        go(self, &mut Address::root(), &mut out);
        out
    }

    /// Address of the node or leaf producing letter `k` (1-based) of `⟨T⟩`.
    pub fn origin_of_position(&self, k: usize) -> Result<Address> {
        let len = 2 * self.size() + 1;
        if k == 0 || k > len {
            return Err(TamariError::IndexOutOfRange { index: k, min: 1, max: len });
        }
        Ok(self.origins().swap_remove(k - 1))
    }

    /// Replaces the `i`-th leaf by `sub[i]`.
    pub fn substitute(&self, sub: &Substitution) -> Tree {
        fn go(t: &Tree, sub: &Substitution, next: &mut usize) -> Tree {
            match t {
                Tree::Leaf => {
                    let out = sub.get(*next);
                    *next += 1;
                    out
                }
                Tree::Node(l, r) => {
                    let l = go(l, sub, next);
                    let r = go(r, sub, next);
                    Tree::node(l, r)
                }
            }
        }
        go(self, sub, &mut 0)
    }

    /// Matches `self` against `pattern`: returns the substitution `σ` with
    /// `pattern^σ = self`, if any.
    pub fn match_pattern(&self, pattern: &Tree) -> Option<Substitution> {
        fn go(t: &Tree, p: &Tree, out: &mut Vec<Tree>) -> bool {
            match (p, t) {
                (Tree::Leaf, _) => {
                    out.push(t.clone());
                    true
                }
                (Tree::Node(pl, pr), Tree::Node(tl, tr)) => go(tl, pl, out) && go(tr, pr, out),
                (Tree::Node(..), Tree::Leaf) => false,
            }
        }
        let mut out = Vec::with_capacity(pattern.leaf_count());
        go(self, pattern, &mut out).then_some(Substitution(out))
    }

    /// DOT rendering with one node per skeleton address.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tree {\n  node [shape=circle, label=\"\"];\n");
        for addr in self.skeleton() {
            let name = dot_name(&addr);
            let leaf = self.subtree_at(&addr).map(Tree::is_leaf).unwrap_or(false);
            if leaf {
                out.push_str(&format!("  {name} [shape=point];\n"));
            } else {
                out.push_str(&format!("  {name};\n"));
            }
            if let Some(parent) = addr.parent() {
                out.push_str(&format!("  {} -> {name};\n", dot_name(&parent)));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn dot_name(addr: &Address) -> String {
    format!("n_{addr}")
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("x"),
            Tree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Tree {
    type Err = TamariError;

    /// Grammar `tree := "x" | "(" tree tree ")"`, with `•` accepted for `x`.
    /// Two juxtaposed trees at the top level are read as their join, so the
    /// usual shorthand `x(xx)` is accepted as well.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let mut terms = Vec::new();
        while pos < chars.len() {
            terms.push(parse_tree(&chars, &mut pos, s)?);
        }
        match terms.len() {
            1 => Ok(terms.pop().unwrap()),
            2 => {
                let r = terms.pop().unwrap();
                let l = terms.pop().unwrap();
                Ok(Tree::node(l, r))
            }
            0 => Err(TamariError::Parse("empty tree".into())),
            _ => Err(TamariError::Parse(format!("too many top-level terms in {s:?}"))),
        }
    }
}

fn parse_tree(chars: &[char], pos: &mut usize, src: &str) -> Result<Tree> {
    match chars.get(*pos) {
        Some('x') | Some('•') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let l = parse_tree(chars, pos, src)?;
            let r = parse_tree(chars, pos, src)?;
            if chars.get(*pos) != Some(&')') {
                return Err(TamariError::Parse(format!("expected ')' at {} in {src:?}", *pos)));
            }
            *pos += 1;
            Ok(Tree::node(l, r))
        }
        Some(c) => Err(TamariError::Parse(format!("unexpected {c:?} at {} in {src:?}", *pos))),
        None => Err(TamariError::Parse(format!("unexpected end of input in {src:?}"))),
    }
}

impl Serialize for Tree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Tree", 1)?;
        st.serialize_field("polish", &self.polish().to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Tree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            polish: String,
        }
        let repr = Repr::deserialize(d)?;
        let word: PolishWord = repr.polish.parse().map_err(serde::de::Error::custom)?;
        Tree::from_polish(&word).map_err(serde::de::Error::custom)
    }
}

/// Letters of the Polish encoding, ordered `Leaf < Node`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolishLetter {
    Leaf,
    Node,
}

/// Right-Polish encoding of a tree. The derived `Ord` is the lexicographic
/// order with `Leaf < Node`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolishWord(pub Vec<PolishLetter>);

impl PolishWord {
    pub fn letters(&self) -> &[PolishLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Letter at 1-based position `k`.
    pub fn at(&self, k: usize) -> Option<PolishLetter> {
        k.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// Checks the leaf-excess invariant: every proper prefix has at least one
    /// more LEAF than NODE, and the whole word has exactly one more.
    pub fn validate(&self) -> Result<()> {
        let mut excess: i64 = 0;
        for (i, letter) in self.0.iter().enumerate() {
            excess += match letter {
                PolishLetter::Leaf => 1,
                PolishLetter::Node => -1,
            };
            if excess < 1 {
                return Err(TamariError::MalformedPolish(format!("{self}: excess drops below 1 at position {}", i + 1)));
            }
        }
        if excess != 1 {
            return Err(TamariError::MalformedPolish(format!("{self}: final excess {excess}, expected 1")));
        }
        Ok(())
    }
}

impl fmt::Display for PolishWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                PolishLetter::Leaf => "x",
                PolishLetter::Node => "o",
            })?;
        }
        Ok(())
    }
}

impl FromStr for PolishWord {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'x' | '•' => Ok(PolishLetter::Leaf),
                'o' | '◦' => Ok(PolishLetter::Node),
                _ => Err(TamariError::MalformedPolish(format!("invalid letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PolishWord)
    }
}

/// Map from leaf index to tree; leaves past the end map to themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution(pub Vec<Tree>);

impl Substitution {
    pub fn identity(leaves: usize) -> Self {
        Substitution(vec![Tree::Leaf; leaves])
    }

    pub fn get(&self, i: usize) -> Tree {
        self.0.get(i).cloned().unwrap_or(Tree::Leaf)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Tree::is_leaf)
    }

    /// Indices mapped to a non-leaf tree.
    pub fn support(&self) -> Vec<(usize, &Tree)> {
        self.0.iter().enumerate().filter(|(_, t)| !t.is_leaf()).collect()
    }
}

/// Result of minimal unification: `tree = left_tree^left = right_tree^right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unifier {
    pub tree: Tree,
    pub left: Substitution,
    pub right: Substitution,
}

/// Minimal common instance of two trees.
pub fn unify(t: &Tree, s: &Tree) -> Unifier {
    fn go(t: &Tree, s: &Tree, left: &mut Vec<Tree>, right: &mut Vec<Tree>) -> Tree {
        match (t, s) {
            (Tree::Leaf, _) => {
                left.push(s.clone());
                right.extend(std::iter::repeat(Tree::Leaf).take(s.leaf_count()));
                s.clone()
            }
            (_, Tree::Leaf) => {
                right.push(t.clone());
                left.extend(std::iter::repeat(Tree::Leaf).take(t.leaf_count()));
                t.clone()
            }
            (Tree::Node(tl, tr), Tree::Node(sl, sr)) => {
                let l = go(tl, sl, left, right);
                let r = go(tr, sr, left, right);
                Tree::node(l, r)
            }
        }
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    let tree = go(t, s, &mut left, &mut right);
    Unifier { tree, left: Substitution(left), right: Substitution(right) }
}
