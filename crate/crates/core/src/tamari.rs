//! The Tamari order on trees of a fixed size: comparison through covering
//! relations, joins and meets by three independent methods, the words
//! `c_T`, and enumeration of the lattice.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Result, TamariError};
use crate::polish_nf::polish_run;
use crate::reversing::reverse_right;
use crate::trees::{Address, PolishLetter, PolishWord, Tree};
use crate::words::{act, act_letter, HatLetter, SignedWord};

/// Default bound on `n` for enumeration of `T_n`.
pub const DEFAULT_CAP: usize = 14;

/// Enumeration cap, raised or lowered by the `TAMARI_CAP` variable.
pub fn enumeration_cap() -> usize {
    std::env::var("TAMARI_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

/// `j ▷ i` for the leaves `i < j` of a size-`n` tree, stored per `j` as the
/// lowest covered index: `j` covers exactly `low[j]..j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CoveringRelation {
    pub low: Vec<usize>,
}

impl CoveringRelation {
    pub fn size(&self) -> usize {
        self.low.len() - 1
    }

    pub fn covers(&self, j: usize, i: usize) -> bool {
        i < j && j < self.low.len() && self.low[j] <= i
    }

    /// All pairs `(j, i)` with `j ▷ i`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.low.iter().enumerate().flat_map(|(j, &l)| (l..j).map(move |i| (j, i))).collect()
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut low: Vec<usize> = (0..=n).collect();
        for &(j, i) in pairs {
            if i >= j || j > n {
                return Err(TamariError::InconsistentCovering(format!("pair ({j},{i}) out of range for size {n}")));
            }
            low[j] = low[j].min(i);
        }
        let rel = CoveringRelation { low };
        if rel.pairs().len() != {
            let mut p = pairs.to_vec();
            p.sort();
            p.dedup();
            p.len()
        } {
            return Err(TamariError::InconsistentCovering("covered indices do not form intervals ending at j-1".into()));
        }
        Ok(rel)
    }

    pub fn is_subset_of(&self, other: &CoveringRelation) -> bool {
        self.low.len() == other.low.len() && self.low.iter().zip(&other.low).all(|(a, b)| a >= b)
    }

    /// Smallest transitive relation containing both.
    pub fn union_closure(&self, other: &CoveringRelation) -> CoveringRelation {
        let mut low: Vec<usize> = self.low.iter().zip(&other.low).map(|(a, b)| *a.min(b)).collect();
        for j in 0..low.len() {
            loop {
                let l = low[j];
                let m = (l..j).map(|i| low[i]).min().unwrap_or(l).min(l);
                if m == l {
                    break;
                }
                low[j] = m;
            }
        }
        CoveringRelation { low }
    }
}

pub fn covering_of(tree: &Tree) -> CoveringRelation {
    // j covers the other leaves of the largest subtree whose rightmost leaf
    // is j; that subtree sits at add(j) stripped of its trailing 1s
    fn go(t: &Tree, first: usize, is_right_child: bool, pending_low: usize, low: &mut Vec<usize>) -> usize {
        match t {
            Tree::Leaf => {
                low.push(if is_right_child { pending_low } else { first });
                first + 1
            }
            Tree::Node(l, r) => {
                let subtree_low = if is_right_child { pending_low } else { first };
                let mid = go(l, first, false, 0, low);
                go(r, mid, true, subtree_low, low)
            }
        }
    }
    let mut low = Vec::with_capacity(tree.leaf_count());
    go(tree, 0, false, 0, &mut low);
    CoveringRelation { low }
}

/// Rebuilds the tree: after leaf `j` comes one NODE letter per `i` whose
/// nearest covering leaf is `j`.
pub fn tree_from_covering(rel: &CoveringRelation) -> Result<Tree> {
    let n = rel.size();
    let mut count = vec![0usize; n + 1];
    for i in 0..n {
        match (i + 1..=n).find(|&j| rel.covers(j, i)) {
            Some(j) => count[j] += 1,
            None => {
                return Err(TamariError::InconsistentCovering(format!("leaf {i} is covered by no later leaf")));
            }
        }
    }
    let mut word = Vec::with_capacity(2 * n + 1);
    for c in count {
        word.push(PolishLetter::Leaf);
        word.extend(std::iter::repeat(PolishLetter::Node).take(c));
    }
    let tree = Tree::from_polish(&PolishWord(word)).map_err(|e| TamariError::InconsistentCovering(e.to_string()))?;
    if covering_of(&tree) != *rel {
        return Err(TamariError::InconsistentCovering("relation is not the covering of any tree".into()));
    }
    Ok(tree)
}

fn check_sizes(t: &Tree, s: &Tree) -> Result<()> {
    let (a, b) = (t.size(), s.size());
    if a != b {
        return Err(TamariError::SizeMismatch { left: a, right: b });
    }
    Ok(())
}

/// `T ≤ T'` in the Tamari order.
pub fn leq(t: &Tree, s: &Tree) -> Result<bool> {
    check_sizes(t, s)?;
    Ok(covering_of(t).is_subset_of(&covering_of(s)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JoinMethod {
    /// Positive part of the Polish algorithm.
    #[default]
    Polish,
    /// Numerator of the right reversing of `c_T⁻¹c_{T'}`.
    Reversing,
    /// Transitive closure of the union of covering relations.
    Covering,
}

impl std::str::FromStr for JoinMethod {
    type Err = TamariError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polish" => Ok(JoinMethod::Polish),
            "reversing" => Ok(JoinMethod::Reversing),
            "covering" => Ok(JoinMethod::Covering),
            _ => Err(TamariError::Parse(format!("unknown join method {s:?}"))),
        }
    }
}

pub fn join(t: &Tree, s: &Tree, method: JoinMethod) -> Result<Tree> {
    check_sizes(t, s)?;
    if t == s || t.size() == 0 {
        return Ok(t.clone());
    }
    let invariant = |e: TamariError| TamariError::InternalInvariantViolation(e.to_string());
    match method {
        JoinMethod::Polish => {
            let run = polish_run(t, s)?;
            let positive: SignedWord = run.letters().iter().take_while(|l| l.is_positive()).cloned().collect();
            act(t, &positive).map_err(invariant)
        }
        JoinMethod::Reversing => {
            let w = c_word(t, false).inverse().concat(&c_word(s, false));
            let out = reverse_right(&w);
            act(t, &out.numerator).map_err(invariant)
        }
        JoinMethod::Covering => tree_from_covering(&covering_of(t).union_closure(&covering_of(s))).map_err(invariant),
    }
}

pub fn meet(t: &Tree, s: &Tree, method: JoinMethod) -> Result<Tree> {
    check_sizes(t, s)?;
    if t == s || t.size() == 0 {
        return Ok(t.clone());
    }
    Ok(join(&t.mirror(), &s.mirror(), method)?.mirror())
}

/// `c'_T` (`primed`) or `c_T`: the NODE letter at position `k` of `⟨T⟩`
/// becomes `a_{1^{ν(k)}}`, where `ν(1) = −1`, `ν` grows by one on a
/// LEAF-LEAF step and drops by one on a NODE-NODE step. `c_T` drops the
/// final block of NODE letters.
pub fn c_word(tree: &Tree, primed: bool) -> SignedWord {
    let polish = tree.polish();
    let letters = polish.letters();
    let mut keep = letters.len();
    if !primed {
        while keep > 0 && letters[keep - 1] == PolishLetter::Node {
            keep -= 1;
        }
    }
    let mut nu: i64 = -1;
    let mut out = Vec::new();
    for k in 0..keep {
        if k > 0 {
            match (letters[k - 1], letters[k]) {
                (PolishLetter::Leaf, PolishLetter::Leaf) => nu += 1,
                (PolishLetter::Node, PolishLetter::Node) => nu -= 1,
                _ => {}
            }
        }
        if letters[k] == PolishLetter::Node {
            debug_assert!(nu >= 0);
            out.push(HatLetter::plain(Address::ones(nu.max(0) as usize)));
        }
    }
    SignedWord(out)
}

/// All size-`n` trees, in lexicographic order of their Polish words.
pub fn enumerate(n: usize) -> Result<Vec<Tree>> {
    let cap = enumeration_cap();
    if n > cap {
        return Err(TamariError::CapacityGuard { size: n, cap });
    }
    Ok(enumerate_unchecked(n))
}

fn enumerate_unchecked(n: usize) -> Vec<Tree> {
    // each size-n tree is C ∧ D with |C| + |D| = n − 1; left sizes in
    // increasing order give the lexicographic order of Polish words
    // reversed, so sort explicitly
    let mut table: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]];
    for m in 1..=n {
        let mut layer = Vec::new();
        for k in 0..m {
            for l in &table[k] {
                for r in &table[m - 1 - k] {
                    layer.push(Tree::node(l.clone(), r.clone()));
                }
            }
        }
        table.push(layer);
    }
    let mut out = table.swap_remove(n);
    out.sort_by_cached_key(|t| t.polish());
    out
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> u128 {
    (0..n).fold(1u128, |c, k| c * 2 * (2 * k as u128 + 1) / (k as u128 + 2))
}

/// Trees reachable by one left rotation, with the rotation address.
pub fn left_rotations(tree: &Tree) -> Vec<(Address, Tree)> {
    tree.skeleton()
        .into_iter()
        .filter_map(|a| act_letter(tree, &HatLetter::plain(a.clone())).map(|t| (a, t)))
        .collect()
}

/// `T_n` with its Hasse edges `T → T ∗ a_α`, as indices into `trees`.
#[derive(Debug, Clone)]
pub struct HasseDiagram {
    pub trees: Vec<Tree>,
    pub edges: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn index_of(&self, tree: &Tree) -> Option<usize> {
        self.trees.binary_search_by_key(&tree.polish(), |t| t.polish()).ok()
    }

    /// Reflexive-transitive reachability along Hasse edges, as a bit matrix.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let m = self.trees.len();
        let mut succ = vec![Vec::new(); m];
        for &(a, b) in &self.edges {
            succ[a].push(b);
        }
        (0..m)
            .map(|s| {
                let mut seen = vec![false; m];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(x) = stack.pop() {
                    for &y in &succ[x] {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tamari {\n  rankdir=BT;\n");
        for t in &self.trees {
            out.push_str(&format!("  \"{}\";\n", t.polish()));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", self.trees[a].polish(), self.trees[b].polish()));
        }
        out.push_str("}\n");
        out
    }
}

pub fn hasse(n: usize) -> Result<HasseDiagram> {
    let trees = enumerate(n)?;
    let index: HashMap<&Tree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        for (_, s) in left_rotations(t) {
            edges.push((i, index[&s]));
        }
    }
    Ok(HasseDiagram { trees, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::Side;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn w(s: &str) -> SignedWord {
        s.parse().unwrap()
    }

    #[test]
    fn covering_examples() {
        assert_eq!(covering_of(&t("(xx)x")).pairs(), vec![(1, 0), (2, 0), (2, 1)]);
        assert_eq!(covering_of(&t("x(xx)")).pairs(), vec![(2, 0), (2, 1)]);
        assert!(covering_of(&Tree::Leaf).pairs().is_empty());
    }

    #[test]
    fn covering_round_trip_examples() {
        let rel = CoveringRelation::from_pairs(2, &[(1, 0), (2, 0), (2, 1)]).unwrap();
        assert_eq!(tree_from_covering(&rel).unwrap(), t("(xx)x"));
        let rel = CoveringRelation::from_pairs(0, &[]).unwrap();
        assert_eq!(tree_from_covering(&rel).unwrap(), Tree::Leaf);
        assert!(CoveringRelation::from_pairs(2, &[(2, 0)]).is_err());
        // 1 ▷ 0 and 2 ▷ 1 without 2 ▷ 0 is not transitive
        let bad = CoveringRelation::from_pairs(2, &[(1, 0), (2, 1)]).unwrap();
        assert!(matches!(tree_from_covering(&bad), Err(TamariError::InconsistentCovering(_))));
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&t("x(xx)"), &t("(xx)x")).unwrap());
        assert!(!leq(&t("(xx)x"), &t("x(xx)")).unwrap());
        let tree = t("x((xx)x)");
        assert!(leq(&tree, &tree).unwrap());
        let (a, b) = (t("(xx)(xx)"), t("x((xx)x)"));
        assert!(!leq(&a, &b).unwrap() && !leq(&b, &a).unwrap());
        assert!(matches!(leq(&t("xx"), &t("x")), Err(TamariError::SizeMismatch { .. })));
    }

    #[test]
    fn join_and_meet_examples() {
        let a = t("x(((x(xx))x)x)");
        let b = t("(x(xx))(x(xx))");
        let expected = t("(((x(xx))x)x)x");
        for m in [JoinMethod::Polish, JoinMethod::Reversing, JoinMethod::Covering] {
            assert_eq!(join(&a, &b, m).unwrap(), expected, "{m:?}");
            assert_eq!(join(&t("(xx)(xx)"), &t("x((xx)x)"), m).unwrap(), t("((xx)x)x"));
            assert_eq!(meet(&t("(xx)(xx)"), &t("x((xx)x)"), m).unwrap(), t("x(x(xx))"));
            assert_eq!(join(&a, &a, m).unwrap(), a);
            assert_eq!(meet(&a, &a, m).unwrap(), a);
        }
        let bottom = Tree::comb(5, Side::Right);
        assert_eq!(meet(&bottom, &a, JoinMethod::Covering).unwrap(), bottom);
    }

    #[test]
    fn c_word_examples() {
        assert_eq!(c_word(&t("x(((x(xx))x)x)"), false), w("a[11] a[1] a[1]"));
        assert_eq!(c_word(&t("(x(xx))(x(xx))"), false), w("a[1] a[]"));
        for n in 0..6 {
            assert!(c_word(&Tree::comb(n, Side::Right), false).is_empty());
        }
    }

    #[test]
    fn c_word_contract() {
        for n in 0..=5 {
            for tree in enumerate(n).unwrap() {
                let c = c_word(&tree, false);
                assert_eq!(act(&Tree::comb(n, Side::Right), &c).unwrap(), tree);
                let cp = c_word(&tree, true);
                for p in 1..=3 {
                    let image = act(&Tree::comb(n + p, Side::Right), &cp).unwrap();
                    assert_eq!(image, Tree::node(tree.clone(), Tree::comb(p - 1, Side::Right)));
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(3).unwrap().len(), 5);
        assert_eq!(enumerate(4).unwrap().len(), 14);
        assert_eq!(enumerate(0).unwrap(), vec![Tree::Leaf]);
        assert_eq!(catalan(8), 1430);
        assert!(matches!(enumerate(40), Err(TamariError::CapacityGuard { .. })));
    }

    #[test]
    fn pentagon() {
        let h = hasse(3).unwrap();
        assert_eq!(h.trees.len(), 5);
        assert_eq!(h.edges.len(), 5);
        assert_eq!(h.trees[0], t("x(x(xx))"));
        assert_eq!(h.trees[4], t("((xx)x)x"));
        let dot = h.to_dot();
        assert_eq!(dot.matches("->").count(), 5);
    }
}
