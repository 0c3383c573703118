#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tamari_core::tamari::catalan;
use tamari_core::words::act_letter;
use tamari_core::{Address, GroupElement, HatLetter, Sign, SignedWord, Tree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random tree with `n` internal nodes.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Tree {
    if n == 0 {
        return Tree::Leaf;
    }
    let total = catalan(n);
    let mut pick = rng.gen_range(0..total);
    for k in 0..n {
        let w = catalan(k) * catalan(n - 1 - k);
        if pick < w {
            return Tree::node(random_tree(rng, k), random_tree(rng, n - 1 - k));
        }
        pick -= w;
    }
    unreachable!()
}

pub fn random_address(rng: &mut impl Rng, max_len: usize) -> Address {
    let len = rng.gen_range(0..=max_len);
    Address::from_bits((0..len).map(|_| rng.gen_bool(0.5)))
}

pub fn random_letter(rng: &mut impl Rng, max_len: usize, max_r: usize) -> HatLetter {
    let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
    HatLetter::new(random_address(rng, max_len), rng.gen_range(1..=max_r), sign)
}

pub fn random_word(rng: &mut impl Rng, len: usize, max_len: usize, max_r: usize) -> SignedWord {
    SignedWord((0..len).map(|_| random_letter(rng, max_len, max_r)).collect())
}

pub fn random_positive_word(rng: &mut impl Rng, len: usize, max_len: usize) -> SignedWord {
    SignedWord((0..len).map(|_| HatLetter::plain(random_address(rng, max_len))).collect())
}

/// A plain-letter word of length `len` whose action on `tree` is defined at
/// every prefix, chosen by a random walk in the rotation graph.
pub fn random_walk(rng: &mut impl Rng, tree: &Tree, len: usize) -> SignedWord {
    let nodes: Vec<Address> = tree.skeleton();
    let mut current = tree.clone();
    let mut out = SignedWord::empty();
    if nodes.is_empty() {
        return out;
    }
    for _ in 0..len {
        let mut moves = Vec::new();
        for addr in current.skeleton() {
            for letter in [HatLetter::plain(addr.clone()), HatLetter::plain(addr).inverse()] {
                if let Some(t) = act_letter(&current, &letter) {
                    moves.push((letter, t));
                }
            }
        }
        if moves.is_empty() {
            break;
        }
        let (letter, next) = moves.swap_remove(rng.gen_range(0..moves.len()));
        out.push(letter);
        current = next;
    }
    out
}

pub fn random_element(rng: &mut impl Rng) -> GroupElement {
    let len = rng.gen_range(0..=6);
    GroupElement::eval_word(&random_word(rng, len, 3, 2))
}

pub fn t(s: &str) -> Tree {
    s.parse().unwrap()
}

pub fn w(s: &str) -> SignedWord {
    s.parse().unwrap()
}

pub fn a(s: &str) -> Address {
    s.parse().unwrap()
}

pub fn eq_in_f(u: &SignedWord, v: &SignedWord) -> bool {
    GroupElement::eval_word(u) == GroupElement::eval_word(v)
}
