//! Rotation distances by breadth-first search on packed Polish codes, the
//! lattice diameter, the syntactic lower bound, and the experiment families.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, TamariError};
use crate::reversing::{double_reverse, reverse_right};
use crate::tamari::{enumeration_cap, leq};
use crate::trees::{Address, PolishLetter, PolishWord, Tree};
use crate::words::{HatLetter, SignedWord};

/// Default bound on `n` for [`diameter`].
pub const DEFAULT_DIAMETER_CAP: usize = 10;

/// Largest size whose Polish code fits a `u64`.
const MAX_PACKED_SIZE: usize = 31;

/// Polish code of a tree, first letter in the most significant of the
/// `2n+1` used bits, LEAF = 0 and NODE = 1. Numeric order of codes of equal
/// size is the lexicographic order of Polish words.
pub fn pack(tree: &Tree) -> u64 {
    tree.polish().letters().iter().fold(0u64, |acc, l| (acc << 1) | (*l == PolishLetter::Node) as u64)
}

pub fn unpack(code: u64, n: usize) -> Result<Tree> {
    let len = 2 * n + 1;
    let letters = (0..len)
        .map(|p| if (code >> (len - 1 - p)) & 1 == 1 { PolishLetter::Node } else { PolishLetter::Leaf })
        .collect();
    Tree::from_polish(&PolishWord(letters))
}

/// Neighbours of a packed tree under one rotation.
struct Rotations {
    len: usize,
    start: [u8; 64],
    letters: [bool; 64],
}

impl Rotations {
    fn new(code: u64, n: usize) -> Self {
        let len = 2 * n + 1;
        let mut r = Rotations { len, start: [0; 64], letters: [false; 64] };
        let mut stack = [0u8; 64];
        let mut top = 0;
        for p in 0..len {
            let node = (code >> (len - 1 - p)) & 1 == 1;
            r.letters[p] = node;
            if node {
                // children end at p−1 (right) and start[p−1]−1 (left)
                top -= 2;
                r.start[p] = r.start[stack[top] as usize];
            } else {
                r.start[p] = p as u8;
            }
            stack[top] = p as u8;
            top += 1;
        }
        r
    }

    /// Rotates letters `first..=last` by one place; `to_front` moves the
    /// last letter to the front, otherwise the first goes to the back.
    fn rotate(&self, code: u64, first: usize, last: usize, to_front: bool) -> u64 {
        let lo = self.len - 1 - last;
        let width = last - first + 1;
        let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
        let seg = (code >> lo) & mask;
        let new_seg = if to_front {
            (seg >> 1) | ((seg & 1) << (width - 1))
        } else {
            ((seg << 1) & mask) | (seg >> (width - 1))
        };
        (code & !(mask << lo)) | (new_seg << lo)
    }

    fn left(&self, code: u64, out: &mut Vec<u64>) {
        // ⟨T0⟩⟨T1⟩⟨T2⟩◦◦ ↦ ⟨T0⟩⟨T1⟩◦⟨T2⟩◦ at every node whose right child is a node
        for e in 1..self.len {
            if self.letters[e] && self.letters[e - 1] {
                let c = self.start[e - 2] as usize;
                out.push(self.rotate(code, c, e - 1, true));
            }
        }
    }

    fn right(&self, code: u64, out: &mut Vec<u64>) {
        // ⟨T0⟩⟨T1⟩◦⟨T2⟩◦ ↦ ⟨T0⟩⟨T1⟩⟨T2⟩◦◦ at every node whose left child is a node
        for e in 1..self.len {
            if self.letters[e] {
                let q = self.start[e - 1] as usize - 1;
                if self.letters[q] {
                    out.push(self.rotate(code, q, e - 1, false));
                }
            }
        }
    }
}

/// Trees reachable by one left rotation.
pub fn left_neighbours(code: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    Rotations::new(code, n).left(code, &mut out);
    out
}

/// Trees reachable by one rotation in either direction.
pub fn neighbours(code: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let r = Rotations::new(code, n);
    r.left(code, &mut out);
    r.right(code, &mut out);
    out
}

/// Packed codes of all size-`n` trees, increasing.
pub fn all_codes(n: usize) -> Vec<u64> {
    fn go(code: u64, leaves_left: usize, excess: usize, out: &mut Vec<u64>) {
        if leaves_left == 0 && excess == 1 {
            out.push(code);
            return;
        }
        if leaves_left > 0 {
            go(code << 1, leaves_left - 1, excess + 1, out);
        }
        if excess >= 2 {
            go((code << 1) | 1, leaves_left, excess - 1, out);
        }
    }
    let mut out = Vec::new();
    go(0, n + 1, 0, &mut out);
    out
}

fn check_query(t: &Tree, s: &Tree) -> Result<usize> {
    let (n, m) = (t.size(), s.size());
    if n != m {
        return Err(TamariError::SizeMismatch { left: n, right: m });
    }
    let cap = enumeration_cap().min(MAX_PACKED_SIZE);
    if n > cap {
        return Err(TamariError::CapacityGuard { size: n, cap });
    }
    Ok(n)
}

/// Rotation distance, by bidirectional breadth-first search.
pub fn dist(t: &Tree, s: &Tree) -> Result<usize> {
    let n = check_query(t, s)?;
    let (a, b) = (pack(t), pack(s));
    if a == b {
        return Ok(0);
    }
    let mut seen = [HashMap::from([(a, 0usize)]), HashMap::from([(b, 0usize)])];
    let mut frontier = [vec![a], vec![b]];
    let mut depth = [0usize, 0usize];
    let mut buf = Vec::new();
    loop {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let other = 1 - side;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for &x in &frontier[side] {
            buf.clear();
            let r = Rotations::new(x, n);
            r.left(x, &mut buf);
            r.right(x, &mut buf);
            for &y in &buf {
                if let Some(&d) = seen[other].get(&y) {
                    let total = depth[side] + 1 + d;
                    best = Some(best.map_or(total, |b: usize| b.min(total)));
                }
                if !seen[side].contains_key(&y) {
                    seen[side].insert(y, depth[side] + 1);
                    next.push(y);
                }
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
        if next.is_empty() {
            return Err(TamariError::InternalInvariantViolation("rotation graph is disconnected".into()));
        }
        depth[side] += 1;
        frontier[side] = next;
    }
}

/// Least number of left rotations from `t` to `s`; needs `t ≤ s`.
pub fn dist_plus(t: &Tree, s: &Tree) -> Result<usize> {
    let n = check_query(t, s)?;
    if !leq(t, s)? {
        return Err(TamariError::NotComparable);
    }
    let (a, b) = (pack(t), pack(s));
    let mut seen = std::collections::HashSet::from([a]);
    let mut frontier = vec![a];
    let mut depth = 0;
    let mut buf = Vec::new();
    while !frontier.is_empty() {
        if frontier.contains(&b) {
            return Ok(depth);
        }
        let mut next = Vec::new();
        for &x in &frontier {
            buf.clear();
            Rotations::new(x, n).left(x, &mut buf);
            // left rotations increase the Polish word, so anything past the
            // target can never come back to it
            for &y in buf.iter().filter(|&&y| y <= b) {
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    Err(TamariError::InternalInvariantViolation("target unreachable although comparable".into()))
}

/// Largest rotation distance in `T_n`, using per-source breadth-first
/// search over an indexed adjacency table.
pub fn diameter(n: usize, cap: usize) -> Result<usize> {
    let cap = cap.min(MAX_PACKED_SIZE);
    if n > cap {
        return Err(TamariError::CapacityGuard { size: n, cap });
    }
    let codes = all_codes(n);
    let m = codes.len();
    let degree = n.saturating_sub(1);
    let mut adj: Vec<u32> = Vec::with_capacity(m * degree);
    for &c in &codes {
        for y in neighbours(c, n) {
            adj.push(codes.binary_search(&y).expect("neighbour is a tree of the same size") as u32);
        }
    }
    let ecc = |s: usize| -> usize {
        let mut dist = vec![u32::MAX; m];
        let mut queue = Vec::with_capacity(m);
        dist[s] = 0;
        queue.push(s as u32);
        let mut head = 0;
        let mut far = 0;
        while head < queue.len() {
            let x = queue[head] as usize;
            head += 1;
            let d = dist[x];
            far = d;
            for &y in &adj[x * degree..(x + 1) * degree] {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = d + 1;
                    queue.push(y);
                }
            }
        }
        far as usize
    };
    Ok((0..m).into_par_iter().map(ecc).max().unwrap_or(0))
}

/// `|N_er(w)|₁ + |D_er(w)|₁`, a lower bound for the length of the element.
pub fn length_lower_bound(w: &SignedWord) -> usize {
    let out = double_reverse(w);
    out.numerator.weight1() + out.denominator.weight1()
}

fn ten_power(k: usize) -> Address {
    Address::from_bits((0..k).flat_map(|_| [true, false]))
}

/// `u_p`, `w_p`, and the trees `T_p`, `T'_p` with `T_p ∗ u_p = T'_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessFamily {
    pub p: usize,
    pub u: SignedWord,
    pub w: SignedWord,
    pub t: Tree,
    pub t_prime: Tree,
}

pub fn witness_family(p: usize) -> WitnessFamily {
    let u = (0..=p).map(|k| HatLetter::hat(ten_power(p - k), k + 1)).collect();
    let mut w = SignedWord(vec![HatLetter::plain(ten_power(p))]);
    for k in (0..p).rev() {
        w.push(HatLetter::plain(ten_power(k).child(true)).inverse());
        w.push(HatLetter::plain(ten_power(k)));
    }
    // ⟨(10)^p 1⟩ and ⟨0^{p+1} 1^p⟩, each grown by one final letter so that
    // u_p acts; the last letter of a zigzag address does not matter
    let t = Tree::zigzag(&ten_power(p).child(true).child(false));
    let t_prime = Tree::zigzag(&Address::zeros(p + 1).concat(&Address::ones(p)).child(false));
    WitnessFamily { p, u, w, t, t_prime }
}

/// `Z_n` and `Z'_n` of size `n ≥ 3`: zigzags on `111(01)^k`, `111(01)^k0`
/// and their 0/1 exchanges, the period extended to reach length `n`.
pub fn zigzag_pair(n: usize) -> Result<(Tree, Tree)> {
    if n < 3 {
        return Err(TamariError::IndexOutOfRange { index: n, min: 3, max: usize::MAX });
    }
    let mut bits = vec![true, true, true];
    while bits.len() + 2 <= n {
        bits.extend([false, true]);
    }
    if bits.len() < n {
        bits.push(false);
    }
    let z = Address::from_bits(bits);
    Ok((Tree::zigzag(&z), Tree::zigzag(&z.swapped())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub p: usize,
    pub size: usize,
    pub dist: usize,
    pub dist_plus: usize,
    /// A-length of the signed witness `w_p · â_{∅,p}`.
    pub witness_length: usize,
    pub witness_valid: bool,
    /// `(p+1)(p+2)/2`
    pub predicted_dist_plus: usize,
    /// `3p+1`
    pub predicted_dist_bound: usize,
}

pub fn ratio_experiment(p: usize) -> Result<RatioReport> {
    let fam = witness_family(p);
    let witness = fam.w.concat(&SignedWord(vec![HatLetter::hat(Address::root(), p)]));
    let witness_valid = crate::words::act(&fam.t, &witness).map(|x| x == fam.t_prime).unwrap_or(false);
    Ok(RatioReport {
        p,
        size: fam.t.size(),
        dist: dist(&fam.t, &fam.t_prime)?,
        dist_plus: dist_plus(&fam.t, &fam.t_prime)?,
        witness_length: witness.a_length(),
        witness_valid,
        predicted_dist_plus: (p + 1) * (p + 2) / 2,
        predicted_dist_bound: 3 * p + 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZigzagReport {
    pub n: usize,
    pub z: Tree,
    pub z_prime: Tree,
    pub dist: usize,
    pub predicted: i64,
}

pub fn zigzag_experiment(n: usize) -> Result<ZigzagReport> {
    let (z, z_prime) = zigzag_pair(n)?;
    Ok(ZigzagReport { n, dist: dist(&z, &z_prime)?, z, z_prime, predicted: 2 * n as i64 - 6 })
}

/// `(a_{1^{p−1}} … a_1 a_∅)⁻¹ a_{1^p}^q`
pub fn sharp_word(p: usize, q: usize) -> SignedWord {
    let den: SignedWord = (0..p).rev().map(|i| HatLetter::plain(Address::ones(i))).collect();
    let num: SignedWord = std::iter::repeat(HatLetter::plain(Address::ones(p))).take(q).collect();
    den.inverse().concat(&num)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpReport {
    pub p: usize,
    pub q: usize,
    pub numerator: SignedWord,
    pub denominator: SignedWord,
    pub a_length: usize,
    /// `p + q + pq`
    pub bound: usize,
    pub steps: usize,
}

pub fn sharp_experiment(p: usize, q: usize) -> SharpReport {
    let out = reverse_right(&sharp_word(p, q));
    SharpReport {
        p,
        q,
        a_length: out.a_length(),
        bound: p + q + p * q,
        steps: out.steps,
        numerator: out.numerator,
        denominator: out.denominator,
    }
}
