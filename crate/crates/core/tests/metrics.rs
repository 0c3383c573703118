mod common;

use std::collections::{HashMap, HashSet, VecDeque};

use common::*;
use rand::Rng;

use tamari_core::metrics::{
    all_codes, diameter, dist, dist_plus, length_lower_bound, neighbours, pack, ratio_experiment, unpack,
    witness_family, zigzag_experiment, zigzag_pair, DEFAULT_DIAMETER_CAP,
};
use tamari_core::reversing::reverse_right;
use tamari_core::tamari::{catalan, enumerate, left_rotations};
use tamari_core::words::{act, act_letter};
use tamari_core::{Address, GroupElement, HatLetter, Side, SignedWord, TamariError, Tree};

fn rotations(tree: &Tree) -> Vec<Tree> {
    tree.skeleton()
        .into_iter()
        .flat_map(|a| {
            let l = HatLetter::plain(a);
            [act_letter(tree, &l), act_letter(tree, &l.inverse())]
        })
        .flatten()
        .collect()
}

/// Shortest signed word by iterative deepening over the action.
fn iddfs(from: &Tree, to: &Tree) -> usize {
    fn go(cur: &Tree, to: &Tree, budget: usize) -> bool {
        if cur == to {
            return true;
        }
        budget > 0 && rotations(cur).iter().any(|next| go(next, to, budget - 1))
    }
    (0..).find(|&d| go(from, to, d)).unwrap()
}

/// Plain BFS over trees, without packing.
fn bfs_all(from: &Tree, left_only: bool) -> HashMap<Tree, usize> {
    let mut seen = HashMap::from([(from.clone(), 0)]);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(x) = queue.pop_front() {
        let d = seen[&x];
        let next: Vec<Tree> =
            if left_only { left_rotations(&x).into_iter().map(|p| p.1).collect() } else { rotations(&x) };
        for y in next {
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Replaces the last leaf by a caret.
fn expand_last_leaf(tree: &Tree) -> Tree {
    match tree {
        Tree::Leaf => Tree::node(Tree::Leaf, Tree::Leaf),
        Tree::Node(l, r) => Tree::node((**l).clone(), expand_last_leaf(r)),
    }
}

#[test]
fn packing_round_trip() {
    for n in 0..=8 {
        let codes = all_codes(n);
        assert_eq!(codes.len() as u128, catalan(n));
        assert!(codes.windows(2).all(|p| p[0] < p[1]));
        for tree in enumerate(n).unwrap() {
            let c = pack(&tree);
            assert_eq!(unpack(c, n).unwrap(), tree);
            let mut want: Vec<u64> = rotations(&tree).iter().map(pack).collect();
            let mut got = neighbours(c, n);
            want.sort();
            got.sort();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn dist_matches_iterative_deepening() {
    let mut r = rng(51);
    for _ in 0..100 {
        let n = r.gen_range(0..=6);
        let (x, y) = (random_tree(&mut r, n), random_tree(&mut r, n));
        assert_eq!(dist(&x, &y).unwrap(), iddfs(&x, &y), "{x} {y}");
    }
}

#[test]
fn dist_matches_plain_bfs() {
    for n in 0..=6 {
        let trees = enumerate(n).unwrap();
        for x in trees.iter().step_by(3) {
            let all = bfs_all(x, false);
            let up = bfs_all(x, true);
            for y in &trees {
                assert_eq!(dist(x, y).unwrap(), all[y]);
                match up.get(y) {
                    Some(&d) => assert_eq!(dist_plus(x, y).unwrap(), d),
                    None => assert!(matches!(dist_plus(x, y), Err(TamariError::NotComparable))),
                }
            }
        }
    }
}

#[test]
fn dist_is_stable_under_leaf_expansion() {
    let mut r = rng(52);
    for _ in 0..100 {
        let n = r.gen_range(0..=7);
        let (x, y) = (random_tree(&mut r, n), random_tree(&mut r, n));
        assert_eq!(dist(&expand_last_leaf(&x), &expand_last_leaf(&y)).unwrap(), dist(&x, &y).unwrap());
    }
}

#[test]
fn lower_bound_never_exceeds_the_distance() {
    let mut r = rng(53);
    let mut checked = 0;
    while checked < 200 {
        let len = r.gen_range(0..7);
        let word = random_word(&mut r, len, 2, 1);
        let f = GroupElement::eval_word(&word);
        if f.neg.size() > 7 {
            continue;
        }
        let d = dist(&f.neg, &f.pos).unwrap();
        assert!(length_lower_bound(&word) <= d, "{word}");
        assert!(d <= word.a_length());
        checked += 1;
    }
}

#[test]
fn small_distances() {
    let (bottom, top) = (Tree::comb(3, Side::Right), Tree::comb(3, Side::Left));
    assert_eq!(dist(&bottom, &top).unwrap(), 2);
    assert_eq!(dist_plus(&bottom, &top).unwrap(), 2);
    assert_eq!(dist(&top, &top).unwrap(), 0);
    assert!(matches!(dist_plus(&top, &bottom), Err(TamariError::NotComparable)));
    assert!(matches!(dist(&bottom, &Tree::comb(2, Side::Left)), Err(TamariError::SizeMismatch { .. })));
    assert!(matches!(dist(&Tree::comb(30, Side::Left), &Tree::comb(30, Side::Right)), Err(TamariError::CapacityGuard { .. })));
}

#[test]
fn diameters_up_to_eight() {
    let expected = [0, 0, 1, 2, 4, 5, 7, 9, 11];
    for n in 0..=8 {
        let d = diameter(n, DEFAULT_DIAMETER_CAP).unwrap();
        assert_eq!(d, expected[n], "n = {n}");
        let lower = 2.0 * n as f64 - (70.0 * n as f64).sqrt();
        assert!(d as f64 >= lower);
    }
    // oracle for small n: eccentricities by plain BFS
    for n in 0..=6 {
        let far = enumerate(n).unwrap().iter().map(|t| *bfs_all(t, false).values().max().unwrap()).max().unwrap();
        assert_eq!(diameter(n, DEFAULT_DIAMETER_CAP).unwrap(), far);
    }
    assert!(matches!(diameter(11, DEFAULT_DIAMETER_CAP), Err(TamariError::CapacityGuard { size: 11, cap: 10 })));
}

#[test]
fn witness_family_shape() {
    for p in 0..=5 {
        let fam = witness_family(p);
        assert_eq!(fam.u.a_length(), (p + 1) * (p + 2) / 2);
        assert!(fam.u.is_positive());
        assert_eq!(fam.w.len(), 2 * p + 1);
        assert_eq!(fam.t.size(), 2 * p + 2);
        assert_eq!(act(&fam.t, &fam.u).unwrap(), fam.t_prime);
        let out = reverse_right(&fam.w);
        assert_eq!(out.numerator, fam.u);
        let root_power = if p == 0 { SignedWord::empty() } else { SignedWord(vec![HatLetter::hat(Address::root(), p)]) };
        assert_eq!(out.denominator.expand(), root_power.expand());
    }
    assert_eq!(witness_family(1).u.expand(), w("a[10] a[] a[0]"));
    assert_eq!(witness_family(1).w, w("a[10] a[1]' a[]"));
}

#[test]
fn ratio_small_cases() {
    for p in 1..=3 {
        let rep = ratio_experiment(p).unwrap();
        assert!(rep.witness_valid);
        assert_eq!(rep.dist_plus, (p + 1) * (p + 2) / 2);
        assert!(rep.dist <= rep.witness_length);
        assert_eq!(rep.witness_length, 3 * p + 1);
        let fam = witness_family(p);
        assert_eq!(bfs_all(&fam.t, true)[&fam.t_prime], rep.dist_plus);
    }
}

#[test]
fn zigzag_pairs_are_mirror_images() {
    for n in 3..=12 {
        let (z, zp) = zigzag_pair(n).unwrap();
        assert_eq!(z.size(), n);
        assert_eq!(z.mirror(), zp);
    }
    let got: Vec<usize> = (5..=8).map(|n| zigzag_experiment(n).unwrap().dist).collect();
    assert_eq!(got, vec![4, 6, 8, 11]);
    assert!(zigzag_pair(2).is_err());
}

#[test]
fn distinct_trees_have_positive_distance() {
    let mut r = rng(54);
    let mut seen = HashSet::new();
    for _ in 0..50 {
        let (x, y) = (random_tree(&mut r, 5), random_tree(&mut r, 5));
        let d = dist(&x, &y).unwrap();
        assert_eq!(d == 0, x == y);
        assert_eq!(d, dist(&y, &x).unwrap());
        seen.insert(d);
    }
    assert!(seen.len() > 2);
}
