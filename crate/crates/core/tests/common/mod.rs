#![allow(dead_code)]

use baer_core::Commutator;

/// Every binary tree with `w` leaves over `x1..xm`.
pub fn all_trees(m: u32, w: u32) -> Vec<Commutator> {
    if w == 1 {
        return (1..=m).map(Commutator::x).collect();
    }
    let mut out = Vec::new();
    for wl in 1..w {
        let left = all_trees(m, wl);
        let right = all_trees(m, w - wl);
        for l in &left {
            for r in &right {
                out.push(Commutator::bracket(l, r));
            }
        }
    }
    out
}

/// Basic commutators of weight `w` by filtering every tree.
pub fn brute_basic(m: u32, w: u32) -> Vec<Commutator> {
    let mut v: Vec<_> = all_trees(m, w)
        .into_iter()
        .filter(Commutator::is_basic)
        .collect();
    v.sort();
    v
}

/// Lyndon words of length `w` over `m` letters.
pub fn necklaces(m: u32, w: u32) -> u64 {
    let mut count = 0;
    let mut word = vec![0u32; w as usize];
    'words: loop {
        let rotations_larger = (1..word.len()).all(|s| {
            let rotated: Vec<u32> = word[s..].iter().chain(&word[..s]).copied().collect();
            word < rotated
        });
        if rotations_larger {
            count += 1;
        }
        for letter in word.iter_mut() {
            *letter += 1;
            if *letter < m {
                continue 'words;
            }
            *letter = 0;
        }
        return count;
    }
}
