use std::collections::BTreeMap;

use super::bracket::BracketWord;
use super::ncpoly::WeightedAlphabet;
use crate::error::{Error, Result};

/// Strictly decreasing `k`-element sequences drawn from `0..m`, in
/// lexicographic order of their increasing rearrangements.
fn decreasing_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.iter().rev().copied().collect());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(0, m, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Free generating set of the Lie ideal spanned by elements of degree ≥ 2,
/// grouped by degree up to `k_max`.
///
/// With `ξ_1..ξ_m` the weight-1 generators (0-based `0..m` here), the items
/// are:
/// 1. `Pξ_i` and `[ξ_i, ξ_j]` for `i < j < m`;
/// 2. `ξ_j` and `[ξ_i, ξ_j]` for `i < m ≤ j`;
/// 3. `ad(ξ_{i_1})⋯ad(ξ_{i_{k-3}}) ad(ξ_j)² (ξ_{i_{k-2}})` with
///    `i_1 > ⋯ > i_{k-2}` and `j` distinct from all of them;
/// 4. `ad(ξ_{i_1})⋯ad(ξ_{i_{k-1}}) (ξ_{i_k})` with `i_1 > ⋯ > i_{k-1}`,
///    `i_{k-1} < i_k < m` and `i_k` distinct from the others;
/// 5. `ad(ξ_{i_1})⋯ad(ξ_{i_{k-1}}) (ξ_{i_k})` with `i_1 > ⋯ > i_{k-1}` and
///    `i_k ≥ m`,
///
/// where families 3 to 5 run over `k ≥ 3` letters.
pub fn enumerate_y(alphabet: &WeightedAlphabet, k_max: u32) -> Result<BTreeMap<u32, Vec<BracketWord>>> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be at least 2".into()));
    }
    let m = alphabet.m();
    let d = alphabet.d();
    let mut items: Vec<BracketWord> = Vec::new();
    use BracketWord::{Leaf, Square};

    items.extend((0..m).map(Square));
    for i in 0..m {
        for j in i + 1..m {
            items.push(BracketWord::bracket(Leaf(i), Leaf(j)));
        }
    }
    // families 2 and 5 share a shape: a decreasing ad-prefix of weight-1
    // letters applied to a heavier generator
    for len in 0..m.min(k_max as usize) + 1 {
        for prefix in decreasing_subsets(m, len) {
            for j in m..d {
                items.push(BracketWord::ad_word(&prefix, Leaf(j)));
            }
        }
    }
    for k in 3..=(k_max as usize) {
        for set in decreasing_subsets(m, k - 2) {
            let (last, prefix) = set.split_last().expect("k >= 3");
            for j in (0..m).filter(|j| !set.contains(j)) {
                let mut ads = prefix.to_vec();
                ads.extend([j, j]);
                items.push(BracketWord::ad_word(&ads, Leaf(*last)));
            }
        }
        for set in decreasing_subsets(m, k - 1) {
            let (smallest, prefix) = set.split_last().expect("k >= 3");
            for ik in (smallest + 1..m).filter(|i| !prefix.contains(i)) {
                items.push(BracketWord::ad_word(&set, Leaf(ik)));
            }
        }
    }

    let mut grouped: BTreeMap<u32, Vec<BracketWord>> = BTreeMap::new();
    for bw in items {
        let w = bw.weight(alphabet);
        if w <= k_max {
            grouped.entry(w).or_default().push(bw);
        }
    }
    Ok(grouped)
}

/// Coefficients through degree `n` of `1 - (1+t)^m (1 - Σ t^{τ_i})`, the
/// degree profile of the generating set built by [`enumerate_y`].
pub fn y_count_series(alphabet: &WeightedAlphabet, n: usize) -> Vec<i64> {
    let mut binom = vec![0i64; n + 1];
    let mut c = 1i64;
    for (k, slot) in binom.iter_mut().enumerate().take(alphabet.m() + 1) {
        *slot = c;
        c = c * (alphabet.m() - k) as i64 / (k as i64 + 1);
    }
    let mut free = vec![0i64; n + 1];
    free[0] = 1;
    for &w in alphabet.weights() {
        if (w as usize) <= n {
            free[w as usize] -= 1;
        }
    }
    let mut out = vec![0i64; n + 1];
    for i in 0..=n {
        for j in 0..=n - i {
            out[i + j] -= binom[i] * free[j];
        }
    }
    out[0] += 1;
    out
}

/// The words `ad(σ_1)⋯ad(σ_n)(ξ)` with every `σ_i ∈ subset` and `ξ` outside
/// it, of weight at most `n_max`, ordered by `n`, then the `σ` sequence,
/// then `ξ`.
pub fn elimination_basis(
    alphabet: &WeightedAlphabet,
    subset: &[usize],
    n_max: u32,
) -> Result<Vec<BracketWord>> {
    let d = alphabet.d();
    let mut s: Vec<usize> = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != subset.len() || s.iter().any(|&i| i >= d) || s.len() >= d {
        return Err(Error::InvalidArgument(
            "subset must consist of distinct generators and be proper".into(),
        ));
    }
    let rest: Vec<usize> = (0..d).filter(|i| !s.contains(i)).collect();
    let min_rest = rest.iter().map(|&i| alphabet.weight(i)).min().expect("proper subset");
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 0)];
    while !layer.is_empty() {
        for (ads, w) in &layer {
            for &x in &rest {
                if w + alphabet.weight(x) <= n_max {
                    out.push(BracketWord::ad_word(ads, BracketWord::Leaf(x)));
                }
            }
        }
        layer = layer
            .iter()
            .flat_map(|(ads, w)| {
                s.iter().filter_map(move |&sigma| {
                    let nw = w + alphabet.weight(sigma);
                    (nw + min_rest <= n_max).then(|| {
                        let mut next = ads.clone();
                        next.push(sigma);
                        (next, nw)
                    })
                })
            })
            .collect();
    }
    Ok(out)
}
