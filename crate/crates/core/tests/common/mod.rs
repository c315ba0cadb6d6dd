//! Brute-force oracles. They recompute adjacency from the points and edges
//! and try every function, sharing nothing with the search code beyond the
//! image type.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, VecDeque};

use digitop::{AdjacencySpec, DigitalImage};

/// Adjacency matrix rebuilt from the image description.
pub fn adjacency(x: &DigitalImage) -> Vec<Vec<bool>> {
    let n = x.len();
    let mut adj = vec![vec![false; n]; n];
    match x.adjacency() {
        AdjacencySpec::Ct(t) => {
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let p = x.point(a).coords();
                    let q = x.point(b).coords();
                    let diffs: Vec<i64> = p.iter().zip(q).map(|(u, v)| (u - v).abs()).collect();
                    let ones = diffs.iter().filter(|&&d| d == 1).count();
                    adj[a][b] = diffs.iter().all(|&d| d <= 1) && ones >= 1 && ones <= *t;
                }
            }
        }
        AdjacencySpec::Explicit(edges) => {
            for &(a, b) in edges {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    adj
}

/// Every function `x -> y` that sends adjacent points to equal or adjacent
/// points, in lexicographic order of assignments.
pub fn maps(x: &DigitalImage, y: &DigitalImage) -> Vec<Vec<usize>> {
    let (n, m) = (x.len(), y.len());
    let ax = adjacency(x);
    let ay = adjacency(y);
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    loop {
        let ok = (0..n).all(|a| (0..n).all(|b| !ax[a][b] || f[a] == f[b] || ay[f[a]][f[b]]));
        if ok {
            out.push(f.clone());
        }
        // odometer, last position fastest
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            f[k] += 1;
            if f[k] < m {
                break;
            }
            f[k] = 0;
        }
    }
}

pub fn agreement(fs: &[&Vec<usize>]) -> usize {
    (0..fs[0].len()).filter(|&p| fs.iter().all(|f| f[p] == fs[0][p])).count()
}

/// `CS_2` by the double loop over all pairs.
pub fn cs2(x: &DigitalImage, y: &DigitalImage) -> BTreeSet<usize> {
    let all = maps(x, y);
    let mut out = BTreeSet::new();
    for f in &all {
        for g in &all {
            out.insert(agreement(&[f, g]));
        }
    }
    out
}

/// `CS_3` by the triple loop.
pub fn cs3(x: &DigitalImage, y: &DigitalImage) -> BTreeSet<usize> {
    let all = maps(x, y);
    let mut out = BTreeSet::new();
    for f in &all {
        for g in &all {
            for h in &all {
                out.insert(agreement(&[f, g, h]));
            }
        }
    }
    out
}

pub fn fixed_spectrum(x: &DigitalImage) -> BTreeSet<usize> {
    maps(x, x)
        .iter()
        .map(|f| f.iter().enumerate().filter(|(p, &v)| *p == v).count())
        .collect()
}

/// Class of `f` in the full one-step homotopy graph on all maps.
pub fn class(x: &DigitalImage, y: &DigitalImage, f: &[usize]) -> BTreeSet<Vec<usize>> {
    let all = maps(x, y);
    let ay = adjacency(y);
    let close = |g: &Vec<usize>, h: &Vec<usize>| g.iter().zip(h).all(|(&u, &v)| u == v || ay[u][v]);
    let start = all.iter().position(|g| g == f).expect("f is continuous");
    let mut seen = vec![false; all.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for j in 0..all.len() {
            if !seen[j] && close(&all[i], &all[j]) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    (0..all.len()).filter(|&i| seen[i]).map(|i| all[i].clone()).collect()
}

/// `HCS(f, g)` over the product of the two classes.
pub fn hcs2(x: &DigitalImage, y: &DigitalImage, f: &[usize], g: &[usize]) -> BTreeSet<usize> {
    let cf = class(x, y, f);
    let cg = class(x, y, g);
    let mut out = BTreeSet::new();
    for a in &cf {
        for b in &cg {
            out.insert(agreement(&[a, b]));
        }
    }
    out
}

/// `m_j(X)` by trying every multiset of `j` maps from the class of the identity.
pub fn m_j(x: &DigitalImage, j: usize) -> usize {
    let id: Vec<usize> = (0..x.len()).collect();
    let cls: Vec<Vec<usize>> = class(x, x, &id).into_iter().collect();
    let mut best = x.len();
    let mut idx = vec![0usize; j];
    loop {
        let fs: Vec<&Vec<usize>> = idx.iter().map(|&i| &cls[i]).collect();
        best = best.min(agreement(&fs));
        let mut k = j;
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cls.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All subset sums of the component sizes.
pub fn subset_sums(sizes: &[usize]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << sizes.len()) {
        out.insert((0..sizes.len()).filter(|&i| mask >> i & 1 == 1).map(|i| sizes[i]).sum());
    }
    out
}
