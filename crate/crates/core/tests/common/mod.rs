#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use groupoid_homology::models::SftSpec;
use groupoid_homology::tfg::{Pair, PrefixTable, SftGraph, Word};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn graph(rows: &[Vec<i64>]) -> Arc<SftGraph> {
    Arc::new(SftGraph::new(SftSpec::from_rows(rows).unwrap()).unwrap())
}

pub fn shift2() -> Arc<SftGraph> {
    graph(&[vec![2]])
}

pub fn golden_mean() -> Arc<SftGraph> {
    graph(&[vec![1, 1], vec![1, 0]])
}

/// Random partition of the path space into cylinders of length at most
/// `depth`, by splitting random leaves `splits` times.
pub fn random_partition<R: Rng>(g: &SftGraph, rng: &mut R, depth: usize, splits: usize) -> Vec<Word> {
    let mut leaves = vec![g.normalized(Vec::new())];
    for _ in 0..splits {
        let open: Vec<usize> = (0..leaves.len())
            .filter(|&i| g.children(&leaves[i]).iter().all(|c| c.len() <= depth))
            .collect();
        let Some(&i) = open.choose(rng) else { break };
        let w = leaves.swap_remove(i);
        leaves.extend(g.children(&w));
    }
    leaves
}

fn classes(g: &SftGraph, words: &[Word]) -> BTreeMap<Vec<u32>, Vec<Word>> {
    let mut m: BTreeMap<Vec<u32>, Vec<Word>> = BTreeMap::new();
    for w in words {
        m.entry(g.follow(w).to_vec()).or_default().push(w.clone());
    }
    m
}

/// Random valid element on copy 1 with every word of length at most `depth`.
pub fn random_table<R: Rng>(g: &Arc<SftGraph>, rng: &mut R, depth: usize) -> PrefixTable {
    loop {
        let splits = rng.gen_range(0..8);
        let dom = random_partition(g, rng, depth, splits);
        let dc = classes(g, &dom);
        for _ in 0..50 {
            let splits = rng.gen_range(0..12);
            let ran = random_partition(g, rng, depth, splits);
            let rc = classes(g, &ran);
            let shapes_match =
                dc.len() == rc.len() && dc.iter().all(|(k, v)| rc.get(k).is_some_and(|r| r.len() == v.len()));
            if !shapes_match {
                continue;
            }
            let mut pairs = Vec::new();
            for (k, us) in &dc {
                let mut vs = rc[k].clone();
                vs.shuffle(rng);
                for (u, v) in us.iter().zip(vs) {
                    pairs.push(Pair::plain(u.clone(), v));
                }
            }
            return PrefixTable::new(g.clone(), pairs).expect("generated table is valid");
        }
    }
}
