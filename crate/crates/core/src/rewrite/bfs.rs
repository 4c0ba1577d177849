//! Level-synchronous breadth-first search over hashed states.
//!
//! Frontier nodes are expanded in chunks, optionally in parallel; new states
//! are inserted sequentially in frontier order, so the discovered order is
//! the same whether or not expansion runs on several threads.

use std::collections::hash_map::Entry;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

const CHUNK: usize = 2048;

pub(crate) struct Bfs<S, L> {
    pub states: Vec<S>,
    /// Parent index of each state; the root is its own parent.
    pub parents: Vec<u32>,
    /// Edge label from the parent, when recorded.
    pub labels: Option<Vec<Option<L>>>,
    index: FxHashMap<Box<[u8]>, u32>,
    level_end: usize,
    cursor: usize,
    pub expanded: usize,
    pub frontier_peak: usize,
}

impl<S: Send + Sync, L: Send> Bfs<S, L> {
    pub fn new(start: S, key: Vec<u8>, record_labels: bool) -> Self {
        let mut index = FxHashMap::default();
        index.insert(key.into_boxed_slice(), 0);
        Bfs {
            states: vec![start],
            parents: vec![0],
            labels: record_labels.then(|| vec![None]),
            index,
            level_end: 1,
            cursor: 0,
            expanded: 0,
            frontier_peak: 1,
        }
    }

    pub fn lookup(&self, key: &[u8]) -> Option<usize> {
        self.index.get(key).map(|&i| i as usize)
    }

    /// True once every discovered state has been expanded.
    pub fn is_exhausted(&self) -> bool {
        self.cursor >= self.states.len()
    }

    /// Unexpanded states in the current level.
    pub fn frontier_len(&self) -> usize {
        self.level_end - self.cursor
    }

    /// Expands at most `max_expansions` states of the current level and
    /// returns the index range of newly discovered states.
    pub fn expand_level<K, N>(
        &mut self,
        max_expansions: usize,
        parallel: bool,
        key: &K,
        neighbors: &N,
    ) -> std::ops::Range<usize>
    where
        K: Fn(&S) -> Vec<u8> + Sync,
        N: Fn(&S) -> Vec<(L, S)> + Sync,
    {
        let first_new = self.states.len();
        let level_end = self.level_end;
        let mut done = 0;
        while self.cursor < level_end && done < max_expansions {
            let end = level_end
                .min(self.cursor + CHUNK)
                .min(self.cursor + (max_expansions - done));
            let expand = |s: &S| -> Vec<(L, S, Vec<u8>)> {
                neighbors(s)
                    .into_iter()
                    .map(|(l, n)| {
                        let k = key(&n);
                        (l, n, k)
                    })
                    .collect()
            };
            let slice = &self.states[self.cursor..end];
            let results: Vec<Vec<(L, S, Vec<u8>)>> = if parallel && slice.len() > 1 {
                slice.par_iter().map(expand).collect()
            } else {
                slice.iter().map(expand).collect()
            };
            for (offset, list) in results.into_iter().enumerate() {
                let parent = (self.cursor + offset) as u32;
                for (label, state, k) in list {
                    if let Entry::Vacant(e) = self.index.entry(k.into_boxed_slice()) {
                        e.insert(self.states.len() as u32);
                        self.states.push(state);
                        self.parents.push(parent);
                        if let Some(labels) = &mut self.labels {
                            labels.push(Some(label));
                        }
                    }
                }
            }
            done += end - self.cursor;
            self.cursor = end;
        }
        self.expanded += done;
        if self.cursor == level_end {
            self.level_end = self.states.len();
            self.frontier_peak = self.frontier_peak.max(self.level_end - self.cursor);
        }
        first_new..self.states.len()
    }

    /// Indices from the root to `idx`, inclusive.
    pub fn path_to(&self, mut idx: usize) -> Vec<usize> {
        let mut path = vec![idx];
        while idx != 0 {
            idx = self.parents[idx] as usize;
            path.push(idx);
        }
        path.reverse();
        path
    }

    /// Runs until exhausted or `budget` expansions in total.
    pub fn run<K, N>(&mut self, budget: usize, parallel: bool, key: &K, neighbors: &N)
    where
        K: Fn(&S) -> Vec<u8> + Sync,
        N: Fn(&S) -> Vec<(L, S)> + Sync,
    {
        while !self.is_exhausted() && self.expanded < budget {
            self.expand_level(budget - self.expanded, parallel, key, neighbors);
        }
    }
}
