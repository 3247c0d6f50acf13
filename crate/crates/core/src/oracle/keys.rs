use num_bigint::BigUint;
use rayon::slice::ParallelSliceMut;

use crate::ff::FqElem;

/// A multiset of dense coefficient vectors, packed into `u128` when the
/// key space allows it; `finish` sorts and removes duplicates.
pub(crate) enum Keys {
    Small { q: u128, keys: Vec<u128> },
    Large(Vec<Box<[u32]>>),
}

impl Keys {
    pub(crate) fn new(q: u32, len: usize) -> Self {
        let space = BigUint::from(q).pow(len as u32);
        if space.bits() <= 127 {
            Keys::Small { q: q as u128, keys: Vec::new() }
        } else {
            Keys::Large(Vec::new())
        }
    }

    pub(crate) fn push(&mut self, v: &[FqElem]) {
        match self {
            Keys::Small { q, keys } => keys.push(v.iter().rev().fold(0u128, |acc, c| acc * *q + c.index() as u128)),
            Keys::Large(keys) => keys.push(v.iter().map(|c| c.index()).collect()),
        }
    }

    pub(crate) fn append(mut self, other: Keys) -> Keys {
        match (&mut self, other) {
            (Keys::Small { keys, .. }, Keys::Small { keys: more, .. }) => keys.extend(more),
            (Keys::Large(keys), Keys::Large(more)) => keys.extend(more),
            _ => unreachable!("keys of one query share a representation"),
        }
        self
    }

    pub(crate) fn finish(&mut self) {
        match self {
            Keys::Small { keys, .. } => {
                keys.par_sort_unstable();
                keys.dedup();
            }
            Keys::Large(keys) => {
                keys.sort_unstable();
                keys.dedup();
            }
        }
    }

    /// Membership; only meaningful after [`Keys::finish`].
    pub(crate) fn contains(&self, v: &[FqElem]) -> bool {
        match self {
            Keys::Small { q, keys } => {
                let k = v.iter().rev().fold(0u128, |acc, c| acc * *q + c.index() as u128);
                keys.binary_search(&k).is_ok()
            }
            Keys::Large(keys) => {
                let k: Box<[u32]> = v.iter().map(|c| c.index()).collect();
                keys.binary_search(&k).is_ok()
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Keys::Small { keys, .. } => keys.len(),
            Keys::Large(keys) => keys.len(),
        }
    }
}
