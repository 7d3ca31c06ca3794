//! Finite formal linear combinations of canonical expressions.

use crate::scalars::{nat_embed, Scalar, Semiring};
use std::collections::BTreeMap;

/// A finite formal sum with non-zero coefficients, keyed in term order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FinSum<K: Ord + Clone> {
    ring: Semiring,
    entries: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> FinSum<K> {
    pub fn zero(ring: Semiring) -> FinSum<K> {
        FinSum { ring, entries: BTreeMap::new() }
    }

    pub fn singleton(ring: Semiring, key: K) -> FinSum<K> {
        let mut s = FinSum::zero(ring);
        s.add_entry(key, ring.one());
        s
    }

    pub fn from_entries(ring: Semiring, entries: impl IntoIterator<Item = (K, Scalar)>) -> FinSum<K> {
        let mut s = FinSum::zero(ring);
        for (k, v) in entries {
            s.add_entry(k, v);
        }
        s
    }

    pub fn ring(&self) -> Semiring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.entries.get(key).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn support(&self) -> Vec<&K> {
        self.entries.keys().collect()
    }

    /// Add `coeff * key`, dropping the entry if the total cancels to zero.
    pub fn add_entry(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let ring = self.ring;
        let cur = self.entries.remove(&key);
        let total = match cur {
            Some(c) => ring.add(&c, &coeff),
            None => coeff,
        };
        if !total.is_zero() {
            self.entries.insert(key, total);
        }
    }

    pub fn add_nat(&mut self, key: K, n: u64) {
        let c = nat_embed(self.ring, n);
        self.add_entry(key, c);
    }

    pub fn add(&self, other: &FinSum<K>) -> FinSum<K> {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_entry(k.clone(), v.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &FinSum<K>) {
        for (k, v) in other.iter() {
            self.add_entry(k.clone(), v.clone());
        }
    }

    pub fn scaled(&self, a: &Scalar) -> FinSum<K> {
        let mut out = FinSum::zero(self.ring);
        for (k, v) in self.iter() {
            out.add_entry(k.clone(), self.ring.mul(a, v));
        }
        out
    }

    /// Linear extension of a key transformation.
    pub fn map<J: Ord + Clone>(&self, f: impl Fn(&K) -> J) -> FinSum<J> {
        let mut out = FinSum::zero(self.ring);
        for (k, v) in self.iter() {
            out.add_entry(f(k), v.clone());
        }
        out
    }

    /// Linear extension of a key-to-sum transformation.
    pub fn flat_map<J: Ord + Clone>(&self, f: impl Fn(&K) -> FinSum<J>) -> FinSum<J> {
        let mut out = FinSum::zero(self.ring);
        for (k, v) in self.iter() {
            out.add_assign(&f(k).scaled(v));
        }
        out
    }

    pub fn retain(&mut self, f: impl Fn(&K) -> bool) {
        self.entries.retain(|k, _| f(k));
    }
}

/// Bilinear combination of two sums through a key constructor.
pub fn combine<A, B, K>(
    a: &FinSum<A>,
    b: &FinSum<B>,
    f: impl Fn(&A, &B) -> K,
) -> FinSum<K>
where
    A: Ord + Clone,
    B: Ord + Clone,
    K: Ord + Clone,
{
    let ring = a.ring();
    let mut out = FinSum::zero(ring);
    for (ka, va) in a.iter() {
        for (kb, vb) in b.iter() {
            out.add_entry(f(ka, kb), ring.mul(va, vb));
        }
    }
    out
}
