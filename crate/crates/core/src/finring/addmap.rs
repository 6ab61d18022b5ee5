use std::fmt;

use serde::{Deserialize, Serialize};

use super::ring::{FinRing, RingElem};
use super::FinRingError;

/// Additive endomorphism of a finite ring. Column `j` is the image of the
/// basis element `eⱼ`; entry `(i, j)` lives in `ℤ_{dᵢ}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AddMap {
    k: usize,
    entries: Vec<u64>,
}

impl AddMap {
    pub fn zero(ring: &FinRing) -> Self {
        let k = ring.rank();
        AddMap {
            k,
            entries: vec![0; k * k],
        }
    }

    pub fn identity(ring: &FinRing) -> Self {
        let mut m = Self::zero(ring);
        for i in 0..m.k {
            m.entries[i * m.k + i] = 1;
        }
        m
    }

    /// Row-major `k×k` entries, reduced and checked for additivity.
    pub fn from_entries(ring: &FinRing, entries: &[i64]) -> Result<Self, FinRingError> {
        let k = ring.rank();
        if entries.len() != k * k {
            return Err(FinRingError::Spec(format!("a map on this ring has {} entries", k * k)));
        }
        let d = ring.moduli();
        let mut out = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let v = entries[i * k + j].rem_euclid(d[i] as i64) as u64;
                if !(v * d[j]).is_multiple_of(d[i]) {
                    return Err(FinRingError::NotAdditive { i, j });
                }
                out.push(v);
            }
        }
        Ok(AddMap { k, entries: out })
    }

    /// The map `x ↦ f(x)` read off the basis images.
    pub fn from_fn(ring: &FinRing, f: impl Fn(&RingElem) -> RingElem) -> Result<Self, FinRingError> {
        let k = ring.rank();
        let mut entries = vec![0i64; k * k];
        for j in 0..k {
            let img = f(&ring.basis(j));
            for i in 0..k {
                entries[i * k + j] = img.0[i] as i64;
            }
        }
        Self::from_entries(ring, &entries)
    }

    pub fn left_mul(ring: &FinRing, a: &RingElem) -> Self {
        Self::from_fn(ring, |x| ring.mul(a, x)).expect("multiplication is additive")
    }

    pub fn right_mul(ring: &FinRing, a: &RingElem) -> Self {
        Self::from_fn(ring, |x| ring.mul(x, a)).expect("multiplication is additive")
    }

    /// `x ↦ ax − xa`.
    pub fn inner_derivation(ring: &FinRing, a: &RingElem) -> Self {
        Self::from_fn(ring, |x| ring.commutator(a, x)).expect("commutators are additive")
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn apply(&self, ring: &FinRing, a: &RingElem) -> RingElem {
        let d = ring.moduli();
        let mut out = vec![0u64; self.k];
        for (j, &aj) in a.0.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let e = self.entries[i * self.k + j];
                if e != 0 {
                    *o = (*o + e * aj) % d[i];
                }
            }
        }
        RingElem(out)
    }

    pub fn add(&self, ring: &FinRing, other: &AddMap) -> AddMap {
        self.zip(ring, other, |a, b, d| (a + b) % d)
    }

    pub fn sub(&self, ring: &FinRing, other: &AddMap) -> AddMap {
        self.zip(ring, other, |a, b, d| (a + d - b) % d)
    }

    fn zip(&self, ring: &FinRing, other: &AddMap, f: impl Fn(u64, u64, u64) -> u64) -> AddMap {
        let d = ring.moduli();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .enumerate()
            .map(|(idx, (&a, &b))| f(a, b, d[idx / self.k]))
            .collect();
        AddMap { k: self.k, entries }
    }
}

impl fmt::Debug for AddMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for AddMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.k {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.k {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}
