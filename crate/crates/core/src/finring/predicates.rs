use rayon::prelude::*;

use super::addmap::AddMap;
use super::lattice::Lattice;
use super::ring::{FinRing, RingElem};
use super::{Bounds, FinRingError};

/// `aRa = 0` only for `a = 0`. Since `x ↦ axa` is additive it suffices to
/// test `a·eⱼ·a` on the basis.
pub fn is_semiprime(ring: &FinRing, bounds: &Bounds) -> Result<bool, FinRingError> {
    bounds.check_size(ring.size(), bounds.max_size)?;
    let k = ring.rank();
    Ok((1..ring.size()).into_par_iter().all(|idx| {
        let a = ring.element(idx);
        (0..k).any(|j| !ring.mul(&ring.mul(&a, &ring.basis(j)), &a).is_zero())
    }))
}

/// `aRb = 0` forces `a = 0` or `b = 0`. For each nonzero `a` the right
/// annihilator of `aR` is a subgroup, computed exactly.
pub fn is_prime(ring: &FinRing, bounds: &Bounds) -> Result<bool, FinRingError> {
    bounds.check_size(ring.size(), bounds.max_size)?;
    let k = ring.rank();
    let d = ring.moduli();
    Ok((1..ring.size()).into_par_iter().all(|idx| {
        let a = ring.element(idx);
        let mut lat = Lattice::full(k, ring.characteristic());
        for j in 0..k {
            let aej = ring.mul(&a, &ring.basis(j));
            let cols: Vec<RingElem> = (0..k).map(|i| ring.mul(&aej, &ring.basis(i))).collect();
            for (s, &ds) in d.iter().enumerate() {
                let row: Vec<i64> = cols.iter().map(|c| c.0[s] as i64).collect();
                if row.iter().any(|&c| c != 0) {
                    lat.constrain(&row, ds);
                }
            }
        }
        lat.pivots() == d
    }))
}

/// Elements commuting with every element, in index order.
pub fn center(ring: &FinRing, bounds: &Bounds) -> Result<Vec<RingElem>, FinRingError> {
    bounds.check_size(ring.size(), bounds.max_size)?;
    let k = ring.rank();
    Ok((0..ring.size())
        .into_par_iter()
        .map(|idx| ring.element(idx))
        .filter(|z| (0..k).all(|j| ring.commutator(z, &ring.basis(j)).is_zero()))
        .collect())
}

/// `T(xy) = T(x)y = xT(y)` for all `x, y`, checked on basis pairs.
pub fn verify_two_sided(ring: &FinRing, t: &AddMap) -> bool {
    let k = ring.rank();
    let img: Vec<RingElem> = (0..k).map(|i| t.apply(ring, &ring.basis(i))).collect();
    (0..k).all(|i| {
        (0..k).all(|j| {
            let (ei, ej) = (ring.basis(i), ring.basis(j));
            let lhs = t.apply(ring, &ring.mul(&ei, &ej));
            lhs == ring.mul(&img[i], &ej) && lhs == ring.mul(&ei, &img[j])
        })
    })
}

/// `D(xy) = D(x)y + xD(y)` for all `x, y`, checked on basis pairs.
pub fn verify_derivation(ring: &FinRing, dm: &AddMap) -> bool {
    let k = ring.rank();
    let img: Vec<RingElem> = (0..k).map(|i| dm.apply(ring, &ring.basis(i))).collect();
    (0..k).all(|i| {
        (0..k).all(|j| {
            let (ei, ej) = (ring.basis(i), ring.basis(j));
            let lhs = dm.apply(ring, &ring.mul(&ei, &ej));
            lhs == ring.add(&ring.mul(&img[i], &ej), &ring.mul(&ei, &img[j]))
        })
    })
}

/// The image lies in the center.
pub fn maps_into_center(ring: &FinRing, t: &AddMap) -> bool {
    let k = ring.rank();
    (0..k).all(|i| {
        let v = t.apply(ring, &ring.basis(i));
        (0..k).all(|j| ring.commutator(&v, &ring.basis(j)).is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let b = Bounds::default();
        let z4 = FinRing::zn(4).unwrap();
        let z6 = FinRing::zn(6).unwrap();
        let m2 = FinRing::mat(2, 2).unwrap();
        assert!(!is_semiprime(&z4, &b).unwrap());
        assert!(is_semiprime(&z6, &b).unwrap());
        assert!(!is_prime(&z6, &b).unwrap());
        assert!(is_prime(&m2, &b).unwrap());
        assert!(is_prime(&FinRing::zn(7).unwrap(), &b).unwrap());
        assert_eq!(center(&m2, &b).unwrap().len(), 2);
    }

    #[test]
    fn inner_derivations_are_derivations() {
        let r = FinRing::mat(2, 3).unwrap();
        let a = r.elem(&[1, 2, 0, 1]);
        let dm = AddMap::inner_derivation(&r, &a);
        assert!(verify_derivation(&r, &dm));
        assert!(!maps_into_center(&r, &dm));
        assert!(!verify_two_sided(&r, &AddMap::left_mul(&r, &a)));
        let z = r.elem(&[2, 0, 0, 2]);
        assert!(verify_two_sided(&r, &AddMap::left_mul(&r, &z)));
    }
}
