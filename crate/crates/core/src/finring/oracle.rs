//! Brute-force versions of the predicates and the solver, evaluated
//! straight from the definitions. Used to cross-check the fast paths.

use std::collections::HashMap;

use rayon::prelude::*;

use super::addmap::AddMap;
use super::ring::{FinRing, RingElem};
use super::solve::{eval_compiled, Compiled, LawSpec, Solution};
use super::{Bounds, FinRingError};

/// Every additive endomorphism, in lexicographic order of entries.
pub fn all_addmaps(ring: &FinRing, limit: u64) -> Result<Vec<AddMap>, FinRingError> {
    let k = ring.rank();
    let d = ring.moduli();
    let slots: Vec<Vec<i64>> = (0..k * k)
        .map(|e| {
            let (i, j) = (e / k, e % k);
            (0..d[i])
                .filter(|v| (v * d[j]).is_multiple_of(d[i]))
                .map(|v| v as i64)
                .collect()
        })
        .collect();
    let total = slots.iter().fold(1u64, |acc, s| acc.saturating_mul(s.len() as u64));
    if total > limit {
        return Err(FinRingError::SizeExceeded {
            size: total,
            bound: limit,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0usize; k * k];
    for _ in 0..total {
        let entries: Vec<i64> = digits.iter().enumerate().map(|(e, &g)| slots[e][g]).collect();
        out.push(AddMap::from_entries(ring, &entries)?);
        for e in (0..k * k).rev() {
            digits[e] += 1;
            if digits[e] < slots[e].len() {
                break;
            }
            digits[e] = 0;
        }
    }
    Ok(out)
}

/// The law's identities hold at every element.
pub fn law_holds_everywhere(ring: &FinRing, spec: &LawSpec, sol: &Solution) -> Result<bool, FinRingError> {
    let zero = ring.zero();
    for (p, _, _) in spec.conditions() {
        let p = Compiled::new(ring, &p, spec.m, spec.n);
        for x in ring.elements() {
            if !eval_compiled(ring, spec, sol, &p, &x, &zero)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Values of the law's main identity at every element.
fn law_values(ring: &FinRing, spec: &LawSpec, sol: &Solution) -> Result<Vec<RingElem>, FinRingError> {
    let (p, _, _) = &spec.conditions()[0];
    let p = Compiled::new(ring, p, spec.m, spec.n);
    let zero = ring.zero();
    ring.elements()
        .map(|x| eval_compiled(ring, spec, sol, &p, &x, &zero))
        .collect()
}

/// All solutions of the law by enumerating every additive map, sorted.
///
/// For generalized laws the identity is the sum of its values at `(T, 0)`
/// and `(0, T₀)`, so each map is evaluated once and pairs are matched by
/// their value tables.
pub fn solve_brute(ring: &FinRing, spec: &LawSpec, limit: u64) -> Result<Vec<Solution>, FinRingError> {
    let maps = all_addmaps(ring, limit)?;
    let mut out = Vec::new();
    if spec.law.is_generalized() {
        let base = LawSpec {
            law: spec.law.base(),
            ..*spec
        };
        let zero = AddMap::zero(ring);
        let mut by_value: HashMap<Vec<RingElem>, Vec<&AddMap>> = HashMap::new();
        for main in &maps {
            let v = law_values(
                ring,
                spec,
                &Solution {
                    main: main.clone(),
                    aux: Some(zero.clone()),
                },
            )?;
            by_value.entry(v).or_default().push(main);
        }
        for aux in &maps {
            if !law_holds_everywhere(
                ring,
                &base,
                &Solution {
                    main: aux.clone(),
                    aux: None,
                },
            )? {
                continue;
            }
            let v = law_values(
                ring,
                spec,
                &Solution {
                    main: zero.clone(),
                    aux: Some(aux.clone()),
                },
            )?;
            let key: Vec<RingElem> = v.iter().map(|e| ring.neg(e)).collect();
            for main in by_value.get(&key).into_iter().flatten() {
                out.push(Solution {
                    main: (*main).clone(),
                    aux: Some(aux.clone()),
                });
            }
        }
    } else {
        for main in &maps {
            let s = Solution {
                main: main.clone(),
                aux: None,
            };
            if law_holds_everywhere(ring, spec, &s)? {
                out.push(s);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn all_pairs(ring: &FinRing, f: impl Fn(&RingElem, &RingElem) -> bool + Sync) -> bool {
    let size = ring.size();
    (0..size * size)
        .into_par_iter()
        .all(|idx| f(&ring.element(idx / size), &ring.element(idx % size)))
}

/// `aRa = 0 ⇒ a = 0`, scanning all `a` and `x`.
pub fn is_semiprime_scan(ring: &FinRing, bounds: &Bounds) -> Result<bool, FinRingError> {
    bounds.check_size(ring.size(), bounds.pair_size)?;
    let size = ring.size();
    Ok((1..size).into_par_iter().all(|ia| {
        let a = ring.element(ia);
        ring.elements().any(|x| !ring.mul(&ring.mul(&a, &x), &a).is_zero())
    }))
}

/// `aRb = 0 ⇒ a = 0 or b = 0`, scanning all `a`, `b` and `x`.
pub fn is_prime_scan(ring: &FinRing, bounds: &Bounds) -> Result<bool, FinRingError> {
    bounds.check_size(ring.size(), bounds.triple_size)?;
    let size = ring.size();
    Ok((1..size).into_par_iter().all(|ia| {
        let a = ring.element(ia);
        (1..size).all(|ib| {
            let b = ring.element(ib);
            ring.elements().any(|x| !ring.mul(&ring.mul(&a, &x), &b).is_zero())
        })
    }))
}

pub fn center_scan(ring: &FinRing, bounds: &Bounds) -> Result<Vec<RingElem>, FinRingError> {
    bounds.check_size(ring.size(), bounds.pair_size)?;
    Ok(ring
        .elements()
        .filter(|z| ring.elements().all(|x| ring.mul(z, &x) == ring.mul(&x, z)))
        .collect())
}

/// `t·a = 0 ⇒ a = 0`, scanning all `a`.
pub fn is_torsion_free_scan(ring: &FinRing, t: u64, bounds: &Bounds) -> Result<bool, FinRingError> {
    bounds.check_size(ring.size(), bounds.max_size)?;
    let t = (t % ring.characteristic()) as i64;
    Ok(ring.elements().skip(1).all(|a| !ring.scale(t, &a).is_zero()))
}

pub fn two_sided_scan(ring: &FinRing, t: &AddMap, bounds: &Bounds) -> Result<bool, FinRingError> {
    bounds.check_size(ring.size(), bounds.pair_size)?;
    Ok(all_pairs(ring, |x, y| {
        let lhs = t.apply(ring, &ring.mul(x, y));
        lhs == ring.mul(&t.apply(ring, x), y) && lhs == ring.mul(x, &t.apply(ring, y))
    }))
}

pub fn derivation_scan(ring: &FinRing, dm: &AddMap, bounds: &Bounds) -> Result<bool, FinRingError> {
    bounds.check_size(ring.size(), bounds.pair_size)?;
    Ok(all_pairs(ring, |x, y| {
        dm.apply(ring, &ring.mul(x, y)) == ring.add(&ring.mul(&dm.apply(ring, x), y), &ring.mul(x, &dm.apply(ring, y)))
    }))
}

pub fn into_center_scan(ring: &FinRing, t: &AddMap, bounds: &Bounds) -> Result<bool, FinRingError> {
    bounds.check_size(ring.size(), bounds.pair_size)?;
    Ok(all_pairs(ring, |x, y| ring.commutator(&t.apply(ring, x), y).is_zero()))
}
