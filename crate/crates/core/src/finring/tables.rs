use super::ring::FinRing;
use super::FinRingError;

/// Every associative multiplication on `ℤ_{d₁} ⊕ … ⊕ ℤ_{d_k}`, in the
/// order of their structure constants. Includes the zero ring structure.
pub fn associative_tables(moduli: &[u64]) -> Result<Vec<FinRing>, FinRingError> {
    let k = moduli.len();
    // admissible values for each structure constant: c·dᵢ ≡ c·dⱼ ≡ 0 (mod d_l)
    let mut slots: Vec<Vec<u64>> = Vec::with_capacity(k * k * k);
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let dl = moduli[l];
                slots.push(
                    (0..dl)
                        .filter(|c| (c * moduli[i]).is_multiple_of(dl) && (c * moduli[j]).is_multiple_of(dl))
                        .collect(),
                );
            }
        }
    }
    let total: u64 = slots.iter().map(|s| s.len() as u64).product();
    if total > 1 << 20 {
        return Err(FinRingError::SizeExceeded {
            size: total,
            bound: 1 << 20,
        });
    }
    let label: Vec<String> = moduli.iter().map(|d| format!("Z{d}")).collect();
    let label = label.join("+");
    let mut out = Vec::new();
    let mut digits = vec![0usize; slots.len()];
    for _ in 0..total {
        let mut mult = vec![vec![vec![0u64; k]; k]; k];
        for (s, &dg) in digits.iter().enumerate() {
            mult[s / (k * k)][(s / k) % k][s % k] = slots[s][dg];
        }
        match FinRing::from_table(moduli.to_vec(), mult) {
            Ok(r) => {
                let idx = out.len();
                out.push(r.with_name(format!("{label}#{idx}")));
            }
            Err(FinRingError::NonAssociative { .. }) => {}
            Err(e) => return Err(e),
        }
        for (s, dg) in digits.iter_mut().enumerate() {
            *dg += 1;
            if *dg < slots[s].len() {
                break;
            }
            *dg = 0;
        }
    }
    Ok(out)
}

/// All rings on the additive groups `ℤ₂`, `ℤ₃`, `ℤ₂⊕ℤ₂` and `ℤ₂⊕ℤ₃`.
pub fn small_rings() -> Vec<FinRing> {
    [&[2][..], &[3], &[2, 2], &[2, 3]]
        .iter()
        .flat_map(|m| associative_tables(m).expect("small groups"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        // on ℤ_p the product is e·e = c·e for any c
        assert_eq!(associative_tables(&[2]).unwrap().len(), 2);
        assert_eq!(associative_tables(&[3]).unwrap().len(), 3);
    }

    #[test]
    fn coprime_sum_splits() {
        // ℤ₂⊕ℤ₃ forces eᵢ·eⱼ = 0 across components
        assert_eq!(associative_tables(&[2, 3]).unwrap().len(), 6);
    }

    #[test]
    fn klein_group_contains_known_rings() {
        let rings = associative_tables(&[2, 2]).unwrap();
        let f2xf2 = FinRing::product(&FinRing::zn(2).unwrap(), &FinRing::zn(2).unwrap()).unwrap();
        assert!(rings.iter().any(|r| r.table() == f2xf2.table()));
        assert!(rings
            .iter()
            .any(|r| r.table().iter().flatten().flatten().all(|&c| c == 0)));
    }
}
