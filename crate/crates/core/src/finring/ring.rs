use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::FinRingError;

/// Element of a finite ring as residues against the additive basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElem(pub Vec<u64>);

impl RingElem {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A ring structure on `ℤ_{d₁} ⊕ … ⊕ ℤ_{d_k}` given by the products of
/// basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinRing {
    name: String,
    moduli: Vec<u64>,
    /// `consts[(i*k + j)*k + l]` is component `l` of `eᵢ·eⱼ`.
    consts: Vec<u64>,
    /// Nonzero structure constants `(i, j, l, c)`.
    sparse: Vec<(usize, usize, usize, u64)>,
}

impl FinRing {
    /// Builds a ring from structure constants, checking that the product is
    /// well defined on the additive group and associative.
    pub fn from_table(moduli: Vec<u64>, mult: Vec<Vec<Vec<u64>>>) -> Result<Self, FinRingError> {
        let k = moduli.len();
        if k == 0 {
            return Err(FinRingError::Spec(
                "a ring needs at least one additive generator".into(),
            ));
        }
        if let Some(&d) = moduli.iter().find(|&&d| d < 2) {
            return Err(FinRingError::Spec(format!("modulus {d} is below 2")));
        }
        if mult.len() != k
            || mult
                .iter()
                .any(|row| row.len() != k || row.iter().any(|c| c.len() != k))
        {
            return Err(FinRingError::Spec(format!(
                "multiplication table must be {k}×{k} with products of length {k}"
            )));
        }
        let mut consts = vec![0u64; k * k * k];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    consts[(i * k + j) * k + l] = mult[i][j][l] % moduli[l];
                }
            }
        }
        Self::from_consts(format!("table{moduli:?}"), moduli, consts)
    }

    fn from_consts(name: String, moduli: Vec<u64>, consts: Vec<u64>) -> Result<Self, FinRingError> {
        let k = moduli.len();
        let mut sparse = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let c = consts[(i * k + j) * k + l];
                    if c != 0 {
                        sparse.push((i, j, l, c));
                    }
                }
            }
        }
        let ring = FinRing {
            name,
            moduli,
            consts,
            sparse,
        };
        ring.check_well_defined()?;
        ring.check_associative()?;
        Ok(ring)
    }

    fn check_well_defined(&self) -> Result<(), FinRingError> {
        let k = self.rank();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let c = self.consts[(i * k + j) * k + l];
                    let dl = self.moduli[l];
                    if !(c * self.moduli[i]).is_multiple_of(dl) || !(c * self.moduli[j]).is_multiple_of(dl) {
                        return Err(FinRingError::IllDefined { i, j });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<(), FinRingError> {
        let k = self.rank();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(l));
                    if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                        return Err(FinRingError::NonAssociative { i, j, l });
                    }
                }
            }
        }
        Ok(())
    }

    /// `ℤ_n` with its usual product.
    pub fn zn(n: u64) -> Result<Self, FinRingError> {
        if n < 2 {
            return Err(FinRingError::Spec(format!("Z_{n}: modulus must be at least 2")));
        }
        Self::from_consts(format!("Z{n}"), vec![n], vec![1 % n])
    }

    /// `k×k` matrices over `ℤ_n`, basis the matrix units `e_ab` at index `a·k + b`.
    pub fn mat(k: usize, n: u64) -> Result<Self, FinRingError> {
        if k == 0 || n < 2 {
            return Err(FinRingError::Spec(format!("Mat({k}, {n}) needs k ≥ 1 and n ≥ 2")));
        }
        let r = k * k;
        let mut consts = vec![0u64; r * r * r];
        for a in 0..k {
            for b in 0..k {
                for d in 0..k {
                    let (i, j, l) = (a * k + b, b * k + d, a * k + d);
                    consts[(i * r + j) * r + l] = 1;
                }
            }
        }
        Self::from_consts(format!("Mat({k},{n})"), vec![n; r], consts)
    }

    pub fn product(a: &FinRing, b: &FinRing) -> Result<Self, FinRingError> {
        let (ka, kb) = (a.rank(), b.rank());
        let k = ka + kb;
        let mut consts = vec![0u64; k * k * k];
        for &(i, j, l, c) in &a.sparse {
            consts[(i * k + j) * k + l] = c;
        }
        for &(i, j, l, c) in &b.sparse {
            let (i, j, l) = (i + ka, j + ka, l + ka);
            consts[(i * k + j) * k + l] = c;
        }
        let moduli = a.moduli.iter().chain(&b.moduli).copied().collect();
        Self::from_consts(format!("{}x{}", a.name, b.name), moduli, consts)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of additive generators.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Order of the ring, saturating at `u64::MAX`.
    pub fn size(&self) -> u64 {
        self.moduli.iter().fold(1u64, |acc, &d| acc.saturating_mul(d))
    }

    /// Exponent of the additive group.
    pub fn characteristic(&self) -> u64 {
        self.moduli.iter().fold(1u64, |acc, &d| acc.lcm(&d))
    }

    /// Structure constants as a nested table, `mult[i][j]` = `eᵢ·eⱼ`.
    pub fn table(&self) -> Vec<Vec<Vec<u64>>> {
        let k = self.rank();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| self.consts[(i * k + j) * k..(i * k + j + 1) * k].to_vec())
                    .collect()
            })
            .collect()
    }

    pub fn zero(&self) -> RingElem {
        RingElem(vec![0; self.rank()])
    }

    pub fn basis(&self, i: usize) -> RingElem {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        RingElem(v)
    }

    pub fn elem(&self, residues: &[i64]) -> RingElem {
        RingElem(
            residues
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &d)| a.rem_euclid(d as i64) as u64)
                .collect(),
        )
    }

    /// The `idx`-th element in mixed-radix order, first component fastest.
    pub fn element(&self, mut idx: u64) -> RingElem {
        let mut v = Vec::with_capacity(self.rank());
        for &d in &self.moduli {
            v.push(idx % d);
            idx /= d;
        }
        RingElem(v)
    }

    pub fn index_of(&self, a: &RingElem) -> u64 {
        let mut idx = 0u64;
        for (&r, &d) in a.0.iter().zip(&self.moduli).rev() {
            idx = idx * d + r;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.size()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((x, y), d)| (x + d - y) % d)
                .collect(),
        )
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        self.sub(&self.zero(), a)
    }

    pub fn scale(&self, c: i64, a: &RingElem) -> RingElem {
        RingElem(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &d)| {
                    let c = c.rem_euclid(d as i64) as u64;
                    (c * x) % d
                })
                .collect(),
        )
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut out = vec![0u64; self.rank()];
        self.mul_into(&a.0, &b.0, &mut out);
        RingElem(out)
    }

    /// `out = a·b`.
    pub fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        out.iter_mut().for_each(|o| *o = 0);
        for &(i, j, l, c) in &self.sparse {
            let (x, y) = (a[i], b[j]);
            if x != 0 && y != 0 {
                let d = self.moduli[l];
                out[l] = (out[l] + (x * y % d) * c) % d;
            }
        }
    }

    pub fn commutator(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// `t·a = 0` forces `a = 0`.
    pub fn is_torsion_free(&self, t: u64) -> bool {
        t != 0 && self.moduli.iter().all(|&d| t.gcd(&d) == 1)
    }
}

/// Serialized ring description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Named(NamedRing),
    Table { moduli: Vec<u64>, mult: Vec<Vec<Vec<u64>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum NamedRing {
    Zn {
        n: u64,
    },
    Mat {
        k: usize,
        p: u64,
    },
    #[serde(rename = "product")]
    Product {
        of: Vec<RingSpec>,
    },
}

impl RingSpec {
    pub fn zn(n: u64) -> Self {
        RingSpec::Named(NamedRing::Zn { n })
    }

    pub fn mat(k: usize, p: u64) -> Self {
        RingSpec::Named(NamedRing::Mat { k, p })
    }

    pub fn product(of: Vec<RingSpec>) -> Self {
        RingSpec::Named(NamedRing::Product { of })
    }

    pub fn from_json(s: &str) -> Result<Self, FinRingError> {
        serde_json::from_str(s).map_err(|e| FinRingError::Spec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ring specs serialize")
    }

    pub fn label(&self) -> String {
        match self {
            RingSpec::Named(NamedRing::Zn { n }) => format!("Z{n}"),
            RingSpec::Named(NamedRing::Mat { k, p }) => format!("Mat({k},{p})"),
            RingSpec::Named(NamedRing::Product { of }) => of.iter().map(|r| r.label()).collect::<Vec<_>>().join("+"),
            RingSpec::Table { moduli, mult } => {
                let flat: Vec<String> = mult
                    .iter()
                    .flatten()
                    .map(|c| c.iter().map(|v| v.to_string()).collect::<String>())
                    .collect();
                format!("T{moduli:?}[{}]", flat.join(" "))
            }
        }
    }

    pub fn build(&self) -> Result<FinRing, FinRingError> {
        let ring = match self {
            RingSpec::Named(NamedRing::Zn { n }) => FinRing::zn(*n)?,
            RingSpec::Named(NamedRing::Mat { k, p }) => FinRing::mat(*k, *p)?,
            RingSpec::Named(NamedRing::Product { of }) => {
                let mut it = of.iter();
                let first = it
                    .next()
                    .ok_or_else(|| FinRingError::Spec("empty product".into()))?
                    .build()?;
                it.try_fold(first, |acc, r| FinRing::product(&acc, &r.build()?))?
            }
            RingSpec::Table { moduli, mult } => FinRing::from_table(moduli.clone(), mult.clone())?,
        };
        Ok(ring.with_name(self.label()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(FinRing::zn(6).unwrap().size(), 6);
        assert_eq!(FinRing::mat(2, 5).unwrap().size(), 625);
        let p = FinRing::product(&FinRing::zn(5).unwrap(), &FinRing::mat(2, 7).unwrap()).unwrap();
        assert_eq!(p.size(), 5 * 2401);
        assert_eq!(p.characteristic(), 35);
    }

    #[test]
    fn matrix_units_multiply() {
        let r = FinRing::mat(2, 5).unwrap();
        // e01 · e10 = e00, e10 · e01 = e11
        assert_eq!(r.mul(&r.basis(1), &r.basis(2)), r.basis(0));
        assert_eq!(r.mul(&r.basis(2), &r.basis(1)), r.basis(3));
        assert!(r.mul(&r.basis(1), &r.basis(1)).is_zero());
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // (e0e0)e1 = e1e1 = 0 but e0(e0e1) = e0e0 = e1
        let mult = vec![vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 0]]];
        let err = FinRing::from_table(vec![2, 2], mult).unwrap_err();
        assert!(matches!(err, FinRingError::NonAssociative { .. }), "{err}");
    }

    #[test]
    fn ill_defined_table_is_rejected() {
        // Z2 ⊕ Z3 with e0·e0 = e1 would need 2·e1 = 0 in Z3.
        let mult = vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]];
        let err = FinRing::from_table(vec![2, 3], mult).unwrap_err();
        assert!(matches!(err, FinRingError::IllDefined { i: 0, j: 0 }));
    }

    #[test]
    fn element_indexing_roundtrips() {
        let r = FinRing::product(&FinRing::zn(2).unwrap(), &FinRing::zn(3).unwrap()).unwrap();
        for i in 0..r.size() {
            assert_eq!(r.index_of(&r.element(i)), i);
        }
    }

    #[test]
    fn spec_json_shorthands() {
        let s = RingSpec::from_json(r#"{"kind":"Mat","k":2,"p":7}"#).unwrap();
        assert_eq!(s, RingSpec::mat(2, 7));
        let s =
            RingSpec::from_json(r#"{"kind":"product","of":[{"kind":"Zn","n":5},{"kind":"Mat","k":2,"p":7}]}"#).unwrap();
        assert_eq!(s.build().unwrap().size(), 12005);
        let s = RingSpec::from_json(r#"{"moduli":[2],"mult":[[[1]]]}"#).unwrap();
        assert_eq!(s.build().unwrap().size(), 2);
        assert!(RingSpec::from_json(r#"{"kind":"Mat","k":2}"#).is_err());
        assert_eq!(RingSpec::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn torsion_by_gcd() {
        assert!(FinRing::zn(5).unwrap().is_torsion_free(24));
        assert!(!FinRing::zn(6).unwrap().is_torsion_free(2));
        assert!(FinRing::mat(2, 7).unwrap().is_torsion_free(24));
        assert!(!FinRing::zn(5).unwrap().is_torsion_free(0));
    }
}
