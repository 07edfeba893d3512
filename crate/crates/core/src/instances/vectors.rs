use std::fmt;

use crate::error::{Error, Result};

/// A (0,1)-vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector(Vec<bool>);

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Parameter("vectors need dimension >= 1".into()));
        }
        Ok(BitVector(bits))
    }

    pub fn ones(d: usize) -> Self {
        BitVector(vec![true; d])
    }

    pub fn zeros(d: usize) -> Self {
        BitVector(vec![false; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn bit(&self, p: usize) -> bool {
        self.0[p]
    }

    /// Inner product over the integers.
    pub fn dot(&self, other: &BitVector) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| **a && **b).count()
    }
}

impl std::str::FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parameter(format!("bad bit `{c}` in `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BitVector::new(bits)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Two sets of `d`-dimensional vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OVInstance {
    pub u: Vec<BitVector>,
    pub v: Vec<BitVector>,
    pub d: usize,
}

impl OVInstance {
    pub fn new(u: Vec<BitVector>, v: Vec<BitVector>) -> Result<Self> {
        if u.is_empty() || v.is_empty() {
            return Err(Error::EmptyInstance("OV sets must be nonempty".into()));
        }
        let d = u[0].dim();
        if u.iter().chain(&v).any(|x| x.dim() != d) {
            return Err(Error::Shape("OV vectors differ in dimension".into()));
        }
        Ok(OVInstance { u, v, d })
    }

    pub fn has_orthogonal_pair(&self) -> bool {
        min_inner_product(self) == 0
    }
}

/// `k` sets of `n` vectors each, all of dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KOVInstance {
    pub sets: Vec<Vec<BitVector>>,
    pub d: usize,
}

impl KOVInstance {
    pub fn new(sets: Vec<Vec<BitVector>>) -> Result<Self> {
        let Some(first) = sets.first().and_then(|s| s.first()) else {
            return Err(Error::EmptyInstance("k-OV needs nonempty sets".into()));
        };
        let d = first.dim();
        let n = sets[0].len();
        if sets.iter().any(|s| s.len() != n) {
            return Err(Error::Shape("k-OV sets differ in size".into()));
        }
        if sets.iter().flatten().any(|x| x.dim() != d) {
            return Err(Error::Shape("k-OV vectors differ in dimension".into()));
        }
        Ok(KOVInstance { sets, d })
    }

    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn n(&self) -> usize {
        self.sets[0].len()
    }
}

/// `Σ_p Π_i u_i[p]` for one vector per set.
pub fn product_sum(tuple: &[&BitVector]) -> usize {
    let d = tuple.first().map_or(0, |v| v.dim());
    (0..d).filter(|&p| tuple.iter().all(|v| v.bit(p))).count()
}

/// `min_{i,j} u_i · v_j` by exhaustive enumeration.
pub fn min_inner_product(inst: &OVInstance) -> usize {
    inst.u
        .iter()
        .flat_map(|a| inst.v.iter().map(move |b| a.dot(b)))
        .min()
        .unwrap_or(0)
}

/// Largest number of tuples [`k_min_product`] will enumerate.
pub const KOV_TUPLE_CAP: u64 = 1_000_000;

/// `min Σ_p Π_i u_i[p]` over all `n^k` tuples.
pub fn k_min_product(inst: &KOVInstance) -> Result<usize> {
    let n = inst.n() as u64;
    let tuples = (0..inst.k()).try_fold(1u64, |acc, _| acc.checked_mul(n));
    if tuples.map_or(true, |t| t > KOV_TUPLE_CAP) {
        return Err(Error::InstanceTooLarge(format!(
            "{} tuples exceed the cap of {KOV_TUPLE_CAP}",
            tuples.map_or("too many".to_string(), |t| t.to_string())
        )));
    }
    let k = inst.k();
    let mut idx = vec![0usize; k];
    let mut best = inst.d;
    loop {
        let tuple: Vec<&BitVector> = idx.iter().zip(&inst.sets).map(|(&i, s)| &s[i]).collect();
        best = best.min(product_sum(&tuple));
        // odometer, last set fastest
        let mut s = k;
        loop {
            if s == 0 {
                return Ok(best);
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < inst.sets[s].len() {
                break;
            }
            idx[s] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn min_inner_product_examples() {
        let inst = OVInstance::new(vec![bv("11"), bv("10")], vec![bv("11"), bv("01")]).unwrap();
        assert_eq!(min_inner_product(&inst), 0);
        assert!(inst.has_orthogonal_pair());
        let ones = OVInstance::new(vec![bv("111"); 2], vec![bv("111"); 3]).unwrap();
        assert_eq!(min_inner_product(&ones), 3);
        let z = OVInstance::new(vec![bv("000")], vec![bv("101"), bv("111")]).unwrap();
        assert_eq!(min_inner_product(&z), 0);
    }

    #[test]
    fn k_min_product_examples() {
        let ones = KOVInstance::new(vec![vec![bv("11")]; 3]).unwrap();
        assert_eq!(k_min_product(&ones).unwrap(), 2);
        let with_zero = KOVInstance::new(vec![
            vec![bv("111"), bv("011")],
            vec![bv("000"), bv("111")],
            vec![bv("110"), bv("111")],
        ])
        .unwrap();
        assert_eq!(k_min_product(&with_zero).unwrap(), 0);
        let big = KOVInstance::new(vec![vec![bv("1"); 1001]; 2]).unwrap();
        assert!(matches!(k_min_product(&big), Err(Error::InstanceTooLarge(_))));
    }

    #[test]
    fn validation() {
        assert!(BitVector::new(vec![]).is_err());
        assert!("012".parse::<BitVector>().is_err());
        assert!(OVInstance::new(vec![], vec![bv("1")]).is_err());
        assert!(OVInstance::new(vec![bv("1")], vec![bv("10")]).is_err());
        assert!(KOVInstance::new(vec![vec![bv("1")], vec![bv("1"), bv("0")]]).is_err());
        assert_eq!(bv("0110").to_string(), "0110");
    }
}
