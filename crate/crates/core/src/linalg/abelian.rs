use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::snf::invariant_factors_of;
use crate::arith::{strip, PrimeSet};

/// A finitely generated abelian group `Z^rank + Z/t_1 + ... + Z/t_k`, with `t_i | t_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: vec![] }
    }

    pub fn cyclic(order: u64) -> Self {
        if order == 0 {
            Self::free(1)
        } else {
            Self::from_orders(0, vec![BigInt::from(order)])
        }
    }

    /// Normalizes an arbitrary list of cyclic orders.
    pub fn from_orders(rank: usize, orders: Vec<BigInt>) -> Self {
        Self { rank, torsion: invariant_factors_of(orders) }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        Self::from_orders(self.rank + other.rank, orders)
    }

    /// Tensors with `Z[S^-1]`.
    pub fn localize(&self, primes: &PrimeSet) -> Self {
        Self::from_orders(self.rank, self.torsion.iter().map(|t| strip(t, primes)).collect())
    }

    /// Whether every torsion order divides `n` and there is no free part.
    pub fn annihilated_by(&self, n: &BigInt) -> bool {
        self.rank == 0 && self.torsion.iter().all(|t| (n % t).is_zero())
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.to_u64().unwrap_or(u64::MAX)).collect()
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for t in &self.torsion {
            orders.extend(std::iter::repeat_n(t.clone(), other.rank));
        }
        for t in &other.torsion {
            orders.extend(std::iter::repeat_n(t.clone(), self.rank));
        }
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        Self::from_orders(self.rank * other.rank, orders)
    }

    /// `Tor(self, other)`.
    pub fn tor(&self, other: &Self) -> Self {
        let orders = self.torsion.iter().flat_map(|a| other.torsion.iter().map(move |b| a.gcd(b))).collect();
        Self::from_orders(0, orders)
    }

    /// Number of elements when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AbelianGroup", 3)?;
        s.serialize_field("rank", &self.rank)?;
        let torsion: Vec<String> = self.torsion.iter().map(|t| t.to_string()).collect();
        s.serialize_field("torsion", &torsion)?;
        s.serialize_field("display", &self.to_string())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_and_localization() {
        let g = AbelianGroup::from_orders(1, vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(g.torsion, vec![BigInt::from(6)]);
        assert_eq!(g.to_string(), "Z + Z/6");
        let l = g.localize(&PrimeSet::from_primes([3]));
        assert_eq!(l.torsion, vec![BigInt::from(2)]);
        assert!(AbelianGroup::cyclic(4).annihilated_by(&BigInt::from(8)));
        assert!(!AbelianGroup::cyclic(4).annihilated_by(&BigInt::from(6)));
    }
}
