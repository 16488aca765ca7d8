//! Exact integers, rationals and localizations `Z[S^-1]`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("denominator {denominator} needs primes outside the allowed set {allowed}")]
    InsufficientPrimes { denominator: BigInt, allowed: PrimeSet },
    #[error("division by zero")]
    DivisionByZero,
}

/// A finite set of primes `S`; the ring `Z[S^-1]` inverts exactly these.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeSet(BTreeSet<u64>);

impl PrimeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds the set from arbitrary positive integers, keeping their prime divisors.
    pub fn from_divisors<I: IntoIterator<Item = u64>>(values: I) -> Self {
        let mut set = BTreeSet::new();
        for v in values {
            set.extend(prime_factors(v));
        }
        PrimeSet(set)
    }

    pub fn from_primes<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        PrimeSet(primes.into_iter().collect())
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.contains(&p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.0.iter().copied().collect()
    }

    /// Whether `n` is a unit in `Z[S^-1]`.
    pub fn is_unit(&self, n: &BigInt) -> bool {
        !n.is_zero() && strip(n, self).abs().is_one()
    }

    /// Primes of `n` not in the set.
    pub fn missing_primes(&self, n: &BigInt) -> Vec<u64> {
        let residue = strip(n, self).abs();
        match residue.to_u64() {
            Some(r) => prime_factors(r).into_iter().collect(),
            None => vec![],
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Prime divisors of `n` by trial division.
pub fn prime_factors(mut n: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut d = 2u64;
    while d * d <= n {
        while n % d == 0 {
            out.insert(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n).iter().eq([n].iter())
}

/// Removes every factor of a prime in `primes` from `n`.
pub fn strip(n: &BigInt, primes: &PrimeSet) -> BigInt {
    if n.is_zero() {
        return n.clone();
    }
    let mut value = n.clone();
    for p in primes.iter() {
        let p = BigInt::from(p);
        loop {
            let (q, r) = value.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            value = q;
        }
    }
    value
}

/// A rational number whose denominator is a product of primes in `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedRational {
    value: BigRational,
    allowed: PrimeSet,
}

impl LocalizedRational {
    pub fn new(value: BigRational, allowed: PrimeSet) -> Result<Self, LocalizationError> {
        if !allowed.is_unit(value.denom()) {
            return Err(LocalizationError::InsufficientPrimes {
                denominator: value.denom().clone(),
                allowed,
            });
        }
        Ok(Self { value, allowed })
    }

    pub fn integer(n: impl Into<BigInt>, allowed: PrimeSet) -> Self {
        Self { value: BigRational::from_integer(n.into()), allowed }
    }

    pub fn zero(allowed: PrimeSet) -> Self {
        Self::integer(0, allowed)
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn allowed(&self) -> &PrimeSet {
        &self.allowed
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { value: &self.value + &other.value, allowed: self.allowed.union(&other.allowed) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { value: &self.value - &other.value, allowed: self.allowed.union(&other.allowed) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { value: &self.value * &other.value, allowed: self.allowed.union(&other.allowed) }
    }

    pub fn neg(&self) -> Self {
        Self { value: -&self.value, allowed: self.allowed.clone() }
    }

    /// Division, rejected when the quotient leaves `Z[S^-1]`.
    pub fn try_div(&self, other: &Self) -> Result<Self, LocalizationError> {
        if other.value.is_zero() {
            return Err(LocalizationError::DivisionByZero);
        }
        Self::new(&self.value / &other.value, self.allowed.union(&other.allowed))
    }
}

impl fmt::Display for LocalizedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a BigRational>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Exact text form used in JSON payloads: `"n"` or `"n/d"`.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_factor_sets() {
        assert_eq!(prime_factors(12).into_iter().collect::<Vec<_>>(), vec![2, 3]);
        assert!(prime_factors(1).is_empty());
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }

    #[test]
    fn localization_rejects_foreign_denominators() {
        let s = PrimeSet::from_primes([2]);
        assert!(LocalizedRational::new(rat(1, 4), s.clone()).is_ok());
        assert!(matches!(
            LocalizedRational::new(rat(1, 6), s.clone()),
            Err(LocalizationError::InsufficientPrimes { .. })
        ));
        let three = LocalizedRational::integer(3, s.clone());
        let one = LocalizedRational::integer(1, s);
        assert!(one.try_div(&three).is_err());
        assert!(three.try_div(&three).is_ok());
    }

    #[test]
    fn strip_removes_allowed_primes() {
        let s = PrimeSet::from_primes([2, 5]);
        assert_eq!(strip(&BigInt::from(360), &s), BigInt::from(9));
        assert!(s.is_unit(&BigInt::from(-40)));
        assert!(!s.is_unit(&BigInt::from(0)));
    }
}
