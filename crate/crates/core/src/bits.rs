//! n-bit counter states driving the lower-bound strategy families.

use std::fmt;

use crate::error::FamilyError;

/// `α = (α_{n−1} … α_0)`; index 0 is the lowest bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitState {
    bits: Vec<bool>,
}

impl BitState {
    pub fn zeros(n: usize) -> Result<Self, FamilyError> {
        if n == 0 {
            return Err(FamilyError::SizeTooSmall { n, min: 1 });
        }
        Ok(BitState {
            bits: vec![false; n],
        })
    }

    pub fn ones(n: usize) -> Result<Self, FamilyError> {
        let mut s = Self::zeros(n)?;
        s.bits.fill(true);
        Ok(s)
    }

    /// Bits listed lowest first.
    pub fn from_bits(bits: Vec<bool>) -> Result<Self, FamilyError> {
        if bits.is_empty() {
            return Err(FamilyError::SizeTooSmall { n: 0, min: 1 });
        }
        Ok(BitState { bits })
    }

    pub fn from_value(n: usize, value: u64) -> Result<Self, FamilyError> {
        if n == 0 {
            return Err(FamilyError::SizeTooSmall { n, min: 1 });
        }
        if n < 64 && value >> n != 0 {
            return Err(FamilyError::OutOfRange(format!(
                "{value} does not fit in {n} bits"
            )));
        }
        Ok(BitState {
            bits: (0..n).map(|i| i < 64 && (value >> i) & 1 == 1).collect(),
        })
    }

    pub fn value(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .filter(|(i, &b)| b && *i < 64)
            .map(|(i, _)| 1u64 << i)
            .sum()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, j: usize) -> bool {
        self.bits[j]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    pub fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    /// `μ_α`: index of the lowest zero bit.
    pub fn mu(&self) -> Result<usize, FamilyError> {
        self.bits
            .iter()
            .position(|&b| !b)
            .ok_or_else(|| FamilyError::OutOfRange("μ is undefined for the all-ones state".into()))
    }

    /// `ν_α`: number of trailing zero bits (`n` for the zero state).
    pub fn nu(&self) -> usize {
        self.bits.iter().position(|&b| b).unwrap_or(self.bits.len())
    }

    /// `γ_α = 3·μ_α + 7`.
    pub fn gamma(&self) -> Result<usize, FamilyError> {
        Ok(3 * self.mu()? + 7)
    }

    /// `α|_j`: bits `0..=j` cleared.
    pub fn restrict_above(&self, j: usize) -> BitState {
        self.clear_below(j + 1)
    }

    /// Bits `0..k` cleared; `clear_below(j)` is `α|_{j−1}`, and `clear_below(0)`
    /// leaves the state unchanged.
    pub fn clear_below(&self, k: usize) -> BitState {
        let mut s = self.clone();
        for b in s.bits.iter_mut().take(k) {
            *b = false;
        }
        s
    }

    pub fn increment(&self) -> Result<BitState, FamilyError> {
        let mu = self
            .mu()
            .map_err(|_| FamilyError::OutOfRange("cannot increment the all-ones state".into()))?;
        let mut s = self.clone();
        for b in s.bits.iter_mut().take(mu) {
            *b = false;
        }
        s.bits[mu] = true;
        Ok(s)
    }

    pub fn decrement(&self) -> Result<BitState, FamilyError> {
        if self.is_zero() {
            return Err(FamilyError::OutOfRange(
                "cannot decrement the zero state".into(),
            ));
        }
        let nu = self.nu();
        let mut s = self.clone();
        for b in s.bits.iter_mut().take(nu) {
            *b = true;
        }
        s.bits[nu] = false;
        Ok(s)
    }
}

impl fmt::Display for BitState {
    /// Highest bit first, as the counter is usually written.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in self.bits.iter().rev() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitState {
        BitState::from_bits(s.chars().rev().map(|c| c == '1').collect()).unwrap()
    }

    #[test]
    fn mu_nu_gamma() {
        let a = bs("001");
        assert_eq!(a.mu().unwrap(), 1);
        assert_eq!(a.nu(), 0);
        assert_eq!(a.gamma().unwrap(), 10);

        let b = bs("100");
        assert_eq!(b.mu().unwrap(), 0);
        assert_eq!(b.nu(), 2);
        assert_eq!(bs("000").nu(), 3);
        assert!(bs("111").mu().is_err());
        assert!(bs("111").gamma().is_err());
    }

    #[test]
    fn restriction() {
        assert_eq!(bs("011").restrict_above(1), bs("000"));
        assert_eq!(bs("111").restrict_above(0), bs("110"));
        assert_eq!(bs("101").clear_below(0), bs("101"));
    }

    #[test]
    fn counting() {
        assert_eq!(bs("011").increment().unwrap(), bs("100"));
        assert_eq!(bs("100").decrement().unwrap(), bs("011"));
        assert!(bs("11").increment().is_err());
        assert!(bs("00").decrement().is_err());
        assert_eq!(bs("0110").to_string(), "0110");
        assert_eq!(BitState::from_value(3, 6).unwrap(), bs("110"));
        assert_eq!(bs("110").value(), 6);
        assert!(BitState::from_value(2, 4).is_err());
        assert!(BitState::zeros(0).is_err());
    }

    #[test]
    fn nu_is_lowest_set_bit() {
        for n in 1..=6 {
            for v in 1..(1u64 << n) {
                let a = BitState::from_value(n, v).unwrap();
                assert_eq!(a.nu(), v.trailing_zeros() as usize);
                assert_eq!(
                    a.increment().map(|x| x.value()).ok(),
                    (v + 1 < 1 << n).then_some(v + 1)
                );
                assert_eq!(a.decrement().unwrap().value(), v - 1);
            }
        }
    }
}
