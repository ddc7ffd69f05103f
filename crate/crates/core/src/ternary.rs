//! Exact base-3 digit expansions of rationals in `[0, 1]`.
//!
//! A rational has an eventually periodic ternary expansion; we store it as a
//! finite digit prefix followed by a (possibly empty) repetend. Expansions
//! are produced greedily, so a number with two expansions — which happens
//! exactly when the denominator is a power of three — yields the terminating
//! one, and [`TernaryDigits::alternate_terminating_form`] recovers the other.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TernaryDigits {
    prefix: Vec<u8>,
    repetend: Vec<u8>,
}

impl TernaryDigits {
    /// Expands `x` in base 3. Errors unless `0 <= x <= 1`.
    pub fn from_rational(x: &Rational) -> Result<Self> {
        if x.is_negative() || x > &Rational::one() {
            return Err(Error::OutsideUnitInterval { value: x.clone() });
        }
        let den = x.denom().clone();
        let mut state = x.numer().clone();
        let mut digits: Vec<u8> = Vec::new();
        // Each state is the numerator of the remaining tail over the fixed
        // denominator; states repeat, so record where each first appeared.
        let mut seen: HashMap<BigInt, usize> = HashMap::new();

        loop {
            if state.is_zero() {
                return Ok(TernaryDigits {
                    prefix: digits,
                    repetend: Vec::new(),
                });
            }
            if let Some(&start) = seen.get(&state) {
                let repetend = digits.split_off(start);
                return Ok(TernaryDigits {
                    prefix: digits,
                    repetend,
                });
            }
            seen.insert(state.clone(), digits.len());
            state *= 3;
            // The quotient is at most 3, and only x == 1 reaches 3; clamping
            // to 2 writes that value as 0.(2).
            let digit: u8 = u8::try_from(&state / &den).map_or(2, |d| d.min(2));
            state -= BigInt::from(digit) * &den;
            digits.push(digit);
        }
    }

    /// Exact value of the expansion.
    pub fn to_rational(&self) -> Rational {
        let three = Rational::from_integer(3);
        let m = self.prefix.len() as i32;
        let mut value = Rational::zero();
        if m > 0 {
            let p = digits_to_int(&self.prefix);
            value = Rational::new(p, BigInt::from(1)) * three.pow(-m);
        }
        if !self.repetend.is_empty() {
            let r = self.repetend.len() as u32;
            let cycle_den = BigInt::from(3).pow(r) - 1;
            let tail = Rational::new(digits_to_int(&self.repetend), cycle_den);
            value = value + tail * three.pow(-m);
        }
        value
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn repetend(&self) -> &[u8] {
        &self.repetend
    }

    pub fn is_terminating(&self) -> bool {
        self.repetend.is_empty()
    }

    pub fn avoids_digit_one(&self) -> bool {
        !self.prefix.contains(&1) && !self.repetend.contains(&1)
    }

    /// For a terminating expansion of a nonzero value, the equivalent
    /// expansion ending in repeating twos (e.g. `0.1` becomes `0.0(2)`).
    /// Returns `None` when the value has a unique expansion.
    pub fn alternate_terminating_form(&self) -> Option<TernaryDigits> {
        if !self.repetend.is_empty() || self.prefix.is_empty() {
            return None;
        }
        let mut prefix = self.prefix.clone();
        // Greedy expansion never ends in 0, so the decrement stays a digit.
        *prefix.last_mut().unwrap() -= 1;
        Some(TernaryDigits {
            prefix,
            repetend: vec![2],
        })
    }
}

fn digits_to_int(digits: &[u8]) -> BigInt {
    digits
        .iter()
        .fold(BigInt::zero(), |acc, &d| acc * 3 + BigInt::from(d))
}

impl fmt::Display for TernaryDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() && self.repetend.is_empty() {
            return write!(f, "0");
        }
        write!(f, "0.")?;
        for d in &self.prefix {
            write!(f, "{d}")?;
        }
        if !self.repetend.is_empty() {
            write!(f, "(")?;
            for d in &self.repetend {
                write!(f, "{d}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
