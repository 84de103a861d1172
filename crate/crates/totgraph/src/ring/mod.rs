//! Finite commutative rings with identity.
//!
//! A [`FiniteRing`] is a fully materialized ring: an element list with
//! human-readable names, complete addition and multiplication tables, and the
//! distinguished elements 0 and 1. Everything downstream (zero-divisors,
//! units, locality, total graphs) is table lookup, so rings are cheap to
//! query and safe to share across threads once built.

mod build;
pub mod parse;
mod spec;

use std::fmt;

use thiserror::Error;

pub use build::{build_ring, build_ring_capped, direct_product, DEFAULT_ELEMENT_CAP};
pub use parse::{parse_ring_expression, ParseError};
pub use spec::{default_galois_modulus, is_prime, poly_is_irreducible, prime_power, IntPoly, RingSpec};

#[derive(Debug, Error)]
pub enum RingError {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    #[error("quotient closure exceeded the element cap of {cap}; the quotient is not finite at this cap")]
    NonFiniteQuotient { cap: usize },
    #[error("reducible defining polynomial: {0}")]
    ReducibleDefiningPolynomial(String),
}

/// The set `Z(R)` of zero-divisors, 0 included.
///
/// In a finite commutative ring every element is either a unit or a
/// zero-divisor, so the complement of this set is exactly the unit group.
#[derive(Clone, Debug)]
pub struct ZeroDivisorSet {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl ZeroDivisorSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }
}

/// A finite commutative ring with identity, materialized as operation tables.
#[derive(Clone)]
pub struct FiniteRing {
    spec: RingSpec,
    names: Vec<String>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
    zero_divisors: ZeroDivisorSet,
}

impl FiniteRing {
    /// Builds a ring from raw tables. `add` and `mul` are `n*n` row-major.
    pub(crate) fn from_tables(
        spec: RingSpec,
        names: Vec<String>,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: usize,
        one: usize,
    ) -> Result<Self, RingError> {
        let n = names.len();
        debug_assert_eq!(add.len(), n * n);
        debug_assert_eq!(mul.len(), n * n);
        if zero == one {
            return Err(RingError::InvalidSpec(format!(
                "{spec}: presentation collapses to the zero ring (0 = 1)"
            )));
        }
        let mut neg = vec![u16::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] as usize == zero {
                    neg[a] = b as u16;
                    break;
                }
            }
            if neg[a] == u16::MAX {
                return Err(RingError::InvalidSpec(format!(
                    "{spec}: element {} has no additive inverse",
                    names[a]
                )));
            }
        }
        let zero_divisors = compute_zero_divisors(n, &mul, zero);
        Ok(FiniteRing {
            spec,
            names,
            add,
            mul,
            neg,
            zero,
            one,
            zero_divisors,
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Canonical expression string for this ring.
    pub fn name(&self) -> String {
        self.spec.to_string()
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.names.len() + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.names.len() + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    /// The set of zero-divisors `Z(R)` (0 included).
    pub fn zero_divisors(&self) -> &ZeroDivisorSet {
        &self.zero_divisors
    }

    /// Invertible elements, ascending.
    pub fn units(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| !self.zero_divisors.contains(x))
            .collect()
    }

    /// Multiplicative inverse, if `x` is a unit.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        (0..self.order()).find(|&y| self.mul(x, y) == self.one)
    }

    /// Additive order of 1.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }

    /// Is `1 + 1` a zero-divisor?
    pub fn two_is_zero_divisor(&self) -> bool {
        self.zero_divisors.contains(self.add(self.one, self.one))
    }

    /// For a finite commutative ring, locality is equivalent to `Z(R)` being
    /// an ideal. Returns the maximal ideal (= `Z(R)`) when local.
    pub fn is_local(&self) -> Option<Vec<usize>> {
        let z = &self.zero_divisors;
        for &a in z.members() {
            for &b in z.members() {
                if !z.contains(self.add(a, b)) {
                    return None;
                }
            }
            for r in 0..self.order() {
                if !z.contains(self.mul(a, r)) {
                    return None;
                }
            }
        }
        Some(z.members().to_vec())
    }

    /// Exhaustively checks the commutative-ring axioms over the tables.
    /// O(n^3); meant for tests and desk-scale sanity checks.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.order();
        if self.zero == self.one {
            return Err("0 = 1".into());
        }
        for a in 0..n {
            if self.add(a, self.zero) != a {
                return Err(format!("{} + 0 != {0}", self.names[a]));
            }
            if self.mul(a, self.one) != a {
                return Err(format!("{} * 1 != {0}", self.names[a]));
            }
            if self.add(a, self.neg(a)) != self.zero {
                return Err(format!("{} + (-{0}) != 0", self.names[a]));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(format!("addition not commutative at ({a},{b})"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("multiplication not commutative at ({a},{b})"));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("addition not associative at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplication not associative at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.name(), self.order())
    }
}

fn compute_zero_divisors(n: usize, mul: &[u16], zero: usize) -> ZeroDivisorSet {
    let mut mask = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            if y != zero && mul[x * n + y] as usize == zero {
                mask[x] = true;
                break;
            }
        }
    }
    let members = (0..n).filter(|&x| mask[x]).collect();
    ZeroDivisorSet { members, mask }
}
