//! Abstract syntax for ring presentations.
//!
//! A [`RingSpec`] describes how to build a finite commutative ring with
//! identity: residues mod `n`, a Galois field, a univariate quotient over a
//! modular or field base, the bivariate `Z_n[x,y]/(x,y)^2` case, or a direct
//! product. Specs are validated before construction and render back to the
//! expression grammar accepted by the parser.

use std::fmt;

use super::RingError;

/// Integer-coefficient polynomial in one variable, ascending degree.
///
/// Relations keep the coefficients exactly as written (`x^2-2` is stored with
/// a `-2`, not its residue) so a spec displays the way it was given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        IntPoly { coeffs }
    }

    /// Coefficients in ascending degree order.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if deg == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A ring presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    /// `Z_n`, residues modulo `n >= 2`.
    Modular(u64),
    /// `F_q` with `q = p^k`; `modulus` is the monic defining polynomial over
    /// `Z_p` in ascending degree order (length `k + 1`).
    GaloisField { order: u64, modulus: Vec<u64> },
    /// `base[x]/(relations)` where `base` is modular or a Galois field.
    QuotientUnivariate {
        base: Box<RingSpec>,
        relations: Vec<IntPoly>,
    },
    /// `Z_n[x,y]/(x,y)^2`: all degree-two monomials vanish.
    QuotientBivariateSquare { base: Box<RingSpec> },
    /// Direct product of two or more factors.
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn modular(n: u64) -> Self {
        RingSpec::Modular(n)
    }

    /// Galois field of order `q` with the default (lexicographically least)
    /// defining polynomial.
    pub fn galois(q: u64) -> Result<Self, RingError> {
        let (p, k) =
            prime_power(q).ok_or_else(|| RingError::InvalidSpec(format!("F{q}: {q} is not a prime power")))?;
        Ok(RingSpec::GaloisField {
            order: q,
            modulus: default_galois_modulus(p, k),
        })
    }

    /// Galois field with an explicit defining polynomial (ascending
    /// coefficients over `Z_p`, monic of degree `k`).
    pub fn galois_with_modulus(q: u64, modulus: Vec<u64>) -> Result<Self, RingError> {
        let (p, k) =
            prime_power(q).ok_or_else(|| RingError::InvalidSpec(format!("F{q}: {q} is not a prime power")))?;
        if modulus.len() != k as usize + 1 || *modulus.last().unwrap() % p != 1 {
            return Err(RingError::InvalidSpec(format!(
                "defining polynomial must be monic of degree {k}"
            )));
        }
        let reduced: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if !poly_is_irreducible(&reduced, p) {
            return Err(RingError::ReducibleDefiningPolynomial(format!(
                "degree-{k} polynomial over Z_{p}"
            )));
        }
        Ok(RingSpec::GaloisField { order: q, modulus: reduced })
    }

    pub fn quotient(base: RingSpec, relations: Vec<IntPoly>) -> Self {
        RingSpec::QuotientUnivariate {
            base: Box::new(base),
            relations,
        }
    }

    pub fn bivariate_square(base: RingSpec) -> Self {
        RingSpec::QuotientBivariateSquare { base: Box::new(base) }
    }

    pub fn product(factors: Vec<RingSpec>) -> Self {
        RingSpec::Product(factors)
    }

    /// Checks the structural invariants of the spec itself (not finiteness
    /// of quotients, which is a build-time property).
    pub fn validate(&self) -> Result<(), RingError> {
        match self {
            RingSpec::Modular(n) => {
                if *n < 2 {
                    return Err(RingError::InvalidSpec(format!("Z{n}: modulus must be >= 2")));
                }
            }
            RingSpec::GaloisField { order, modulus } => {
                let (p, k) = prime_power(*order).ok_or_else(|| {
                    RingError::InvalidSpec(format!("F{order}: {order} is not a prime power"))
                })?;
                if modulus.len() != k as usize + 1 {
                    return Err(RingError::InvalidSpec(format!(
                        "F{order}: defining polynomial must have degree {k}"
                    )));
                }
                if !poly_is_irreducible(modulus, p) {
                    return Err(RingError::ReducibleDefiningPolynomial(format!(
                        "F{order} defining polynomial"
                    )));
                }
            }
            RingSpec::QuotientUnivariate { base, relations } => {
                match base.as_ref() {
                    RingSpec::Modular(_) | RingSpec::GaloisField { .. } => {}
                    other => {
                        return Err(RingError::InvalidSpec(format!(
                            "quotient base must be modular or a field, got {other}"
                        )))
                    }
                }
                base.validate()?;
                if relations.is_empty() || relations.iter().all(IntPoly::is_zero) {
                    return Err(RingError::InvalidSpec(
                        "quotient needs at least one non-zero relation".into(),
                    ));
                }
            }
            RingSpec::QuotientBivariateSquare { base } => {
                if !matches!(base.as_ref(), RingSpec::Modular(_)) {
                    return Err(RingError::InvalidSpec(
                        "bivariate square quotient base must be modular".into(),
                    ));
                }
                base.validate()?;
            }
            RingSpec::Product(factors) => {
                if factors.len() < 2 {
                    return Err(RingError::InvalidSpec(
                        "product needs at least two factors".into(),
                    ));
                }
                for f in factors {
                    f.validate()?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Modular(n) => write!(f, "Z{n}"),
            RingSpec::GaloisField { order, .. } => write!(f, "F{order}"),
            RingSpec::QuotientUnivariate { base, relations } => {
                let rels: Vec<String> = relations.iter().map(|r| r.to_string()).collect();
                write!(f, "{}[x]/({})", base, rels.join(","))
            }
            RingSpec::QuotientBivariateSquare { base } => {
                write!(f, "{}[x,y]/(x,y)^2", base)
            }
            RingSpec::Product(factors) => {
                let parts: Vec<String> = factors.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

/// Factors `q` as `p^k` with `p` prime, `k >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

pub fn is_prime(n: u64) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

/// Multiplies two polynomials over `Z_p` (ascending coefficients).
fn poly_mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

/// Remainder of `a` divided by monic `m` over `Z_p`.
fn poly_rem_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let d = m.len() - 1;
    while r.len() > d {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - d;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + (p - lead % p) % p * mi) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

/// Irreducibility over `Z_p` by trial division with monic polynomials of
/// degree up to half the target degree. Fine at the sizes this crate uses.
pub fn poly_is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // All monic divisor candidates of degree d, low coefficients counted
        // in base p.
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                cand.push(v % p);
                v /= p;
            }
            cand.push(1);
            let rem = poly_rem_mod(poly, &cand, p);
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The smallest monic irreducible of degree `k` over `Z_p`, ordering
/// candidates by their low coefficients read as a base-`p` number with the
/// most significant digit first.
pub fn default_galois_modulus(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        // x - 0; never used for arithmetic, F_p is built directly.
        return vec![0, 1];
    }
    let d = k as usize;
    let count = p.pow(k);
    for idx in 0..count {
        // idx digits give (c_{d-1}, ..., c_0) most significant first.
        let mut low = vec![0u64; d];
        let mut v = idx;
        for i in 0..d {
            low[i] = v % p; // c_i
            v /= p;
        }
        let mut cand = low;
        cand.push(1);
        if poly_is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}
