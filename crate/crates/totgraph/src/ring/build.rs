//! Ring construction: materializing a [`RingSpec`] into tables.
//!
//! Quotient rings are built by normal-form reduction: a relation whose
//! leading coefficient is a unit becomes a rewrite rule `x^d -> lower
//! terms`; the remaining relations generate an ideal inside the finite
//! module of reduced polynomials, closed off by a worklist. The element cap
//! bounds that module, so a presentation that is not finite at the cap
//! fails cleanly instead of looping.

use super::spec::{prime_power, IntPoly, RingSpec};
use super::{FiniteRing, RingError};

/// Hard cap on the number of candidate elements explored while building.
pub const DEFAULT_ELEMENT_CAP: usize = 4096;

/// Builds a ring with the default element cap.
pub fn build_ring(spec: &RingSpec) -> Result<FiniteRing, RingError> {
    build_ring_capped(spec, DEFAULT_ELEMENT_CAP)
}

/// Builds a ring, failing with `NonFiniteQuotient` if construction would
/// need more than `cap` elements.
pub fn build_ring_capped(spec: &RingSpec, cap: usize) -> Result<FiniteRing, RingError> {
    spec.validate()?;
    match spec {
        RingSpec::Modular(n) => build_modular(*n, cap),
        RingSpec::GaloisField { order, modulus } => build_galois(*order, modulus, cap),
        RingSpec::QuotientUnivariate { base, relations } => {
            let base_ring = build_ring_capped(base, cap)?;
            build_quotient(spec.clone(), &base_ring, relations, cap)
        }
        RingSpec::QuotientBivariateSquare { base } => {
            let n = match base.as_ref() {
                RingSpec::Modular(n) => *n,
                _ => unreachable!("validated"),
            };
            build_bivariate_square(spec.clone(), n, cap)
        }
        RingSpec::Product(factors) => {
            let built: Result<Vec<_>, _> =
                factors.iter().map(|f| build_ring_capped(f, cap)).collect();
            direct_product_capped(&built?, cap)
        }
    }
}

/// Componentwise product of two or more rings.
pub fn direct_product(factors: &[FiniteRing]) -> Result<FiniteRing, RingError> {
    direct_product_capped(factors, DEFAULT_ELEMENT_CAP)
}

fn check_cap(order: u128, cap: usize) -> Result<usize, RingError> {
    if order > cap as u128 {
        Err(RingError::NonFiniteQuotient { cap })
    } else {
        Ok(order as usize)
    }
}

fn build_modular(n: u64, cap: usize) -> Result<FiniteRing, RingError> {
    let n = check_cap(n as u128, cap)?;
    let names = (0..n).map(|i| i.to_string()).collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            add[a * n + b] = ((a + b) % n) as u16;
            mul[a * n + b] = ((a * b) % n) as u16;
        }
    }
    FiniteRing::from_tables(RingSpec::Modular(n as u64), names, add, mul, 0, 1)
}

fn build_galois(q: u64, modulus: &[u64], cap: usize) -> Result<FiniteRing, RingError> {
    let (p, k) = prime_power(q).expect("validated");
    let n = check_cap(q as u128, cap)?;
    let spec = RingSpec::GaloisField {
        order: q,
        modulus: modulus.to_vec(),
    };
    if k == 1 {
        let m = build_modular(p, cap)?;
        return FiniteRing::from_tables(
            spec,
            m.names.clone(),
            m.add.clone(),
            m.mul.clone(),
            0,
            1,
        );
    }
    let k = k as usize;
    let p = p as usize;
    // Element index = sum of c_i * p^i over the coefficient vector.
    let unidx = |mut v: usize| -> Vec<usize> {
        let mut c = vec![0; k];
        for ci in c.iter_mut() {
            *ci = v % p;
            v /= p;
        }
        c
    };
    let idx = |c: &[usize]| -> usize {
        let mut v = 0;
        for &ci in c.iter().rev() {
            v = v * p + ci;
        }
        v
    };
    let modulus_usize: Vec<usize> = modulus.iter().map(|&c| c as usize).collect();
    let reduce = |mut f: Vec<usize>| -> Vec<usize> {
        while f.len() > k {
            let lead = f.pop().unwrap() % p;
            if lead != 0 {
                let shift = f.len() - k;
                for i in 0..k {
                    // x^deg = -(low part of modulus) * x^shift
                    f[shift + i] = (f[shift + i] + lead * (p - modulus_usize[i] % p) % p) % p;
                }
            }
        }
        f.resize(k, 0);
        f
    };
    let names: Vec<String> = (0..n)
        .map(|v| {
            let c = unidx(v);
            let terms: Vec<String> = (0..k)
                .rev()
                .filter(|&d| c[d] != 0)
                .map(|d| poly_term(&c[d].to_string(), c[d] == 1, "a", d))
                .collect();
            join_terms(terms)
        })
        .collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        let va = unidx(a);
        for b in 0..n {
            let vb = unidx(b);
            let sum: Vec<usize> = (0..k).map(|i| (va[i] + vb[i]) % p).collect();
            add[a * n + b] = idx(&sum) as u16;
            let mut prod = vec![0usize; 2 * k - 1];
            for (i, &ai) in va.iter().enumerate() {
                for (j, &bj) in vb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + ai * bj) % p;
                }
            }
            mul[a * n + b] = idx(&reduce(prod)) as u16;
        }
    }
    FiniteRing::from_tables(spec, names, add, mul, 0, 1)
}

/// Image of the integer `c` in `base` (i.e. `c * 1`).
fn int_in(base: &FiniteRing, c: i64) -> usize {
    let ch = base.characteristic() as i64;
    let c = c.rem_euclid(ch) as usize;
    let mut acc = base.zero();
    for _ in 0..c {
        acc = base.add(acc, base.one());
    }
    acc
}

fn build_quotient(
    spec: RingSpec,
    base: &FiniteRing,
    relations: &[IntPoly],
    cap: usize,
) -> Result<FiniteRing, RingError> {
    let b = base.order();
    // Map relations into the base, dropping leading zeros and any that vanish.
    let mut rels: Vec<Vec<usize>> = Vec::new();
    for r in relations {
        let mut v: Vec<usize> = r.coeffs().iter().map(|&c| int_in(base, c)).collect();
        while v.len() > 1 && *v.last().unwrap() == base.zero() {
            v.pop();
        }
        if !(v.len() == 1 && v[0] == base.zero()) {
            rels.push(v);
        }
    }
    // A relation with a unit leading coefficient becomes the rewrite rule
    // x^d -> repl; pick the lowest degree available.
    let mut rule: Option<(usize, Vec<usize>)> = None;
    for r in &rels {
        let lead = *r.last().unwrap();
        if let Some(inv) = base.inverse(lead) {
            let d = r.len() - 1;
            if rule.as_ref().map_or(true, |(bd, _)| d < *bd) {
                let repl: Vec<usize> = r[..d].iter().map(|&c| base.neg(base.mul(c, inv))).collect();
                rule = Some((d, repl));
            }
        }
    }
    let (d, repl) = rule.ok_or(RingError::NonFiniteQuotient { cap })?;
    if d == 0 {
        return Err(RingError::InvalidSpec(format!(
            "{spec}: a relation is a unit, the quotient collapses to the zero ring"
        )));
    }
    let m_size = check_cap((b as u128).pow(d as u32), cap)?;

    let unidx = |mut v: usize| -> Vec<usize> {
        let mut c = vec![0; d];
        for ci in c.iter_mut() {
            *ci = v % b;
            v /= b;
        }
        c
    };
    let idx = |c: &[usize]| -> usize {
        let mut v = 0;
        for &ci in c.iter().rev() {
            v = v * b + ci;
        }
        v
    };
    let nf = |mut f: Vec<usize>| -> Vec<usize> {
        while f.len() > d {
            let lead = f.pop().unwrap();
            if lead != base.zero() {
                let shift = f.len() - d;
                for i in 0..d {
                    f[shift + i] = base.add(f[shift + i], base.mul(lead, repl[i]));
                }
            }
        }
        f.resize(d, base.zero());
        f
    };
    let vec_add = |u: &[usize], v: &[usize]| -> Vec<usize> {
        (0..d).map(|i| base.add(u[i], v[i])).collect()
    };

    // Ideal generated by the relations inside the reduced module: closed
    // under addition, base scalars, and multiplication by x.
    let mut in_ideal = vec![false; m_size];
    in_ideal[0] = true;
    let mut members: Vec<usize> = vec![0];
    let mut queue: Vec<Vec<usize>> = rels
        .iter()
        .map(|r| nf(r.clone()))
        .collect();
    while let Some(v) = queue.pop() {
        let vi = idx(&v);
        if in_ideal[vi] {
            continue;
        }
        in_ideal[vi] = true;
        for &m in members.iter() {
            queue.push(vec_add(&v, &unidx(m)));
        }
        members.push(vi);
        for s in 0..b {
            queue.push(v.iter().map(|&c| base.mul(s, c)).collect());
        }
        let mut shifted = vec![base.zero()];
        shifted.extend_from_slice(&v);
        queue.push(nf(shifted));
    }

    // Coset representatives: ascending scan marks each coset with its least
    // member.
    let mut rep = vec![usize::MAX; m_size];
    let mut reps: Vec<usize> = Vec::new();
    for m in 0..m_size {
        if rep[m] != usize::MAX {
            continue;
        }
        let vm = unidx(m);
        for &i in &members {
            rep[idx(&vec_add(&vm, &unidx(i)))] = m;
        }
        reps.push(m);
    }
    let n = reps.len();
    let mut pos = vec![usize::MAX; m_size];
    for (i, &r) in reps.iter().enumerate() {
        pos[r] = i;
    }

    let names: Vec<String> = reps
        .iter()
        .map(|&r| {
            let c = unidx(r);
            let terms: Vec<String> = (0..d)
                .rev()
                .filter(|&deg| c[deg] != base.zero())
                .map(|deg| {
                    poly_term(
                        base.element_name(c[deg]),
                        c[deg] == base.one(),
                        "x",
                        deg,
                    )
                })
                .collect();
            join_terms(terms)
        })
        .collect();

    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for (ia, &ra) in reps.iter().enumerate() {
        let va = unidx(ra);
        for (ib, &rb) in reps.iter().enumerate() {
            add[ia * n + ib] = pos[rep[idx(&vec_add(&va, &unidx(rb)))]] as u16;
            let vb = unidx(rb);
            let mut prod = vec![base.zero(); 2 * d - 1];
            for (i, &ai) in va.iter().enumerate() {
                for (j, &bj) in vb.iter().enumerate() {
                    prod[i + j] = base.add(prod[i + j], base.mul(ai, bj));
                }
            }
            mul[ia * n + ib] = pos[rep[idx(&nf(prod))]] as u16;
        }
    }
    let mut e1 = vec![base.zero(); d];
    e1[0] = base.one();
    let one = pos[rep[idx(&e1)]];
    FiniteRing::from_tables(spec, names, add, mul, 0, one)
}

fn build_bivariate_square(spec: RingSpec, m: u64, cap: usize) -> Result<FiniteRing, RingError> {
    let m = m as usize;
    let n = check_cap((m as u128).pow(3), cap)?;
    // Element (c0, c1, c2) = c0 + c1*x + c2*y with x^2 = xy = y^2 = 0.
    let unidx = |v: usize| -> (usize, usize, usize) { (v % m, (v / m) % m, v / (m * m)) };
    let idx = |c: (usize, usize, usize)| -> usize { c.0 + c.1 * m + c.2 * m * m };
    let names: Vec<String> = (0..n)
        .map(|v| {
            let (c0, c1, c2) = unidx(v);
            let mut terms = Vec::new();
            if c1 != 0 {
                terms.push(poly_term(&c1.to_string(), c1 == 1, "x", 1));
            }
            if c2 != 0 {
                terms.push(poly_term(&c2.to_string(), c2 == 1, "y", 1));
            }
            if c0 != 0 {
                terms.push(c0.to_string());
            }
            join_terms(terms)
        })
        .collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        let (a0, a1, a2) = unidx(a);
        for bix in 0..n {
            let (b0, b1, b2) = unidx(bix);
            add[a * n + bix] = idx(((a0 + b0) % m, (a1 + b1) % m, (a2 + b2) % m)) as u16;
            mul[a * n + bix] =
                idx((a0 * b0 % m, (a0 * b1 + a1 * b0) % m, (a0 * b2 + a2 * b0) % m)) as u16;
        }
    }
    FiniteRing::from_tables(spec, names, add, mul, 0, 1)
}

fn direct_product_capped(factors: &[FiniteRing], cap: usize) -> Result<FiniteRing, RingError> {
    if factors.len() < 2 {
        return Err(RingError::InvalidSpec(
            "product needs at least two factors".into(),
        ));
    }
    let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let total: u128 = orders.iter().map(|&o| o as u128).product();
    let n = check_cap(total, cap)?;
    let k = factors.len();
    // Mixed-radix index, first factor most significant.
    let unidx = |mut v: usize| -> Vec<usize> {
        let mut c = vec![0; k];
        for i in (0..k).rev() {
            c[i] = v % orders[i];
            v /= orders[i];
        }
        c
    };
    let idx = |c: &[usize]| -> usize {
        let mut v = 0;
        for i in 0..k {
            v = v * orders[i] + c[i];
        }
        v
    };
    let names: Vec<String> = (0..n)
        .map(|v| {
            let c = unidx(v);
            let parts: Vec<&str> = (0..k).map(|i| factors[i].element_name(c[i])).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        let va = unidx(a);
        for b in 0..n {
            let vb = unidx(b);
            let sum: Vec<usize> = (0..k).map(|i| factors[i].add(va[i], vb[i])).collect();
            let prod: Vec<usize> = (0..k).map(|i| factors[i].mul(va[i], vb[i])).collect();
            add[a * n + b] = idx(&sum) as u16;
            mul[a * n + b] = idx(&prod) as u16;
        }
    }
    let zero = idx(&factors.iter().map(|f| f.zero()).collect::<Vec<_>>());
    let one = idx(&factors.iter().map(|f| f.one()).collect::<Vec<_>>());
    let spec = RingSpec::Product(factors.iter().map(|f| f.spec().clone()).collect());
    FiniteRing::from_tables(spec, names, add, mul, zero, one)
}

fn poly_term(coeff_name: &str, coeff_is_one: bool, var: &str, deg: usize) -> String {
    if deg == 0 {
        return coeff_name.to_string();
    }
    let var_part = if deg == 1 {
        var.to_string()
    } else {
        format!("{var}^{deg}")
    };
    if coeff_is_one {
        var_part
    } else if coeff_name.contains('+') || coeff_name.contains('-') {
        format!("({coeff_name}){var_part}")
    } else {
        format!("{coeff_name}{var_part}")
    }
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn quotient_z4_2x_x2() -> RingSpec {
        RingSpec::quotient(
            RingSpec::modular(4),
            vec![IntPoly::new(vec![0, 2]), IntPoly::new(vec![0, 0, 1])],
        )
    }

    #[test]
    fn z4_quotient_2x_x2_has_the_expected_normal_forms() {
        // Independent oracle: normal forms are a + b*x with a in Z_4, b in
        // Z_2, because x^2 -> 0 bounds the degree and 2x -> 0 halves the
        // x-coefficient range.
        let expected: BTreeSet<String> = (0..4u32)
            .flat_map(|a| {
                (0..2u32).map(move |b| match (a, b) {
                    (0, 0) => "0".to_string(),
                    (a, 0) => a.to_string(),
                    (0, _) => "x".to_string(),
                    (a, _) => format!("x+{a}"),
                })
            })
            .collect();
        let r = build_ring(&quotient_z4_2x_x2()).unwrap();
        assert_eq!(r.order(), 8);
        let got: BTreeSet<String> = r.element_names().iter().cloned().collect();
        assert_eq!(got, expected);
        r.check_axioms().unwrap();
        // x * x = 0 and 2x = 0 in the built ring.
        let x = r.element_names().iter().position(|n| n == "x").unwrap();
        let two = r.element_names().iter().position(|n| n == "2").unwrap();
        assert_eq!(r.mul(x, x), r.zero());
        assert_eq!(r.mul(two, x), r.zero());
    }

    #[test]
    fn f4_multiplication() {
        let f4 = build_ring(&RingSpec::galois(4).unwrap()).unwrap();
        assert_eq!(f4.order(), 4);
        assert_eq!(f4.element_names(), &["0", "1", "a", "a+1"]);
        let a = 2;
        // a * a = a + 1 under a^2 + a + 1 = 0.
        assert_eq!(f4.mul(a, a), 3);
        assert_eq!(f4.units().len(), 3);
        f4.check_axioms().unwrap();
    }

    #[test]
    fn f8_and_f9_are_fields() {
        for q in [8, 9] {
            let f = build_ring(&RingSpec::galois(q).unwrap()).unwrap();
            assert_eq!(f.order(), q as usize);
            assert_eq!(f.units().len(), q as usize - 1);
            f.check_axioms().unwrap();
        }
    }

    #[test]
    fn the_order_eight_local_presentations() {
        // Each should build with order 8 and |Z(R)| = 4.
        let specs = [
            RingSpec::modular(8),
            RingSpec::quotient(RingSpec::modular(2), vec![IntPoly::new(vec![0, 0, 0, 1])]),
            quotient_z4_2x_x2(),
            RingSpec::quotient(
                RingSpec::modular(4),
                vec![IntPoly::new(vec![0, 2]), IntPoly::new(vec![-2, 0, 1])],
            ),
            RingSpec::bivariate_square(RingSpec::modular(2)),
        ];
        for spec in &specs {
            let r = build_ring(spec).unwrap();
            assert_eq!(r.order(), 8, "{spec}");
            assert_eq!(r.zero_divisors().len(), 4, "{spec}");
            assert!(r.is_local().is_some(), "{spec}");
            r.check_axioms().unwrap();
        }
    }

    #[test]
    fn the_order_sixteen_local_presentations() {
        let f4x2 = RingSpec::quotient(
            RingSpec::galois(4).unwrap(),
            vec![IntPoly::new(vec![0, 0, 1])],
        );
        let galois_ring = RingSpec::quotient(RingSpec::modular(4), vec![IntPoly::new(vec![1, 1, 1])]);
        for spec in [f4x2, galois_ring] {
            let r = build_ring(&spec).unwrap();
            assert_eq!(r.order(), 16, "{spec}");
            assert_eq!(r.zero_divisors().len(), 4, "{spec}");
            assert!(r.is_local().is_some(), "{spec}");
            r.check_axioms().unwrap();
        }
    }

    #[test]
    fn x_squared_minus_two_squares_to_two() {
        let r = build_ring(&RingSpec::quotient(
            RingSpec::modular(4),
            vec![IntPoly::new(vec![0, 2]), IntPoly::new(vec![-2, 0, 1])],
        ))
        .unwrap();
        let x = r.element_names().iter().position(|n| n == "x").unwrap();
        let two = r.element_names().iter().position(|n| n == "2").unwrap();
        assert_eq!(r.mul(x, x), two);
    }

    #[test]
    fn products_multiply_orders_and_units() {
        let z2 = build_ring(&RingSpec::modular(2)).unwrap();
        let z3 = build_ring(&RingSpec::modular(3)).unwrap();
        let f4 = build_ring(&RingSpec::galois(4).unwrap()).unwrap();
        let p = direct_product(&[z2.clone(), z3.clone()]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.units().len(), 2);
        p.check_axioms().unwrap();
        let p2 = direct_product(&[z2.clone(), f4]).unwrap();
        assert_eq!(p2.order(), 8);
        // 8 - |U| = 8 - 3 = 5 elements with a zero coordinate.
        assert_eq!(p2.zero_divisors().len(), 5);
        let p3 = direct_product(&[z2.clone(), z2.clone(), z2]).unwrap();
        assert_eq!(p3.order(), 8);
        assert!(p3.is_local().is_none());
    }

    #[test]
    fn product_addition_is_componentwise() {
        let z2 = build_ring(&RingSpec::modular(2)).unwrap();
        let p = direct_product(&[z2.clone(), z2]).unwrap();
        let ten = p.element_names().iter().position(|n| n == "(1,0)").unwrap();
        let zero_one = p.element_names().iter().position(|n| n == "(0,1)").unwrap();
        let one_one = p.element_names().iter().position(|n| n == "(1,1)").unwrap();
        assert_eq!(p.add(ten, zero_one), one_one);
    }

    #[test]
    fn non_finite_quotient_is_detected() {
        // Z_4[x]/(2x) has infinitely many normal forms: no unit-leading
        // relation bounds the degree.
        let spec = RingSpec::quotient(RingSpec::modular(4), vec![IntPoly::new(vec![0, 2])]);
        match build_ring(&spec) {
            Err(RingError::NonFiniteQuotient { .. }) => {}
            other => panic!("expected NonFiniteQuotient, got {other:?}"),
        }
    }

    #[test]
    fn collapsing_quotient_is_rejected() {
        // x - 1 and x together force 1 = 0.
        let spec = RingSpec::quotient(
            RingSpec::modular(4),
            vec![IntPoly::new(vec![-1, 1]), IntPoly::new(vec![0, 1])],
        );
        assert!(matches!(build_ring(&spec), Err(RingError::InvalidSpec(_))));
    }

    #[test]
    fn constant_relations_fold_into_the_base() {
        // Z_4[x]/(2, x^2) = Z_2[x]/(x^2): order 4.
        let spec = RingSpec::quotient(
            RingSpec::modular(4),
            vec![IntPoly::new(vec![2]), IntPoly::new(vec![0, 0, 1])],
        );
        let r = build_ring(&spec).unwrap();
        assert_eq!(r.order(), 4);
        r.check_axioms().unwrap();
    }

    #[test]
    fn galois_quotient_f4_x_squared() {
        let spec = RingSpec::quotient(
            RingSpec::galois(4).unwrap(),
            vec![IntPoly::new(vec![0, 0, 1])],
        );
        let r = build_ring(&spec).unwrap();
        assert_eq!(r.order(), 16);
        // Coefficient names from F_4 are parenthesized in composite terms.
        assert!(r.element_names().iter().any(|n| n == "(a+1)x+a"));
    }
}
