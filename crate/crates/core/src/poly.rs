//! Internal univariate rational polynomials: just enough for minimal
//! polynomials, rational root extraction and the CRT idempotents used by
//! the Wedderburn search. Coefficients are stored low degree first.

use crate::scalar::Scalar;
use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, Zero};

pub type Poly = Vec<Scalar>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

pub fn is_zero(p: &Poly) -> bool {
    p.iter().all(Zero::is_zero)
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if is_zero(a) || is_zero(b) {
        return vec![];
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(out)
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = &out[i] + x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = &out[i] + y;
    }
    trim(out)
}

pub fn scale(a: &Poly, c: &Scalar) -> Poly {
    trim(a.iter().map(|x| x * c).collect())
}

/// Quotient and remainder of `a / b`; panics on zero divisor.
pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    assert!(!is_zero(&b), "polynomial division by zero");
    let mut rem = trim(a.clone());
    let mut quot = vec![Scalar::zero(); rem.len().saturating_sub(b.len() - 1)];
    while !is_zero(&rem) && rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coeff = rem.last().unwrap() / b.last().unwrap();
        quot[shift] = coeff.clone();
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(&coeff * bc);
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let mut r0 = trim(a.clone());
    let mut r1 = trim(b.clone());
    let (mut s0, mut s1) = (vec![Scalar::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![Scalar::one()]);
    while !is_zero(&r1) {
        let (q, r) = divrem(&r0, &r1);
        let ns = add(&s0, &scale(&mul(&q, &s1), &-Scalar::one()));
        let nt = add(&t0, &scale(&mul(&q, &t1), &-Scalar::one()));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        return (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv));
    }
    (r0, s0, t0)
}

pub fn eval(p: &Poly, x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = &acc * x + c;
    }
    acc
}

/// `x - λ` as a polynomial.
pub fn linear(root: &Scalar) -> Poly {
    vec![-root.clone(), Scalar::one()]
}

/// Multiplicity of `root` in `p`.
pub fn root_multiplicity(p: &Poly, root: &Scalar) -> usize {
    let lin = linear(root);
    let mut m = 0;
    let mut q = trim(p.clone());
    loop {
        let (quot, rem) = divrem(&q, &lin);
        if !is_zero(&rem) {
            return m;
        }
        m += 1;
        q = quot;
        if q.is_empty() {
            return m;
        }
    }
}

/// Divisors of `n` found by trial division, or `None` when `|n|`
/// resists factorisation within the budget. Includes both signs.
fn divisors(n: &BigInt, budget: u64) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    if n.is_zero() {
        return Some(vec![]);
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    let mut steps = 0u64;
    while &d * &d <= n {
        steps += 1;
        if steps > budget {
            return None;
        }
        if (&n % &d).is_zero() {
            let mut mult = 0;
            while (&n % &d).is_zero() {
                n = &n / &d;
                mult += 1;
            }
            factors.push((d.clone(), mult));
        }
        d += 1;
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, mult) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut power = BigInt::one();
            for _ in 0..=mult {
                next.push(d * &power);
                power = &power * &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    let mut signed = Vec::with_capacity(divs.len() * 2);
    for d in divs {
        signed.push(-&d);
        signed.push(d);
    }
    Some(signed)
}

/// All rational roots of `p` with multiplicity 1 entries (distinct roots),
/// or `None` if the constant/leading coefficients resist factorisation.
pub fn rational_roots(p: &Poly) -> Option<Vec<Scalar>> {
    let p = trim(p.clone());
    if p.len() <= 1 {
        return Some(vec![]);
    }
    // Clear denominators to an integer polynomial.
    let mut denom_lcm = BigInt::one();
    for c in &p {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> =
        p.iter().map(|c| c.numer() * (&denom_lcm / c.denom())).collect();
    // Strip powers of x: zero is a root when the constant term vanishes.
    let mut roots = Vec::new();
    let first_nonzero = ints.iter().position(|c| !c.is_zero()).unwrap();
    if first_nonzero > 0 {
        roots.push(Scalar::zero());
    }
    let ints = &ints[first_nonzero..];
    if ints.len() <= 1 {
        return Some(roots);
    }
    let budget = 2_000_000;
    let ps = divisors(&ints[0], budget)?;
    let qs = divisors(ints.last().unwrap(), budget)?;
    for num in &ps {
        for den in &qs {
            if den.is_negative() || den.is_zero() {
                continue;
            }
            let cand = BigRational::new(num.clone(), den.clone());
            if eval(&p, &cand).is_zero() && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
    }
    roots.sort();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    #[test]
    fn divrem_exact() {
        // (x - 1)(x - 2) = x^2 - 3x + 2
        let p = vec![rat(2), rat(-3), rat(1)];
        let (q, r) = divrem(&p, &linear(&rat(1)));
        assert!(is_zero(&r));
        assert_eq!(q, vec![rat(-2), rat(1)]);
    }

    #[test]
    fn xgcd_bezout() {
        let a = vec![rat(-1), rat(1)]; // x - 1
        let b = vec![rat(-2), rat(1)]; // x - 2
        let (g, s, t) = xgcd(&a, &b);
        assert_eq!(g, vec![rat(1)]);
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), vec![rat(1)]);
    }

    #[test]
    fn roots_of_quadratics() {
        // 2x^2 - x - 1 = (2x + 1)(x - 1): roots -1/2, 1
        let p = vec![rat(-1), rat(-1), rat(2)];
        assert_eq!(rational_roots(&p).unwrap(), vec![ratio(-1, 2), rat(1)]);
        // x^2 + 1 has no rational roots
        assert!(rational_roots(&vec![rat(1), rat(0), rat(1)]).unwrap().is_empty());
        // x^2 - 2 has no rational roots
        assert!(rational_roots(&vec![rat(-2), rat(0), rat(1)]).unwrap().is_empty());
    }

    #[test]
    fn multiplicity() {
        // x^2 (x - 3)
        let p = mul(&vec![rat(0), rat(0), rat(1)], &linear(&rat(3)));
        assert_eq!(root_multiplicity(&p, &rat(0)), 2);
        assert_eq!(root_multiplicity(&p, &rat(3)), 1);
        assert_eq!(root_multiplicity(&p, &rat(1)), 0);
    }
}
