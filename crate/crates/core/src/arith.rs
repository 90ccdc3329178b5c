//! Integer helpers shared by the solvers: reductions, inverses, valuations,
//! factorization of factor orders and Chinese remaindering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Least nonnegative residue of `a` modulo `m`. A modulus of zero means
/// "no reduction" (an integer equation), so `a` is returned unchanged.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        a.clone()
    } else {
        a.mod_floor(&m.abs())
    }
}

/// `p^e` as a big integer.
pub fn pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm, when it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let g = a.mod_floor(m).extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// p-adic valuation of `n`, capped at `cap`. Zero (and anything divisible by
/// `p^cap`) has valuation `cap`.
pub fn p_valuation(n: &BigInt, p: u64, cap: u32) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while v < cap {
        if n.is_zero() {
            return cap;
        }
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        n = q;
        v += 1;
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization of a positive integer by trial division, primes ascending.
///
/// Returns `None` if `n` is not positive or carries a prime factor that does
/// not fit in a `u64`.
pub fn factor(n: &BigInt) -> Option<Vec<(u64, u32)>> {
    if !n.is_positive() {
        return None;
    }
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    loop {
        let dd = BigInt::from(d) * BigInt::from(d);
        if dd > n {
            break;
        }
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push((n.to_u64()?, 1));
    }
    Some(out)
}

/// Solves `x ≡ r_i (mod m_i)` for pairwise coprime positive moduli; the result
/// lies in `[0, ∏ m_i)`.
pub fn crt(residues: &[(BigInt, BigInt)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, mi) in residues {
        // x + m*k ≡ r (mod mi)
        let inv = mod_inverse(&m, mi).expect("crt moduli must be pairwise coprime");
        let k = ((r - &x) * inv).mod_floor(mi);
        x += &m * k;
        m *= mi;
    }
    x.mod_floor(&m)
}

/// Least common multiple of positive integers (1 for an empty list).
pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v))
}

/// Decomposes a prime power `q = p^e` (with `q > 1`).
pub fn prime_power(q: &BigInt) -> Option<(u64, u32)> {
    match factor(q)?.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p_valuation(&b(12), 2, 4), 2);
        assert_eq!(p_valuation(&b(5), 3, 2), 0);
        assert_eq!(p_valuation(&b(0), 2, 3), 3);
        assert_eq!(p_valuation(&b(-16), 2, 3), 3);
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(&b(3), &b(4)), Some(b(3)));
        assert_eq!(mod_inverse(&b(-1), &b(9)), Some(b(8)));
        assert_eq!(mod_inverse(&b(3), &b(9)), None);
    }

    #[test]
    fn factor_and_crt() {
        assert_eq!(factor(&b(360)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(&b(1)).unwrap(), vec![]);
        assert_eq!(factor(&b(97)).unwrap(), vec![(97, 1)]);
        assert_eq!(crt(&[(b(1), b(2)), (b(2), b(3))]), b(5));
        assert_eq!(prime_power(&b(27)), Some((3, 3)));
        assert_eq!(prime_power(&b(12)), None);
    }

    #[test]
    fn modulo_zero_is_identity() {
        assert_eq!(modulo(&b(-7), &b(0)), b(-7));
        assert_eq!(modulo(&b(-7), &b(4)), b(1));
    }
}
