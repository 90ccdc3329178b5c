//! Random groups, homomorphisms and right-hand sides for tests and benchmarks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::pow;
use crate::group::{FgAbelianGroup, GroupElement, Homomorphism};
use crate::matrix::Matrix;

/// Range for coordinates and matrix entries that are not bounded by an order.
pub const FREE_RANGE: i64 = 6;

/// `⊕ Z_{p^{e_i}}` with rank in `1..=max_rank` and `e_i` in `1..=max_exp`.
pub fn random_p_group<R: Rng>(rng: &mut R, p: u64, max_rank: usize, max_exp: u32) -> FgAbelianGroup {
    let rank = rng.gen_range(1..=max_rank);
    FgAbelianGroup::new((0..rank).map(|_| pow(p, rng.gen_range(1..=max_exp)))).expect("positive orders")
}

/// Factors `Z_{p^e}` with each `p` drawn from `primes`.
pub fn random_prime_power_group<R: Rng>(rng: &mut R, primes: &[u64], max_rank: usize, max_exp: u32) -> FgAbelianGroup {
    let rank = rng.gen_range(1..=max_rank);
    FgAbelianGroup::new((0..rank).map(|_| pow(*primes.choose(rng).expect("primes"), rng.gen_range(1..=max_exp))))
        .expect("positive orders")
}

/// Finite group of order at most `max_order` whose cyclic factors may have
/// composite (or trivial) orders built from `primes`.
pub fn random_bounded_group<R: Rng>(rng: &mut R, primes: &[u64], max_order: u64, max_rank: usize) -> FgAbelianGroup {
    let rank = rng.gen_range(1..=max_rank);
    let mut orders = Vec::with_capacity(rank);
    let mut total = 1u64;
    for _ in 0..rank {
        if rng.gen_ratio(1, 10) {
            orders.push(1);
            continue;
        }
        let mut o = 1u64;
        for _ in 0..rng.gen_range(1..=2) {
            let p = *primes.choose(rng).expect("primes");
            o *= p.pow(rng.gen_range(1..=3));
        }
        if total * o > max_order {
            break;
        }
        total *= o;
        orders.push(o);
    }
    if orders.is_empty() {
        orders.push(*primes.choose(rng).expect("primes"));
    }
    FgAbelianGroup::new(orders).expect("positive orders")
}

/// Adds free factors to `group` at random positions.
pub fn with_free_factors<R: Rng>(rng: &mut R, group: &FgAbelianGroup, count: usize) -> FgAbelianGroup {
    let mut orders = group.orders().to_vec();
    for _ in 0..count {
        let at = rng.gen_range(0..=orders.len());
        orders.insert(at, BigInt::zero());
    }
    FgAbelianGroup::new(orders).expect("nonnegative orders")
}

fn below<R: Rng>(rng: &mut R, n: &BigInt) -> BigInt {
    BigInt::from(rng.gen_range(0..n.to_u64().expect("small order")))
}

pub fn random_element<R: Rng>(rng: &mut R, group: &FgAbelianGroup) -> GroupElement {
    let v: Vec<BigInt> = group
        .orders()
        .iter()
        .map(|o| if o.is_zero() { BigInt::from(rng.gen_range(-FREE_RANGE..=FREE_RANGE)) } else { below(rng, o) })
        .collect();
    group.element(&v).expect("matching rank")
}

/// A uniformly random well-defined homomorphism on bounded entries: entry
/// `(i, j)` is a multiple of `q_i / gcd(q_i, o_j)`, and zero when a finite
/// factor maps to a free one.
pub fn random_hom<R: Rng>(rng: &mut R, source: &FgAbelianGroup, target: &FgAbelianGroup) -> Homomorphism {
    let (n, m) = (source.rank(), target.rank());
    let mut a = Matrix::zeros(m, n);
    for (i, q) in target.orders().iter().enumerate() {
        for (j, o) in source.orders().iter().enumerate() {
            a[(i, j)] = match (q.is_zero(), o.is_zero()) {
                (true, true) => BigInt::from(rng.gen_range(-FREE_RANGE..=FREE_RANGE)),
                (true, false) => BigInt::zero(),
                (false, true) => below(rng, q),
                (false, false) => {
                    let step = q / q.gcd(o);
                    below(rng, &(q / &step)) * step
                }
            };
        }
    }
    Homomorphism::new(source.clone(), target.clone(), a).expect("valid by construction")
}

/// Half the time the image of a random source element, otherwise a random
/// target element.
pub fn random_rhs<R: Rng>(rng: &mut R, hom: &Homomorphism) -> GroupElement {
    if rng.gen_bool(0.5) {
        hom.apply(&random_element(rng, hom.source())).expect("source element")
    } else {
        random_element(rng, hom.target())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn homomorphisms_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = random_bounded_group(&mut rng, &[2, 3, 5], 256, 3);
            let extra = rng.gen_range(0..2);
            let g = with_free_factors(&mut rng, &g, extra);
            let h = random_bounded_group(&mut rng, &[2, 3, 5], 256, 3);
            let extra = rng.gen_range(0..2);
            let h = with_free_factors(&mut rng, &h, extra);
            let hom = random_hom(&mut rng, &g, &h);
            assert!(hom.validate().is_ok());
            let b = random_rhs(&mut rng, &hom);
            assert_eq!(b.group(), &h);
        }
    }

    #[test]
    fn bounded_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let g = random_bounded_group(&mut rng, &[2, 3, 5], 256, 4);
            assert!(g.order().unwrap() <= BigInt::from(256));
        }
    }

    #[test]
    fn seeded_determinism() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_p_group(&mut rng, 3, 3, 3);
            let h = random_prime_power_group(&mut rng, &[2, 3], 3, 3);
            random_hom(&mut rng, &g, &h)
        };
        assert_eq!(draw(42), draw(42));
    }
}
