use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Computation context: one seed drives every random choice, and the caps
/// bound intermediate polynomial growth during elimination.
///
/// Identical contexts give identical runs. Each sampling site derives its
/// own stream from `(seed, site name, attempt)`, so results do not depend
/// on call order and independent operations can run in parallel.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub seed: u64,
    /// Number of independent generic-point attempts before giving up.
    pub samples: u32,
    /// Total-degree cap for intermediate polynomials.
    pub max_degree: u32,
    /// Coefficient bit-size cap (numerator plus denominator).
    pub max_bits: u64,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx {
            seed: 0,
            samples: 3,
            max_degree: 64,
            max_bits: 4096,
        }
    }
}

impl Ctx {
    pub fn with_seed(seed: u64) -> Self {
        Ctx {
            seed,
            ..Ctx::default()
        }
    }

    /// Deterministic per-site RNG stream.
    pub fn rng_for(&self, site: &str, attempt: u64) -> ChaCha8Rng {
        let mut h = fnv1a(site.as_bytes());
        h ^= attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    /// Random rational with numerator and denominator bounded by 100.
    /// Avoids 0 so that products of sampled values stay nonzero.
    pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
        let mut num: i64 = rng.gen_range(-100..=100);
        if num == 0 {
            num = 1;
        }
        let den: i64 = rng.gen_range(1..=100);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Random small integer in `[-bound, bound] \ {0}`, as a rational.
    pub fn random_small_int(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
        let mut v: i64 = rng.gen_range(-bound..=bound);
        if v == 0 {
            v = 1;
        }
        BigRational::from_integer(BigInt::from(v))
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_is_deterministic_per_site() {
        let ctx = Ctx::with_seed(7);
        let mut a = ctx.rng_for("op", 0);
        let mut b = ctx.rng_for("op", 0);
        assert_eq!(
            Ctx::random_rational(&mut a),
            Ctx::random_rational(&mut b)
        );
        let mut c = ctx.rng_for("other", 0);
        // different sites give independent streams
        let _ = Ctx::random_rational(&mut c);
    }
}
