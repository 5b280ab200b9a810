use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{fiber_over, section, ExactMatrix, RankLociError, Result, Variant};

/// Seeded integer sampling. Sample `i` draws from its own ChaCha stream, so
/// the report does not depend on evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub bound: u32,
    pub samples: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            bound: 10,
            samples: 100,
        }
    }
}

impl SampleConfig {
    fn validate(&self) -> Result<()> {
        if self.bound == 0 {
            return Err(RankLociError::Config("bound must be positive".into()));
        }
        if self.samples == 0 {
            return Err(RankLociError::Config("samples must be positive".into()));
        }
        Ok(())
    }

    fn rng(&self, index: usize, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((index as u64) << 1) | stream);
        rng
    }
}

fn draw(rng: &mut ChaCha8Rng, bound: u32) -> BigRational {
    let b = i64::from(bound);
    BigRational::from_integer(BigInt::from(rng.gen_range(-b..=b)))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: u32) -> ExactMatrix {
    let entries: Vec<Vec<BigRational>> = (0..rows)
        .map(|_| (0..cols).map(|_| draw(rng, bound)).collect())
        .collect();
    ExactMatrix::from_rows(entries).expect("rectangular by construction")
}

/// Uniform `(n+1) × n` integer matrix.
pub fn random_hom(rng: &mut ChaCha8Rng, n: usize, bound: u32) -> ExactMatrix {
    random_matrix(rng, n + 1, n, bound)
}

/// Uniform alternating `size × size` integer matrix.
pub fn random_alternating(rng: &mut ChaCha8Rng, size: usize, bound: u32) -> ExactMatrix {
    let upper: Vec<BigRational> = (0..size * size.saturating_sub(1) / 2)
        .map(|_| draw(rng, bound))
        .collect();
    ExactMatrix::alternating_from_upper(size, &upper)
}

fn standard_symplectic(size: usize) -> ExactMatrix {
    ExactMatrix::from_fn(size, size, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            BigRational::one()
        } else if j % 2 == 0 && i == j + 1 {
            -BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// A matrix in the rank-deficient locus `D`: a product through `C^{n-1}`
/// (HOM) or `B J B^t` with `J` of size `n-2` (ALT).
pub fn random_low_rank(variant: Variant, rng: &mut ChaCha8Rng, n: usize, bound: u32) -> ExactMatrix {
    match variant {
        Variant::Hom => {
            let left = random_matrix(rng, n + 1, n - 1, bound);
            let right = random_matrix(rng, n - 1, n, bound);
            left.mul(&right).expect("inner dimensions agree")
        }
        Variant::Alt => {
            let b = random_matrix(rng, n + 1, n - 2, bound);
            let j = standard_symplectic(n - 2);
            b.mul(&j)
                .and_then(|bj| bj.mul(&b.transpose()))
                .expect("inner dimensions agree")
        }
    }
}

fn random_generic(variant: Variant, rng: &mut ChaCha8Rng, n: usize, bound: u32) -> ExactMatrix {
    match variant {
        Variant::Hom => random_hom(rng, n, bound),
        Variant::Alt => random_alternating(rng, n + 1, bound),
    }
}

/// Validates probe parameters without sampling.
pub fn check_probe_params(variant: Variant, n: usize, cfg: &SampleConfig) -> Result<()> {
    check_variant(variant, n)?;
    cfg.validate()
}

fn check_variant(variant: Variant, n: usize) -> Result<()> {
    if n < 2 {
        return Err(RankLociError::Config(format!("n = {n} is below 2")));
    }
    if variant == Variant::Alt && n % 2 == 1 {
        return Err(RankLociError::OddN(n));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BirationalReport {
    pub variant: Variant,
    pub n: usize,
    pub config: SampleConfig,
    pub full_rank: usize,
    pub singleton_fibers: usize,
    pub degenerate_draws: usize,
    pub pass: bool,
}

/// Every full-rank random draw must have a single-point fiber.
pub fn probe_birational(variant: Variant, n: usize, cfg: &SampleConfig) -> Result<BirationalReport> {
    check_variant(variant, n)?;
    cfg.validate()?;
    let outcomes = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let phi = random_generic(variant, &mut cfg.rng(i, 0), n, cfg.bound);
            if phi.rank() < n {
                return Ok((0, 0, 1));
            }
            let fiber = fiber_over(variant, &phi)?;
            Ok((
                1,
                usize::from(fiber.dim == 0 && fiber.representative.is_some()),
                0,
            ))
        })
        .collect::<Result<Vec<(usize, usize, usize)>>>()?;
    let (full_rank, singleton_fibers, degenerate_draws) = outcomes
        .into_iter()
        .fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    Ok(BirationalReport {
        variant,
        n,
        config: *cfg,
        full_rank,
        singleton_fibers,
        degenerate_draws,
        pass: singleton_fibers == full_rank,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalReport {
    pub variant: Variant,
    pub n: usize,
    pub config: SampleConfig,
    pub low_rank_samples: usize,
    pub positive_dim_fibers: usize,
    pub kernel_vectors: usize,
    pub vanishing_sections: usize,
    pub full_rank: usize,
    pub nonvanishing_sections: usize,
    pub pass: bool,
}

#[derive(Default)]
struct Tally {
    low_rank: usize,
    positive_dim: usize,
    kernel_vectors: usize,
    vanishing: usize,
    full_rank: usize,
    nonvanishing: usize,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            low_rank: self.low_rank + o.low_rank,
            positive_dim: self.positive_dim + o.positive_dim,
            kernel_vectors: self.kernel_vectors + o.kernel_vectors,
            vanishing: self.vanishing + o.vanishing,
            full_rank: self.full_rank + o.full_rank,
            nonvanishing: self.nonvanishing + o.nonvanishing,
        }
    }
}

fn exceptional_sample(variant: Variant, n: usize, cfg: &SampleConfig, i: usize) -> Result<Tally> {
    let mut t = Tally::default();

    let low = random_low_rank(variant, &mut cfg.rng(i, 0), n, cfg.bound);
    t.low_rank = 1;
    let fiber = fiber_over(variant, &low)?;
    t.positive_dim = usize::from(fiber.dim >= 1);
    let kernel = match variant {
        Variant::Hom => low.transpose().kernel_basis(),
        Variant::Alt => low.kernel_basis(),
    };
    t.kernel_vectors = kernel.len();
    for v in &kernel {
        if section(variant, v, &low)?.is_zero() {
            t.vanishing += 1;
        }
    }

    let generic = random_generic(variant, &mut cfg.rng(i, 1), n, cfg.bound);
    if generic.rank() == n {
        t.full_rank = 1;
        let fiber = fiber_over(variant, &generic)?;
        if let Some(v) = fiber.representative {
            if !section(variant, &v, &generic)?.is_zero() {
                t.nonvanishing = 1;
            }
        }
    }
    Ok(t)
}

/// On constructed rank-deficient samples every kernel vector gives a
/// positive-dimensional fiber and a vanishing section; on full-rank draws the
/// section at the unique fiber point is nonzero.
pub fn probe_exceptional(variant: Variant, n: usize, cfg: &SampleConfig) -> Result<ExceptionalReport> {
    check_variant(variant, n)?;
    cfg.validate()?;
    let t = (0..cfg.samples)
        .into_par_iter()
        .map(|i| exceptional_sample(variant, n, cfg, i))
        .collect::<Result<Vec<Tally>>>()?
        .into_iter()
        .fold(Tally::default(), Tally::merge);
    let pass =
        t.positive_dim == t.low_rank && t.vanishing == t.kernel_vectors && t.nonvanishing == t.full_rank;
    Ok(ExceptionalReport {
        variant,
        n,
        config: *cfg,
        low_rank_samples: t.low_rank,
        positive_dim_fibers: t.positive_dim,
        kernel_vectors: t.kernel_vectors,
        vanishing_sections: t.vanishing,
        full_rank: t.full_rank,
        nonvanishing_sections: t.nonvanishing,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn birational_probes_pass() {
        let cfg = SampleConfig::default();
        let r = probe_birational(Variant::Hom, 2, &cfg).unwrap();
        assert!(r.pass);
        assert_eq!(r.full_rank + r.degenerate_draws, 100);
        assert!(r.full_rank > 90);
        let r = probe_birational(Variant::Alt, 4, &cfg).unwrap();
        assert!(r.pass && r.full_rank > 90);
        assert_eq!(
            probe_birational(Variant::Alt, 3, &cfg),
            Err(RankLociError::OddN(3))
        );
    }

    #[test]
    fn exceptional_probes_pass() {
        let cfg = SampleConfig {
            samples: 20,
            ..SampleConfig::default()
        };
        let r = probe_exceptional(Variant::Hom, 3, &cfg).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.kernel_vectors >= 2 * r.low_rank_samples);
        let r = probe_exceptional(Variant::Alt, 4, &cfg).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn low_rank_constructions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            assert!(random_low_rank(Variant::Hom, &mut rng, 4, 5).rank() <= 3);
            let a = random_low_rank(Variant::Alt, &mut rng, 4, 5);
            assert!(a.is_alternating());
            assert!(a.rank() <= 2);
        }
        // n = 2: the ALT construction is the zero matrix
        let z = random_low_rank(Variant::Alt, &mut rng, 2, 5);
        assert!(z.is_zero());
        assert_eq!(fiber_over(Variant::Alt, &z).unwrap().dim, 2);
    }

    #[test]
    fn config_is_validated() {
        let cfg = SampleConfig {
            bound: 0,
            ..SampleConfig::default()
        };
        assert!(probe_birational(Variant::Hom, 2, &cfg).is_err());
        let cfg = SampleConfig {
            samples: 0,
            ..SampleConfig::default()
        };
        assert!(probe_exceptional(Variant::Hom, 2, &cfg).is_err());
    }
}
