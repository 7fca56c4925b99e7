//! Seeded random specializations for equality checks by evaluation.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::factored::FactoredRational;
use crate::poly::Assignment;
use crate::var::VariableId;

/// Draws assignments with small numerators and denominators from a seeded stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> BigRational {
        let num: i64 = self.rng.gen_range(-40..=40);
        let den: i64 = self.rng.gen_range(1..=9);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn assignment(&mut self, vars: &BTreeSet<VariableId>) -> Assignment {
        vars.iter().map(|v| (*v, self.rational())).collect()
    }

    /// An assignment at which none of the given values has a vanishing denominator.
    pub fn generic_assignment(
        &mut self,
        vars: &BTreeSet<VariableId>,
        values: &[&FactoredRational],
    ) -> Assignment {
        loop {
            let a = self.assignment(vars);
            let ok = values.iter().all(|v| {
                v.denominator()
                    .all(|(form, _)| form.evaluate(&a).is_ok_and(|x| !x.is_zero()))
            });
            if ok {
                return a;
            }
        }
    }
}

/// Compares two rational functions at `points` random generic assignments.
pub fn sampled_equal(
    a: &FactoredRational,
    b: &FactoredRational,
    points: usize,
    seed: u64,
) -> Result<bool, AlgebraError> {
    let mut vars = a.variables();
    vars.extend(b.variables());
    let mut sampler = Sampler::new(seed);
    for _ in 0..points {
        let at = sampler.generic_assignment(&vars, &[a, b]);
        if a.evaluate(&at)? != b.evaluate(&at)? {
            return Ok(false);
        }
    }
    Ok(true)
}
