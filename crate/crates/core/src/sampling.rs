//! Seeded random generation of ordinals from the two-tier fragment.
//!
//! The sampler drives fuzz-style consistency suites and the CLI's
//! self-check commands: identical seeds reproduce identical streams.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ordinal::{Exponent, Ordinal};

/// Shape limits for generated values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleProfile {
    /// Permit terms built on the first symbolic tier.
    pub allow_kappa: bool,
    /// Permit the bare second-tier unit term.
    pub allow_kplus: bool,
    /// Maximum number of CNF terms per value.
    pub max_terms: usize,
    /// Maximum coefficient per term.
    pub max_coeff: u64,
    /// Maximum nesting depth of pure exponents.
    pub max_depth: u32,
}

impl Default for SampleProfile {
    fn default() -> Self {
        SampleProfile {
            allow_kappa: true,
            allow_kplus: false,
            max_terms: 3,
            max_coeff: 4,
            max_depth: 2,
        }
    }
}

/// Deterministic ordinal generator.
#[derive(Debug, Clone)]
pub struct OrdinalSampler {
    rng: ChaCha8Rng,
    profile: SampleProfile,
}

impl OrdinalSampler {
    /// Sampler with the default profile (κ on, κ⁺ off).
    pub fn new(seed: u64) -> Self {
        Self::with_profile(seed, SampleProfile::default())
    }

    /// Sampler with explicit shape limits.
    pub fn with_profile(seed: u64, profile: SampleProfile) -> Self {
        OrdinalSampler { rng: ChaCha8Rng::seed_from_u64(seed), profile }
    }

    /// Next value; zero occurs with small probability.
    pub fn next(&mut self) -> Ordinal {
        let n = self.rng.gen_range(0..=self.profile.max_terms);
        let mut out = Ordinal::zero();
        for _ in 0..n {
            let e = self.exponent();
            let c = self.rng.gen_range(1..=self.profile.max_coeff);
            // Natural sum merges duplicate exponents and keeps CNF order.
            if let Ok(v) = out.natural_sum(&Ordinal::single(e, c)) {
                out = v;
            }
        }
        out
    }

    /// Next value guaranteed nonzero.
    pub fn next_nonzero(&mut self) -> Ordinal {
        loop {
            let v = self.next();
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Uniform-ish value strictly below `bound` (which must be nonzero).
    pub fn below(&mut self, bound: &Ordinal) -> Ordinal {
        assert!(!bound.is_zero(), "below(0) is empty");
        for _ in 0..64 {
            let v = crate::intervals::random_at_most(&mut self.rng, bound);
            if v < *bound {
                return v;
            }
        }
        Ordinal::zero()
    }

    fn exponent(&mut self) -> Exponent {
        let p = self.profile;
        let pick = self.rng.gen_range(0..if p.allow_kplus { 6 } else { 5 });
        match pick {
            5 => Exponent::new(1, Ordinal::zero(), Ordinal::zero()).expect("bare unit"),
            4 | 3 if p.allow_kappa => {
                let ke = self.pure(p.max_depth);
                let ke = if ke.is_zero() { Ordinal::one() } else { ke };
                let tail = self.pure(p.max_depth);
                Exponent::new(0, ke, tail).expect("first-tier exponent")
            }
            _ => Exponent::pure(self.pure(p.max_depth)).expect("pure exponent"),
        }
    }

    /// Pure (symbol-free) ordinal with exponent nesting at most `depth`.
    fn pure(&mut self, depth: u32) -> Ordinal {
        let p = self.profile;
        let n = self.rng.gen_range(0..=p.max_terms.min(2));
        let mut out = Ordinal::zero();
        for _ in 0..n {
            let e = if depth == 0 {
                Ordinal::from_nat(self.rng.gen_range(0..3))
            } else {
                self.pure(depth - 1)
            };
            let c = self.rng.gen_range(1..=p.max_coeff);
            let term = Ordinal::single(Exponent::pure(e).expect("pure"), c);
            if let Ok(v) = out.natural_sum(&term) {
                out = v;
            }
        }
        out
    }
}
