//! Seed-deterministic random families for the property runs.
//!
//! Support points come from the rational grid `{k/8 : 0 ≤ k ≤ 64}` and masses
//! from integer weights normalized on the simplex, so every generated
//! distribution is exactly representable and all order checks stay exact.

use crate::dist::DiscreteDist;
use crate::rational::q;
use crate::rng::SplitMix64;

/// Shape limits for the generator.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorConfig {
    pub max_members: usize,
    pub max_support: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            max_members: 6,
            max_support: 8,
        }
    }
}

/// One distribution with 1..=max_support atoms on the grid.
pub fn random_dist(rng: &mut SplitMix64, max_support: usize) -> DiscreteDist {
    let support = 1 + rng.next_below(max_support as u64) as usize;
    let mut positions: Vec<i64> = Vec::with_capacity(support);
    while positions.len() < support {
        let k = rng.next_below(65) as i64;
        if !positions.contains(&k) {
            positions.push(k);
        }
    }
    positions.sort_unstable();
    let weights: Vec<i64> = (0..support)
        .map(|_| 1 + rng.next_below(16) as i64)
        .collect();
    let total: i64 = weights.iter().sum();
    let atoms = positions
        .into_iter()
        .zip(weights)
        .map(|(k, w)| (q(k, 8), q(w, total)))
        .collect();
    DiscreteDist::new(atoms).expect("grid sampler produces valid distributions")
}

/// A family of 1..=max_members random distributions.
pub fn random_family(rng: &mut SplitMix64, cfg: &GeneratorConfig) -> Vec<DiscreteDist> {
    let members = 1 + rng.next_below(cfg.max_members as u64) as usize;
    (0..members)
        .map(|_| random_dist(rng, cfg.max_support))
        .collect()
}

/// Deterministic textual form used to reproduce a failing family.
pub fn family_fingerprint(family: &[DiscreteDist]) -> String {
    use crate::rational::format_ratio;
    let parts: Vec<String> = family
        .iter()
        .map(|d| {
            let atoms: Vec<String> = d
                .atoms()
                .iter()
                .map(|(x, p)| format!("{}:{}", format_ratio(x), format_ratio(p)))
                .collect();
            format!("{{{}}}", atoms.join(", "))
        })
        .collect();
    parts.join(" | ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        let cfg = GeneratorConfig::default();
        for _ in 0..20 {
            assert_eq!(random_family(&mut a, &cfg), random_family(&mut b, &cfg));
        }
    }

    #[test]
    fn shapes_respect_limits() {
        let mut rng = SplitMix64::new(3);
        let cfg = GeneratorConfig::default();
        for _ in 0..200 {
            let fam = random_family(&mut rng, &cfg);
            assert!(!fam.is_empty() && fam.len() <= cfg.max_members);
            for d in fam {
                assert!(d.support_size() <= cfg.max_support);
            }
        }
    }
}
