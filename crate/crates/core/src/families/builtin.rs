use crate::dist::{ClosedFormDist, DiscreteDist};
use crate::rational::{pow_i, q_from_f64, q_one, to_f64, Q};
use num_traits::ToPrimitive;

/// The two indexed counterexample sequences: members of `phi` put mass `1/n`
/// at `n`, members of `psi` put mass `1/(n log n)` at `n` (natural log), both
/// from `n = 2` so the log is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinBase {
    Phi,
    Psi,
}

/// A builtin family: an indexed sequence `{base_n^r : 2 ≤ n ≤ N}` or a
/// single closed-form distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum BuiltinFamily {
    Indexed {
        base: BuiltinBase,
        exponent: Q,
        truncation: u32,
    },
    Single(ClosedFormDist),
}

impl BuiltinFamily {
    pub fn phi(n_max: u32) -> Self {
        Self::phi_pow(q_one(), n_max)
    }

    pub fn psi(n_max: u32) -> Self {
        Self::psi_pow(q_one(), n_max)
    }

    pub fn phi_pow(exponent: Q, n_max: u32) -> Self {
        assert!(n_max >= 2, "indexed families start at n = 2");
        assert!(exponent > Q::from_integer(0.into()));
        BuiltinFamily::Indexed {
            base: BuiltinBase::Phi,
            exponent,
            truncation: n_max,
        }
    }

    pub fn psi_pow(exponent: Q, n_max: u32) -> Self {
        assert!(n_max >= 2, "indexed families start at n = 2");
        assert!(exponent > Q::from_integer(0.into()));
        BuiltinFamily::Indexed {
            base: BuiltinBase::Psi,
            exponent,
            truncation: n_max,
        }
    }

    pub fn exp_inv_u() -> Self {
        BuiltinFamily::Single(ClosedFormDist::ExpInvU)
    }

    pub fn u_inv_pow(r: Q) -> Self {
        BuiltinFamily::Single(ClosedFormDist::u_inv_pow(r))
    }

    pub fn name(&self) -> String {
        match self {
            BuiltinFamily::Indexed {
                base, exponent, ..
            } => {
                let b = match base {
                    BuiltinBase::Phi => "phi",
                    BuiltinBase::Psi => "psi",
                };
                if *exponent == q_one() {
                    b.to_string()
                } else {
                    format!("{b}_pow")
                }
            }
            BuiltinFamily::Single(d) => d.name().to_string(),
        }
    }
}

/// Mass placed at the nonzero atom of member `n`; exact for `phi`, a verbatim
/// float promotion of `1/(n ln n)` for `psi`.
pub fn member_mass(base: BuiltinBase, n: u32) -> Q {
    debug_assert!(n >= 2);
    match base {
        BuiltinBase::Phi => q_one() / Q::from_integer(n.into()),
        BuiltinBase::Psi => q_from_f64(1.0 / (n as f64 * (n as f64).ln())),
    }
}

/// Position of the nonzero atom of member `n`: `n^r`, exact for integer `r`.
pub fn member_value(exponent: &Q, n: u32) -> Q {
    let base = Q::from_integer(n.into());
    if exponent.is_integer() {
        if let Some(k) = exponent.to_i32() {
            return pow_i(&base, k);
        }
    }
    q_from_f64((n as f64).powf(to_f64(exponent)))
}

impl BuiltinFamily {
    /// Materializes member `n` of an indexed family.
    pub fn member_dist(&self, n: u32) -> Option<DiscreteDist> {
        match self {
            BuiltinFamily::Indexed {
                base, exponent, ..
            } => {
                let mass = member_mass(*base, n);
                let value = member_value(exponent, n);
                Some(
                    DiscreteDist::new(vec![
                        (Q::from_integer(0.into()), q_one() - &mass),
                        (value, mass),
                    ])
                    .expect("builtin members are valid"),
                )
            }
            BuiltinFamily::Single(_) => None,
        }
    }

    /// All truncated members; intended for moderate `N`.
    pub fn members(&self) -> Option<Vec<DiscreteDist>> {
        match self {
            BuiltinFamily::Indexed { truncation, .. } => {
                Some((2..=*truncation).map(|n| self.member_dist(n).unwrap()).collect())
            }
            BuiltinFamily::Single(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn phi_members() {
        let fam = BuiltinFamily::phi(4);
        let m2 = fam.member_dist(2).unwrap();
        assert_eq!(m2.atoms(), &[(qi(0), q(1, 2)), (qi(2), q(1, 2))]);
        assert_eq!(m2.mean(), qi(1));
        // every phi member has mean exactly one
        for n in 2..=30 {
            assert_eq!(fam.member_dist(n).unwrap().mean(), qi(1));
        }
    }

    #[test]
    fn psi_member_mean_is_inverse_log() {
        let fam = BuiltinFamily::psi(10);
        let m2 = fam.member_dist(2).unwrap();
        let mean = to_f64(&m2.mean());
        assert!((mean - 1.0 / 2f64.ln() * 1.0).abs() < 1e-14 / 2f64.ln());
        // means decrease in n (1/ln n)
        let m3 = fam.member_dist(3).unwrap();
        assert!(m3.mean() < m2.mean());
    }

    #[test]
    fn pow_members_scale_positions() {
        let fam = BuiltinFamily::phi_pow(q(1, 2), 9);
        let m9 = fam.member_dist(9).unwrap();
        assert_eq!(m9.atoms()[1].0, qi(3)); // 9^{1/2} = 3 exactly in f64
        assert_eq!(m9.atoms()[1].1, q(1, 9));
    }

    #[test]
    fn names() {
        assert_eq!(BuiltinFamily::phi(5).name(), "phi");
        assert_eq!(BuiltinFamily::psi_pow(q(1, 2), 5).name(), "psi_pow");
        assert_eq!(BuiltinFamily::exp_inv_u().name(), "exp_inv_u");
        assert_eq!(BuiltinFamily::u_inv_pow(qi(1)).name(), "u_inv_pow");
    }
}
