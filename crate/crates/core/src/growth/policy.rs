use std::fmt;

use crate::error::{Error, Result};
use crate::factor::Factor;

/// How the robustness target evolves as the network grows.
///
/// Schedules are indexed by step: step `k >= 1` uses entry `k - 1`, the
/// seed uses entry 0, and the last entry repeats once the schedule runs out.
#[derive(Clone, Debug, PartialEq)]
pub enum RobustnessPolicy {
    /// Constant `N_f`, one arrival per step.
    FixedNf { nf: usize },
    /// `N_{f,k} = floor(N_k / 2f_k)` with `f_k > 1`, two rings.
    Fraction2f { schedule: Vec<Factor> },
    /// `N_{f,k} = floor(N_k / 2m f_k)` with `f_k >= 1`, `2m` rings.
    Fraction2mf { m: usize, schedule: Vec<Factor> },
    /// `N_{f,k} = N_k / 2`, two arrivals per step.
    Half,
    /// `N_{f,k} = N_k / 2 + n`, two arrivals per step.
    HalfPlusN { n: usize },
    /// Per-step `N_f` demand on a single ring, one arrival per step.
    VariableNf { schedule: Vec<usize> },
}

fn pick<T: Copy>(schedule: &[T], step: usize) -> T {
    schedule[step.saturating_sub(1).min(schedule.len() - 1)]
}

impl RobustnessPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            RobustnessPolicy::FixedNf { .. } => "fixed-nf",
            RobustnessPolicy::Fraction2f { .. } => "fraction-2f",
            RobustnessPolicy::Fraction2mf { .. } => "fraction-2mf",
            RobustnessPolicy::Half => "half",
            RobustnessPolicy::HalfPlusN { .. } => "half-plus-n",
            RobustnessPolicy::VariableNf { .. } => "variable-nf",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RobustnessPolicy::FixedNf { nf } if *nf == 0 => Err(Error::invalid("fixed-nf needs N_f >= 1")),
            RobustnessPolicy::Fraction2f { schedule } => {
                if schedule.is_empty() {
                    return Err(Error::invalid("fraction-2f needs a non-empty f schedule"));
                }
                match schedule.iter().find(|f| !f.is_greater_than_one()) {
                    Some(f) => Err(Error::invalid(format!("fraction-2f needs f > 1, got {f}"))),
                    None => Ok(()),
                }
            }
            RobustnessPolicy::Fraction2mf { m, schedule } => {
                if *m < 2 {
                    return Err(Error::invalid(format!("fraction-2mf needs m > 1, got {m}")));
                }
                if schedule.is_empty() {
                    return Err(Error::invalid("fraction-2mf needs a non-empty f schedule"));
                }
                match schedule.iter().find(|f| !f.is_at_least_one()) {
                    Some(f) => Err(Error::invalid(format!("fraction-2mf needs f >= 1, got {f}"))),
                    None => Ok(()),
                }
            }
            RobustnessPolicy::VariableNf { schedule } => {
                if schedule.is_empty() || schedule.contains(&0) {
                    Err(Error::invalid(
                        "variable-nf needs a non-empty schedule of values >= 1",
                    ))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Number of rings the builder keeps.
    pub fn ring_count(&self) -> usize {
        match self {
            RobustnessPolicy::FixedNf { .. } | RobustnessPolicy::VariableNf { .. } => 1,
            RobustnessPolicy::Fraction2mf { m, .. } => 2 * m,
            _ => 2,
        }
    }

    /// Nodes added per step.
    pub fn step_size(&self) -> usize {
        self.ring_count()
    }

    /// Smallest seed the builder accepts.
    pub fn min_seed(&self) -> usize {
        match self {
            RobustnessPolicy::FixedNf { nf } => nf + 2,
            RobustnessPolicy::VariableNf { schedule } => schedule.first().map_or(3, |nf| nf + 2),
            _ => self.ring_count(),
        }
    }

    /// `N_{f,k}` for a graph of `n` nodes at step `step`.
    pub fn nf_at(&self, n: usize, step: usize) -> usize {
        match self {
            RobustnessPolicy::FixedNf { nf } => *nf,
            RobustnessPolicy::VariableNf { schedule } => pick(schedule, step),
            RobustnessPolicy::Fraction2f { schedule } => pick(schedule, step).floor_fraction(n, 2),
            RobustnessPolicy::Fraction2mf { m, schedule } => pick(schedule, step).floor_fraction(n, 2 * m),
            RobustnessPolicy::Half => n / 2,
            RobustnessPolicy::HalfPlusN { n: extra } => {
                if n >= 2 * (extra + 2) {
                    n / 2 + extra
                } else {
                    (n / 2 + extra).min(n.saturating_sub(2))
                }
            }
        }
    }

    /// Upper bound on the link count at `n` nodes, where one is known.
    pub fn bound_at(&self, n: usize) -> Option<f64> {
        let nn = n as f64;
        match self {
            RobustnessPolicy::FixedNf { nf } if nf % 2 == 1 => Some(nn * (*nf as f64 + 1.0)),
            RobustnessPolicy::FixedNf { nf } => Some(nn * (*nf as f64 + 1.0) + nn * nn / 8.0),
            RobustnessPolicy::Fraction2f { .. } => Some(nn * nn / 4.0),
            RobustnessPolicy::Fraction2mf { m, .. } => Some(nn * nn / (4.0 * *m as f64)),
            RobustnessPolicy::Half => Some(nn * nn / 4.0 + nn - 2.0),
            RobustnessPolicy::HalfPlusN { n: extra } => {
                if n >= 2 * (extra + 2) {
                    let e = *extra as f64;
                    Some(nn * nn / 4.0 + 2.0 * nn * (e + 0.75) - 2.0 * (e + 1.0) * (e + 2.0))
                } else {
                    Some(nn * (nn - 1.0) / 2.0)
                }
            }
            RobustnessPolicy::VariableNf { .. } => None,
        }
    }
}

impl fmt::Display for RobustnessPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
