//! Seeded randomized campaigns checking the main theorems at scale.
//!
//! Trial `t` runs at size `n = 2 + t mod (n_max - 1)` with its own random
//! stream, so reports are reproducible and independent of thread count.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expmap;
use crate::jordan::no_unipotent_reverser_certificate;
use crate::nilmat::GroupTag;
use crate::oracle::Oracle;
use crate::random;
use crate::reverser::{check_certificate, reverse_star};
use crate::scalar::{GaussianRational, Rational, RationalQuaternion, Ring, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Nonzero nilpotent `X` has no reverser in `U_n` (oracle plus witness).
    Thm11,
    /// Every `X` with nonzero superdiagonal has a reverser in `U_n^{+-1}`.
    Thm14,
    /// `exp(X)` for nonzero `X` is not real in `U_n`.
    Cor12,
    /// Random elements of `U_n^{+-1}` checked for reality; no theorem.
    Search,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Thm11, Mode::Thm14, Mode::Cor12, Mode::Search];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Thm11 => "thm11",
            Mode::Thm14 => "thm14",
            Mode::Cor12 => "cor12",
            Mode::Search => "search",
        }
    }

    fn outcome_name(self) -> &'static str {
        match self {
            Mode::Thm11 => "INFEASIBLE with witness",
            Mode::Thm14 => "certificates verified",
            Mode::Cor12 => "INFEASIBLE",
            Mode::Search => "FEASIBLE",
        }
    }

    fn uses_oracle(self) -> bool {
        self != Mode::Thm14
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown mode {s:?}; expected thm11, thm14, cor12 or search"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub mode: Mode,
    pub ring: Ring,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub n: usize,
    pub input: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionCount {
    pub n: usize,
    pub trials: usize,
    pub successes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub mode: Mode,
    pub ring: Ring,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub successes: usize,
    pub by_dimension: Vec<DimensionCount>,
    /// Trials contradicting the targeted theorem, or that hit an error.
    pub failures: Vec<TrialFailure>,
    /// Search mode only: elements the oracle found not real, verbatim.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<String>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "campaign {} ring={} n_max={} trials={} seed={}",
            self.mode, self.ring, self.n_max, self.trials, self.seed
        );
        for d in &self.by_dimension {
            let _ = writeln!(out, "  n={}: {}/{}", d.n, d.successes, d.trials);
        }
        let _ = writeln!(out, "total: {}/{} {}", self.successes, self.trials, self.mode.outcome_name());
        for f in &self.failures {
            let _ = writeln!(out, "FAILED trial {} (n={}): {}\n  input: {}", f.trial, f.n, f.detail, f.input);
        }
        for c in &self.candidates {
            let _ = writeln!(out, "candidate non-real element: {c}");
        }
        out
    }
}

enum Outcome {
    Success,
    /// Search mode: the oracle found no reverser. Not a contradiction.
    Candidate,
    Failure(String),
}

struct Trial {
    n: usize,
    input: String,
    outcome: Outcome,
}

pub fn dimension_of_trial(t: usize, n_max: usize) -> usize {
    2 + t % (n_max - 1)
}

pub fn run_campaign(config: &CampaignConfig, oracle: &Oracle) -> Result<CampaignReport> {
    if config.trials > 0 && config.n_max < 2 {
        return Err(Error::DimensionMismatch { left: config.n_max, right: 2 });
    }
    if config.trials > 0 && config.mode.uses_oracle() && config.n_max > oracle.dim_limit() {
        return Err(Error::DimensionTooLarge { n: config.n_max, limit: oracle.dim_limit() });
    }
    let trials: Vec<Trial> = match config.ring {
        Ring::Rat => run_trials::<Rational>(config, oracle),
        Ring::Gauss => run_trials::<GaussianRational>(config, oracle),
        Ring::Quat => run_trials::<RationalQuaternion>(config, oracle),
    };
    let mut by_dimension: Vec<DimensionCount> =
        (2..=config.n_max.max(1)).map(|n| DimensionCount { n, trials: 0, successes: 0 }).collect();
    let mut report = CampaignReport {
        mode: config.mode,
        ring: config.ring,
        n_max: config.n_max,
        trials: config.trials,
        seed: config.seed,
        successes: 0,
        by_dimension: Vec::new(),
        failures: Vec::new(),
        candidates: Vec::new(),
    };
    for (t, trial) in trials.into_iter().enumerate() {
        let slot = &mut by_dimension[trial.n - 2];
        slot.trials += 1;
        match trial.outcome {
            Outcome::Success => {
                slot.successes += 1;
                report.successes += 1;
            }
            Outcome::Candidate => report.candidates.push(trial.input),
            Outcome::Failure(detail) => {
                report.failures.push(TrialFailure { trial: t, n: trial.n, input: trial.input, detail })
            }
        }
    }
    by_dimension.retain(|d| d.trials > 0);
    report.by_dimension = by_dimension;
    Ok(report)
}

fn run_trials<S: Scalar>(config: &CampaignConfig, oracle: &Oracle) -> Vec<Trial> {
    (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let n = dimension_of_trial(t, config.n_max);
            let mut rng = random::rng_for(config.seed, t as u64);
            let (input, outcome) = match config.mode {
                Mode::Thm14 => {
                    let x = random::star::<S, _>(n, &mut rng);
                    (x.as_matrix().to_text(), thm14(&x))
                }
                Mode::Thm11 => {
                    let x = random::nonzero_nilpotent::<S, _>(n, &mut rng);
                    (x.as_matrix().to_text(), thm11(&x, oracle))
                }
                Mode::Cor12 => {
                    let u = expmap::exp(&random::nonzero_nilpotent::<S, _>(n, &mut rng));
                    let outcome = match oracle.group_reverser_feasible(&u, GroupTag::Unipotent) {
                        Ok(r) if r.is_feasible() => {
                            Outcome::Failure("oracle found a unipotent reverser of exp(X)".into())
                        }
                        Ok(_) => Outcome::Success,
                        Err(e) => Outcome::Failure(e.to_string()),
                    };
                    (u.as_matrix().to_text(), outcome)
                }
                Mode::Search => {
                    let u = random::signed_unipotent::<S, _>(n, &mut rng);
                    let outcome = match oracle.group_reverser_feasible(&u, GroupTag::SignedUnipotent) {
                        Ok(r) if r.is_feasible() => Outcome::Success,
                        Ok(_) => Outcome::Candidate,
                        Err(e) => Outcome::Failure(e.to_string()),
                    };
                    (u.as_matrix().to_text(), outcome)
                }
            };
            Trial { n, input, outcome }
        })
        .collect()
}

fn thm14<S: Scalar>(x: &crate::nilmat::NilpotentUpper<S>) -> Outcome {
    let cert = match reverse_star(x) {
        Ok(r) => r.certificate,
        Err(e) => return Outcome::Failure(e.to_string()),
    };
    match check_certificate(&cert) {
        Ok(true) if cert.g.is_unipotent() => Outcome::Failure("reverser has an all-plus diagonal".into()),
        Ok(true) => Outcome::Success,
        Ok(false) => Outcome::Failure("certificate does not verify".into()),
        Err(e) => Outcome::Failure(e.to_string()),
    }
}

fn thm11<S: Scalar>(x: &crate::nilmat::NilpotentUpper<S>, oracle: &Oracle) -> Outcome {
    match oracle.reverser_feasible(x, GroupTag::Unipotent) {
        Ok(r) if r.is_feasible() => return Outcome::Failure("oracle found a unipotent reverser".into()),
        Ok(_) => {}
        Err(e) => return Outcome::Failure(e.to_string()),
    }
    match no_unipotent_reverser_certificate(x, oracle) {
        Ok(_) => Outcome::Success,
        Err(e) => Outcome::Failure(format!("witness: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(mode: Mode, ring: Ring, n_max: usize, trials: usize) -> CampaignConfig {
        CampaignConfig { mode, ring, n_max, trials, seed: 7 }
    }

    #[test]
    fn dimensions_cycle() {
        let ns: Vec<usize> = (0..6).map(|t| dimension_of_trial(t, 4)).collect();
        assert_eq!(ns, [2, 3, 4, 2, 3, 4]);
    }

    #[test]
    fn small_campaigns_pass_and_repeat() {
        let oracle = Oracle::default();
        for mode in Mode::ALL {
            let c = config(mode, Ring::Gauss, 4, 12);
            let a = run_campaign(&c, &oracle).unwrap();
            assert!(a.passed(), "{}", a.to_plain());
            assert_eq!(a.successes + a.candidates.len(), 12);
            assert_eq!(a.to_json(), run_campaign(&c, &oracle).unwrap().to_json());
        }
    }

    #[test]
    fn empty_and_out_of_bounds() {
        let oracle = Oracle::default();
        let r = run_campaign(&config(Mode::Thm14, Ring::Rat, 6, 0), &oracle).unwrap();
        assert!(r.passed() && r.by_dimension.is_empty());
        assert!(r.to_plain().contains("total: 0/0"));
        assert!(matches!(
            run_campaign(&config(Mode::Thm11, Ring::Rat, 12, 1), &oracle),
            Err(Error::DimensionTooLarge { n: 12, limit: 8 })
        ));
        assert!(run_campaign(&config(Mode::Thm14, Ring::Rat, 1, 1), &oracle).is_err());
        assert_eq!("cor12".parse::<Mode>().unwrap(), Mode::Cor12);
        assert!("thm9".parse::<Mode>().is_err());
    }
}
